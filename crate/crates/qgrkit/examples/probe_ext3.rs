use qgrkit::engine::Engine;
use qgrkit::ext::{ext_qgr, ExtOptions};
use qgrkit::hilbert::hilbert_dim;
use qgrkit::module::{make_chi, make_twist};
use qgrkit::ring::make_ring;

fn main() {
    let start = std::time::Instant::now();
    let n = 3i64;
    let a = make_ring(n, true).unwrap();
    let engine = Engine::new();
    let opts = ExtOptions::default();
    let a0 = make_twist(&a, 0);

    // worst case: l = -20 (twist range 6n+2 = 20)
    for l in [-20i64, -15, -9, 20] {
        let al = make_twist(&a, l);
        match ext_qgr(&engine, &a0, &al, 2, &opts) {
            Ok(r) => println!(
                "Ext(A, A({l})) = {:?} [expected hom {}, ext2 {}]  last t {}  ({:?})",
                r.dims,
                hilbert_dim(&a, l),
                hilbert_dim(&a, -l - 7),
                r.truncation_trace.last().unwrap().0,
                start.elapsed()
            ),
            Err(e) => println!("Ext(A, A({l})) ERROR: {e}"),
        }
    }
    // chi source far twist
    let chi0 = make_chi(&a, 0).unwrap();
    for j in [-20i64, -16, -7] {
        let aj = make_twist(&a, j);
        match ext_qgr(&engine, &chi0, &aj, 2, &opts) {
            Ok(r) => println!(
                "Ext(chi(0), A({j})) = {:?} [ext2 expect {}]  last t {} ({:?})",
                r.dims,
                ((j + 7).rem_euclid(9)) == 0,
                r.truncation_trace.last().unwrap().0,
                start.elapsed()
            ),
            Err(e) => println!("Ext(chi(0), A({j})) ERROR: {e}"),
        }
    }
    // chi-chi residues n=3
    for d in 0..9i64 {
        let chid = make_chi(&a, d).unwrap();
        let chi_base = make_chi(&a, 0).unwrap();
        let r = ext_qgr(&engine, &chid, &chi_base, 2, &opts).unwrap();
        println!("Ext(chi({d}), chi(0)) = {:?}", r.dims);
    }
    println!("total {:?}", start.elapsed());
}
