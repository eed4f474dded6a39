use qgrkit::engine::Engine;
use qgrkit::ext::{ext_qgr, ExtOptions};
use qgrkit::module::{make_chi, make_twist};
use qgrkit::ring::make_ring;

fn main() {
    let start = std::time::Instant::now();
    let n = 2i64;
    let a = make_ring(n, true).unwrap();
    let engine = Engine::new();
    let opts = ExtOptions::default();
    let a0 = make_twist(&a, 0);

    // (a) Ext(A, A(l))
    for l in [-8i64, -5, -3, 0, 2, 5] {
        let al = make_twist(&a, l);
        match ext_qgr(&engine, &a0, &al, 2, &opts) {
            Ok(r) => println!(
                "Ext(A, A({l})) = {:?}  [hom should be dim A_{l}, ext2 dim A_{}]  trace len {} last t {}",
                r.dims, -l - 5, r.truncation_trace.len(),
                r.truncation_trace.last().map(|x| x.0).unwrap_or(-99)
            ),
            Err(e) => println!("Ext(A, A({l})) ERROR: {e}"),
        }
    }
    println!("elapsed {:?}", start.elapsed());

    // (b) Hom(A(k), chi_j)
    for (k, j) in [(0i64, 0i64), (0, 5), (0, 1), (2, 2), (5, 0)] {
        let ak = make_twist(&a, k);
        let chij = make_chi(&a, j).unwrap();
        match ext_qgr(&engine, &ak, &chij, 2, &opts) {
            Ok(r) => println!("Ext(A({k}), chi({j})) = {:?}", r.dims),
            Err(e) => println!("Ext(A({k}), chi({j})) ERROR: {e}"),
        }
    }
    println!("elapsed {:?}", start.elapsed());

    // (d) chi vs chi for all residue differences mod 5
    for d in 0..5i64 {
        let chi0 = make_chi(&a, d).unwrap();
        let chib = make_chi(&a, 0).unwrap();
        match ext_qgr(&engine, &chi0, &chib, 2, &opts) {
            Ok(r) => println!("Ext(chi({d}), chi(0)) = {:?}", r.dims),
            Err(e) => println!("Ext(chi({d}), chi(0)) ERROR: {e}"),
        }
    }
    // (c) Ext^2(chi_k, A(j)) = 1 iff j = k - 5 mod 5 (n=2)
    for j in -6..=0i64 {
        let chi0 = make_chi(&a, 0).unwrap();
        let aj = make_twist(&a, j);
        match ext_qgr(&engine, &chi0, &aj, 2, &opts) {
            Ok(r) => println!("Ext(chi(0), A({j})) = {:?}  [expect ext2 = {}]", r.dims, ((j % 5) + 5) % 5 == 0),
            Err(e) => println!("Ext(chi(0), A({j})) ERROR: {e}"),
        }
    }
    println!("total elapsed {:?}", start.elapsed());
}
