use qgrkit::engine::Engine;
use qgrkit::ext::{ext_qgr, ExtOptions};
use qgrkit::module::{make_g, make_h, make_q, make_twist};
use qgrkit::ring::make_ring;

fn main() {
    let start = std::time::Instant::now();
    let n = 3i64;
    let a = make_ring(n, true).unwrap();
    let engine = Engine::new();
    let opts = ExtOptions::default();
    let g6 = make_g(&a, 2 * n).unwrap();
    let h7 = make_h(&a, 2 * n + 1).unwrap();
    let q64 = make_q(&a, 4, n - 2).unwrap(); // Q_{2n,4}
    let a6 = make_twist(&a, 2 * n);

    for (label, m, nn, expect) in [
        ("Ext(G6,G6)", &g6, &g6, vec![1, 0, 0]),
        ("Ext(H7,H7)", &h7, &h7, vec![1, 0, 0]),
        ("Ext(Q64,Q64)", &q64, &q64, vec![1, 0, 1]),
        ("Ext(Q64,A(6))", &q64, &a6, vec![0, 0, 1]),
        ("Ext(Q64,G6)", &q64, &g6, vec![0, 1, 0]),
        ("Ext(A(6),G6)", &a6, &g6, vec![0, 0, 0]),
    ] {
        match ext_qgr(&engine, m, nn, 2, &opts) {
            Ok(r) => println!(
                "{label} = {:?} [expect {:?}] last t {} ({:?})",
                r.dims, expect, r.truncation_trace.last().map(|x| x.0).unwrap_or(-1),
                start.elapsed()
            ),
            Err(e) => println!("{label} ERROR: {e}"),
        }
    }
    println!("total {:?}", start.elapsed());
}
