use qgrkit::engine::Engine;
use qgrkit::module::{make_twist, truncate};
use qgrkit::ring::make_ring;

fn main() {
    let n = 3i64;
    let a = make_ring(n, true).unwrap();
    let engine = Engine::new();
    let a0 = make_twist(&a, 0);
    for t in [10i64, 16, 20] {
        let t0 = std::time::Instant::now();
        let tr = truncate(&a0, t).unwrap();
        let t1 = t0.elapsed();
        println!("truncate(A, {t}): {} gens, {} rels, {t1:?}", tr.generators.rank(), tr.relations.source.rank());
        let t0 = std::time::Instant::now();
        let res = engine.resolution(&tr, 3).unwrap();
        println!("  resolution betti {:?} in {:?}", res.betti(), t0.elapsed());
    }
}
