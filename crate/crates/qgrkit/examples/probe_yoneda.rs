use qgrkit::engine::Engine;
use qgrkit::ext::{ext_class, is_nonzero, yoneda_compose, ExtOptions};
use qgrkit::module::{make_chi, make_twist};
use qgrkit::ring::make_ring;

fn main() {
    let start = std::time::Instant::now();
    for n in [2i64, 3] {
        let a = make_ring(n, true).unwrap();
        let engine = Engine::new();
        let opts = ExtOptions::default();
        for j in 0..(4 * n - 3) {
            // first composite: Hom(A(j), chi_j) ∘ Ext^2(chi_{j+2n+1}, A(j))
            let chi_top = make_chi(&a, j + 2 * n + 1).unwrap();
            let aj = make_twist(&a, j);
            let chij = make_chi(&a, j).unwrap();
            let alpha = ext_class(&engine, &chi_top, &aj, 2, 0, &opts).unwrap();
            let beta = ext_class(&engine, &aj, &chij, 0, 0, &opts).unwrap();
            let composite = yoneda_compose(&engine, &beta, &alpha, &opts).unwrap();
            let nz = is_nonzero(&engine, &composite).unwrap();
            // second composite: Ext^2(chi_{j+2n+1}, A(j)) ∘ Hom(A(j+2n+1), chi_{j+2n+1})
            let atop = make_twist(&a, j + 2 * n + 1);
            let gamma = ext_class(&engine, &atop, &chi_top, 0, 0, &opts).unwrap();
            let composite2 = yoneda_compose(&engine, &alpha, &gamma, &opts).unwrap();
            let nz2 = is_nonzero(&engine, &composite2).unwrap();
            println!("n={n} j={j}: composite1 nonzero = {nz}, composite2 nonzero = {nz2}  ({:?})", start.elapsed());
            if !nz || !nz2 {
                println!("  *** UNEXPECTED ZERO ***");
            }
        }
    }
    println!("total {:?}", start.elapsed());
}
