// debug scratch
use loday_core::bimodule::adjoint_bimodule;
use loday_core::cohomology::cohomology_entry;
use loday_core::complexes::loday_slices;
use loday_core::constructors::*;
use loday_core::sparse::RankStrategy;

fn main() {
    println!("k l | HL2(h) HL2(ghat) | HL1(h) HL1(ghat)");
    for l in 1..=2usize {
        for k in 1..=5usize {
            let h = richardson_leibniz(k, l);
            let adj = adjoint_bimodule(&h).unwrap();
            let slices = loday_slices(&adj, 2).unwrap();
            let e2 = cohomology_entry(&slices, 2, RankStrategy::Exact).unwrap();
            let e2m = cohomology_entry(&slices, 2, RankStrategy::Modular).unwrap();
            assert_eq!(e2.dim_h, e2m.dim_h, "modular/exact disagree at ({k},{l})");
            let e1 = cohomology_entry(&slices, 1, RankStrategy::Exact).unwrap();
            let ghat = semidirect(&sl2(), &sl2_irreducible(k)).unwrap();
            let adj_g = adjoint_bimodule(&ghat).unwrap();
            let gs = loday_slices(&adj_g, 2).unwrap();
            let g2 = cohomology_entry(&gs, 2, RankStrategy::Exact).unwrap();
            let g1 = cohomology_entry(&gs, 1, RankStrategy::Exact).unwrap();
            let flag = if e2.dim_h == g2.dim_h { "  " } else { "!=" };
            println!(
                "{k} {l} | {} {} {flag} | {} {}",
                e2.dim_h, g2.dim_h, e1.dim_h, g1.dim_h
            );
        }
    }
}
