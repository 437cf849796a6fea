// scratch: solver timing for the universal-coefficient sweep cases
use centex_core::cohomology::{h2, h2_divisible};
use centex_core::finab::FinAb;
use centex_core::group::{heisenberg, modular_p3};
use std::time::Instant;

fn main() {
    for (name, g) in [("He5", heisenberg(5)), ("M125", modular_p3(5))] {
        let t = Instant::now();
        let h = h2(&g, &FinAb::cyclic(g.order() as i64));
        println!("{name}: h2(-, Z/125) {:?} in {:?}", h.invariant_factors(), t.elapsed());
        let t = Instant::now();
        let m = h2_divisible(&g);
        println!("{name}: multiplier dual {:?} in {:?}", m, t.elapsed());
    }
}
