//! Index, action and the ≤ relation on combinatorial orbit sets.

use toricap::ech::{action, leq_relation, orbit_invariants};
use toricap::rational::format_rational as f;
use toricap::{omega_a, rat, CombOrbitSet, Polygon2D};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = omega_a(&rat(3, 10))?;
    let sq = Polygon2D::square(rat(1, 2))?;
    for text in ["e(1,1)", "h(1,0)", "e(1,-1) * e(-1,1) * e(1,1)^2", "e(1,0)^3 * e(0,1)"] {
        let set: CombOrbitSet = text.parse()?;
        let inv = orbit_invariants(&set);
        println!(
            "{:<30} x={} y={} I={:<3} m={} h={}  action on Ω_3/10 = {}",
            set.to_string(),
            inv.x,
            inv.y,
            inv.i,
            inv.m,
            inv.h,
            f(&action(&w, &set))
        );
    }

    let a: CombOrbitSet = "e(1,1)".parse()?;
    let b: CombOrbitSet = "h(1,1)".parse()?;
    println!("e(1,1) <= e(1,1) in (P(1/2), Ω_3/10): {:?}", leq_relation(&sq, &w, &a, &a));
    println!("h(1,1) <= e(1,1) in (Ω_3/10, Ω_3/10): {:?}", leq_relation(&w, &w, &b, &a));
    Ok(())
}
