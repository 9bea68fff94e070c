//! Bounded search for the combinatorial factorizations that would allow a
//! cube to embed. An infeasible result obstructs the embedding.

use toricap::search::verify_witness;
use toricap::{obstruction_search, omega_a, rat, CombOrbitSet, Polygon2D, SearchLimits};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let target = omega_a(&rat(3, 10))?;

    // The cube of side 1/2 does not fit: no factorization of the degree-30
    // generator survives.
    let alpha: CombOrbitSet = "e(1,-1)^30 * e(-1,1)^30 * e(1,1)^2".parse()?;
    let cube = Polygon2D::square(rat(1, 2))?;
    let r = obstruction_search(&cube, &target, &alpha, SearchLimits::new(3, 3))?;
    println!("P(1/2) -> Ω_3/10: {:?}, {:?}", r.status, r.bounds_used);

    // A domain always embeds in itself; the search finds the trivial witness.
    let e11: CombOrbitSet = "e(1,1)".parse()?;
    let r = obstruction_search(&target, &target, &e11, SearchLimits::new(2, 1))?;
    let w = r.witness.expect("identity witness");
    println!("Ω_3/10 -> Ω_3/10: alpha = {}, verified = {}", w.alpha, verify_witness(&target, &target, &e11, &w));

    println!("{}", serde_json::to_string_pretty(&obstruction_search(&cube, &target, &e11, SearchLimits::new(2, 1))?)?);
    Ok(())
}
