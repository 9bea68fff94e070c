//! Upper bounds on the cube capacity of a convex polygon from combinatorial
//! ECH, in the limit and at finite degree d.

use toricap::ech::{cube_bound, finite_d_bound};
use toricap::geometry::cube_inclusion;
use toricap::rational::format_rational as f;
use toricap::{omega_a, rat};

fn main() -> Result<(), toricap::Error> {
    let w = omega_a(&rat(3, 10))?;
    let lower = cube_inclusion(&w.clone().into())?;
    let upper = cube_bound(&w)?;
    println!("Ω_3/10: {} <= c_P <= {}", f(&lower), f(&upper));
    for d in [1, 3, 9, 30, 90, 300, 3000] {
        println!("  d = {d:<5} finite-d bound {}", f(&finite_d_bound(&w, d)?));
    }
    Ok(())
}
