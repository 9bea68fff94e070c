//! Capacity reports for the non-monotone family Ω_a, where the cube
//! capacity drops below the Lagrangian capacity once a > 1/4.
//!
//! ```bash
//! cargo run --example omega_a_family
//! ```

use toricap::rational::format_rational as f;
use toricap::{capacity_report, omega_a, rat, verify_xa};

fn main() -> Result<(), toricap::Error> {
    for a in [rat(1, 8), rat(1, 4), rat(3, 10), rat(2, 5)] {
        let poly = omega_a(&a)?;
        let r = capacity_report(&poly.into())?;
        println!(
            "a = {:<4}  delta = {}  eta = {}  c_P in [{}, {}]  c_L = {}  c^N in [{}, {}]",
            f(&a),
            f(&r.delta),
            f(&r.eta),
            f(&r.c_p.lower),
            f(&r.c_p.upper),
            r.c_l.value.as_ref().map_or("?".into(), f),
            f(&r.c_n.lower),
            f(&r.c_n.upper),
        );
    }

    let check = verify_xa(&rat(3, 10))?;
    println!("\nΩ_3/10 matches min(1-2a, 1/2): {}", check.pass);
    Ok(())
}
