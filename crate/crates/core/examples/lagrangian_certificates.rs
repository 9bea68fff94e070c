//! Which rule certifies the Lagrangian capacity of a domain, and what the
//! fallback interval looks like when none applies.

use toricap::lagrangian::lagrangian_capacity;
use toricap::rational::format_rational as f;
use toricap::{int, omega_a, rat, Polygon2D, Rect, Rectilinear2D, StandardDomain, StandardKind, ToricDomain};

fn show(name: &str, d: ToricDomain) -> Result<(), toricap::Error> {
    let c = lagrangian_capacity(&d)?;
    let value = c.value.as_ref().map_or_else(|| format!("in [{}, {}]", f(&c.lower), f(&c.upper)), f);
    let witness = c
        .witness
        .as_ref()
        .map(|w| format!(" at ({})", w.iter().map(f).collect::<Vec<_>>().join(", ")))
        .unwrap_or_default();
    println!("{name:<22} c_L {value:<12} {:?}{witness}", c.rule);
    Ok(())
}

fn main() -> Result<(), toricap::Error> {
    show("ball B^3(1)", StandardDomain::new(StandardKind::Ball, 3, int(1))?.into())?;
    show("simplex", Polygon2D::simplex(int(1))?.into())?;
    show("Ω_3/10", omega_a(&rat(3, 10))?.into())?;

    // Two overlapping bars: (1, 1/2) is a corner of the region and of N_2(1/2).
    let cross = Rectilinear2D::new(vec![
        Rect::new(int(0), int(1), int(0), rat(1, 2)),
        Rect::new(int(0), rat(1, 2), int(0), int(1)),
    ])?;
    show("cross", cross.into())?;

    // A thin floor with a detached tower: only an interval is known.
    let odd = Rectilinear2D::new(vec![
        Rect::new(int(0), int(3), int(0), rat(1, 3)),
        Rect::new(rat(5, 2), rat(11, 4), int(0), rat(3, 4)),
    ])?;
    show("floor + tower", odd.into())
}
