//! Minimal positive symplectic area of a product torus fiber, in closed form
//! and by lattice enumeration.

use toricap::lagrangian::{a_min_brute, a_min_closed};
use toricap::rational::{format_rational as f, parse_rational};

fn main() -> Result<(), toricap::Error> {
    for point in ["1/2,1/2", "2/3,1/2", "3/4,5/6,1", "4/11,11/12"] {
        let x: Vec<_> = point.split(',').map(parse_rational).collect::<Result<_, _>>()?;
        let closed = a_min_closed(&x)?;
        let (brute, k) = a_min_brute(&x, 60)?;
        println!("x = ({point:<11})  A_min = {:<6} brute = {:<6} k = {k:?}", f(&closed), f(&brute));
    }
    // Over the common denominator 132 this is 48 k_1 + 121 k_2 = 1, whose
    // smallest solution needs |k_1| = 58: a box of radius 50 misses it.
    let x = [parse_rational("4/11")?, parse_rational("11/12")?];
    println!("K = 50 gives {}, K = 58 gives {}", f(&a_min_brute(&x, 50)?.0), f(&a_min_brute(&x, 58)?.0));
    Ok(())
}
