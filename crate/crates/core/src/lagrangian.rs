//! Minimal area of product Lagrangian tori and the Lagrangian capacity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::domain::{Point, ToricDomain};
use crate::geometry::{self, delta, eta, is_concave, is_monotone};
use crate::rational::{floor_i64, int, max, Rational};
use crate::Error;

fn check_fiber(x: &[Rational]) -> Result<(), Error> {
    if x.is_empty() {
        return Err(Error::InvalidArgument("fiber position has no coordinates".into()));
    }
    if let Some(c) = x.iter().find(|c| !c.is_positive()) {
        return Err(Error::InvalidArgument(format!(
            "fiber coordinates must be positive, got {c}"
        )));
    }
    Ok(())
}

/// Writes every coordinate over the common denominator `q`, returning the
/// numerators and `q`.
fn common_denominator(x: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let q = x.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let nums = x.iter().map(|c| c.numer() * (&q / c.denom())).collect();
    (nums, q)
}

/// Smallest positive value of `k_1 x_1 + ... + k_n x_n` over integer `k`:
/// `gcd(n_1, ..., n_n) / q` with `x_i = n_i / q`.
pub fn a_min_closed(x: &[Rational]) -> Result<Rational, Error> {
    check_fiber(x)?;
    let (nums, q) = common_denominator(x);
    let g = nums.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    Ok(Rational::new(g, q))
}

/// Exhaustive minimum of the positive values `sum k_i x_i` over
/// `k in [-bound, bound]^n`, with the first minimizing `k` in lexicographic
/// order.
pub fn a_min_brute(x: &[Rational], bound: i64) -> Result<(Rational, Vec<i64>), Error> {
    check_fiber(x)?;
    if bound < 1 {
        return Err(Error::InvalidArgument(format!("brute-force bound must be >= 1, got {bound}")));
    }
    let (nums, q) = common_denominator(x);
    let small: Option<Vec<i128>> = nums.iter().map(|n| n.to_i128()).collect();
    // The i128 path needs |sum| <= n * K * max|a| to fit comfortably.
    if let Some(a) = small.filter(|a| a.iter().all(|v| v.unsigned_abs() < 1 << 80)) {
        let (v, k) = brute_small(&a, bound);
        return Ok((Rational::new(BigInt::from(v), q), k));
    }
    let n = x.len();
    let mut k = vec![-bound; n];
    let mut best: Option<(BigInt, Vec<i64>)> = None;
    loop {
        let value: BigInt = nums.iter().zip(&k).map(|(a, &b)| a * b).sum();
        if value.is_positive() && best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, k.clone()));
        }
        if !odometer(&mut k, bound) {
            let (v, k) = best.expect("k = e_1 gives a positive value");
            return Ok((Rational::new(v, q), k));
        }
    }
}

/// Advances `k` through `[-bound, bound]^n` in lexicographic order; false once
/// wrapped around.
fn odometer(k: &mut [i64], bound: i64) -> bool {
    for ki in k.iter_mut().rev() {
        if *ki < bound {
            *ki += 1;
            return true;
        }
        *ki = -bound;
    }
    false
}

fn brute_small(a: &[i128], bound: i64) -> (i128, Vec<i64>) {
    let n = a.len();
    let last = a[n - 1];
    let mut k = vec![-bound; n];
    let mut best: Option<(i128, Vec<i64>)> = None;
    loop {
        // Sweep the last coordinate incrementally.
        let head: i128 = a[..n - 1].iter().zip(&k).map(|(&ai, &ki)| ai * ki as i128).sum();
        let mut value = head - last * bound as i128;
        for t in -bound..=bound {
            if value > 0 && best.as_ref().is_none_or(|(b, _)| value < *b) {
                k[n - 1] = t;
                best = Some((value, k.clone()));
            }
            value += last;
        }
        k[n - 1] = bound;
        if !odometer(&mut k, bound) {
            return best.expect("k = e_1 gives a positive value");
        }
    }
}

/// Which result justifies a Lagrangian capacity value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClRule {
    /// Monotone (or convex/concave) domain: `c_L = delta = eta`.
    MonotoneDiagonal,
    /// `(eta, ..., eta)` lies on the boundary of the region.
    EtaOnBoundary,
    /// A point `(k_1 eta, ..., k_n eta)` lies on the closed free boundary and
    /// on the free boundary of `N_n(eta)`.
    LatticeWitness,
    /// No exact value is known; only an interval.
    IntervalOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClCertificate {
    #[serde(with = "crate::rational::serde_opt_str")]
    pub value: Option<Rational>,
    pub rule: ClRule,
    #[serde(serialize_with = "serialize_witness")]
    pub witness: Option<Vec<Rational>>,
    #[serde(with = "crate::rational::serde_str")]
    pub lower: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub upper: Rational,
}

fn serialize_witness<S: serde::Serializer>(w: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        Some(v) => s.serialize_some(&v.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        None => s.serialize_none(),
    }
}

impl ClCertificate {
    fn exact(value: Rational, rule: ClRule, witness: Option<Vec<Rational>>) -> Self {
        ClCertificate { lower: value.clone(), upper: value.clone(), value: Some(value), rule, witness }
    }
}

/// Lagrangian capacity with the rule that certifies it.
///
/// Rules are tried in this order: a lattice witness `(k_1 eta, k_2 eta)`
/// with some `k_i >= 2` (2D domains), monotone or convex/concave domains,
/// the diagonal point `(eta, eta)` on the boundary, and finally an interval
/// `[best fiber A_min, eta]`.
pub fn lagrangian_capacity(domain: &ToricDomain) -> Result<ClCertificate, Error> {
    if let ToricDomain::Standard(_) = domain {
        // Closed forms; all four families are treated as monotone.
        let d = delta(domain)?;
        return Ok(ClCertificate::exact(d, ClRule::MonotoneDiagonal, None));
    }
    let eta = eta(domain)?;
    if let Some(w) = lattice_witness(domain, &eta) {
        return Ok(ClCertificate::exact(eta, ClRule::LatticeWitness, Some(w)));
    }
    if is_monotone(domain) || is_concave(domain) {
        let d = delta(domain)?;
        debug_assert_eq!(d, eta);
        return Ok(ClCertificate::exact(d, ClRule::MonotoneDiagonal, None));
    }
    let diag = vec![eta.clone(); 2];
    if eta.is_positive() && geometry::on_boundary(domain, &diag) {
        return Ok(ClCertificate::exact(eta, ClRule::EtaOnBoundary, Some(diag)));
    }
    let lower = fiber_candidates(domain)
        .iter()
        .filter_map(|p| a_min_closed(p).ok())
        .fold(int(0), max);
    Ok(ClCertificate { value: None, rule: ClRule::IntervalOnly, witness: None, lower, upper: eta })
}

/// Points `(k eta, eta)` or `(eta, k eta)` with `k >= 2` on the boundary.
fn lattice_witness(domain: &ToricDomain, eta: &Rational) -> Option<Vec<Rational>> {
    if !eta.is_positive() {
        return None;
    }
    let reach = match domain {
        ToricDomain::Polygon(p) => p.vertices().iter().flat_map(|v| [v.x.clone(), v.y.clone()]).max()?,
        ToricDomain::Rectilinear(r) => r.rects().iter().flat_map(|q| [q.x1.clone(), q.y1.clone()]).max()?,
        ToricDomain::Standard(_) => return None,
    };
    let kmax = floor_i64(&(reach / eta));
    for k in 2..=kmax {
        let far = eta * int(k);
        for p in [vec![far.clone(), eta.clone()], vec![eta.clone(), far.clone()]] {
            if geometry::on_boundary(domain, &p) {
                return Some(p);
            }
        }
    }
    None
}

/// Fiber positions with positive coordinates that certainly lie in the
/// region: vertices or rectangle corners and the diagonal point.
fn fiber_candidates(domain: &ToricDomain) -> Vec<Vec<Rational>> {
    let mut pts: Vec<Point> = match domain {
        ToricDomain::Polygon(p) => p.vertices().to_vec(),
        ToricDomain::Rectilinear(r) => r
            .rects()
            .iter()
            .flat_map(|q| {
                [
                    Point::new(q.x0.clone(), q.y0.clone()),
                    Point::new(q.x1.clone(), q.y0.clone()),
                    Point::new(q.x0.clone(), q.y1.clone()),
                    Point::new(q.x1.clone(), q.y1.clone()),
                ]
            })
            .collect(),
        ToricDomain::Standard(_) => Vec::new(),
    };
    if let Ok(d) = delta(domain) {
        pts.push(Point::new(d.clone(), d));
    }
    pts.into_iter()
        .filter(|p| p.x.is_positive() && p.y.is_positive())
        .map(|p| vec![p.x, p.y])
        .collect()
}

/// The common value of every cube-normalized capacity on a monotone domain.
pub fn cube_normalized_value(domain: &ToricDomain) -> Result<Rational, Error> {
    if !is_monotone(domain) {
        return Err(Error::Inapplicable(
            "cube normalized capacities only coincide on monotone domains; this domain is not monotone".into(),
        ));
    }
    delta(domain)
}
