//! Capacity reports and the `Ω_a` family.

use num_traits::Signed;
use serde::Serialize;

use crate::domain::{Point, Polygon2D, ToricDomain};
use crate::ech::cube_bound;
use crate::geometry::{cube_inclusion, cylinder_cover, delta, eta, is_monotone, simplex_inclusion};
use crate::lagrangian::{lagrangian_capacity, ClCertificate};
use crate::rational::{int, min, rat, Rational};
use crate::Error;

/// The pentagon with corners `(0,0)`, `(1-2a,0)`, `(1-a,a)`, `(a,1-a)`,
/// `(0,1-2a)` for `0 < a < 1/2`.
pub fn omega_a(a: &Rational) -> Result<Polygon2D, Error> {
    if !a.is_positive() || *a >= rat(1, 2) {
        return Err(Error::InvalidArgument(format!("a must lie in (0, 1/2), got {a}")));
    }
    let one = int(1);
    let base = &one - a * int(2);
    Polygon2D::new(vec![
        Point::new(base.clone(), int(0)),
        Point::new(&one - a, a.clone()),
        Point::new(a.clone(), &one - a),
        Point::new(int(0), base),
    ])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(with = "crate::rational::serde_str")]
    pub lower: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub upper: Rational,
    pub exact: bool,
}

impl Interval {
    pub fn new(lower: Rational, upper: Rational) -> Self {
        let exact = lower == upper;
        Interval { lower, upper, exact }
    }

    pub fn point(v: Rational) -> Self {
        Interval::new(v.clone(), v)
    }

    /// The common value when exact.
    pub fn value(&self) -> Option<&Rational> {
        self.exact.then_some(&self.lower)
    }
}

/// Trivial bracket for the ball-normalized capacities; `upper` is `None`
/// when no cylinder contains the domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallBracket {
    #[serde(with = "crate::rational::serde_str")]
    pub lower: Rational,
    #[serde(with = "crate::rational::serde_opt_str")]
    pub upper: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapacityReport {
    #[serde(with = "crate::rational::serde_str")]
    pub delta: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub eta: Rational,
    pub c_l: ClCertificate,
    pub c_p: Interval,
    pub c_n: Interval,
    pub ball: BallBracket,
    pub monotone: bool,
    pub notes: Vec<String>,
}

/// Collects every bound this crate can certify for `domain`.
pub fn capacity_report(domain: &ToricDomain) -> Result<CapacityReport, Error> {
    let delta = delta(domain)?;
    let eta = eta(domain)?;
    let c_l = lagrangian_capacity(domain)?;
    let monotone = is_monotone(domain);
    let mut notes = Vec::new();
    notes.push(format!("c_L: {:?}", c_l.rule));

    let ball = BallBracket { lower: simplex_inclusion(domain), upper: cylinder_cover(domain) };
    notes.push(
        "c_B, c^Z: trivial bracket [largest simplex inside, smallest coordinate cylinder containing]; \
         not computed beyond inclusions"
            .into(),
    );

    if monotone {
        notes.push("monotone sandwich P_n(delta) ⊂ X ⊂ N_n(delta): all cube normalized capacities equal delta".into());
        return Ok(CapacityReport {
            c_p: Interval::point(delta.clone()),
            c_n: Interval::point(delta.clone()),
            delta,
            eta,
            c_l,
            ball,
            monotone,
            notes,
        });
    }

    let p_lower = cube_inclusion(domain)?;
    notes.push(format!("c_P lower {p_lower}: largest cube P_n(a) inside the domain"));
    let mut p_upper = eta.clone();
    let mut upper_note = format!("c_P upper {eta}: c_P <= c^N <= eta (X ⊂ N_n(eta))");
    if let ToricDomain::Polygon(poly) = domain {
        match cube_bound(poly) {
            Ok(b) if b < p_upper => {
                upper_note = format!("c_P upper {b}: weakly convex cube bound (x(0) + y(1)) / 2");
                p_upper = b;
            }
            Ok(_) => {}
            Err(e) => notes.push(format!("weakly convex cube bound unavailable ({e}); using eta")),
        }
    }
    notes.push(upper_note);
    let c_p = Interval::new(p_lower, p_upper);

    let c_n = Interval::new(c_l.lower.clone(), eta.clone());
    notes.push(format!(
        "c^N in [{}, {}]: c_L <= c^N, and X ⊂ N_n(eta)",
        c_n.lower, c_n.upper
    ));
    Ok(CapacityReport { delta, eta, c_l, c_p, c_n, ball, monotone, notes })
}

/// Expected and computed values for one member of the `Ω_a` family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XaCheck {
    #[serde(with = "crate::rational::serde_str")]
    pub a: Rational,
    pub pass: bool,
    #[serde(with = "crate::rational::serde_str")]
    pub expected_c_p: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub expected_c_l: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub expected_c_n: Rational,
    pub got: CapacityReport,
}

/// Compares the report for `Ω_a` with `c_P = min(1 - 2a, 1/2)` and
/// `c_L = c^N = 1/2`.
pub fn verify_xa(a: &Rational) -> Result<XaCheck, Error> {
    let got = capacity_report(&omega_a(a)?.into())?;
    let half = rat(1, 2);
    let expected_c_p = min(int(1) - a * int(2), half.clone());
    let pass = got.c_p.value() == Some(&expected_c_p)
        && got.c_l.value.as_ref() == Some(&half)
        && got.c_n.value() == Some(&half);
    Ok(XaCheck { a: a.clone(), pass, expected_c_p, expected_c_l: half.clone(), expected_c_n: half, got })
}
