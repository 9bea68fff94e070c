//! Combinatorial orbit sets on weakly convex toric domains: index, action,
//! the three-condition comparison, and the closed-form cube bound.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::domain::{Direction, Polygon2D};
use crate::geometry::support_unchecked;
use crate::rational::{int, Rational};
use crate::Error;

/// A combinatorial Reeb orbit: primitive direction `v` with `x_v >= 0` or
/// `y_v >= 0`, and the flag `s` (1 elliptic, 0 hyperbolic).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CombOrbit {
    v: Direction,
    elliptic: bool,
}

impl CombOrbit {
    pub fn new(v: Direction, elliptic: bool) -> Result<Self, Error> {
        if v.0.gcd(&v.1) != 1 {
            return Err(Error::Invariant(format!("orbit direction {v} is not primitive")));
        }
        if v.0 < 0 && v.1 < 0 {
            return Err(Error::Invariant(format!(
                "orbit direction {v} has both components negative"
            )));
        }
        Ok(CombOrbit { v, elliptic })
    }

    /// `e_{p,q}`.
    pub fn e(p: i64, q: i64) -> Result<Self, Error> {
        CombOrbit::new(Direction(p, q), true)
    }

    /// `h_{p,q}`.
    pub fn h(p: i64, q: i64) -> Result<Self, Error> {
        CombOrbit::new(Direction(p, q), false)
    }

    pub fn v(&self) -> Direction {
        self.v
    }

    pub fn is_elliptic(&self) -> bool {
        self.elliptic
    }

    pub fn s(&self) -> i64 {
        self.elliptic as i64
    }
}

impl fmt::Display for CombOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.elliptic { 'e' } else { 'h' };
        write!(f, "{tag}({},{})", self.v.0, self.v.1)
    }
}

/// `max(x_a y_b, x_b y_a)`.
fn cross_term(a: Direction, b: Direction) -> i64 {
    (a.0 * b.1).max(b.0 * a.1)
}

/// A finite formal product of distinct orbits with multiplicities; hyperbolic
/// orbits have multiplicity one. Factors are kept sorted, so equal products
/// compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CombOrbitSet {
    factors: Vec<(CombOrbit, u32)>,
}

impl CombOrbitSet {
    pub fn new(factors: Vec<(CombOrbit, u32)>) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        for (o, m) in factors {
            if m == 0 {
                return Err(Error::Invariant(format!("multiplicity of {o} must be >= 1")));
            }
            if !o.elliptic && m != 1 {
                return Err(Error::Invariant(format!(
                    "hyperbolic orbit {o} must have multiplicity 1, got {m}"
                )));
            }
            if map.insert(o, m).is_some() {
                return Err(Error::Invariant(format!("orbit {o} listed twice")));
            }
        }
        Ok(CombOrbitSet { factors: map.into_iter().collect() })
    }

    pub fn empty() -> Self {
        CombOrbitSet::default()
    }

    pub fn single(orbit: CombOrbit, m: u32) -> Result<Self, Error> {
        CombOrbitSet::new(vec![(orbit, m)])
    }

    pub fn factors(&self) -> &[(CombOrbit, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn multiplicity(&self, orbit: &CombOrbit) -> u32 {
        self.factors.iter().find(|(o, _)| o == orbit).map_or(0, |(_, m)| *m)
    }

    /// The formal product; fails if a hyperbolic orbit would be repeated.
    pub fn product(&self, other: &CombOrbitSet) -> Result<CombOrbitSet, Error> {
        let mut map: BTreeMap<CombOrbit, u32> = self.factors.iter().copied().collect();
        for &(o, m) in &other.factors {
            *map.entry(o).or_insert(0) += m;
        }
        let factors: Vec<_> = map.into_iter().collect();
        if let Some((o, _)) = factors.iter().find(|(o, m)| !o.elliptic && *m > 1) {
            return Err(Error::Invariant(format!("product repeats hyperbolic orbit {o}")));
        }
        Ok(CombOrbitSet { factors })
    }

    /// Whether the two sets share an elliptic orbit.
    pub fn shares_elliptic(&self, other: &CombOrbitSet) -> bool {
        self.factors
            .iter()
            .any(|(o, _)| o.elliptic && other.multiplicity(o) > 0)
    }

    pub fn invariants(&self) -> OrbitInvariants {
        orbit_invariants(self)
    }
}

impl fmt::Display for CombOrbitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (o, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{o}")?;
            if *m != 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for CombOrbitSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for CombOrbitSet {
    type Err = Error;

    /// `e(p,q)^m * h(p,q) * ...`; `1` is the empty product.
    fn from_str(text: &str) -> Result<Self, Error> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "1" {
            return Ok(CombOrbitSet::empty());
        }
        if compact.is_empty() {
            return Err(Error::Syntax("empty orbit-set expression".into()));
        }
        let mut factors = Vec::new();
        for term in compact.split('*') {
            factors.push(parse_factor(term)?);
        }
        CombOrbitSet::new(factors)
    }
}

fn parse_factor(term: &str) -> Result<(CombOrbit, u32), Error> {
    let bad = || Error::Syntax(format!("invalid orbit factor {term:?}; expected e(p,q)^m or h(p,q)"));
    let elliptic = match term.chars().next() {
        Some('e') => true,
        Some('h') => false,
        _ => return Err(bad()),
    };
    let rest = term[1..].strip_prefix('(').ok_or_else(bad)?;
    let (inner, tail) = rest.split_once(')').ok_or_else(bad)?;
    let (p, q) = inner.split_once(',').ok_or_else(bad)?;
    let p: i64 = p.parse().map_err(|_| bad())?;
    let q: i64 = q.parse().map_err(|_| bad())?;
    let m: u32 = if tail.is_empty() {
        1
    } else {
        tail.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
    };
    Ok((CombOrbit::new(Direction(p, q), elliptic)?, m))
}

/// The five integers attached to an orbit set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitInvariants {
    pub x: i64,
    pub y: i64,
    /// Combinatorial ECH index.
    pub i: i64,
    pub m: i64,
    pub h: i64,
}

pub fn orbit_invariants(alpha: &CombOrbitSet) -> OrbitInvariants {
    let mut inv = OrbitInvariants { x: 0, y: 0, i: 0, m: 0, h: 0 };
    let mut pairs = 0;
    for &(a, ma) in &alpha.factors {
        let ma = ma as i64;
        inv.x += ma * a.v.0;
        inv.y += ma * a.v.1;
        inv.m += ma;
        inv.h += 1 - a.s();
        inv.i += a.s() * ma;
        for &(b, mb) in &alpha.factors {
            pairs += ma * mb as i64 * cross_term(a.v, b.v);
        }
    }
    inv.i += inv.x + inv.y + pairs;
    inv
}

/// `A_Ω(α) = Σ m_i · support(Ω, v_i)`.
pub fn action(domain: &Polygon2D, alpha: &CombOrbitSet) -> Rational {
    alpha
        .factors
        .iter()
        .map(|(o, m)| support_unchecked(domain, o.v) * int(*m as i64))
        .fold(int(0), |acc, a| acc + a)
}

/// Which of the three comparison conditions failed first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LeqCondition {
    /// Equal index.
    Index,
    /// Action does not increase.
    Action,
    /// `x + y - h/2 >= x' + y' + m' - 1`.
    Writhe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LeqOutcome {
    pub holds: bool,
    pub failed: Option<LeqCondition>,
}

/// Evaluates `α ≤_{Ω,Ω'} α'`.
pub fn leq_relation(
    source: &Polygon2D,
    target: &Polygon2D,
    alpha: &CombOrbitSet,
    alpha_prime: &CombOrbitSet,
) -> LeqOutcome {
    let failed = first_leq_failure(source, target, alpha, alpha_prime);
    LeqOutcome { holds: failed.is_none(), failed }
}

fn first_leq_failure(
    source: &Polygon2D,
    target: &Polygon2D,
    alpha: &CombOrbitSet,
    alpha_prime: &CombOrbitSet,
) -> Option<LeqCondition> {
    let a = orbit_invariants(alpha);
    let b = orbit_invariants(alpha_prime);
    if a.i != b.i {
        return Some(LeqCondition::Index);
    }
    if action(source, alpha) > action(target, alpha_prime) {
        return Some(LeqCondition::Action);
    }
    if !writhe_condition(&a, &b) {
        return Some(LeqCondition::Writhe);
    }
    None
}

/// `x + y - h/2 >= x' + y' + m' - 1`, compared after doubling both sides.
pub(crate) fn writhe_condition(a: &OrbitInvariants, b: &OrbitInvariants) -> bool {
    2 * (a.x + a.y) - a.h >= 2 * (b.x + b.y + b.m - 1)
}

/// Checks the end-slope hypothesis of the cube bound on the polygon: the
/// first edge satisfies `dy > 0` and `dx / dy <= 1`, the last edge `dx < 0`
/// and `dy / dx <= 1`.
pub fn slope_condition(domain: &Polygon2D) -> Result<(), Error> {
    let vs = domain.vertices();
    let first = vs[1].sub(&vs[0]);
    let last = vs[vs.len() - 1].sub(&vs[vs.len() - 2]);
    if !first.y.is_positive() || first.x > first.y {
        return Err(Error::Inapplicable(format!(
            "cube bound needs x'(0)/y'(0) <= 1, first edge has direction ({}, {})",
            first.x, first.y
        )));
    }
    if !last.x.is_negative() || last.y < last.x {
        return Err(Error::Inapplicable(format!(
            "cube bound needs y'(1)/x'(1) <= 1, last edge has direction ({}, {})",
            last.x, last.y
        )));
    }
    Ok(())
}

/// `c_P(X_Ω) <= (x(0) + y(1)) / 2` for weakly convex domains whose end
/// slopes satisfy [`slope_condition`].
pub fn cube_bound(domain: &Polygon2D) -> Result<Rational, Error> {
    slope_condition(domain)?;
    Ok((domain.x_intercept() + domain.y_intercept()) / int(2))
}

/// The bound certified by a single test orbit set
/// `e_{1,-1}^d e_{-1,1}^d e_{1,1}^2`: the largest value of
/// `(d_i (x(0) + y(1)) + k A(e_{1,1})) / (2 d_i + 3k - 1)` over
/// `k in {0, 1, 2}` and `ceil(d/3) <= d_i <= d`.
pub fn finite_d_bound(domain: &Polygon2D, d: u64) -> Result<Rational, Error> {
    slope_condition(domain)?;
    if d == 0 {
        return Err(Error::InvalidArgument("d must be >= 1".into()));
    }
    let sum = domain.x_intercept() + domain.y_intercept();
    let diag = support_unchecked(domain, Direction(1, 1));
    let mut best: Option<Rational> = None;
    for k in 0..=2i64 {
        for di in d.div_ceil(3)..=d {
            let di = int(di as i64);
            let value = (&di * &sum + &diag * int(k)) / (&di * int(2) + int(3 * k - 1));
            if best.as_ref().is_none_or(|b| value > *b) {
                best = Some(value);
            }
        }
    }
    Ok(best.expect("nonempty range"))
}

/// Candidate directions for orbit enumeration, with whether the `vmax` box
/// cut off any direction that would otherwise qualify.
#[derive(Clone, Debug)]
pub(crate) struct DirectionScan {
    pub directions: Vec<(Direction, Rational)>,
    pub truncated: bool,
}

/// Primitive valid directions `v` with `0 < support(v) <= cap` inside the
/// `vmax` box, plus the truncation flag for those outside it.
pub(crate) fn scan_directions(domain: &Polygon2D, cap: &Rational, vmax: i64) -> DirectionScan {
    let mut directions = Vec::new();
    for p in -vmax..=vmax {
        for q in -vmax..=vmax {
            let v = Direction(p, q);
            if !valid_direction(v) {
                continue;
            }
            let s = support_unchecked(domain, v);
            if s.is_positive() && s <= *cap {
                directions.push((v, s));
            }
        }
    }
    DirectionScan { directions, truncated: truncated_outside(domain, cap, vmax) }
}

fn valid_direction(v: Direction) -> bool {
    v != Direction(0, 0) && v.0.gcd(&v.1) == 1 && (v.0 >= 0 || v.1 >= 0)
}

/// Whether some valid primitive direction outside the `vmax` box has
/// `0 < support <= cap`.
fn truncated_outside(domain: &Polygon2D, cap: &Rational, vmax: i64) -> bool {
    // (1, -q) for large q has support x(0); (-p, 1) likewise y(1). Steeper
    // directions only grow, so these decide the unbounded part.
    if domain.x_intercept() <= cap || domain.y_intercept() <= cap {
        return true;
    }
    // Otherwise each component is bounded: support(v) >= c * positive part,
    // with c the side of the largest square inside, and a negative part
    // beyond vmax forces support >= x(0) or y(1) > cap.
    let c = crate::geometry::cube_inclusion(&domain.clone().into()).expect("polygon");
    let reach = crate::rational::floor_i64(&(cap / &c)).max(vmax);
    for p in -vmax..=reach {
        for q in -vmax..=reach {
            if p.abs() <= vmax && q.abs() <= vmax {
                continue;
            }
            let v = Direction(p, q);
            if valid_direction(v) {
                let s = support_unchecked(domain, v);
                if s.is_positive() && s <= *cap {
                    return true;
                }
            }
        }
    }
    false
}

/// Result of [`enumerate_orbit_sets`].
#[derive(Clone, Debug)]
pub struct OrbitEnumeration {
    pub sets: Vec<CombOrbitSet>,
    /// False when directions outside the `vmax` box could still contribute.
    pub complete: bool,
}

/// Every orbit set built from directions in the `vmax` box with
/// `0 < support`, total action at most `action_cap` and index
/// `index_target`, in sorted order.
pub fn enumerate_orbit_sets(
    domain: &Polygon2D,
    action_cap: &Rational,
    index_target: i64,
    vmax: i64,
) -> Result<OrbitEnumeration, Error> {
    if vmax < 1 {
        return Err(Error::InvalidArgument(format!("vmax must be >= 1, got {vmax}")));
    }
    if !action_cap.is_positive() {
        return Ok(OrbitEnumeration { sets: Vec::new(), complete: true });
    }
    let scan = scan_directions(domain, action_cap, vmax);
    let orbits = orbit_candidates(&scan.directions, true);
    let mut sets = Vec::new();
    enumerate_capped(&orbits, action_cap, None, |set, inv| {
        if inv.i == index_target {
            sets.push(set);
        }
    });
    sets.sort();
    Ok(OrbitEnumeration { sets, complete: !scan.truncated })
}

/// A candidate orbit with its action and a secondary cost.
#[derive(Clone, Debug)]
pub(crate) struct Candidate {
    pub orbit: CombOrbit,
    pub action: Rational,
    pub cost: Rational,
}

pub(crate) fn orbit_candidates(dirs: &[(Direction, Rational)], axis_elliptic: bool) -> Vec<Candidate> {
    let mut out = Vec::new();
    for (v, s) in dirs {
        for elliptic in [false, true] {
            let axis = *v == Direction(1, 0) || *v == Direction(0, 1);
            if elliptic && axis && !axis_elliptic {
                continue;
            }
            out.push(Candidate { orbit: CombOrbit { v: *v, elliptic }, action: s.clone(), cost: Rational::zero() });
        }
    }
    out.sort_by_key(|a| a.orbit);
    out
}

/// Depth-first enumeration of all nonempty orbit sets over `cands` with total
/// action `<= cap` and, when given, total cost `<= cost_cap`. Index and the
/// other invariants are maintained incrementally.
pub(crate) fn enumerate_capped<F>(cands: &[Candidate], cap: &Rational, cost_cap: Option<&Rational>, mut emit: F)
where
    F: FnMut(CombOrbitSet, OrbitInvariants),
{
    struct State<'a> {
        cands: &'a [Candidate],
        cap: &'a Rational,
        cost_cap: Option<&'a Rational>,
        chosen: Vec<(CombOrbit, u32)>,
    }

    fn go<F: FnMut(CombOrbitSet, OrbitInvariants)>(
        st: &mut State<'_>,
        start: usize,
        action: &Rational,
        cost: &Rational,
        inv: OrbitInvariants,
        emit: &mut F,
    ) {
        for idx in start..st.cands.len() {
            let c = &st.cands[idx];
            let max_m = if c.orbit.elliptic { u32::MAX } else { 1 };
            let mut m = 1u32;
            loop {
                let a = action + &c.action * int(m as i64);
                if a > *st.cap {
                    break;
                }
                let k = cost + &c.cost * int(m as i64);
                if st.cost_cap.is_some_and(|cc| k > *cc) {
                    break;
                }
                let mi = m as i64;
                let v = c.orbit.v;
                let mut cross = 0;
                for &(o, mo) in &st.chosen {
                    cross += mo as i64 * cross_term(o.v, v);
                }
                let next = OrbitInvariants {
                    x: inv.x + mi * v.0,
                    y: inv.y + mi * v.1,
                    i: inv.i + mi * (v.0 + v.1) + mi * mi * cross_term(v, v) + 2 * mi * cross + c.orbit.s() * mi,
                    m: inv.m + mi,
                    h: inv.h + 1 - c.orbit.s(),
                };
                st.chosen.push((c.orbit, m));
                emit(CombOrbitSet { factors: st.chosen.clone() }, next);
                go(st, idx + 1, &a, &k, next, emit);
                st.chosen.pop();
                if m >= max_m || c.action.is_zero() && c.cost.is_zero() {
                    break;
                }
                m += 1;
            }
        }
    }

    let mut st = State { cands, cap, cost_cap, chosen: Vec::new() };
    let zero = OrbitInvariants { x: 0, y: 0, i: 0, m: 0, h: 0 };
    go(&mut st, 0, &Rational::zero(), &Rational::zero(), zero, &mut emit);
}
