//! Bounded search for the orbit-set factorizations that an embedding
//! `X_Ω ↪ X_Ω'` forces to exist.
//!
//! Given `α'` with positive index and no hyperbolic orbits, an embedding
//! implies some `α` and factorizations `α = Π α_j`, `α' = Π α'_j` with
//! (a) `α_j ≤ α'_j`, (b) no shared elliptic orbit between `α_i` and `α_j`
//! whenever `α_i = α_j` or `α'_i = α'_j`, and (c) equal positive index for
//! every sub-product. Failing to find one within the search bounds is
//! evidence against the embedding.

use num_traits::Signed;
use serde::Serialize;
use std::collections::HashMap;

use crate::domain::{Direction, Polygon2D};
use crate::ech::{
    action, enumerate_capped, leq_relation, orbit_candidates, orbit_invariants, writhe_condition, Candidate,
    CombOrbit, CombOrbitSet, OrbitInvariants,
};
use crate::geometry::{cube_inclusion, support_unchecked};
use crate::rational::{floor_i64, int, Rational};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Bound on `|x_v|, |y_v|` for orbits of `α`.
    pub vmax: i64,
    /// Maximum number of factors.
    pub lmax: usize,
    /// Allow the elliptic axis orbits `e(1,0)`, `e(0,1)` in `α`.
    pub axis_orbits: bool,
}

impl SearchLimits {
    pub fn new(vmax: i64, lmax: usize) -> Self {
        SearchLimits { vmax, lmax, axis_orbits: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchStatus {
    FeasibleWitness,
    InfeasibleWithinBounds,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub alpha: CombOrbitSet,
    pub alpha_factors: Vec<CombOrbitSet>,
    pub alpha_prime_factors: Vec<CombOrbitSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsUsed {
    pub vmax: i64,
    pub lmax: usize,
    pub axis_orbits: bool,
    /// Some needed direction lay outside the `vmax` box.
    pub vmax_truncated: bool,
    /// `lmax >= m(α')`, so every factor count was tried.
    pub lmax_exhaustive: bool,
    /// Sub-products of `α'` that survived the index and action filters.
    pub admissible_factors: usize,
    pub factorizations_examined: u64,
    pub candidate_sets_examined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub status: SearchStatus,
    pub witness: Option<Witness>,
    pub bounds_used: BoundsUsed,
    /// Side of the source cube when the source is a square and no witness
    /// exists within bounds.
    #[serde(with = "crate::rational::serde_opt_str")]
    pub obstructed_a: Option<Rational>,
}

/// A sub-product of `α'`, stored as multiplicities over the orbits of `α'`.
#[derive(Debug)]
struct Factor {
    counts: Vec<u32>,
    set: CombOrbitSet,
    inv: OrbitInvariants,
}

/// Runs the bounded search.
///
/// The source polygon contains the square `[0, c]^2`, so every orbit
/// direction satisfies `support(v) >= c (x_v + y_v)`. Together with the
/// action and writhe conditions this bounds, for each factor `α'_j`,
/// the total "slack" `Σ m (support(v) - c (x_v + y_v))` of a matching `α_j`
/// by `A'(α'_j) - c (x' + y' + m' - 1)`. Factors with negative budget admit
/// no match at all, and the remaining ones only finitely many directions.
pub fn obstruction_search(
    source: &Polygon2D,
    target: &Polygon2D,
    alpha_prime: &CombOrbitSet,
    limits: SearchLimits,
) -> Result<SearchReport, Error> {
    if limits.vmax < 1 || limits.lmax < 1 {
        return Err(Error::InvalidArgument(format!(
            "invalid limits: vmax = {}, lmax = {} (both must be >= 1)",
            limits.vmax, limits.lmax
        )));
    }
    let target_inv = orbit_invariants(alpha_prime);
    if target_inv.i <= 0 {
        return Err(Error::Inapplicable(format!("I(α') = {} must be positive", target_inv.i)));
    }
    if target_inv.h != 0 {
        return Err(Error::Inapplicable(format!("h(α') = {} must be zero", target_inv.h)));
    }

    let c = cube_inclusion(&source.clone().into())?;
    let orbits: Vec<(CombOrbit, u32)> = alpha_prime.factors().to_vec();
    let mut bounds = BoundsUsed {
        vmax: limits.vmax,
        lmax: limits.lmax,
        axis_orbits: limits.axis_orbits,
        vmax_truncated: false,
        lmax_exhaustive: limits.lmax as i64 >= target_inv.m,
        admissible_factors: 0,
        factorizations_examined: 0,
        candidate_sets_examined: 0,
    };

    // Every nonempty sub-product of α' with positive index whose budget is
    // nonnegative.
    let mut factors = Vec::new();
    for counts in sub_products(&orbits) {
        let set = CombOrbitSet::new(
            orbits.iter().zip(&counts).filter(|(_, &k)| k > 0).map(|((o, _), &k)| (*o, k)).collect(),
        )?;
        let inv = orbit_invariants(&set);
        if inv.i <= 0 {
            continue;
        }
        let cap = action(target, &set);
        let budget = &cap - &c * int(inv.x + inv.y + inv.m - 1);
        if budget.is_negative() {
            continue;
        }
        factors.push(Factor { counts, set, inv });
    }
    // Largest first, so factorizations are generated in canonical order.
    factors.sort_by(|a, b| b.counts.cmp(&a.counts));
    bounds.admissible_factors = factors.len();

    let mut matcher = Matcher { source, target, c: &c, limits, cache: HashMap::new(), truncated: false };
    let total: Vec<u32> = orbits.iter().map(|(_, m)| *m).collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut witness = None;
    search_factorizations(&factors, &total, 0, &mut chosen, limits.lmax, &mut |picked| {
        bounds.factorizations_examined += 1;
        let parts: Vec<&Factor> = picked.iter().map(|&i| &factors[i]).collect();
        match match_factorization(&parts, &mut matcher, &mut bounds.candidate_sets_examined) {
            Some(w) => {
                witness = Some(w);
                true
            }
            None => false,
        }
    });
    bounds.vmax_truncated = matcher.truncated;

    let status = if witness.is_some() {
        SearchStatus::FeasibleWitness
    } else if bounds.vmax_truncated {
        SearchStatus::Inconclusive
    } else {
        SearchStatus::InfeasibleWithinBounds
    };
    let obstructed_a = match status {
        SearchStatus::InfeasibleWithinBounds => square_side(source),
        _ => None,
    };
    Ok(SearchReport { status, witness, bounds_used: bounds, obstructed_a })
}

fn square_side(p: &Polygon2D) -> Option<Rational> {
    let a = p.x_intercept().clone();
    (Polygon2D::square(a.clone()).ok()? == *p).then_some(a)
}

/// All nonzero count vectors bounded by the multiplicities of `orbits`.
fn sub_products(orbits: &[(CombOrbit, u32)]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &(_, m) in orbits {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=m).map(move |k| {
                    let mut p = prefix.clone();
                    p.push(k);
                    p
                })
            })
            .collect();
    }
    out.retain(|c| c.iter().any(|&k| k > 0));
    out
}

/// Multisets of factors (indices non-decreasing, i.e. counts non-increasing)
/// summing to `remaining`, with at most `slots` factors. `visit` returns
/// true to stop.
fn search_factorizations<F: FnMut(&[usize]) -> bool>(
    factors: &[Factor],
    remaining: &[u32],
    start: usize,
    chosen: &mut Vec<usize>,
    slots: usize,
    visit: &mut F,
) -> bool {
    if remaining.iter().all(|&r| r == 0) {
        return visit(chosen);
    }
    if slots == 0 {
        return false;
    }
    for idx in start..factors.len() {
        let f = &factors[idx];
        if f.counts.iter().zip(remaining).any(|(c, r)| c > r) {
            continue;
        }
        let rest: Vec<u32> = remaining.iter().zip(&f.counts).map(|(r, c)| r - c).collect();
        chosen.push(idx);
        let stop = search_factorizations(factors, &rest, idx, chosen, slots - 1, visit);
        chosen.pop();
        if stop {
            return true;
        }
    }
    false
}

struct Matcher<'a> {
    source: &'a Polygon2D,
    target: &'a Polygon2D,
    c: &'a Rational,
    limits: SearchLimits,
    cache: HashMap<Vec<u32>, Vec<CombOrbitSet>>,
    truncated: bool,
}

impl Matcher<'_> {
    /// Every `α_j` with `α_j ≤ α'_j`, in sorted order.
    fn matches(&mut self, f: &Factor) -> &[CombOrbitSet] {
        if !self.cache.contains_key(&f.counts) {
            let found = self.compute(f);
            self.cache.insert(f.counts.clone(), found);
        }
        &self.cache[&f.counts]
    }

    fn compute(&mut self, f: &Factor) -> Vec<CombOrbitSet> {
        let cap = action(self.target, &f.set);
        let budget = &cap - self.c * int(f.inv.x + f.inv.y + f.inv.m - 1);
        let slack = |v: Direction, s: &Rational| s - self.c * int(v.0 + v.1);
        let vmax = self.limits.vmax;
        let reach = floor_i64(&(crate::rational::max(cap.clone(), budget.clone()) / self.c));
        let mut dirs = Vec::new();
        for p in -reach..=reach {
            for q in -reach..=reach {
                let v = Direction(p, q);
                if v == Direction(0, 0) || num_integer::gcd(p, q) != 1 || (p < 0 && q < 0) {
                    continue;
                }
                let s = support_unchecked(self.source, v);
                if !s.is_positive() || s > cap || slack(v, &s) > budget {
                    continue;
                }
                if p.abs() > vmax || q.abs() > vmax {
                    self.truncated = true;
                } else {
                    dirs.push((v, s));
                }
            }
        }
        let mut cands: Vec<Candidate> = orbit_candidates(&dirs, self.limits.axis_orbits);
        for cand in &mut cands {
            cand.cost = slack(cand.orbit.v(), &cand.action);
        }
        let mut out = Vec::new();
        enumerate_capped(&cands, &cap, Some(&budget), |set, inv| {
            if inv.i == f.inv.i && writhe_condition(&inv, &f.inv) {
                out.push(set);
            }
        });
        out.sort();
        out
    }
}

/// Tries to pick `α_j` for each factor so that (b) and (c) hold.
fn match_factorization(parts: &[&Factor], matcher: &mut Matcher<'_>, examined: &mut u64) -> Option<Witness> {
    let lists: Vec<Vec<CombOrbitSet>> = parts.iter().map(|f| matcher.matches(f).to_vec()).collect();
    if lists.iter().any(|l| l.is_empty()) {
        return None;
    }
    let primes: Vec<CombOrbitSet> = parts.iter().map(|f| f.set.clone()).collect();
    let mut picked: Vec<CombOrbitSet> = Vec::new();
    if pick(&lists, &primes, &mut picked, examined) {
        let alpha = picked
            .iter()
            .try_fold(CombOrbitSet::empty(), |acc, a| acc.product(a))
            .expect("checked while picking");
        return Some(Witness { alpha, alpha_factors: picked, alpha_prime_factors: primes });
    }
    None
}

fn pick(
    lists: &[Vec<CombOrbitSet>],
    primes: &[CombOrbitSet],
    picked: &mut Vec<CombOrbitSet>,
    examined: &mut u64,
) -> bool {
    let j = picked.len();
    if j == lists.len() {
        return true;
    }
    for cand in &lists[j] {
        *examined += 1;
        picked.push(cand.clone());
        if extension_ok(picked, primes) && pick(lists, primes, picked, examined) {
            return true;
        }
        picked.pop();
    }
    false
}

/// Checks (b) and (c) for every pair and subset involving the newest factor,
/// plus that the running product is a valid orbit set.
fn extension_ok(picked: &[CombOrbitSet], primes: &[CombOrbitSet]) -> bool {
    let j = picked.len() - 1;
    for i in 0..j {
        // Equal factors share every orbit: an elliptic one violates (b), a
        // hyperbolic one makes the product invalid.
        if picked[i] == picked[j] {
            return false;
        }
        if primes[i] == primes[j] && picked[i].shares_elliptic(&picked[j]) {
            return false;
        }
    }
    for mask in 0u64..(1 << j) {
        let mut a = picked[j].clone();
        let mut b = primes[j].clone();
        for i in (0..j).filter(|i| mask >> i & 1 == 1) {
            a = match a.product(&picked[i]) {
                Ok(p) => p,
                Err(_) => return false,
            };
            b = b.product(&primes[i]).expect("sub-products of α' are valid");
        }
        let ia = orbit_invariants(&a).i;
        if ia != orbit_invariants(&b).i || ia <= 0 {
            return false;
        }
    }
    true
}

/// Replays (a), (b), (c) and the product identities on a witness.
pub fn verify_witness(source: &Polygon2D, target: &Polygon2D, alpha_prime: &CombOrbitSet, w: &Witness) -> bool {
    let l = w.alpha_factors.len();
    if l == 0 || l != w.alpha_prime_factors.len() {
        return false;
    }
    let prod = |sets: &[CombOrbitSet]| sets.iter().try_fold(CombOrbitSet::empty(), |acc, s| acc.product(s)).ok();
    if prod(&w.alpha_factors).as_ref() != Some(&w.alpha) || prod(&w.alpha_prime_factors).as_ref() != Some(alpha_prime) {
        return false;
    }
    if orbit_invariants(&w.alpha).i != orbit_invariants(alpha_prime).i {
        return false;
    }
    // (a)
    for (a, b) in w.alpha_factors.iter().zip(&w.alpha_prime_factors) {
        if !leq_relation(source, target, a, b).holds {
            return false;
        }
    }
    // (b)
    for i in 0..l {
        for j in 0..l {
            if i == j {
                continue;
            }
            let same = w.alpha_factors[i] == w.alpha_factors[j] || w.alpha_prime_factors[i] == w.alpha_prime_factors[j];
            if same && w.alpha_factors[i].shares_elliptic(&w.alpha_factors[j]) {
                return false;
            }
        }
    }
    // (c)
    for mask in 1u64..(1 << l) {
        let pick = |sets: &[CombOrbitSet]| -> Vec<CombOrbitSet> {
            (0..l).filter(|i| mask >> i & 1 == 1).map(|i| sets[i].clone()).collect()
        };
        let (Some(a), Some(b)) = (prod(&pick(&w.alpha_factors)), prod(&pick(&w.alpha_prime_factors))) else {
            return false;
        };
        let ia = orbit_invariants(&a).i;
        if ia != orbit_invariants(&b).i || ia <= 0 {
            return false;
        }
    }
    true
}
