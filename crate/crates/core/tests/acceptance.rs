//! End-to-end acceptance checks. Runs as a plain binary so that every
//! criterion prints its own PASS/FAIL line under `cargo test`.

mod common;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::time::{Duration, Instant};

use toricap::capacities::{capacity_report, omega_a};
use toricap::ech::{cube_bound, finite_d_bound, orbit_invariants};
use toricap::geometry::{cube_inclusion, delta, eta};
use toricap::lagrangian::{a_min_brute, a_min_closed};
use toricap::search::verify_witness;
use toricap::{
    int, obstruction_search, rat, ClRule, CombOrbitSet, Polygon2D, Rational, Rect, Rectilinear2D, SearchLimits,
    SearchStatus, StandardDomain, StandardKind, ToricDomain,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn xa_values() -> Vec<Rational> {
    vec![rat(1, 8), rat(1, 5), rat(1, 4), rat(3, 10), rat(1, 3), rat(2, 5), rat(9, 20)]
}

fn ac1_omega_a_family() -> Outcome {
    let half = rat(1, 2);
    for a in xa_values() {
        let r = capacity_report(&omega_a(&a).unwrap().into()).map_err(|e| e.to_string())?;
        let expected = toricap::rational::min(int(1) - &a * int(2), half.clone());
        ensure(r.c_p.exact && r.c_p.lower == expected, || format!("a = {a}: c_P = {:?}, expected {expected}", r.c_p))?;
        ensure(r.c_l.value.as_ref() == Some(&half), || format!("a = {a}: c_L = {:?}", r.c_l.value))?;
        ensure(r.c_n.exact && r.c_n.lower == half, || format!("a = {a}: c^N = {:?}", r.c_n))?;
    }
    Ok("7 parameters, c_P = min(1-2a, 1/2), c_L = c^N = 1/2".into())
}

fn collapses(d: &ToricDomain) -> Result<(), String> {
    let (ci, de, et) = (cube_inclusion(d).unwrap(), delta(d).unwrap(), eta(d).unwrap());
    ensure(ci == de && de == et, || format!("cube_inclusion {ci}, delta {de}, eta {et} for {d:?}"))?;
    let r = capacity_report(d).unwrap();
    ensure(r.monotone, || format!("not flagged monotone: {d:?}"))?;
    ensure(r.c_p.value() == Some(&de) && r.c_n.value() == Some(&de) && r.c_l.value.as_ref() == Some(&de), || {
        format!("report does not collapse to {de}: {r:?}")
    })
}

fn ac2_sandwich() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    for _ in 0..250 {
        collapses(&common::staircase(&mut rng).into())?;
    }
    for _ in 0..250 {
        let p = common::monotone_polygon(&mut rng);
        if p.vertices().iter().any(|v| *v.x.denom() > 20.into() || *v.y.denom() > 20.into()) {
            return Err(format!("generator produced denominator > 20: {p:?}"));
        }
        collapses(&p.into())?;
    }
    Ok("250 staircases + 250 monotone polygons collapse to delta".into())
}

fn ac3_amin_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let mut n = 0;
    for dim in [2usize, 3] {
        for _ in 0..250 {
            let x: Vec<Rational> = (0..dim)
                .map(|_| {
                    let d = rng.gen_range(1..=12);
                    rat(rng.gen_range(1..=d), d)
                })
                .collect();
            let closed = a_min_closed(&x).unwrap();
            let (brute, k) = a_min_brute(&x, 50).unwrap();
            ensure(closed == brute, || format!("x = {x:?}: closed {closed}, brute {brute} at {k:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} points in dimensions 2 and 3 agree with K = 50"))
}

fn ac4_cube_bound() -> Outcome {
    for a in [rat(3, 10), rat(1, 3), rat(2, 5)] {
        let b = cube_bound(&omega_a(&a).unwrap()).map_err(|e| e.to_string())?;
        ensure(b == int(1) - &a * int(2), || format!("cube_bound(Ω_{a}) = {b}"))?;
    }
    let w = omega_a(&rat(3, 10)).unwrap();
    let limit = rat(2, 5);
    let c = int(3) * rat(4, 5) + int(6);
    let mut prev: Option<Rational> = None;
    for d in [3u64, 9, 30, 90, 300] {
        let f = finite_d_bound(&w, d).unwrap();
        if let Some(p) = &prev {
            ensure(f <= *p, || format!("not non-increasing at d = {d}: {f} > {p}"))?;
        }
        let gap = &f - &limit;
        ensure(gap >= int(0) && gap <= &c / int(d as i64), || format!("d = {d}: |{f} - 2/5| > C/d"))?;
        prev = Some(f);
    }
    ensure(finite_d_bound(&w, 3).unwrap() == rat(4, 5), || "d = 3 value".into())?;
    ensure(finite_d_bound(&w, 30).unwrap() == rat(8, 19), || "d = 30 value".into())?;
    Ok("cube bound 1-2a; finite-d bounds 4/5 (d=3), 8/19 (d=30), monotone, within C/d".into())
}

fn ac5_index_algebra() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..1000 {
        let a = common::random_set(&mut rng, 5, 4, 4, &CombOrbitSet::empty());
        let b = common::random_set(&mut rng, 5, 4, 4, &a);
        let ab = a.product(&b).map_err(|e| e.to_string())?;
        let mut cross = 0i64;
        for (oa, ma) in a.factors() {
            for (ob, mb) in b.factors() {
                let (va, vb) = (oa.v(), ob.v());
                cross += *ma as i64 * *mb as i64 * (va.0 * vb.1).max(vb.0 * va.1);
            }
        }
        let (ia, ib, iab) = (orbit_invariants(&a), orbit_invariants(&b), orbit_invariants(&ab));
        ensure(iab.i == ia.i + ib.i + 2 * cross, || format!("index not additive for {a} and {b}"))?;
        ensure(
            iab.x == ia.x + ib.x && iab.y == ia.y + ib.y && iab.m == ia.m + ib.m && iab.h == ia.h + ib.h,
            || format!("x/y/m/h not additive for {a} and {b}"),
        )?;
    }
    Ok("1000 disjoint pairs".into())
}

fn ac6_search() -> (Outcome, Duration, Outcome) {
    let small = || -> Outcome {
        let w = omega_a(&rat(3, 10)).unwrap();
        let e11: CombOrbitSet = "e(1,1)".parse().unwrap();
        let r = obstruction_search(&w, &w, &e11, SearchLimits::new(3, 3)).map_err(|e| e.to_string())?;
        ensure(r.status == SearchStatus::FeasibleWitness, || format!("Ω = Ω': {:?}", r.status))?;
        let wit = r.witness.as_ref().unwrap();
        ensure(wit.alpha == e11 && verify_witness(&w, &w, &e11, wit), || format!("witness {wit:?}"))?;

        let mut rng = StdRng::seed_from_u64(6);
        let (mut feasible, mut runs) = (0, 0);
        while runs < 60 {
            let src = if rng.gen_bool(0.5) {
                Polygon2D::square(rat(rng.gen_range(3..=6), 6)).unwrap()
            } else {
                omega_a(&rat(rng.gen_range(5..=9), 20)).unwrap()
            };
            let dst = if rng.gen_bool(0.5) { omega_a(&rat(rng.gen_range(5..=9), 20)).unwrap() } else { src.clone() };
            let mut alpha = common::random_set(&mut rng, 1, 2, 2, &CombOrbitSet::empty());
            alpha = CombOrbitSet::new(alpha.factors().iter().filter(|(o, _)| o.is_elliptic()).copied().collect())
                .unwrap();
            let inv = orbit_invariants(&alpha);
            if inv.i <= 0 {
                continue;
            }
            runs += 1;
            let r = obstruction_search(&src, &dst, &alpha, SearchLimits::new(2, 2)).map_err(|e| e.to_string())?;
            if let Some(wit) = &r.witness {
                feasible += 1;
                ensure(verify_witness(&src, &dst, &alpha, wit), || format!("witness fails re-check: {wit:?}"))?;
            }
        }
        Ok(format!("Ω = Ω' finds α = e(1,1); {feasible}/{runs} random witnesses re-verify"))
    };
    let start = Instant::now();
    let small_outcome = small();
    let small_time = start.elapsed();

    let large = || -> Outcome {
        let src = Polygon2D::square(rat(1, 2)).unwrap();
        let dst = omega_a(&rat(3, 10)).unwrap();
        let alpha: CombOrbitSet = "e(1,-1)^30 * e(-1,1)^30 * e(1,1)^2".parse().unwrap();
        let r = obstruction_search(&src, &dst, &alpha, SearchLimits::new(3, 3)).map_err(|e| e.to_string())?;
        ensure(r.status == SearchStatus::InfeasibleWithinBounds, || format!("status {:?}", r.status))?;
        ensure(r.obstructed_a == Some(rat(1, 2)), || format!("obstructed_a {:?}", r.obstructed_a))?;
        let f = finite_d_bound(&dst, 30).unwrap();
        ensure(f == rat(8, 19) && f < rat(1, 2), || format!("finite_d_bound {f}"))?;
        Ok("P_2(1/2) vs Ω_3/10, d = 30: InfeasibleWithinBounds, 8/19 < 1/2".into())
    };
    (small_outcome, small_time, large())
}

fn ac7_spot_checks() -> Outcome {
    for b in [rat(1, 3), int(1), rat(7, 2)] {
        let n: ToricDomain = StandardDomain::new(StandardKind::Nduc, 2, b.clone()).unwrap().into();
        let r = capacity_report(&n).unwrap();
        ensure(r.c_p.value() == Some(&b), || format!("c_P(N_2({b})) = {:?}", r.c_p))?;
    }
    for eta in [rat(1, 2), rat(2, 3), int(1)] {
        let two = &eta * int(2);
        let d: ToricDomain = Rectilinear2D::new(vec![
            Rect::new(int(0), two.clone(), int(0), eta.clone()),
            Rect::new(int(0), eta.clone(), int(0), two),
        ])
        .unwrap()
        .into();
        let c = toricap::lagrangian::lagrangian_capacity(&d).unwrap();
        ensure(c.value.as_ref() == Some(&eta) && c.rule == ClRule::LatticeWitness, || {
            format!("η = {eta}: {c:?}")
        })?;
    }
    Ok("c_P(N_2(b)) = b; cross-shaped domains certified by a lattice witness".into())
}

fn main() {
    let mut failures = 0;
    let report = |id: &str, limit: Duration, f: &dyn Fn() -> Outcome, failures: &mut u32| {
        let start = Instant::now();
        let outcome = f();
        print_line(id, limit, start.elapsed(), outcome, failures);
    };
    report("AC1 Ω_a capacities", Duration::from_secs(5), &ac1_omega_a_family, &mut failures);
    report("AC2 cube sandwich", Duration::from_secs(30), &ac2_sandwich, &mut failures);
    report("AC3 A_min oracle", Duration::from_secs(60), &ac3_amin_oracle, &mut failures);
    report("AC4 cube bound", Duration::from_secs(5), &ac4_cube_bound, &mut failures);
    report("AC5 index algebra", Duration::from_secs(30), &ac5_index_algebra, &mut failures);
    let start = Instant::now();
    let (small, small_time, large) = ac6_search();
    let large_time = start.elapsed() - small_time;
    print_line("AC6 search (small)", Duration::from_secs(30), small_time, small, &mut failures);
    print_line("AC6 search (large)", Duration::from_secs(600), large_time, large, &mut failures);
    report("AC7 spot checks", Duration::from_secs(5), &ac7_spot_checks, &mut failures);
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}

fn print_line(id: &str, limit: Duration, took: Duration, outcome: Outcome, failures: &mut u32) {
    let secs = took.as_secs_f64();
    match outcome {
        Ok(msg) if took <= limit => println!("PASS  {id:<20} {secs:>7.3}s  {msg}"),
        Ok(msg) => {
            *failures += 1;
            println!("FAIL  {id:<20} {secs:>7.3}s  over the {}s limit: {msg}", limit.as_secs());
        }
        Err(msg) => {
            *failures += 1;
            println!("FAIL  {id:<20} {secs:>7.3}s  {msg}");
        }
    }
}
