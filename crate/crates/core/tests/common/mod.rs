#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use toricap::{int, rat, CombOrbit, CombOrbitSet, Point, Polygon2D, Rect, Rectilinear2D, Rational};

/// Random monotone convex polygon: edge directions (-a, b) with a, b >= 0
/// sorted by angle, scaled by n_i / q with a shared q <= 20.
pub fn monotone_polygon(rng: &mut StdRng) -> Polygon2D {
    loop {
        let q = rng.gen_range(1..=20);
        let k = rng.gen_range(1..=5);
        let mut dirs: Vec<(i64, i64)> = (0..k)
            .map(|_| (rng.gen_range(0..=4), rng.gen_range(0..=4)))
            .filter(|&(a, b)| a + b > 0)
            .collect();
        // Sort by angle measured from (0, 1) toward (-1, 0): a/b increasing.
        dirs.sort_by(|&(a1, b1), &(a2, b2)| (a1 * b2).cmp(&(a2 * b1)));
        dirs.dedup_by(|&mut (a1, b1), &mut (a2, b2)| a1 * b2 == a2 * b1);
        if !dirs.iter().any(|d| d.0 > 0) || !dirs.iter().any(|d| d.1 > 0) {
            continue;
        }
        let steps: Vec<(Rational, Rational)> = dirs
            .iter()
            .map(|&(a, b)| {
                let t = rat(rng.gen_range(1..=20), q);
                (&t * int(a), &t * int(b))
            })
            .collect();
        let mut x = steps.iter().fold(int(0), |acc, s| acc + &s.0);
        let mut y = int(0);
        let mut chain = vec![Point::new(x.clone(), y.clone())];
        for (dx, dy) in &steps {
            x -= dx;
            y += dy;
            chain.push(Point::new(x.clone(), y.clone()));
        }
        if let Ok(p) = Polygon2D::new(chain) {
            return p;
        }
    }
}

/// Random staircase: rectangles [0, x_i] x [0, y_i] with x decreasing and y
/// increasing, plus a few redundant sub-rectangles.
pub fn staircase(rng: &mut StdRng) -> Rectilinear2D {
    let k = rng.gen_range(1..=5);
    let den = rng.gen_range(1..=20);
    let mut xs: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=40)).collect();
    let mut ys: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=40)).collect();
    xs.sort_unstable_by(|a, b| b.cmp(a));
    ys.sort_unstable();
    let mut rects: Vec<Rect> = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| Rect::new(int(0), rat(x, den), int(0), rat(y, den)))
        .collect();
    for _ in 0..rng.gen_range(0..3) {
        let i = rng.gen_range(0..k);
        let (x, y) = (xs[i], ys[i]);
        let x0 = rng.gen_range(0..x);
        let y0 = rng.gen_range(0..y);
        rects.push(Rect::new(rat(x0, den), rat(x, den), rat(y0, den), rat(y, den)));
    }
    Rectilinear2D::new(rects).expect("staircase is valid")
}

pub fn random_orbit(rng: &mut StdRng, vmax: i64) -> CombOrbit {
    loop {
        let p = rng.gen_range(-vmax..=vmax);
        let q = rng.gen_range(-vmax..=vmax);
        if let Ok(o) = CombOrbit::new(toricap::Direction(p, q), rng.gen_bool(0.7)) {
            return o;
        }
    }
}

/// Random orbit set with up to `k` distinct orbits, none in `avoid`.
pub fn random_set(rng: &mut StdRng, vmax: i64, mmax: u32, k: usize, avoid: &CombOrbitSet) -> CombOrbitSet {
    let mut factors: Vec<(CombOrbit, u32)> = Vec::new();
    for _ in 0..k {
        let o = random_orbit(rng, vmax);
        if avoid.multiplicity(&o) > 0 || factors.iter().any(|(f, _)| *f == o) {
            continue;
        }
        let m = if o.is_elliptic() { rng.gen_range(1..=mmax) } else { 1 };
        factors.push((o, m));
    }
    CombOrbitSet::new(factors).expect("distinct orbits")
}
