//! Support functions, the diagonal and NDUC radius, and inclusion bounds.

use num_traits::{Signed, Zero};

use crate::domain::{Direction, Point, Polygon2D, Rectilinear2D, StandardDomain, StandardKind, ToricDomain};
use crate::rational::{int, max, min, Rational};
use crate::Error;

/// `max { v . p : p in the free boundary }`, attained at a vertex of the
/// chain.
pub fn support(domain: &Polygon2D, v: Direction) -> Result<Rational, Error> {
    if v == Direction(0, 0) {
        return Err(Error::InvalidArgument("support direction must be nonzero".into()));
    }
    Ok(support_unchecked(domain, v))
}

pub(crate) fn support_unchecked(domain: &Polygon2D, v: Direction) -> Rational {
    domain
        .vertices()
        .iter()
        .map(|p| p.pair(v))
        .max()
        .expect("chain has at least two vertices")
}

/// `sup { a : (a, ..., a) in the moment region }`.
pub fn delta(domain: &ToricDomain) -> Result<Rational, Error> {
    match domain {
        ToricDomain::Standard(s) => Ok(match s.kind {
            StandardKind::Ball => &s.a / int(s.n as i64),
            StandardKind::Cylinder | StandardKind::Cube | StandardKind::Nduc => s.a.clone(),
        }),
        ToricDomain::Polygon(p) => Ok(polygon_delta(p)),
        ToricDomain::Rectilinear(r) => {
            let best = r
                .rects()
                .iter()
                .filter(|q| max(q.x0.clone(), q.y0.clone()) <= min(q.x1.clone(), q.y1.clone()))
                .map(|q| min(q.x1.clone(), q.y1.clone()))
                .max();
            match best {
                Some(b) => Ok(b),
                None if r.contains(&Point::new(int(0), int(0))) => Ok(int(0)),
                None => Err(Error::Inapplicable("the diagonal does not meet the domain".into())),
            }
        }
    }
}

/// Where the diagonal ray leaves a convex polygon.
fn polygon_delta(p: &Polygon2D) -> Rational {
    // x - y goes from x0 > 0 at the first vertex to -y1 < 0 at the last one.
    for (a, b) in p.edges() {
        let fa = &a.x - &a.y;
        let fb = &b.x - &b.y;
        if !fa.is_negative() && !fb.is_positive() {
            if fa.is_zero() {
                return a.x.clone();
            }
            let t = &fa / (&fa - &fb);
            return &a.x + t * (&b.x - &a.x);
        }
    }
    unreachable!("the chain crosses the diagonal")
}

/// `inf { a : X ⊂ N_n(a) }`, i.e. the sup over the region of the smallest
/// coordinate.
pub fn eta(domain: &ToricDomain) -> Result<Rational, Error> {
    match domain {
        ToricDomain::Standard(_) => delta(domain),
        ToricDomain::Polygon(p) => Ok(polygon_delta(p)),
        ToricDomain::Rectilinear(r) => Ok(r
            .rects()
            .iter()
            .map(|q| min(q.x1.clone(), q.y1.clone()))
            .max()
            .expect("nonempty")),
    }
}

/// Outward normals of the free boundary are in the closed positive quadrant.
///
/// For NDUCs this is a convention: they satisfy the cube sandwich with
/// `delta = a` even though their boundary is not smooth.
pub fn is_monotone(domain: &ToricDomain) -> bool {
    match domain {
        ToricDomain::Standard(_) => true,
        ToricDomain::Polygon(p) => p.edges().all(|(a, b)| {
            let d = b.sub(a);
            !d.x.is_positive() && !d.y.is_negative()
        }),
        ToricDomain::Rectilinear(r) => CellGrid::new(r).is_down_closed(),
    }
}

/// Convex polygons are always convex; a staircase is concave when its
/// complement in the bounding box is convex (a single rectangle or empty).
pub fn is_concave(domain: &ToricDomain) -> bool {
    match domain {
        ToricDomain::Rectilinear(r) => {
            let grid = CellGrid::new(r);
            grid.is_down_closed() && grid.complement_is_rectangle()
        }
        _ => false,
    }
}

/// `sup { a : P_n(a) ⊂ X }`, a lower bound for the cube capacity.
pub fn cube_inclusion(domain: &ToricDomain) -> Result<Rational, Error> {
    match domain {
        ToricDomain::Standard(s) => Ok(match s.kind {
            StandardKind::Ball => &s.a / int(s.n as i64),
            StandardKind::Cylinder | StandardKind::Cube | StandardKind::Nduc => s.a.clone(),
        }),
        ToricDomain::Polygon(p) => Ok(min(
            polygon_delta(p),
            min(p.x_intercept().clone(), p.y_intercept().clone()),
        )),
        ToricDomain::Rectilinear(r) => {
            let cuts: Vec<Rational> = r
                .rects()
                .iter()
                .flat_map(|q| [q.x0.clone(), q.x1.clone(), q.y0.clone(), q.y1.clone()])
                .collect();
            Ok(CellGrid::with_extra(r, &cuts).largest_square())
        }
    }
}

/// `sup { a : B_n(a) ⊂ X }`: the largest moment simplex inside the region.
pub fn simplex_inclusion(domain: &ToricDomain) -> Rational {
    match domain {
        ToricDomain::Standard(s) => match s.kind {
            StandardKind::Ball | StandardKind::Cylinder | StandardKind::Cube => s.a.clone(),
            StandardKind::Nduc => &s.a * int(s.n as i64),
        },
        ToricDomain::Polygon(p) => min(p.x_intercept().clone(), p.y_intercept().clone()),
        ToricDomain::Rectilinear(r) => CellGrid::new(r).largest_simplex(),
    }
}

/// `inf { a : X ⊂ Z_n(a) }` over the coordinate cylinders, `None` when no
/// cylinder contains the region.
pub fn cylinder_cover(domain: &ToricDomain) -> Option<Rational> {
    match domain {
        ToricDomain::Standard(s) => match s.kind {
            StandardKind::Ball | StandardKind::Cylinder | StandardKind::Cube => Some(s.a.clone()),
            StandardKind::Nduc => (s.n == 1).then(|| s.a.clone()),
        },
        ToricDomain::Polygon(p) => {
            let mx = p.vertices().iter().map(|v| v.x.clone()).max()?;
            let my = p.vertices().iter().map(|v| v.y.clone()).max()?;
            Some(min(mx, my))
        }
        ToricDomain::Rectilinear(r) => {
            let mx = r.rects().iter().map(|q| q.x1.clone()).max()?;
            let my = r.rects().iter().map(|q| q.y1.clone()).max()?;
            Some(min(mx, my))
        }
    }
}

/// Whether a point with nonnegative coordinates lies in the closed region.
pub fn contains(domain: &ToricDomain, p: &[Rational]) -> bool {
    if p.iter().any(|c| c.is_negative()) {
        return false;
    }
    match domain {
        ToricDomain::Standard(s) => standard_contains(s, p),
        ToricDomain::Polygon(poly) => p.len() == 2 && poly.contains(&Point::new(p[0].clone(), p[1].clone())),
        ToricDomain::Rectilinear(r) => p.len() == 2 && r.contains(&Point::new(p[0].clone(), p[1].clone())),
    }
}

fn standard_contains(s: &StandardDomain, p: &[Rational]) -> bool {
    if p.len() != s.n {
        return false;
    }
    match s.kind {
        StandardKind::Ball => p.iter().fold(int(0), |acc, c| acc + c) <= s.a,
        StandardKind::Cylinder => p[0] <= s.a,
        StandardKind::Cube => p.iter().all(|c| *c <= s.a),
        StandardKind::Nduc => p.iter().any(|c| *c <= s.a),
    }
}

/// Whether a point of the closed region lies on its topological boundary.
pub fn on_boundary(domain: &ToricDomain, p: &[Rational]) -> bool {
    if !contains(domain, p) {
        return false;
    }
    if p.iter().any(|c| c.is_zero()) {
        return true;
    }
    match domain {
        ToricDomain::Standard(s) => match s.kind {
            StandardKind::Ball => p.iter().fold(int(0), |acc, c| acc + c) == s.a,
            StandardKind::Cylinder => p[0] == s.a,
            StandardKind::Cube => p.contains(&s.a),
            StandardKind::Nduc => !p.iter().any(|c| *c < s.a),
        },
        ToricDomain::Polygon(poly) => poly.on_chain(&Point::new(p[0].clone(), p[1].clone())),
        ToricDomain::Rectilinear(r) => !CellGrid::new(r).interior(&Point::new(p[0].clone(), p[1].clone())),
    }
}

/// Coordinate-compressed occupancy grid of a rectangle union. Cell `(i, j)`
/// is `[xs[i], xs[i+1]] x [ys[j], ys[j+1]]`; the grid spans from the origin
/// to the bounding box.
struct CellGrid {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
    covered: Vec<Vec<bool>>,
}

impl CellGrid {
    fn new(r: &Rectilinear2D) -> Self {
        Self::with_extra(r, &[])
    }

    /// Extra cut values are inserted on both axes.
    fn with_extra(r: &Rectilinear2D, extra: &[Rational]) -> Self {
        let mut xs = vec![int(0)];
        let mut ys = vec![int(0)];
        for q in r.rects() {
            xs.extend([q.x0.clone(), q.x1.clone()]);
            ys.extend([q.y0.clone(), q.y1.clone()]);
        }
        xs.extend(extra.iter().cloned());
        ys.extend(extra.iter().cloned());
        let xmax = xs.iter().max().cloned().unwrap();
        let ymax = ys.iter().max().cloned().unwrap();
        xs.retain(|x| !x.is_negative() && *x <= xmax);
        ys.retain(|y| !y.is_negative() && *y <= ymax);
        xs.sort();
        xs.dedup();
        ys.sort();
        ys.dedup();
        let two = int(2);
        let covered = (0..xs.len() - 1)
            .map(|i| {
                let cx = (&xs[i] + &xs[i + 1]) / &two;
                (0..ys.len() - 1)
                    .map(|j| {
                        let cy = (&ys[j] + &ys[j + 1]) / &two;
                        r.contains(&Point::new(cx.clone(), cy))
                    })
                    .collect()
            })
            .collect();
        CellGrid { xs, ys, covered }
    }

    fn nx(&self) -> usize {
        self.xs.len() - 1
    }

    fn ny(&self) -> usize {
        self.ys.len() - 1
    }

    fn is_down_closed(&self) -> bool {
        for i in 0..self.nx() {
            for j in 0..self.ny() {
                if self.covered[i][j]
                    && ((i > 0 && !self.covered[i - 1][j]) || (j > 0 && !self.covered[i][j - 1]))
                {
                    return false;
                }
            }
        }
        true
    }

    fn complement_is_rectangle(&self) -> bool {
        let holes: Vec<(usize, usize)> = (0..self.nx())
            .flat_map(|i| (0..self.ny()).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.covered[i][j])
            .collect();
        if holes.is_empty() {
            return true;
        }
        let (i0, i1) = (holes.iter().map(|h| h.0).min().unwrap(), holes.iter().map(|h| h.0).max().unwrap());
        let (j0, j1) = (holes.iter().map(|h| h.1).min().unwrap(), holes.iter().map(|h| h.1).max().unwrap());
        holes.len() == (i1 - i0 + 1) * (j1 - j0 + 1)
    }

    /// Largest `a` such that `[0, a]^2` is covered. Expects every candidate
    /// side length to be a cut on both axes.
    fn largest_square(&self) -> Rational {
        let mut best = int(0);
        for a in self.xs.iter().filter(|a| a.is_positive() && self.ys.contains(a)) {
            let covered = (0..self.nx()).filter(|&i| self.xs[i + 1] <= *a).all(|i| {
                (0..self.ny()).filter(|&j| self.ys[j + 1] <= *a).all(|j| self.covered[i][j])
            });
            if !covered {
                break;
            }
            best = a.clone();
        }
        best
    }

    /// Largest `a` with the triangle `x + y <= a` covered.
    fn largest_simplex(&self) -> Rational {
        let mut best = min(self.xs.last().unwrap().clone(), self.ys.last().unwrap().clone());
        for i in 0..self.nx() {
            for j in 0..self.ny() {
                if !self.covered[i][j] {
                    best = min(best, &self.xs[i] + &self.ys[j]);
                }
            }
        }
        best
    }

    /// Whether a neighbourhood of `p` is covered.
    fn interior(&self, p: &Point) -> bool {
        let xi = self.xs.iter().position(|x| *x >= p.x);
        let yi = self.ys.iter().position(|y| *y >= p.y);
        let (Some(xi), Some(yi)) = (xi, yi) else {
            return false;
        };
        // Cells whose closure contains p.
        let cols: Vec<usize> = if self.xs[xi] == p.x {
            [xi.checked_sub(1), (xi < self.nx()).then_some(xi)].into_iter().flatten().collect()
        } else {
            vec![xi - 1]
        };
        let rows: Vec<usize> = if self.ys[yi] == p.y {
            [yi.checked_sub(1), (yi < self.ny()).then_some(yi)].into_iter().flatten().collect()
        } else {
            vec![yi - 1]
        };
        // A point on the outer grid edge has a neighbourhood leaving the grid.
        let full_cols = if self.xs[xi] == p.x { 2 } else { 1 };
        let full_rows = if self.ys[yi] == p.y { 2 } else { 1 };
        cols.len() == full_cols
            && rows.len() == full_rows
            && cols.iter().all(|&i| rows.iter().all(|&j| self.covered[i][j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Rect;
    use crate::rational::rat;

    fn omega(a: Rational) -> Polygon2D {
        let one = int(1);
        Polygon2D::new(vec![
            Point::new(&one - &a * int(2), int(0)),
            Point::new(&one - &a, a.clone()),
            Point::new(a.clone(), &one - &a),
            Point::new(int(0), &one - &a * int(2)),
        ])
        .unwrap()
    }

    fn cross(eta: Rational) -> ToricDomain {
        let two = &eta * int(2);
        Rectilinear2D::new(vec![
            Rect::new(int(0), two.clone(), int(0), eta.clone()),
            Rect::new(int(0), eta, int(0), two),
        ])
        .unwrap()
        .into()
    }

    #[test]
    fn support_examples() {
        let w = omega(rat(3, 10));
        assert_eq!(support(&w, Direction(1, -1)).unwrap(), rat(2, 5));
        assert_eq!(support(&w, Direction(0, 1)).unwrap(), rat(7, 10));
        let sq = Polygon2D::square(int(1)).unwrap();
        assert_eq!(support(&sq, Direction(1, 1)).unwrap(), int(2));
        assert!(support(&sq, Direction(0, 0)).is_err());
    }

    #[test]
    fn delta_examples() {
        let ball = StandardDomain::new(StandardKind::Ball, 2, int(1)).unwrap().into();
        assert_eq!(delta(&ball).unwrap(), rat(1, 2));
        assert_eq!(delta(&omega(rat(3, 10)).into()).unwrap(), rat(1, 2));
        for n in 1..5 {
            let cube = StandardDomain::new(StandardKind::Cube, n, rat(7, 3)).unwrap().into();
            assert_eq!(delta(&cube).unwrap(), rat(7, 3));
        }
        assert_eq!(delta(&Polygon2D::simplex(int(1)).unwrap().into()).unwrap(), rat(1, 2));
    }

    #[test]
    fn rectilinear_delta_without_diagonal() {
        let r: ToricDomain = Rectilinear2D::new(vec![Rect::new(int(1), int(2), int(0), rat(1, 2))])
            .unwrap()
            .into();
        assert!(delta(&r).is_err());
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(&omega(rat(1, 5)).into()).unwrap(), rat(1, 2));
        let nduc = StandardDomain::new(StandardKind::Nduc, 2, rat(5, 7)).unwrap().into();
        assert_eq!(eta(&nduc).unwrap(), rat(5, 7));
        let r: ToricDomain = Rectilinear2D::new(vec![
            Rect::new(int(0), int(2), int(0), rat(1, 2)),
            Rect::new(int(0), rat(1, 2), int(0), int(2)),
        ])
        .unwrap()
        .into();
        assert_eq!(eta(&r).unwrap(), rat(1, 2));
    }

    #[test]
    fn eta_brute_force_grid() {
        // max of min(x, y) over a rational grid refined with the rectangle
        // corners agrees with the closed form.
        let r = Rectilinear2D::new(vec![
            Rect::new(int(0), int(2), int(0), rat(1, 2)),
            Rect::new(int(0), rat(1, 2), int(0), int(2)),
        ])
        .unwrap();
        let mut grid: Vec<Rational> = (0..=40).map(|k| rat(k, 20)).collect();
        grid.extend([rat(1, 2), int(2)]);
        let mut best = int(0);
        for x in &grid {
            for y in &grid {
                if r.contains(&Point::new(x.clone(), y.clone())) {
                    best = max(best, min(x.clone(), y.clone()));
                }
            }
        }
        assert_eq!(best, eta(&r.into()).unwrap());
    }

    #[test]
    fn monotonicity() {
        assert!(!is_monotone(&omega(rat(1, 5)).into()));
        assert!(is_monotone(&Polygon2D::simplex(int(1)).unwrap().into()));
        assert!(is_monotone(&Polygon2D::square(int(1)).unwrap().into()));
        assert!(is_monotone(&cross(rat(1, 2))));
        assert!(is_concave(&cross(rat(1, 2))));
        let notch: ToricDomain = Rectilinear2D::new(vec![
            Rect::new(int(0), int(2), int(0), rat(1, 2)),
            Rect::new(rat(3, 2), int(2), int(0), int(1)),
        ])
        .unwrap()
        .into();
        assert!(!is_monotone(&notch));
        assert!(!is_concave(&notch));
    }

    #[test]
    fn staircase_with_two_steps_is_not_concave() {
        let s: ToricDomain = Rectilinear2D::new(vec![
            Rect::new(int(0), int(3), int(0), int(1)),
            Rect::new(int(0), int(2), int(0), int(2)),
            Rect::new(int(0), int(1), int(0), int(3)),
        ])
        .unwrap()
        .into();
        assert!(is_monotone(&s));
        assert!(!is_concave(&s));
        assert_eq!(cube_inclusion(&s).unwrap(), int(2));
        assert_eq!(delta(&s).unwrap(), int(2));
        assert_eq!(eta(&s).unwrap(), int(2));
    }

    #[test]
    fn cube_inclusion_examples() {
        assert_eq!(cube_inclusion(&omega(rat(1, 5)).into()).unwrap(), rat(1, 2));
        assert_eq!(cube_inclusion(&omega(rat(3, 10)).into()).unwrap(), rat(2, 5));
        let cube = StandardDomain::new(StandardKind::Cube, 2, rat(3, 4)).unwrap().into();
        assert_eq!(cube_inclusion(&cube).unwrap(), rat(3, 4));
        assert_eq!(cube_inclusion(&cross(rat(1, 2))).unwrap(), rat(1, 2));
    }

    #[test]
    fn boundary_points() {
        let c = cross(rat(1, 2));
        assert!(on_boundary(&c, &[rat(1, 2), rat(1, 2)]));
        assert!(on_boundary(&c, &[int(1), rat(1, 2)]));
        assert!(!on_boundary(&c, &[rat(1, 4), rat(1, 4)]));
        assert!(!on_boundary(&c, &[int(1), int(1)]));
        let w: ToricDomain = omega(rat(3, 10)).into();
        assert!(on_boundary(&w, &[rat(1, 2), rat(1, 2)]));
        assert!(!on_boundary(&w, &[rat(1, 4), rat(1, 2)]));
    }

    #[test]
    fn simplex_and_cylinder_brackets() {
        let c = cross(rat(1, 2));
        assert_eq!(simplex_inclusion(&c), int(1));
        assert_eq!(cylinder_cover(&c), Some(int(1)));
        let w: ToricDomain = omega(rat(3, 10)).into();
        assert_eq!(simplex_inclusion(&w), rat(2, 5));
        assert_eq!(cylinder_cover(&w), Some(rat(7, 10)));
        let n = StandardDomain::new(StandardKind::Nduc, 2, int(1)).unwrap().into();
        assert_eq!(cylinder_cover(&n), None);
        assert_eq!(simplex_inclusion(&n), int(2));
    }
}
