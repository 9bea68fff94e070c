//! Moment regions of toric domains.

use num_traits::{Signed, Zero};
use std::fmt;

use crate::rational::{int, Rational};
use crate::Error;

/// A point of the first quadrant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn cross(&self, other: &Point) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Point) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    /// `v · p` for an integer direction `v`.
    pub fn pair(&self, v: Direction) -> Rational {
        &self.x * int(v.0) + &self.y * int(v.1)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Integer vector in `Z^2`, used for support-function directions and orbit
/// directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction(pub i64, pub i64);

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardKind {
    Ball,
    Cylinder,
    Cube,
    Nduc,
}

impl StandardKind {
    pub fn name(self) -> &'static str {
        match self {
            StandardKind::Ball => "ball",
            StandardKind::Cylinder => "cylinder",
            StandardKind::Cube => "cube",
            StandardKind::Nduc => "nduc",
        }
    }
}

/// One of the four reference families `B_n(a)`, `Z_n(a)`, `P_n(a)`, `N_n(a)`.
///
/// Moment regions, with `x >= 0` throughout:
/// - ball: `x_1 + ... + x_n <= a`
/// - cylinder: `x_1 <= a`
/// - cube: `x_i <= a` for every `i`
/// - NDUC: `x_i <= a` for some `i`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardDomain {
    pub kind: StandardKind,
    pub n: usize,
    pub a: Rational,
}

impl StandardDomain {
    pub fn new(kind: StandardKind, n: usize, a: Rational) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::Invariant("dimension n must be at least 1".into()));
        }
        if !a.is_positive() {
            return Err(Error::Invariant(format!("size a must be positive, got {a}")));
        }
        Ok(StandardDomain { kind, n, a })
    }

    pub fn is_bounded(&self) -> bool {
        match self.kind {
            StandardKind::Ball | StandardKind::Cube => true,
            StandardKind::Cylinder | StandardKind::Nduc => self.n == 1,
        }
    }
}

/// A 2D moment region given by its free boundary: the vertex chain running
/// counterclockwise from the x-axis intercept `(x0, 0)` to the y-axis
/// intercept `(0, y1)`. The region is the convex hull of the chain and the
/// origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon2D {
    vertices: Vec<Point>,
}

impl Polygon2D {
    /// Validates the chain and removes collinear midpoints.
    pub fn new(vertices: Vec<Point>) -> Result<Self, Error> {
        check_chain_shape(&vertices)?;
        let mut chain: Vec<Point> = Vec::with_capacity(vertices.len());
        for p in vertices {
            if chain.last() == Some(&p) {
                return Err(Error::Invariant(format!("repeated vertex {p}")));
            }
            while chain.len() >= 2 {
                let a = &chain[chain.len() - 2];
                let b = &chain[chain.len() - 1];
                let (e1, e2) = (b.sub(a), p.sub(b));
                if e1.cross(&e2).is_zero() {
                    if !e1.dot(&e2).is_positive() {
                        return Err(Error::Invariant(format!(
                            "vertex chain doubles back at {b}"
                        )));
                    }
                    chain.pop();
                } else {
                    break;
                }
            }
            chain.push(p);
        }
        check_convex_chain(&chain)?;
        Ok(Polygon2D { vertices: chain })
    }

    /// The canonical (collinear-free) vertex chain.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// `x(0)`: where the free boundary meets the x-axis.
    pub fn x_intercept(&self) -> &Rational {
        &self.vertices[0].x
    }

    /// `y(1)`: where the free boundary meets the y-axis.
    pub fn y_intercept(&self) -> &Rational {
        &self.vertices[self.vertices.len() - 1].y
    }

    /// Edges of the free boundary as `(start, end)` pairs.
    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.vertices.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// The square `[0, a]^2` as a polygon.
    pub fn square(a: Rational) -> Result<Self, Error> {
        Polygon2D::new(vec![
            Point::new(a.clone(), int(0)),
            Point::new(a.clone(), a.clone()),
            Point::new(int(0), a),
        ])
    }

    /// The simplex `x + y <= a` as a polygon.
    pub fn simplex(a: Rational) -> Result<Self, Error> {
        Polygon2D::new(vec![Point::new(a.clone(), int(0)), Point::new(int(0), a)])
    }

    /// Closed-region membership.
    pub fn contains(&self, p: &Point) -> bool {
        if p.x.is_negative() || p.y.is_negative() {
            return false;
        }
        // Inside iff on the origin side of every free-boundary edge.
        self.edges().all(|(a, b)| !b.sub(a).cross(&p.sub(a)).is_negative())
    }

    /// Whether `p` lies on the free boundary chain (endpoints included).
    pub fn on_chain(&self, p: &Point) -> bool {
        self.edges().any(|(a, b)| {
            let (e, w) = (b.sub(a), p.sub(a));
            e.cross(&w).is_zero() && !e.dot(&w).is_negative() && w.dot(&w) <= e.dot(&e)
        })
    }
}

fn check_chain_shape(vertices: &[Point]) -> Result<(), Error> {
    let n = vertices.len();
    if n < 2 {
        return Err(Error::Invariant(
            "vertex chain needs at least the two axis intercepts".into(),
        ));
    }
    let (first, last) = (&vertices[0], &vertices[n - 1]);
    if !first.y.is_zero() || !first.x.is_positive() {
        return Err(Error::Invariant(format!(
            "first vertex must be an x-axis intercept (x > 0, y = 0), got {first}"
        )));
    }
    if !last.x.is_zero() || !last.y.is_positive() {
        return Err(Error::Invariant(format!(
            "last vertex must be a y-axis intercept (x = 0, y > 0), got {last}"
        )));
    }
    for p in &vertices[1..n - 1] {
        if !p.x.is_positive() || !p.y.is_positive() {
            return Err(Error::Invariant(format!(
                "intermediate vertex {p} must have x > 0 and y > 0"
            )));
        }
    }
    Ok(())
}

fn check_convex_chain(chain: &[Point]) -> Result<(), Error> {
    for w in chain.windows(2) {
        if !w[0].cross(&w[1]).is_positive() {
            return Err(Error::Invariant(format!(
                "vertex chain not convex/ordered: {} to {} does not turn counterclockwise about the origin",
                w[0], w[1]
            )));
        }
    }
    for w in chain.windows(3) {
        if !w[1].sub(&w[0]).cross(&w[2].sub(&w[1])).is_positive() {
            return Err(Error::Invariant(format!(
                "vertex chain not convex/ordered: reflex or collinear turn at {}",
                w[1]
            )));
        }
    }
    Ok(())
}

/// Re-checkable weak-convexity predicate for an untrusted vertex list: the
/// chain joins the two axes and, together with the origin, bounds a convex
/// region. Collinear midpoints are tolerated.
pub fn is_weakly_convex(vertices: &[Point]) -> bool {
    Polygon2D::new(vertices.to_vec()).is_ok()
}

/// Axis-aligned closed rectangle `[x0, x1] x [y0, y1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

impl Rect {
    pub fn new(x0: Rational, x1: Rational, y0: Rational, y1: Rational) -> Self {
        Rect { x0, x1, y0, y1 }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.x0 <= p.x && p.x <= self.x1 && self.y0 <= p.y && p.y <= self.y1
    }

    fn touches(&self, other: &Rect) -> bool {
        self.x0 <= other.x1 && other.x0 <= self.x1 && self.y0 <= other.y1 && other.y0 <= self.y1
    }
}

/// A union of axis-aligned rectangles in the first quadrant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rectilinear2D {
    rects: Vec<Rect>,
}

impl Rectilinear2D {
    pub fn new(rects: Vec<Rect>) -> Result<Self, Error> {
        if rects.is_empty() {
            return Err(Error::Invariant("rectilinear domain needs at least one rectangle".into()));
        }
        for r in &rects {
            if r.x0.is_negative() || r.y0.is_negative() {
                return Err(Error::Invariant(format!(
                    "rectangle [{}, {}] x [{}, {}] leaves the first quadrant",
                    r.x0, r.x1, r.y0, r.y1
                )));
            }
            if r.x0 >= r.x1 || r.y0 >= r.y1 {
                return Err(Error::Invariant(format!(
                    "rectangle [{}, {}] x [{}, {}] is degenerate",
                    r.x0, r.x1, r.y0, r.y1
                )));
            }
        }
        if !rects.iter().any(|r| r.x0.is_zero() || r.y0.is_zero()) {
            return Err(Error::Invariant(
                "rectilinear domain must touch a coordinate axis".into(),
            ));
        }
        // Connectivity of the union via the closed-overlap graph.
        let mut seen = vec![false; rects.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..rects.len() {
                if !seen[j] && rects[i].touches(&rects[j]) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Invariant("union of rectangles is not connected".into()));
        }
        Ok(Rectilinear2D { rects })
    }

    pub fn rects(&self) -> &[Rect] {
        &self.rects
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.rects.iter().any(|r| r.contains(p))
    }
}

/// Tagged moment region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ToricDomain {
    Standard(StandardDomain),
    Polygon(Polygon2D),
    Rectilinear(Rectilinear2D),
}

impl ToricDomain {
    pub fn dimension(&self) -> usize {
        match self {
            ToricDomain::Standard(s) => s.n,
            _ => 2,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ToricDomain::Standard(s) => s.kind.name(),
            ToricDomain::Polygon(_) => "polygon2d",
            ToricDomain::Rectilinear(_) => "rectilinear2d",
        }
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            ToricDomain::Standard(s) => s.is_bounded(),
            _ => true,
        }
    }
}

impl From<StandardDomain> for ToricDomain {
    fn from(d: StandardDomain) -> Self {
        ToricDomain::Standard(d)
    }
}

impl From<Polygon2D> for ToricDomain {
    fn from(d: Polygon2D) -> Self {
        ToricDomain::Polygon(d)
    }
}

impl From<Rectilinear2D> for ToricDomain {
    fn from(d: Rectilinear2D) -> Self {
        ToricDomain::Rectilinear(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pt(x: Rational, y: Rational) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn collinear_midpoints_are_removed() {
        let p = Polygon2D::new(vec![
            pt(int(1), int(0)),
            pt(int(1), rat(1, 2)),
            pt(int(1), int(1)),
            pt(rat(1, 2), int(1)),
            pt(int(0), int(1)),
        ])
        .unwrap();
        assert_eq!(p, Polygon2D::square(int(1)).unwrap());
    }

    #[test]
    fn reflex_vertex_is_rejected() {
        let vs = vec![
            pt(int(1), int(0)),
            pt(rat(1, 2), rat(1, 2)),
            pt(int(2), int(1)),
            pt(int(0), int(1)),
        ];
        assert!(!is_weakly_convex(&vs));
        let err = Polygon2D::new(vs).unwrap_err().to_string();
        assert!(err.contains("not convex"), "{err}");
    }

    #[test]
    fn chain_must_end_on_axes() {
        let vs = vec![pt(int(1), int(0)), pt(int(0), int(1)), pt(int(1), int(1))];
        assert!(Polygon2D::new(vs).is_err());
        assert!(Polygon2D::new(vec![pt(int(1), int(0))]).is_err());
        assert!(Polygon2D::new(vec![pt(int(0), int(0)), pt(int(0), int(1))]).is_err());
    }

    #[test]
    fn doubling_back_is_rejected() {
        let vs = vec![
            pt(int(1), int(0)),
            pt(int(1), int(2)),
            pt(int(1), int(1)),
            pt(int(0), int(1)),
        ];
        assert!(Polygon2D::new(vs).is_err());
    }

    #[test]
    fn membership() {
        let s = Polygon2D::simplex(int(1)).unwrap();
        assert!(s.contains(&pt(rat(1, 2), rat(1, 2))));
        assert!(!s.contains(&pt(rat(1, 2), rat(2, 3))));
        assert!(s.on_chain(&pt(rat(1, 3), rat(2, 3))));
        assert!(!s.on_chain(&pt(rat(1, 3), rat(1, 3))));
    }

    #[test]
    fn rectilinear_validation() {
        let r = |a, b, c, d| Rect::new(int(a), int(b), int(c), int(d));
        assert!(Rectilinear2D::new(vec![r(0, 2, 0, 1), r(0, 1, 0, 2)]).is_ok());
        assert!(Rectilinear2D::new(vec![r(0, 1, 0, 1), r(3, 4, 0, 1)]).is_err());
        assert!(Rectilinear2D::new(vec![r(1, 2, 1, 2)]).is_err());
        assert!(Rectilinear2D::new(vec![r(0, 0, 0, 1)]).is_err());
        assert!(Rectilinear2D::new(vec![]).is_err());
    }

    #[test]
    fn standard_rejects_nonpositive_size() {
        assert!(StandardDomain::new(StandardKind::Cube, 2, int(0)).is_err());
        assert!(StandardDomain::new(StandardKind::Ball, 2, rat(-1, 2)).is_err());
        assert!(StandardDomain::new(StandardKind::Ball, 0, int(1)).is_err());
    }
}
