//! JSON domain files and report serialization.
//!
//! Domain files look like
//!
//! ```json
//! {"kind": "cube", "n": 2, "a": "1"}
//! {"kind": "polygon2d", "vertices": [["2/5","0"], ["7/10","3/10"], ["3/10","7/10"], ["0","2/5"]]}
//! {"kind": "rectilinear2d", "rects": [{"x0":"0","x1":"1","y0":"0","y1":"1/2"}]}
//! ```
//!
//! Rationals are always strings, `"p/q"` or `"p"`.

use serde::{Deserialize, Serialize};

use crate::capacities::{CapacityReport, XaCheck};
use crate::domain::{Point, Polygon2D, Rect, Rectilinear2D, StandardDomain, StandardKind, ToricDomain};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::Error;

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum DomainFile {
    Ball { n: usize, a: String },
    Cylinder { n: usize, a: String },
    Cube { n: usize, a: String },
    Nduc { n: usize, a: String },
    Polygon2d { vertices: Vec<[String; 2]> },
    Rectilinear2d { rects: Vec<RectFile> },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RectFile {
    x0: String,
    x1: String,
    y0: String,
    y1: String,
}

/// Parses and validates a domain document.
pub fn parse_domain(text: &str) -> Result<ToricDomain, Error> {
    let file: DomainFile = serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))?;
    let standard = |kind, n, a: &str| -> Result<ToricDomain, Error> {
        Ok(StandardDomain::new(kind, n, parse_rational(a)?)?.into())
    };
    match file {
        DomainFile::Ball { n, a } => standard(StandardKind::Ball, n, &a),
        DomainFile::Cylinder { n, a } => standard(StandardKind::Cylinder, n, &a),
        DomainFile::Cube { n, a } => standard(StandardKind::Cube, n, &a),
        DomainFile::Nduc { n, a } => standard(StandardKind::Nduc, n, &a),
        DomainFile::Polygon2d { vertices } => {
            let pts = vertices
                .iter()
                .map(|[x, y]| Ok(Point::new(parse_rational(x)?, parse_rational(y)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(Polygon2D::new(pts)?.into())
        }
        DomainFile::Rectilinear2d { rects } => {
            let rs = rects
                .iter()
                .map(|r| {
                    Ok(Rect::new(
                        parse_rational(&r.x0)?,
                        parse_rational(&r.x1)?,
                        parse_rational(&r.y0)?,
                        parse_rational(&r.y1)?,
                    ))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(Rectilinear2D::new(rs)?.into())
        }
    }
}

/// Canonical JSON for a domain (lowest-terms rationals, collinear-free
/// chain), on one line.
pub fn serialize_domain(domain: &ToricDomain) -> String {
    let s = |r: &Rational| format_rational(r);
    let file = match domain {
        ToricDomain::Standard(d) => {
            let (n, a) = (d.n, s(&d.a));
            match d.kind {
                StandardKind::Ball => DomainFile::Ball { n, a },
                StandardKind::Cylinder => DomainFile::Cylinder { n, a },
                StandardKind::Cube => DomainFile::Cube { n, a },
                StandardKind::Nduc => DomainFile::Nduc { n, a },
            }
        }
        ToricDomain::Polygon(p) => DomainFile::Polygon2d {
            vertices: p.vertices().iter().map(|v| [s(&v.x), s(&v.y)]).collect(),
        },
        ToricDomain::Rectilinear(r) => DomainFile::Rectilinear2d {
            rects: r
                .rects()
                .iter()
                .map(|q| RectFile { x0: s(&q.x0), x1: s(&q.x1), y0: s(&q.y0), y1: s(&q.y1) })
                .collect(),
        },
    };
    serde_json::to_string(&file).expect("plain data serializes")
}

pub fn report_json(report: &CapacityReport) -> String {
    serde_json::to_string_pretty(report).expect("plain data serializes")
}

pub const CSV_HEADER: &str = "a,delta,eta,cL,cP_lo,cP_hi,cN_lo,cN_hi,monotone";

/// One CSV row; `a` is empty for reports outside a parameter sweep.
pub fn report_csv_row(a: Option<&Rational>, r: &CapacityReport) -> String {
    let cl = r.c_l.value.as_ref().map(format_rational).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{}",
        a.map(format_rational).unwrap_or_default(),
        r.delta,
        r.eta,
        cl,
        r.c_p.lower,
        r.c_p.upper,
        r.c_n.lower,
        r.c_n.upper,
        r.monotone
    )
}

pub fn xa_csv(rows: &[XaCheck]) -> String {
    let mut out = format!("{CSV_HEADER},pass\n");
    for row in rows {
        out.push_str(&report_csv_row(Some(&row.a), &row.got));
        out.push_str(&format!(",{}\n", row.pass));
    }
    out
}
