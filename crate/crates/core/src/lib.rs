//! Exact capacity computations for toric domains.
//!
//! The crate works entirely over exact rationals. It models moment regions
//! ([`domain`]), computes the diagonal, the NDUC radius and cube inclusions
//! ([`geometry`]), certifies Lagrangian capacities ([`lagrangian`]), evaluates
//! the combinatorial orbit-set machinery behind cube-capacity upper bounds
//! ([`ech`], [`search`]) and assembles everything into capacity reports
//! ([`capacities`]). [`io`] and [`cli`] provide the JSON/CSV formats and the
//! command-line front end.

pub mod capacities;
pub mod cli;
pub mod domain;
pub mod ech;
pub mod geometry;
pub mod io;
pub mod lagrangian;
pub mod rational;
pub mod search;

pub use capacities::{capacity_report, omega_a, verify_xa, CapacityReport, Interval, XaCheck};
pub use domain::{Direction, Point, Polygon2D, Rect, Rectilinear2D, StandardDomain, StandardKind, ToricDomain};
pub use ech::{CombOrbit, CombOrbitSet, OrbitInvariants};
pub use lagrangian::{ClCertificate, ClRule};
pub use rational::{int, rat, Rational};
pub use search::{obstruction_search, SearchLimits, SearchReport, SearchStatus};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid domain: {0}")]
    Invariant(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("theorem inapplicable: {0}")]
    Inapplicable(String),
}

impl Error {
    /// Process exit status: 1 when a computation is refused, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Inapplicable(_) => 1,
            Error::Syntax(_) | Error::Invariant(_) | Error::InvalidArgument(_) => 2,
        }
    }
}
