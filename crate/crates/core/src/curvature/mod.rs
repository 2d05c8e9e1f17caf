//! Nonpositive curvature certificates.
//!
//! Links are piecewise spherical complexes ([`MetricNerve`]). A link with
//! edges of length at least `pi/2` is CAT(1) exactly when it is metric flag,
//! so a complex of groups whose links all pass is nonpositively curved and
//! therefore developable. A failing link proves nothing, and the pipeline
//! reports [`Verdict::Unknown`] rather than a negative answer.
//!
//! Definiteness of a cosine matrix is decided by the finite Coxeter
//! classification when every length is `pi - pi/m`, and by eigenvalues
//! with tolerance [`TOLERANCE`] otherwise.

mod development;
mod gallery;
mod metric;
mod npc;

use thiserror::Error;

pub use development::{finite_index, local_development, scwol_star, DevVertex, LocalDevelopment, MAX_COSETS};
pub use gallery::{develop_gallery, DevelopedFan, DevelopmentReport, FanPoint, FanTriangle};
pub use metric::{is_metric_flag, metric_flag_violation, EdgeLength, MetricNerve};
pub use npc::{
    check_nonpositive_curvature, parabolic_system, CoxeterNerveLinks, DevelopmentLinks, ExplicitLinks, LinkProvider,
    LinkStatus, NpcReport, Verdict, VertexCheck,
};

use crate::complex::SimplicialComplex;

/// Numeric tolerance for spherical geometry.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurvatureError {
    #[error("edge ({a}, {b}) has length {length} < pi/2")]
    EdgeTooShort { a: usize, b: usize, length: f64 },
    #[error("local developments need a simple complex of groups")]
    NotSimple,
    #[error("coset space is not enumerable: {0}")]
    NotEnumerable(String),
    #[error("invalid triangle {index}: {reason}")]
    InvalidTriangle { index: usize, reason: String },
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("invalid polyline: {0}")]
    InvalidGamma(String),
    #[error("{0}")]
    Invalid(String),
}

/// Every set of pairwise adjacent vertices spans a simplex.
pub fn is_flag(c: &SimplicialComplex) -> bool {
    c.is_flag()
}
