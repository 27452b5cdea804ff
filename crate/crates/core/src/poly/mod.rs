//! Univariate and bivariate polynomial algebra over `Q(i)`.

mod axis;
mod bivariate;
mod realify;
mod resultant;
pub mod roots;
mod sturm;
mod univariate;

pub use axis::{axis_parallel_lines, AxisLines};
pub use bivariate::{BivariatePoly, PolyJson, TermJson};
pub use realify::{realify, RealPoly4, RealSurfacePair};
pub use resultant::{bezout_check, content_y, resultant_x, resultant_y, IntersectionSummary};
pub use sturm::{count_real_roots, sturm_count, sturm_sequence, Endpoint};
pub use univariate::UnivariatePoly;

use thiserror::Error;

use crate::arith::{ParseError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("polynomial vanishes at interval endpoint {0}")]
    RootAtEndpoint(Rational),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("empty interval: lower endpoint is not below upper endpoint")]
    EmptyInterval,
    #[error("term {term}: {source}")]
    Coefficient { term: usize, source: ParseError },
}
