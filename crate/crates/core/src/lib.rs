//! Exact incidence counting between algebraic curves and Cartesian-product
//! point sets `A x B`.
//!
//! Everything is computed over `Q` or `Q(i)` without rounding: incidences,
//! resultants, Sturm root counts, partition decompositions and energies.
//! Asymptotic bounds are evaluated in a fixed canonical form and reported as
//! observed/predicted ratios.

pub mod apps;
pub mod arith;
pub mod bounds;
pub mod error;
pub mod experiment;
pub mod incidence;
pub mod io;
pub mod partition;
pub mod poly;

pub use arith::{GaussianRational, Rational};
pub use error::Error;
pub use incidence::{CartesianPointSet, CurveFamily, IncidenceGraph};
pub use poly::{BivariatePoly, UnivariatePoly};
