//! Sum-product style constructions reduced to incidence problems on
//! Cartesian products, each with a verifier for the claims its argument uses.

mod distance;
mod inversion;
mod sumset;

pub use distance::{distance_poly, line_distance_set, DistanceReport};
pub use inversion::{inversion_curves, inversion_report, rich_inversions, InversionMap, InversionReport};
pub use sumset::{sumset_expander, ExpansionReport};

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::arith::GaussianRational;
use crate::incidence::IncidenceError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AppError {
    #[error("k = {k} is below 2")]
    KTooSmall { k: usize },
    #[error("need at least {needed} elements, got {got}")]
    TooFewElements { needed: usize, got: usize },
    #[error("duplicate element {value} at positions {first} and {second}")]
    DuplicateElement { first: usize, second: usize, value: String },
    #[error("0 is in A (position {position})")]
    ZeroInA { position: usize },
    #[error("slope m is 0")]
    DegenerateSlope,
    #[error("|A| = {a} and |B| = {b} differ")]
    SizeMismatch { a: usize, b: usize },
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
}

/// A named claim checked while running an application.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

impl Check {
    pub fn new(name: &'static str, passed: bool) -> Self {
        Check { name, passed }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn reject_duplicates(values: &[GaussianRational]) -> Result<(), AppError> {
    let mut seen: HashMap<&GaussianRational, usize> = HashMap::new();
    for (k, v) in values.iter().enumerate() {
        if let Some(&first) = seen.get(v) {
            return Err(AppError::DuplicateElement { first, second: k, value: v.to_string() });
        }
        seen.insert(v, k);
    }
    Ok(())
}
