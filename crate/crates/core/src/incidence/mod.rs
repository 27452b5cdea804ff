//! Incidence graphs between Cartesian-product point sets and curve families.

mod energy;
mod family;
mod graph;
mod kst;
mod point_set;

pub use energy::{quadruple_energy, EnergyReport};
pub use family::{Curve, CurveFamily};
pub use graph::{build_incidence_graph, Edge, IncidenceGraph};
pub use kst::{max_pair_multiplicity, verify_no_kst, KstOutcome, KstWitness, DEFAULT_KST_CAP};
pub use point_set::{Axis, CartesianPointSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncidenceError {
    #[error("duplicate value {value} in {axis}: positions {first} and {second}")]
    DuplicatePoint {
        axis: Axis,
        first: usize,
        second: usize,
        value: String,
    },
    #[error("curve {label} has the zero polynomial")]
    ZeroPolynomial { label: String },
    #[error("duplicate curve label {label}: positions {first} and {second}")]
    DuplicateLabel { label: String, first: usize, second: usize },
    #[error("K_(s,t) search exceeded the cap of {cap} pair tests")]
    ComplexityGuard { cap: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
