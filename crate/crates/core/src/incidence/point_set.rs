use serde::Serialize;

use super::IncidenceError;
use crate::arith::GaussianRational;

/// Which factor of `A x B` a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    A,
    B,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::A => write!(f, "A"),
            Axis::B => write!(f, "B"),
        }
    }
}

/// The grid `P = A x B`, stored through its two sorted factor sets.
///
/// Points are addressed by `(iA, iB)` positions; the product is never
/// materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartesianPointSet {
    a: Vec<GaussianRational>,
    b: Vec<GaussianRational>,
}

impl CartesianPointSet {
    /// Rejects repeated values, reporting both input positions.
    pub fn new(a: Vec<GaussianRational>, b: Vec<GaussianRational>) -> Result<Self, IncidenceError> {
        Ok(CartesianPointSet {
            a: sorted_unique(a, Axis::A)?,
            b: sorted_unique(b, Axis::B)?,
        })
    }

    /// Sorts and silently drops repeated values.
    pub fn from_sets(mut a: Vec<GaussianRational>, mut b: Vec<GaussianRational>) -> Self {
        a.sort();
        a.dedup();
        b.sort();
        b.dedup();
        CartesianPointSet { a, b }
    }

    pub fn a(&self) -> &[GaussianRational] {
        &self.a
    }

    pub fn b(&self) -> &[GaussianRational] {
        &self.b
    }

    pub fn len_a(&self) -> usize {
        self.a.len()
    }

    pub fn len_b(&self) -> usize {
        self.b.len()
    }

    /// `|P| = |A| |B|`.
    pub fn len(&self) -> usize {
        self.a.len() * self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, ia: usize, ib: usize) -> (&GaussianRational, &GaussianRational) {
        (&self.a[ia], &self.b[ib])
    }

    /// Row-major linear index of `(iA, iB)`.
    pub fn index(&self, ia: usize, ib: usize) -> usize {
        ia * self.b.len() + ib
    }

    pub fn unindex(&self, idx: usize) -> (usize, usize) {
        (idx / self.b.len(), idx % self.b.len())
    }

    /// True when every coordinate is real.
    pub fn is_real(&self) -> bool {
        self.a.iter().chain(&self.b).all(GaussianRational::is_real)
    }
}

fn sorted_unique(values: Vec<GaussianRational>, axis: Axis) -> Result<Vec<GaussianRational>, IncidenceError> {
    let mut tagged: Vec<(GaussianRational, usize)> = values.into_iter().zip(0..).collect();
    tagged.sort();
    for w in tagged.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(IncidenceError::DuplicatePoint {
                axis,
                first: w[0].1,
                second: w[1].1,
                value: w[0].0.to_string(),
            });
        }
    }
    Ok(tagged.into_iter().map(|(v, _)| v).collect())
}
