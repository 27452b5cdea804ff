use std::collections::HashMap;

use super::IncidenceError;
use crate::poly::BivariatePoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub label: String,
    pub poly: BivariatePoly,
}

/// Labeled curves `Z(f)`. Labels are unique and no polynomial is zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CurveFamily {
    curves: Vec<Curve>,
}

impl CurveFamily {
    pub fn new(curves: impl IntoIterator<Item = (String, BivariatePoly)>) -> Result<Self, IncidenceError> {
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut out = Vec::new();
        for (k, (label, poly)) in curves.into_iter().enumerate() {
            if poly.is_zero() {
                return Err(IncidenceError::ZeroPolynomial { label });
            }
            if let Some(&first) = seen.get(&label) {
                return Err(IncidenceError::DuplicateLabel { label, first, second: k });
            }
            seen.insert(label.clone(), k);
            out.push(Curve { label, poly });
        }
        Ok(CurveFamily { curves: out })
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn get(&self, idx: usize) -> &Curve {
        &self.curves[idx]
    }

    /// `d`: the largest total degree in the family (0 when empty).
    pub fn max_degree(&self) -> u32 {
        self.curves.iter().map(|c| c.poly.degree()).max().unwrap_or(0)
    }

    pub fn is_real(&self) -> bool {
        self.curves.iter().all(|c| c.poly.is_real())
    }
}
