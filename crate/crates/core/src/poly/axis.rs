use serde::Serialize;

use super::roots::gaussian_roots;
use super::{content_y, BivariatePoly};
use crate::arith::GaussianRational;

/// Axis-parallel lines contained in a curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxisLines {
    /// `a` such that the line `x = a` lies in the curve.
    pub vertical: Vec<GaussianRational>,
    /// `b` such that the line `y = b` lies in the curve.
    pub horizontal: Vec<GaussianRational>,
    /// Vertical lines whose intercept is outside `Q(i)` (LineOutsideField).
    pub vertical_outside_field: usize,
    /// Horizontal lines whose intercept is outside `Q(i)` (LineOutsideField).
    pub horizontal_outside_field: usize,
}

impl AxisLines {
    /// No axis-parallel line at all, so every fiber of the curve is finite.
    pub fn good_fibers(&self) -> bool {
        self.vertical.is_empty()
            && self.horizontal.is_empty()
            && self.vertical_outside_field == 0
            && self.horizontal_outside_field == 0
    }
}

/// Finds the lines `x = a` and `y = b` contained in `Z(f)`.
///
/// `x = a` lies in the curve iff `a` is a common root of all coefficients of
/// `f` as a polynomial in `y`, i.e. a root of their gcd.
pub fn axis_parallel_lines(f: &BivariatePoly) -> AxisLines {
    let v = gaussian_roots(&content_y(f));
    let h = gaussian_roots(&content_y(&f.swap_xy()));
    AxisLines {
        vertical: v.roots,
        horizontal: h.roots,
        vertical_outside_field: v.unresolved,
        horizontal_outside_field: h.unresolved,
    }
}
