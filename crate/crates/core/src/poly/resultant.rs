use serde::Serialize;

use super::{BivariatePoly, PolyError, UnivariatePoly};
use crate::arith::GaussianRational;

type XPoly = UnivariatePoly<GaussianRational>;

/// Sylvester resultant of `f` and `g` with respect to `y`, as a polynomial in `x`.
///
/// Sylvester rows list coefficients lowest degree first, so the value equals
/// `(-1)^(m n)` times the textbook resultant for y-degrees `m`, `n`. The sign
/// never matters for root locations or for vanishing.
pub fn resultant_y(f: &BivariatePoly, g: &BivariatePoly) -> Result<XPoly, PolyError> {
    if f.is_zero() || f.degree_y() == 0 {
        return Err(PolyError::DegenerateInput("first polynomial has y-degree 0"));
    }
    if g.is_zero() || g.degree_y() == 0 {
        return Err(PolyError::DegenerateInput("second polynomial has y-degree 0"));
    }
    let fc = f.coeffs_in_y();
    let gc = g.coeffs_in_y();
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let size = m + n;
    let mut mat = vec![vec![XPoly::zero(); size]; size];
    for row in 0..n {
        for (k, c) in fc.iter().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in gc.iter().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }
    Ok(bareiss_determinant(mat))
}

/// Resultant with respect to `x`, as a polynomial in `y`.
pub fn resultant_x(f: &BivariatePoly, g: &BivariatePoly) -> Result<XPoly, PolyError> {
    resultant_y(&f.swap_xy(), &g.swap_xy())
}

/// Fraction-free determinant over `Q(i)[x]`. Every division is exact.
pub(crate) fn bareiss_determinant(mut m: Vec<Vec<XPoly>>) -> XPoly {
    let n = m.len();
    if n == 0 {
        return XPoly::one();
    }
    let mut negate = false;
    let mut prev = XPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return XPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev);
            }
            m[i][k] = XPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionSummary {
    pub common_component: bool,
    /// Upper bound on the number of distinct x-coordinates of common zeros:
    /// the degree of the squarefree part of the y-resultant. `None` when the
    /// curves share a component.
    pub distinct_x_bound: Option<usize>,
}

/// Gcd of all coefficients of `f` viewed as a polynomial in `y`.
pub fn content_y(f: &BivariatePoly) -> XPoly {
    f.coeffs_in_y()
        .iter()
        .fold(XPoly::zero(), |acc, c| acc.gcd(c))
}

/// Decides whether `f` and `g` share a component and bounds their intersections.
///
/// A shared factor either has positive y-degree, which makes `Res_y`
/// vanish identically, or lies in `Q(i)[x]`, in which case it divides
/// both y-contents.
pub fn bezout_check(f: &BivariatePoly, g: &BivariatePoly) -> IntersectionSummary {
    if f.is_zero() || g.is_zero() {
        return IntersectionSummary {
            common_component: true,
            distinct_x_bound: None,
        };
    }
    if f.degree() == 0 || g.degree() == 0 {
        return IntersectionSummary {
            common_component: false,
            distinct_x_bound: Some(0),
        };
    }
    let shared_content = content_y(f).gcd(&content_y(g));
    let content_common = !shared_content.is_constant();
    let (fy, gy) = (f.degree_y(), g.degree_y());
    let (common, bound) = if fy > 0 && gy > 0 {
        let res = resultant_y(f, g).expect("positive y-degrees");
        if res.is_zero() {
            (true, None)
        } else {
            (content_common, res.squarefree_part().degree())
        }
    } else if fy == 0 && gy == 0 {
        // both lie in Q(i)[x]: they meet only in a shared factor
        (content_common, Some(0))
    } else {
        // one of them is a polynomial in x alone; common zeros sit over its roots
        let pure = if fy == 0 { f } else { g };
        let p = pure.coeffs_in_y().swap_remove(0);
        (content_common, p.squarefree_part().degree())
    };
    IntersectionSummary {
        common_component: common,
        distinct_x_bound: if common { None } else { bound },
    }
}
