use std::collections::BTreeSet;

use serde::Serialize;

use super::{reject_duplicates, AppError, Check};
use crate::arith::GaussianRational as GR;
use crate::bounds::{power_bound, BoundReport};
use crate::incidence::{build_incidence_graph, verify_no_kst, CartesianPointSet, CurveFamily, KstOutcome};
use crate::poly::BivariatePoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionReport {
    pub n: usize,
    /// `|A + A|`.
    pub sum_size: usize,
    /// `|1/A + 1/A|`.
    pub reciprocal_sum_size: usize,
    /// `|A + 1/A|`.
    pub mixed_size: usize,
    pub incidence_total: usize,
    pub curves_checked: usize,
    pub min_richness: usize,
    pub kst: KstOutcome,
    pub checks: Vec<Check>,
    /// `|A + 1/A|` against `n^(5/4)`.
    pub mixed_bound: BoundReport,
    /// `|A + A| |1/A + 1/A|` against `n^(5/2)`.
    pub product_bound: BoundReport,
}

fn sumset(x: &[GR], y: &[GR]) -> BTreeSet<GR> {
    x.iter().flat_map(|u| y.iter().map(move |v| u + v)).collect()
}

/// `C_ab = Z((x - a)(y - 1/b) - 1)`, the graph of `y = 1/(x - a) + 1/b`.
fn hyperbola(a: &GR, b_inv: &GR) -> BivariatePoly {
    let xa = BivariatePoly::x().sub(&BivariatePoly::constant(a.clone()));
    let yb = BivariatePoly::y().sub(&BivariatePoly::constant(b_inv.clone()));
    xa.mul(&yb).sub(&BivariatePoly::constant(GR::one()))
}

/// Builds `(A + A) x (1/A + 1/A)` with the `|A|^2` curves `C_ab` and checks
/// that each is `|A|`-rich and that no two points share three curves.
pub fn sumset_expander(set: &[GR], cap: u64) -> Result<ExpansionReport, AppError> {
    if set.is_empty() {
        return Err(AppError::TooFewElements { needed: 1, got: 0 });
    }
    if let Some(position) = set.iter().position(GR::is_zero) {
        return Err(AppError::ZeroInA { position });
    }
    reject_duplicates(set)?;
    let n = set.len();
    let inv: Vec<GR> = set.iter().map(|a| a.inv().expect("nonzero")).collect();
    let sums: Vec<GR> = sumset(set, set).into_iter().collect();
    let inv_sums: Vec<GR> = sumset(&inv, &inv).into_iter().collect();
    let mixed = sumset(set, &inv).len();

    let points = CartesianPointSet::from_sets(sums, inv_sums);
    let mut params = Vec::with_capacity(n * n);
    for a in set {
        for (b, b_inv) in set.iter().zip(&inv) {
            params.push((a, b, b_inv));
        }
    }
    let curves = CurveFamily::new(
        params
            .iter()
            .map(|(a, b, b_inv)| (format!("C[{a},{b}]"), hyperbola(a, b_inv))),
    )?;
    let graph = build_incidence_graph(&points, &curves);

    // witness points (a + a', 1/a' + 1/b) for every a'
    let witnesses_found = params.iter().enumerate().all(|(c, (a, _, b_inv))| {
        let on_curve = graph.curve_points(c);
        set.iter().zip(&inv).all(|(a2, a2_inv)| {
            let x = *a + a2;
            let y = a2_inv + *b_inv;
            let ia = points.a().binary_search(&x).expect("x in A + A");
            let ib = points.b().binary_search(&y).expect("y in 1/A + 1/A");
            curves.get(c).poly.evaluate(&x, &y).is_zero() && on_curve.binary_search(&points.index(ia, ib)).is_ok()
        })
    });
    let min_richness = (0..graph.num_curves()).map(|c| graph.richness(c)).min().unwrap_or(0);
    let total = graph.num_edges();
    let kst = verify_no_kst(&graph, 2, 3, cap)?;
    let product = (points.len_a() * points.len_b()) as u64;
    Ok(ExpansionReport {
        n,
        sum_size: points.len_a(),
        reciprocal_sum_size: points.len_b(),
        mixed_size: mixed,
        incidence_total: total,
        curves_checked: graph.num_curves(),
        min_richness,
        checks: vec![
            Check::new("witness incidences present", witnesses_found),
            Check::new("every curve |A|-rich", min_richness >= n),
            Check::new("total incidences >= |A|^3", total >= n.pow(3)),
            Check::new("no K_(2,3)", kst.is_pass()),
        ],
        kst,
        mixed_bound: power_bound("sumset", "n^(5/4)", n as u64, 5, 4).with_observed(mixed as u64),
        product_bound: power_bound("sumset-product", "n^(5/2)", n as u64, 5, 2).with_observed(product),
    })
}
