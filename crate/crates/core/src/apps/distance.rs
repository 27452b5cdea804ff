use std::collections::BTreeSet;

use serde::Serialize;

use super::{reject_duplicates, AppError, Check};
use crate::arith::GaussianRational as GR;
use crate::bounds::{power_bound, BoundReport};
use crate::incidence::{
    build_incidence_graph, quadruple_energy, verify_no_kst, CartesianPointSet, CurveFamily, EnergyReport, KstOutcome,
};
use crate::poly::BivariatePoly;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub n: usize,
    pub m: GR,
    /// `|D(A, B)|`.
    pub distinct: usize,
    pub energy: EnergyReport,
    /// `n^4 / |D(A, B)|`.
    pub energy_lower_bound: Rational,
    pub hyperbolas: usize,
    pub incidences: usize,
    pub kst: KstOutcome,
    pub checks: Vec<Check>,
    /// `|D|` against `n^(4/3)`.
    pub bound: BoundReport,
}

/// `f(x, y) = (x - y)^2 + m^2 y^2`: squared distance between `(x, 0)` and `(y, m y)`.
pub fn distance_poly(m: &GR) -> BivariatePoly {
    let diff = BivariatePoly::x().sub(&BivariatePoly::y());
    diff.pow(2).add(&BivariatePoly::y().pow(2).scale(&(m * m)))
}

/// `C_bb' = Z(f(x, b) - f(y, b'))`.
fn hyperbola(f: &BivariatePoly, b: &GR, b2: &GR) -> BivariatePoly {
    let fx = f.specialize_y(b);
    let fy = f.specialize_y(b2);
    let lift = |p: &crate::poly::UnivariatePoly<GR>, swap: bool| {
        BivariatePoly::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| {
            let k = k as u32;
            (if swap { (0, k) } else { (k, 0) }, c.clone())
        }))
    };
    lift(&fx, false).sub(&lift(&fy, true))
}

/// Distinct distances between points on the lines `y = 0` and `y = m x`.
pub fn line_distance_set(a: &[GR], b: &[GR], m: &GR, cap: u64) -> Result<DistanceReport, AppError> {
    if m.is_zero() {
        return Err(AppError::DegenerateSlope);
    }
    if a.len() != b.len() {
        return Err(AppError::SizeMismatch { a: a.len(), b: b.len() });
    }
    if a.is_empty() {
        return Err(AppError::TooFewElements { needed: 1, got: 0 });
    }
    reject_duplicates(a)?;
    reject_duplicates(b)?;
    let n = a.len();
    let f = distance_poly(m);
    let values: BTreeSet<GR> = a.iter().flat_map(|x| b.iter().map(|y| f.evaluate(x, y))).collect();
    let distinct = values.len();
    let energy = quadruple_energy(a, b, &f);
    let n4 = Rational::from((n as i64).pow(4));
    let lower = n4.checked_div(&Rational::from(distinct as i64)).expect("nonempty");
    let energy_holds = Rational::from(num_bigint::BigInt::from(energy.energy)) >= lower;

    let points = CartesianPointSet::new(a.to_vec(), a.to_vec())?;
    let mut family = Vec::new();
    for b1 in b {
        for b2 in b {
            if b1 != b2 {
                family.push((format!("C[{b1},{b2}]"), hyperbola(&f, b1, b2)));
            }
        }
    }
    let curves = CurveFamily::new(family)?;
    let graph = build_incidence_graph(&points, &curves);
    let kst = verify_no_kst(&graph, 2, 3, cap)?;
    Ok(DistanceReport {
        n,
        m: m.clone(),
        distinct,
        energy_lower_bound: lower,
        hyperbolas: curves.len(),
        incidences: graph.num_edges(),
        checks: vec![
            Check::new("E >= n^4/|D|", energy_holds),
            Check::new("no K_(2,3)", kst.is_pass()),
        ],
        kst,
        energy,
        bound: power_bound("distance", "n^(4/3)", n as u64, 4, 3).with_observed(distinct as u64),
    })
}
