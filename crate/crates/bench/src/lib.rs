//! Benchmark inputs shared by the criterion targets.

use cartinc::incidence::{CartesianPointSet, CurveFamily};
use cartinc::io::{generate_instance, random_curves, GeneratorKind};
use cartinc::{BivariatePoly, GaussianRational};

/// `{1..n} x {1..n}` with `curves` random curves of the given degree.
pub fn grid_instance(n: usize, curves: usize, degree: u32) -> (CartesianPointSet, CurveFamily) {
    let inst = generate_instance(GeneratorKind::Arithmetic, n, 1);
    let family = random_curves(&inst.points, curves, degree, 1);
    (inst.points, family)
}

/// A dense bivariate polynomial of total degree `d` with small coefficients.
pub fn dense_poly(d: u32, shift: i64) -> BivariatePoly {
    let mut terms = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            let c = ((i as i64 * 7 + j as i64 * 3 + shift) % 11) - 5;
            terms.push(((i, j), GaussianRational::from_int(c)));
        }
    }
    BivariatePoly::from_terms(terms)
}
