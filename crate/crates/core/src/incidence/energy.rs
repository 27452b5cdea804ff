use std::collections::HashMap;

use serde::Serialize;

use crate::arith::GaussianRational;
use crate::poly::BivariatePoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnergyReport {
    /// `#{(a, b, a', b') : f(a, b) = f(a', b')}`.
    pub energy: u128,
    /// `|f(A, B)|`.
    pub image_size: usize,
    /// `|A| |B|`.
    pub pairs: usize,
}

impl EnergyReport {
    /// Cauchy-Schwarz: `E |f(A,B)| >= (|A||B|)^2`.
    pub fn cauchy_schwarz_holds(&self) -> bool {
        self.image_size == 0 || self.energy * self.image_size as u128 >= (self.pairs as u128).pow(2)
    }
}

/// Quadruple energy of `f` on `A x B`, grouping equal values by hashing.
pub fn quadruple_energy(a: &[GaussianRational], b: &[GaussianRational], f: &BivariatePoly) -> EnergyReport {
    let mut fibers: HashMap<GaussianRational, u128> = HashMap::new();
    for x in a {
        let fiber = f.specialize_x(x);
        for y in b {
            *fibers.entry(fiber.eval(y)).or_default() += 1;
        }
    }
    let report = EnergyReport {
        energy: fibers.values().map(|n| n * n).sum(),
        image_size: fibers.len(),
        pairs: a.len() * b.len(),
    };
    assert!(report.cauchy_schwarz_holds(), "energy below the Cauchy-Schwarz bound");
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<GaussianRational> {
        xs.iter().map(|&n| GaussianRational::from_int(n)).collect()
    }

    fn sum() -> BivariatePoly {
        BivariatePoly::x().add(&BivariatePoly::y())
    }

    #[test]
    fn single_quadruple() {
        let e = quadruple_energy(&ints(&[0]), &ints(&[0]), &sum());
        assert_eq!(e.energy, 1);
    }

    #[test]
    fn two_by_two_sums() {
        // values 0, 1, 1, 2
        let e = quadruple_energy(&ints(&[0, 1]), &ints(&[0, 1]), &sum());
        assert_eq!(e.energy, 6);
        assert_eq!(e.image_size, 3);
    }

    #[test]
    fn injective_values() {
        // x + 10 y is injective on {0..9}^2
        let f = BivariatePoly::x().add(&BivariatePoly::y().scale(&GaussianRational::from_int(10)));
        let digits: Vec<i64> = (0..10).collect();
        let e = quadruple_energy(&ints(&digits), &ints(&digits), &f);
        assert_eq!(e.energy, 100);
        assert_eq!(e.image_size, 100);
    }
}
