use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Instance;
use crate::arith::{GaussianRational, Rational};
use crate::incidence::{CartesianPointSet, CurveFamily};
use crate::poly::BivariatePoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// `{1, ..., n}`
    Arithmetic,
    /// `{1, 2, 4, ..., 2^(n-1)}`
    Geometric,
    /// `n` distinct rationals with numerator and denominator at most 1000 in size.
    Random,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::Arithmetic => "arithmetic",
            GeneratorKind::Geometric => "geometric",
            GeneratorKind::Random => "random",
        })
    }
}

impl FromStr for GeneratorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "arithmetic" => Ok(GeneratorKind::Arithmetic),
            "geometric" => Ok(GeneratorKind::Geometric),
            "random" => Ok(GeneratorKind::Random),
            _ => Err(format!("unknown generator {s:?}")),
        }
    }
}

const MAX_ENTRY: i64 = 1000;

fn random_set(rng: &mut ChaCha8Rng, n: usize) -> Vec<GaussianRational> {
    let mut out = BTreeSet::new();
    while out.len() < n {
        let num = rng.gen_range(-MAX_ENTRY..=MAX_ENTRY);
        let den = rng.gen_range(1..=MAX_ENTRY);
        out.insert(GaussianRational::real(Rational::frac(num, den)));
    }
    out.into_iter().collect()
}

fn factor_set(kind: GeneratorKind, n: usize, rng: &mut ChaCha8Rng) -> Vec<GaussianRational> {
    match kind {
        GeneratorKind::Arithmetic => (1..=n as i64).map(GaussianRational::from_int).collect(),
        GeneratorKind::Geometric => (0..n as u32)
            .map(|k| GaussianRational::real(Rational::from(num_bigint::BigInt::from(2u32).pow(k))))
            .collect(),
        GeneratorKind::Random => random_set(rng, n),
    }
}

/// `A = B` of size `n` with no curves; random sets draw `A` and `B` independently.
pub fn generate_instance(kind: GeneratorKind, n: usize, seed: u64) -> Instance {
    assert!(n >= 1, "n must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = factor_set(kind, n, &mut rng);
    let b = if kind == GeneratorKind::Random { factor_set(kind, n, &mut rng) } else { a.clone() };
    Instance {
        name: format!("{kind}-{n}"),
        seed: Some(seed),
        generator: Some(kind.to_string()),
        points: CartesianPointSet::new(a, b).expect("generated sets are distinct"),
        curves: CurveFamily::new(Vec::new()).expect("empty family"),
    }
}

/// `count` real curves of degree at most `degree` with small integer
/// coefficients, each shifted to pass through a random point of `points`.
pub fn random_curves(points: &CartesianPointSet, count: usize, degree: u32, seed: u64) -> CurveFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut curves = Vec::with_capacity(count);
    while curves.len() < count {
        let mut terms = Vec::new();
        for i in 0..=degree {
            for j in 0..=degree - i {
                if rng.gen_bool(0.6) {
                    terms.push(((i, j), GaussianRational::from_int(rng.gen_range(-5..=5))));
                }
            }
        }
        let mut f = BivariatePoly::from_terms(terms);
        if f.degree() == 0 {
            continue;
        }
        if !points.is_empty() {
            let (ia, ib) = (rng.gen_range(0..points.len_a()), rng.gen_range(0..points.len_b()));
            let (x, y) = points.point(ia, ib);
            f = f.sub(&BivariatePoly::constant(f.evaluate(x, y)));
        }
        if f.degree() == 0 {
            continue;
        }
        curves.push((format!("C_{}", curves.len() + 1), f));
    }
    CurveFamily::new(curves).expect("labels are distinct and curves nonzero")
}
