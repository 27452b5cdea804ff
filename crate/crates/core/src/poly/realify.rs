use std::collections::BTreeMap;
use std::fmt;

use super::BivariatePoly;
use crate::arith::{GaussianRational, Rational};

/// Real polynomial in `x1, x2, x3, x4`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RealPoly4 {
    terms: BTreeMap<[u32; 4], Rational>,
}

impl RealPoly4 {
    pub fn from_terms(terms: impl IntoIterator<Item = ([u32; 4], Rational)>) -> Self {
        let mut acc: BTreeMap<[u32; 4], Rational> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_default() += &c;
        }
        acc.retain(|_, c| !c.is_zero());
        RealPoly4 { terms: acc }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 4], &Rational)> {
        self.terms.iter()
    }

    pub fn evaluate(&self, at: &[Rational; 4]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(at)
                    .fold(c.clone(), |acc, (&k, v)| acc * v.pow(k))
            })
            .sum()
    }
}

impl fmt::Display for RealPoly4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", v + 1)?,
                    _ => write!(f, "*x{}^{k}", v + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RealPoly4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Real and imaginary parts of `f(x1 + i x2, x3 + i x4)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealSurfacePair {
    pub h1: RealPoly4,
    pub h2: RealPoly4,
}

impl RealSurfacePair {
    /// Evaluates both parts at the real image `(Re x, Im x, Re y, Im y)` of a complex point.
    pub fn evaluate_at(&self, x: &GaussianRational, y: &GaussianRational) -> (Rational, Rational) {
        let at = [x.re.clone(), x.im.clone(), y.re.clone(), y.im.clone()];
        (self.h1.evaluate(&at), self.h2.evaluate(&at))
    }
}

type ComplexPoly4 = BTreeMap<[u32; 4], GaussianRational>;

fn binomial_row(n: u32) -> Vec<Rational> {
    let mut row = vec![Rational::one()];
    for k in 1..=n {
        let prev = row[k as usize - 1].clone();
        row.push(prev * Rational::frac((n - k + 1) as i64, k as i64));
    }
    row
}

/// `(x_a + i x_b)^n` expanded over the real variables with indices `a`, `b`.
fn complex_power(n: u32, a: usize, b: usize) -> ComplexPoly4 {
    let unit_powers = [
        GaussianRational::one(),
        GaussianRational::i(),
        -GaussianRational::one(),
        -GaussianRational::i(),
    ];
    binomial_row(n)
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let mut e = [0u32; 4];
            e[a] = n - k as u32;
            e[b] = k as u32;
            (e, unit_powers[k % 4].scale(&c))
        })
        .collect()
}

fn mul4(p: &ComplexPoly4, q: &ComplexPoly4) -> ComplexPoly4 {
    let mut out: ComplexPoly4 = BTreeMap::new();
    for (e1, c1) in p {
        for (e2, c2) in q {
            let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
            let slot = out.entry(e).or_default();
            *slot = &*slot + &(c1 * c2);
        }
    }
    out
}

/// Splits a complex curve `Z(f)` into the real surface `h1 = h2 = 0` in four real variables.
pub fn realify(f: &BivariatePoly) -> RealSurfacePair {
    let mut acc: ComplexPoly4 = BTreeMap::new();
    for (&(i, j), c) in f.terms() {
        let part = mul4(&complex_power(i, 0, 1), &complex_power(j, 2, 3));
        for (e, v) in part {
            let slot = acc.entry(e).or_default();
            *slot = &*slot + &(&v * c);
        }
    }
    RealSurfacePair {
        h1: RealPoly4::from_terms(acc.iter().map(|(e, c)| (*e, c.re.clone()))),
        h2: RealPoly4::from_terms(acc.iter().map(|(e, c)| (*e, c.im.clone()))),
    }
}
