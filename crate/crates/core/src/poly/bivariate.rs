use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{PolyError, UnivariatePoly};
use crate::arith::{GaussianRational, Rational};

/// Sparse polynomial in `x` and `y` over `Q(i)`, keyed by `(deg_x, deg_y)`.
///
/// No zero coefficient is ever stored. `degree` is the total degree
/// `max(i + j)`, which is the curve degree used throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), GaussianRational>,
    degree: u32,
}

impl BivariatePoly {
    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), GaussianRational)>) -> Self {
        let mut acc: BTreeMap<(u32, u32), GaussianRational> = BTreeMap::new();
        for (e, c) in terms {
            let slot = acc.entry(e).or_default();
            *slot = &*slot + &c;
        }
        acc.retain(|_, c| !c.is_zero());
        Self::from_map(acc)
    }

    fn from_map(terms: BTreeMap<(u32, u32), GaussianRational>) -> Self {
        let degree = terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0);
        BivariatePoly { terms, degree }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn x() -> Self {
        Self::from_terms([((1, 0), GaussianRational::one())])
    }

    pub fn y() -> Self {
        Self::from_terms([((0, 1), GaussianRational::one())])
    }

    pub fn monomial(i: u32, j: u32, c: GaussianRational) -> Self {
        Self::from_terms([((i, j), c)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for constants and the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> GaussianRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }

    /// Exact value at `(x, y)`.
    pub fn evaluate(&self, x: &GaussianRational, y: &GaussianRational) -> GaussianRational {
        let xs = powers(x, self.degree_x());
        let ys = powers(y, self.degree_y());
        let mut acc = GaussianRational::zero();
        for (&(i, j), c) in &self.terms {
            let t = &(c * &xs[i as usize]) * &ys[j as usize];
            acc = &acc + &t;
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(rhs.terms.iter()).map(|(&e, c)| (e, c.clone())))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_map(self.terms.iter().map(|(&e, c)| (e, -c)).collect())
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e, c * k)))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.push(((i1 + i2, j1 + j2), a * b));
            }
        }
        Self::from_terms(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(GaussianRational::one()), |acc, _| acc.mul(self))
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        Self::from_map(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect())
    }

    /// Coefficients of `y^0, y^1, ...` as polynomials in `x`.
    pub fn coeffs_in_y(&self) -> Vec<UnivariatePoly<GaussianRational>> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut rows = vec![vec![GaussianRational::zero(); self.degree_x() as usize + 1]; self.degree_y() as usize + 1];
        for (&(i, j), c) in &self.terms {
            rows[j as usize][i as usize] = c.clone();
        }
        rows.into_iter().map(UnivariatePoly::new).collect()
    }

    /// Coefficients of `x^0, x^1, ...` as polynomials in `y`.
    pub fn coeffs_in_x(&self) -> Vec<UnivariatePoly<GaussianRational>> {
        self.swap_xy().coeffs_in_y()
    }

    /// `f(a, y)` as a polynomial in `y`.
    pub fn specialize_x(&self, a: &GaussianRational) -> UnivariatePoly<GaussianRational> {
        let xs = powers(a, self.degree_x());
        let mut out = vec![GaussianRational::zero(); self.degree_y() as usize + 1];
        for (&(i, j), c) in &self.terms {
            out[j as usize] = &out[j as usize] + &(c * &xs[i as usize]);
        }
        UnivariatePoly::new(out)
    }

    /// `f(x, b)` as a polynomial in `x`.
    pub fn specialize_y(&self, b: &GaussianRational) -> UnivariatePoly<GaussianRational> {
        self.swap_xy().specialize_x(b)
    }

    /// Rational coefficients, when the polynomial is real.
    pub fn to_real_terms(&self) -> Option<BTreeMap<(u32, u32), Rational>> {
        self.terms
            .iter()
            .map(|(&e, c)| c.is_real().then(|| (e, c.re.clone())))
            .collect()
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| TermJson {
                    i,
                    j,
                    c: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self, PolyError> {
        Self::from_term_list(&json.terms)
    }

    pub fn from_term_list(terms: &[TermJson]) -> Result<Self, PolyError> {
        let mut parsed = Vec::with_capacity(terms.len());
        for (k, t) in terms.iter().enumerate() {
            let c: GaussianRational = t.c.parse().map_err(|source| PolyError::Coefficient { term: k, source })?;
            parsed.push(((t.i, t.j), c));
        }
        Ok(Self::from_terms(parsed))
    }
}

fn powers(base: &GaussianRational, max: u32) -> Vec<GaussianRational> {
    let mut out = Vec::with_capacity(max as usize + 1);
    out.push(GaussianRational::one());
    for k in 1..=max as usize {
        out.push(&out[k - 1] * base);
    }
    out
}

/// Wire form `{"terms":[{"i":0,"j":1,"c":"1"}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub i: u32,
    pub j: u32,
    pub c: String,
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match i {
                0 => {}
                1 => write!(f, "*x")?,
                _ => write!(f, "*x^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "*y")?,
                _ => write!(f, "*y^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn c(s: &str) -> BivariatePoly {
        BivariatePoly::constant(g(s))
    }

    #[test]
    fn evaluate_examples() {
        let x = BivariatePoly::x();
        let y = BivariatePoly::y();
        // y - x at (1, 1)
        assert!(y.sub(&x).evaluate(&g("1"), &g("1")).is_zero());
        // y(x + b) - a with a = 1, b = 0 at (i, -i): (-i)(i) - 1 = 0
        let f = y.mul(&x).sub(&c("1"));
        assert!(f.evaluate(&g("i"), &g("-i")).is_zero());
        // x^2 + y^2 - 1 at (0, 2)
        let circle = x.pow(2).add(&y.pow(2)).sub(&c("1"));
        assert_eq!(circle.evaluate(&g("0"), &g("2")), g("3"));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let x = BivariatePoly::x();
        let p = x.add(&BivariatePoly::y()).sub(&x);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.degree(), 1);
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn degrees() {
        let p = BivariatePoly::from_terms([((3, 0), g("1")), ((1, 2), g("2")), ((0, 1), g("i"))]);
        assert_eq!(p.degree(), 3);
        assert_eq!(p.degree_x(), 3);
        assert_eq!(p.degree_y(), 2);
    }

    #[test]
    fn json_wire_form() {
        let text = r#"{"terms":[{"i":0,"j":1,"c":"1"},{"i":1,"j":0,"c":"-1"}]}"#;
        let json: PolyJson = serde_json::from_str(text).unwrap();
        let p = BivariatePoly::from_json(&json).unwrap();
        assert_eq!(p, BivariatePoly::y().sub(&BivariatePoly::x()));
        assert_eq!(serde_json::to_string(&p.to_json()).unwrap(), text);
    }

    #[test]
    fn specialization_agrees_with_evaluation() {
        let p = BivariatePoly::from_terms([((2, 1), g("3")), ((0, 2), g("-1+1i")), ((1, 0), g("1/2"))]);
        let a = g("2-1i");
        let b = g("1/3");
        assert_eq!(p.specialize_x(&a).eval(&b), p.evaluate(&a, &b));
        assert_eq!(p.specialize_y(&b).eval(&a), p.evaluate(&a, &b));
    }
}
