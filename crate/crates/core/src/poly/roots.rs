//! Exact roots in `Q(i)` of univariate polynomials over `Q(i)`.
//!
//! Degrees one and two are solved directly (with an exact Gaussian square
//! root). Higher degrees use the rational root theorem over the Gaussian
//! integers: after clearing denominators every root is `u * b / c` with
//! `b | c_0`, `c | c_n` and `u` a unit. Divisors come from a factorization
//! of the norms by trial division; if that factorization is out of reach the
//! degree is reported as unresolved instead of guessing.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::UnivariatePoly;
use crate::arith::{GaussianRational, Rational};

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;
const MAX_DIVISORS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSearch {
    /// Distinct roots in `Q(i)`, sorted.
    pub roots: Vec<GaussianRational>,
    /// Number of distinct roots (with multiplicity one) that are not in
    /// `Q(i)` or could not be certified.
    pub unresolved: usize,
}

pub fn gaussian_roots(p: &UnivariatePoly<GaussianRational>) -> RootSearch {
    let mut s = p.squarefree_part();
    let mut roots = BTreeSet::new();
    if s.degree().unwrap_or(0) > 0 && s.coeff(0).is_zero() {
        roots.insert(GaussianRational::zero());
        s = s.div_exact(&UnivariatePoly::x());
    }
    let deg = s.degree().unwrap_or(0);
    let mut unresolved = 0;
    match deg {
        0 => {}
        1 => {
            roots.insert(-&s.coeff(0));
        }
        2 => match quadratic_roots(&s) {
            Some((a, b)) => {
                roots.insert(a);
                roots.insert(b);
            }
            None => unresolved = 2,
        },
        _ => match candidate_roots(&s) {
            Some(found) => {
                unresolved = deg - found.len();
                roots.extend(found);
            }
            None => unresolved = deg,
        },
    }
    RootSearch {
        roots: roots.into_iter().collect(),
        unresolved,
    }
}

/// Roots of a monic squarefree quadratic, if they lie in `Q(i)`.
fn quadratic_roots(s: &UnivariatePoly<GaussianRational>) -> Option<(GaussianRational, GaussianRational)> {
    let b = s.coeff(1);
    let c = s.coeff(0);
    let disc = &(&b * &b) - &c.scale(&Rational::from(4));
    let r = sqrt_gaussian(&disc)?;
    let half = Rational::frac(1, 2);
    let neg_b = -&b;
    Some(((&neg_b + &r).scale(&half), (&neg_b - &r).scale(&half)))
}

pub fn sqrt_rational(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d).expect("positive denominator"))
}

/// Exact square root in `Q(i)` when one exists.
pub fn sqrt_gaussian(z: &GaussianRational) -> Option<GaussianRational> {
    if z.im.is_zero() {
        return if z.re.is_negative() {
            Some(GaussianRational::new(Rational::zero(), sqrt_rational(&-&z.re)?))
        } else {
            Some(GaussianRational::real(sqrt_rational(&z.re)?))
        };
    }
    let modulus = sqrt_rational(&z.norm())?;
    let half = Rational::frac(1, 2);
    let a = sqrt_rational(&((&modulus + &z.re) * &half))?;
    let mut b = sqrt_rational(&((&modulus - &z.re) * &half))?;
    if z.im.is_negative() {
        b = -b;
    }
    let r = GaussianRational::new(a, b);
    (&(&r * &r) == z).then_some(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn new(re: BigInt, im: BigInt) -> Self {
        GaussInt { re, im }
    }

    fn one() -> Self {
        GaussInt::new(BigInt::one(), BigInt::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn conj(&self) -> Self {
        GaussInt::new(self.re.clone(), -&self.im)
    }

    fn mul(&self, o: &Self) -> Self {
        GaussInt::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn sub(&self, o: &Self) -> Self {
        GaussInt::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        let n = d.norm();
        let t = self.mul(&d.conj());
        let (qr, rr) = t.re.div_rem(&n);
        let (qi, ri) = t.im.div_rem(&n);
        (rr.is_zero() && ri.is_zero()).then(|| GaussInt::new(qr, qi))
    }

    fn rem(&self, d: &Self) -> Self {
        let n = d.norm();
        let t = self.mul(&d.conj());
        let round = |v: &BigInt| -> BigInt { (v * BigInt::from(2) + &n).div_floor(&(&n * BigInt::from(2))) };
        let q = GaussInt::new(round(&t.re), round(&t.im));
        self.sub(&q.mul(d))
    }

    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    fn to_gaussian_rational(&self) -> GaussianRational {
        GaussianRational::new(Rational::from(self.re.clone()), Rational::from(self.im.clone()))
    }
}

fn factor_integer(n: &BigInt) -> Option<Vec<u64>> {
    let mut n = n.abs();
    let mut primes = Vec::new();
    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_LIMIT && BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            primes.push(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        let limit = BigInt::from(TRIAL_DIVISION_LIMIT) * BigInt::from(TRIAL_DIVISION_LIMIT);
        if n >= limit {
            return None;
        }
        primes.push(n.to_u64().expect("below limit"));
    }
    Some(primes)
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Gaussian primes above the rational prime `q`.
fn primes_over(q: u64) -> Vec<GaussInt> {
    let big = |v: u64| BigInt::from(v);
    if q == 2 {
        return vec![GaussInt::new(big(1), big(1))];
    }
    if q % 4 == 3 {
        return vec![GaussInt::new(big(q), BigInt::zero())];
    }
    let m = q as u128;
    let t = (2u128..)
        .map(|c| pow_mod(c, (m - 1) / 4, m))
        .find(|&t| t * t % m == m - 1)
        .expect("q = 1 mod 4 has a square root of -1");
    let pi = GaussInt::new(big(q), BigInt::zero()).gcd(&GaussInt::new(BigInt::from(t), BigInt::one()));
    vec![pi.clone(), pi.conj()]
}

/// Divisors of `z` up to units.
fn divisors(z: &GaussInt) -> Option<Vec<GaussInt>> {
    let mut factors: Vec<(GaussInt, u32)> = Vec::new();
    let mut rest = z.clone();
    for q in factor_integer(&z.norm())? {
        for pi in primes_over(q) {
            let mut e = 0;
            while let Some(next) = rest.div_exact(&pi) {
                rest = next;
                e += 1;
            }
            if e > 0 {
                factors.push((pi, e));
            }
        }
    }
    let mut out = vec![GaussInt::one()];
    for (pi, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = acc.mul(&pi);
                next.push(acc.clone());
            }
        }
        if next.len() > MAX_DIVISORS {
            return None;
        }
        out = next;
    }
    Some(out)
}

fn gaussian_int_coeffs(s: &UnivariatePoly<GaussianRational>) -> Vec<GaussInt> {
    let lcm = s
        .coeffs()
        .iter()
        .flat_map(|c| [c.re.denom().clone(), c.im.denom().clone()])
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let scale = Rational::from(lcm);
    s.coeffs()
        .iter()
        .map(|c| {
            let c = c.scale(&scale);
            GaussInt::new(c.re.numer().clone(), c.im.numer().clone())
        })
        .collect()
}

/// Every root in `Q(i)` of a squarefree polynomial with nonzero constant term.
fn candidate_roots(s: &UnivariatePoly<GaussianRational>) -> Option<Vec<GaussianRational>> {
    let coeffs = gaussian_int_coeffs(s);
    let tail = divisors(coeffs.first().expect("nonzero"))?;
    let head = divisors(coeffs.last().expect("nonzero"))?;
    let units = [
        GaussianRational::one(),
        GaussianRational::i(),
        -GaussianRational::one(),
        -GaussianRational::i(),
    ];
    let mut found = BTreeSet::new();
    for c in &head {
        let c_inv = c.to_gaussian_rational().inv().expect("nonzero divisor");
        for b in &tail {
            let base = &b.to_gaussian_rational() * &c_inv;
            for u in &units {
                let cand = &base * u;
                if !found.contains(&cand) && s.eval(&cand).is_zero() {
                    found.insert(cand);
                }
            }
        }
    }
    Some(found.into_iter().collect())
}
