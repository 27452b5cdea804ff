use std::cmp::Ordering;

use super::{PolyError, UnivariatePoly};
use crate::arith::Rational;

/// Interval endpoint for root counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl Endpoint {
    fn rank(&self) -> u8 {
        match self {
            Endpoint::NegInfinity => 0,
            Endpoint::Finite(_) => 1,
            Endpoint::PosInfinity => 2,
        }
    }
}

impl PartialOrd for Endpoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Endpoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Endpoint::Finite(a), Endpoint::Finite(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl From<Rational> for Endpoint {
    fn from(q: Rational) -> Self {
        Endpoint::Finite(q)
    }
}

/// Signed remainder sequence `p, p', -rem(p, p'), ...`.
pub fn sturm_sequence(p: &UnivariatePoly<Rational>) -> Vec<UnivariatePoly<Rational>> {
    let mut seq = vec![p.clone()];
    let mut next = p.derivative();
    while !next.is_zero() {
        let r = seq.last().expect("nonempty").rem(&next).neg();
        seq.push(next);
        next = r;
    }
    seq
}

fn sign_at(p: &UnivariatePoly<Rational>, at: &Endpoint) -> i32 {
    match at {
        Endpoint::Finite(x) => p.eval(x).signum(),
        Endpoint::PosInfinity => p.leading().map_or(0, Rational::signum),
        Endpoint::NegInfinity => {
            let s = p.leading().map_or(0, Rational::signum);
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }
    }
}

fn variations(seq: &[UnivariatePoly<Rational>], at: &Endpoint) -> usize {
    let mut count = 0;
    let mut last = 0;
    for p in seq {
        let s = sign_at(p, at);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn sturm_count(p: &UnivariatePoly<Rational>, lo: &Endpoint, hi: &Endpoint) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(PolyError::EmptyInterval);
    }
    for end in [lo, hi] {
        if let Endpoint::Finite(x) = end {
            if p.eval(x).is_zero() {
                return Err(PolyError::RootAtEndpoint(x.clone()));
            }
        }
    }
    let seq = sturm_sequence(p);
    Ok(variations(&seq, lo) - variations(&seq, hi))
}

/// Distinct real roots on the whole line.
pub fn count_real_roots(p: &UnivariatePoly<Rational>) -> Result<usize, PolyError> {
    sturm_count(p, &Endpoint::NegInfinity, &Endpoint::PosInfinity)
}
