//! Reduction of `Q(i)` into the prime field of order
//! `p = 2^64 - 2^32 + 1`, where `-1` is a square.
//!
//! This is a ring homomorphism on every element whose denominators are
//! prime to `p`, so a nonzero image certifies a nonzero value. A zero image
//! proves nothing and must be confirmed exactly.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{GaussianRational, Rational};

pub const MODULUS: u64 = 0xFFFF_FFFF_0000_0001;

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    ((a as u128 + b as u128) % MODULUS as u128) as u64
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

pub fn pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

pub fn inv(a: u64) -> Option<u64> {
    (a != 0).then(|| pow(a, MODULUS - 2))
}

/// The image of `i`: a fixed square root of `-1`.
pub fn sqrt_minus_one() -> u64 {
    static ROOT: OnceLock<u64> = OnceLock::new();
    *ROOT.get_or_init(|| {
        // 7 generates the multiplicative group
        pow(7, (MODULUS - 1) / 4)
    })
}

fn reduce_int(n: &BigInt) -> u64 {
    let m = BigInt::from(MODULUS);
    let r = ((n % &m) + &m) % &m;
    r.to_u64().expect("reduced below modulus")
}

pub fn reduce_rational(q: &Rational) -> Option<u64> {
    let d = inv(reduce_int(q.denom()))?;
    Some(mul(reduce_int(q.numer()), d))
}

pub fn reduce_gaussian(z: &GaussianRational) -> Option<u64> {
    let re = reduce_rational(&z.re)?;
    if z.im.is_zero() {
        return Some(re);
    }
    let im = reduce_rational(&z.im)?;
    Some(add(re, mul(im, sqrt_minus_one())))
}
