//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use cartinc::incidence::{CartesianPointSet, CurveFamily, IncidenceGraph};
use cartinc::{BivariatePoly, GaussianRational as GR, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gr(s: &str) -> GR {
    s.parse().unwrap()
}

pub fn ints(xs: impl IntoIterator<Item = i64>) -> Vec<GR> {
    xs.into_iter().map(GR::from_int).collect()
}

pub fn rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    Rational::frac(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn scalar(rng: &mut ChaCha8Rng, complex: bool) -> GR {
    let re = rational(rng, 6, 3);
    let im = if complex && rng.gen_bool(0.5) { rational(rng, 4, 2) } else { Rational::zero() };
    GR::new(re, im)
}

pub fn distinct(rng: &mut ChaCha8Rng, n: usize, complex: bool) -> Vec<GR> {
    let mut out = BTreeSet::new();
    while out.len() < n {
        out.insert(scalar(rng, complex));
    }
    out.into_iter().collect()
}

pub fn random_poly(rng: &mut ChaCha8Rng, degree: u32, complex: bool) -> BivariatePoly {
    loop {
        let mut terms = Vec::new();
        for i in 0..=degree {
            for j in 0..=degree - i {
                if rng.gen_bool(0.5) {
                    let c = if complex && rng.gen_bool(0.3) {
                        GR::new(Rational::from(rng.gen_range(-3..=3)), Rational::from(rng.gen_range(-3..=3)))
                    } else {
                        GR::from_int(rng.gen_range(-4..=4))
                    };
                    terms.push(((i, j), c));
                }
            }
        }
        let f = BivariatePoly::from_terms(terms);
        if f.degree() > 0 {
            return f;
        }
    }
}

/// `y - u(x)` with `deg u <= degree`.
pub fn graph_curve(rng: &mut ChaCha8Rng, degree: u32, complex: bool) -> (BivariatePoly, Vec<GR>) {
    let coeffs: Vec<GR> = (0..=degree).map(|_| scalar(rng, complex)).collect();
    let u = BivariatePoly::from_terms(coeffs.iter().enumerate().map(|(k, c)| ((k as u32, 0), c.clone())));
    (BivariatePoly::y().sub(&u), coeffs)
}

/// Product of `d` random lines `a x + b y + c` with small integer coefficients.
pub fn line_product(rng: &mut ChaCha8Rng, d: u32) -> BivariatePoly {
    let mut f = BivariatePoly::constant(GR::one());
    for _ in 0..d {
        let (a, b) = loop {
            let (a, b) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            if (a, b) != (0, 0) {
                break (a, b);
            }
        };
        let line = BivariatePoly::from_terms([
            ((1, 0), GR::from_int(a)),
            ((0, 1), GR::from_int(b)),
            ((0, 0), GR::from_int(rng.gen_range(-3..=3))),
        ]);
        f = f.mul(&line);
    }
    f
}

/// Up to 20 x 20 points and 20 curves of degree at most 3, built so that
/// many incidences exist: graphs of random polynomials with `B` seeded by
/// their values on `A`, random curves shifted through a grid point, and
/// products of lines.
pub fn incidence_instance(rng: &mut ChaCha8Rng) -> (CartesianPointSet, CurveFamily) {
    let complex = rng.gen_bool(0.3);
    let na = rng.gen_range(1..=20);
    let a = distinct(rng, na, complex);
    let ncurves = rng.gen_range(1..=20);
    let mut b = BTreeSet::new();
    let mut polys = Vec::new();
    for _ in 0..ncurves {
        let degree = rng.gen_range(0..=3);
        match rng.gen_range(0..3) {
            0 => {
                let (f, _) = graph_curve(rng, degree, complex);
                for x in &a {
                    if b.len() < 20 && rng.gen_bool(0.4) {
                        b.insert(-f.specialize_x(x).coeff(0));
                    }
                }
                polys.push(f);
            }
            1 => polys.push(line_product(rng, degree.max(1))),
            _ => polys.push(random_poly(rng, degree.max(1), complex)),
        }
    }
    let target = rng.gen_range(1..=20usize);
    while b.len() < target {
        b.insert(scalar(rng, complex));
    }
    let points = CartesianPointSet::from_sets(a, b.into_iter().collect());
    // shift the random ones through a point
    let polys: Vec<BivariatePoly> = polys
        .into_iter()
        .map(|f| {
            if rng.gen_bool(0.5) {
                let (x, y) = points.point(rng.gen_range(0..points.len_a()), rng.gen_range(0..points.len_b()));
                f.sub(&BivariatePoly::constant(f.evaluate(x, y)))
            } else {
                f
            }
        })
        .filter(|f| !f.is_zero())
        .collect();
    let curves = CurveFamily::new(polys.into_iter().enumerate().map(|(k, f)| (format!("C_{k}"), f))).unwrap();
    (points, curves)
}

/// Every `(label, iA, iB)` with `f(a, b) = 0`, by direct evaluation.
pub fn naive_edges(points: &CartesianPointSet, curves: &CurveFamily) -> BTreeSet<(String, usize, usize)> {
    let mut out = BTreeSet::new();
    for c in curves.curves() {
        for (ia, x) in points.a().iter().enumerate() {
            for (ib, y) in points.b().iter().enumerate() {
                if c.poly.evaluate(x, y).is_zero() {
                    out.insert((c.label.clone(), ia, ib));
                }
            }
        }
    }
    out
}

pub fn graph_edges(graph: &IncidenceGraph) -> BTreeSet<(String, usize, usize)> {
    graph.edges().iter().map(|e| (graph.label(e.curve).to_string(), e.ia, e.ib)).collect()
}

/// Rich inversions by Cramer's rule on every pair of mapping pairs, with
/// richness counted over all of `A x A`.
pub fn inversion_oracle(set: &[GR], k: usize) -> Vec<(GR, GR, usize)> {
    let mut out = Vec::new();
    for x in set {
        for y in set {
            for x2 in set {
                for y2 in set {
                    if x == x2 || y == y2 || y.is_zero() {
                        continue;
                    }
                    let a = (y * y2 * (x2 - x)).checked_div(&(y - y2)).unwrap();
                    if a.is_zero() {
                        continue;
                    }
                    let b = a.checked_div(y).unwrap() - x.clone();
                    let r = set
                        .iter()
                        .flat_map(|u| set.iter().map(move |v| (u, v)))
                        .filter(|(u, v)| !(*u + &b).is_zero() && *v * &(*u + &b) == a)
                        .count();
                    if r >= k {
                        out.push((a, b, r));
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `|A + 1/A|` for `A = {1..n}`, with sums as reduced `u64` fractions.
pub fn mixed_sum_oracle(n: u64) -> usize {
    let mut seen = BTreeSet::new();
    for a in 1..=n {
        for a2 in 1..=n {
            let (num, den) = (a * a2 + 1, a2);
            let g = gcd(num, den);
            seen.insert((num / g, den / g));
        }
    }
    seen.len()
}

/// `|{(x - y)^2 + m^2 y^2}|` over `{0..n-1}^2` with integer `m`, in `i128`.
pub fn distance_count_oracle(n: i128, m: i128) -> usize {
    let mut seen = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            seen.insert((x - y) * (x - y) + m * m * y * y);
        }
    }
    seen.len()
}
