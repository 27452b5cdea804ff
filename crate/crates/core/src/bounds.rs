//! Evaluators for the incidence bound formulas, with every hidden constant
//! set to 1 and the logarithmic factor written `log2 M + log2 d + 1`.
//!
//! Fractional powers are exact whenever the radicand is a perfect power.
//! Otherwise they are rounded down to six significant digits (never below
//! the integer part), which keeps every evaluator monotone and the output
//! identical on every platform. `Term::exact` records which case applied.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::arith::Rational;

const SIG_DIGITS: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub name: String,
    pub value: Rational,
    pub decimal: String,
    /// False when `value` is a rounded-down approximation.
    pub exact: bool,
}

impl Term {
    pub fn new(name: impl Into<String>, value: Rational, exact: bool) -> Self {
        Term {
            name: name.into(),
            decimal: value.to_decimal(SIG_DIGITS),
            value,
            exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub formula: String,
    pub terms: Vec<Term>,
    /// First term attaining the maximum.
    pub dominant: String,
    pub total: Rational,
    pub total_decimal: String,
    pub observed: Option<u64>,
    /// `observed / total`.
    pub ratio: Option<Rational>,
    pub ratio_decimal: Option<String>,
    pub note: Option<String>,
}

impl BoundReport {
    pub fn new(formula: impl Into<String>, terms: Vec<Term>) -> Self {
        assert!(!terms.is_empty());
        let mut dominant = 0;
        for (k, t) in terms.iter().enumerate() {
            if t.value > terms[dominant].value {
                dominant = k;
            }
        }
        let total: Rational = terms.iter().map(|t| t.value.clone()).sum();
        BoundReport {
            formula: formula.into(),
            dominant: terms[dominant].name.clone(),
            total_decimal: total.to_decimal(SIG_DIGITS),
            total,
            terms,
            observed: None,
            ratio: None,
            ratio_decimal: None,
            note: None,
        }
    }

    pub fn with_observed(mut self, observed: u64) -> Self {
        let ratio = if self.total.is_zero() {
            Rational::zero()
        } else {
            Rational::from(observed as i64)
                .checked_div(&self.total)
                .expect("nonzero total")
        };
        self.observed = Some(observed);
        self.ratio_decimal = Some(ratio.to_decimal(SIG_DIGITS));
        self.ratio = Some(ratio);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn term(&self, name: &str) -> Option<&Term> {
        self.terms.iter().find(|t| t.name == name)
    }
}

fn digits(n: &BigInt) -> u32 {
    n.to_string().trim_start_matches('-').len() as u32
}

/// Rounds a positive value down to `SIG_DIGITS` significant digits, keeping
/// at least the full integer part.
fn floor_significant(v: &Rational) -> Rational {
    if !v.is_positive() {
        return v.clone();
    }
    let int_part = v.floor();
    let k = if int_part.is_zero() {
        // count leading fractional zeros
        let mut k = SIG_DIGITS;
        let mut scaled = v.clone() * Rational::from(10);
        while scaled.floor().is_zero() {
            scaled = scaled * Rational::from(10);
            k += 1;
        }
        k
    } else {
        SIG_DIGITS.saturating_sub(digits(&int_part))
    };
    let scale = BigInt::from(10u32).pow(k);
    let n = (v.clone() * Rational::from(scale.clone())).floor();
    Rational::new(n, scale).expect("nonzero scale")
}

/// `radicand^(1/root)`: exact for perfect powers, else rounded down.
pub fn root_value(radicand: &BigInt, root: u32) -> (Rational, bool) {
    assert!(root >= 1 && radicand >= &BigInt::zero());
    let r0 = radicand.nth_root(root);
    if Pow::pow(&r0, root) == *radicand {
        return (Rational::from(r0), true);
    }
    let k = if r0.is_zero() {
        SIG_DIGITS + 1
    } else {
        SIG_DIGITS.saturating_sub(digits(&r0))
    };
    let scale = BigInt::from(10u32).pow(k);
    let scaled = (radicand * Pow::pow(&scale, root)).nth_root(root);
    (Rational::new(scaled, scale).expect("nonzero scale"), false)
}

/// `log2(x) + 1` for `x >= 1`: exact for powers of two, else rounded down.
pub fn log2_plus_one(x: &BigInt) -> (Rational, bool) {
    assert!(x >= &BigInt::one());
    let e = x.bits() - 1;
    if *x == BigInt::one() << e {
        return (Rational::from(BigInt::from(e + 1)), true);
    }
    // fixed point y = x / 2^e in [1, 2) with FRAC fractional bits
    const FRAC: u64 = 128;
    const BITS: u32 = 40;
    let two = BigInt::from(2) << FRAC;
    let mut y: BigInt = (x << FRAC) >> e;
    let mut frac = BigInt::zero();
    for _ in 0..BITS {
        y = (&y * &y) >> FRAC;
        frac <<= 1;
        if y >= two {
            frac += 1;
            y >>= 1;
        }
    }
    let lower = Rational::from(BigInt::from(e + 1)) + Rational::new(frac, BigInt::one() << BITS).expect("power of two");
    (floor_significant(&lower), false)
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn root_term(name: &str, radicand: BigInt, root: u32) -> Term {
    let (v, exact) = root_value(&radicand, root);
    Term::new(name, v, exact)
}

fn log_term(m: u64, d: u64, n_points: u64) -> Term {
    let (l, exact) = log2_plus_one(&(big(m) * big(d)));
    Term::new(
        "M (log2 M + log2 d + 1) |P|",
        l * Rational::from(big(m) * big(n_points)),
        exact,
    )
}

/// Complex curves on `A x B`: `d^(4/3) M^(1/3) |P|^(2/3) |C|^(2/3) + M (log M + log d) |P| + d^4 |C|`.
pub fn bound_main(d: u64, m: u64, n_points: u64, n_curves: u64) -> BoundReport {
    let first = root_term(
        "d^(4/3) M^(1/3) |P|^(2/3) |C|^(2/3)",
        big(d).pow(4u32) * big(m) * big(n_points).pow(2u32) * big(n_curves).pow(2u32),
        3,
    );
    let last = Term::new("d^4 |C|", Rational::from(big(d).pow(4u32) * big(n_curves)), true);
    BoundReport::new("main", vec![first, log_term(m, d, n_points), last])
}

/// Real curves on `A x B`: `d^(2/3) M^(1/3) |P|^(2/3) |C|^(2/3) + M (log M + log d) |P| + d^2 |C|`.
pub fn bound_real(d: u64, m: u64, n_points: u64, n_curves: u64) -> BoundReport {
    let first = root_term(
        "d^(2/3) M^(1/3) |P|^(2/3) |C|^(2/3)",
        big(d).pow(2u32) * big(m) * big(n_points).pow(2u32) * big(n_curves).pow(2u32),
        3,
    );
    let last = Term::new("d^2 |C|", Rational::from(big(d).pow(2u32) * big(n_curves)), true);
    BoundReport::new("real", vec![first, log_term(m, d, n_points), last])
}

/// Kovari-Sos-Turan edge bound for a `K_{s,t}`-free bipartite graph on `X x Y`:
/// `t^(1/s) |X| |Y|^(1 - 1/s) + s |Y|`.
pub fn bound_kst(s: u64, t: u64, n_x: u64, n_y: u64) -> BoundReport {
    assert!(s >= 1 && t >= 1);
    let s32 = u32::try_from(s).expect("s fits in u32");
    let first = root_term(
        "t^(1/s) |X| |Y|^(1-1/s)",
        big(t) * big(n_x).pow(s32) * big(n_y).pow(s32 - 1),
        s32,
    );
    let second = Term::new("s |Y|", Rational::from(big(s) * big(n_y)), true);
    BoundReport::new("kst", vec![first, second])
}

/// `|P|^(s/(2s-1)) |C|^((2s-2)/(2s-1)) + |P| + |C|`.
pub fn bound_general_st(s: u64, n_points: u64, n_curves: u64) -> BoundReport {
    assert!(s >= 2);
    let s32 = u32::try_from(s).expect("s fits in u32");
    let first = root_term(
        "|P|^(s/(2s-1)) |C|^((2s-2)/(2s-1))",
        big(n_points).pow(s32) * big(n_curves).pow(2 * s32 - 2),
        2 * s32 - 1,
    );
    BoundReport::new(
        "general",
        vec![
            first,
            Term::new("|P|", Rational::from(n_points as i64), true),
            Term::new("|C|", Rational::from(n_curves as i64), true),
        ],
    )
    .with_note("implicit constants depending on d, s and t are omitted")
}

/// `base^(num/den)` as a single-term report.
pub fn power_bound(formula: &str, name: &str, base: u64, num: u32, den: u32) -> BoundReport {
    BoundReport::new(formula, vec![root_term(name, big(base).pow(num), den)])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrendRow {
    pub app: String,
    pub n: u64,
    pub report: BoundReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrendTable {
    pub csv: String,
    pub max_ratio: Rational,
    pub min_ratio: Rational,
}

pub const TREND_HEADER: [&str; 6] = ["app", "n", "observed", "bound_terms", "bound_total", "ratio"];

/// One CSV record: terms are `name=decimal` pairs joined by `;`.
pub fn trend_record(row: &TrendRow) -> [String; 6] {
    let terms: Vec<String> = row.report.terms.iter().map(|t| format!("{}={}", t.name, t.decimal)).collect();
    [
        row.app.clone(),
        row.n.to_string(),
        row.report.observed.unwrap_or(0).to_string(),
        terms.join(";"),
        row.report.total_decimal.clone(),
        row.report.ratio_decimal.clone().unwrap_or_default(),
    ]
}

/// Ratio column over a series of reports, with its extremes.
pub fn trend_table(rows: &[TrendRow]) -> TrendTable {
    assert!(!rows.is_empty(), "trend table needs at least one row");
    let ratios: Vec<Rational> = rows
        .iter()
        .map(|r| r.report.ratio.clone().expect("rows carry observed values"))
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TREND_HEADER).expect("in-memory write");
    for row in rows {
        w.write_record(trend_record(row)).expect("in-memory write");
    }
    TrendTable {
        csv: String::from_utf8(w.into_inner().expect("flush")).expect("utf8"),
        max_ratio: ratios.iter().max().expect("nonempty").clone(),
        min_ratio: ratios.iter().min().expect("nonempty").clone(),
    }
}
