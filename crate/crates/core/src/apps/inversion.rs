use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{reject_duplicates, AppError, Check};
use crate::arith::GaussianRational as GR;
use crate::bounds::{BoundReport, Term};
use crate::incidence::{build_incidence_graph, verify_no_kst, CartesianPointSet, CurveFamily, KstOutcome};
use crate::poly::BivariatePoly;
use crate::Rational;

/// `z -> a / (z + b)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct InversionMap {
    pub a: GR,
    pub b: GR,
    /// `|phi(A) ∩ A|`, skipping the pole `z = -b`.
    pub richness: usize,
}

impl InversionMap {
    pub fn apply(&self, z: &GR) -> Option<GR> {
        self.a.checked_div(&(z + &self.b)).ok()
    }
}

fn richness(a: &GR, b: &GR, set: &[GR], members: &HashSet<&GR>) -> usize {
    set.iter()
        .filter_map(|x| a.checked_div(&(x + b)).ok())
        .filter(|y| members.contains(y))
        .count()
}

/// All inversions `z -> a/(z+b)` mapping at least `k` elements of `A` into `A`.
///
/// Any such map sends two distinct `x, x'` to distinct `y, y'`, and those two
/// mapping pairs pin down `(a, b)` through `(y - y') b = y'x' - yx`. So the
/// candidates below are complete for `k >= 2`.
pub fn rich_inversions(set: &[GR], k: usize) -> Result<Vec<InversionMap>, AppError> {
    if k < 2 {
        return Err(AppError::KTooSmall { k });
    }
    if set.len() < 2 {
        return Err(AppError::TooFewElements { needed: 2, got: set.len() });
    }
    reject_duplicates(set)?;
    let pairs: Vec<(&GR, &GR)> = set.iter().flat_map(|x| set.iter().map(move |y| (x, y))).collect();
    let candidates: BTreeSet<(GR, GR)> = pairs
        .par_iter()
        .fold(BTreeSet::new, |mut acc, &(x, y)| {
            for &(x2, y2) in &pairs {
                if y == y2 {
                    continue;
                }
                let b = (y2 * x2 - y * x).checked_div(&(y - y2)).expect("y != y'");
                let a = y * &(x + &b);
                if !a.is_zero() {
                    acc.insert((a, b));
                }
            }
            acc
        })
        .reduce(BTreeSet::new, |mut l, r| {
            l.extend(r);
            l
        });
    let members: HashSet<&GR> = set.iter().collect();
    let candidates: Vec<(GR, GR)> = candidates.into_iter().collect();
    Ok(candidates
        .into_par_iter()
        .filter_map(|(a, b)| {
            let r = richness(&a, &b, set, &members);
            (r >= k).then_some(InversionMap { a, b, richness: r })
        })
        .collect())
}

/// `C_ab = Z(y (x + b) - a)`, the graph of the map.
pub fn inversion_curves(maps: &[InversionMap]) -> CurveFamily {
    CurveFamily::new(maps.iter().map(|m| {
        let poly = BivariatePoly::x()
            .mul(&BivariatePoly::y())
            .add(&BivariatePoly::y().scale(&m.b))
            .sub(&BivariatePoly::constant(m.a.clone()));
        (format!("C[{},{}]", m.a, m.b), poly)
    }))
    .expect("maps are distinct and a != 0")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InversionReport {
    pub n: usize,
    pub k: usize,
    pub count: usize,
    pub maps: Vec<InversionMap>,
    pub incidences: usize,
    pub kst: KstOutcome,
    pub checks: Vec<Check>,
    /// Observed `|R_k(A)|` against `|A|^4 / k^3`.
    pub bound: BoundReport,
}

/// Runs [`rich_inversions`] and checks the curve family for `K_{2,3}`.
pub fn inversion_report(set: &[GR], k: usize, cap: u64) -> Result<InversionReport, AppError> {
    let maps = rich_inversions(set, k)?;
    let members: HashSet<&GR> = set.iter().collect();
    let reverified = maps.iter().all(|m| {
        let hits = set.iter().filter_map(|x| m.apply(x)).filter(|y| members.contains(y)).count();
        hits == m.richness && hits >= k
    });
    let points = CartesianPointSet::new(set.to_vec(), set.to_vec())?;
    let curves = inversion_curves(&maps);
    let graph = build_incidence_graph(&points, &curves);
    let incidence_match = (0..graph.num_curves()).all(|c| graph.richness(c) == maps[c].richness);
    let kst = verify_no_kst(&graph, 2, 3, cap)?;
    let n = set.len();
    let predicted = Rational::from((n as i64).pow(4)).checked_div(&Rational::from((k as i64).pow(3))).expect("k >= 2");
    let bound = BoundReport::new("inversion", vec![Term::new("|A|^4/k^3", predicted, true)]).with_observed(maps.len() as u64);
    Ok(InversionReport {
        n,
        k,
        count: maps.len(),
        incidences: graph.num_edges(),
        checks: vec![
            Check::new("richness re-verified", reverified),
            Check::new("curve incidences equal richness", incidence_match),
            Check::new("no K_(2,3)", kst.is_pass()),
        ],
        kst,
        maps,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::DEFAULT_KST_CAP;

    fn ints(xs: impl IntoIterator<Item = i64>) -> Vec<GR> {
        xs.into_iter().map(GR::from_int).collect()
    }

    /// Cramer's rule on every pair of mapping pairs, no deduplication until
    /// the end; richness counted from scratch.
    fn oracle(set: &[GR], k: usize) -> Vec<InversionMap> {
        let mut out = Vec::new();
        for x in set {
            for y in set {
                for x2 in set {
                    for y2 in set {
                        if x == x2 || y == y2 {
                            continue;
                        }
                        // a (y' - y) = y y' (x' - x) ... solved for a, then b = a/y - x
                        let a = (y * y2 * (x2 - x)).checked_div(&(y - y2)).unwrap();
                        if a.is_zero() || y.is_zero() {
                            continue;
                        }
                        let b = a.checked_div(y).unwrap() - x.clone();
                        let mut r = 0;
                        for u in set {
                            for v in set {
                                if !(u + &b).is_zero() && (v * &(u + &b)) == a {
                                    r += 1;
                                }
                            }
                        }
                        if r >= k {
                            out.push(InversionMap { a, b, richness: r });
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn plus_minus_one() {
        let maps = rich_inversions(&ints([1, -1]), 2).unwrap();
        let ab: Vec<(String, String)> = maps.iter().map(|m| (m.a.to_string(), m.b.to_string())).collect();
        assert_eq!(ab, [("-1".to_string(), "0".to_string()), ("1".to_string(), "0".to_string())]);
    }

    #[test]
    fn two_elements_k3_empty() {
        assert!(rich_inversions(&ints([1, 2]), 3).unwrap().is_empty());
    }

    #[test]
    fn k_too_small() {
        assert_eq!(rich_inversions(&ints([1, 2]), 1), Err(AppError::KTooSmall { k: 1 }));
    }

    #[test]
    fn matches_oracle() {
        for n in 2..=6 {
            let set = ints(1..=n);
            assert_eq!(rich_inversions(&set, 2).unwrap(), oracle(&set, 2), "n = {n}");
            assert_eq!(rich_inversions(&set, 3).unwrap(), oracle(&set, 3), "n = {n}");
        }
        let set = vec![GR::i(), GR::from_int(2), GR::from_fracs((1, 2), (-1, 1)), GR::from_int(-3)];
        assert_eq!(rich_inversions(&set, 2).unwrap(), oracle(&set, 2));
    }

    #[test]
    fn report_passes() {
        let r = inversion_report(&ints(1..=6), 2, DEFAULT_KST_CAP).unwrap();
        assert!(super::super::all_passed(&r.checks), "{:?}", r.checks);
        assert_eq!(r.bound.observed, Some(r.count as u64));
    }
}
