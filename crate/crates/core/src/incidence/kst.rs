use std::collections::BTreeMap;

use serde::Serialize;

use super::{IncidenceError, IncidenceGraph};

pub const DEFAULT_KST_CAP: u64 = 100_000_000;

/// `s` points together with `t` curves through all of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KstWitness {
    /// `(iA, iB)` positions.
    pub points: Vec<(usize, usize)>,
    pub curves: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum KstOutcome {
    Pass,
    Witness(KstWitness),
}

impl KstOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, KstOutcome::Pass)
    }
}

struct Search<'a> {
    graph: &'a IncidenceGraph,
    s: usize,
    t: usize,
    cap: u64,
    work: u64,
}

impl Search<'_> {
    fn charge(&mut self, n: usize) -> Result<(), IncidenceError> {
        self.work += n as u64;
        if self.work > self.cap {
            return Err(IncidenceError::ComplexityGuard { cap: self.cap });
        }
        Ok(())
    }

    /// Extends `chosen` (increasing point ids, all on every curve of `common`).
    fn extend(&mut self, chosen: &mut Vec<usize>, common: &[usize]) -> Result<Option<KstWitness>, IncidenceError> {
        if chosen.len() == self.s {
            return Ok(Some(KstWitness {
                points: chosen.iter().map(|&p| self.graph.unindex(p)).collect(),
                curves: common[..self.t].iter().map(|&c| self.graph.label(c).to_string()).collect(),
            }));
        }
        let last = *chosen.last().expect("seeded with one point");
        // how many curves of `common` pass through each later point
        let mut hits: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in common {
            let pts = self.graph.curve_points(c);
            let start = pts.partition_point(|&p| p <= last);
            self.charge(pts.len() - start + 1)?;
            for &p in &pts[start..] {
                *hits.entry(p).or_default() += 1;
            }
        }
        for (p, n) in hits {
            if n < self.t {
                continue;
            }
            let curves = self.point_curves(p);
            let next: Vec<usize> = intersect_sorted(common, curves);
            self.charge(common.len() + curves.len())?;
            chosen.push(p);
            if let Some(w) = self.extend(chosen, &next)? {
                return Ok(Some(w));
            }
            chosen.pop();
        }
        Ok(None)
    }

    fn point_curves(&self, p: usize) -> &[usize] {
        let list = self.graph.point_curves();
        let k = list.binary_search_by_key(&p, |(q, _)| *q).expect("incident point");
        &list[k].1
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Searches the incidence graph for `s` points lying on `t` common curves.
///
/// Point sets are grown in increasing index order, and only along points
/// that share at least `t` curves with everything chosen so far. `cap`
/// bounds the number of elementary list visits.
pub fn verify_no_kst(graph: &IncidenceGraph, s: usize, t: usize, cap: u64) -> Result<KstOutcome, IncidenceError> {
    if s == 0 || t == 0 {
        return Err(IncidenceError::InvalidParameter("s and t must be at least 1"));
    }
    if graph.num_curves() < t {
        return Ok(KstOutcome::Pass);
    }
    let mut search = Search { graph, s, t, cap, work: 0 };
    for (p, curves) in graph.point_curves() {
        search.charge(1)?;
        if curves.len() < t {
            continue;
        }
        let mut chosen = vec![*p];
        if let Some(w) = search.extend(&mut chosen, curves)? {
            return Ok(KstOutcome::Witness(w));
        }
    }
    Ok(KstOutcome::Pass)
}

/// Largest number of curves through a common pair of distinct points
/// (0 when no two points share a curve).
pub fn max_pair_multiplicity(graph: &IncidenceGraph) -> usize {
    let mut best = 0;
    let mut hits: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for (p, curves) in graph.point_curves() {
        hits.clear();
        for &c in curves {
            let pts = graph.curve_points(c);
            let start = pts.partition_point(|&q| q <= *p);
            for &q in &pts[start..] {
                *hits.entry(q).or_default() += 1;
            }
        }
        best = hits.values().copied().max().unwrap_or(0).max(best);
    }
    best
}
