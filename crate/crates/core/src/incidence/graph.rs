use rayon::prelude::*;

use super::{CartesianPointSet, CurveFamily};
use crate::arith::{modp, GaussianRational};
use crate::poly::{BivariatePoly, UnivariatePoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub curve: usize,
    pub ia: usize,
    pub ib: usize,
}

/// Bipartite point-curve incidence graph `I(P, C)`.
///
/// Edges are ordered by curve label, then `iA`, then `iB`. Points are
/// addressed by their linear index in `A x B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    len_a: usize,
    len_b: usize,
    edges: Vec<Edge>,
    labels: Vec<String>,
    by_curve: Vec<Vec<usize>>,
    by_point: Vec<(usize, Vec<usize>)>,
}

impl IncidenceGraph {
    /// Assembles a graph from per-curve sorted point lists.
    pub fn from_incidences(points: &CartesianPointSet, labels: Vec<String>, by_curve: Vec<Vec<usize>>) -> Self {
        assert_eq!(labels.len(), by_curve.len());
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&x, &y| labels[x].cmp(&labels[y]));
        let mut edges = Vec::with_capacity(by_curve.iter().map(Vec::len).sum());
        for &c in &order {
            for &p in &by_curve[c] {
                let (ia, ib) = points.unindex(p);
                edges.push(Edge { curve: c, ia, ib });
            }
        }
        let mut flat: Vec<(usize, usize)> = by_curve
            .iter()
            .enumerate()
            .flat_map(|(c, ps)| ps.iter().map(move |&p| (p, c)))
            .collect();
        flat.sort_unstable();
        let mut by_point: Vec<(usize, Vec<usize>)> = Vec::new();
        for (p, c) in flat {
            match by_point.last_mut() {
                Some((q, cs)) if *q == p => cs.push(c),
                _ => by_point.push((p, vec![c])),
            }
        }
        IncidenceGraph {
            len_a: points.len_a(),
            len_b: points.len_b(),
            edges,
            labels,
            by_curve,
            by_point,
        }
    }

    /// `|I(P, C)|`.
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_curves(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, curve: usize) -> &str {
        &self.labels[curve]
    }

    pub fn len_a(&self) -> usize {
        self.len_a
    }

    pub fn len_b(&self) -> usize {
        self.len_b
    }

    /// Sorted linear point indices on `curve`.
    pub fn curve_points(&self, curve: usize) -> &[usize] {
        &self.by_curve[curve]
    }

    /// Incident points in increasing order, each with its sorted curve list.
    pub fn point_curves(&self) -> &[(usize, Vec<usize>)] {
        &self.by_point
    }

    pub fn unindex(&self, p: usize) -> (usize, usize) {
        (p / self.len_b, p % self.len_b)
    }

    /// Incidence count per curve.
    pub fn richness(&self, curve: usize) -> usize {
        self.by_curve[curve].len()
    }

    pub fn to_csv(&self, points: &CartesianPointSet) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["label", "iA", "iB", "a", "b"]).expect("in-memory write");
        for e in &self.edges {
            let (a, b) = points.point(e.ia, e.ib);
            w.write_record([
                self.labels[e.curve].clone(),
                e.ia.to_string(),
                e.ib.to_string(),
                a.to_string(),
                b.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

/// Incidences of one curve, using a modular prefilter and exact confirmation.
fn curve_incidences(
    points: &CartesianPointSet,
    a_mod: &[Option<u64>],
    b_mod: &[Option<u64>],
    f: &BivariatePoly,
) -> Vec<usize> {
    let rows: Vec<Vec<Option<u64>>> = {
        let dy = f.degree_y() as usize;
        let dx = f.degree_x() as usize;
        let mut rows = vec![vec![Some(0u64); dx + 1]; dy + 1];
        for (&(i, j), c) in f.terms() {
            rows[j as usize][i as usize] = modp::reduce_gaussian(c);
        }
        rows
    };
    let modular_ok = rows.iter().flatten().all(Option::is_some);
    let mut out = Vec::new();
    for (ia, a) in points.a().iter().enumerate() {
        // f(a, y) mod p, as coefficients of y^0..y^dy
        let fiber_mod: Option<Vec<u64>> = match (modular_ok, a_mod[ia]) {
            (true, Some(am)) => Some(
                rows.iter()
                    .map(|row| {
                        row.iter()
                            .rev()
                            .fold(0u64, |acc, c| modp::add(modp::mul(acc, am), c.expect("checked")))
                    })
                    .collect(),
            ),
            _ => None,
        };
        let mut exact_fiber: Option<UnivariatePoly<GaussianRational>> = None;
        for (ib, b) in points.b().iter().enumerate() {
            if let (Some(fm), Some(bm)) = (&fiber_mod, b_mod[ib]) {
                let v = fm.iter().rev().fold(0u64, |acc, &c| modp::add(modp::mul(acc, bm), c));
                if v != 0 {
                    continue;
                }
            }
            let fiber = exact_fiber.get_or_insert_with(|| f.specialize_x(a));
            if fiber.eval(b).is_zero() {
                out.push(points.index(ia, ib));
            }
        }
    }
    out
}

/// Exact incidence graph of `points` against `curves`, built in parallel over curves.
pub fn build_incidence_graph(points: &CartesianPointSet, curves: &CurveFamily) -> IncidenceGraph {
    let a_mod: Vec<Option<u64>> = points.a().iter().map(modp::reduce_gaussian).collect();
    let b_mod: Vec<Option<u64>> = points.b().iter().map(modp::reduce_gaussian).collect();
    let by_curve: Vec<Vec<usize>> = curves
        .curves()
        .par_iter()
        .map(|c| curve_incidences(points, &a_mod, &b_mod, &c.poly))
        .collect();
    let labels = curves.curves().iter().map(|c| c.label.clone()).collect();
    IncidenceGraph::from_incidences(points, labels, by_curve)
}
