//! Balanced grid partitions of a real product set and the one/many
//! decomposition of incidences by cell.
//!
//! Everything here is real: `A, B` are subsets of `Q` and curves have
//! rational coefficients. Cuts never coincide with factor elements, so every
//! point lies in the interior of exactly one cell.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::Rational;
use crate::incidence::{CartesianPointSet, CurveFamily, IncidenceGraph};
use crate::poly::{axis_parallel_lines, count_real_roots, BivariatePoly, PolyError, UnivariatePoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("r = {r} exceeds the factor set size {len}")]
    RTooLarge { r: usize, len: usize },
    #[error("r must be at least 1")]
    RZero,
    #[error("cut {axis} = {cut} lies inside curve {label}")]
    DegenerateLine { label: String, axis: char, cut: Rational },
    #[error("partitioning needs real inputs: {0}")]
    NotReal(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Outcome of choosing `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RSelection {
    pub r: usize,
    /// `ceil((M |P|^2 / (d |C|))^(1/3))` before clamping.
    pub unclamped: usize,
    /// `r` was raised to `d`; the side condition `d^4 |C| <= M |P|^2` failed.
    pub lower_clamped: bool,
    /// `r` was lowered to `|A|`; the side condition `d |C| >= M |B|^2 / |A|` failed.
    pub upper_clamped: bool,
}

fn ceil_cbrt(n: &BigInt) -> BigInt {
    let c = n.cbrt();
    if &(&c * &c * &c) < n {
        c + 1
    } else {
        c
    }
}

/// `r = clamp(ceil((M nP^2 / (d nC))^(1/3)), d, max_r)`, by exact integer root bracketing.
///
/// When `d > max_r` the upper clamp wins, since cuts need `r <= |A|`.
pub fn select_r(d: u64, m: u64, n_points: u64, n_curves: u64, max_r: Option<u64>) -> RSelection {
    let (d, m, np, nc) = (d.max(1), m.max(1), n_points.max(1), n_curves.max(1));
    let num = BigInt::from(m) * BigInt::from(np) * BigInt::from(np);
    let den = BigInt::from(d) * BigInt::from(nc);
    // r^3 >= num/den  <=>  r^3 >= ceil(num/den)
    let q = (&num + &den - 1u32) / &den;
    let raw: u64 = ceil_cbrt(&q).try_into().unwrap_or(u64::MAX);
    let mut r = raw;
    let lower_clamped = r < d;
    if lower_clamped {
        r = d;
    }
    let upper_clamped = max_r.is_some_and(|cap| r > cap);
    if let Some(cap) = max_r {
        r = r.min(cap.max(1));
    }
    RSelection {
        r: r as usize,
        unclamped: raw as usize,
        lower_clamped,
        upper_clamped,
    }
}

/// Cuts sorted `values` into at most `r` consecutive blocks of at most
/// `ceil(n / r)` elements, cutting at midpoints between blocks.
///
/// Any value strictly between the two neighbouring elements would serve
/// equally well as a cut.
pub fn choose_cuts(values: &[Rational], r: usize) -> Result<Vec<Rational>, PartitionError> {
    if r == 0 {
        return Err(PartitionError::RZero);
    }
    if r > values.len() {
        return Err(PartitionError::RTooLarge { r, len: values.len() });
    }
    let block = values.len().div_ceil(r);
    Ok((block..values.len())
        .step_by(block)
        .map(|k| values[k - 1].midpoint(&values[k]))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridPartition {
    pub r: usize,
    pub cuts_x: Vec<Rational>,
    pub cuts_y: Vec<Rational>,
}

/// Real coordinates of a point set, or `NotReal`.
pub fn real_factors(points: &CartesianPointSet) -> Result<(Vec<Rational>, Vec<Rational>), PartitionError> {
    if !points.is_real() {
        return Err(PartitionError::NotReal("point coordinates"));
    }
    let re = |v: &[crate::arith::GaussianRational]| v.iter().map(|z| z.re.clone()).collect();
    Ok((re(points.a()), re(points.b())))
}

impl GridPartition {
    /// Cuts both axes with parameter `r`, using `min(r, |A|)` and `min(r, |B|)` blocks.
    pub fn build(points: &CartesianPointSet, r: usize) -> Result<Self, PartitionError> {
        let (a, b) = real_factors(points)?;
        if r == 0 {
            return Err(PartitionError::RZero);
        }
        Ok(GridPartition {
            r,
            cuts_x: choose_cuts(&a, r.min(a.len().max(1)))?,
            cuts_y: choose_cuts(&b, r.min(b.len().max(1)))?,
        })
    }

    /// Like [`GridPartition::build`], but moves any cut that would run along
    /// an axis-parallel line of a curve to another point of its wiggle interval.
    pub fn build_avoiding(points: &CartesianPointSet, r: usize, curves: &CurveFamily) -> Result<Self, PartitionError> {
        let mut grid = Self::build(points, r)?;
        let (a, b) = real_factors(points)?;
        let mut vertical = BTreeSet::new();
        let mut horizontal = BTreeSet::new();
        for c in curves.curves() {
            let lines = axis_parallel_lines(&c.poly);
            vertical.extend(lines.vertical.into_iter().filter(|z| z.is_real()).map(|z| z.re));
            horizontal.extend(lines.horizontal.into_iter().filter(|z| z.is_real()).map(|z| z.re));
        }
        avoid(&mut grid.cuts_x, &a, &vertical);
        avoid(&mut grid.cuts_y, &b, &horizontal);
        Ok(grid)
    }

    pub fn cell_x(&self, x: &Rational) -> usize {
        self.cuts_x.partition_point(|c| c < x)
    }

    pub fn cell_y(&self, y: &Rational) -> usize {
        self.cuts_y.partition_point(|c| c < y)
    }

    /// Interval occupancy per axis.
    pub fn occupancy(&self, a: &[Rational], b: &[Rational]) -> (Vec<usize>, Vec<usize>) {
        let mut ox = vec![0; self.cuts_x.len() + 1];
        let mut oy = vec![0; self.cuts_y.len() + 1];
        a.iter().for_each(|x| ox[self.cell_x(x)] += 1);
        b.iter().for_each(|y| oy[self.cell_y(y)] += 1);
        (ox, oy)
    }

    /// Checks the structural invariants against the factor sets it was built on.
    pub fn check(&self, a: &[Rational], b: &[Rational]) -> Result<(), String> {
        for (axis, cuts, vals) in [('x', &self.cuts_x, a), ('y', &self.cuts_y, b)] {
            if cuts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("{axis} cuts are not strictly increasing"));
            }
            if cuts.len() > self.r {
                return Err(format!("{} {axis} cuts exceed r = {}", cuts.len(), self.r));
            }
            if let Some(c) = cuts.iter().find(|c| vals.binary_search(c).is_ok()) {
                return Err(format!("{axis} cut {c} hits a factor element"));
            }
        }
        let (ox, oy) = self.occupancy(a, b);
        let cap_x = a.len().div_ceil(self.r);
        let cap_y = b.len().div_ceil(self.r);
        if let Some(n) = ox.iter().find(|&&n| n > cap_x) {
            return Err(format!("x interval holds {n} > {cap_x} elements"));
        }
        if let Some(n) = oy.iter().find(|&&n| n > cap_y) {
            return Err(format!("y interval holds {n} > {cap_y} elements"));
        }
        Ok(())
    }
}

/// Halves the distance to the next factor element until the cut is clear of `forbidden`.
fn avoid(cuts: &mut [Rational], values: &[Rational], forbidden: &BTreeSet<Rational>) {
    for c in cuts.iter_mut() {
        let next = &values[values.partition_point(|v| v < c)];
        while forbidden.contains(c) {
            *c = c.midpoint(next);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub curve: String,
    /// `'x'` for a vertical cut `x = c`, `'y'` for a horizontal one.
    pub axis: char,
    pub cut: Rational,
    pub count: usize,
}

fn real_fiber(f: &UnivariatePoly<crate::arith::GaussianRational>) -> UnivariatePoly<Rational> {
    f.map(|c| c.re.clone())
}

fn crossings_for_curve(label: &str, f: &BivariatePoly, grid: &GridPartition) -> Result<Vec<Crossing>, PartitionError> {
    let mut out = Vec::with_capacity(grid.cuts_x.len() + grid.cuts_y.len());
    for (axis, cuts) in [('x', &grid.cuts_x), ('y', &grid.cuts_y)] {
        for c in cuts {
            let z = c.clone().into();
            let fiber = real_fiber(&if axis == 'x' { f.specialize_x(&z) } else { f.specialize_y(&z) });
            if fiber.is_zero() {
                return Err(PartitionError::DegenerateLine {
                    label: label.to_string(),
                    axis,
                    cut: c.clone(),
                });
            }
            let count = count_real_roots(&fiber)?;
            assert!(count <= f.degree() as usize, "line meets {label} more than deg times");
            out.push(Crossing {
                curve: label.to_string(),
                axis,
                cut: c.clone(),
                count,
            });
        }
    }
    Ok(out)
}

/// Real intersection counts of every curve with every grid line, by Sturm sequences.
pub fn gridline_crossings(curves: &CurveFamily, grid: &GridPartition) -> Result<Vec<Crossing>, PartitionError> {
    if !curves.is_real() {
        return Err(PartitionError::NotReal("curve coefficients"));
    }
    let per_curve: Vec<Result<Vec<Crossing>, PartitionError>> = curves
        .curves()
        .par_iter()
        .map(|c| crossings_for_curve(&c.label, &c.poly, grid))
        .collect();
    let mut out = Vec::new();
    for r in per_curve {
        out.extend(r?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    /// Incidences that are alone on their curve within their cell.
    pub i1: usize,
    /// Incidences sharing their cell with another incidence of the same curve.
    pub i2: usize,
    pub total: usize,
    /// Most points of `P` in a single cell.
    pub per_cell_max: usize,
    /// Most real crossings of one curve with one grid line, when computed.
    pub crossings_per_line_max: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellCount {
    pub cell_x: usize,
    pub cell_y: usize,
    pub curve: String,
    pub count: usize,
}

/// Splits `I(P, C)` by cell into `I1` (singleton groups) and `I2`.
pub fn decompose_incidences(
    graph: &IncidenceGraph,
    points: &CartesianPointSet,
    grid: &GridPartition,
) -> Result<(DecompositionReport, Vec<CellCount>), PartitionError> {
    let (a, b) = real_factors(points)?;
    let cx: Vec<usize> = a.iter().map(|x| grid.cell_x(x)).collect();
    let cy: Vec<usize> = b.iter().map(|y| grid.cell_y(y)).collect();
    let mut groups: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for e in graph.edges() {
        *groups.entry((e.curve, cx[e.ia], cy[e.ib])).or_default() += 1;
    }
    let i1 = groups.values().filter(|&&n| n == 1).count();
    let i2 = groups.values().filter(|&&n| n > 1).sum();
    let (ox, oy) = grid.occupancy(&a, &b);
    let per_cell_max = ox.iter().max().unwrap_or(&0) * oy.iter().max().unwrap_or(&0);
    let mut cells: Vec<CellCount> = groups
        .into_iter()
        .map(|((c, x, y), count)| CellCount {
            cell_x: x,
            cell_y: y,
            curve: graph.label(c).to_string(),
            count,
        })
        .collect();
    cells.sort_by(|p, q| (p.cell_x, p.cell_y, &p.curve).cmp(&(q.cell_x, q.cell_y, &q.curve)));
    let report = DecompositionReport {
        i1,
        i2,
        total: graph.num_edges(),
        per_cell_max,
        crossings_per_line_max: None,
    };
    debug_assert_eq!(report.i1 + report.i2, report.total);
    Ok((report, cells))
}

pub fn cells_to_csv(cells: &[CellCount]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["cellX", "cellY", "curve_label", "count"]).expect("in-memory write");
    for c in cells {
        w.write_record([c.cell_x.to_string(), c.cell_y.to_string(), c.curve.clone(), c.count.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}
