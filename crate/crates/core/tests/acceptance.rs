//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cartinc::apps::{all_passed, inversion_report, line_distance_set, rich_inversions, sumset_expander};
use cartinc::bounds::{bound_general_st, bound_kst, bound_main, bound_real, trend_record, trend_table, BoundReport, TrendRow};
use cartinc::experiment::{run_experiment, ExperimentConfig, Pipeline, SetSource};
use cartinc::incidence::{build_incidence_graph, verify_no_kst, CartesianPointSet, CurveFamily, DEFAULT_KST_CAP};
use cartinc::io::GeneratorKind;
use cartinc::partition::{decompose_incidences, gridline_crossings, real_factors, select_r, GridPartition};
use cartinc::poly::{bezout_check, realify, resultant_x, resultant_y};
use cartinc::{GaussianRational as GR, Rational};
use common::*;
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn oracle_equivalence() -> Outcome {
    let mut edges = 0;
    for seed in 0..200 {
        let mut rng = rng(seed);
        let (points, curves) = incidence_instance(&mut rng);
        let graph = build_incidence_graph(&points, &curves);
        let got = graph_edges(&graph);
        let want = naive_edges(&points, &curves);
        ensure!(got == want, "seed {seed}: {} edges vs {} from the oracle", got.len(), want.len());
        ensure!(graph.num_edges() == want.len(), "seed {seed}: duplicate edges");
        edges += want.len();
    }
    Ok(format!("200 instances, {edges} edges matched"))
}

fn bezout_suite() -> Outcome {
    let grid: Vec<GR> = (-15..15).map(|k| GR::real(Rational::frac(k, 2))).collect();
    let points = CartesianPointSet::new(grid.clone(), grid).unwrap();
    let mut rng = rng(1_000);
    let (mut checked, mut max_common) = (0, 0);
    while checked < 200 {
        let (d1, d2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (f, g) = if rng.gen_bool(0.5) {
            (line_product(&mut rng, d1), line_product(&mut rng, d2))
        } else {
            (random_poly(&mut rng, d1, false), random_poly(&mut rng, d2, false))
        };
        if bezout_check(&f, &g).common_component {
            continue;
        }
        let (d1, d2) = (f.degree() as usize, g.degree() as usize);
        let res = if f.degree_y() > 0 && g.degree_y() > 0 {
            Some(resultant_y(&f, &g).unwrap())
        } else if f.degree_x() > 0 && g.degree_x() > 0 {
            Some(resultant_x(&f, &g).unwrap())
        } else {
            None
        };
        if let Some(res) = res {
            ensure!(!res.is_zero(), "zero resultant without a common component: {f} / {g}");
            ensure!(res.degree().unwrap() <= d1 * d2, "deg Res > d1 d2 for {f} / {g}");
        }
        let curves = CurveFamily::new([("f".to_string(), f.clone()), ("g".to_string(), g.clone())]).unwrap();
        let graph = build_incidence_graph(&points, &curves);
        let common = graph.point_curves().iter().filter(|(_, c)| c.len() == 2).count();
        max_common = max_common.max(common);
        let outcome = verify_no_kst(&graph, d1 * d2 + 1, 2, DEFAULT_KST_CAP).map_err(|e| e.to_string())?;
        ensure!(outcome.is_pass(), "{} common grid points for {f} / {g}", common);
        checked += 1;
    }
    Ok(format!("200 pairs, at most {max_common} common grid points"))
}

fn wiggle(cuts: &[Rational], values: &[Rational]) -> Vec<Rational> {
    // move each cut to 3/4 of the way towards the next factor element
    cuts.iter()
        .map(|c| {
            let next = values.iter().find(|v| *v > c).unwrap();
            let prev = values.iter().rev().find(|v| *v < c).unwrap();
            (prev.clone() + next.clone() * Rational::from(3)) * Rational::frac(1, 4)
        })
        .collect()
}

fn partition_identity() -> Outcome {
    let mut runs = 0;
    for seed in 0..100 {
        let mut rng = rng(2_000 + seed);
        let (points, curves) = loop {
            let (p, c) = incidence_instance(&mut rng);
            if p.is_real() && c.is_real() && p.len_a() >= 2 && p.len_b() >= 2 {
                break (p, c);
            }
        };
        let (a, b) = real_factors(&points).unwrap();
        let graph = build_incidence_graph(&points, &curves);
        let d = curves.max_degree() as usize;
        let m = cartinc::incidence::max_pair_multiplicity(&graph) as u64;
        let auto = select_r(d as u64, m, points.len() as u64, curves.len() as u64, Some(a.len() as u64)).r;
        let sqrt = (1..).find(|r| r * r >= a.len()).unwrap();
        for r in [auto, 2, sqrt] {
            let grid = GridPartition::build_avoiding(&points, r, &curves).map_err(|e| format!("seed {seed}, r = {r}: {e}"))?;
            let (report, _) = decompose_incidences(&graph, &points, &grid).unwrap();
            ensure!(report.i1 + report.i2 == graph.num_edges(), "seed {seed}, r = {r}: I1 + I2 != |I|");
            grid.check(&a, &b).map_err(|e| format!("seed {seed}, r = {r}: {e}"))?;
            let (ox, _) = grid.occupancy(&a, &b);
            ensure!(ox.iter().all(|&k| k <= a.len().div_ceil(r)), "seed {seed}: interval over capacity");
            let crossings = gridline_crossings(&curves, &grid).map_err(|e| format!("seed {seed}: {e}"))?;
            ensure!(crossings.iter().all(|c| c.count <= d), "seed {seed}: crossing count above d");
            let moved = GridPartition {
                r: grid.r,
                cuts_x: wiggle(&grid.cuts_x, &a),
                cuts_y: wiggle(&grid.cuts_y, &b),
            };
            let (again, _) = decompose_incidences(&graph, &points, &moved).unwrap();
            ensure!(again == report, "seed {seed}, r = {r}: wiggled cuts changed the report");
            runs += 1;
        }
    }
    Ok(format!("100 instances, {runs} partitions"))
}

fn inversion_app() -> Outcome {
    let pinned = rich_inversions(&ints([1, -1]), 2).map_err(|e| e.to_string())?;
    let pinned: Vec<(String, String)> = pinned.iter().map(|m| (m.a.to_string(), m.b.to_string())).collect();
    ensure!(pinned == [("-1".into(), "0".into()), ("1".into(), "0".into())], "{{1,-1}}: {pinned:?}");
    let mut sizes = Vec::new();
    for n in 4..=12 {
        let set = ints(1..=n);
        let report = inversion_report(&set, 2, DEFAULT_KST_CAP).map_err(|e| e.to_string())?;
        let got: Vec<(GR, GR, usize)> = report.maps.iter().map(|m| (m.a.clone(), m.b.clone(), m.richness)).collect();
        ensure!(got == inversion_oracle(&set, 2), "n = {n}: differs from the oracle");
        ensure!(all_passed(&report.checks), "n = {n}: {:?}", report.checks);
        sizes.push(report.count);
    }
    Ok(format!("|R_2| for n = 4..12: {sizes:?}"))
}

fn sumset_app() -> Outcome {
    for n in 2..=30u64 {
        let report = sumset_expander(&ints(1..=n as i64), DEFAULT_KST_CAP).map_err(|e| e.to_string())?;
        let oracle = mixed_sum_oracle(n);
        ensure!(oracle == (n * n) as usize, "oracle: |A+1/A| = {oracle} for n = {n}");
        ensure!(report.mixed_size == oracle, "n = {n}: |A+1/A| = {}", report.mixed_size);
        ensure!(report.min_richness >= n as usize, "n = {n}: a curve has {} incidences", report.min_richness);
        ensure!(report.incidence_total >= (n * n * n) as usize, "n = {n}: total {}", report.incidence_total);
        ensure!(all_passed(&report.checks), "n = {n}: {:?}", report.checks);
    }
    Ok("n = 2..30".into())
}

fn distance_app() -> Outcome {
    let mut last = String::new();
    for n in 2..=40i64 {
        let set = ints(0..n);
        let r = line_distance_set(&set, &set, &GR::one(), DEFAULT_KST_CAP).map_err(|e| e.to_string())?;
        ensure!(r.distinct == distance_count_oracle(n as i128, 1), "n = {n}: |D| = {}", r.distinct);
        let lhs = num_bigint_from(r.energy.energy) * Rational::from(r.distinct as i64);
        ensure!(lhs >= n.pow(4), "n = {n}: E |D| < n^4");
        ensure!(all_passed(&r.checks), "n = {n}: {:?}", r.checks);
        if n == 2 {
            ensure!(r.distinct == 3, "n = 2: |D| = {}", r.distinct);
        }
        last = format!("n = 40: |D| = {}, E = {}", r.distinct, r.energy.energy);
    }
    Ok(last)
}

fn num_bigint_from(v: u128) -> Rational {
    v.to_string().parse().unwrap()
}

fn realification() -> Outcome {
    let mut rng = rng(7_000);
    let mut zeros = 0;
    for _ in 0..100 {
        let (du, dg) = (rng.gen_range(0..=1), rng.gen_range(1..=2));
        let (line, u) = graph_curve(&mut rng, du, true);
        let f = line.mul(&random_poly(&mut rng, dg, true));
        let pair = realify(&f);
        ensure!(pair.h1.degree() <= f.degree() && pair.h2.degree() <= f.degree(), "degree grew for {f}");
        for k in 0..100 {
            let x = scalar(&mut rng, true);
            let y = if k % 2 == 0 {
                u.iter().rev().fold(GR::zero(), |acc, c| acc * x.clone() + c.clone())
            } else {
                scalar(&mut rng, true)
            };
            let on_curve = f.evaluate(&x, &y).is_zero();
            let (h1, h2) = pair.evaluate_at(&x, &y);
            ensure!(on_curve == (h1.is_zero() && h2.is_zero()), "mismatch for {f} at ({x}, {y})");
            zeros += on_curve as usize;
        }
    }
    Ok(format!("10000 points, {zeros} on their curve"))
}

fn bound_reports() -> Vec<BoundReport> {
    let vals = [1u64, 2, 3, 7];
    let mut out = Vec::new();
    for &p in &vals {
        for &q in &vals {
            for &r in &vals {
                for &s in &vals {
                    out.push(bound_main(p, q, r, s));
                    out.push(bound_real(p, q, r, s));
                    out.push(bound_kst(p, q, r, s));
                    out.push(bound_general_st(p + 1, r, s));
                }
            }
        }
    }
    out
}

fn bound_evaluators() -> Outcome {
    let r = bound_main(1, 1, 64, 64);
    ensure!(r.terms[0].value == 256 && r.terms[0].exact, "first term {}", r.terms[0].value);
    let vals = [1u64, 2, 3, 7];
    type Eval = fn([u64; 4]) -> BoundReport;
    // The structural parameter s is left out for the last two: neither
    // t^(1/s) |X| |Y|^(1-1/s) nor |P|^(s/(2s-1)) |C|^((2s-2)/(2s-1)) is monotone in s.
    let evals: [(&str, Eval, &[usize]); 4] = [
        ("main", |v| bound_main(v[0], v[1], v[2], v[3]), &[0, 1, 2, 3]),
        ("real", |v| bound_real(v[0], v[1], v[2], v[3]), &[0, 1, 2, 3]),
        ("kst", |v| bound_kst(v[0], v[1], v[2], v[3]), &[1, 2, 3]),
        ("general", |v| bound_general_st(v[0] + 1, v[2], v[3]), &[2, 3]),
    ];
    let mut comparisons = 0;
    for (name, eval, args) in evals {
        for i0 in 0..4 {
            for i1 in 0..4 {
                for i2 in 0..4 {
                    for i3 in 0..4 {
                        let idx = [i0, i1, i2, i3];
                        let at = idx.map(|k| vals[k]);
                        let base = eval(at);
                        for &arg in args {
                            if idx[arg] == 3 {
                                continue;
                            }
                            let mut up = at;
                            up[arg] = vals[idx[arg] + 1];
                            let next = eval(up);
                            for (t0, t1) in base.terms.iter().zip(&next.terms) {
                                ensure!(t0.value <= t1.value, "{name} term {} decreases at {at:?} -> {up:?}", t0.name);
                            }
                            ensure!(base.total <= next.total, "{name} total decreases at {at:?} -> {up:?}");
                            comparisons += 1;
                        }
                    }
                }
            }
        }
    }
    let one = serde_json::to_string(&bound_reports()).unwrap();
    let two = serde_json::to_string(&bound_reports()).unwrap();
    ensure!(one == two, "reports differ between runs");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("r{run}.json"));
        let trend = dir.path().join(format!("t{run}.csv"));
        let cfg = ExperimentConfig {
            pipeline: Pipeline::Inversion { k: 2, set: SetSource::Generated(GeneratorKind::Random) },
            n_range: vec![4, 5],
            seed: 11,
            cap: DEFAULT_KST_CAP,
            out: Some(out.clone()),
            csv_out: None,
            trend: Some(trend.clone()),
        };
        run_experiment(&cfg).map_err(|e| e.to_string())?;
        files.push((std::fs::read(out).unwrap(), std::fs::read(trend).unwrap()));
    }
    ensure!(files[0] == files[1], "experiment outputs differ between runs");
    Ok(format!("{comparisons} monotonicity steps, byte-identical reports"))
}

fn trend_report() -> Outcome {
    let mut rows = Vec::new();
    for n in 6..=14u64 {
        let maps = rich_inversions(&ints(1..=n as i64), 2).map_err(|e| e.to_string())?;
        let report = power_ratio_report(n, 2, maps.len());
        rows.push(TrendRow { app: "inversion".into(), n, report });
    }
    let table = trend_table(&rows);
    let ratios: Vec<f64> = table
        .csv
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .collect();
    ensure!(ratios.len() == 9, "expected 9 ratio rows, got {}", ratios.len());
    ensure!(ratios.iter().all(|r| r.is_finite()), "non-finite ratio");
    ensure!(trend_record(&rows[0]).len() == 6, "short record");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("trend.csv");
    std::fs::write(&path, &table.csv).map_err(|e| e.to_string())?;
    Ok(format!(
        "|R_2| k^3 / n^4 from {} to {}",
        table.min_ratio.to_decimal(6),
        table.max_ratio.to_decimal(6)
    ))
}

/// `|A|^4 / k^3` with the observed count attached.
fn power_ratio_report(n: u64, k: u64, observed: usize) -> BoundReport {
    let value = Rational::from((n as i64).pow(4)).checked_div(&Rational::from((k as i64).pow(3))).unwrap();
    BoundReport::new("inversion", vec![cartinc::bounds::Term::new("|A|^4/k^3", value, true)]).with_observed(observed as u64)
}

type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 incidence graph matches the naive oracle", oracle_equivalence, 30),
        ("2 Bezout suite", bezout_suite, 60),
        ("3 partition identity", partition_identity, 60),
        ("4 inversion app", inversion_app, 180),
        ("5 sumset app", sumset_app, 120),
        ("6 distance app", distance_app, 60),
        ("7 realification", realification, 30),
        ("8 bound evaluators", bound_evaluators, 10),
        ("9 trend report", trend_report, 600),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > Duration::from_secs(limit) => Err(format!("took {elapsed:.1?}, limit {limit} s")),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS  {name} ({elapsed:.2?}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name} ({elapsed:.2?}): {detail}");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
