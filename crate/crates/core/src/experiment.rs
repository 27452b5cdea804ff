//! End-to-end pipelines: load or generate inputs, run, check, and write reports.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::apps::{all_passed, inversion_report, line_distance_set, sumset_expander, Check};
use crate::arith::GaussianRational;
use crate::bounds::{bound_main, bound_real, trend_record, trend_table, BoundReport, TrendRow, TREND_HEADER};
use crate::incidence::{build_incidence_graph, max_pair_multiplicity, verify_no_kst};
use crate::io::{append_csv, generate_instance, parse_instance, write_atomic, GeneratorKind, Instance};
use crate::partition::{cells_to_csv, decompose_incidences, gridline_crossings, real_factors, select_r, GridPartition};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSource {
    Generated(GeneratorKind),
    /// The `A` factor of an instance file.
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RChoice {
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pipeline {
    Count { instance: PathBuf },
    Kst { instance: PathBuf, s: usize, t: usize },
    Partition { instance: PathBuf, r: RChoice },
    Inversion { k: usize, set: SetSource },
    Sumset { set: SetSource },
    /// `A = B = {0, ..., n-1}`.
    Distance { m: GaussianRational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub pipeline: Pipeline,
    /// Sizes for the application sweeps; ignored by instance pipelines.
    pub n_range: Vec<usize>,
    pub seed: u64,
    pub cap: u64,
    /// JSON report destination.
    pub out: Option<PathBuf>,
    /// Edge list or cell table destination.
    pub csv_out: Option<PathBuf>,
    /// Trend CSV to append to.
    pub trend: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
    /// Pretty JSON, newline terminated.
    pub report: String,
}

impl Outcome {
    /// 0 when every checked invariant holds, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            2
        }
    }
}

/// `"8"`, `"4,6,8"` or the inclusive range `"4..8"`.
pub fn parse_n_range(text: &str) -> Result<Vec<usize>, Error> {
    let bad = || Error::Config(format!("invalid n range {text:?}"));
    let text = text.trim();
    let values: Vec<usize> = if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        (lo..=hi).collect()
    } else if text.is_empty() {
        Vec::new()
    } else {
        text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if values.is_empty() {
        return Err(Error::Config("empty range".into()));
    }
    Ok(values)
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn checks_json(checks: &[Check]) -> serde_json::Value {
    serde_json::to_value(checks).expect("serializable")
}

fn load(path: &Path) -> Result<Instance, Error> {
    Ok(parse_instance(path)?)
}

fn incidence_bound(inst: &Instance, m: usize, observed: usize) -> BoundReport {
    let d = inst.curves.max_degree().max(1) as u64;
    let (np, nc) = (inst.points.len() as u64, inst.curves.len() as u64);
    let eval = if inst.points.is_real() && inst.curves.is_real() { bound_real } else { bound_main };
    eval(d, m.max(1) as u64, np.max(1), nc.max(1)).with_observed(observed as u64)
}

fn run_count(inst: &Instance) -> (serde_json::Value, String) {
    let graph = build_incidence_graph(&inst.points, &inst.curves);
    let m = max_pair_multiplicity(&graph);
    let richness: Vec<_> = (0..graph.num_curves())
        .map(|c| json!({"label": graph.label(c), "incidences": graph.richness(c)}))
        .collect();
    let report = json!({
        "pipeline": "count",
        "instance": inst.name,
        "size_a": inst.points.len_a(),
        "size_b": inst.points.len_b(),
        "curves": inst.curves.len(),
        "max_degree": inst.curves.max_degree(),
        "incidences": graph.num_edges(),
        "max_pair_multiplicity": m,
        "richness": richness,
        "bound": incidence_bound(inst, m, graph.num_edges()),
    });
    (report, graph.to_csv(&inst.points))
}

fn run_kst(inst: &Instance, s: usize, t: usize, cap: u64) -> Result<(serde_json::Value, bool), Error> {
    let graph = build_incidence_graph(&inst.points, &inst.curves);
    let outcome = verify_no_kst(&graph, s, t, cap)?;
    let passed = outcome.is_pass();
    Ok((json!({"pipeline": "kst", "instance": inst.name, "s": s, "t": t, "outcome": outcome}), passed))
}

fn run_partition(inst: &Instance, r: RChoice) -> Result<(serde_json::Value, String, bool), Error> {
    let (a, b) = real_factors(&inst.points)?;
    let graph = build_incidence_graph(&inst.points, &inst.curves);
    let m = max_pair_multiplicity(&graph);
    let d = inst.curves.max_degree().max(1) as u64;
    let selection = select_r(d, m as u64, inst.points.len() as u64, inst.curves.len() as u64, Some(a.len() as u64));
    let r = match r {
        RChoice::Auto => selection.r,
        RChoice::Fixed(r) => r,
    };
    let grid = GridPartition::build_avoiding(&inst.points, r, &inst.curves)?;
    let crossings = gridline_crossings(&inst.curves, &grid)?;
    let (mut decomposition, cells) = decompose_incidences(&graph, &inst.points, &grid)?;
    decomposition.crossings_per_line_max = Some(crossings.iter().map(|c| c.count).max().unwrap_or(0));
    let checks = vec![
        Check::new("I1 + I2 = |I|", decomposition.i1 + decomposition.i2 == decomposition.total),
        Check::new("interval occupancy", grid.check(&a, &b).is_ok()),
        Check::new(
            "gridline crossings <= d",
            crossings.iter().all(|c| c.count <= inst.curves.max_degree() as usize),
        ),
    ];
    let passed = all_passed(&checks);
    let report = json!({
        "pipeline": "partition",
        "instance": inst.name,
        "r": r,
        "r_selection": selection,
        "grid": grid,
        "decomposition": decomposition,
        "checks": checks_json(&checks),
    });
    Ok((report, cells_to_csv(&cells), passed))
}

fn factor_set(source: &SetSource, n: usize, seed: u64) -> Result<Vec<GaussianRational>, Error> {
    match source {
        SetSource::Generated(kind) => Ok(generate_instance(*kind, n, seed).points.a().to_vec()),
        SetSource::File(path) => Ok(load(path)?.points.a().to_vec()),
    }
}

fn run_apps(cfg: &ExperimentConfig) -> Result<(serde_json::Value, Vec<TrendRow>, bool), Error> {
    let mut runs = Vec::new();
    let mut rows = Vec::new();
    let mut passed = true;
    let sizes: Vec<usize> = match &cfg.pipeline {
        Pipeline::Inversion { set: SetSource::File(_), .. } | Pipeline::Sumset { set: SetSource::File(_) } => vec![0],
        _ => cfg.n_range.clone(),
    };
    if sizes.is_empty() {
        return Err(Error::Config("empty range".into()));
    }
    let app = match &cfg.pipeline {
        Pipeline::Inversion { .. } => "inversion",
        Pipeline::Sumset { .. } => "sumset",
        Pipeline::Distance { .. } => "distance",
        _ => unreachable!("not an application pipeline"),
    };
    for n in sizes {
        let (value, bound, ok) = match &cfg.pipeline {
            Pipeline::Inversion { k, set } => {
                let r = inversion_report(&factor_set(set, n, cfg.seed)?, *k, cfg.cap)?;
                (serde_json::to_value(&r), r.bound.clone(), all_passed(&r.checks))
            }
            Pipeline::Sumset { set } => {
                let r = sumset_expander(&factor_set(set, n, cfg.seed)?, cfg.cap)?;
                (serde_json::to_value(&r), r.mixed_bound.clone(), all_passed(&r.checks))
            }
            Pipeline::Distance { m } => {
                let a: Vec<GaussianRational> = (0..n as i64).map(GaussianRational::from_int).collect();
                let r = line_distance_set(&a, &a, m, cfg.cap)?;
                (serde_json::to_value(&r), r.bound.clone(), all_passed(&r.checks))
            }
            _ => unreachable!(),
        };
        passed &= ok;
        let value = value.expect("serializable");
        let n = value["n"].as_u64().expect("reports carry n");
        runs.push(value);
        rows.push(TrendRow { app: app.into(), n, report: bound });
    }
    let table = trend_table(&rows);
    let report = json!({
        "pipeline": app,
        "seed": cfg.seed,
        "runs": runs,
        "trend": {
            "max_ratio": table.max_ratio,
            "max_ratio_decimal": table.max_ratio.to_decimal(6),
            "min_ratio": table.min_ratio,
            "min_ratio_decimal": table.min_ratio.to_decimal(6),
        },
    });
    Ok((report, rows, passed))
}

/// Runs one pipeline and writes its outputs. Input problems surface as
/// `Err`; failed invariants give `passed = false`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Outcome, Error> {
    let mut csv_text = None;
    let mut trend_rows = Vec::new();
    let (report, passed) = match &cfg.pipeline {
        Pipeline::Count { instance } => {
            let (report, csv) = run_count(&load(instance)?);
            csv_text = Some(csv);
            (report, true)
        }
        Pipeline::Kst { instance, s, t } => run_kst(&load(instance)?, *s, *t, cfg.cap)?,
        Pipeline::Partition { instance, r } => {
            let (report, csv, passed) = run_partition(&load(instance)?, *r)?;
            csv_text = Some(csv);
            (report, passed)
        }
        _ => {
            let (report, rows, passed) = run_apps(cfg)?;
            trend_rows = rows;
            (report, passed)
        }
    };
    let report = to_pretty(&report);
    if let Some(path) = &cfg.out {
        write_atomic(path, report.as_bytes())?;
    }
    if let (Some(path), Some(csv)) = (&cfg.csv_out, csv_text) {
        write_atomic(path, csv.as_bytes())?;
    }
    if let Some(path) = &cfg.trend {
        let records: Vec<Vec<String>> = trend_rows.iter().map(|r| trend_record(r).to_vec()).collect();
        append_csv(path, &TREND_HEADER, &records)?;
    }
    Ok(Outcome { passed, report })
}
