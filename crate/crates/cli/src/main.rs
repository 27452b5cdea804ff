use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cartinc::bounds::{bound_general_st, bound_kst, bound_main, bound_real, BoundReport};
use cartinc::experiment::{parse_n_range, run_experiment, ExperimentConfig, Pipeline, RChoice, SetSource};
use cartinc::incidence::DEFAULT_KST_CAP;
use cartinc::io::{generate_instance, random_curves, write_atomic, GeneratorKind};
use cartinc::poly::{bezout_check, resultant_y, PolyJson};
use cartinc::{BivariatePoly, Error, GaussianRational, Rational};

#[derive(Parser)]
#[command(name = "cartinc", version, about = "Exact incidence counting on Cartesian products")]
struct Cli {
    /// Input instance file
    #[arg(long = "in", global = true, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Write the JSON report here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Work cap for the K_(s,t) search
    #[arg(long, global = true, default_value_t = DEFAULT_KST_CAP)]
    cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Incidence(IncidenceCmd),
    /// Common components and intersection bound for two curves
    Bezout {
        /// Polynomial JSON, inline or a file path
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    #[command(subcommand)]
    Partition(PartitionCmd),
    #[command(subcommand)]
    Bounds(BoundsCmd),
    #[command(subcommand)]
    App(AppCmd),
    /// Generate an instance
    Gen {
        #[arg(long, value_enum, default_value_t = Kind::Arithmetic)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Number of random curves through points of the instance
        #[arg(long, default_value_t = 0)]
        curves: usize,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
}

#[derive(Subcommand)]
enum IncidenceCmd {
    /// Build the incidence graph and count incidences
    Count {
        /// Edge list CSV destination
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Search for s points sharing t curves; exits 2 when found
    Kst {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Subcommand)]
enum PartitionCmd {
    /// Grid partition and I1/I2 decomposition of a real instance
    Run {
        /// Integer or "auto"
        #[arg(long, default_value = "auto")]
        r: String,
        /// Per-cell count CSV destination
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Evaluate a bound formula
    Eval {
        #[arg(long, value_enum)]
        formula: Formula,
        /// Comma separated key=value pairs, e.g. d=2,M=1,nP=100,nC=10,observed=37
        #[arg(long)]
        params: String,
    },
}

#[derive(Args)]
struct Sweep {
    /// A size, a list "4,6,8" or an inclusive range "4..8"
    #[arg(long)]
    n: String,
    /// Trend CSV to append rows to
    #[arg(long, value_name = "PATH")]
    trend: Option<PathBuf>,
}

#[derive(Subcommand)]
enum AppCmd {
    /// Inversions z -> a/(z+b) that are k-rich on A
    Inversion {
        #[command(flatten)]
        sweep: Sweep,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = SetKind::Arithmetic)]
        set: SetKind,
    },
    /// Sizes of A+A, 1/A+1/A and A+1/A with the hyperbola incidence check
    Sumset {
        #[command(flatten)]
        sweep: Sweep,
        #[arg(long, value_enum, default_value_t = SetKind::Arithmetic)]
        set: SetKind,
    },
    /// Distinct distances between {0..n-1} on y = 0 and on y = m x
    Distance {
        #[command(flatten)]
        sweep: Sweep,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        /// Accept a complex slope
        #[arg(long)]
        complex: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Arithmetic,
    Geometric,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum SetKind {
    Arithmetic,
    Geometric,
    Random,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum Formula {
    Main,
    Real,
    Kst,
    General,
}

impl From<Kind> for GeneratorKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Arithmetic => GeneratorKind::Arithmetic,
            Kind::Geometric => GeneratorKind::Geometric,
            Kind::Random => GeneratorKind::Random,
        }
    }
}

fn config_error(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn require_input(cli: &Cli) -> Result<PathBuf, Error> {
    cli.input.clone().ok_or_else(|| config_error("--in PATH is required"))
}

fn set_source(kind: SetKind, cli: &Cli) -> Result<SetSource, Error> {
    Ok(match kind {
        SetKind::Arithmetic => SetSource::Generated(GeneratorKind::Arithmetic),
        SetKind::Geometric => SetSource::Generated(GeneratorKind::Geometric),
        SetKind::Random => SetSource::Generated(GeneratorKind::Random),
        SetKind::File => SetSource::File(require_input(cli)?),
    })
}

fn read_poly(arg: &str) -> Result<BivariatePoly, Error> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| config_error(format!("{arg}: {e}")))?
    };
    let json: PolyJson = serde_json::from_str(&text).map_err(|e| config_error(format!("polynomial JSON: {e}")))?;
    Ok(BivariatePoly::from_json(&json)?)
}

fn parse_params(text: &str) -> Result<BTreeMap<String, u64>, Error> {
    let mut out = BTreeMap::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| config_error(format!("expected key=value, got {part:?}")))?;
        let v: u64 = v.trim().parse().map_err(|_| config_error(format!("{k}: not a nonnegative integer")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn eval_bound(formula: Formula, params: &BTreeMap<String, u64>) -> Result<BoundReport, Error> {
    let get = |key: &str, min: u64| -> Result<u64, Error> {
        let v = *params.get(key).ok_or_else(|| config_error(format!("missing parameter {key}")))?;
        if v < min {
            return Err(config_error(format!("{key} must be at least {min}")));
        }
        Ok(v)
    };
    let report = match formula {
        Formula::Main => bound_main(get("d", 1)?, get("M", 1)?, get("nP", 1)?, get("nC", 1)?),
        Formula::Real => bound_real(get("d", 1)?, get("M", 1)?, get("nP", 1)?, get("nC", 1)?),
        Formula::Kst => bound_kst(get("s", 1)?, get("t", 1)?, get("nX", 0)?, get("nY", 0)?),
        Formula::General => bound_general_st(get("s", 2)?, get("nP", 0)?, get("nC", 0)?),
    };
    Ok(match params.get("observed") {
        Some(&o) => report.with_observed(o),
        None => report,
    })
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.out {
        Some(path) => Ok(write_atomic(path, text.as_bytes())?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn experiment(cli: &Cli, pipeline: Pipeline, n: Option<&str>, csv: Option<PathBuf>, trend: Option<PathBuf>) -> Result<i32, Error> {
    let cfg = ExperimentConfig {
        pipeline,
        n_range: n.map(parse_n_range).transpose()?.unwrap_or_default(),
        seed: cli.seed,
        cap: cli.cap,
        out: cli.out.clone(),
        csv_out: csv,
        trend,
    };
    let outcome = run_experiment(&cfg)?;
    if cli.out.is_none() {
        print!("{}", outcome.report);
    }
    if !outcome.passed {
        eprintln!("invariant check failed");
    }
    Ok(outcome.exit_code())
}

fn run(cli: &Cli) -> Result<i32, Error> {
    match &cli.command {
        Command::Incidence(IncidenceCmd::Count { csv }) => {
            experiment(cli, Pipeline::Count { instance: require_input(cli)? }, None, csv.clone(), None)
        }
        Command::Incidence(IncidenceCmd::Kst { s, t }) => {
            let pipeline = Pipeline::Kst { instance: require_input(cli)?, s: *s, t: *t };
            experiment(cli, pipeline, None, None, None)
        }
        Command::Partition(PartitionCmd::Run { r, csv }) => {
            let r = match r.as_str() {
                "auto" => RChoice::Auto,
                other => RChoice::Fixed(other.parse().map_err(|_| config_error(format!("--r: {other:?} is not an integer or auto")))?),
            };
            experiment(cli, Pipeline::Partition { instance: require_input(cli)?, r }, None, csv.clone(), None)
        }
        Command::App(AppCmd::Inversion { sweep, k, set }) => {
            let pipeline = Pipeline::Inversion { k: *k, set: set_source(*set, cli)? };
            experiment(cli, pipeline, Some(&sweep.n), None, sweep.trend.clone())
        }
        Command::App(AppCmd::Sumset { sweep, set }) => {
            let pipeline = Pipeline::Sumset { set: set_source(*set, cli)? };
            experiment(cli, pipeline, Some(&sweep.n), None, sweep.trend.clone())
        }
        Command::App(AppCmd::Distance { sweep, m, complex }) => {
            let m: GaussianRational = if *complex {
                m.parse().map_err(cartinc::arith::ArithError::from)?
            } else {
                GaussianRational::real(m.parse::<Rational>().map_err(cartinc::arith::ArithError::from)?)
            };
            experiment(cli, Pipeline::Distance { m }, Some(&sweep.n), None, sweep.trend.clone())
        }
        Command::Bezout { f, g } => {
            let (f, g) = (read_poly(f)?, read_poly(g)?);
            let summary = bezout_check(&f, &g);
            let resultant = resultant_y(&f, &g)
                .ok()
                .map(|r| r.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>());
            let report = json!({
                "common_component": summary.common_component,
                "distinct_x_bound": summary.distinct_x_bound,
                "degrees": [f.degree(), g.degree()],
                "resultant_y": resultant,
            });
            emit(cli, &pretty(&report))?;
            Ok(0)
        }
        Command::Bounds(BoundsCmd::Eval { formula, params }) => {
            let report = eval_bound(*formula, &parse_params(params)?)?;
            emit(cli, &pretty(&serde_json::to_value(report).expect("serializable")))?;
            Ok(0)
        }
        Command::Gen { kind, n, curves, degree } => {
            if *n == 0 {
                return Err(config_error("--n must be at least 1"));
            }
            let mut inst = generate_instance((*kind).into(), *n, cli.seed);
            if *curves > 0 {
                inst.curves = random_curves(&inst.points, *curves, (*degree).max(1), cli.seed);
            }
            emit(cli, &inst.to_json_string())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(1)
        }
    }
}
