use std::fs;
use std::path::Path;

use cartinc::experiment::{run_experiment, ExperimentConfig, Outcome, Pipeline, RChoice, SetSource};
use cartinc::incidence::DEFAULT_KST_CAP;
use cartinc::io::GeneratorKind;
use cartinc::{Error, GaussianRational};

fn config(pipeline: Pipeline, n_range: Vec<usize>, dir: &Path) -> ExperimentConfig {
    ExperimentConfig {
        pipeline,
        n_range,
        seed: 5,
        cap: DEFAULT_KST_CAP,
        out: Some(dir.join("report.json")),
        csv_out: Some(dir.join("table.csv")),
        trend: Some(dir.join("trend.csv")),
    }
}

fn run(cfg: &ExperimentConfig) -> Outcome {
    run_experiment(cfg).unwrap()
}

fn write_instance(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("instance.json");
    fs::write(&path, text).unwrap();
    path
}

const LINE: &str = r#"[{"i":0,"j":1,"c":"1"},{"i":1,"j":0,"c":"-1"}]"#;

#[test]
fn inversion_sweep_writes_three_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(
        Pipeline::Inversion { k: 2, set: SetSource::Generated(GeneratorKind::Arithmetic) },
        vec![4, 6, 8],
        dir.path(),
    );
    let outcome = run(&cfg);
    assert_eq!(outcome.exit_code(), 0);
    let trend = fs::read_to_string(dir.path().join("trend.csv")).unwrap();
    let lines: Vec<&str> = trend.lines().collect();
    assert_eq!(lines[0], "app,n,observed,bound_terms,bound_total,ratio");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("inversion,4,64,"));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["runs"].as_array().unwrap().len(), 3);
}

#[test]
fn empty_range_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(Pipeline::Sumset { set: SetSource::Generated(GeneratorKind::Arithmetic) }, vec![], dir.path());
    match run_experiment(&cfg) {
        Err(Error::Config(msg)) => assert_eq!(msg, "empty range"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn duplicated_curves_fail_the_kst_check() {
    let dir = tempfile::tempdir().unwrap();
    let instance = write_instance(
        dir.path(),
        &format!(
            r#"{{"A":["1","2","3"],"B":["1","2","3"],"curves":[{{"label":"a","terms":{LINE}}},{{"label":"b","terms":{LINE}}},{{"label":"c","terms":{LINE}}}]}}"#
        ),
    );
    let cfg = config(Pipeline::Kst { instance: instance.clone(), s: 2, t: 3 }, vec![], dir.path());
    let outcome = run(&cfg);
    assert_eq!(outcome.exit_code(), 2);
    assert!(outcome.report.contains("\"result\": \"witness\""));
    let cfg = config(Pipeline::Kst { instance, s: 2, t: 4 }, vec![], dir.path());
    assert_eq!(run(&cfg).exit_code(), 0);
}

#[test]
fn count_writes_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let instance = write_instance(
        dir.path(),
        &format!(r#"{{"name":"diag","A":["0","1/2"],"B":["1/2","0"],"curves":[{{"label":"C_1","terms":{LINE}}}]}}"#),
    );
    let outcome = run(&config(Pipeline::Count { instance }, vec![], dir.path()));
    assert_eq!(outcome.exit_code(), 0);
    let csv = fs::read_to_string(dir.path().join("table.csv")).unwrap();
    assert_eq!(csv, "label,iA,iB,a,b\nC_1,0,0,0,0\nC_1,1,1,1/2,1/2\n");
    assert!(outcome.report.contains("\"incidences\": 2"));
}

#[test]
fn partition_diagonal_example() {
    let dir = tempfile::tempdir().unwrap();
    let instance = write_instance(
        dir.path(),
        &format!(r#"{{"A":["1","2","3","4"],"B":["1","2","3","4"],"curves":[{{"label":"d","terms":{LINE}}}]}}"#),
    );
    let outcome = run(&config(Pipeline::Partition { instance, r: RChoice::Fixed(2) }, vec![], dir.path()));
    assert_eq!(outcome.exit_code(), 0);
    let report: serde_json::Value = serde_json::from_str(&outcome.report).unwrap();
    assert_eq!(report["decomposition"]["i1"], 0);
    assert_eq!(report["decomposition"]["i2"], 4);
    assert_eq!(report["grid"]["cuts_x"][0], "5/2");
    let cells = fs::read_to_string(dir.path().join("table.csv")).unwrap();
    assert_eq!(cells, "cellX,cellY,curve_label,count\n0,0,d,2\n1,1,d,2\n");
}

#[test]
fn reruns_are_byte_identical() {
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config(Pipeline::Distance { m: GaussianRational::from_fracs((1, 2), (1, 1)) }, vec![3, 5], dir.path());
        run(&cfg);
        outputs.push((
            fs::read(dir.path().join("report.json")).unwrap(),
            fs::read(dir.path().join("trend.csv")).unwrap(),
        ));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn missing_instance_reports_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(Pipeline::Count { instance: dir.path().join("nope.json") }, vec![], dir.path());
    let err = run_experiment(&cfg).unwrap_err();
    assert_eq!(err.code(), "io::File");
    assert!(err.to_string().contains("nope.json"));
}
