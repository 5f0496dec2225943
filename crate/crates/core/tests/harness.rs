use std::fs;
use std::path::PathBuf;

use symplectic_lie::harness::{
    run_longrun, run_order_study, run_symplecticity_check, write_csv, ErrorMetric, ExperimentConfig, LongRun,
    OrderStudy, Problem, SymplecticityReport,
};
use symplectic_lie::Method;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("symlie-harness-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn read_csv(path: &PathBuf) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn short_study(method: Method, tableau: &str) -> ExperimentConfig {
    ExperimentConfig { h_min: 5e-3, h_max: 0.05, h_count: 6, ..ExperimentConfig::new(Problem::Dipole, method, tableau) }
}

#[test]
fn order_study_is_bit_reproducible() {
    let cfg = short_study(Method::Vrkmk, "gauss2");
    let a = run_order_study(&cfg).unwrap().csv_rows();
    let b = run_order_study(&cfg).unwrap().csv_rows();
    let bits = |rows: &[Vec<f64>]| rows.iter().flatten().map(|v| v.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&a), bits(&b));
}

#[test]
fn order_study_csv_round_trips() {
    let study = run_order_study(&short_study(Method::Vcg, "yoshida4")).unwrap();
    let path = scratch("order.csv");
    write_csv(&path, &OrderStudy::CSV_HEADER, &study.csv_rows()).unwrap();
    let (header, rows) = read_csv(&path);
    assert_eq!(header, ["h", "error", "iterations", "slope_local", "steps"]);
    assert_eq!(rows.len(), study.rows.len());
    for (row, r) in rows.iter().zip(&study.rows) {
        assert_eq!(row[0], r.h);
        assert_eq!(row[1], r.error.unwrap());
        assert_eq!(row[2], r.max_iterations as f64);
        assert_eq!(row[4], r.steps as f64);
        assert_eq!(row[0] * row[4], cfg_t_end());
    }
    assert!(rows[0][3].is_nan());
    assert!(rows[1..].iter().all(|r| r[3].is_finite()));
}

fn cfg_t_end() -> f64 {
    ExperimentConfig::default().t_end
}

#[test]
fn failed_rows_are_nan_in_csv() {
    let cfg = ExperimentConfig { fp_max_iter: 8, ..short_study(Method::Vrkmk, "gauss3") };
    let study = run_order_study(&cfg).unwrap();
    let failed: Vec<_> = study.rows.iter().filter(|r| r.failure.is_some()).collect();
    assert!(!failed.is_empty());
    let rows = study.csv_rows();
    for (row, r) in rows.iter().zip(&study.rows) {
        assert_eq!(row[1].is_nan(), r.failure.is_some());
    }
}

#[test]
fn longrun_is_reproducible_and_strided() {
    let cfg = ExperimentConfig { steps: 500, stride: Some(50), ..ExperimentConfig::new(Problem::Dipole, Method::Vcg, "gauss2") };
    let a = run_longrun(&cfg).unwrap();
    let b = run_longrun(&cfg).unwrap();
    assert_eq!(a.energy_error, b.energy_error);
    let path = scratch("longrun.csv");
    write_csv(&path, &LongRun::CSV_HEADER, &a.csv_rows()).unwrap();
    let (header, rows) = read_csv(&path);
    assert_eq!(header, ["t", "energy_error"]);
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0], [0.0, 0.0]);
    assert_eq!(rows[10][0], a.energy_error[500].0);
    assert!((rows[10][0] - 5.0).abs() < 1e-12);
}

#[test]
fn longrun_keeps_final_row_when_stride_does_not_divide() {
    let cfg = ExperimentConfig { steps: 25, stride: Some(10), ..ExperimentConfig::new(Problem::Dipole, Method::Vrkmk, "midpoint") };
    let rows = run_longrun(&cfg).unwrap().csv_rows();
    let times: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(times.len(), 4);
    assert!((times[3] - 0.25).abs() < 1e-15);
}

#[test]
fn default_stride_bounds_rows() {
    let cfg = ExperimentConfig { steps: 30_000, ..ExperimentConfig::new(Problem::AbelianOscillator, Method::Sprk, "midpoint") };
    let run = run_longrun(&cfg).unwrap();
    assert!(run.csv_rows().len() <= 10_000);
    assert!(run.final_orthogonality_defect.is_none());
}

#[test]
fn header_only_csv_for_empty_rows() {
    let path = scratch("empty.csv");
    write_csv(&path, &SymplecticityReport::CSV_HEADER, &[]).unwrap();
    assert_eq!(fs::read_to_string(&path).unwrap(), "h,defect,pass\n");
}

#[test]
fn symplecticity_report_round_trips() {
    let cfg = ExperimentConfig { h: 0.01, ..ExperimentConfig::new(Problem::Dipole, Method::Vcg, "gauss2") };
    let report = run_symplecticity_check(&cfg).unwrap();
    let path = scratch("sym.csv");
    write_csv(&path, &SymplecticityReport::CSV_HEADER, &report.csv_rows()).unwrap();
    let (_, rows) = read_csv(&path);
    assert_eq!(rows, vec![vec![0.01, report.defect, 1.0]]);
}

#[test]
fn group_metric_study_on_nonregular_problem() {
    let cfg = ExperimentConfig {
        metric: ErrorMetric::Group,
        ..short_study(Method::Vrkmk, "gauss2")
    };
    let cfg = ExperimentConfig { problem: Problem::NonRegular, ..cfg };
    let study = run_order_study(&cfg).unwrap();
    assert!((study.slope.unwrap() - 4.0).abs() < 0.3);
}

#[test]
fn invalid_configurations_are_rejected() {
    let sprk_on_dipole = ExperimentConfig::new(Problem::Dipole, Method::Sprk, "gauss2");
    assert!(run_longrun(&sprk_on_dipole).is_err());
    let bad_cutoff = ExperimentConfig { cutoff: Some(7), ..ExperimentConfig::default() };
    assert!(run_order_study(&bad_cutoff).is_err());
    let zero_stride = ExperimentConfig { steps: 10, stride: Some(0), ..ExperimentConfig::default() };
    assert!(run_longrun(&zero_stride).is_err());
    assert!(ExperimentConfig::preset("unknown").is_err());
}
