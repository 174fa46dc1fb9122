use std::path::Path;
use std::process::{Command, Output};

use quasijordan::export::{obj_vertex_count, parse_points_csv, parse_points_json};
use quasijordan::scheme::LatticeKind;

fn qc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qc"))
        .args(args)
        .env_remove("QJ_THREADS")
        .output()
        .expect("qc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn csv_and_json_agree() {
    let csv = qc(&["generate", "--scheme", "penrose", "--format", "csv"]);
    let json = qc(&["generate", "--scheme", "penrose", "--format", "json"]);
    assert_eq!(code(&csv), 0);
    assert_eq!(code(&json), 0);
    let a = parse_points_csv(LatticeKind::Penrose, &stdout(&csv)).unwrap();
    let (file, b) = parse_points_json(&stdout(&json)).unwrap();
    assert_eq!(a, b);
    assert_eq!(file.count, a.len());
    assert_eq!(a.len(), 26);
}

#[test]
fn obj_has_one_vertex_per_point() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("z6.obj");
    let o = qc(&["generate", "--scheme", "z6", "--radius", "3/2", "--format", "obj", "-o", obj.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let csv = qc(&["generate", "--scheme", "z6", "--radius", "3/2"]);
    let n = parse_points_csv(LatticeKind::Z6, &stdout(&csv)).unwrap().len();
    assert_eq!(obj_vertex_count(&std::fs::read_to_string(obj).unwrap()), n);
}

#[test]
fn svg_rejects_three_dimensions() {
    let o = qc(&["generate", "--scheme", "z6", "--radius", "1", "--format", "svg"]);
    assert_ne!(code(&o), 0);
    let o = qc(&["generate", "--scheme", "penrose", "--format", "svg"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("<svg"));
}

#[test]
fn window_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&qc(&["generate", "--window", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&qc(&["generate", "--window", "missing-window.json"])), 2);
    assert_eq!(code(&qc(&["generate", "--scheme", "penrose", "--window", "0,1"])), 2);
    assert_eq!(code(&qc(&["generate", "--window", "1,1"])), 3);
    assert_eq!(code(&qc(&["generate", "--window", "1/2,-1/2"])), 3);
}

#[test]
fn table_generator_outside_model_set() {
    let o = qc(&["table", "--rows", "100,0", "--cols", "0,0"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not in the model set"));
}

#[test]
fn table_markdown_uses_labels() {
    let o = qc(&["table", "--rows=-1..1", "--cols=-1..1"]);
    assert_eq!(code(&o), 0);
    let md = stdout(&o);
    assert!(md.starts_with("| L_n ∘ L_m |"));
    assert!(md.contains("| L_{0} | 1/2(L_{-3} + L_{2}) | L_{0} | 1/2(L_{-2} + L_{3}) |"));
}

#[test]
fn table_json_on_points() {
    let o = qc(&["table", "--scheme", "penrose", "--rows", "0,0,0,0;1,1,0,0", "--cols", "0+0*tau,0+0*tau", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["format"], "quasijordan.table/1");
    assert_eq!(v["cells"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_coxeter_passes() {
    let o = qc(&["verify", "--suite", "coxeter", "--group", "h3"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suites"][0]["status"], "pass");
    assert_eq!(v["suites"][0]["details"][0]["group_order"], 120);
}

#[test]
fn unit_interval_is_acceptable() {
    let o = qc(&["verify", "--suite", "acceptability", "--scheme", "fibonacci", "--window", "0,1"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suites"][0]["details"]["window"]["violations"], 0);
}

#[test]
fn witt_check_flags_windows_off_the_orthant() {
    let o = qc(&["witt-check", "--scheme", "fibonacci", "--window=-1/2,1", "--triples", "50"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["acceptability"]["details"]["nonnegative_orthant"], false);
    assert_eq!(code(&o), 0);
    let o = qc(&["witt-check", "--scheme", "fibonacci", "--window", "0,3/2", "--triples", "50"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn symmetry_exit_codes() {
    assert_eq!(code(&qc(&["symmetry", "--scheme", "penrose"])), 0);
    assert_eq!(code(&qc(&["symmetry", "--scheme", "fibonacci", "--map", "negation"])), 6);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("qc.json");
    std::fs::write(&cfg, r#"{ "scheme": "penrose", "radius": "2", "format": "json", "threads": 1 }"#).unwrap();
    let o = qc(&["--config", cfg.to_str().unwrap(), "generate"]);
    assert_eq!(code(&o), 0);
    let (file, _) = parse_points_json(&stdout(&o)).unwrap();
    assert_eq!(file.scheme, "penrose");
    std::fs::write(&cfg, r#"{ "colour": "red" }"#).unwrap();
    assert_ne!(code(&qc(&["--config", cfg.to_str().unwrap(), "generate"])), 0);
}

#[test]
fn output_is_identical_across_runs_and_threads() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_qc"))
            .args(["verify", "--scheme", "penrose", "--suite", "quasiadd", "--suite", "closure", "--cases", "200", "--seed", "9"])
            .env("QJ_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let a = run("1");
    assert_eq!(a, run("1"));
    assert_eq!(a, run("3"));
}

#[test]
fn export_reference_data() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n);
    let file = |n: &str| p(n).to_str().unwrap().to_string();
    assert_eq!(code(&qc(&["export", "group", "-o", &file("g.json")])), 0);
    let g: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p("g.json")).unwrap()).unwrap();
    assert_eq!(g["order"], 120);
    assert_eq!(code(&qc(&["export", "roots", "--group", "h3", "-o", &file("r.csv")])), 0);
    assert_eq!(std::fs::read_to_string(p("r.csv")).unwrap().lines().count(), 31);
    assert_eq!(code(&qc(&["export", "hrep", "--scheme", "penrose", "-o", &file("w.json")])), 0);
    assert!(Path::new(&p("w.json")).exists());
}
