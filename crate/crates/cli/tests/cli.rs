use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uavcovert")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

const CONFIG: &str = r#"{
    "radio": {"p_max": {"dbm": 10}, "sigma2_b": {"dbm": -90}, "sigma2_w": {"dbm": -60}, "n": 200, "epsilon": 0.1},
    "geometry": {"mode": "planar", "l": 10000, "d_min": 1000, "d_max": 3000, "theta_min": {"deg": 22.5}},
    "sweep": {"variable": "epsilon", "values": [0.05, 0.1, 0.2]}
}"#;

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.json");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn solve_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), CONFIG);
    let out = run(&["solve", "--config", &config, "--format", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = &rows[0];
    assert_eq!(row["scenario"], "S1");
    assert_eq!(row["case"], "Case D");
    assert!(row["d01"].as_f64().unwrap() <= row["d01_cap"].as_f64().unwrap() * (1.0 + 1e-9));
}

#[test]
fn sweep_csv_columns_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), CONFIG);
    let out = run(&["sweep", "--config", &config]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "epsilon,d_w_m,theta_w_deg,power_dbm,snr_db,d01,scenario,case");
    assert_eq!(lines.count(), 3);
}

#[test]
fn invalid_value_exits_2_and_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &CONFIG.replace("\"epsilon\": 0.1", "\"epsilon\": 1.5"));
    let out = run(&["solve", "--config", &config]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("radio.epsilon"), "{}", stderr(&out));
}

#[test]
fn malformed_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "{\"radio\": {}}");
    assert_eq!(run(&["solve", "--config", &config]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--config", "/nonexistent/run.json"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--preset", "fig9"]).status.code(), Some(2));
}

#[test]
fn output_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = run(&["classify", "--preset", "location_vs_L", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("scenario,c1_m,c2_m\nS1,"), "{text}");
}

#[test]
fn verify_reports_planner_and_grid() {
    let out = run(&["solve", "--preset", "snr_vs_eps", "--verify", "--grid", "96x96", "--format", "csv"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert!(lines[0].starts_with("method,") && lines[0].ends_with(",deviation"));
    assert!(lines[1].starts_with("planner,") && lines[2].starts_with("grid,"));
}

#[test]
fn bad_grid_is_a_usage_error() {
    let out = run(&["oracle", "--preset", "snr_vs_eps", "--grid", "1x512"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn vertical_figure_follows_the_case_table() {
    let out = run(&["figure", "height_vs_eps"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let mut cases: Vec<String> =
        stdout(&out).lines().skip(1).map(|l| l.rsplit(',').next().unwrap().to_owned()).collect();
    cases.dedup();
    assert_eq!(cases, ["Case 3", "Case 2", "Case 4"]);
}

#[test]
fn validate_bound_is_seeded() {
    let args = ["validate-bound", "--lattice", "3", "--trials", "500", "--seed", "4"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 10);
}
