use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twohop-aoi"))
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn offline_examples_match_goldens() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["reproduce", "offline_examples", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = dir.path().join("offline_examples");
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for name in ["example_1", "example_2_T16", "example_2_T18"] {
        let got = fs::read_to_string(out.join(format!("{name}.json"))).unwrap();
        let want = fs::read_to_string(golden.join(format!("{name}.json"))).unwrap();
        assert_eq!(got, want, "{name} drifted from its golden file");
        assert!(out.join(format!("{name}_age.csv")).exists());
        assert!(out.join(format!("{name}_age.svg")).exists());
    }
    assert!(out.join("manifest.json").exists());

    let doc = |name: &str| -> Value {
        serde_json::from_str(&fs::read_to_string(golden.join(format!("{name}.json"))).unwrap()).unwrap()
    };
    let one = doc("example_1");
    assert_eq!(floats(&one["x_star"]), vec![6.5, 6.5, 6.0, 6.0, 6.0, 4.0]);
    assert_eq!(floats(&one["greedy"]["schedule"]["source_tx"]), vec![2.0, 6.0, 9.0, 12.0, 15.0]);
    assert_eq!(floats(&doc("example_2_T16")["x_star"]), vec![5.0, 6.0, 6.0, 6.0, 6.0, 3.0]);
    let three = doc("example_2_T18");
    assert_eq!(floats(&three["x_e"]), vec![5.8; 5].into_iter().chain([5.0]).collect::<Vec<_>>());
    assert_eq!(floats(&three["x_star"]), vec![5.0, 6.0, 6.0, 6.0, 6.0, 5.0]);
}

#[test]
fn solve_reports_branch_and_check() {
    let o = run(&["solve", &data("example_2_T16.json"), "--check"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["branch"], "SmallHorizon");
    assert_eq!(v["check"]["agrees"], true);
    assert_eq!(floats(&v["schedule"]["deliveries"]), vec![4.0, 7.0, 10.0, 13.0, 16.0]);
}

#[test]
fn solve_writes_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("age.csv");
    let o = run(&["solve", &data("example_1.json"), "--age-csv", csv.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("time,age\n0,0\n"));
    let manifest: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config_hash"].as_str().unwrap().len(), 64);
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 1);

    // Same input, same hash.
    let again = tempfile::tempdir().unwrap();
    let o = run(&["solve", &data("example_1.json"), "--out-dir", again.path().to_str().unwrap()]);
    assert!(o.status.success());
    let m2: Value = serde_json::from_str(&fs::read_to_string(again.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config_hash"], m2["config_hash"]);
    assert!(again.path().join("result.json").exists() && again.path().join("age.csv").exists());
}

#[test]
fn bad_inputs_exit_with_two() {
    let o = run(&["solve", &data("empty.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("invalid instance"), "{}", stderr(&o));

    let o = run(&["solve", &data("infeasible.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("infeasible"), "{}", stderr(&o));

    let o = run(&["solve", &data("malformed.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let o = run(&["solve", &data("does_not_exist.json")]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["simulate", "--horizon", "0.5", "--reps", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degenerate horizon"));

    let o = run(&["simulate", "--policy", "clairvoyant"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn trace_mirrors_the_algorithm() {
    let o = run(&["trace", &data("two_runs.json")]);
    let text = stdout(&o);
    assert!(text.contains("run 1: i1=2, value 9"), "{text}");
    assert!(text.contains("run 2: i2=4"), "{text}");

    let text = stdout(&run(&["trace", &data("example_2_T16.json")]));
    assert!(text.contains("closed-form branch, no balancing runs"), "{text}");
    assert!(!text.contains("run 1"));

    let text = stdout(&run(&["trace", &data("example_1.json")]));
    assert!(text.contains("n0=3"), "{text}");
}

#[test]
fn simulate_sweep_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let out = |name: &str| dir.path().join(name);
    for name in ["a.csv", "b.csv"] {
        let o = run(&[
            "simulate", "--sweep", "0.5:1.5:0.5", "--horizon", "200", "--reps", "3", "--seed", "7", "--out",
            out(name).to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let a = fs::read_to_string(out("a.csv")).unwrap();
    assert_eq!(a, fs::read_to_string(out("b.csv")).unwrap());
    assert!(a.starts_with("d_plus_dbar,policy,mean_aoi,std_aoi,mean_rate,lower_bound,reps,horizon,seed\n"));
    assert_eq!(a.lines().count(), 1 + 3 * 2);
    assert!(out("a.svg").exists());
    assert!(dir.path().join("manifest.json").exists());

    let o = run(&["simulate", "--d", "0.5", "--dbar", "0.5", "--horizon", "100", "--reps", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lower_bound"], 1.5);
    assert_eq!(v["rate_bound"], 1.0);
}

#[test]
fn online_sweep_lower_bound_column() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["reproduce", "online_sweep", "--out-dir", dir.path().to_str().unwrap(), "--reps", "2", "--horizon", "100"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let mut reader = csv::Reader::from_path(dir.path().join("online_sweep/online_sweep.csv")).unwrap();
    let mut last = f64::NEG_INFINITY;
    let mut rows = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        let s: f64 = rec[0].parse().unwrap();
        let lb: f64 = rec[5].parse().unwrap();
        assert!((lb - f64::max(0.5 + s, 1.5 * s)).abs() < 1e-12);
        assert!(lb >= last);
        last = lb;
        rows += 1;
    }
    assert_eq!(rows, 40);
    assert!(dir.path().join("online_sweep/online_sweep.svg").exists());
}

#[test]
fn aoi_vs_horizon_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["reproduce", "aoi_vs_T", "--out-dir", dir.path().to_str().unwrap(), "--reps", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("aoi_vs_T/aoi_vs_T.csv")).unwrap();
    assert!(text.starts_with("horizon,mean_aoi,std_aoi,lower_bound,reps,seed\n"));
    assert_eq!(text.lines().count(), 11);
    assert!(dir.path().join("aoi_vs_T/aoi_vs_T.svg").exists());
}
