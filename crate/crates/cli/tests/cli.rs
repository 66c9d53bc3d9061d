use std::path::PathBuf;
use std::process::{Command, Output};

use liecurrent::arith::Scalar;
use liecurrent::orders::FData;
use liecurrent::report::Report;
use liecurrent::{build_algebra, AlgebraType};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liecurrent"))
        .args(args)
        .env_remove("LIECURRENT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("liecurrent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_a3_passes() {
    let o = run(&["verify", "--case", "A3", "--algebra", "sl2", "--window", "-10:6", "--depth", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("[PASS] manin.isotropy"));
    assert!(s.contains("[PASS] cybe"));
    assert!(s.contains("[PASS] dual_basis.biorthonormality"));
    assert!(!s.contains("FAIL"));
}

#[test]
fn degenerate_a4_is_a_config_error() {
    let o = run(&["verify", "--case", "A4", "--m1", "1", "--m2", "1", "--algebra", "sl2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degenerate parameters"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn bad_arguments_exit_2() {
    for args in [
        &["verify", "--case", "A5"][..],
        &["verify", "--case", "A1", "--algebra", "e8"],
        &["verify", "--case", "A1", "--window", "2:6"],
        &["verify", "--case", "A1", "--depth", "0"],
        &["verify", "--case", "A4", "--m1", "1"],
        &["bd", "--algebra", "sl2", "--vertex", "5"],
        &["trace", "classify", "--poly", "2,1"],
        &["trace", "classify", "--poly", "1,0,0,1"],
        &["nonsense"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn json_report_round_trips() {
    let o = run(&["verify", "--case", "A1", "--algebra", "sl2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let rep = Report::from_json(&s).unwrap();
    assert_eq!(rep.version, "report_v1");
    assert!(!rep.checks.is_empty());
    assert!(rep.all_pass());
    assert_eq!(format!("{}\n", rep.to_json()), s);
}

#[test]
fn runs_are_deterministic_across_thread_counts() {
    let args = ["verify", "--case", "B2", "--algebra", "sl3", "--format", "json"];
    let base = stdout(&run(&args));
    for t in ["0", "1", "3"] {
        let o = Command::new(env!("CARGO_BIN_EXE_liecurrent"))
            .args(args)
            .env("LIECURRENT_THREADS", t)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(String::from_utf8(o.stdout).unwrap(), base, "threads {t}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_liecurrent"))
        .args(args)
        .env("LIECURRENT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file_matches_stdout() {
    let path = scratch("a2.json");
    let args = ["verify", "--case", "A2", "--format", "json"];
    let o = run(&[&args[..], &["--output", path.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&run(&args)));
}

#[test]
fn bd_sl2_vertex_1() {
    let o = run(&["bd", "--algebra", "sl2", "--vertex", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("2 triples for sl2 at vertex 1"));
}

#[test]
fn bd_json_lists_triples() {
    let o = run(&["bd", "--algebra", "sl3", "--vertex", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 5);
    assert_eq!(v["triples"].as_array().unwrap().len(), 5);
    assert_eq!(v["report"]["version"], "report_v1");
    let t = &v["triples"][0];
    for k in ["gamma1", "gamma2", "tau", "v_dim", "s_dim"] {
        assert!(t.get(k).is_some(), "{k}");
    }
}

#[test]
fn bd_g2_runs() {
    let o = run(&["bd", "--algebra", "g2", "--vertex", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("2 triples for g2 at vertex 2"));
}

#[test]
fn bd_with_fdata() {
    let g = build_algebra(AlgebraType::A1).unwrap();
    // B(a, b) = f*([a, b]) on L = g
    let form: Vec<Vec<Scalar>> = (0..3)
        .map(|a| {
            (0..3)
                .map(|b| {
                    g.bracket_basis(a, b)
                        .iter()
                        .filter(|(c, _)| *c == g.neg(0))
                        .map(|(_, s)| s.clone())
                        .sum()
                })
                .collect()
        })
        .collect();
    let good = FData::new((0..3).map(|b| g.unit(b)).collect(), form, 3).unwrap();
    let path = scratch("fdata.json");
    std::fs::write(&path, good.to_json()).unwrap();
    let o = run(&["bd", "--algebra", "sl2", "--vertex", "1", "--fdata", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS] fdata.cocycle"));

    let zero = FData::new((0..3).map(|b| g.unit(b)).collect(), vec![vec![Scalar::from_integer(0.into()); 3]; 3], 3)
        .unwrap();
    std::fs::write(&path, zero.to_json()).unwrap();
    let o = run(&["bd", "--algebra", "sl2", "--vertex", "1", "--fdata", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] fdata.nondegenerate_on_L_cap_p"));

    std::fs::write(&path, "{\"basis\": 3}").unwrap();
    let o = run(&["bd", "--algebra", "sl2", "--vertex", "1", "--fdata", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn trace_normalize_n0() {
    let o = run(&["trace", "normalize", "--n", "0", "--alpha", "1,0,0", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("eta_1 = -1/2"), "{s}");
    assert!(s.contains("[PASS] re-substitution"));
    assert!(s.contains("zero-extended"));
}

#[test]
fn trace_normalize_json() {
    let o = run(&["trace", "normalize", "--n", "1", "--alpha", "1/2,-1", "--order", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["eta"].as_array().unwrap().len(), 4);
    assert!(v["checked"].as_array().unwrap().iter().all(|c| c["trace"] == "0/1"));
}

#[test]
fn trace_normalize_n2_obstruction() {
    let o = run(&["trace", "normalize", "--n", "2", "--alpha", "1,0,0", "--order", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("alpha_0"));
    let o = run(&["trace", "normalize", "--n", "2", "--alpha", "0,1", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn trace_classify() {
    let o = run(&["trace", "classify", "--poly", "1,-3,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "A4, j=9/2\n");
    let o = run(&["trace", "classify", "--poly", "1,-2,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["class"], "A3");
}

#[test]
fn export_algebra_and_rmatrix() {
    let o = run(&["export", "algebra", "--algebra", "sl3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 8);
    assert_eq!(v["marks"], serde_json::json!([1, 1, 1]));

    let o = run(&["export", "rmatrix", "--case", "A4", "--m1", "1", "--m2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["denom_power"], 1);
    assert!(!v["numerator"].as_array().unwrap().is_empty());
}
