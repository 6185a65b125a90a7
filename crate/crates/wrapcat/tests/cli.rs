use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str], threads: Option<&str>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_wrapcat"));
    c.args(args).current_dir(fixtures()).env_remove("WRAPCAT_THREADS");
    if let Some(t) = threads {
        c.env("WRAPCAT_THREADS", t);
    }
    c.output().expect("binary runs")
}

struct Case {
    name: String,
    exit: i32,
    args: Vec<String>,
}

fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(fixtures().join("golden/cases.txt")).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut parts = l.split('\t');
            let name = parts.next().unwrap().to_string();
            let exit = parts.next().unwrap().parse().unwrap();
            let args = parts.next().unwrap().split_whitespace().map(String::from).collect();
            Case { name, exit, args }
        })
        .collect()
}

/// Every golden case, twice with one thread and once with four, must
/// reproduce the committed bytes and exit code. `WRAPCAT_BLESS=1`
/// rewrites the goldens instead.
#[test]
fn golden_reports_are_reproduced_across_runs_and_thread_counts() {
    let bless = std::env::var("WRAPCAT_BLESS").is_ok_and(|v| v == "1");
    let cases = cases();
    assert!(cases.len() >= 30);
    let failures: Vec<String> = std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .iter()
            .map(|c| {
                s.spawn(move || {
                    let args: Vec<&str> = c.args.iter().map(String::as_str).collect();
                    let golden_path = fixtures().join(format!("golden/{}.out", c.name));
                    let first = run(&args, Some("1"));
                    if bless {
                        std::fs::write(&golden_path, &first.stdout).unwrap();
                        return None;
                    }
                    let golden = std::fs::read(&golden_path).unwrap();
                    let runs = [first, run(&args, Some("1")), run(&args, Some("4"))];
                    for (i, o) in runs.iter().enumerate() {
                        if o.stdout != golden {
                            return Some(format!("{}: run {i} differs from the golden report", c.name));
                        }
                        if o.status.code() != Some(c.exit) {
                            return Some(format!("{}: run {i} exited {:?}, expected {}", c.name, o.status.code(), c.exit));
                        }
                    }
                    None
                })
            })
            .collect();
        handles.into_iter().filter_map(|h| h.join().unwrap()).collect()
    });
    assert!(failures.is_empty(), "{failures:#?}");
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

#[test]
fn reports_carry_the_schema_version() {
    let o = run(&["validate", "toyb.json", "--mode", "finite"], None);
    let v = json(&o);
    assert_eq!(v["schema"], "wrapcat/1");
    assert_eq!(v["command"], "validate");
    assert_eq!(v["passed"], true);
}

#[test]
fn invalid_thread_counts_are_input_errors() {
    for t in ["0", "-1", "many"] {
        let o = run(&["validate", "toyb.json"], Some(t));
        assert_eq!(o.status.code(), Some(2), "WRAPCAT_THREADS={t}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn missing_files_are_input_errors() {
    let o = run(&["validate", "no_such_file.json"], None);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["kind"], "ParseError");
}

#[test]
fn toyb_hw_from_l_to_k_has_rank_one_in_degree_zero() {
    let v = json(&run(&["compute", "toyb.json", "--what", "hw"], None));
    let row = v["hw"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["source"] == "L" && r["target"] == "K")
        .unwrap();
    assert_eq!(row["ranks"], serde_json::json!({ "0": 1 }));
    assert_eq!(row["stabilized"], true);
}

#[test]
fn toyc_shallow_hw_reports_a_partial_table() {
    let o = run(&["compute", "toyc.json", "--what", "hw", "--depth", "1"], None);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["error"]["kind"], "NotStabilized");
    assert!(v["error"]["message"].as_str().unwrap().contains("(L0,K)"));
    let rows = v["hw"].as_array().unwrap();
    assert_eq!(rows.len(), 25);
    assert!(rows.iter().any(|r| r["stabilized"] == true));
}

#[test]
fn toyc_strict_validation_fails_on_nontrivial_arrows_and_finite_waives() {
    let strict = run(&["validate", "toyc.json"], None);
    assert_eq!(strict.status.code(), Some(1));
    let checks = json(&strict)["continuation"]["checks"].clone();
    let v = checks.as_array().unwrap().iter().find(|c| c["condition"] == "nontrivial-arrows").unwrap().clone();
    assert_eq!(v["verdict"], "fail");
    let finite = run(&["validate", "toyc.json", "--mode", "finite"], None);
    assert_eq!(finite.status.code(), Some(0));
    let checks = json(&finite)["continuation"]["checks"].clone();
    let v = checks.as_array().unwrap().iter().find(|c| c["condition"] == "nontrivial-arrows").unwrap().clone();
    assert_eq!(v["verdict"], "waived");
}

#[test]
fn zero_denominator_is_a_schema_error() {
    let o = run(&["validate", "bad_scalar.json"], None);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["kind"], "SchemaError");
}

#[test]
fn level_zero_entanglement_has_the_canonical_statistics() {
    let v = json(&run(&["entangle", "toyb.json", "--level", "0"], None));
    let (e, e0) = (&v["e_delta"], &v["tower"][0]);
    for key in ["vertices", "edges", "edge_pairs", "simplices"] {
        assert_eq!(e[key], e0[key], "{key}");
    }
}

#[test]
fn truncated_oracle_names_the_first_missing_simplex() {
    let o = run(&["entangle", "toyb_truncated_oracle.json", "--level", "2"], None);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["error"]["kind"], "OracleIncomplete");
    assert!(v["error"]["message"].as_str().unwrap().contains("(L, L'#1)"));
}

#[test]
fn toyb_bridge_and_comparison_pass() {
    let o = run(&["entangle", "toyb.json", "--level", "1", "--compare"], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let steps = v["bridge"].as_array().unwrap();
    assert_eq!(steps.len(), 2);
    assert!(steps.iter().all(|s| s["passed"] == true));
    assert_eq!(v["tau"]["fully_faithful"], true);
    assert_eq!(v["tau"]["essentially_surjective"], true);
}
