use std::process::{Command, Output};

use serde_json::Value;

fn fj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fj"))
        .args(args)
        .env_remove("FJ_GRAPH_CAP")
        .env_remove("FJ_MATRIX_CAP")
        .env_remove("FJ_EIGEN_CAP")
        .output()
        .expect("fj runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn diameter_report() {
    let out = fj(&["diameter", "--n", "4", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["diameter"], 6);
    assert_eq!(r["lower_bound"], 6);
    assert_eq!(r["connected"], true);
    assert_eq!(r["schema_version"], 1);
    assert!(r["runtime_ms"].is_u64());

    let r = json(&fj(&["diameter", "--n", "5", "--k", "2", "--exhaustive"]));
    assert_eq!(r["mode"], "exhaustive");
    assert_eq!(r["lower_bound"], 4);
}

#[test]
fn spectrum_subset_and_conjecture() {
    let out = fj(&[
        "spectrum",
        "--n",
        "4",
        "--check-subset",
        "--conjecture",
        "--full",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["subset_ok"], true);
    assert_eq!(r["second_largest_in_M"], true);
    assert_eq!(r["m_eigenvalues"][1], 2.414213562373);
    assert_eq!(r["full_distinct_eigenvalues"].as_array().unwrap().len(), 10);
    assert_eq!(r["matching"].as_array().unwrap().len(), 4);

    let r = json(&fj(&["spectrum", "--n", "9"]));
    assert_eq!(r["m_eigenvalues"].as_array().unwrap().len(), 9);
    assert!(r.get("full_distinct_eigenvalues").is_none());
    assert_eq!(r["subset_ok"], Value::Null);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["spectrum", "--n", "5", "--full", "--check-subset"];
    assert_eq!(fj(&args).stdout, fj(&args).stdout);
    let args = ["blocks", "--n", "3", "--k", "2", "--check", "recursive"];
    assert_eq!(fj(&args).stdout, fj(&args).stdout);
}

#[test]
fn block_checks() {
    let out = fj(&["blocks", "--n", "3", "--k", "1", "--check", "permutahedron"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["block_size"], 6);

    let out = fj(&["blocks", "--n", "4", "--k", "3", "--check", "recursive"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn custom_ordering_file() {
    let dir = std::env::temp_dir().join(format!("fj-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("order.txt");
    std::fs::write(&path, "# reversed\n321\n312\n231\n213\n132\n123\n").unwrap();
    let p = path.to_str().unwrap();
    let out = fj(&[
        "blocks",
        "--n",
        "3",
        "--k",
        "2",
        "--check",
        "recursive",
        "--ordering-file",
        p,
    ]);
    assert_eq!(out.status.code(), Some(0));

    std::fs::write(&path, "123\n132\n").unwrap();
    let out = fj(&[
        "blocks",
        "--n",
        "3",
        "--check",
        "permutahedron",
        "--ordering-file",
        p,
    ]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exports() {
    let out = fj(&["export", "--n", "4", "--k", "1", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph FJ_4_1 {"));
    assert_eq!(dot.matches("[label=").count(), 24);
    assert_eq!(dot.matches(" -- ").count(), 36);

    let csv = String::from_utf8(fj(&["export", "--n", "3", "--k", "2", "--format", "csv"]).stdout)
        .unwrap();
    assert_eq!(csv.lines().count(), 10);

    let grid =
        String::from_utf8(fj(&["export", "--n", "3", "--k", "1", "--format", "text"]).stdout)
            .unwrap();
    assert_eq!(grid.lines().next(), Some("011000"));

    let dir = std::env::temp_dir().join(format!("fj-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fj21.json");
    let out = fj(&[
        "export",
        "--n",
        "2",
        "--k",
        "1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["edges"], serde_json::json!([[0, 1]]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn invalid_arguments_exit_two() {
    assert_eq!(
        fj(&["diameter", "--n", "4", "--k", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(fj(&["diameter", "--n", "4"]).status.code(), Some(2));
    assert_eq!(
        fj(&["export", "--n", "3", "--k", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        fj(&["spectrum", "--n", "7", "--full"]).status.code(),
        Some(2)
    );
    assert_eq!(
        fj(&["--graph-cap", "0", "verify-all"]).status.code(),
        Some(2)
    );
    let out = fj(&[
        "export",
        "--n",
        "2",
        "--k",
        "1",
        "--out",
        "/nonexistent/dir/x.dot",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn environment_caps_and_flag_precedence() {
    let capped = Command::new(env!("CARGO_BIN_EXE_fj"))
        .args(["diameter", "--n", "5", "--k", "1"])
        .env("FJ_GRAPH_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));

    let overridden = Command::new(env!("CARGO_BIN_EXE_fj"))
        .args(["diameter", "--n", "5", "--k", "1", "--graph-cap", "5"])
        .env("FJ_GRAPH_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(overridden.status.code(), Some(0));
}

#[test]
fn verify_all_passes() {
    let out = fj(&["verify-all", "--max-n", "5"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let r = json(&out);
    assert_eq!(r["passed"], true);
    let ids: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids.first(), Some(&"connectivity"));
    assert_eq!(ids.last(), Some(&"second-largest"));
}
