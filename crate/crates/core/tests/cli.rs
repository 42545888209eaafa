use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qalg").chain(args.iter().copied());
    let code = qalg::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, out, _) = run(&all);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

#[test]
fn ex4_is_obstructed() {
    let (code, out, _) = run(&["solve", "qrep", "ex4"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("OBSTRUCTED((a, a, a))"), "{out}");
    let (code, v) = run_json(&["solve", "qrep", "catalog:ex4"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "OBSTRUCTED((a, a, a))");
    assert_eq!(v["certificate"]["triple"], serde_json::json!(["a", "a", "a"]));
}

#[test]
fn rcc5_regions_verify() {
    let (code, out, _) = run(&["rep", "verify", "--kind", "qualitative", &data("rcc5_regions.qalg")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("OK"));
    let (code, _, _) = run(&["rep", "verify", "--kind", "strong", &data("rcc5_regions.qalg")]);
    assert_eq!(code, 1);
}

#[test]
fn unit_law_is_valid() {
    let (code, out, _) = run(&["eq", "check", "1';x = x"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("VALID_UP_TO(3)"), "{out}");
    let (code, out, _) = run(&["eq", "check", "-x^ = (-x)^"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn associativity_counterexample_is_reported() {
    let (code, v) = run_json(&["eq", "check", "x;(y;z) = (x;y);z", "--max-base", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "COUNTEREXAMPLE");
    assert!(v["certificate"]["base"].as_u64().unwrap() <= 3);
    assert_ne!(v["certificate"]["lhs"], v["certificate"]["rhs"]);
}

#[test]
fn syntax_errors_exit_3() {
    let (code, _, err) = run(&["eq", "check", "x ; = y"]);
    assert_eq!(code, 3);
    assert!(err.contains("column"), "{err}");
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 3);
    let (code, _, _) = run(&["alg", "check", "no-such-file.qalg"]);
    assert_eq!(code, 3);
    let (code, v) = run_json(&["catalog", "export", "nonsense"]);
    assert_eq!(code, 3);
    assert_eq!(v["verdict"], "INPUT_ERROR");
    assert!(!v["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn help_exits_0() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
    let (code, _, err) = run(&["solve"]);
    assert_eq!(code, 3);
    assert!(err.contains("Usage"));
}

#[test]
fn networks() {
    assert_eq!(run(&["net", "check", &data("point_chain.qalg")]).0, 0);
    let (code, out, _) = run(&["net", "pc", &data("point_chain.qalg")]);
    assert_eq!(code, 1);
    assert!(out.starts_with("NOT_PATH_CONSISTENT"));
    let (code, v) = run_json(&["net", "refine", &data("point_chain.qalg")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "REFINED");
    // breakfast before dinner is derived.
    assert_eq!(v["certificate"]["labels"][0][2], serde_json::json!(["<"]));
    assert_eq!(run(&["net", "refine", &data("point_cycle.qalg")]).0, 1);
    assert_eq!(run(&["solve", "net", &data("point.qalg"), &data("point_cycle.qalg")]).0, 1);
    let (code, v) = run_json(&["solve", "net", &data("rcc5.qalg"), &data("rcc5_syllogism.qalg")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "SAT");
    assert!(v["certificate"]["embedding"]["cats"].is_string());
}

#[test]
fn refined_network_is_a_valid_file() {
    let (code, out, _) = run(&["net", "refine", &data("rcc5_syllogism.qalg")]);
    assert_eq!(code, 0);
    let body = out.split_once('\n').unwrap().1;
    let ctx = qalg::format::Context::for_file(std::path::Path::new(&data("x")));
    let net = qalg::format::parse_network(body, &ctx).unwrap();
    assert!(net.is_path_consistent());
}

#[test]
fn embedding() {
    let (code, v) = run_json(&["rep", "embed", &data("rcc5_regions.qalg"), &data("rcc5_syllogism.qalg")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "EMBEDDED");
    let (code, _, _) = run(&["rep", "embed", &data("rcc5_regions.qalg"), &data("point_chain.qalg")]);
    assert_eq!(code, 3);
}

#[test]
fn star_needs_a_qualitative_representation() {
    let dir = tempfile::tempdir().unwrap();
    let theta = dir.path().join("theta.qalg");
    let (_, text, _) = run(&["catalog", "export", "ex1", "--rep", "1"]);
    std::fs::write(&theta, text).unwrap();
    let (code, _, err) = run(&["rep", "verify", "--kind", "star", theta.to_str().unwrap()]);
    assert_eq!(code, 3, "{err}");
    let (code, _, _) = run(&["rep", "verify", "--kind", "feeble", theta.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn solve_reports_and_reverifies() {
    let (code, v) = run_json(&["--deterministic", "solve", "qrep", "mckenzie"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "FOUND");
    assert!(v["stats"].get("elapsed_ms").is_none());
    let base = v["certificate"]["base"].as_array().unwrap().len();
    assert!(base >= 5);
    let (code, v) = run_json(&["solve", "qrep", "mckenzie", "--max-base", "4"]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"], "NONE_WITHIN_BUDGET");
    assert_eq!(v["stats"]["exhausted"], true);
    let (code, _) = run_json(&["solve", "frep", "ra2565"]);
    assert_eq!(code, 0);
}

#[test]
fn deterministic_runs_are_identical() {
    let args = ["--json", "--deterministic", "solve", "qrep", "rcc5"];
    assert_eq!(run(&args).1, run(&args).1);
    let args = ["--deterministic", "eq", "check", "x;(1;1) = (x;1);1", "--seed", "7"];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn generators() {
    let (code, out, err) = run(&["gen", "3col", &data("triangle.qalg")]);
    assert_eq!(code, 0);
    assert!(err.starts_with("GENERATED"));
    let s = qalg::format::parse_algebra(&out, false).unwrap();
    assert!(s.validate().ok());
    let (code, v) = run_json(&["gen", "mt", &data("k6.qalg")]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "KNOWN_NO");
    let (code, out, _) = run(&["gen", "monk", "2", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(qalg::format::parse_algebra(&out, false).unwrap().len(), 5);
    assert_eq!(run(&["gen", "monk", "5"]).0, 3);
}

#[test]
fn exported_files_feed_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    for key in qalg::catalog::KEYS {
        let (code, text, _) = run(&["catalog", "export", key]);
        assert_eq!(code, 0);
        let path = dir.path().join(format!("{key}.qalg"));
        std::fs::write(&path, text).unwrap();
        let (code, out, _) = run(&["alg", "check", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{key}: {out}");
    }
    let (_, list, _) = run(&["catalog", "list"]);
    assert_eq!(list.lines().count(), 1 + qalg::catalog::KEYS.len());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qalg");
    let status = Command::new(bin).args(["solve", "qrep", "ex4"]).output().unwrap();
    assert_eq!(status.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&status.stdout).starts_with("OBSTRUCTED((a, a, a))"));
    let status = Command::new(bin).args(["eq", "check", "1';x = x"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
}
