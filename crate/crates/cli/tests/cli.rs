use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fair-cc"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    let out = bin().args(args).output().unwrap();
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn field(out: &Output, key: &str) -> String {
    let text = String::from_utf8_lossy(&out.stdout);
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}\t")).map(str::to_string))
        .unwrap_or_else(|| panic!("no '{key}' in output:\n{text}"))
}

const PLANTED: &str = "n=12,clusters=3,colors=2,noise=0.1,seed=5";

#[test]
fn solve_round_and_sweep_agree_on_the_lp() {
    let lp = run(&["solve-lp", "--input", PLANTED]);
    assert_eq!(field(&lp, "status"), "optimal");
    let objective = field(&lp, "lp_objective");
    let one = run(&["round", "--input", PLANTED, "--epsilon", "0.1", "--rho", "0.4", "--sigma", "0.2", "--seed", "3"]);
    assert_eq!(field(&one, "lp_objective"), objective);
    assert_eq!(field(&one, "within_beta"), "true");
    let best = run(&["sweep", "--input", PLANTED, "--epsilon", "0.1", "--grid-default", "--shuffles", "3"]);
    assert_eq!(field(&best, "grid_points"), "150");
    let best_cost: u64 = field(&best, "cost").parse().unwrap();
    let one_cost: u64 = field(&one, "cost").parse().unwrap();
    assert!(best_cost <= one_cost || field(&one, "seed") != "0");
}

#[test]
fn solution_file_import() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let solved = run(&["solve-lp", "--input", PLANTED, "--out", out]);
    let sol = dir.path().join("solution.txt");
    assert!(sol.exists());
    let imported = run(&["solve-lp", "--input", PLANTED, "--sol-file", sol.to_str().unwrap()]);
    let a: f64 = field(&solved, "lp_objective").parse().unwrap();
    let b: f64 = field(&imported, "lp_objective").parse().unwrap();
    assert!((a - b).abs() < 1e-6);
    assert_eq!(field(&imported, "rounds"), "0");
}

#[test]
fn oracle_and_export() {
    let oracle = run(&["oracle", "--input", "n=8,clusters=2,noise=0.2,seed=1", "--pivot-runs", "50"]);
    let opt: u64 = field(&oracle, "optimum").parse().unwrap();
    let pivot: f64 = field(&oracle, "pivot_mean").parse().unwrap();
    let unfair = run(&["oracle", "--input", "n=8,clusters=2,noise=0.2,seed=1", "--unfair"]);
    let unfair_opt: u64 = field(&unfair, "optimum").parse().unwrap();
    assert!(unfair_opt <= opt);
    assert!(pivot >= unfair_opt as f64);

    let mps = run(&["export-lp", "--input", "n=6,clusters=3"]);
    let text = String::from_utf8(mps.stdout).unwrap();
    assert!(text.starts_with("NAME FCC_LP"));
    assert_eq!(text.lines().filter(|l| l.starts_with(" L T_")).count(), 60);
}

#[test]
fn edge_list_with_color_file() {
    let out = run(&[
        "solve-lp",
        "--format",
        "edges",
        "--input",
        fixture("edges12.txt").to_str().unwrap(),
        "--colors",
        fixture("edges12_colors.txt").to_str().unwrap(),
        "--alphas",
        "prop:1,1",
    ]);
    assert_eq!(field(&out, "dataset"), "edges12");
    assert_eq!(field(&out, "n"), "12");
    assert_eq!(field(&out, "colors"), "2");
}

#[test]
fn experiment_reruns_byte_identically_from_its_manifest() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run(&[
        "experiment",
        "--format",
        "attributes",
        "--input",
        fixture("bank30.csv").to_str().unwrap(),
        "--colors",
        "marital,default",
        "--alphas",
        "uniform:0.8",
        "--theta",
        "0.25",
        "--sample-size",
        "16",
        "--stratify",
        "--subsamples",
        "2",
        "--shuffles",
        "2",
        "--eps-sweep",
        "0.01,0.5",
        "--alpha-steps",
        "2",
        "--out",
        a.path().to_str().unwrap(),
    ]);
    let manifest = a.path().join("manifest.json");
    run(&["experiment", "--manifest", manifest.to_str().unwrap(), "--out", b.path().to_str().unwrap()]);
    for name in ["results.tsv", "summary.tsv", "eps_sweep.tsv", "alpha_sweep.tsv", "manifest.json"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        assert_eq!(x, std::fs::read(b.path().join(name)).unwrap(), "{name} differs");
    }
    let results = std::fs::read_to_string(a.path().join("results.tsv")).unwrap();
    assert_eq!(results.lines().count(), 3);
    // violation never exceeds ε in the ε-sweep plot data
    let sweep = std::fs::read_to_string(a.path().join("eps_sweep.tsv")).unwrap();
    for line in sweep.lines().skip(1) {
        let f: Vec<&str> = line.split('\t').collect();
        let eps: f64 = match f[1] {
            "1/100" => 0.01,
            "1/2" => 0.5,
            other => panic!("unexpected x {other}"),
        };
        if f[8] != "NA" {
            assert!(f[8].parse::<f64>().unwrap() <= eps + 1e-9);
        }
    }
}

#[test]
fn bad_input_reports_an_error() {
    let out = bin().args(["solve-lp", "--format", "embeddings", "--input", "/nonexistent"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("theta"));
    let out = bin().args(["sweep", "--rho", "0.3", "--grid-default"]).output().unwrap();
    assert!(!out.status.success());
}
