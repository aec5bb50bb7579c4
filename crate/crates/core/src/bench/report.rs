//! Tab-separated result tables, sweep plot data and the run manifest.
//!
//! Everything except `timings.tsv` is a pure function of the manifest, so
//! reruns produce byte-identical files.

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::experiment::{published_row, ExperimentConfig, ExperimentResult, ExperimentRun, MeanSd, SweepPoint};
use crate::error::{FccError, Result};

pub const RESULTS_FILE: &str = "results.tsv";
pub const SUMMARY_FILE: &str = "summary.tsv";
pub const EPS_SWEEP_FILE: &str = "eps_sweep.tsv";
pub const ALPHA_SWEEP_FILE: &str = "alpha_sweep.tsv";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const TIMINGS_FILE: &str = "timings.tsv";

pub const RESULTS_COLUMNS: &[&str] = &[
    "dataset", "subsample", "n", "pairs", "epsilon", "alpha_min", "lp_status", "lp_objective", "lp_ratio", "cost",
    "cost_ratio", "violation", "beta", "pivot_ratio", "rho", "sigma", "seed", "rounds", "rows_added", "certify",
];

pub const SWEEP_COLUMNS: &[&str] =
    &["subsample", "x", "epsilon", "lp_status", "lp_objective", "lp_ratio", "cost", "cost_ratio", "violation"];

pub const SUMMARY_COLUMNS: &[&str] = &[
    "dataset", "subsamples", "epsilon", "cost_ratio_mean", "cost_ratio_sd", "lp_ratio_mean", "lp_ratio_sd",
    "pivot_ratio_mean", "pivot_ratio_sd", "violation_max", "published_fair_cc", "published_aekm", "published_loc",
    "published_piv",
];

fn real(v: f64) -> String {
    format!("{v:.6}")
}

fn opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map_or_else(|| "NA".to_string(), f)
}

fn plain(v: impl Display) -> String {
    v.to_string()
}

pub fn result_fields(r: &ExperimentResult) -> Vec<String> {
    vec![
        r.dataset.clone(),
        plain(r.subsample),
        plain(r.n),
        plain(r.pairs),
        plain(r.epsilon),
        real(r.alpha_min),
        plain(r.lp_status),
        opt(r.lp_objective, real),
        opt(r.lp_ratio, real),
        opt(r.cost, plain),
        opt(r.cost_ratio, real),
        opt(r.violation, real),
        opt(r.beta, real),
        real(r.pivot_ratio),
        opt(r.rho, real),
        opt(r.sigma, real),
        opt(r.seed, plain),
        plain(r.rounds),
        plain(r.rows_added),
        format!("{:.3e}", r.certify),
    ]
}

pub fn sweep_fields(p: &SweepPoint) -> Vec<String> {
    vec![
        plain(p.subsample),
        plain(p.x),
        plain(p.epsilon),
        plain(p.lp_status),
        opt(p.lp_objective, real),
        opt(p.lp_ratio, real),
        opt(p.cost, plain),
        opt(p.cost_ratio, real),
        opt(p.violation, real),
    ]
}

fn mean_sd(m: Option<MeanSd>) -> [String; 2] {
    match m {
        Some(m) => [real(m.mean), real(m.sd)],
        None => ["NA".into(), "NA".into()],
    }
}

pub fn summary_fields(run: &ExperimentRun) -> Vec<String> {
    let cfg = &run.config;
    let published = cfg.reference.as_deref().and_then(published_row);
    let max_violation = run.rows.iter().filter_map(|r| r.violation).fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
    let mut out = vec![cfg.dataset.id.clone(), plain(run.rows.len()), plain(cfg.epsilon)];
    out.extend(mean_sd(run.cost_ratio()));
    out.extend(mean_sd(run.lp_ratio()));
    out.extend(mean_sd(run.pivot_ratio()));
    out.push(opt(max_violation, real));
    match published {
        Some((_, fcc, aekm, loc, piv)) => out.extend([fcc, aekm, loc, piv].map(String::from)),
        None => out.extend(std::iter::repeat("NA".to_string()).take(4)),
    }
    out
}

fn write_table(path: &Path, columns: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut buf = Vec::new();
    writeln!(buf, "{}", columns.join("\t"))?;
    for row in rows {
        debug_assert_eq!(row.len(), columns.len());
        writeln!(buf, "{}", row.join("\t"))?;
    }
    std::fs::write(path, buf)?;
    Ok(())
}

pub fn write_manifest(cfg: &ExperimentConfig, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(cfg)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_manifest(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Writes every report file into `out_dir`, creating it if needed, and
/// returns the paths written. Sweep files are written only for sweeps that
/// ran.
pub fn emit_reports(run: &ExperimentRun, out_dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    if run.rows.is_empty() {
        return Err(FccError::InvalidParameter("no result rows to report".into()));
    }
    let dir = out_dir.as_ref();
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut emit = |name: &str, columns: &[&str], rows: Vec<Vec<String>>| -> Result<()> {
        let path = dir.join(name);
        write_table(&path, columns, rows)?;
        written.push(path);
        Ok(())
    };
    emit(RESULTS_FILE, RESULTS_COLUMNS, run.rows.iter().map(result_fields).collect())?;
    emit(SUMMARY_FILE, SUMMARY_COLUMNS, vec![summary_fields(run)])?;
    if !run.eps_points.is_empty() {
        emit(EPS_SWEEP_FILE, SWEEP_COLUMNS, run.eps_points.iter().map(sweep_fields).collect())?;
    }
    if !run.alpha_points.is_empty() {
        emit(ALPHA_SWEEP_FILE, SWEEP_COLUMNS, run.alpha_points.iter().map(sweep_fields).collect())?;
    }
    emit(
        TIMINGS_FILE,
        &["subsample", "lp_secs", "round_secs"],
        run.rows.iter().map(|r| vec![plain(r.subsample), real(r.lp_secs), real(r.round_secs)]).collect(),
    )?;
    let manifest = dir.join(MANIFEST_FILE);
    write_manifest(&run.config, &manifest)?;
    written.push(manifest);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::experiment::{ExperimentConfig, DatasetSpec, SourceFormat};
    use crate::bench::ingest::AlphaSpec;
    use crate::engine::SolveStatus;
    use crate::fairness::Share;

    fn config() -> ExperimentConfig {
        let spec = DatasetSpec {
            id: "toy".into(),
            format: SourceFormat::Synthetic,
            input: "n=6".into(),
            theta: None,
            color_file: None,
            color_columns: Vec::new(),
            coordinate_columns: Vec::new(),
        };
        let mut cfg = ExperimentConfig::new(spec, AlphaSpec::Uniform(Share::ratio(1, 2)), Share::ratio(1, 100));
        cfg.reference = Some("amazon".into());
        cfg
    }

    fn row() -> ExperimentResult {
        ExperimentResult {
            dataset: "toy".into(),
            subsample: 0,
            n: 6,
            pairs: 15,
            epsilon: Share::ratio(1, 100),
            alpha_min: 0.5,
            lp_status: SolveStatus::Optimal,
            lp_objective: Some(3.0),
            lp_ratio: Some(0.2),
            cost: Some(4),
            cost_ratio: Some(4.0 / 15.0),
            violation: None,
            beta: Some(200.0),
            pivot_ratio: 0.4,
            rho: Some(0.3),
            sigma: Some(0.15),
            seed: Some(7),
            rounds: 2,
            rows_added: 9,
            certify: 0.0,
            lp_secs: 0.5,
            round_secs: 0.25,
        }
    }

    #[test]
    fn one_row_gives_header_plus_one_line() {
        let dir = tempfile::tempdir().unwrap();
        let run = ExperimentRun { config: config(), rows: vec![row()], eps_points: Vec::new(), alpha_points: Vec::new() };
        let written = emit_reports(&run, dir.path()).unwrap();
        assert_eq!(written.len(), 4);
        let results = std::fs::read_to_string(dir.path().join(RESULTS_FILE)).unwrap();
        let lines: Vec<&str> = results.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].split('\t').count(), RESULTS_COLUMNS.len());
        assert_eq!(
            lines[1],
            "toy\t0\t6\t15\t1/100\t0.500000\toptimal\t3.000000\t0.200000\t4\t0.266667\tNA\t200.000000\t0.400000\t0.300000\t0.150000\t7\t2\t9\t0.000e0"
        );
        let summary = std::fs::read_to_string(dir.path().join(SUMMARY_FILE)).unwrap();
        assert!(summary.lines().nth(1).unwrap().ends_with("0.064 ± 0.013\t0.064\t0.010\t0.011"));
        assert!(!dir.path().join(EPS_SWEEP_FILE).exists());
        let back = read_manifest(dir.path().join(MANIFEST_FILE)).unwrap();
        assert_eq!(back, run.config);
    }

    #[test]
    fn empty_rows_are_rejected() {
        let run = ExperimentRun { config: config(), rows: Vec::new(), eps_points: Vec::new(), alpha_points: Vec::new() };
        assert!(emit_reports(&run, tempfile::tempdir().unwrap().path()).is_err());
    }
}
