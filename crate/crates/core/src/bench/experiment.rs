//! End-to-end runs: ingest, subsample, solve the LP, sweep the rounding
//! grid, and collect per-subsample metrics.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use web_time::Instant;

use super::ingest::{self, AlphaSpec, AttributeTable, Similarity, VertexIndex};
use super::sample::{color_combinations, stratified_subsample};
use super::synthetic::{planted_instance, PlantedSpec};
use crate::engine::{solve, SolveReport, SolveStatus, SolverConfig};
use crate::error::{FccError, Result};
use crate::fairness::{ColorModel, Share};
use crate::graph::{correlation_cost, pair_count, SignedGraph};
use crate::lp::build_lp;
use crate::oracle::pivot;
use crate::rounding::{approximation_factor, sweep, RoundingOutcome, SweepGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceFormat {
    Edges,
    Embeddings,
    Attributes,
    Synthetic,
}

impl std::str::FromStr for SourceFormat {
    type Err = FccError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" => Ok(SourceFormat::Edges),
            "embeddings" => Ok(SourceFormat::Embeddings),
            "attributes" => Ok(SourceFormat::Attributes),
            "synthetic" => Ok(SourceFormat::Synthetic),
            other => Err(FccError::InvalidParameter(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub id: String,
    pub format: SourceFormat,
    /// File path, or `key=value` planted-instance parameters for
    /// `synthetic`.
    pub input: String,
    /// Fraction of most similar pairs made positive (embeddings and
    /// attribute tables).
    #[serde(default)]
    pub theta: Option<Share>,
    /// `<vertex-id> <color>` file for edge lists and embeddings; embedding
    /// rows are named `0, 1, ...`.
    #[serde(default)]
    pub color_file: Option<PathBuf>,
    /// Sensitive columns of an attribute table.
    #[serde(default)]
    pub color_columns: Vec<String>,
    /// Numeric columns placing attribute rows in space.
    #[serde(default)]
    pub coordinate_columns: Vec<String>,
}

impl DatasetSpec {
    pub fn validate(&self) -> Result<()> {
        let needs_theta = matches!(self.format, SourceFormat::Embeddings | SourceFormat::Attributes);
        match (needs_theta, self.theta) {
            (true, None) => Err(FccError::InvalidParameter(format!("dataset '{}' needs theta", self.id))),
            (false, Some(_)) => Err(FccError::InvalidParameter(format!("theta does not apply to dataset '{}'", self.id))),
            (true, Some(t)) if !(0.0..=1.0).contains(&t.value()) => {
                Err(FccError::InvalidParameter(format!("theta {t} outside [0, 1]")))
            }
            _ => Ok(()),
        }
    }
}

/// A loaded instance.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub id: String,
    pub graph: SignedGraph,
    pub colors: ColorModel,
    pub vertex_ids: Vec<String>,
}

pub fn load_dataset(spec: &DatasetSpec, alphas: &AlphaSpec) -> Result<Dataset> {
    spec.validate()?;
    let color_file = || {
        spec.color_file
            .as_ref()
            .ok_or_else(|| FccError::InvalidParameter(format!("dataset '{}' needs a color file", spec.id)))
    };
    let (graph, colors, vertex_ids) = match spec.format {
        SourceFormat::Edges => {
            let (g, ids) = ingest::ingest_edge_list(&spec.input)?;
            let index = VertexIndex::from_ids(ids.iter().cloned());
            let cm = ingest::ingest_color_file(color_file()?, &index, alphas)?;
            (g, cm, ids)
        }
        SourceFormat::Embeddings => {
            let g = ingest::ingest_embeddings(&spec.input, spec.theta.unwrap())?;
            let ids: Vec<String> = (0..g.n()).map(|v| v.to_string()).collect();
            let index = VertexIndex::from_ids(ids.iter().cloned());
            let cm = ingest::ingest_color_file(color_file()?, &index, alphas)?;
            (g, cm, ids)
        }
        SourceFormat::Attributes => {
            let table = AttributeTable::read(&spec.input)?;
            let cm = table.color_model(&spec.color_columns, alphas)?;
            let coord_cols = if spec.coordinate_columns.is_empty() {
                numeric_columns(&table, &spec.color_columns)
            } else {
                spec.coordinate_columns.clone()
            };
            if coord_cols.is_empty() {
                return Err(FccError::InvalidParameter(format!("no coordinate columns in '{}'", spec.input)));
            }
            let points = table.coordinates(&coord_cols)?;
            let g = ingest::graph_from_points(&points, spec.theta.unwrap(), Similarity::Euclidean)?;
            let ids = (0..g.n()).map(|v| v.to_string()).collect();
            (g, cm, ids)
        }
        SourceFormat::Synthetic => {
            let planted: PlantedSpec = spec.input.parse()?;
            let inst = planted_instance(&planted)?;
            let mut members = vec![Vec::new(); planted.colors];
            for (v, &c) in inst.colors.iter().enumerate() {
                members[c].push(v);
            }
            // colors beyond n / clusters never occur
            members.retain(|m| !m.is_empty());
            let ell = members.len();
            let names = (0..ell).map(|i| format!("color{i}")).collect();
            let cm = ColorModel::with_names(planted.n, names, members, alphas.resolve(ell)?)?;
            let ids = (0..planted.n).map(|v| v.to_string()).collect();
            (inst.graph, cm, ids)
        }
    };
    if colors.n() != graph.n() {
        return Err(FccError::VertexMismatch { expected: graph.n(), found: colors.n() });
    }
    Ok(Dataset { id: spec.id.clone(), graph, colors, vertex_ids })
}

/// Columns outside `exclude` whose every cell parses as a number.
fn numeric_columns(table: &AttributeTable, exclude: &[String]) -> Vec<String> {
    (0..table.header.len())
        .filter(|&j| !exclude.contains(&table.header[j]))
        .filter(|&j| table.records.iter().all(|r| r[j].parse::<f64>().is_ok()))
        .map(|j| table.header[j].clone())
        .collect()
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub dataset: DatasetSpec,
    pub alphas: AlphaSpec,
    pub epsilon: Share,
    pub grid: SweepGrid,
    #[serde(default)]
    pub solver: SolverConfig,
    /// Number of subsamples; ignored (treated as 1) without `sample_size`.
    pub subsamples: usize,
    pub sample_size: Option<usize>,
    /// Stratify subsamples on color combinations.
    pub stratify: bool,
    /// Subsample `s` is drawn with seed `seed + s`.
    pub seed: u64,
    #[serde(default)]
    pub eps_sweep: Vec<Share>,
    #[serde(default)]
    pub alpha_min_sweep: Vec<Share>,
    /// Row of the published comparison table to print next to ours.
    #[serde(default)]
    pub reference: Option<String>,
}

impl ExperimentConfig {
    pub fn new(dataset: DatasetSpec, alphas: AlphaSpec, epsilon: Share) -> Self {
        ExperimentConfig {
            dataset,
            alphas,
            epsilon,
            grid: SweepGrid::default(),
            solver: SolverConfig::default(),
            subsamples: 1,
            sample_size: None,
            stratify: false,
            seed: 0,
            eps_sweep: Vec::new(),
            alpha_min_sweep: Vec::new(),
            reference: None,
        }
    }

    /// `ε ∈ {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5}`.
    pub fn default_eps_sweep() -> Vec<Share> {
        [1, 5, 10, 20, 30, 40, 50].iter().map(|&k| Share::ratio(k, 100)).collect()
    }

    /// `α^min` from `start` to 1 in `steps` equal increments.
    pub fn alpha_min_range(start: Share, steps: i64) -> Vec<Share> {
        let Some(r) = start.exact() else {
            return (0..=steps)
                .map(|k| Share::from_f64(start.value() + (1.0 - start.value()) * k as f64 / steps as f64))
                .collect();
        };
        let (p, q) = (*r.numer(), *r.denom());
        (0..=steps).map(|k| Share::ratio(p * steps + (q - p) * k, q * steps)).collect()
    }
}

/// Published two-color, `α = 0.5`, `ε = 0.01` cost ratios:
/// `(row, Fair-CC, AEKM, Loc, Piv)`.
pub const PUBLISHED_TWO_COLOR: &[(&str, &str, &str, &str, &str)] = &[
    ("amazon", "0.064 ± 0.013", "0.064", "0.010", "0.011"),
    ("reuters-0.25", "0.213", "0.230", "0.096", "0.161"),
    ("reuters-0.50", "0.297", "0.350", "0.181", "0.231"),
    ("reuters-0.75", "0.196", "0.199", "0.188", "0.241"),
    ("victorian-0.25", "0.217", "0.212", "0.109", "0.158"),
    ("victorian-0.50", "0.325", "0.348", "0.183", "0.268"),
    ("victorian-0.75", "0.232", "0.237", "0.203", "0.280"),
];

pub fn published_row(key: &str) -> Option<(&'static str, &'static str, &'static str, &'static str, &'static str)> {
    PUBLISHED_TWO_COLOR.iter().copied().find(|r| r.0 == key)
}

/// One subsample at one `ε`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub dataset: String,
    pub subsample: usize,
    pub n: usize,
    pub pairs: usize,
    pub epsilon: Share,
    pub alpha_min: f64,
    pub lp_status: SolveStatus,
    pub lp_objective: Option<f64>,
    pub lp_ratio: Option<f64>,
    pub cost: Option<u64>,
    pub cost_ratio: Option<f64>,
    pub violation: Option<f64>,
    pub beta: Option<f64>,
    /// Mean pivot cost ratio over the grid's shuffle seeds.
    pub pivot_ratio: f64,
    pub rho: Option<f64>,
    pub sigma: Option<f64>,
    pub seed: Option<u64>,
    pub rounds: usize,
    pub rows_added: usize,
    pub certify: f64,
    pub lp_secs: f64,
    pub round_secs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    Epsilon,
    AlphaMin,
}

/// One point of an `ε` or `α^min` sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub kind: SweepKind,
    pub subsample: usize,
    pub x: Share,
    pub epsilon: Share,
    pub lp_status: SolveStatus,
    pub lp_objective: Option<f64>,
    pub lp_ratio: Option<f64>,
    pub cost: Option<u64>,
    pub cost_ratio: Option<f64>,
    pub violation: Option<f64>,
}

/// Sample mean and standard deviation (`n - 1` denominator; 0 for one
/// value).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanSd {
    pub mean: f64,
    pub sd: f64,
    pub count: usize,
}

impl MeanSd {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Option<MeanSd> {
        let v: Vec<f64> = values.into_iter().collect();
        if v.is_empty() {
            return None;
        }
        let k = v.len() as f64;
        let mean = v.iter().sum::<f64>() / k;
        let sd = if v.len() > 1 {
            (v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (k - 1.0)).sqrt()
        } else {
            0.0
        };
        Some(MeanSd { mean, sd, count: v.len() })
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentRun {
    pub config: ExperimentConfig,
    pub rows: Vec<ExperimentResult>,
    pub eps_points: Vec<SweepPoint>,
    pub alpha_points: Vec<SweepPoint>,
}

impl ExperimentRun {
    pub fn cost_ratio(&self) -> Option<MeanSd> {
        MeanSd::of(self.rows.iter().filter_map(|r| r.cost_ratio))
    }

    pub fn lp_ratio(&self) -> Option<MeanSd> {
        MeanSd::of(self.rows.iter().filter_map(|r| r.lp_ratio))
    }

    pub fn pivot_ratio(&self) -> Option<MeanSd> {
        MeanSd::of(self.rows.iter().map(|r| r.pivot_ratio))
    }

    pub fn violation(&self) -> Option<MeanSd> {
        MeanSd::of(self.rows.iter().filter_map(|r| r.violation))
    }
}

fn ratio(value: f64, pairs: usize) -> f64 {
    if pairs == 0 {
        0.0
    } else {
        value / pairs as f64
    }
}

/// Vertices of subsample `s`, sorted.
pub fn subsample_vertices(ds: &Dataset, cfg: &ExperimentConfig, s: usize) -> Result<Vec<usize>> {
    let n = ds.graph.n();
    match cfg.sample_size {
        Some(k) if k < n => {
            let labels = if cfg.stratify {
                color_combinations(&ds.colors)
            } else {
                vec![String::new(); n]
            };
            stratified_subsample(&labels, k, cfg.seed.wrapping_add(s as u64))
        }
        Some(k) if k > n => Err(FccError::InvalidParameter(format!("sample size {k} exceeds {n} vertices"))),
        _ => Ok((0..n).collect()),
    }
}

fn subsample_count(ds: &Dataset, cfg: &ExperimentConfig) -> usize {
    match cfg.sample_size {
        Some(k) if k < ds.graph.n() => cfg.subsamples.max(1),
        _ => 1,
    }
}

/// Scales every `α` by `target / α^min`, capping at 1.
pub fn scale_alphas(alphas: &[Share], target: Share) -> Vec<Share> {
    let Some(&current) = alphas.iter().min_by(|a, b| a.value().total_cmp(&b.value())) else {
        return Vec::new();
    };
    let factor = target.div(current);
    alphas.iter().map(|a| a.scale(factor).min(Share::one())).collect()
}

fn mean_pivot_ratio(g: &SignedGraph, grid: &SweepGrid) -> Result<f64> {
    let seeds = grid.shuffles.max(1) as u64;
    let mut total = 0.0;
    for s in 0..seeds {
        total += correlation_cost(g, &pivot(g, grid.base_seed.wrapping_add(s)))? as f64;
    }
    Ok(ratio(total / seeds as f64, g.pair_count()))
}

struct Subsample {
    graph: SignedGraph,
    colors: ColorModel,
}

fn best_rounding(report: &SolveReport, sub: &Subsample, eps: Share, grid: &SweepGrid) -> Result<Option<RoundingOutcome>> {
    if !report.is_optimal() {
        return Ok(None);
    }
    sweep(&report.x, &sub.graph, &sub.colors, eps, grid).map(Some)
}

fn run_subsample(ds: &Dataset, cfg: &ExperimentConfig, s: usize) -> Result<(ExperimentResult, Vec<SweepPoint>, Vec<SweepPoint>)> {
    let vertices = subsample_vertices(ds, cfg, s)?;
    let sub = Subsample {
        graph: ds.graph.induced(&vertices),
        colors: ds.colors.induced(&vertices)?,
    };
    let n = sub.graph.n();
    let pairs = pair_count(n);

    let started = Instant::now();
    let lp = build_lp(&sub.graph, &sub.colors)?;
    let report = solve(&lp, &cfg.solver)?;
    let lp_secs = started.elapsed().as_secs_f64();
    log::info!(
        "{} subsample {s}: n={n}, LP {} objective {:.4} after {} rounds",
        ds.id, report.status, report.objective, report.rounds
    );
    let lp_objective = report.is_optimal().then_some(report.objective);

    let started = Instant::now();
    let best = best_rounding(&report, &sub, cfg.epsilon, &cfg.grid)?;
    let round_secs = started.elapsed().as_secs_f64();

    let row = ExperimentResult {
        dataset: ds.id.clone(),
        subsample: s,
        n,
        pairs,
        epsilon: cfg.epsilon,
        alpha_min: sub.colors.alpha_min(),
        lp_status: report.status,
        lp_objective,
        lp_ratio: lp_objective.map(|v| ratio(v, pairs)),
        cost: best.as_ref().map(|b| b.cost),
        cost_ratio: best.as_ref().map(|b| ratio(b.cost as f64, pairs)),
        violation: best.as_ref().and_then(|b| b.violation),
        beta: approximation_factor(cfg.epsilon, &sub.colors),
        pivot_ratio: mean_pivot_ratio(&sub.graph, &cfg.grid)?,
        rho: best.as_ref().map(|b| b.params.rho),
        sigma: best.as_ref().map(|b| b.params.sigma),
        seed: best.as_ref().map(|b| b.params.seed),
        rounds: report.rounds,
        rows_added: report.rows_added,
        certify: report.certify,
        lp_secs,
        round_secs,
    };

    // The LP does not depend on ε, so the ε sweep reuses it.
    let mut eps_points = Vec::with_capacity(cfg.eps_sweep.len());
    for &eps in &cfg.eps_sweep {
        let best = best_rounding(&report, &sub, eps, &cfg.grid)?;
        eps_points.push(point(SweepKind::Epsilon, s, eps, eps, &report, best.as_ref(), pairs));
    }

    let mut alpha_points = Vec::with_capacity(cfg.alpha_min_sweep.len());
    for &target in &cfg.alpha_min_sweep {
        let scaled = Subsample {
            graph: sub.graph.clone(),
            colors: sub.colors.with_alphas(scale_alphas(sub.colors.alphas(), target))?,
        };
        let report = solve(&build_lp(&scaled.graph, &scaled.colors)?, &cfg.solver)?;
        let best = best_rounding(&report, &scaled, cfg.epsilon, &cfg.grid)?;
        alpha_points.push(point(SweepKind::AlphaMin, s, target, cfg.epsilon, &report, best.as_ref(), pairs));
    }
    Ok((row, eps_points, alpha_points))
}

fn point(
    kind: SweepKind,
    subsample: usize,
    x: Share,
    epsilon: Share,
    report: &SolveReport,
    best: Option<&RoundingOutcome>,
    pairs: usize,
) -> SweepPoint {
    let lp_objective = report.is_optimal().then_some(report.objective);
    SweepPoint {
        kind,
        subsample,
        x,
        epsilon,
        lp_status: report.status,
        lp_objective,
        lp_ratio: lp_objective.map(|v| ratio(v, pairs)),
        cost: best.map(|b| b.cost),
        cost_ratio: best.map(|b| ratio(b.cost as f64, pairs)),
        violation: best.and_then(|b| b.violation),
    }
}

/// Runs the full pipeline on every subsample. Output order is by
/// subsample, then sweep position, whatever order the jobs finish in.
pub fn run_experiment(ds: &Dataset, cfg: &ExperimentConfig) -> Result<ExperimentRun> {
    if cfg.grid.is_empty() {
        return Err(FccError::InvalidParameter("empty sweep grid".into()));
    }
    let count = subsample_count(ds, cfg);
    #[cfg(feature = "parallel")]
    let per_sub: Vec<_> = {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(|s| run_subsample(ds, cfg, s)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_sub: Vec<_> = (0..count).map(|s| run_subsample(ds, cfg, s)).collect();

    let mut run = ExperimentRun {
        config: cfg.clone(),
        rows: Vec::with_capacity(count),
        eps_points: Vec::new(),
        alpha_points: Vec::new(),
    };
    for r in per_sub {
        let (row, eps, alpha) = r?;
        run.rows.push(row);
        run.eps_points.extend(eps);
        run.alpha_points.extend(alpha);
    }
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(input: &str) -> DatasetSpec {
        DatasetSpec {
            id: "planted".into(),
            format: SourceFormat::Synthetic,
            input: input.into(),
            theta: None,
            color_file: None,
            color_columns: Vec::new(),
            coordinate_columns: Vec::new(),
        }
    }

    #[test]
    fn theta_is_required_exactly_for_similarity_graphs() {
        let mut spec = synthetic("n=6");
        assert!(spec.validate().is_ok());
        spec.theta = Some(Share::ratio(1, 2));
        assert!(spec.validate().is_err());
        spec.format = SourceFormat::Embeddings;
        assert!(spec.validate().is_ok());
        spec.theta = None;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn alpha_scaling() {
        let a = scale_alphas(&[Share::ratio(1, 2), Share::ratio(3, 4)], Share::ratio(3, 4));
        assert_eq!(a, vec![Share::ratio(3, 4), Share::one()]);
        let r = ExperimentConfig::alpha_min_range(Share::ratio(1, 2), 5);
        assert_eq!(r.first(), Some(&Share::ratio(1, 2)));
        assert_eq!(r.last(), Some(&Share::one()));
        assert_eq!(r[1], Share::ratio(3, 5));
    }

    #[test]
    fn mean_and_sample_sd() {
        let m = MeanSd::of([1.0, 2.0, 3.0]).unwrap();
        assert_eq!((m.mean, m.sd, m.count), (2.0, 1.0, 3));
        assert_eq!(MeanSd::of([5.0]).unwrap().sd, 0.0);
        assert!(MeanSd::of([]).is_none());
    }

    #[test]
    fn small_planted_run() {
        let ds = load_dataset(&synthetic("n=12,clusters=3,colors=2,noise=0.1,seed=2"), &AlphaSpec::Uniform(Share::ratio(1, 2))).unwrap();
        let mut cfg = ExperimentConfig::new(synthetic(""), AlphaSpec::Uniform(Share::ratio(1, 2)), Share::ratio(1, 10));
        cfg.grid.shuffles = 2;
        cfg.sample_size = Some(8);
        cfg.subsamples = 3;
        cfg.stratify = true;
        cfg.eps_sweep = vec![Share::ratio(1, 100), Share::ratio(1, 2)];
        cfg.alpha_min_sweep = ExperimentConfig::alpha_min_range(Share::ratio(1, 2), 2);
        let run = run_experiment(&ds, &cfg).unwrap();
        assert_eq!(run.rows.len(), 3);
        assert_eq!(run.eps_points.len(), 6);
        assert_eq!(run.alpha_points.len(), 9);
        for (s, row) in run.rows.iter().enumerate() {
            assert_eq!(row.subsample, s);
            assert_eq!((row.n, row.pairs), (8, 28));
            assert_eq!(row.lp_status, SolveStatus::Optimal);
            let cost = row.cost.unwrap() as f64;
            assert!((row.cost_ratio.unwrap() - cost / 28.0).abs() < 1e-12);
            assert!(cost <= row.beta.unwrap() * row.lp_objective.unwrap() + 1e-6);
            assert!(row.violation.map_or(true, |v| v <= 0.1 + 1e-9));
        }
        let again = run_experiment(&ds, &cfg).unwrap();
        let strip = |r: &ExperimentResult| ExperimentResult { lp_secs: 0.0, round_secs: 0.0, ..r.clone() };
        assert_eq!(run.rows.iter().map(strip).collect::<Vec<_>>(), again.rows.iter().map(strip).collect::<Vec<_>>());
        assert_eq!(run.eps_points, again.eps_points);
    }

    #[test]
    fn infeasible_lp_is_reported_not_raised() {
        // one color at α = 1/2 covering everything: no fair clustering exists
        let dir = tempfile::tempdir().unwrap();
        let edges = dir.path().join("g.txt");
        let colors = dir.path().join("c.txt");
        std::fs::write(&edges, "a b\nb c\n").unwrap();
        std::fs::write(&colors, "a red\nb red\nc red\n").unwrap();
        let spec = DatasetSpec {
            id: "tiny".into(),
            format: SourceFormat::Edges,
            input: edges.to_string_lossy().into(),
            theta: None,
            color_file: Some(colors),
            color_columns: Vec::new(),
            coordinate_columns: Vec::new(),
        };
        let alphas = AlphaSpec::Uniform(Share::ratio(1, 2));
        let ds = load_dataset(&spec, &alphas).unwrap();
        let mut cfg = ExperimentConfig::new(spec, alphas, Share::ratio(1, 10));
        cfg.grid = SweepGrid::single(0.4, 0.2, 0);
        let run = run_experiment(&ds, &cfg).unwrap();
        assert_eq!(run.rows[0].lp_status, SolveStatus::Infeasible);
        assert_eq!(run.rows[0].cost, None);
    }

    #[test]
    fn published_lookup() {
        assert_eq!(published_row("reuters-0.50").unwrap().1, "0.297");
        assert!(published_row("nope").is_none());
    }
}
