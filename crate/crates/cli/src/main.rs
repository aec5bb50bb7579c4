use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use fair_cc::bench::experiment::{
    load_dataset, run_experiment, subsample_vertices, Dataset, DatasetSpec, ExperimentConfig, SourceFormat,
};
use fair_cc::bench::ingest::AlphaSpec;
use fair_cc::bench::report::{emit_reports, read_manifest};
use fair_cc::engine::{import_solution, read_solution_file, write_solution};
use fair_cc::fairness::max_fairness_violation;
use fair_cc::graph::{correlation_cost, pair_count};
use fair_cc::oracle::{brute_force_optimum, pivot, OracleMode};
use fair_cc::rounding::approximation_factor;
use fair_cc::{build_lp, round, solve, RoundingOutcome, RoundingParams, Share, SolveReport, SolverConfig, SweepGrid};

#[derive(Parser)]
#[command(name = "fair-cc", version, about = "Fair correlation clustering: LP relaxation, rounding and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the LP relaxation and print its objective.
    SolveLp {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        tol: TolArgs,
        /// Write `solution.txt` here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Round the LP solution once with fixed parameters.
    Round {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long, default_value = "1/100")]
        epsilon: Share,
        #[arg(long, default_value_t = 0.3)]
        rho: f64,
        #[arg(long, default_value_t = 0.15)]
        sigma: f64,
        /// Write `clustering.tsv` here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Round over a parameter grid and keep the cheapest clustering.
    Sweep {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value = "1/100")]
        epsilon: Share,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full pipeline over subsamples with optional ε and α^min sweeps.
    Experiment(ExperimentArgs),
    /// Exact optimum by enumeration (n <= 12) and pivot statistics.
    Oracle {
        #[command(flatten)]
        data: DataArgs,
        /// Ignore fairness.
        #[arg(long)]
        unfair: bool,
        /// Pivot runs to average.
        #[arg(long, default_value_t = 200)]
        pivot_runs: u64,
    },
    /// Write the LP (with every triangle row) as MPS.
    ExportLp {
        #[command(flatten)]
        data: DataArgs,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct DataArgs {
    /// Input file, or `key=value` planted parameters for `synthetic`.
    #[arg(long, default_value = "")]
    input: String,
    #[arg(long, default_value = "synthetic")]
    format: SourceFormat,
    /// Fraction of most similar pairs made positive.
    #[arg(long)]
    theta: Option<Share>,
    /// Color file (edges, embeddings) or comma-separated sensitive columns
    /// (attributes).
    #[arg(long)]
    colors: Option<String>,
    /// Comma-separated coordinate columns of an attribute table.
    #[arg(long)]
    coords: Option<String>,
    /// `a1,a2,..`, `uniform:<v>`, `prop:<p1,p2,..>` or `inverse`.
    #[arg(long, default_value = "uniform:1/2")]
    alphas: AlphaSpec,
    #[arg(long)]
    sample_size: Option<usize>,
    #[arg(long)]
    stratify: bool,
    /// Seed for subsampling and scan orders.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Dataset label used in reports.
    #[arg(long)]
    id: Option<String>,
    /// Certify an externally computed LP solution instead of solving.
    #[arg(long)]
    sol_file: Option<PathBuf>,
}

impl DataArgs {
    fn spec(&self) -> DatasetSpec {
        let list = |s: &Option<String>| -> Vec<String> {
            s.as_deref().map(|s| s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()).unwrap_or_default()
        };
        let attributes = self.format == SourceFormat::Attributes;
        let id = self.id.clone().unwrap_or_else(|| match self.format {
            SourceFormat::Synthetic => "synthetic".into(),
            _ => Path::new(&self.input).file_stem().map_or("dataset".into(), |s| s.to_string_lossy().into_owned()),
        });
        DatasetSpec {
            id,
            format: self.format,
            input: self.input.clone(),
            theta: self.theta,
            color_file: if attributes { None } else { self.colors.as_ref().map(PathBuf::from) },
            color_columns: if attributes { list(&self.colors) } else { Vec::new() },
            coordinate_columns: list(&self.coords),
        }
    }

    fn config(&self) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(self.spec(), self.alphas.clone(), Share::zero());
        cfg.sample_size = self.sample_size;
        cfg.stratify = self.stratify;
        cfg.seed = self.seed;
        cfg
    }

    /// The dataset, restricted to the first subsample when sampling.
    fn load(&self) -> Result<Dataset> {
        let cfg = self.config();
        let ds = load_dataset(&cfg.dataset, &cfg.alphas)?;
        let vertices = subsample_vertices(&ds, &cfg, 0)?;
        if vertices.len() == ds.graph.n() {
            return Ok(ds);
        }
        Ok(Dataset {
            graph: ds.graph.induced(&vertices),
            colors: ds.colors.induced(&vertices)?,
            vertex_ids: vertices.iter().map(|&v| ds.vertex_ids[v].clone()).collect(),
            id: ds.id,
        })
    }
}

#[derive(Args, Clone, Default)]
struct TolArgs {
    #[arg(long)]
    tol_separation: Option<f64>,
    #[arg(long)]
    tol_certify: Option<f64>,
    #[arg(long)]
    tol_feasibility: Option<f64>,
    #[arg(long)]
    max_rounds: Option<usize>,
    /// Triangle rows added per round.
    #[arg(long)]
    separation_budget: Option<usize>,
    #[arg(long)]
    time_limit: Option<f64>,
}

impl TolArgs {
    fn apply(&self, mut cfg: SolverConfig) -> SolverConfig {
        if let Some(v) = self.tol_separation {
            cfg.separation_tol = v;
        }
        if let Some(v) = self.tol_certify {
            cfg.certify_tol = v;
        }
        if let Some(v) = self.tol_feasibility {
            cfg.feasibility_tol = v;
        }
        if let Some(v) = self.max_rounds {
            cfg.max_rounds = v;
        }
        if self.separation_budget.is_some() {
            cfg.separation_budget = self.separation_budget;
        }
        if self.time_limit.is_some() {
            cfg.time_limit_secs = self.time_limit;
        }
        cfg
    }
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Full default grid (5 ρ × 10 σ); also used when no ρ is given.
    #[arg(long)]
    grid_default: bool,
    /// Single ρ instead of the default grid.
    #[arg(long)]
    rho: Option<f64>,
    /// σ for a single `--rho`; defaults to ρ/2.
    #[arg(long)]
    sigma: Option<f64>,
    /// Scan orders per (ρ, σ).
    #[arg(long, default_value_t = 20)]
    shuffles: usize,
}

impl GridArgs {
    fn grid(&self, base_seed: u64) -> Result<SweepGrid> {
        if self.grid_default && self.rho.is_some() {
            bail!("--grid-default conflicts with --rho");
        }
        let mut grid = match self.rho {
            Some(rho) => SweepGrid::single(rho, self.sigma.unwrap_or(rho / 2.0), base_seed),
            None if self.sigma.is_some() => bail!("--sigma needs --rho"),
            None => SweepGrid { base_seed, ..SweepGrid::default() },
        };
        grid.shuffles = self.shuffles;
        Ok(grid)
    }
}

#[derive(Args)]
struct ExperimentArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    tol: TolArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value = "1/100")]
    epsilon: Share,
    #[arg(long, default_value_t = 1)]
    subsamples: usize,
    /// Comma-separated ε values; `default` for 0.01..0.5.
    #[arg(long)]
    eps_sweep: Option<String>,
    /// Number of α^min steps from its original value to 1.
    #[arg(long)]
    alpha_steps: Option<i64>,
    /// Published-table row to print beside the results, e.g. `amazon`.
    #[arg(long)]
    reference: Option<String>,
    /// Rerun from a saved manifest, ignoring the other flags.
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

fn solve_or_import(ds: &Dataset, data: &DataArgs, cfg: &SolverConfig) -> Result<SolveReport> {
    let lp = build_lp(&ds.graph, &ds.colors)?;
    let report = match &data.sol_file {
        Some(path) => import_solution(&lp, read_solution_file(path, ds.graph.n())?, cfg)?,
        None => solve(&lp, cfg)?,
    };
    Ok(report)
}

fn print_lp(ds: &Dataset, r: &SolveReport) {
    let pairs = pair_count(ds.graph.n()) as f64;
    println!("dataset\t{}", ds.id);
    println!("n\t{}", ds.graph.n());
    println!("colors\t{}", ds.colors.num_colors());
    println!("status\t{}", r.status);
    println!("lp_objective\t{:.6}", r.objective);
    println!("lp_ratio\t{:.6}", if pairs > 0.0 { r.objective / pairs } else { 0.0 });
    println!("rounds\t{}", r.rounds);
    println!("rows_added\t{}", r.rows_added);
    println!("certify\t{:.3e}", r.certify);
    println!("fairness_residual\t{:.3e}", r.fairness_residual);
    println!("elapsed_secs\t{:.3}", r.elapsed.as_secs_f64());
}

fn print_outcome(ds: &Dataset, o: &RoundingOutcome, lp: &SolveReport) {
    let pairs = pair_count(ds.graph.n()) as f64;
    let beta = approximation_factor(o.params.epsilon, &ds.colors);
    println!("epsilon\t{}", o.params.epsilon);
    println!("rho\t{:.6}", o.params.rho);
    println!("sigma\t{:.6}", o.params.sigma);
    println!("seed\t{}", o.params.seed);
    println!("cost\t{}", o.cost);
    println!("cost_ratio\t{:.6}", if pairs > 0.0 { o.cost as f64 / pairs } else { 0.0 });
    println!("lp_objective\t{:.6}", lp.objective);
    println!("clusters\t{}", o.clustering.num_clusters());
    println!("degenerate\t{}", o.clustering.degenerate_set().len());
    println!("violation\t{}", o.violation.map_or("NA".into(), |v| format!("{v:.6}")));
    match beta {
        Some(b) => println!("beta\t{b:.6}\nwithin_beta\t{}", o.cost as f64 <= b * lp.objective + 1e-6),
        None => println!("beta\tNA"),
    }
}

fn write_clustering(ds: &Dataset, o: &RoundingOutcome, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut buf = String::from("vertex\tcluster\tdegenerate\n");
    for v in 0..ds.graph.n() {
        let c = o.clustering.cluster_of(v);
        buf.push_str(&format!("{}\t{c}\t{}\n", ds.vertex_ids[v], o.clustering.is_degenerate(v)));
    }
    fs::write(dir.join("clustering.tsv"), buf)?;
    Ok(())
}

fn require_optimal(r: &SolveReport) -> Result<()> {
    if !r.is_optimal() {
        bail!("LP status is {}; nothing to round", r.status);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::SolveLp { data, tol, out } => {
            let ds = data.load()?;
            let report = solve_or_import(&ds, &data, &tol.apply(SolverConfig::default()))?;
            print_lp(&ds, &report);
            if let Some(dir) = out {
                fs::create_dir_all(&dir)?;
                let mut f = fs::File::create(dir.join("solution.txt"))?;
                write_solution(&report.x, &mut f)?;
            }
        }
        Command::Round { data, tol, epsilon, rho, sigma, out } => {
            let ds = data.load()?;
            let report = solve_or_import(&ds, &data, &tol.apply(SolverConfig::default()))?;
            require_optimal(&report)?;
            let params = RoundingParams::shuffled(ds.graph.n(), epsilon, rho, sigma, data.seed)?;
            let outcome = round(&report.x, &ds.graph, &ds.colors, &params)?;
            print_outcome(&ds, &outcome, &report);
            if let Some(dir) = out {
                write_clustering(&ds, &outcome, &dir)?;
            }
        }
        Command::Sweep { data, tol, grid, epsilon, out } => {
            let ds = data.load()?;
            let report = solve_or_import(&ds, &data, &tol.apply(SolverConfig::default()))?;
            require_optimal(&report)?;
            let grid = grid.grid(data.seed)?;
            let best = fair_cc::sweep(&report.x, &ds.graph, &ds.colors, epsilon, &grid)?;
            println!("grid_points\t{}", grid.len());
            print_outcome(&ds, &best, &report);
            if let Some(dir) = out {
                write_clustering(&ds, &best, &dir)?;
            }
        }
        Command::Experiment(args) => experiment(args)?,
        Command::Oracle { data, unfair, pivot_runs } => {
            let ds = data.load()?;
            let mode = if unfair { OracleMode::Unfair } else { OracleMode::FairStrict };
            let r = brute_force_optimum(&ds.graph, Some(&ds.colors), mode)?;
            println!("mode\t{}", if unfair { "unfair" } else { "fair-strict" });
            println!("optimum\t{}", r.optimum);
            println!("examined\t{}", r.examined);
            println!("feasible\t{}", r.feasible_count);
            println!("witness\t{:?}", r.witness.clusters());
            let runs = pivot_runs.max(1);
            let mut total = 0u64;
            for s in 0..runs {
                total += correlation_cost(&ds.graph, &pivot(&ds.graph, data.seed.wrapping_add(s)))?;
            }
            println!("pivot_mean\t{:.6}", total as f64 / runs as f64);
            let witness_violation = max_fairness_violation(&r.witness, &ds.colors);
            println!("witness_violation\t{}", witness_violation.map_or("NA".into(), |v| format!("{v:.6}")));
        }
        Command::ExportLp { data, out } => {
            let ds = data.load()?;
            let lp = build_lp(&ds.graph, &ds.colors)?;
            match out {
                Some(path) => lp.export_mps(&path).with_context(|| format!("writing {}", path.display()))?,
                None => {
                    let mut stdout = std::io::stdout().lock();
                    lp.write_mps(&mut stdout)?;
                    stdout.flush()?;
                }
            }
        }
    }
    Ok(())
}

fn experiment(args: ExperimentArgs) -> Result<()> {
    let cfg = match &args.manifest {
        Some(path) => read_manifest(path).with_context(|| format!("reading manifest {}", path.display()))?,
        None => {
            let mut cfg = args.data.config();
            cfg.epsilon = args.epsilon;
            cfg.solver = args.tol.apply(SolverConfig::default());
            cfg.grid = args.grid.grid(args.data.seed)?;
            cfg.subsamples = args.subsamples;
            cfg.reference = args.reference.clone();
            cfg.eps_sweep = match args.eps_sweep.as_deref() {
                None => Vec::new(),
                Some("default") => ExperimentConfig::default_eps_sweep(),
                Some(list) => list.split(',').map(|t| t.trim().parse()).collect::<fair_cc::Result<_>>()?,
            };
            if let Some(steps) = args.alpha_steps {
                if steps < 1 {
                    bail!("--alpha-steps must be positive");
                }
                let ds = load_dataset(&cfg.dataset, &cfg.alphas)?;
                let start = ds
                    .colors
                    .alphas()
                    .iter()
                    .copied()
                    .min_by(|a, b| a.value().total_cmp(&b.value()))
                    .context("dataset has no colors")?;
                cfg.alpha_min_sweep = ExperimentConfig::alpha_min_range(start, steps);
            }
            cfg
        }
    };
    let ds = load_dataset(&cfg.dataset, &cfg.alphas)?;
    let run = run_experiment(&ds, &cfg)?;
    for path in emit_reports(&run, &args.out)? {
        println!("{}", path.display());
    }
    if let (Some(c), Some(l)) = (run.cost_ratio(), run.lp_ratio()) {
        eprintln!("cost_ratio {:.4} ± {:.4}, lp_ratio {:.4} ± {:.4} over {} subsamples", c.mean, c.sd, l.mean, l.sd, c.count);
    }
    Ok(())
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
