//! WebAssembly bindings for the browser demo in `www/`.
//!
//! [`Demo`] holds one planted instance and its LP solution. The plain Rust
//! methods carry the logic and are tested natively; the `js_*` exports wrap
//! them for JavaScript, returning JSON strings and typed arrays.

use fair_cc::bench::synthetic::{planted_instance, PlantedSpec};
use fair_cc::rounding::approximation_factor;
use fair_cc::{
    build_lp, round, solve, sweep, ColorModel, FccError, Result, RoundingOutcome, RoundingParams, Share, SignedGraph,
    SolveReport, SolverConfig, SweepGrid,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest instance the page offers; the LP grows as n³.
pub const MAX_N: usize = 40;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct LpSummary {
    pub status: String,
    pub objective: f64,
    pub rounds: usize,
    pub rows_added: usize,
    pub certify: f64,
    pub planted_cost: u64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RoundingSummary {
    pub cost: u64,
    pub lp_objective: f64,
    pub beta: Option<f64>,
    pub violation: Option<f64>,
    pub clusters: usize,
    pub degenerate: usize,
    pub rho: f64,
    pub sigma: f64,
    pub seed: u64,
    /// Cluster id of each vertex.
    pub assignment: Vec<usize>,
    /// Carved clusters come first; the rest are degenerate singletons.
    pub carved: usize,
}

#[wasm_bindgen]
pub struct Demo {
    graph: SignedGraph,
    colors: ColorModel,
    color_of: Vec<usize>,
    planted: Vec<usize>,
    lp: Option<SolveReport>,
}

impl Demo {
    /// Two colors at `α = 1/2`.
    pub fn planted(n: usize, clusters: usize, noise: f64, seed: u64) -> Result<Demo> {
        if n > MAX_N {
            return Err(FccError::InvalidParameter(format!("the demo handles at most {MAX_N} vertices, got {n}")));
        }
        let inst = planted_instance(&PlantedSpec { n, clusters, colors: 2, noise, seed })?;
        let colors = ColorModel::from_labels(&inst.colors, vec![Share::ratio(1, 2); 2])?;
        Ok(Demo {
            graph: inst.graph,
            colors,
            color_of: inst.colors,
            planted: inst.planted.assignment().to_vec(),
            lp: None,
        })
    }

    pub fn solve_lp(&mut self) -> Result<LpSummary> {
        let report = solve(&build_lp(&self.graph, &self.colors)?, &SolverConfig::default())?;
        let planted = fair_cc::Clustering::from_labels(&self.planted);
        let summary = LpSummary {
            status: report.status.to_string(),
            objective: report.objective,
            rounds: report.rounds,
            rows_added: report.rows_added,
            certify: report.certify,
            planted_cost: fair_cc::graph::correlation_cost(&self.graph, &planted)?,
        };
        self.lp = Some(report);
        Ok(summary)
    }

    fn solved(&self) -> Result<&SolveReport> {
        match &self.lp {
            Some(r) if r.is_optimal() => Ok(r),
            Some(r) => Err(FccError::Solver(format!("LP status is {}", r.status))),
            None => Err(FccError::InvalidParameter("solve the LP first".into())),
        }
    }

    fn summarize(&self, o: &RoundingOutcome) -> Result<RoundingSummary> {
        let lp = self.solved()?;
        let degenerate = o.clustering.degenerate_set().len();
        Ok(RoundingSummary {
            cost: o.cost,
            lp_objective: lp.objective,
            beta: approximation_factor(o.params.epsilon, &self.colors),
            violation: o.violation,
            clusters: o.clustering.num_clusters(),
            degenerate,
            rho: o.params.rho,
            sigma: o.params.sigma,
            seed: o.params.seed,
            assignment: o.clustering.assignment().to_vec(),
            carved: o.clustering.num_clusters() - degenerate,
        })
    }

    /// One rounding pass; `eps_percent` is ε in hundredths.
    pub fn round_once(&self, eps_percent: u32, rho: f64, sigma: f64, seed: u64) -> Result<RoundingSummary> {
        let lp = self.solved()?;
        let eps = Share::ratio(eps_percent as i64, 100);
        let params = RoundingParams::shuffled(self.graph.n(), eps, rho, sigma, seed)?;
        let outcome = round(&lp.x, &self.graph, &self.colors, &params)?;
        self.summarize(&outcome)
    }

    /// Best outcome over the default `ρ`, `σ` grid with `shuffles` orders.
    pub fn best_sweep(&self, eps_percent: u32, shuffles: usize) -> Result<RoundingSummary> {
        let lp = self.solved()?;
        let eps = Share::ratio(eps_percent as i64, 100);
        let grid = SweepGrid { shuffles: shuffles.max(1), ..SweepGrid::default() };
        let outcome = sweep(&lp.x, &self.graph, &self.colors, eps, &grid)?;
        self.summarize(&outcome)
    }

    /// Row-major `n × n` LP distances; zeros before the LP is solved.
    pub fn metric_matrix(&self) -> Vec<f64> {
        let n = self.graph.n();
        let mut out = vec![0.0; n * n];
        if let Some(r) = &self.lp {
            for u in 0..n {
                for v in 0..n {
                    if u != v {
                        out[u * n + v] = r.x.get(u, v);
                    }
                }
            }
        }
        out
    }

    /// Row-major `n × n` signs, 1 for positive.
    pub fn sign_matrix(&self) -> Vec<u8> {
        let n = self.graph.n();
        let mut out = vec![0; n * n];
        for u in 0..n {
            for v in 0..n {
                out[u * n + v] = u8::from(u != v && self.graph.is_positive(u, v));
            }
        }
        out
    }
}

fn js<T: Serialize>(r: Result<T>) -> std::result::Result<String, JsError> {
    let value = r.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
impl Demo {
    #[wasm_bindgen(constructor)]
    pub fn js_new(n: usize, clusters: usize, noise: f64, seed: u32) -> std::result::Result<Demo, JsError> {
        Demo::planted(n, clusters, noise, seed as u64).map_err(|e| JsError::new(&e.to_string()))
    }

    #[wasm_bindgen(getter)]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[wasm_bindgen(js_name = colors)]
    pub fn js_colors(&self) -> Vec<u32> {
        self.color_of.iter().map(|&c| c as u32).collect()
    }

    #[wasm_bindgen(js_name = planted)]
    pub fn js_planted(&self) -> Vec<u32> {
        self.planted.iter().map(|&c| c as u32).collect()
    }

    #[wasm_bindgen(js_name = signs)]
    pub fn js_signs(&self) -> Vec<u8> {
        self.sign_matrix()
    }

    #[wasm_bindgen(js_name = metric)]
    pub fn js_metric(&self) -> Vec<f64> {
        self.metric_matrix()
    }

    #[wasm_bindgen(js_name = solveLp)]
    pub fn js_solve_lp(&mut self) -> std::result::Result<String, JsError> {
        js(self.solve_lp())
    }

    #[wasm_bindgen(js_name = round)]
    pub fn js_round(&self, eps_percent: u32, rho: f64, sigma: f64, seed: u32) -> std::result::Result<String, JsError> {
        js(self.round_once(eps_percent, rho, sigma, seed as u64))
    }

    #[wasm_bindgen(js_name = bestSweep)]
    pub fn js_best_sweep(&self, eps_percent: u32, shuffles: usize) -> std::result::Result<String, JsError> {
        js(self.best_sweep(eps_percent, shuffles))
    }
}
