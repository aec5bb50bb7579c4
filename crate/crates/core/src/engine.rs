//! Solving the LP with lazily separated triangle inequalities.
//!
//! Each round solves the restricted LP (fairness rows plus the active
//! triangle rows), scans every triangle orientation at the solution, and
//! adds the most violated ones. The loop ends when no orientation is
//! violated by more than the separation tolerance.

use std::collections::HashSet;
use std::path::Path;
use std::time::Duration;

use web_time::Instant;

use microlp::{ComparisonOp, OptimizationDirection, Problem, SolveOutcome, Variable};
use serde::{Deserialize, Serialize};

use crate::error::{FccError, Result};
use crate::graph::pairs;
use crate::lp::{FractionalMetric, LpProblem, TriangleCut};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub max_rounds: usize,
    /// Rows added per round; `None` means `min(5000, 10 n)`.
    pub separation_budget: Option<usize>,
    pub separation_tol: f64,
    pub certify_tol: f64,
    pub feasibility_tol: f64,
    /// Wall-clock cap over the whole solve, in seconds.
    pub time_limit_secs: Option<f64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_rounds: 1000,
            separation_budget: None,
            separation_tol: 1e-7,
            certify_tol: 1e-6,
            feasibility_tol: 1e-7,
            time_limit_secs: None,
        }
    }
}

impl SolverConfig {
    pub fn budget_for(&self, n: usize) -> usize {
        self.separation_budget.unwrap_or_else(|| (10 * n).min(5000)).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    IterationLimit,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::IterationLimit => "iteration-limit",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub objective: f64,
    pub x: FractionalMetric,
    /// Separation rounds that added rows.
    pub rounds: usize,
    pub rows_added: usize,
    /// Largest triangle violation over all orientations at `x`.
    pub certify: f64,
    /// Largest fairness-row residual at `x` (nonpositive when satisfied).
    pub fairness_residual: f64,
    /// Restricted-LP objective after each solve.
    pub round_objectives: Vec<f64>,
    pub active_cuts: Vec<TriangleCut>,
    pub elapsed: Duration,
}

impl SolveReport {
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

/// A triangle orientation violated at the current iterate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub cut: TriangleCut,
    pub amount: f64,
}

fn scan_long_side(x: &FractionalMetric, u: usize, tol: f64, out: &mut Vec<Violation>) {
    let n = x.n();
    for w in u + 1..n {
        let long = x.get(u, w);
        if long <= tol {
            continue;
        }
        for v in 0..n {
            if v == u || v == w {
                continue;
            }
            let amount = long - x.get(u, v) - x.get(v, w);
            if amount > tol {
                out.push(Violation { cut: TriangleCut { u, w, v }, amount });
            }
        }
    }
}

/// Up to `budget` violated orientations (violation above `tol`), most
/// violated first; ties are broken by the `(u, w, v)` order of the cut.
pub fn separate_triangles(x: &FractionalMetric, budget: usize, tol: f64) -> Vec<Violation> {
    let n = x.n();
    #[cfg(feature = "parallel")]
    let mut found: Vec<Violation> = {
        use rayon::prelude::*;
        (0..n)
            .into_par_iter()
            .flat_map_iter(|u| {
                let mut local = Vec::new();
                scan_long_side(x, u, tol, &mut local);
                local
            })
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut found: Vec<Violation> = {
        let mut all = Vec::new();
        for u in 0..n {
            scan_long_side(x, u, tol, &mut all);
        }
        all
    };
    found.sort_by(|a, b| b.amount.total_cmp(&a.amount).then(a.cut.cmp(&b.cut)));
    found.truncate(budget);
    found
}

/// Largest `x_uw - x_uv - x_vw` over every ordered triple, floored at 0.
pub fn verify_metric(x: &FractionalMetric) -> f64 {
    let n = x.n();
    let mut worst: f64 = 0.0;
    for u in 0..n {
        for w in u + 1..n {
            let long = x.get(u, w);
            for v in 0..n {
                if v != u && v != w {
                    worst = worst.max(long - x.get(u, v) - x.get(v, w));
                }
            }
        }
    }
    worst
}

fn add_cut(problem: &mut Problem, vars: &[Variable], n: usize, cut: &TriangleCut) {
    let expr: Vec<(Variable, f64)> = cut.coefficients(n).iter().map(|&(j, c)| (vars[j], c)).collect();
    problem.add_constraint(expr.as_slice(), ComparisonOp::Le, 0.0);
}

/// Solves the LP over all triangle inequalities by cutting planes.
///
/// An infeasible fairness system or an exhausted round/time budget is
/// reported through [`SolveReport::status`], never relaxed.
pub fn solve(p: &LpProblem, cfg: &SolverConfig) -> Result<SolveReport> {
    let started = Instant::now();
    let n = p.n();
    let deadline = cfg.time_limit_secs.map(|s| started + Duration::from_secs_f64(s));

    if p.num_columns() == 0 {
        let x = FractionalMetric::zeros(n);
        let residual = p.max_fairness_residual(&x);
        let status = if residual > cfg.feasibility_tol { SolveStatus::Infeasible } else { SolveStatus::Optimal };
        return Ok(SolveReport {
            status,
            objective: p.constant,
            x,
            rounds: 0,
            rows_added: 0,
            certify: 0.0,
            fairness_residual: if residual.is_finite() { residual } else { 0.0 },
            round_objectives: vec![p.constant],
            active_cuts: Vec::new(),
            elapsed: started.elapsed(),
        });
    }

    let mut problem = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<Variable> = p.objective.iter().map(|&c| problem.add_var(c, (0.0, 1.0))).collect();
    for row in &p.fairness_rows {
        let expr: Vec<(Variable, f64)> = row.coeffs.iter().map(|&(j, c)| (vars[j], c)).collect();
        problem.add_constraint(expr.as_slice(), ComparisonOp::Le, row.rhs);
    }
    let mut active: Vec<TriangleCut> = Vec::new();
    let mut seen: HashSet<TriangleCut> = HashSet::new();
    for cut in &p.triangle_pool {
        if seen.insert(*cut) {
            add_cut(&mut problem, &vars, n, cut);
            active.push(*cut);
        }
    }

    let budget = cfg.budget_for(n);
    let mut round_objectives = Vec::new();
    let mut rounds = 0;
    let mut rows_added = 0;
    let mut x = FractionalMetric::zeros(n);
    let status = loop {
        if let Some(d) = deadline {
            let now = Instant::now();
            if now >= d {
                break SolveStatus::IterationLimit;
            }
            problem.set_time_limit(d - now);
        }
        let solution = match problem.solve() {
            Ok(SolveOutcome::Solution(s)) => s,
            Ok(SolveOutcome::Interrupted(_)) => break SolveStatus::IterationLimit,
            Err(microlp::Error::Infeasible) => break SolveStatus::Infeasible,
            Err(e) => return Err(FccError::Solver(e.to_string())),
        };
        let values = vars.iter().map(|&v| solution.var_value(v)).collect();
        x = FractionalMetric::from_values(n, values)?;
        round_objectives.push(p.objective_value(&x));

        let violated = separate_triangles(&x, budget, cfg.separation_tol);
        log::debug!(
            "round {rounds}: objective {:.9}, {} violated rows, {} active",
            round_objectives.last().unwrap(),
            violated.len(),
            active.len()
        );
        if violated.is_empty() {
            break SolveStatus::Optimal;
        }
        if rounds >= cfg.max_rounds {
            break SolveStatus::IterationLimit;
        }
        for v in &violated {
            if seen.insert(v.cut) {
                add_cut(&mut problem, &vars, n, &v.cut);
                active.push(v.cut);
                rows_added += 1;
            }
        }
        rounds += 1;
    };

    let certify = verify_metric(&x);
    let fairness_residual = p.max_fairness_residual(&x);
    if status == SolveStatus::Optimal && (certify > cfg.certify_tol || fairness_residual > cfg.feasibility_tol) {
        log::warn!("solution certified at triangle residual {certify:.3e}, fairness residual {fairness_residual:.3e}");
    }
    Ok(SolveReport {
        status,
        objective: p.objective_value(&x),
        x,
        rounds,
        rows_added,
        certify,
        fairness_residual,
        round_objectives,
        active_cuts: active,
        elapsed: started.elapsed(),
    })
}

/// Reads `x_u_v value` lines written by an external solver. Columns that
/// are not listed are zero.
pub fn read_solution_file(path: impl AsRef<Path>, n: usize) -> Result<FractionalMetric> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let mut x = FractionalMetric::zeros(n);
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(name), Some(value), None) = (it.next(), it.next(), it.next()) else {
            return Err(FccError::parse(path, lineno + 1, "expected '<column> <value>'"));
        };
        let parts: Vec<&str> = name.split('_').collect();
        let parsed = match parts.as_slice() {
            ["x", u, v] => u.parse::<usize>().ok().zip(v.parse::<usize>().ok()),
            _ => None,
        };
        let Some((u, v)) = parsed.filter(|&(u, v)| u < v && v < n) else {
            return Err(FccError::parse(path, lineno + 1, format!("unknown column '{name}'")));
        };
        let value: f64 = value
            .parse()
            .map_err(|_| FccError::parse(path, lineno + 1, format!("bad value '{value}'")))?;
        x.set(u, v, value);
    }
    Ok(x)
}

/// Wraps an externally computed solution in a report after certifying it
/// against every triangle and fairness row.
pub fn import_solution(p: &LpProblem, x: FractionalMetric, cfg: &SolverConfig) -> Result<SolveReport> {
    if x.n() != p.n() {
        return Err(FccError::VertexMismatch { expected: p.n(), found: x.n() });
    }
    let certify = verify_metric(&x);
    let fairness_residual = if p.fairness_rows.is_empty() { 0.0 } else { p.max_fairness_residual(&x) };
    if certify > cfg.certify_tol || fairness_residual > cfg.certify_tol {
        return Err(FccError::InvalidParameter(format!(
            "imported solution is infeasible (triangle {certify:.3e}, fairness {fairness_residual:.3e})"
        )));
    }
    let objective = p.objective_value(&x);
    Ok(SolveReport {
        status: SolveStatus::Optimal,
        objective,
        x,
        rounds: 0,
        rows_added: 0,
        certify,
        fairness_residual,
        round_objectives: vec![objective],
        active_cuts: Vec::new(),
        elapsed: Duration::ZERO,
    })
}

/// Writes `x` in the format read by [`read_solution_file`].
pub fn write_solution(x: &FractionalMetric, out: &mut impl std::io::Write) -> Result<()> {
    for ((u, v), value) in pairs(x.n()).zip(x.values()) {
        writeln!(out, "x_{u}_{v} {value}")?;
    }
    Ok(())
}
