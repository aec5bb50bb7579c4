//! Rounding the LP metric into a clustering by carving dense, almost-fair
//! balls around centers.
//!
//! While uncovered vertices remain, the first center `u` (in scan order)
//! whose ball `T_u = {v uncovered : x_uv <= ρ}` has average distance at most
//! `σ` from `u` and is ε-fair becomes a cluster. When no center qualifies,
//! every remaining vertex becomes a degenerate singleton.

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{FccError, Result};
use crate::fairness::{alpha_star, is_eps_fair_bits, max_fairness_violation, ColorModel, Share};
use crate::graph::{correlation_cost, Clustering, SignedGraph};
use crate::lp::FractionalMetric;

/// Tolerance on the ball radius and the density threshold, absorbing LP
/// round-off in `x`.
pub const METRIC_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct RoundingParams {
    pub epsilon: Share,
    pub rho: f64,
    pub sigma: f64,
    /// Center scan order, a permutation of the vertices.
    pub order: Vec<usize>,
    pub seed: u64,
}

impl RoundingParams {
    /// Scan order drawn from `seed`.
    pub fn shuffled(n: usize, epsilon: Share, rho: f64, sigma: f64, seed: u64) -> Result<Self> {
        RoundingParams::with_order(epsilon, rho, sigma, shuffled_order(n, seed), seed)
    }

    pub fn with_order(epsilon: Share, rho: f64, sigma: f64, order: Vec<usize>, seed: u64) -> Result<Self> {
        let p = RoundingParams { epsilon, rho, sigma, order, seed };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.epsilon.value() < 0.0 {
            return Err(FccError::InvalidParameter(format!("epsilon {} is negative", self.epsilon)));
        }
        if !(self.rho > 0.0 && self.rho <= 0.5) {
            return Err(FccError::InvalidParameter(format!("rho {} outside (0, 0.5]", self.rho)));
        }
        if !(self.sigma > 0.0 && 2.0 * self.sigma <= self.rho * (1.0 + 1e-12)) {
            return Err(FccError::InvalidParameter(format!(
                "sigma {} outside (0, rho/2] for rho {}",
                self.sigma, self.rho
            )));
        }
        let mut seen = FixedBitSet::with_capacity(self.order.len());
        for &v in &self.order {
            if v >= self.order.len() || seen.put(v) {
                return Err(FccError::InvalidParameter("scan order is not a permutation".into()));
            }
        }
        Ok(())
    }
}

pub fn shuffled_order(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

#[derive(Debug, Clone)]
pub struct RoundingOutcome {
    pub clustering: Clustering,
    /// Center of each carved cluster, indexed by cluster id; degenerate
    /// singletons come after the carved clusters and have no center.
    pub centers: Vec<usize>,
    pub cost: u64,
    /// Maximum fairness violation; `None` when every cluster is degenerate.
    pub violation: Option<f64>,
    pub params: RoundingParams,
}

impl RoundingOutcome {
    fn tie_key(&self) -> (u64, f64, f64, f64, u64) {
        (self.cost, self.violation.unwrap_or(0.0), self.params.rho, self.params.sigma, self.params.seed)
    }

    /// Total order used to pick the best outcome of a sweep: cost, then
    /// violation, then `ρ`, `σ`, seed.
    pub fn better_than(&self, other: &RoundingOutcome) -> bool {
        let (a, b) = (self.tie_key(), other.tie_key());
        a.0.cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.total_cmp(&b.2))
            .then(a.3.total_cmp(&b.3))
            .then(a.4.cmp(&b.4))
            .is_lt()
    }
}

/// Uncovered vertices within distance `rho` of `u`, including `u`.
pub fn ball(x: &FractionalMetric, u: usize, uncovered: &FixedBitSet, rho: f64) -> Vec<usize> {
    uncovered
        .ones()
        .filter(|&v| v == u || x.get(u, v) <= rho + METRIC_SLACK)
        .collect()
}

/// Runs the carving loop once with the given parameters.
pub fn round(x: &FractionalMetric, g: &SignedGraph, cm: &ColorModel, p: &RoundingParams) -> Result<RoundingOutcome> {
    let n = g.n();
    for found in [x.n(), cm.n(), p.order.len()] {
        if found != n {
            return Err(FccError::VertexMismatch { expected: n, found });
        }
    }
    p.validate()?;

    let mut uncovered = FixedBitSet::with_capacity(n);
    uncovered.insert_range(..);
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut centers = Vec::new();
    let mut members = FixedBitSet::with_capacity(n);

    while uncovered.count_ones(..) > 0 {
        let mut carved = None;
        for &u in &p.order {
            if !uncovered.contains(u) {
                continue;
            }
            let t = ball(x, u, &uncovered, p.rho);
            let spread: f64 = t.iter().map(|&v| x.get(u, v)).sum();
            if spread > (p.sigma + METRIC_SLACK) * t.len() as f64 {
                continue;
            }
            members.clear();
            for &v in &t {
                members.insert(v);
            }
            if is_eps_fair_bits(&members, cm, p.epsilon) {
                carved = Some((u, t));
                break;
            }
        }
        match carved {
            Some((u, t)) => {
                for &v in &t {
                    uncovered.set(v, false);
                }
                centers.push(u);
                clusters.push(t);
            }
            None => break,
        }
    }

    let degenerate: Vec<usize> = uncovered.ones().collect();
    let clustering = Clustering::from_clusters(n, &clusters, &degenerate)?;
    let cost = correlation_cost(g, &clustering)?;
    let violation = max_fairness_violation(&clustering, cm);
    Ok(RoundingOutcome {
        clustering,
        centers,
        cost,
        violation,
        params: p.clone(),
    })
}

/// Parameter grid for [`sweep`]: every `ρ`, every `σ = f · ρ / 2` for `f`
/// in `sigma_fractions`, and `shuffles` scan orders seeded
/// `base_seed, base_seed + 1, ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub rhos: Vec<f64>,
    pub sigma_fractions: Vec<f64>,
    pub shuffles: usize,
    pub base_seed: u64,
}

impl Default for SweepGrid {
    /// `ρ ∈ {0.1, …, 0.5}`, `σ ∈ {0.1, …, 1.0} · ρ/2`, 20 shuffles.
    fn default() -> Self {
        SweepGrid {
            rhos: (1..=5).map(|i| i as f64 / 10.0).collect(),
            sigma_fractions: (1..=10).map(|i| i as f64 / 10.0).collect(),
            shuffles: 20,
            base_seed: 0,
        }
    }
}

impl SweepGrid {
    pub fn single(rho: f64, sigma: f64, seed: u64) -> Self {
        SweepGrid {
            rhos: vec![rho],
            sigma_fractions: vec![2.0 * sigma / rho],
            shuffles: 1,
            base_seed: seed,
        }
    }

    /// Every `(ρ, σ, seed)` triple in grid order.
    pub fn points(&self) -> Vec<(f64, f64, u64)> {
        let mut out = Vec::new();
        for &rho in &self.rhos {
            for &f in &self.sigma_fractions {
                let sigma = (f * rho / 2.0).min(rho / 2.0);
                for s in 0..self.shuffles as u64 {
                    out.push((rho, sigma, self.base_seed.wrapping_add(s)));
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.rhos.len() * self.sigma_fractions.len() * self.shuffles
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Runs [`round`] at every grid point and keeps the best outcome under
/// [`RoundingOutcome::better_than`].
pub fn sweep(x: &FractionalMetric, g: &SignedGraph, cm: &ColorModel, eps: Share, grid: &SweepGrid) -> Result<RoundingOutcome> {
    if grid.is_empty() {
        return Err(FccError::InvalidParameter("empty sweep grid".into()));
    }
    let n = g.n();
    let points = grid.points();
    let run = |&(rho, sigma, seed): &(f64, f64, u64)| -> Result<RoundingOutcome> {
        let params = RoundingParams::shuffled(n, eps, rho, sigma, seed)?;
        round(x, g, cm, &params)
    };
    #[cfg(feature = "parallel")]
    let outcomes: Vec<Result<RoundingOutcome>> = {
        use rayon::prelude::*;
        points.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Result<RoundingOutcome>> = points.iter().map(run).collect();

    let mut best: Option<RoundingOutcome> = None;
    for outcome in outcomes {
        let outcome = outcome?;
        if best.as_ref().map_or(true, |b| outcome.better_than(b)) {
            best = Some(outcome);
        }
    }
    Ok(best.expect("grid is nonempty"))
}

/// Approximation factor `max{1/(ε α*), 4 + 1/ε}`; the first term is dropped
/// when `α* = 0`. `None` for `ε = 0`, where no factor is guaranteed.
pub fn approximation_factor(eps: Share, cm: &ColorModel) -> Option<f64> {
    let e = eps.value();
    if e <= 0.0 {
        return None;
    }
    let a = alpha_star(cm);
    let base = 4.0 + 1.0 / e;
    Some(if a > 0.0 { base.max(1.0 / (e * a)) } else { base })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fairness::is_eps_fair;
    use crate::graph::Sign;
    use rand::Rng;

    fn half() -> Share {
        Share::ratio(1, 2)
    }

    fn identity(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn ball_examples() {
        let mut all = FixedBitSet::with_capacity(5);
        all.insert_range(..);
        assert_eq!(ball(&FractionalMetric::zeros(5), 2, &all, 0.3), vec![0, 1, 2, 3, 4]);
        assert_eq!(ball(&FractionalMetric::constant(5, 0.9), 2, &all, 0.3), vec![2]);

        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let x = FractionalMetric::from_fn(6, |_, _| rng.gen::<f64>());
        let mut some = FixedBitSet::with_capacity(6);
        for v in [0, 2, 3, 5] {
            some.insert(v);
        }
        for u in [0, 2, 3, 5] {
            let mut direct = vec![];
            for v in 0..6 {
                if some.contains(v) && (v == u || x.get(u, v) <= 0.4) {
                    direct.push(v);
                }
            }
            assert_eq!(ball(&x, u, &some, 0.4), direct);
        }
    }

    #[test]
    fn zero_metric_on_fair_instance_is_one_cluster() {
        let g = SignedGraph::uniform(4, Sign::Positive);
        let cm = ColorModel::from_labels(&[0, 1, 0, 1], vec![half(), half()]).unwrap();
        let p = RoundingParams::with_order(Share::ratio(1, 100), 0.5, 0.25, identity(4), 0).unwrap();
        let out = round(&FractionalMetric::zeros(4), &g, &cm, &p).unwrap();
        assert_eq!(out.clustering.num_clusters(), 1);
        assert!(out.clustering.degenerate_set().is_empty());
        assert_eq!(out.cost, 0);
        assert_eq!(out.violation, Some(0.0));
    }

    #[test]
    fn far_apart_colored_vertices_all_degenerate() {
        // every ball is {u}; a lone colored vertex has share 1 > (1 + ε) / 2
        let g = SignedGraph::uniform(3, Sign::Negative);
        let cm = ColorModel::from_labels(&[0, 1, 0], vec![half(), half()]).unwrap();
        let p = RoundingParams::with_order(Share::ratio(1, 10), 0.5, 0.25, identity(3), 0).unwrap();
        let out = round(&FractionalMetric::constant(3, 1.0), &g, &cm, &p).unwrap();
        assert_eq!(out.clustering.degenerate_set(), vec![0, 1, 2]);
        assert!(out.centers.is_empty());
        assert_eq!(out.violation, None);
        assert_eq!(out.cost, 0);
    }

    #[test]
    fn singleton_ball_passing_fairness_is_carved() {
        let g = SignedGraph::uniform(2, Sign::Negative);
        let cm = ColorModel::new(2, vec![vec![0, 1]], vec![Share::one()]).unwrap();
        let p = RoundingParams::with_order(Share::zero(), 0.5, 0.25, identity(2), 0).unwrap();
        let out = round(&FractionalMetric::constant(2, 1.0), &g, &cm, &p).unwrap();
        assert!(out.clustering.degenerate_set().is_empty());
        assert_eq!(out.centers, vec![0, 1]);
    }

    fn planted_two_cliques() -> (SignedGraph, ColorModel, Clustering) {
        let planted = Clustering::from_labels(&[0, 0, 0, 0, 1, 1, 1, 1]);
        let g = SignedGraph::from_fn(8, |u, v| planted.same_cluster(u, v));
        let cm = ColorModel::from_labels(&[0, 1, 0, 1, 0, 1, 0, 1], vec![half(), half()]).unwrap();
        (g, cm, planted)
    }

    #[test]
    fn planted_cliques_are_recovered() {
        let (g, cm, planted) = planted_two_cliques();
        let x = FractionalMetric::indicator(&planted);
        for seed in 0..5 {
            let p = RoundingParams::shuffled(8, Share::ratio(1, 100), 0.5, 0.25, seed).unwrap();
            let out = round(&x, &g, &cm, &p).unwrap();
            assert_eq!(out.cost, 0);
            let mut clusters = out.clustering.clusters();
            clusters.sort();
            assert_eq!(clusters, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]);
            let best = sweep(&x, &g, &cm, Share::ratio(1, 100), &SweepGrid::default()).unwrap();
            assert_eq!(best.cost, 0);
        }
    }

    #[test]
    fn first_qualifying_center_in_scan_order_wins() {
        // 0 - 1 close, 2 at distance 0.3 from 1 but 0.5 from 0
        let mut x = FractionalMetric::constant(3, 1.0);
        x.set(0, 1, 0.1);
        x.set(1, 2, 0.3);
        x.set(0, 2, 0.4);
        let g = SignedGraph::uniform(3, Sign::Positive);
        let cm = ColorModel::new(3, vec![vec![0, 1, 2]], vec![Share::one()]).unwrap();
        let from0 = round(&x, &g, &cm, &RoundingParams::with_order(Share::zero(), 0.35, 0.175, vec![0, 1, 2], 0).unwrap()).unwrap();
        assert_eq!(from0.centers[0], 0);
        assert_eq!(from0.clustering.clusters()[0], vec![0, 1]);
        let from1 = round(&x, &g, &cm, &RoundingParams::with_order(Share::zero(), 0.35, 0.175, vec![1, 0, 2], 0).unwrap()).unwrap();
        assert_eq!(from1.centers[0], 1);
        assert_eq!(from1.clustering.clusters()[0], vec![0, 1, 2]);
    }

    #[test]
    fn parameter_validation() {
        assert!(RoundingParams::with_order(Share::zero(), 0.6, 0.1, identity(2), 0).is_err());
        assert!(RoundingParams::with_order(Share::zero(), 0.4, 0.3, identity(2), 0).is_err());
        assert!(RoundingParams::with_order(Share::zero(), 0.4, 0.0, identity(2), 0).is_err());
        assert!(RoundingParams::with_order(Share::zero(), 0.4, 0.2, vec![0, 0], 0).is_err());
        assert!(RoundingParams::with_order(Share::zero(), 0.5, 0.25, identity(2), 0).is_ok());
    }

    #[test]
    fn grid_of_one_matches_round() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let n = 10;
        let g = SignedGraph::from_fn(n, |_, _| rng.gen_bool(0.5));
        let x = FractionalMetric::from_fn(n, |_, _| rng.gen::<f64>() * 0.6);
        let cm = ColorModel::from_labels(&(0..n).map(|v| v % 2).collect::<Vec<_>>(), vec![half(), half()]).unwrap();
        let eps = Share::ratio(1, 5);
        let single = sweep(&x, &g, &cm, eps, &SweepGrid::single(0.4, 0.2, 7)).unwrap();
        let direct = round(&x, &g, &cm, &RoundingParams::shuffled(n, eps, 0.4, 0.2, 7).unwrap()).unwrap();
        assert_eq!(single.clustering, direct.clustering);
        assert_eq!(single.cost, direct.cost);
    }

    #[test]
    fn default_grid_shape() {
        let grid = SweepGrid::default();
        assert_eq!(grid.len(), 1000);
        let points = grid.points();
        assert_eq!(points.len(), 1000);
        assert!(points.iter().all(|&(rho, sigma, _)| sigma > 0.0 && 2.0 * sigma <= rho + 1e-15 && rho <= 0.5));
        assert!(points.contains(&(0.5, 0.25, 0)));
    }

    #[test]
    fn beta_values() {
        let cm = ColorModel::from_labels(&[0, 1], vec![half(), half()]).unwrap();
        assert_eq!(approximation_factor(Share::ratio(1, 100), &cm), Some(104.0));
        assert_eq!(approximation_factor(Share::zero(), &cm), None);
        // α = (0.9, 0.9): α* = 1/9, 1/(ε α*) = 90 > 4 + 10
        let cm = ColorModel::from_labels(&[0, 1], vec![Share::ratio(9, 10); 2]).unwrap();
        let beta = approximation_factor(Share::ratio(1, 10), &cm).unwrap();
        assert!((beta - 90.0).abs() < 1e-9);
        let cm = ColorModel::new(2, vec![vec![0, 1]], vec![Share::one()]).unwrap();
        assert_eq!(approximation_factor(Share::ratio(1, 2), &cm), Some(6.0));
    }

    #[test]
    fn carving_partitions_and_non_singletons_are_fair() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for trial in 0..40 {
            let n = 12;
            let g = SignedGraph::from_fn(n, |_, _| rng.gen_bool(0.5));
            let x = FractionalMetric::from_fn(n, |_, _| rng.gen::<f64>() * 0.5);
            let colors: Vec<usize> = (0..n).map(|_| rng.gen_range(0..3)).collect();
            let mut colors = colors;
            colors[0] = 0;
            colors[1] = 1;
            colors[2] = 2;
            let cm = ColorModel::from_labels(&colors, vec![Share::ratio(2, 5); 3]).unwrap();
            let eps = Share::ratio(trial % 5, 10);
            let p = RoundingParams::shuffled(n, eps, 0.5, 0.25, trial as u64).unwrap();
            let out = round(&x, &g, &cm, &p).unwrap();
            let mut covered = vec![0; n];
            for c in out.clustering.clusters() {
                for &v in &c {
                    covered[v] += 1;
                }
            }
            assert!(covered.iter().all(|&k| k == 1));
            for c in out.clustering.non_degenerate_clusters() {
                assert!(is_eps_fair(&c, &cm, eps));
            }
            if let Some(v) = out.violation {
                assert!(v <= eps.value() + 1e-9);
            }
            assert_eq!(out.centers.len() + out.clustering.degenerate_set().len(), out.clustering.num_clusters());
            let again = round(&x, &g, &cm, &p).unwrap();
            assert_eq!(again.clustering, out.clustering);
        }
    }
}
