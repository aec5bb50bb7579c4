//! Reference computations written independently of the library: plain
//! recursion over set partitions, integer fairness checks, and an O(n³)
//! triangle scan.
#![allow(dead_code)]

use fair_cc::{Clustering, ColorModel, FractionalMetric, SignedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn cost_from_labels(g: &SignedGraph, labels: &[usize]) -> u64 {
    let n = g.n();
    let mut cost = 0;
    for u in 0..n {
        for v in u + 1..n {
            let together = labels[u] == labels[v];
            if together != g.is_positive(u, v) {
                cost += 1;
            }
        }
    }
    cost
}

/// `|C ∩ V_i| <= α_i |C|` for every block, with `α_i = p_i / q_i` given as
/// integer pairs.
pub fn strictly_fair(labels: &[usize], color_sets: &[Vec<usize>], alphas: &[(i64, i64)]) -> bool {
    let blocks = labels.iter().max().map_or(0, |m| m + 1);
    for b in 0..blocks {
        let size = labels.iter().filter(|&&l| l == b).count() as i64;
        for (set, &(p, q)) in color_sets.iter().zip(alphas) {
            let count = set.iter().filter(|&&v| labels[v] == b).count() as i64;
            if count * q > p * size {
                return false;
            }
        }
    }
    true
}

/// Minimum cost over all set partitions, optionally restricted to strictly
/// fair ones. Returns `None` when nothing is feasible.
pub fn reference_optimum(g: &SignedGraph, fair: Option<(&[Vec<usize>], &[(i64, i64)])>) -> Option<u64> {
    fn go(
        v: usize,
        labels: &mut Vec<usize>,
        blocks: usize,
        g: &SignedGraph,
        fair: Option<(&[Vec<usize>], &[(i64, i64)])>,
        best: &mut Option<u64>,
    ) {
        if v == g.n() {
            if fair.map_or(true, |(sets, alphas)| strictly_fair(labels, sets, alphas)) {
                let c = cost_from_labels(g, labels);
                if best.map_or(true, |b| c < b) {
                    *best = Some(c);
                }
            }
            return;
        }
        for b in 0..=blocks {
            labels.push(b);
            go(v + 1, labels, blocks.max(b + 1), g, fair, best);
            labels.pop();
        }
    }
    let mut best = None;
    go(0, &mut Vec::new(), 0, g, fair, &mut best);
    best
}

/// Largest `x_uw - x_uv - x_vw` over all ordered triples.
pub fn triangle_excess(x: &FractionalMetric) -> f64 {
    let n = x.n();
    let mut worst = 0.0f64;
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if u != v && v != w && u != w {
                    worst = worst.max(x.get(u, w) - x.get(u, v) - x.get(v, w));
                }
            }
        }
    }
    worst
}

/// Non-degenerate clusters satisfy `count <= (1 + ε) α |C|` for
/// `ε = ep / eq`, `α = ap / aq`, checked in integers.
pub fn eps_fair_exact(c: &Clustering, cm: &ColorModel, (ep, eq): (i64, i64), alphas: &[(i64, i64)]) -> bool {
    c.non_degenerate_clusters().iter().all(|cluster| {
        let size = cluster.len() as i64;
        cm.classes().iter().zip(alphas).all(|(class, &(ap, aq))| {
            let count = cluster.iter().filter(|&&v| class.contains(v)).count() as i64;
            count * eq * aq <= (eq + ep) * ap * size
        })
    })
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> SignedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SignedGraph::from_fn(n, |_, _| rng.gen_bool(p))
}

/// Two disjoint, equal-size colors in random positions.
pub fn balanced_colors(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut labels: Vec<usize> = (0..n).map(|v| v % 2).collect();
    labels.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
    labels
}

pub fn color_sets(labels: &[usize], ell: usize) -> Vec<Vec<usize>> {
    let mut sets = vec![Vec::new(); ell];
    for (v, &c) in labels.iter().enumerate() {
        sets[c].push(v);
    }
    sets
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}
