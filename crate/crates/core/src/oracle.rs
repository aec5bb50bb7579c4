//! Exact optima by exhaustive partition enumeration, and the random-pivot
//! baseline.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{FccError, Result};
use crate::fairness::{within_bound, ColorModel, Share};
use crate::graph::{Clustering, SignedGraph};

/// Largest instance the brute-force oracle accepts (Bell(12) ≈ 4.2M).
pub const MAX_BRUTE_FORCE_N: usize = 12;

/// Bell numbers `B_0..=B_n` via the Bell triangle.
pub fn bell_numbers(n: usize) -> Vec<u128> {
    let mut out = vec![1u128];
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &r in &row {
            let last = *next.last().unwrap();
            next.push(last + r);
        }
        out.push(next[0]);
        row = next;
    }
    out.truncate(n + 1);
    out
}

/// Set partitions of `0..n` as restricted-growth strings, in lexicographic
/// order: `a[0] = 0` and `a[i] <= 1 + max(a[..i])`.
#[derive(Debug, Clone)]
pub struct RestrictedGrowth {
    a: Vec<usize>,
    /// `max(a[..=i]) + 1` for each prefix.
    reach: Vec<usize>,
    started: bool,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize) -> Self {
        RestrictedGrowth {
            a: vec![0; n],
            reach: vec![1; n],
            started: false,
            done: false,
        }
    }

    /// Advances to the next string; `None` once exhausted.
    pub fn next_partition(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.a);
        }
        let n = self.a.len();
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.a[i] < self.reach[i - 1] {
                self.a[i] += 1;
                self.reach[i] = self.reach[i - 1].max(self.a[i] + 1);
                for j in i + 1..n {
                    self.a[j] = 0;
                    self.reach[j] = self.reach[i];
                }
                return Some(&self.a);
            }
        }
        self.done = true;
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Every cluster satisfies `|V_i ∩ C| <= α_i |C|` exactly.
    FairStrict,
    Unfair,
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub optimum: u64,
    pub witness: Clustering,
    /// Partitions examined.
    pub examined: u64,
    /// Partitions satisfying the mode's constraints.
    pub feasible_count: u64,
    pub mode: OracleMode,
}

struct Search<'a> {
    g: &'a SignedGraph,
    colors: Option<(&'a ColorModel, Vec<Vec<usize>>)>,
    n: usize,
    labels: Vec<usize>,
    sizes: Vec<usize>,
    /// counts[block][color]
    counts: Vec<Vec<usize>>,
    best: Option<(u64, Vec<usize>)>,
    examined: u64,
    feasible: u64,
}

impl Search<'_> {
    fn leaf_is_fair(&self, blocks: usize) -> bool {
        let Some((cm, _)) = &self.colors else { return true };
        (0..blocks).all(|b| {
            self.counts[b]
                .iter()
                .zip(cm.alphas())
                .all(|(&count, &alpha)| within_bound(count, self.sizes[b], alpha, Share::zero()))
        })
    }

    fn place(&mut self, v: usize, blocks: usize, cost: u64) {
        if v == self.n {
            self.examined += 1;
            if self.leaf_is_fair(blocks) {
                self.feasible += 1;
                if self.best.as_ref().map_or(true, |(c, _)| cost < *c) {
                    self.best = Some((cost, self.labels.clone()));
                }
            }
            return;
        }
        for b in 0..=blocks {
            let mut delta = 0;
            for u in 0..v {
                let together = self.labels[u] == b;
                if together != self.g.is_positive(u, v) {
                    delta += 1;
                }
            }
            self.labels[v] = b;
            self.sizes[b] += 1;
            if let Some((_, colors_of)) = &self.colors {
                for &i in &colors_of[v] {
                    self.counts[b][i] += 1;
                }
            }
            self.place(v + 1, blocks.max(b + 1), cost + delta);
            self.sizes[b] -= 1;
            if let Some((_, colors_of)) = &self.colors {
                for &i in &colors_of[v] {
                    self.counts[b][i] -= 1;
                }
            }
        }
    }
}

/// Exact optimum over all set partitions, enumerated in restricted-growth
/// order; the witness is the first optimal partition in that order.
pub fn brute_force_optimum(g: &SignedGraph, cm: Option<&ColorModel>, mode: OracleMode) -> Result<OracleResult> {
    let n = g.n();
    if n > MAX_BRUTE_FORCE_N {
        return Err(FccError::TooLarge { n, limit: MAX_BRUTE_FORCE_N });
    }
    let colors = match mode {
        OracleMode::Unfair => None,
        OracleMode::FairStrict => {
            let cm = cm.ok_or_else(|| FccError::InvalidParameter("fair-strict mode needs a color model".into()))?;
            if cm.n() != n {
                return Err(FccError::VertexMismatch { expected: n, found: cm.n() });
            }
            let colors_of = (0..n).map(|v| cm.colors_of(v)).collect();
            Some((cm, colors_of))
        }
    };
    let ell = colors.as_ref().map_or(0, |(cm, _)| cm.num_colors());
    let mut search = Search {
        g,
        colors,
        n,
        labels: vec![0; n],
        sizes: vec![0; n.max(1)],
        counts: vec![vec![0; ell]; n.max(1)],
        best: None,
        examined: 0,
        feasible: 0,
    };
    search.place(0, 0, 0);
    let (optimum, labels) = search.best.ok_or(FccError::FairInfeasible)?;
    Ok(OracleResult {
        optimum,
        witness: Clustering::from_labels(&labels),
        examined: search.examined,
        feasible_count: search.feasible,
        mode,
    })
}

/// Random-pivot clustering: repeatedly take a uniformly random unclustered
/// vertex and cluster it with its unclustered positive neighbors.
pub fn pivot(g: &SignedGraph, seed: u64) -> Clustering {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut labels = vec![usize::MAX; n];
    let mut next = 0;
    for &p in &order {
        if labels[p] != usize::MAX {
            continue;
        }
        labels[p] = next;
        for v in 0..n {
            if v != p && labels[v] == usize::MAX && g.is_positive(p, v) {
                labels[v] = next;
            }
        }
        next += 1;
    }
    Clustering::from_labels(&labels)
}
