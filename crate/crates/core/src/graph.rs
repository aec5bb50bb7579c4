//! Complete signed graphs, clusterings, and the correlation-cost objective.

use fixedbitset::FixedBitSet;

use crate::error::{FccError, Result};

/// Number of unordered pairs on `n` vertices.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the unordered pair `{u, v}` (u != v) in lexicographic order.
#[inline]
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u != v && u < n && v < n);
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Iterates all pairs `(u, v)` with `u < v` in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

/// A complete graph whose every unordered pair carries a sign.
///
/// Signs live in a packed bit-matrix over the upper triangle; a set bit is a
/// positive edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedGraph {
    n: usize,
    positive: FixedBitSet,
}

impl SignedGraph {
    /// All pairs share the same sign.
    pub fn uniform(n: usize, sign: Sign) -> Self {
        let mut positive = FixedBitSet::with_capacity(pair_count(n));
        if sign == Sign::Positive {
            positive.insert_range(..);
        }
        SignedGraph { n, positive }
    }

    pub fn from_fn(n: usize, mut is_positive: impl FnMut(usize, usize) -> bool) -> Self {
        let mut positive = FixedBitSet::with_capacity(pair_count(n));
        for (idx, (u, v)) in pairs(n).enumerate() {
            if is_positive(u, v) {
                positive.insert(idx);
            }
        }
        SignedGraph { n, positive }
    }

    /// Listed pairs are positive, every other pair negative.
    pub fn from_positive_pairs(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SignedGraph::uniform(n, Sign::Negative);
        for &(u, v) in edges {
            g.set_sign(u, v, Sign::Positive)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pair_count(&self) -> usize {
        pair_count(self.n)
    }

    pub fn positive_count(&self) -> usize {
        self.positive.count_ones(..)
    }

    pub fn negative_count(&self) -> usize {
        self.pair_count() - self.positive_count()
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(FccError::InvalidPair(u, v));
        }
        Ok(())
    }

    pub fn set_sign(&mut self, u: usize, v: usize, sign: Sign) -> Result<()> {
        self.check_pair(u, v)?;
        self.positive
            .set(pair_index(self.n, u, v), sign == Sign::Positive);
        Ok(())
    }

    /// Panics if `u == v` or either endpoint is out of range.
    #[inline]
    pub fn is_positive(&self, u: usize, v: usize) -> bool {
        assert!(u != v && u < self.n && v < self.n, "invalid pair ({u}, {v})");
        self.positive.contains(pair_index(self.n, u, v))
    }

    pub fn sign(&self, u: usize, v: usize) -> Sign {
        if self.is_positive(u, v) {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// Sign of the pair at lexicographic position `idx`.
    #[inline]
    pub fn is_positive_at(&self, idx: usize) -> bool {
        self.positive.contains(idx)
    }

    /// Every sign flipped.
    pub fn complement(&self) -> Self {
        let mut positive = self.positive.clone();
        positive.toggle_range(..);
        SignedGraph { n: self.n, positive }
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in
    /// the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        SignedGraph::from_fn(vertices.len(), |a, b| {
            self.is_positive(vertices[a], vertices[b])
        })
    }
}

/// A partition of `0..n` into clusters, with the degenerate singleton set
/// distinguished from ordinary clusters.
///
/// Cluster ids are dense (`0..num_clusters()`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clustering {
    assignment: Vec<usize>,
    degenerate: FixedBitSet,
}

impl Clustering {
    /// Builds a clustering from arbitrary labels, renumbering clusters in
    /// order of first appearance. No vertex is degenerate.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let assignment = labels
            .iter()
            .map(|&l| {
                let next = remap.len();
                *remap.entry(l).or_insert(next)
            })
            .collect::<Vec<_>>();
        let n = assignment.len();
        Clustering {
            assignment,
            degenerate: FixedBitSet::with_capacity(n),
        }
    }

    /// Clusters are given explicitly and numbered in order; `degenerate`
    /// vertices are appended as singleton clusters in ascending order.
    pub fn from_clusters(n: usize, clusters: &[Vec<usize>], degenerate: &[usize]) -> Result<Self> {
        let mut assignment = vec![usize::MAX; n];
        let mut mark = FixedBitSet::with_capacity(n);
        let mut next = 0;
        for cluster in clusters {
            if cluster.is_empty() {
                return Err(FccError::InvalidParameter("empty cluster".into()));
            }
            for &v in cluster {
                if v >= n || assignment[v] != usize::MAX {
                    return Err(FccError::InvalidParameter(format!(
                        "vertex {v} is out of range or assigned twice"
                    )));
                }
                assignment[v] = next;
            }
            next += 1;
        }
        let mut degenerate = degenerate.to_vec();
        degenerate.sort_unstable();
        for &v in &degenerate {
            if v >= n || assignment[v] != usize::MAX {
                return Err(FccError::InvalidParameter(format!(
                    "vertex {v} is out of range or assigned twice"
                )));
            }
            assignment[v] = next;
            mark.insert(v);
            next += 1;
        }
        if let Some(v) = assignment.iter().position(|&c| c == usize::MAX) {
            return Err(FccError::InvalidParameter(format!(
                "vertex {v} is not covered by the clustering"
            )));
        }
        Ok(Clustering {
            assignment,
            degenerate: mark,
        })
    }

    pub fn single_cluster(n: usize) -> Self {
        Clustering::from_labels(&vec![0; n])
    }

    pub fn all_singletons(n: usize) -> Self {
        Clustering::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    #[inline]
    pub fn cluster_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn num_clusters(&self) -> usize {
        self.assignment.iter().max().map_or(0, |m| m + 1)
    }

    /// Whether `v` was emitted as a degenerate singleton.
    pub fn is_degenerate(&self, v: usize) -> bool {
        self.degenerate.contains(v)
    }

    pub fn degenerate_set(&self) -> Vec<usize> {
        self.degenerate.ones().collect()
    }

    /// Member lists indexed by cluster id, each sorted ascending.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_clusters()];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Clusters that are not degenerate singletons.
    pub fn non_degenerate_clusters(&self) -> Vec<Vec<usize>> {
        self.clusters()
            .into_iter()
            .filter(|c| !(c.len() == 1 && self.degenerate.contains(c[0])))
            .collect()
    }

    #[inline]
    pub fn same_cluster(&self, u: usize, v: usize) -> bool {
        self.assignment[u] == self.assignment[v]
    }
}

fn check_vertices(g: &SignedGraph, c: &Clustering) -> Result<()> {
    if g.n() != c.n() {
        return Err(FccError::VertexMismatch {
            expected: g.n(),
            found: c.n(),
        });
    }
    Ok(())
}

/// Number of disagreements: negative pairs inside clusters plus positive
/// pairs across clusters.
pub fn correlation_cost(g: &SignedGraph, c: &Clustering) -> Result<u64> {
    check_vertices(g, c)?;
    // |E+| minus the positive pairs kept together, plus negatives kept together.
    let mut cost = g.positive_count() as u64;
    for members in c.clusters() {
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if g.is_positive(u, v) {
                    cost -= 1;
                } else {
                    cost += 1;
                }
            }
        }
    }
    Ok(cost)
}

/// Disagreement count restricted to the pairs in `subset`.
///
/// Pairs are unordered; a pair listed twice is counted twice.
pub fn correlation_cost_on_subset(
    g: &SignedGraph,
    c: &Clustering,
    subset: &[(usize, usize)],
) -> Result<u64> {
    check_vertices(g, c)?;
    let mut cost = 0;
    for &(u, v) in subset {
        g.check_pair(u, v)?;
        if g.is_positive(u, v) != c.same_cluster(u, v) {
            cost += 1;
        }
    }
    Ok(cost)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Per-pair recount, independent of the cluster-walk in `correlation_cost`.
    fn recount(g: &SignedGraph, labels: &[usize]) -> u64 {
        let n = labels.len();
        let mut cost = 0;
        for u in 0..n {
            for v in 0..n {
                if u < v {
                    let together = labels[u] == labels[v];
                    let pos = g.is_positive(u, v);
                    if together && !pos || !together && pos {
                        cost += 1;
                    }
                }
            }
        }
        cost
    }

    fn random_instance(n: usize, seed: u64) -> (SignedGraph, Vec<usize>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = SignedGraph::from_fn(n, |_, _| rng.gen_bool(0.5));
        let labels = (0..n).map(|_| rng.gen_range(0..3)).collect();
        (g, labels)
    }

    #[test]
    fn pair_index_is_lexicographic() {
        for n in 2..8 {
            for (idx, (u, v)) in pairs(n).enumerate() {
                assert_eq!(pair_index(n, u, v), idx);
                assert_eq!(pair_index(n, v, u), idx);
            }
        }
    }

    #[test]
    fn all_positive_costs() {
        let g = SignedGraph::uniform(4, Sign::Positive);
        assert_eq!(g.positive_count(), 6);
        assert_eq!(correlation_cost(&g, &Clustering::single_cluster(4)).unwrap(), 0);
        assert_eq!(correlation_cost(&g, &Clustering::all_singletons(4)).unwrap(), 6);
    }

    #[test]
    fn cost_matches_recount_on_random_instances() {
        for seed in 0..20 {
            let (g, labels) = random_instance(6, seed);
            let c = Clustering::from_labels(&labels);
            assert_eq!(correlation_cost(&g, &c).unwrap(), recount(&g, &labels));
        }
    }

    #[test]
    fn mismatched_vertex_sets_are_rejected() {
        let g = SignedGraph::uniform(4, Sign::Positive);
        let c = Clustering::single_cluster(5);
        assert!(matches!(
            correlation_cost(&g, &c),
            Err(FccError::VertexMismatch { expected: 4, found: 5 })
        ));
    }

    #[test]
    fn subset_cost_edge_cases() {
        let (g, labels) = random_instance(6, 7);
        let c = Clustering::from_labels(&labels);
        assert_eq!(correlation_cost_on_subset(&g, &c, &[]).unwrap(), 0);
        let all: Vec<_> = pairs(6).collect();
        assert_eq!(
            correlation_cost_on_subset(&g, &c, &all).unwrap(),
            correlation_cost(&g, &c).unwrap()
        );
        assert!(matches!(
            correlation_cost_on_subset(&g, &c, &[(2, 2)]),
            Err(FccError::InvalidPair(2, 2))
        ));
        assert!(correlation_cost_on_subset(&g, &c, &[(0, 9)]).is_err());
    }

    #[test]
    fn subset_cost_on_edges_incident_to_one_cluster() {
        let (g, labels) = random_instance(6, 11);
        let c = Clustering::from_labels(&labels);
        let target = labels[0];
        let incident: Vec<_> = pairs(6)
            .filter(|&(u, v)| labels[u] == target || labels[v] == target)
            .collect();
        let brute = incident
            .iter()
            .filter(|&&(u, v)| g.is_positive(u, v) != (labels[u] == labels[v]))
            .count() as u64;
        assert_eq!(correlation_cost_on_subset(&g, &c, &incident).unwrap(), brute);
    }

    #[test]
    fn from_clusters_validates_partition() {
        assert!(Clustering::from_clusters(3, &[vec![0, 1]], &[2]).is_ok());
        assert!(Clustering::from_clusters(3, &[vec![0, 1]], &[]).is_err());
        assert!(Clustering::from_clusters(3, &[vec![0, 1], vec![1, 2]], &[]).is_err());
        let c = Clustering::from_clusters(4, &[vec![3, 0]], &[2, 1]).unwrap();
        assert_eq!(c.degenerate_set(), vec![1, 2]);
        assert_eq!(c.non_degenerate_clusters(), vec![vec![0, 3]]);
        assert_eq!(c.num_clusters(), 3);
    }

    proptest! {
        #[test]
        fn relabelling_preserves_cost(seed in 0u64..1000, shift in 1usize..50) {
            let (g, labels) = random_instance(7, seed);
            let a = Clustering::from_labels(&labels);
            let relabelled: Vec<_> = labels.iter().map(|l| (l + shift) * 7 % 101).collect();
            let b = Clustering::from_labels(&relabelled);
            prop_assert_eq!(correlation_cost(&g, &a).unwrap(), correlation_cost(&g, &b).unwrap());
        }

        #[test]
        fn complement_duality(seed in 0u64..1000) {
            let (g, labels) = random_instance(7, seed);
            let c = Clustering::from_labels(&labels);
            let total = g.pair_count() as u64;
            prop_assert_eq!(
                correlation_cost(&g.complement(), &c).unwrap(),
                total - correlation_cost(&g, &c).unwrap()
            );
        }

        #[test]
        fn disjoint_subsets_add(seed in 0u64..1000, split in 0usize..21) {
            let (g, labels) = random_instance(7, seed);
            let c = Clustering::from_labels(&labels);
            let all: Vec<_> = pairs(7).collect();
            let (f1, f2) = all.split_at(split);
            prop_assert_eq!(
                correlation_cost_on_subset(&g, &c, &all).unwrap(),
                correlation_cost_on_subset(&g, &c, f1).unwrap()
                    + correlation_cost_on_subset(&g, &c, f2).unwrap()
            );
        }
    }
}
