//! Planted fair-cluster instances with sign noise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{FccError, Result};
use crate::graph::{Clustering, SignedGraph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedSpec {
    pub n: usize,
    pub clusters: usize,
    pub colors: usize,
    /// Probability of flipping each pair's sign.
    pub noise: f64,
    pub seed: u64,
}

impl Default for PlantedSpec {
    fn default() -> Self {
        PlantedSpec { n: 50, clusters: 5, colors: 2, noise: 0.2, seed: 0 }
    }
}

impl std::str::FromStr for PlantedSpec {
    type Err = FccError;

    /// Comma-separated `key=value` overrides of the defaults, e.g.
    /// `n=50,clusters=5,colors=2,noise=0.2,seed=3`.
    fn from_str(s: &str) -> Result<Self> {
        let mut spec = PlantedSpec::default();
        for kv in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| FccError::InvalidParameter(format!("expected key=value, found '{kv}'")))?;
            let bad = || FccError::InvalidParameter(format!("bad value for '{k}': '{v}'"));
            match k.trim() {
                "n" => spec.n = v.parse().map_err(|_| bad())?,
                "clusters" | "k" => spec.clusters = v.parse().map_err(|_| bad())?,
                "colors" => spec.colors = v.parse().map_err(|_| bad())?,
                "noise" => spec.noise = v.parse().map_err(|_| bad())?,
                "seed" => spec.seed = v.parse().map_err(|_| bad())?,
                other => return Err(FccError::InvalidParameter(format!("unknown key '{other}'"))),
            }
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub graph: SignedGraph,
    /// Color index of each vertex.
    pub colors: Vec<usize>,
    pub planted: Clustering,
}

/// Vertex `v` sits in cluster `v mod clusters` with color
/// `(v div clusters) mod colors`, so each cluster cycles through the colors.
/// Pairs are positive inside planted clusters, negative across, and each
/// sign is flipped independently with probability `noise`.
pub fn planted_instance(spec: &PlantedSpec) -> Result<PlantedInstance> {
    if spec.n == 0 || spec.clusters == 0 || spec.colors == 0 || !(0.0..=1.0).contains(&spec.noise) {
        return Err(FccError::InvalidParameter(format!("invalid planted instance {spec:?}")));
    }
    let labels: Vec<usize> = (0..spec.n).map(|v| v % spec.clusters).collect();
    let colors: Vec<usize> = (0..spec.n).map(|v| (v / spec.clusters) % spec.colors).collect();
    let planted = Clustering::from_labels(&labels);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let graph = SignedGraph::from_fn(spec.n, |u, v| {
        let together = labels[u] == labels[v];
        if rng.gen_bool(spec.noise) {
            !together
        } else {
            together
        }
    });
    Ok(PlantedInstance { graph, colors, planted })
}
