use std::collections::BTreeMap;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{FccError, Result};
use crate::fairness::ColorModel;

/// Stratum label of each vertex: its color names joined in class order.
pub fn color_combinations(cm: &ColorModel) -> Vec<String> {
    (0..cm.n())
        .map(|v| {
            cm.colors_of(v)
                .into_iter()
                .map(|i| cm.classes()[i].name.as_str())
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect()
}

/// Stratum sizes for a sample of `k`: proportional allocation with
/// largest-remainder rounding. Ties in the remainder go to the larger
/// stratum, then to the earlier one.
pub fn allocate(sizes: &[usize], k: usize) -> Vec<usize> {
    let total: usize = sizes.iter().sum();
    if total == 0 {
        return vec![0; sizes.len()];
    }
    let k = k.min(total);
    let nonempty = sizes.iter().filter(|&&s| s > 0).count();
    if k < nonempty {
        log::warn!("sample of {k} cannot cover {nonempty} strata; taking one from each of the largest");
        let mut by_size: Vec<usize> = (0..sizes.len()).filter(|&i| sizes[i] > 0).collect();
        by_size.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));
        let mut out = vec![0; sizes.len()];
        for &i in by_size.iter().take(k) {
            out[i] = 1;
        }
        return out;
    }
    let mut out: Vec<usize> = sizes.iter().map(|&s| s * k / total).collect();
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    // remainder of s*k/total is (s*k) mod total
    order.sort_by(|&a, &b| {
        let ra = sizes[a] * k % total;
        let rb = sizes[b] * k % total;
        rb.cmp(&ra).then(sizes[b].cmp(&sizes[a])).then(a.cmp(&b))
    });
    let mut left = k - out.iter().sum::<usize>();
    for &i in order.iter().cycle() {
        if left == 0 {
            break;
        }
        if out[i] < sizes[i] {
            out[i] += 1;
            left -= 1;
        }
    }
    out
}

/// Sample of `k` vertices stratified on `labels`, sorted ascending.
/// Strata are visited in label order and sampled uniformly without
/// replacement.
pub fn stratified_subsample(labels: &[String], k: usize, seed: u64) -> Result<Vec<usize>> {
    let n = labels.len();
    if k > n {
        return Err(FccError::InvalidParameter(format!("sample size {k} exceeds {n} vertices")));
    }
    let mut strata: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (v, l) in labels.iter().enumerate() {
        strata.entry(l.as_str()).or_default().push(v);
    }
    let sizes: Vec<usize> = strata.values().map(Vec::len).collect();
    let quota = allocate(&sizes, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(k);
    for (members, &take) in strata.values().zip(&quota) {
        for i in index::sample(&mut rng, members.len(), take) {
            out.push(members[i]);
        }
    }
    out.sort_unstable();
    Ok(out)
}
