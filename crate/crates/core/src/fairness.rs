//! Color classes, fairness parameters, and fairness metrics on clusterings.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{FccError, Result};
use crate::graph::Clustering;

/// Slack applied to fairness comparisons when a parameter is only known as
/// a float.
pub const FLOAT_SLACK: f64 = 1e-9;

/// A nonnegative parameter (a fraction `α_i` or a violation budget `ε`).
///
/// Values parsed from decimal or `p/q` text keep an exact rational form so
/// that boundary comparisons are decided by integer cross-multiplication.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Share {
    exact: Option<Ratio<i64>>,
    value: f64,
}

impl Share {
    pub fn ratio(numer: i64, denom: i64) -> Self {
        let r = Ratio::new(numer, denom);
        Share {
            exact: Some(r),
            value: *r.numer() as f64 / *r.denom() as f64,
        }
    }

    pub fn from_f64(value: f64) -> Self {
        Share { exact: None, value }
    }

    pub fn zero() -> Self {
        Share::ratio(0, 1)
    }

    pub fn one() -> Self {
        Share::ratio(1, 1)
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exact(&self) -> Option<Ratio<i64>> {
        self.exact
    }

    /// `self * factor`, exact when both operands are.
    pub fn scale(&self, factor: Share) -> Share {
        match (self.exact, factor.exact) {
            (Some(a), Some(b)) => match (a.numer().checked_mul(*b.numer()), a.denom().checked_mul(*b.denom())) {
                (Some(n), Some(d)) => Share::ratio(n, d),
                _ => Share::from_f64(self.value * factor.value),
            },
            _ => Share::from_f64(self.value * factor.value),
        }
    }

    /// `self / other`, exact when both operands are.
    pub fn div(&self, other: Share) -> Share {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) if *b.numer() != 0 => {
                match (a.numer().checked_mul(*b.denom()), a.denom().checked_mul(*b.numer())) {
                    (Some(n), Some(d)) => Share::ratio(n, d),
                    _ => Share::from_f64(self.value / other.value),
                }
            }
            _ => Share::from_f64(self.value / other.value),
        }
    }

    pub fn min(self, other: Share) -> Share {
        if other.value < self.value {
            other
        } else {
            self
        }
    }
}

impl From<f64> for Share {
    fn from(value: f64) -> Self {
        Share::from_f64(value)
    }
}

impl fmt::Display for Share {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Some(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            None => write!(f, "{}", self.value),
        }
    }
}

impl FromStr for Share {
    type Err = FccError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || FccError::InvalidParameter(format!("cannot parse '{s}' as a number"));
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(Share::ratio(n, d));
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let digits_ok = |t: &str| t.chars().all(|c| c.is_ascii_digit());
        let int_digits = int.strip_prefix('-').unwrap_or(int);
        if digits_ok(int_digits) && digits_ok(frac) && !(int_digits.is_empty() && frac.is_empty()) && frac.len() <= 15 {
            let denom = 10i64.pow(frac.len() as u32);
            let whole: i64 = if int_digits.is_empty() { 0 } else { int_digits.parse().map_err(|_| bad())? };
            let part: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
            let mut numer = whole.checked_mul(denom).and_then(|w| w.checked_add(part)).ok_or_else(bad)?;
            if int.starts_with('-') {
                numer = -numer;
            }
            return Ok(Share::ratio(numer, denom));
        }
        s.parse::<f64>().map(Share::from_f64).map_err(|_| bad())
    }
}

impl Serialize for Share {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Share {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Decides `count <= (1 + eps) * alpha * size`.
pub fn within_bound(count: usize, size: usize, alpha: Share, eps: Share) -> bool {
    if let (Some(a), Some(e)) = (alpha.exact, eps.exact) {
        // count * e.den * a.den <= (e.den + e.num) * a.num * size
        let lhs = count as i128 * *e.denom() as i128 * *a.denom() as i128;
        let rhs = (*e.denom() as i128 + *e.numer() as i128) * *a.numer() as i128 * size as i128;
        return lhs <= rhs;
    }
    count as f64 <= (1.0 + eps.value) * alpha.value * size as f64 + FLOAT_SLACK * size as f64
}

#[derive(Debug, Clone)]
pub struct ColorClass {
    pub name: String,
    members: FixedBitSet,
}

impl ColorClass {
    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(v)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }
}

/// `ℓ` possibly-overlapping color classes over `0..n` with one upper-bound
/// fraction each.
#[derive(Debug, Clone)]
pub struct ColorModel {
    n: usize,
    classes: Vec<ColorClass>,
    alphas: Vec<Share>,
}

impl ColorModel {
    pub fn new(n: usize, members: Vec<Vec<usize>>, alphas: Vec<Share>) -> Result<Self> {
        let names = (0..members.len()).map(|i| format!("color{i}")).collect();
        ColorModel::with_names(n, names, members, alphas)
    }

    pub fn with_names(n: usize, names: Vec<String>, members: Vec<Vec<usize>>, alphas: Vec<Share>) -> Result<Self> {
        if members.is_empty() {
            return Err(FccError::EmptyColorModel);
        }
        if members.len() != alphas.len() || members.len() != names.len() {
            return Err(FccError::InvalidParameter(format!(
                "{} color classes but {} alphas",
                members.len(),
                alphas.len()
            )));
        }
        let mut classes = Vec::with_capacity(members.len());
        for (name, list) in names.into_iter().zip(members) {
            let mut bits = FixedBitSet::with_capacity(n);
            for v in list {
                if v >= n {
                    return Err(FccError::InvalidParameter(format!("vertex {v} out of range in color '{name}'")));
                }
                bits.insert(v);
            }
            if bits.count_ones(..) == 0 {
                return Err(FccError::InvalidParameter(format!("color '{name}' is empty")));
            }
            classes.push(ColorClass { name, members: bits });
        }
        for a in &alphas {
            if !(a.value() > 0.0 && a.value() <= 1.0) {
                return Err(FccError::InvalidParameter(format!("alpha {a} outside (0, 1]")));
            }
        }
        Ok(ColorModel { n, classes, alphas })
    }

    /// One color per label value; `labels[v]` is the color of `v`.
    pub fn from_labels(labels: &[usize], alphas: Vec<Share>) -> Result<Self> {
        let ell = labels.iter().max().map_or(0, |m| m + 1);
        let mut members = vec![Vec::new(); ell];
        for (v, &c) in labels.iter().enumerate() {
            members[c].push(v);
        }
        ColorModel::new(labels.len(), members, alphas)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_colors(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ColorClass] {
        &self.classes
    }

    pub fn alphas(&self) -> &[Share] {
        &self.alphas
    }

    pub fn alpha_min(&self) -> f64 {
        self.alphas.iter().map(Share::value).fold(f64::INFINITY, f64::min)
    }

    /// Same classes, different fractions.
    pub fn with_alphas(&self, alphas: Vec<Share>) -> Result<Self> {
        let names = self.classes.iter().map(|c| c.name.clone()).collect();
        let members = self.classes.iter().map(|c| c.members().collect()).collect();
        ColorModel::with_names(self.n, names, members, alphas)
    }

    /// Restriction to `vertices`, relabelled to `0..vertices.len()`. Colors
    /// left empty by the restriction are dropped.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let mut names = Vec::new();
        let mut members = Vec::new();
        let mut alphas = Vec::new();
        for (class, &alpha) in self.classes.iter().zip(&self.alphas) {
            let list: Vec<usize> = vertices
                .iter()
                .enumerate()
                .filter(|(_, &v)| class.contains(v))
                .map(|(i, _)| i)
                .collect();
            if !list.is_empty() {
                names.push(class.name.clone());
                members.push(list);
                alphas.push(alpha);
            }
        }
        ColorModel::with_names(vertices.len(), names, members, alphas)
    }

    /// Colors of `v`, by index.
    pub fn colors_of(&self, v: usize) -> Vec<usize> {
        (0..self.classes.len()).filter(|&i| self.classes[i].contains(v)).collect()
    }

    /// Per-color counts inside `cluster`.
    pub fn counts(&self, cluster: &[usize]) -> Vec<usize> {
        self.classes
            .iter()
            .map(|c| cluster.iter().filter(|&&v| c.contains(v)).count())
            .collect()
    }

    /// Per-color counts inside a cluster given as a bitset (popcounts).
    pub fn counts_bits(&self, cluster: &FixedBitSet) -> Vec<usize> {
        self.classes
            .iter()
            .map(|c| c.members.intersection_count(cluster))
            .collect()
    }
}

/// `max_i (1 - α_i) / α_i`.
pub fn alpha_star(cm: &ColorModel) -> f64 {
    cm.alphas
        .iter()
        .map(|a| (1.0 - a.value()) / a.value())
        .fold(0.0, f64::max)
}

/// Fractions `α_i = p_i / Σ_j p_j`.
pub fn proportional_alphas(p: &[Share]) -> Result<Vec<Share>> {
    if p.is_empty() {
        return Err(FccError::EmptyColorModel);
    }
    if let Some(bad) = p.iter().find(|x| x.value() <= 0.0) {
        return Err(FccError::InvalidParameter(format!("proportion {bad} is not positive")));
    }
    let total = if p.iter().all(|x| x.exact().is_some()) {
        let sum = p.iter().map(|x| x.exact().unwrap()).fold(Ratio::from_integer(0), |acc, r| acc + r);
        Share::ratio(*sum.numer(), *sum.denom())
    } else {
        Share::from_f64(p.iter().map(Share::value).sum())
    };
    Ok(p.iter().map(|x| x.div(total)).collect())
}

/// `|V_i ∩ C| <= (1 + eps) α_i |C|` for every color.
pub fn is_eps_fair(cluster: &[usize], cm: &ColorModel, eps: Share) -> bool {
    let size = cluster.len();
    cm.counts(cluster)
        .into_iter()
        .zip(&cm.alphas)
        .all(|(count, &alpha)| within_bound(count, size, alpha, eps))
}

/// Bitset form of [`is_eps_fair`].
pub fn is_eps_fair_bits(cluster: &FixedBitSet, cm: &ColorModel, eps: Share) -> bool {
    let size = cluster.count_ones(..);
    cm.counts_bits(cluster)
        .into_iter()
        .zip(&cm.alphas)
        .all(|(count, &alpha)| within_bound(count, size, alpha, eps))
}

/// Largest relative overshoot `|V_i ∩ C| / (α_i |C|) - 1` over non-degenerate
/// clusters, floored at 0. `None` when every cluster is degenerate.
pub fn max_fairness_violation(c: &Clustering, cm: &ColorModel) -> Option<f64> {
    let clusters = c.non_degenerate_clusters();
    if clusters.is_empty() {
        return None;
    }
    let mut worst: f64 = 0.0;
    for cluster in &clusters {
        let size = cluster.len() as f64;
        for (count, alpha) in cm.counts(cluster).into_iter().zip(&cm.alphas) {
            worst = worst.max(count as f64 / (alpha.value() * size) - 1.0);
        }
    }
    Some(worst)
}

/// Largest absolute overshoot `|V_i ∩ C| - α_i |C|` over non-degenerate
/// clusters, floored at 0, paired with the largest additive allowance
/// `max{1, ε |C| max_i α_i}` among the same clusters.
pub fn max_additive_violation(c: &Clustering, cm: &ColorModel, eps: Share) -> Option<(f64, f64)> {
    let clusters = c.non_degenerate_clusters();
    if clusters.is_empty() {
        return None;
    }
    let alpha_max = cm.alphas.iter().map(Share::value).fold(0.0, f64::max);
    let mut excess: f64 = 0.0;
    let mut allowance: f64 = 1.0;
    for cluster in &clusters {
        let size = cluster.len() as f64;
        for (count, alpha) in cm.counts(cluster).into_iter().zip(&cm.alphas) {
            excess = excess.max(count as f64 - alpha.value() * size);
        }
        allowance = allowance.max(eps.value() * size * alpha_max);
    }
    Some((excess, allowance))
}
