//! Reading graphs and color classes from text files.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{FccError, Result};
use crate::fairness::{proportional_alphas, ColorModel, Share};
use crate::graph::{pair_count, pairs, SignedGraph};

/// How color fractions are assigned once the classes are known.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlphaSpec {
    /// Same fraction for every class.
    Uniform(Share),
    /// `1 / ℓ` for every class.
    InverseColors,
    /// `p_i / Σ p_j`, one proportion per class.
    Proportional(Vec<Share>),
    /// One fraction per class, in class order.
    PerClass(Vec<Share>),
}

impl AlphaSpec {
    pub fn resolve(&self, ell: usize) -> Result<Vec<Share>> {
        let check_len = |v: &Vec<Share>| {
            if v.len() == ell {
                Ok(())
            } else {
                Err(FccError::InvalidParameter(format!("{} alphas given for {ell} color classes", v.len())))
            }
        };
        match self {
            AlphaSpec::Uniform(a) => Ok(vec![*a; ell]),
            AlphaSpec::InverseColors => Ok(vec![Share::ratio(1, ell.max(1) as i64); ell]),
            AlphaSpec::Proportional(p) => {
                check_len(p)?;
                proportional_alphas(p)
            }
            AlphaSpec::PerClass(a) => {
                check_len(a)?;
                Ok(a.clone())
            }
        }
    }
}

impl std::str::FromStr for AlphaSpec {
    type Err = FccError;

    /// `uniform:<v>`, `prop:<p1,p2,..>`, `inverse`, or `<a1,a2,..>`.
    fn from_str(s: &str) -> Result<Self> {
        let list = |t: &str| t.split(',').map(str::parse).collect::<Result<Vec<Share>>>();
        let s = s.trim();
        if let Some(v) = s.strip_prefix("uniform:") {
            Ok(AlphaSpec::Uniform(v.parse()?))
        } else if let Some(p) = s.strip_prefix("prop:") {
            Ok(AlphaSpec::Proportional(list(p)?))
        } else if s == "inverse" {
            Ok(AlphaSpec::InverseColors)
        } else {
            Ok(AlphaSpec::PerClass(list(s)?))
        }
    }
}

/// Dense vertex ids for external labels, in order of first appearance.
#[derive(Debug, Default, Clone)]
pub struct VertexIndex {
    ids: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl VertexIndex {
    /// Index over `ids`, which must be distinct.
    pub fn from_ids(ids: impl IntoIterator<Item = String>) -> Self {
        let mut index = VertexIndex::default();
        for id in ids {
            index.intern(&id);
        }
        index
    }

    pub fn intern(&mut self, id: &str) -> usize {
        if let Some(&v) = self.lookup.get(id) {
            return v;
        }
        let v = self.ids.len();
        self.ids.push(id.to_string());
        self.lookup.insert(id.to_string(), v);
        v
    }

    pub fn get(&self, id: &str) -> Option<usize> {
        self.lookup.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn into_ids(self) -> Vec<String> {
        self.ids
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#') && !l.starts_with('%'))
}

/// Reads whitespace- or comma-separated `u v` pairs as the positive edges;
/// every other pair among the vertices seen is negative.
pub fn ingest_edge_list(path: impl AsRef<Path>) -> Result<(SignedGraph, Vec<String>)> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let mut index = VertexIndex::default();
    let mut edges = Vec::new();
    for (lineno, line) in data_lines(&text) {
        let fields: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == ',').filter(|f| !f.is_empty()).collect();
        let [a, b] = fields.as_slice() else {
            return Err(FccError::parse(path, lineno, format!("expected two vertex ids, found '{line}'")));
        };
        if a == b {
            return Err(FccError::parse(path, lineno, format!("self-loop on '{a}'")));
        }
        edges.push((index.intern(a), index.intern(b)));
    }
    if index.is_empty() {
        return Err(FccError::EmptyGraph);
    }
    let n = index.len();
    let mut g = SignedGraph::uniform(n, crate::graph::Sign::Negative);
    for (u, v) in edges {
        if g.is_positive(u, v) {
            log::warn!("{}: duplicate edge ({u}, {v}) ignored", path.display());
        }
        g.set_sign(u, v, crate::graph::Sign::Positive)?;
    }
    Ok((g, index.into_ids()))
}

fn parse_matrix(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in data_lines(&text) {
        let row = line
            .split(|c: char| c.is_whitespace() || c == ',' || c == ';')
            .filter(|f| !f.is_empty())
            .map(|f| {
                f.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| FccError::parse(path, lineno, format!("non-numeric cell '{f}'")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(FccError::parse(path, lineno, format!("expected {} columns, found {}", first.len(), row.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(FccError::EmptyGraph);
    }
    Ok(rows)
}

/// Similarity used to rank pairs of points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Similarity {
    Cosine,
    /// Negated Euclidean distance.
    Euclidean,
}

/// Number of positive pairs for a fraction `theta` of `m` pairs:
/// `⌊θ m⌋`.
pub fn positive_quota(theta: Share, m: usize) -> usize {
    match theta.exact() {
        Some(r) if *r.numer() >= 0 => ((*r.numer() as i128 * m as i128) / *r.denom() as i128).min(m as i128) as usize,
        _ => ((theta.value() * m as f64).floor().max(0.0) as usize).min(m),
    }
}

/// Marks the `⌊θ·n(n-1)/2⌋` most similar pairs positive. Ties at the cutoff
/// go to the lexicographically smaller pair.
pub fn graph_from_points(points: &[Vec<f64>], theta: Share, similarity: Similarity) -> Result<SignedGraph> {
    let n = points.len();
    if n == 0 {
        return Err(FccError::EmptyGraph);
    }
    let norms: Vec<f64> = points.iter().map(|p| p.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    if similarity == Similarity::Cosine {
        if let Some(v) = norms.iter().position(|&r| r == 0.0) {
            return Err(FccError::InvalidParameter(format!("row {v} has zero norm")));
        }
    }
    let score = |u: usize, v: usize| -> f64 {
        match similarity {
            Similarity::Cosine => {
                let dot: f64 = points[u].iter().zip(&points[v]).map(|(a, b)| a * b).sum();
                dot / (norms[u] * norms[v])
            }
            Similarity::Euclidean => -points[u].iter().zip(&points[v]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt(),
        }
    };
    let mut ranked: Vec<(f64, usize)> = pairs(n).enumerate().map(|(j, (u, v))| (score(u, v), j)).collect();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let quota = positive_quota(theta, pair_count(n));
    let mut positive = vec![false; pair_count(n)];
    for &(_, j) in &ranked[..quota] {
        positive[j] = true;
    }
    Ok(SignedGraph::from_fn(n, |u, v| positive[crate::graph::pair_index(n, u, v)]))
}

/// One row of numbers per vertex; positive pairs are the top `theta`
/// fraction by cosine similarity.
pub fn ingest_embeddings(path: impl AsRef<Path>, theta: Share) -> Result<SignedGraph> {
    let rows = parse_matrix(path.as_ref())?;
    graph_from_points(&rows, theta, Similarity::Cosine)
}

/// Color classes read from a `<vertex-id> <color>[,<color>...]` file.
/// Classes are numbered by first appearance; vertices not listed have no
/// color.
pub fn ingest_color_file(path: impl AsRef<Path>, index: &VertexIndex, alphas: &AlphaSpec) -> Result<ColorModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let mut names = VertexIndex::default();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (lineno, line) in data_lines(&text) {
        let mut it = line.split_whitespace();
        let (Some(id), Some(colors)) = (it.next(), it.next()) else {
            return Err(FccError::parse(path, lineno, "expected '<vertex-id> <color>[,<color>...]'"));
        };
        let Some(v) = index.get(id) else {
            return Err(FccError::parse(path, lineno, format!("unknown vertex '{id}'")));
        };
        for color in colors.split(',').filter(|c| !c.is_empty()) {
            let i = names.intern(color);
            if i == members.len() {
                members.push(Vec::new());
            }
            members[i].push(v);
        }
    }
    let ell = members.len();
    ColorModel::with_names(index.len(), names.into_ids(), members, alphas.resolve(ell)?)
}

/// A delimited table with a header row: sensitive columns define color
/// classes, numeric columns define point coordinates.
#[derive(Debug, Clone)]
pub struct AttributeTable {
    pub header: Vec<String>,
    pub records: Vec<Vec<String>>,
    path: std::path::PathBuf,
}

impl AttributeTable {
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let delimiter = match path.extension().and_then(|e| e.to_str()) {
            Some("tsv") | Some("tab") => b'\t',
            _ => b',',
        };
        let mut reader = csv::ReaderBuilder::new().delimiter(delimiter).trim(csv::Trim::All).from_path(path)?;
        let header = reader.headers()?.iter().map(str::to_string).collect();
        let mut records = Vec::new();
        for record in reader.records() {
            records.push(record?.iter().map(str::to_string).collect());
        }
        if records.is_empty() {
            return Err(FccError::EmptyGraph);
        }
        Ok(AttributeTable { header, records, path: path.to_path_buf() })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    fn column(&self, name: &str) -> Result<usize> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| FccError::InvalidParameter(format!("missing column '{name}' in {}", self.path.display())))
    }

    /// Numeric coordinates from `columns`.
    pub fn coordinates(&self, columns: &[String]) -> Result<Vec<Vec<f64>>> {
        let idx = columns.iter().map(|c| self.column(c)).collect::<Result<Vec<_>>>()?;
        self.records
            .iter()
            .enumerate()
            .map(|(r, rec)| {
                idx.iter()
                    .map(|&j| {
                        rec[j].parse::<f64>().map_err(|_| {
                            FccError::parse(&self.path, r + 2, format!("non-numeric cell '{}' in column '{}'", rec[j], self.header[j]))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// One class per `(column, value)`; classes of different columns overlap.
    /// Class names are `column=value`, numbered by column then first
    /// appearance.
    pub fn color_model(&self, color_columns: &[String], alphas: &AlphaSpec) -> Result<ColorModel> {
        let mut names = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for col in color_columns {
            let j = self.column(col)?;
            let mut values = VertexIndex::default();
            let base = members.len();
            for (r, rec) in self.records.iter().enumerate() {
                if rec[j].is_empty() {
                    return Err(FccError::parse(&self.path, r + 2, format!("empty category in column '{col}'")));
                }
                let k = values.intern(&rec[j]);
                if base + k == members.len() {
                    members.push(Vec::new());
                }
                members[base + k].push(r);
            }
            names.extend(values.into_ids().into_iter().map(|v| format!("{col}={v}")));
        }
        let ell = members.len();
        ColorModel::with_names(self.len(), names, members, alphas.resolve(ell)?)
    }
}

/// Vertex count and color model of an attribute table.
pub fn ingest_attributes(path: impl AsRef<Path>, color_columns: &[String], alphas: &AlphaSpec) -> Result<(usize, ColorModel)> {
    let table = AttributeTable::read(path)?;
    let cm = table.color_model(color_columns, alphas)?;
    Ok((table.len(), cm))
}
