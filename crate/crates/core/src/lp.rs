//! The fair correlation-clustering LP: columns, fairness rows, triangle
//! cuts, cost-shares, and MPS export.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use num_rational::Ratio;

use crate::error::{FccError, Result};
use crate::fairness::{ColorModel, Share};
use crate::graph::{pair_count, pair_index, pairs, Clustering, SignedGraph};

/// Symmetric pairwise distances in `[0, 1]` with a zero diagonal, stored
/// over the upper triangle in lexicographic pair order.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalMetric {
    n: usize,
    values: Vec<f64>,
}

impl FractionalMetric {
    pub fn zeros(n: usize) -> Self {
        FractionalMetric { n, values: vec![0.0; pair_count(n)] }
    }

    pub fn constant(n: usize, value: f64) -> Self {
        FractionalMetric { n, values: vec![value; pair_count(n)] }
    }

    /// Values outside `[0, 1]` are clamped.
    pub fn from_values(n: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != pair_count(n) {
            return Err(FccError::InvalidParameter(format!(
                "expected {} pair values for n = {n}, got {}",
                pair_count(n),
                values.len()
            )));
        }
        let values = values.into_iter().map(|x| x.clamp(0.0, 1.0)).collect();
        Ok(FractionalMetric { n, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let values = pairs(n).map(|(u, v)| f(u, v).clamp(0.0, 1.0)).collect();
        FractionalMetric { n, values }
    }

    /// The 0/1 metric of a clustering: 0 inside clusters, 1 across.
    pub fn indicator(c: &Clustering) -> Self {
        FractionalMetric::from_fn(c.n(), |u, v| if c.same_cluster(u, v) { 0.0 } else { 1.0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> f64 {
        if u == v {
            0.0
        } else {
            self.values[pair_index(self.n, u, v)]
        }
    }

    pub fn set(&mut self, u: usize, v: usize, value: f64) {
        assert!(u != v, "diagonal of a metric is fixed at 0");
        self.values[pair_index(self.n, u, v)] = value.clamp(0.0, 1.0);
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Row `u` of the full matrix, diagonal included.
    pub fn row(&self, u: usize) -> Vec<f64> {
        (0..self.n).map(|v| self.get(u, v)).collect()
    }
}

/// The triangle row `x_uw <= x_uv + x_vw`, with `u < w` the long side and
/// `v` the detour vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriangleCut {
    pub u: usize,
    pub w: usize,
    pub v: usize,
}

impl TriangleCut {
    pub fn new(u: usize, v: usize, w: usize) -> Self {
        let (u, w) = if u < w { (u, w) } else { (w, u) };
        debug_assert!(u != v && v != w && u != w);
        TriangleCut { u, w, v }
    }

    /// `x_uw - x_uv - x_vw`; positive means the row is violated.
    #[inline]
    pub fn violation(&self, x: &FractionalMetric) -> f64 {
        x.get(self.u, self.w) - x.get(self.u, self.v) - x.get(self.v, self.w)
    }

    /// Sparse coefficients over columns, for `<= 0`.
    pub fn coefficients(&self, n: usize) -> [(usize, f64); 3] {
        [
            (pair_index(n, self.u, self.w), 1.0),
            (pair_index(n, self.u, self.v), -1.0),
            (pair_index(n, self.v, self.w), -1.0),
        ]
    }

    pub fn name(&self) -> String {
        format!("T_{}_{}_{}", self.u, self.v, self.w)
    }
}

/// All `n (n-1) (n-2) / 2` triangle rows in `(u, w, v)` order.
pub fn all_triangle_cuts(n: usize) -> impl Iterator<Item = TriangleCut> {
    pairs(n).flat_map(move |(u, w)| {
        (0..n)
            .filter(move |&v| v != u && v != w)
            .map(move |v| TriangleCut { u, w, v })
    })
}

/// Fairness row for color `color` at vertex `vertex`:
/// `Σ_j coeffs_j x_j <= rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct FairnessRow {
    pub color: usize,
    pub vertex: usize,
    pub coeffs: Vec<(usize, f64)>,
    pub rhs: f64,
}

impl FairnessRow {
    pub fn activity(&self, x: &FractionalMetric) -> f64 {
        self.coeffs.iter().map(|&(j, c)| c * x.values[j]).sum()
    }

    pub fn name(&self) -> String {
        format!("F_{}_{}", self.color, self.vertex)
    }
}

/// The LP relaxation. One column per pair `u < v`, bounded to `[0, 1]`.
///
/// The objective is `constant + Σ_j objective_j x_j`, where positive pairs
/// carry `+1` and negative pairs carry `-1` with their `1` moved into
/// `constant`.
#[derive(Debug, Clone)]
pub struct LpProblem {
    n: usize,
    pub objective: Vec<f64>,
    pub constant: f64,
    pub fairness_rows: Vec<FairnessRow>,
    /// Triangle rows added so far; empty on a fresh problem.
    pub triangle_pool: Vec<TriangleCut>,
}

fn share_to_ratio(s: Share) -> Option<Ratio<i128>> {
    s.exact().map(|r| Ratio::new(*r.numer() as i128, *r.denom() as i128))
}

fn ratio_f64(r: Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Builds the LP for `g` under the fairness model `cm`.
///
/// Row `(i, u)` is `Σ_{v∈V_i}(1 - x_uv) <= α_i Σ_{v∈V}(1 - x_uv)` with the
/// `v = u` terms included (they are the constant 1s), rearranged to
/// `Σ_{v≠u} c_v x_uv <= α_i n - |V_i|` where `c_v = α_i - 1` on `V_i` and
/// `α_i` elsewhere.
pub fn build_lp(g: &SignedGraph, cm: &ColorModel) -> Result<LpProblem> {
    let n = g.n();
    if cm.n() != n {
        return Err(FccError::VertexMismatch { expected: n, found: cm.n() });
    }
    let objective = (0..pair_count(n))
        .map(|j| if g.is_positive_at(j) { 1.0 } else { -1.0 })
        .collect();
    let mut fairness_rows = Vec::with_capacity(cm.num_colors() * n);
    for (i, (class, &alpha)) in cm.classes().iter().zip(cm.alphas()).enumerate() {
        let size = class.len();
        let (inside, outside, rhs) = match share_to_ratio(alpha) {
            Some(a) => {
                let one = Ratio::from_integer(1);
                let rhs = a * Ratio::from_integer(n as i128) - Ratio::from_integer(size as i128);
                (ratio_f64(a - one), ratio_f64(a), ratio_f64(rhs))
            }
            None => {
                let a = alpha.value();
                (a - 1.0, a, a * n as f64 - size as f64)
            }
        };
        for u in 0..n {
            let coeffs = (0..n)
                .filter(|&v| v != u)
                .map(|v| (pair_index(n, u, v), if class.contains(v) { inside } else { outside }))
                .filter(|&(_, c)| c != 0.0)
                .collect();
            fairness_rows.push(FairnessRow { color: i, vertex: u, coeffs, rhs });
        }
    }
    Ok(LpProblem {
        n,
        objective,
        constant: g.negative_count() as f64,
        fairness_rows,
        triangle_pool: Vec::new(),
    })
}

impl LpProblem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_columns(&self) -> usize {
        self.objective.len()
    }

    pub fn column_name(&self, j: usize) -> String {
        let (u, v) = pairs(self.n).nth(j).expect("column index out of range");
        format!("x_{u}_{v}")
    }

    pub fn column_names(&self) -> Vec<String> {
        pairs(self.n).map(|(u, v)| format!("x_{u}_{v}")).collect()
    }

    pub fn objective_value(&self, x: &FractionalMetric) -> f64 {
        self.constant
            + self
                .objective
                .iter()
                .zip(&x.values)
                .map(|(c, v)| c * v)
                .sum::<f64>()
    }

    /// Largest `activity - rhs` over the fairness rows (negative when all
    /// rows hold with slack).
    pub fn max_fairness_residual(&self, x: &FractionalMetric) -> f64 {
        self.fairness_rows
            .iter()
            .map(|r| r.activity(x) - r.rhs)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Writes the problem with every triangle row materialized, in free MPS.
    ///
    /// Rows: the objective `COST`, fairness rows `F_<color>_<vertex>`, then
    /// triangle rows `T_<u>_<v>_<w>` (`x_uw <= x_uv + x_vw`). The objective
    /// constant is written as the negated RHS of `COST`.
    pub fn write_mps(&self, out: &mut impl Write) -> Result<()> {
        let n = self.n;
        let cuts: Vec<TriangleCut> = all_triangle_cuts(n).collect();
        let mut columns: Vec<Vec<(String, f64)>> = vec![Vec::new(); self.num_columns()];
        for (j, &c) in self.objective.iter().enumerate() {
            columns[j].push(("COST".to_string(), c));
        }
        for row in &self.fairness_rows {
            let name = row.name();
            for &(j, c) in &row.coeffs {
                columns[j].push((name.clone(), c));
            }
        }
        for cut in &cuts {
            let name = cut.name();
            for (j, c) in cut.coefficients(n) {
                columns[j].push((name.clone(), c));
            }
        }

        let mut s = String::new();
        writeln!(s, "NAME FCC_LP").unwrap();
        writeln!(s, "* columns {} fairness_rows {} triangle_rows {}", self.num_columns(), self.fairness_rows.len(), cuts.len()).unwrap();
        writeln!(s, "* objective constant {}", self.constant).unwrap();
        writeln!(s, "ROWS").unwrap();
        writeln!(s, " N COST").unwrap();
        for row in &self.fairness_rows {
            writeln!(s, " L {}", row.name()).unwrap();
        }
        for cut in &cuts {
            writeln!(s, " L {}", cut.name()).unwrap();
        }
        writeln!(s, "COLUMNS").unwrap();
        let names = self.column_names();
        for (name, entries) in names.iter().zip(&columns) {
            for (row, c) in entries {
                writeln!(s, "    {name} {row} {c}").unwrap();
            }
        }
        writeln!(s, "RHS").unwrap();
        if self.constant != 0.0 {
            writeln!(s, "    RHS COST {}", -self.constant).unwrap();
        }
        for row in &self.fairness_rows {
            if row.rhs != 0.0 {
                writeln!(s, "    RHS {} {}", row.name(), row.rhs).unwrap();
            }
        }
        writeln!(s, "BOUNDS").unwrap();
        for name in &names {
            writeln!(s, " UP BND {name} 1").unwrap();
        }
        writeln!(s, "ENDATA").unwrap();
        out.write_all(s.as_bytes())?;
        Ok(())
    }

    pub fn export_mps(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_mps(&mut file)?;
        file.flush()?;
        Ok(())
    }
}

/// `Σ_{uv∈F+} x_uv + Σ_{uv∈F-} (1 - x_uv)`.
pub fn lp_cost_share(x: &FractionalMetric, g: &SignedGraph, subset: &[(usize, usize)]) -> Result<f64> {
    if x.n() != g.n() {
        return Err(FccError::VertexMismatch { expected: g.n(), found: x.n() });
    }
    let mut total = 0.0;
    for &(u, v) in subset {
        if u == v || u >= g.n() || v >= g.n() {
            return Err(FccError::InvalidPair(u, v));
        }
        let d = x.get(u, v);
        total += if g.is_positive(u, v) { d } else { 1.0 - d };
    }
    Ok(total)
}
