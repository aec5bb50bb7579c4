//! Fair correlation clustering by LP relaxation and rounding.
//!
//! The pipeline: build the LP ([`lp::build_lp`]), solve it with lazily
//! separated triangle inequalities ([`engine::solve`]), then carve dense,
//! almost-fair balls out of the resulting metric ([`rounding::sweep`]).
//! [`oracle`] provides exact optima for small instances and the random-pivot
//! baseline; [`bench`] covers ingestion, experiments, and reports.

pub mod bench;
pub mod engine;
pub mod error;
pub mod fairness;
pub mod graph;
pub mod lp;
pub mod oracle;
pub mod rounding;

pub use engine::{solve, SolveReport, SolveStatus, SolverConfig};
pub use error::{FccError, Result};
pub use fairness::{ColorModel, Share};
pub use graph::{Clustering, Sign, SignedGraph};
pub use lp::{build_lp, FractionalMetric, LpProblem};
pub use rounding::{round, sweep, RoundingOutcome, RoundingParams, SweepGrid};
