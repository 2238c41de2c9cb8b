//! The triple-dimer model on a rectangular grid with pendant boundary
//! vertices.
//!
//! Partition functions are Kasteleyn determinants, computed exactly with
//! fraction-free elimination or in floating point. A brute-force multiweb
//! enumeration checks the determinant route on small graphs. Connection
//! probabilities are compared with their scaling limits, which are exact
//! ratios of Specht polynomials.
//!
//! The lattice is a plain grid, made balanced by dropping a corner when
//! needed, with the pendant rule applied below the bottom row. It is not the
//! Temperleyan construction with a base point, so finite-size values only
//! approximate the limits.

mod convergence;
mod graph;
mod oracle;
mod probability;

pub use convergence::{convergence_study, rectangle_to_half_plane, ConvergenceRow, ConvergenceStudy};
pub use graph::{build_graph, default_anchors, DimerGraph, DimerVertex, Role, SMode};
pub use oracle::{multiweb_oracle, MultiwebTally, DEFAULT_EDGE_BUDGET};
pub use probability::{
    cauchy_limit_ratio, cauchy_product_formula, finite_connection_probabilities,
    finite_connection_probabilities_with, limit_probability, limit_probability_parts, z_tableau,
    z_tableau_log, Backend, ConnectionReport, ConnectionRow,
};

use thiserror::Error;

use crate::combinatorics::CombinatoricsError;
use crate::webs::WebsError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimerError {
    #[error("anchors must be strictly increasing columns of the right colour inside the grid")]
    AnchorsOutOfRange,
    #[error("no multiweb can exist: {0}")]
    ParityInfeasible(String),
    #[error("graph has {edges} edges, above the enumeration budget {budget}")]
    TooLarge { edges: usize, budget: usize },
    #[error("the reference tableau has zero partition function")]
    ZeroPartition,
    #[error("points must be strictly increasing")]
    CollidingPoints,
    #[error("expected {expected} points, got {found}")]
    WrongPointCount { expected: usize, found: usize },
    #[error("row and column index sets have sizes {rows} and {cols}")]
    NonSquareIndexSet { rows: usize, cols: usize },
    #[error("tableau index {index} outside 1..={max}")]
    TableauOutOfRange { index: usize, max: usize },
    #[error("a study needs at least two sizes")]
    TooFewSizes,
    #[error(transparent)]
    Webs(#[from] WebsError),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}
