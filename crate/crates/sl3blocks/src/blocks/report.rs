use std::fmt;
use std::time::Instant;

use serde::Serialize;

use super::{bpz_residual, global_ward_residual, ward_residual, BlocksError, CftParams, ExponentMatrix};
use crate::combinatorics::Filling;

/// One of the operators of the PDE system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Operator {
    Bpz(usize),
    Ward(usize),
    GlobalWard(usize),
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::Bpz(m) => write!(f, "bpz[{m}]"),
            Operator::Ward(m) => write!(f, "ward[{m}]"),
            Operator::GlobalWard(k) => write!(f, "global[{k}]"),
        }
    }
}

/// Outcome of one residual computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub tableau: String,
    pub operator: String,
    pub residual_zero: bool,
    /// Terms left in the canonical form of the residual.
    pub numerator_terms: usize,
    pub wall_time_ms: u64,
}

/// Applies `op` to the block and decides whether the residual vanishes,
/// with a seeded random-evaluation pre-pass.
pub fn run_check(
    t: &Filling,
    alpha: &ExponentMatrix,
    params: &CftParams,
    op: Operator,
    seed: u64,
) -> Result<CheckReport, BlocksError> {
    let start = Instant::now();
    let residual = match op {
        Operator::Bpz(m) => bpz_residual(m, alpha, params)?,
        Operator::Ward(m) => ward_residual(m, alpha, params)?,
        Operator::GlobalWard(k) => global_ward_residual(k, alpha, params)?,
    };
    let numerator_terms = if residual.vanishes_at_random_points(20, seed) {
        residual.canonical().num_terms()
    } else {
        residual.function().num_terms()
    };
    Ok(CheckReport {
        tableau: t.to_string(),
        operator: op.to_string(),
        residual_zero: numerator_terms == 0,
        numerator_terms,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}
