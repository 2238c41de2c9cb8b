//! Conformal blocks stored as exponent matrices, together with the
//! differential operators they are annihilated by.
//!
//! A block `U_T` is the power product `Π_{i<j} (x_j − x_i)^{α(i,j)}`, so every
//! derivative of `U_T` divided by `U_T` is a rational function whose
//! denominator is a product of differences. The operators in this module are
//! applied through that calculus and their residuals are decided exactly.

mod asymptotics;
mod calculus;
mod covariance;
mod exponents;
mod operators;
mod params;
mod report;
mod specht_pde;

pub use asymptotics::{
    boundary_limit, boundary_limit_matches_tableau, boundary_limit_tableau, BoundaryLimit, LimitTableau,
    LimitValue,
};
pub use calculus::{random_sample_points, BlockCalculus, Residual};
pub use covariance::{covariance_check, mobius_sample, seeded_mobius_maps, Mobius};
pub use exponents::{block_exponents, second_representation, ExponentMatrix};
pub use operators::{bpz_residual, global_ward_residual, ward_residual};
pub use params::{params_from_beta, CftParams};
pub use report::{run_check, CheckReport, Operator};
pub use specht_pde::{specht_pde_residual, SpechtResidual};

use thiserror::Error;

use crate::combinatorics::CombinatoricsError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlocksError {
    #[error("beta must be nonzero")]
    ZeroBeta,
    #[error("filling is not row-strict with the signature's content")]
    NotRowStrict,
    #[error("shape {0:?} is not the rectangle required here")]
    ShapeNotAllowed(Vec<usize>),
    #[error("index {index} is outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("Möbius map has ad − bc = 0")]
    DegenerateMobius,
    #[error("numbering has {found} columns but the operator handles at most {max}")]
    ColumnCountMismatch { found: usize, max: usize },
    #[error("entries must be exactly 1..=n, each once")]
    NotNumbering,
    #[error("lifted block has a nonzero exponent between group-mates")]
    InconsistentLift,
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}
