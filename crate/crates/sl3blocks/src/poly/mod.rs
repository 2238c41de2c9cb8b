//! Exact sparse polynomials and rational functions over `ℚ`, Specht
//! polynomials, symmetric-group actions and exact linear algebra.

mod group;
mod linalg;
mod polynomial;
mod rational;
mod specht;

pub use group::{apply_group_algebra, GroupAlgebraElement, Permutation};
pub use linalg::{
    det_bareiss, det_f64, invert_rational, log_abs_det_f64, rank_bareiss, rank_of, RationalMatrix,
};
pub use polynomial::{Monomial, SparsePolynomial};
pub use rational::RationalFunction;
pub use specht::{eval_identify, specht, specht_expanded, vandermonde};

#[allow(unused_imports)]
pub(crate) use polynomial::{q, qf};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("cannot parse polynomial term `{0}`")]
    Parse(String),
    #[error("variable index {0} repeats in a Vandermonde product")]
    RepeatedIndex(usize),
    #[error("permutation of degree {perm} applied to a polynomial in {vars} variables")]
    DegreeMismatch { perm: usize, vars: usize },
    #[error("matrix is singular")]
    Singular,
}
