//! Exact computations around W₃ conformal blocks at central charge two.
//!
//! The crate builds conformal blocks from Specht polynomials of Young
//! tableaux, checks the third-order and Ward-type differential equations they
//! satisfy with exact rational arithmetic, implements the sl₃ web spider with
//! tensor evaluation, and computes triple-dimer connection probabilities both
//! as closed-form block ratios and on finite lattices via Kasteleyn
//! determinants.

pub mod blocks;
pub mod combinatorics;
pub mod dimer;
pub mod poly;
pub mod webs;

pub(crate) mod serde_util;
