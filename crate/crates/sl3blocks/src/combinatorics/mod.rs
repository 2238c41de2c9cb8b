//! Partitions, valence signatures, Young-diagram fillings and the
//! standardization map.
//!
//! Every other module iterates over the index sets produced here: the
//! rectangular partition `π = (n/3, n/3, n/3)` attached to a signature, the
//! row-strict tableaux of shape `π` in row-reading lexicographic order, and
//! the row-number tuples used to build tensor basis vectors.

mod partition;
mod signature;
mod tableau;

pub use partition::Partition;
pub use signature::Signature;
pub use tableau::{
    enumerate_tableaux, kostka, row_content, row_number_tuples, standardize, Filling, Reading, TableauKind,
};

use thiserror::Error;

/// Failures raised while building combinatorial objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    #[error("signature must be nonempty")]
    EmptySignature,
    #[error("valence {0} is not 1 or 2")]
    BadValence(u8),
    #[error("total valence {0} is not divisible by three")]
    NotDivisibleByThree(usize),
    #[error("partition parts must be positive and weakly decreasing: {0:?}")]
    BadPartition(Vec<usize>),
    #[error("shape has {shape} boxes but the content has {content}")]
    ShapeContentMismatch { shape: usize, content: usize },
    #[error("filling is not a tableau of the requested class")]
    NotTableau,
    #[error("rows do not fit the shape {0:?}")]
    RowsShapeMismatch(Vec<usize>),
}
