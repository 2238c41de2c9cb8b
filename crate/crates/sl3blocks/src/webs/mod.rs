//! sl₃ webs in a strip or half-plane as combinatorial maps, reduction by the
//! loop, digon and square relations, the strip algebra acting by stacking,
//! evaluation on tableau basis vectors, and the resulting change of basis
//! between reduced webs and conformal blocks.

mod algebra;
mod basis;
mod builder;
mod json;
mod reduce;
mod sum;
mod web;

pub use algebra::{
    adjacent_word, four_site_antisymmetrizer, group_element_image, h_product, tau_image, tau_word,
};
pub use basis::{harvest_reduced, matrix_m, pure_partition_coeffs, tensor_value, ChangeOfBasis};
pub use builder::{cap_web, h_web, identity_web, merge_web, Node, WebBuilder};
pub use json::{BoundaryPointJson, VertexJson, WebJson};
pub use reduce::{apply, is_reduced, reduce, reducible_faces, Reducible};
pub use sum::{stack, WebSum};
pub use web::{HalfEdge, VertexKind, Web, WebKey};

use thiserror::Error;

use crate::combinatorics::CombinatoricsError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WebsError {
    #[error(
        "top word {lower_top:?} of the lower web differs from bottom word {upper_bottom:?} of the upper web"
    )]
    BoundaryMismatch {
        lower_top: Vec<u8>,
        upper_bottom: Vec<u8>,
    },
    #[error("index {index} out of range (maximum {max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("embedding is not planar: {0}")]
    NonPlanar(String),
    #[error("invalid web: {0}")]
    Invalid(String),
    #[error("found {found} reduced webs, expected {expected}")]
    HarvestIncomplete { found: usize, expected: usize },
    #[error("web boundary or tableau content does not match the signature")]
    ContentMismatch,
    #[error("evaluation matrix is not unit lower triangular in any column order")]
    SingularM,
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

#[cfg(test)]
mod tests;
