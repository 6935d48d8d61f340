//! Catalog of the concrete algebras and distinguished central elements.
//!
//! The generator set lives on indices `0..n` with a diagonal metric of
//! signature (p+1, q): the first p+1 entries are +1, the rest -1. Two
//! independent bracket constructions are provided for the rotation algebras
//! (the metric-contraction form and the shared-index form) so they can be
//! compared entrywise as a cross-check. The Casimir builders return
//! normal-ordered polynomials and verify the expected centrality properties
//! at construction time.

mod builders;
mod casimirs;
mod signature;

pub use builders::{build_poincare, build_so, build_so_with_metric, so_bracket_shared_index};
pub(crate) use builders::signed_l_poly as signed_l;
pub use casimirs::{so23_metric, CasimirCatalog, CasimirName};
pub use signature::Signature;

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PresetError {
    #[error("signature ({p},{q}) rejected: {reason}")]
    InvalidSignature { p: u8, q: u8, reason: String },
    #[error("element {0} is only defined in the four-dimensional setup")]
    NotFourDimensional(String),
    #[error("element {element} failed its centrality check against {generator}")]
    NotCentral { element: String, generator: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
