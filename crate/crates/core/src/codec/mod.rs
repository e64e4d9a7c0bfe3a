//! Encoder realization and the algebraic validity checks built on it.

mod encoder;
mod grid;
mod inverse;
mod parity;
mod report;
mod sparse;
mod spec;
mod validity;

pub use encoder::{encode, pack, unpack, PackedGenerator};
pub use grid::{Codeword, LlrPlanes, SoftGrid, TorusGrid, LLR_CLIP};
pub use inverse::{apply_inverse, build_pseudo_inverse, PseudoInverse};
pub use parity::{
    build_parity_check, rank_multipliers, syndrome, syndrome_former_family, ParityCheck,
};
pub use report::{validate_code, ValidationReport};
pub use sparse::SparseBinary;
pub use spec::{catalog, CodeSpec};
pub use validity::{common_divisor, common_divisor_check, is_nondegenerate, kernels_nondegenerate};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodecError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid code: {0}")]
    Invalid(String),
    #[error("code-spec parse error: {0}")]
    Parse(String),
    #[error("kernels share the common factor {0}")]
    NotCoprime(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
