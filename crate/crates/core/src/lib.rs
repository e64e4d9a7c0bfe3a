//! Two-dimensional tail-biting convolutional codes.
//!
//! The crate covers the whole pipeline for rate-1/n codes on an `N1 x N2`
//! torus:
//!
//! - [`algebra`]: GF(2)[x, y] arithmetic, Gröbner bases, colon ideals.
//! - [`codec`]: encoding, non-degeneracy, parity checks, pseudo-inverses.
//! - [`spectrum`]: 2D BEAST weight-spectrum search, brute-force oracle,
//!   union bound and sphere-packing bound.
//! - [`trellis`]: exact tail-biting Viterbi and the 2D-trellis decoder.
//! - [`graph`]: Tanner-graph LBP, modified LBP, region graphs and GBP.
//! - [`harness`]: AWGN channel, Monte-Carlo WER runs, experiment plans.

pub mod algebra;
pub mod codec;
pub mod graph;
pub mod harness;
pub mod spectrum;
pub mod trellis;

pub use algebra::{MonomialOrder, Poly2, TorusIdeal};
pub use codec::{CodeSpec, Codeword, LlrPlanes, SoftGrid, TorusGrid};

use thiserror::Error;

/// Crate-level error.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Codec(#[from] codec::CodecError),
    #[error(transparent)]
    Spectrum(#[from] spectrum::SpectrumError),
    #[error(transparent)]
    Decode(#[from] trellis::DecodeError),
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Harness(#[from] harness::HarnessError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
