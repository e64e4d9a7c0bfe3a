//! Parity-domain decoders on the Tanner graph of the syndrome former.

mod gbp;
mod inverter;
mod lbp;
mod modified;
mod region;
mod tanner;

use thiserror::Error;

pub use gbp::{gbp_decode, GbpDecoder, GbpOptions, GbpState, GBP_MAX_REGION_VARS};
pub use inverter::inverter_network;
pub use lbp::{lbp_decode, GraphOutput};
pub use modified::{modified_lbp_decode, ModifiedLbpOptions, SyndromeFamily, ThetaState};
pub use region::{build_region_graph, Region, RegionGraph, RegionMode};
pub use tanner::{build_tanner, TannerGraph, TorusLayout};

use crate::codec::CodecError;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid graph decoder input: {0}")]
    Invalid(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Codec(#[from] CodecError),
}
