//! AWGN simulation, experiment plans and WER curves.

mod channel;
mod plan;
mod run;

use thiserror::Error;

pub use channel::{awgn_bpsk, ChannelConfig};
pub use plan::{
    DecoderConfig, ExperimentPlan, GbpConfig, LbpOptions, ModifiedLbpConfig, ResolvedPlan, StopRule,
};
pub use run::{
    curve_crossing, degradation, run_wer, trial_seed, wilson_interval, Crossing, Decoded,
    PreparedDecoder, WerCurve, WerPoint,
};

use crate::codec::CodecError;
use crate::graph::GraphError;
use crate::trellis::DecodeError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("target not bracketed: {0}")]
    Unbracketed(String),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
