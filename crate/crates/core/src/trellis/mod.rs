//! Trellis-based decoders: the 1D column (or row) Viterbi decoder and the
//! 2D trellis of overlapping constraint regions.

mod split;
mod trellis2d;
mod viterbi;

use thiserror::Error;

pub use split::{check_message_passing_condition, region_split, RegionSplit};
pub use trellis2d::{
    trellis2d_decode, Schedule, Trellis2dDecoder, Trellis2dOptions, Trellis2dOutput,
    Trellis2dReport, Trellis2dState,
};
pub use viterbi::{
    build_column_trellis, exhaustive_ml, ml_viterbi, Axis, ColumnTrellis, ViterbiDecoder,
    ViterbiMode, ViterbiOptions, ViterbiOutput, EXHAUSTIVE_MAX_BITS,
};

#[derive(Debug, Error)]
pub enum DecodeError {
    #[error("trellis needs 2^{states_log2} states, limit is {limit}")]
    StateLimit { states_log2: usize, limit: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid decoder input: {0}")]
    Invalid(String),
}
