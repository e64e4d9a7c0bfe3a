//! Low-weight spectrum search and the analytical bounds derived from it.

mod beast;
mod bounds;
mod brute;
mod region;

pub use beast::{beast_spectrum, BeastCaps};
pub use bounds::{
    bound_crossing, db_to_linear, q_function, solid_angle_fraction, sphere_packing_lower_bound,
    union_bound, SpherePacking,
};
pub use brute::{bruteforce_spectrum, weight_histogram, BRUTEFORCE_MAX_BITS};
pub use region::{code_fragment, compatible, ConstraintRegion, Direction};

pub(crate) use region::fragment_of_index;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("code is degenerate: {collisions} nonzero inputs encode to zero")]
    Degenerate { collisions: u64 },
    #[error("search too large: {0}")]
    TooLarge(String),
    #[error("bound evaluation failed: {0}")]
    Bound(String),
    #[error("spectrum CSV: {0}")]
    Parse(String),
}

/// Codeword counts `A(w)` for `1 <= w <= w_max`; the zero word is never
/// counted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightSpectrum {
    counts: Vec<u64>,
    /// All codewords up to `w_max` were counted.
    pub exhaustive: bool,
}

impl WeightSpectrum {
    /// `counts[w]` for `w = 0..=w_max`; `counts[0]` is ignored.
    pub fn from_counts(mut counts: Vec<u64>, exhaustive: bool) -> Self {
        if let Some(c) = counts.first_mut() {
            *c = 0;
        }
        WeightSpectrum { counts, exhaustive }
    }

    pub fn from_pairs(pairs: &[(usize, u64)]) -> Self {
        let w_max = pairs.iter().map(|p| p.0).max().unwrap_or(0);
        let mut counts = vec![0; w_max + 1];
        for &(w, a) in pairs {
            counts[w] += a;
        }
        WeightSpectrum::from_counts(counts, true)
    }

    pub fn w_max(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn get(&self, w: usize) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn d_min(&self) -> Option<usize> {
        self.counts.iter().position(|&c| c > 0)
    }

    pub fn is_empty(&self) -> bool {
        self.d_min().is_none()
    }

    /// `(w, A(w))` for `d_min <= w <= w_max`, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        let start = self.d_min().unwrap_or(self.counts.len());
        self.counts.iter().copied().enumerate().skip(start)
    }

    pub fn pairs(&self) -> Vec<(usize, u64)> {
        self.iter().collect()
    }

    /// `weight,count` CSV, ascending by weight.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("weight,count\n");
        for (w, a) in self.iter() {
            let _ = writeln!(s, "{w},{a}");
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self, SpectrumError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        if lines.next().map(str::trim) != Some("weight,count") {
            return Err(SpectrumError::Parse("missing `weight,count` header".into()));
        }
        let pairs = lines
            .map(|l| {
                let (w, a) = l
                    .split_once(',')
                    .ok_or_else(|| SpectrumError::Parse(format!("bad row `{l}`")))?;
                let w = w
                    .trim()
                    .parse()
                    .map_err(|_| SpectrumError::Parse(format!("bad weight in `{l}`")))?;
                let a = a
                    .trim()
                    .parse()
                    .map_err(|_| SpectrumError::Parse(format!("bad count in `{l}`")))?;
                Ok((w, a))
            })
            .collect::<Result<Vec<_>, SpectrumError>>()?;
        Ok(WeightSpectrum::from_pairs(&pairs))
    }
}

/// Run metadata stored next to a spectrum CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSidecar {
    pub spec_sha256: String,
    pub method: String,
    pub w_max: usize,
    pub exhaustive: bool,
    pub wall_time_s: f64,
}
