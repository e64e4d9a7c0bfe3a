use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::codec::{Codeword, LlrPlanes, SoftGrid};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    /// Code rate `k / n`.
    pub rate: f64,
    pub seed: u64,
}

impl ChannelConfig {
    pub fn new(ebn0_db: f64, rate: f64, seed: u64) -> Result<Self, HarnessError> {
        if !(rate > 0.0 && rate <= 1.0) || !ebn0_db.is_finite() {
            return Err(HarnessError::Config(format!(
                "bad channel: rate {rate}, Eb/N0 {ebn0_db} dB"
            )));
        }
        Ok(ChannelConfig {
            ebn0_db,
            rate,
            seed,
        })
    }

    /// `sigma^2 = 1 / (2 R Eb/N0)` for unit-energy BPSK symbols.
    pub fn sigma2(&self) -> f64 {
        1.0 / (2.0 * self.rate * 10f64.powf(self.ebn0_db / 10.0))
    }
}

/// BPSK (0 -> +1, 1 -> -1) plus white Gaussian noise; returns `2 y / sigma^2`.
pub fn awgn_bpsk<R: Rng + ?Sized>(v: &Codeword, cfg: &ChannelConfig, rng: &mut R) -> LlrPlanes {
    let s2 = cfg.sigma2();
    let sigma = s2.sqrt();
    let (rows, cols) = v.dims();
    let planes = v
        .planes
        .iter()
        .map(|p| {
            let values = p
                .bits()
                .iter()
                .map(|&b| {
                    let z: f64 = rng.sample(StandardNormal);
                    let y = 1.0 - 2.0 * b as f64 + sigma * z;
                    2.0 * y / s2
                })
                .collect();
            SoftGrid::from_values(rows, cols, values).expect("dimensions agree")
        })
        .collect();
    LlrPlanes::new(planes).expect("planes agree")
}
