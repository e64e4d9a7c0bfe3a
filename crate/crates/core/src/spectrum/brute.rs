use rayon::prelude::*;

use super::{SpectrumError, WeightSpectrum};
use crate::codec::{CodeSpec, PackedGenerator};

/// Largest information size the exhaustive enumeration accepts.
pub const BRUTEFORCE_MAX_BITS: usize = 40;

const SHARD_BITS: u32 = 8;

/// Enumerates all `2^(N1*N2)` information words in reflected Gray-code
/// order, one generator-row XOR and one popcount per word.
///
/// Any nonzero input that encodes to zero is reported as
/// [`SpectrumError::Degenerate`].
pub fn bruteforce_spectrum(spec: &CodeSpec, w_max: usize) -> Result<WeightSpectrum, SpectrumError> {
    let k = spec.k();
    if k > BRUTEFORCE_MAX_BITS {
        return Err(SpectrumError::TooLarge(format!(
            "brute force is limited to N1*N2 <= {BRUTEFORCE_MAX_BITS}, got {k}"
        )));
    }
    let gen = PackedGenerator::new(spec).map_err(|e| SpectrumError::TooLarge(e.to_string()))?;
    let hist = weight_histogram(&gen);
    let collisions = hist[0] - 1;
    if collisions > 0 {
        return Err(SpectrumError::Degenerate { collisions });
    }
    let mut counts: Vec<u64> = hist.into_iter().take(w_max + 1).collect();
    counts.resize(w_max + 1, 0);
    counts[0] = 0;
    Ok(WeightSpectrum::from_counts(counts, true))
}

/// Full weight histogram (index = codeword weight), zero word included.
pub fn weight_histogram(gen: &PackedGenerator) -> Vec<u64> {
    let k = gen.k as u32;
    let shard_bits = SHARD_BITS.min(k);
    let span_bits = k - shard_bits;
    (0..1u64 << shard_bits)
        .into_par_iter()
        .map(|s| {
            let mut hist = vec![0u64; gen.n + 1];
            let start = s << span_bits;
            let end = start + (1u64 << span_bits);
            let mut v = gen.encode_word(start ^ (start >> 1));
            hist[v.count_ones() as usize] += 1;
            for i in start + 1..end {
                // gray(i) differs from gray(i-1) in bit trailing_zeros(i)
                v ^= gen.rows[i.trailing_zeros() as usize];
                hist[v.count_ones() as usize] += 1;
            }
            hist
        })
        .reduce(
            || vec![0u64; gen.n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}
