use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::plan::{DecoderConfig, ResolvedPlan};
use super::{awgn_bpsk, ChannelConfig, HarnessError};
use crate::codec::{
    build_parity_check, build_pseudo_inverse, encode, CodeSpec, LlrPlanes, PseudoInverse, TorusGrid,
};
use crate::graph::{
    build_region_graph, build_tanner, inverter_network, lbp_decode, modified_lbp_decode,
    GbpDecoder, GraphOutput, ModifiedLbpOptions, SyndromeFamily, TannerGraph,
};
use crate::trellis::{exhaustive_ml, Trellis2dDecoder, ViterbiDecoder};
use crate::Poly2;

/// A decoder with its graphs and tables built once per experiment.
pub enum PreparedDecoder {
    Viterbi(ViterbiDecoder),
    Exhaustive(CodeSpec),
    Trellis2d(Trellis2dDecoder),
    Lbp {
        graph: TannerGraph,
        max_iters: usize,
        inv: PseudoInverse,
    },
    ModifiedLbp {
        family: SyndromeFamily,
        opts: ModifiedLbpOptions,
        inv: PseudoInverse,
    },
    Gbp {
        decoder: GbpDecoder,
        inv: PseudoInverse,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decoded {
    pub info: TorusGrid,
    pub iterations: usize,
}

fn inverse_for(spec: &CodeSpec, decoder: &str) -> Result<PseudoInverse, HarnessError> {
    build_pseudo_inverse(spec)?.ok_or_else(|| {
        HarnessError::Config(format!(
            "{decoder} needs a polynomial pseudo-inverse, and this code has none"
        ))
    })
}

impl PreparedDecoder {
    pub fn new(spec: &CodeSpec, cfg: &DecoderConfig) -> Result<Self, HarnessError> {
        Ok(match cfg {
            DecoderConfig::Viterbi(o) => PreparedDecoder::Viterbi(ViterbiDecoder::new(spec, *o)?),
            DecoderConfig::Exhaustive => PreparedDecoder::Exhaustive(spec.clone()),
            DecoderConfig::Trellis2d(o) => {
                PreparedDecoder::Trellis2d(Trellis2dDecoder::new(spec, *o))
            }
            DecoderConfig::Lbp(o) => PreparedDecoder::Lbp {
                graph: build_tanner(&build_parity_check(spec)?),
                max_iters: o.max_iters,
                inv: inverse_for(spec, "lbp")?,
            },
            DecoderConfig::ModifiedLbp(c) => {
                let z =
                    c.z.iter()
                        .map(|s| {
                            s.parse::<Poly2>()
                                .map_err(|e| HarnessError::Config(format!("multiplier {s:?}: {e}")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                PreparedDecoder::ModifiedLbp {
                    family: SyndromeFamily::from_multipliers(spec, &z)?,
                    opts: c.options(),
                    inv: inverse_for(spec, "modified_lbp")?,
                }
            }
            DecoderConfig::Gbp(c) => {
                let graph = build_tanner(&build_parity_check(spec)?);
                PreparedDecoder::Gbp {
                    decoder: GbpDecoder::new(&build_region_graph(&graph, c.regions), c.options())?,
                    inv: inverse_for(spec, "gbp")?,
                }
            }
        })
    }

    /// `rng` drives stochastic decoders only.
    pub fn decode(&self, llr: &LlrPlanes, rng: &mut ChaCha8Rng) -> Result<Decoded, HarnessError> {
        let (n, (rows, cols)) = (llr.n(), llr.dims());
        let soft = |out: GraphOutput, inv: &PseudoInverse| -> Result<Decoded, HarnessError> {
            let post = LlrPlanes::from_flat(n, rows, cols, &out.posterior)?;
            Ok(Decoded {
                info: inverter_network(&post, inv)?.hard_decision(),
                iterations: out.iterations,
            })
        };
        match self {
            PreparedDecoder::Viterbi(d) => Ok(Decoded {
                info: d.decode(llr)?.info,
                iterations: 1,
            }),
            PreparedDecoder::Exhaustive(spec) => Ok(Decoded {
                info: exhaustive_ml(llr, spec)?,
                iterations: 1,
            }),
            PreparedDecoder::Trellis2d(d) => {
                let out = d.decode(llr);
                Ok(Decoded {
                    info: out.info,
                    iterations: out.report.iterations,
                })
            }
            PreparedDecoder::Lbp {
                graph,
                max_iters,
                inv,
            } => soft(lbp_decode(&llr.to_flat(), graph, *max_iters), inv),
            PreparedDecoder::ModifiedLbp { family, opts, inv } => soft(
                modified_lbp_decode(&llr.to_flat(), family, *opts, rng)?,
                inv,
            ),
            PreparedDecoder::Gbp { decoder, inv } => soft(decoder.decode(&llr.to_flat())?.0, inv),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WerPoint {
    pub ebn0_db: f64,
    pub trials: u64,
    pub word_errors: u64,
    pub wer: f64,
    pub bit_errors: u64,
    pub ber: f64,
    pub mean_iterations: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WerCurve {
    pub plan_sha256: String,
    pub rows: Vec<WerPoint>,
}

const CSV_HEADER: &str = "ebn0_db,trials,word_errors,wer,bit_errors,ber,mean_iterations";

impl WerCurve {
    pub fn to_csv(&self) -> String {
        let mut s = format!("# plan {}\n{CSV_HEADER}\n", self.plan_sha256);
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{:e},{},{:e},{}\n",
                r.ebn0_db, r.trials, r.word_errors, r.wer, r.bit_errors, r.ber, r.mean_iterations
            ));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self, HarnessError> {
        let bad = |m: String| HarnessError::Config(format!("WER CSV: {m}"));
        let mut plan_sha256 = String::new();
        let mut rows = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(h) = line.strip_prefix("# plan ") {
                plan_sha256 = h.trim().to_string();
                continue;
            }
            if line.starts_with('#') || line == CSV_HEADER {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 7 {
                return Err(bad(format!("expected 7 fields in {line:?}")));
            }
            let num = |i: usize| {
                f[i].parse::<f64>()
                    .map_err(|e| bad(format!("{:?}: {e}", f[i])))
            };
            let int = |i: usize| {
                f[i].parse::<u64>()
                    .map_err(|e| bad(format!("{:?}: {e}", f[i])))
            };
            rows.push(WerPoint {
                ebn0_db: num(0)?,
                trials: int(1)?,
                word_errors: int(2)?,
                wer: num(3)?,
                bit_errors: int(4)?,
                ber: num(5)?,
                mean_iterations: num(6)?,
            });
        }
        Ok(WerCurve { plan_sha256, rows })
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `trial` at SNR index `snr`; independent of scheduling.
pub fn trial_seed(master: u64, snr: usize, trial: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ snr as u64) ^ trial)
}

#[derive(Clone, Copy, Debug, Default)]
struct Trial {
    word_error: bool,
    bit_errors: u64,
    iterations: u64,
}

/// One trial: random word, encode, channel, decode. Stream 0 of the trial
/// seed drives data and noise, stream 1 the decoder.
fn run_trial(
    spec: &CodeSpec,
    dec: &PreparedDecoder,
    cfg: &ChannelConfig,
    seed: u64,
) -> Result<Trial, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n1, n2) = spec.info();
    let u = TorusGrid::random(n1, n2, &mut rng);
    let v = encode(&u, spec)?;
    let llr = awgn_bpsk(&v, cfg, &mut rng);
    let mut drng = ChaCha8Rng::seed_from_u64(seed);
    drng.set_stream(1);
    let d = dec.decode(&llr, &mut drng)?;
    let bit_errors = d.info.xor(&u).weight() as u64;
    Ok(Trial {
        word_error: bit_errors > 0,
        bit_errors,
        iterations: d.iterations as u64,
    })
}

/// Monte-Carlo WER per SNR point. Trials run in parallel batches, but the
/// stop rule is applied in trial order, so results match a serial run.
pub fn run_wer(plan: &ResolvedPlan) -> Result<WerCurve, HarnessError> {
    let spec = &plan.spec;
    let p = &plan.plan;
    let dec = PreparedDecoder::new(spec, &p.decoder)?;
    let info_bits = spec.k() as u64;
    let mut rows = Vec::with_capacity(p.snr_db.len());
    for (si, &db) in p.snr_db.iter().enumerate() {
        let cfg = ChannelConfig::new(db, spec.rate(), p.seed)?;
        let (mut trials, mut errors, mut bits, mut iters) = (0u64, 0u64, 0u64, 0u64);
        'point: while trials < p.stop.max_trials {
            let end = (trials + p.batch as u64).min(p.stop.max_trials);
            let batch: Vec<Trial> = (trials..end)
                .into_par_iter()
                .map(|t| run_trial(spec, &dec, &cfg, trial_seed(p.seed, si, t)))
                .collect::<Result<_, _>>()?;
            for t in batch {
                trials += 1;
                errors += t.word_error as u64;
                bits += t.bit_errors;
                iters += t.iterations;
                if errors >= p.stop.min_word_errors {
                    break 'point;
                }
            }
        }
        rows.push(WerPoint {
            ebn0_db: db,
            trials,
            word_errors: errors,
            wer: errors as f64 / trials as f64,
            bit_errors: bits,
            ber: bits as f64 / (trials * info_bits) as f64,
            mean_iterations: iters as f64 / trials as f64,
        });
    }
    Ok(WerCurve {
        plan_sha256: plan.sha256(),
        rows,
    })
}

/// Crossing point with the crossings of the 95% Wilson bounds around it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub ebn0_db: f64,
    /// Crossing of the lower confidence curve (earliest plausible).
    pub low_db: Option<f64>,
    /// Crossing of the upper confidence curve (latest plausible).
    pub high_db: Option<f64>,
}

/// 95% Wilson score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054;
    let (nf, p) = (n as f64, k as f64 / n as f64);
    let denom = 1.0 + z * z / nf;
    let centre = (p + z * z / (2.0 * nf)) / denom;
    let half = z * (p * (1.0 - p) / nf + z * z / (4.0 * nf * nf)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// First downward crossing of `target`, interpolating `ln wer` linearly in dB.
fn interpolate(points: &[(f64, f64)], target: f64) -> Option<f64> {
    for w in points.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if y0 == target {
            return Some(x0);
        }
        if y0 > target && y1 <= target {
            if y1 == target {
                return Some(x1);
            }
            if y1 <= 0.0 {
                return None;
            }
            return Some(x0 + (target.ln() - y0.ln()) / (y1.ln() - y0.ln()) * (x1 - x0));
        }
    }
    points.last().filter(|p| p.1 == target).map(|p| p.0)
}

pub fn curve_crossing(curve: &WerCurve, target: f64) -> Result<Crossing, HarnessError> {
    let mut rows = curve.rows.clone();
    rows.sort_by(|a, b| a.ebn0_db.total_cmp(&b.ebn0_db));
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.ebn0_db, r.wer)).collect();
    let x = interpolate(&pts, target).ok_or_else(|| {
        HarnessError::Unbracketed(format!(
            "WER {target:e} is not bracketed by a usable pair of points"
        ))
    })?;
    let bound = |upper: bool| -> Vec<(f64, f64)> {
        rows.iter()
            .map(|r| {
                let (lo, hi) = wilson_interval(r.word_errors, r.trials);
                (r.ebn0_db, if upper { hi } else { lo })
            })
            .collect()
    };
    Ok(Crossing {
        ebn0_db: x,
        low_db: interpolate(&bound(false), target),
        high_db: interpolate(&bound(true), target),
    })
}

/// `crossing(decoder) - crossing(reference)` at `target`.
pub fn degradation(
    curve: &WerCurve,
    reference: &WerCurve,
    target: f64,
) -> Result<f64, HarnessError> {
    Ok(curve_crossing(curve, target)?.ebn0_db - curve_crossing(reference, target)?.ebn0_db)
}
