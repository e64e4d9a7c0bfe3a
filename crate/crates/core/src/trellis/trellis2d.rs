use serde::{Deserialize, Serialize};

use crate::codec::{CodeSpec, LlrPlanes, SoftGrid, TorusGrid, LLR_CLIP};
use crate::spectrum::{fragment_of_index, Direction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    /// Every region reads last iteration's messages.
    #[default]
    Flooding,
    /// Regions update in order `k2 * N1 + k1` and read fresh messages.
    Serial,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Trellis2dOptions {
    pub max_iters: usize,
    pub schedule: Schedule,
    /// Weight of the previous message in `new = (1-d) m + d old`; 0 is off.
    pub damping: f64,
}

impl Default for Trellis2dOptions {
    fn default() -> Self {
        Trellis2dOptions {
            max_iters: 50,
            schedule: Schedule::Flooding,
            damping: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trellis2dReport {
    pub iterations: usize,
    /// Every region agrees on every bit it covers and the decision did not
    /// change in the last iteration.
    pub converged: bool,
    /// Bits on which the covering regions disagree.
    pub disagreements: usize,
    /// Bits decided by the zero tie-break (no evidence either way).
    pub ambiguous_bits: usize,
    /// Mean log-odds `ln P(0)/P(1)` of each bit over its regions.
    pub posterior: SoftGrid,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trellis2dOutput {
    pub info: TorusGrid,
    pub report: Trellis2dReport,
}

/// Message tables of a run, for inspection.
#[derive(Clone, Debug)]
pub struct Trellis2dState {
    /// `incoming[e][p]`: message into region `p` from its neighbour in
    /// direction `e` (up, down, left, right), over the shared overlap.
    pub incoming: [Vec<Vec<f64>>; 4],
    /// Normalized belief of every region over its `2^(K1 K2)` configurations.
    pub beliefs: Vec<Vec<f64>>,
}

const DIRS: [Direction; 4] = [
    Direction::Up,
    Direction::Down,
    Direction::Left,
    Direction::Right,
];

/// Precomputed region structure for one code.
#[derive(Clone, Debug)]
pub struct Trellis2dDecoder {
    spec: CodeSpec,
    configs: usize,
    /// Fragment of every configuration, bit `i` = plane `i`.
    fragments: Vec<u32>,
    /// `proj[d][r]`: index of `r`'s overlap with the neighbour in `DIRS[d]`.
    proj: [Vec<usize>; 4],
    overlap_size: [usize; 4],
    opts: Trellis2dOptions,
}

fn overlap_index(
    r: usize,
    k2: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> usize {
    let mut idx = 0;
    let mut j = 0;
    for a in rows {
        for b in cols.clone() {
            idx |= ((r >> (a * k2 + b)) & 1) << j;
            j += 1;
        }
    }
    idx
}

impl Trellis2dDecoder {
    pub fn new(spec: &CodeSpec, opts: Trellis2dOptions) -> Self {
        let (k1, k2) = spec.support();
        let configs = 1usize << (k1 * k2);
        let fragments = (0..configs)
            .map(|r| {
                fragment_of_index(spec, r)
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, &b)| acc | (b as u32) << i)
            })
            .collect();
        // Overlap with the up neighbour is our rows 0..K1-1 (its rows 1..K1);
        // both sides index the shared block row-major, so indices agree.
        let ranges = |d: Direction| match d {
            Direction::Up => (0..k1 - 1, 0..k2),
            Direction::Down => (1..k1, 0..k2),
            Direction::Left => (0..k1, 0..k2 - 1),
            Direction::Right => (0..k1, 1..k2),
        };
        let proj = DIRS.map(|d| {
            let (rows, cols) = ranges(d);
            (0..configs)
                .map(|r| overlap_index(r, k2, rows.clone(), cols.clone()))
                .collect()
        });
        let overlap_size = DIRS.map(|d| {
            let (rows, cols) = ranges(d);
            1usize << (rows.len() * cols.len())
        });
        Trellis2dDecoder {
            spec: spec.clone(),
            configs,
            fragments,
            proj,
            overlap_size,
            opts,
        }
    }

    /// Region `p = k1 * N2 + k2` anchored at `(k1, k2)`.
    fn neighbour(&self, p: usize, d: Direction) -> usize {
        let (n1, n2) = self.spec.info();
        let (k1, k2) = (p / n2, p % n2);
        let (dr, dc) = d.offset();
        let r = (k1 as isize + dr).rem_euclid(n1 as isize) as usize;
        let c = (k2 as isize + dc).rem_euclid(n2 as isize) as usize;
        r * n2 + c
    }

    /// `lambda[p][r] ∝ exp(-sum_i L_i * frag_i(r))` at the fragment position
    /// of region `p`, normalized to sum 1.
    fn local_evidence(&self, llr: &LlrPlanes) -> Vec<Vec<f64>> {
        let (n1, n2) = self.spec.info();
        let (k1, k2) = self.spec.support();
        let llr = llr.clipped();
        (0..n1 * n2)
            .map(|p| {
                let (a, b) = ((p / n2 + k1 - 1) % n1, (p % n2 + k2 - 1) % n2);
                let l: Vec<f64> = llr.planes.iter().map(|pl| pl.get(a, b)).collect();
                let cost: Vec<f64> = self
                    .fragments
                    .iter()
                    .map(|&f| {
                        l.iter()
                            .enumerate()
                            .filter(|(i, _)| f >> i & 1 == 1)
                            .map(|(_, v)| v)
                            .sum()
                    })
                    .collect();
                let min = cost.iter().copied().fold(f64::INFINITY, f64::min);
                normalized(cost.iter().map(|c| (min - c).exp()).collect())
            })
            .collect()
    }

    /// Message from region `p` towards `DIRS[d]`: its evidence times the
    /// three other incoming messages, summed onto the shared overlap.
    fn outgoing(
        &self,
        p: usize,
        d: usize,
        lambda: &[f64],
        incoming: &[Vec<Vec<f64>>; 4],
    ) -> Vec<f64> {
        let mut out = vec![0.0; self.overlap_size[d]];
        for r in 0..self.configs {
            let mut w = lambda[r];
            for (e, inc) in incoming.iter().enumerate() {
                if e != d {
                    w *= inc[p][self.proj[e][r]];
                }
            }
            out[self.proj[d][r]] += w;
        }
        normalized(out)
    }

    fn beliefs(&self, p: usize, lambda: &[f64], incoming: &[Vec<Vec<f64>>; 4]) -> Vec<f64> {
        normalized(
            (0..self.configs)
                .map(|r| {
                    lambda[r]
                        * (0..4)
                            .map(|e| incoming[e][p][self.proj[e][r]])
                            .product::<f64>()
                })
                .collect(),
        )
    }

    pub fn decode(&self, llr: &LlrPlanes) -> Trellis2dOutput {
        let lambda = self.local_evidence(llr);
        let mut incoming = self.uniform_messages();
        let order = self.serial_order();

        // the channel-only decision seeds the stability check
        let mut last = self.decide(&lambda, &incoming);
        let mut prev = last.0.clone();
        let mut iterations = 0;
        let mut converged = false;
        for it in 1..=self.opts.max_iters {
            iterations = it;
            self.sweep(&lambda, &mut incoming, &order);
            last = self.decide(&lambda, &incoming);
            if last.1 == 0 && prev == last.0 {
                converged = true;
                break;
            }
            prev = last.0.clone();
        }
        let (info, disagreements, posterior, ambiguous_bits) = last;
        Trellis2dOutput {
            info,
            report: Trellis2dReport {
                iterations,
                converged,
                disagreements,
                ambiguous_bits,
                posterior,
            },
        }
    }

    fn serial_order(&self) -> Vec<usize> {
        let (n1, n2) = self.spec.info();
        (0..n2)
            .flat_map(|k2| (0..n1).map(move |k1| k1 * n2 + k2))
            .collect()
    }

    fn uniform_messages(&self) -> [Vec<Vec<f64>>; 4] {
        let positions = self.spec.k();
        std::array::from_fn(|e| {
            vec![vec![1.0 / self.overlap_size[e] as f64; self.overlap_size[e]]; positions]
        })
    }

    /// One iteration: every region sends all four messages.
    fn sweep(&self, lambda: &[Vec<f64>], incoming: &mut [Vec<Vec<f64>>; 4], order: &[usize]) {
        let opposite = |d: usize| DIRS.iter().position(|&x| x == DIRS[d].opposite()).unwrap();
        match self.opts.schedule {
            Schedule::Flooding => {
                let mut fresh = incoming.clone();
                for p in 0..lambda.len() {
                    for d in 0..4 {
                        let q = self.neighbour(p, DIRS[d]);
                        let m = self.outgoing(p, d, &lambda[p], incoming);
                        fresh[opposite(d)][q] = self.damp(&incoming[opposite(d)][q], m);
                    }
                }
                *incoming = fresh;
            }
            Schedule::Serial => {
                for &p in order {
                    for d in 0..4 {
                        let q = self.neighbour(p, DIRS[d]);
                        let m = self.outgoing(p, d, &lambda[p], incoming);
                        incoming[opposite(d)][q] = self.damp(&incoming[opposite(d)][q], m);
                    }
                }
            }
        }
    }

    /// Messages and region beliefs after exactly `iterations` sweeps, with
    /// no early stop.
    pub fn state_after(&self, llr: &LlrPlanes, iterations: usize) -> Trellis2dState {
        let lambda = self.local_evidence(llr);
        let mut incoming = self.uniform_messages();
        let order = self.serial_order();
        for _ in 0..iterations {
            self.sweep(&lambda, &mut incoming, &order);
        }
        let beliefs = (0..lambda.len())
            .map(|p| self.beliefs(p, &lambda[p], &incoming))
            .collect();
        Trellis2dState { incoming, beliefs }
    }

    fn damp(&self, old: &[f64], new: Vec<f64>) -> Vec<f64> {
        let d = self.opts.damping;
        if d <= 0.0 {
            return new;
        }
        normalized(
            old.iter()
                .zip(new)
                .map(|(o, n)| (1.0 - d) * n + d * o)
                .collect(),
        )
    }

    /// Majority vote over the `K1 K2` regions covering each bit, ties by
    /// summed log-odds, then 0.
    fn decide(
        &self,
        lambda: &[Vec<f64>],
        incoming: &[Vec<Vec<f64>>; 4],
    ) -> (TorusGrid, usize, SoftGrid, usize) {
        let (n1, n2) = self.spec.info();
        let (k1, k2) = self.spec.support();
        let cells = k1 * k2;
        let mut votes = vec![0i64; n1 * n2];
        let mut covered = vec![0usize; n1 * n2];
        let mut log_odds = vec![0.0f64; n1 * n2];
        for p in 0..n1 * n2 {
            let b = self.beliefs(p, &lambda[p], incoming);
            let (r0, c0) = (p / n2, p % n2);
            for j in 0..cells {
                let p1: f64 = (0..self.configs)
                    .filter(|r| r >> j & 1 == 1)
                    .map(|r| b[r])
                    .sum();
                let p0 = (1.0 - p1).max(0.0);
                let pos = ((r0 + j / k2) % n1) * n2 + (c0 + j % k2) % n2;
                covered[pos] += 1;
                let lo = (p0.max(1e-300) / p1.max(1e-300))
                    .ln()
                    .clamp(-2.0 * LLR_CLIP, 2.0 * LLR_CLIP);
                log_odds[pos] += lo;
                if p1 > p0 {
                    votes[pos] += 1;
                } else if p0 > p1 {
                    votes[pos] -= 1;
                }
            }
        }
        let mut disagreements = 0;
        let mut ambiguous = 0;
        let bits: Vec<u8> = (0..n1 * n2)
            .map(|i| {
                if votes[i].unsigned_abs() as usize != covered[i] {
                    disagreements += 1;
                }
                if votes[i] > 0 {
                    1
                } else if votes[i] < 0 {
                    0
                } else if log_odds[i] < 0.0 {
                    1
                } else {
                    if log_odds[i] == 0.0 {
                        ambiguous += 1;
                    }
                    0
                }
            })
            .collect();
        let posterior = SoftGrid::from_values(
            n1,
            n2,
            log_odds
                .iter()
                .zip(&covered)
                .map(|(l, &c)| l / c as f64)
                .collect(),
        )
        .expect("dimensions agree");
        (
            TorusGrid::from_bits(n1, n2, bits).expect("dimensions agree"),
            disagreements,
            posterior,
            ambiguous,
        )
    }
}

fn normalized(mut v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    if s > 0.0 && s.is_finite() {
        for x in &mut v {
            *x /= s;
        }
    } else {
        let u = 1.0 / v.len() as f64;
        v.fill(u);
    }
    v
}

pub fn trellis2d_decode(
    llr: &LlrPlanes,
    spec: &CodeSpec,
    opts: Trellis2dOptions,
) -> Trellis2dOutput {
    Trellis2dDecoder::new(spec, opts).decode(llr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{catalog, encode};

    fn noiseless(name: &str, word: u64, schedule: Schedule) -> (TorusGrid, Trellis2dOutput) {
        let spec = catalog::get(name).unwrap();
        let u = TorusGrid::from_word(6, 6, word);
        let llr = LlrPlanes::from_codeword(&encode(&u, &spec).unwrap(), 4.0);
        let opts = Trellis2dOptions {
            schedule,
            ..Default::default()
        };
        (u, trellis2d_decode(&llr, &spec, opts))
    }

    #[test]
    fn noiseless_words_come_back() {
        for (name, word) in [
            ("c1", 0x9_3c5a_0f17u64),
            ("c5", 0x5_a5a5_1234),
            ("c3", 0xf_0000_0001),
        ] {
            for schedule in [Schedule::Flooding, Schedule::Serial] {
                let (u, out) = noiseless(name, word, schedule);
                assert_eq!(out.info, u, "{name} {schedule:?}");
                assert!(out.report.converged);
                assert_eq!(out.report.disagreements, 0);
            }
        }
    }

    #[test]
    fn flat_input_is_ambiguous() {
        let spec = catalog::get("c1").unwrap();
        let out = trellis2d_decode(
            &LlrPlanes::zeros(2, 6, 6),
            &spec,
            Trellis2dOptions::default(),
        );
        assert!(out.info.is_zero());
        assert_eq!(out.report.ambiguous_bits, 36);
    }

    #[test]
    fn overlap_projections_agree_across_neighbours() {
        let spec = catalog::get("c5").unwrap();
        let dec = Trellis2dDecoder::new(&spec, Trellis2dOptions::default());
        let r = 0b101_110_011usize;
        // rows 1..3 of r seen from below equal rows 0..2 of the shifted-up config
        let shifted = r >> 3;
        let up = DIRS.iter().position(|&d| d == Direction::Up).unwrap();
        let down = DIRS.iter().position(|&d| d == Direction::Down).unwrap();
        assert_eq!(dec.proj[down][r], dec.proj[up][shifted]);
    }
}
