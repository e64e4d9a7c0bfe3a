use serde::Serialize;

use super::TannerGraph;

/// Result shared by the parity-domain decoders.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphOutput {
    /// Code-bit estimate in flat variable order.
    pub bits: Vec<u8>,
    /// Posterior LLR per code bit (`> 0` favours 0).
    pub posterior: Vec<f64>,
    pub iterations: usize,
    /// The estimate satisfies every check of the base graph.
    pub converged: bool,
    /// Unsatisfied base checks of the returned estimate.
    pub syndrome_weight: usize,
    /// Outer restarts begun (modified LBP only).
    pub restarts: usize,
}

/// Magnitude bound on `|tanh|` products before `atanh`.
const TANH_LIMIT: f64 = 1.0 - 1e-15;

/// Messages of a flooding sum-product decoder, stored per check row so that
/// rows can be swapped out individually.
#[derive(Clone, Debug)]
pub(crate) struct BpState {
    pub rows: Vec<Vec<usize>>,
    /// Variable-to-check messages, aligned with `rows`.
    pub v: Vec<Vec<f64>>,
    /// Check-to-variable messages, aligned with `rows`.
    pub c: Vec<Vec<f64>>,
    pub posterior: Vec<f64>,
}

impl BpState {
    pub fn new(rows: Vec<Vec<usize>>, llr: &[f64]) -> BpState {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&j| llr[j]).collect())
            .collect();
        let c = rows.iter().map(|r| vec![0.0; r.len()]).collect();
        BpState {
            rows,
            v,
            c,
            posterior: llr.to_vec(),
        }
    }

    /// Replaces row `i` and restarts its variable messages from the channel.
    pub fn reset_row(&mut self, i: usize, support: Vec<usize>, llr: &[f64]) {
        self.v[i] = support.iter().map(|&j| llr[j]).collect();
        self.c[i] = vec![0.0; support.len()];
        self.rows[i] = support;
    }

    /// One check half-iteration (tanh rule) followed by one variable
    /// half-iteration.
    pub fn iterate(&mut self, llr: &[f64]) {
        for (vr, cr) in self.v.iter().zip(self.c.iter_mut()) {
            tanh_rule(vr, cr);
        }
        self.posterior.copy_from_slice(llr);
        for (row, cr) in self.rows.iter().zip(&self.c) {
            for (&j, &m) in row.iter().zip(cr) {
                self.posterior[j] += m;
            }
        }
        for ((row, vr), cr) in self.rows.iter().zip(self.v.iter_mut()).zip(&self.c) {
            for ((&j, v), &m) in row.iter().zip(vr.iter_mut()).zip(cr) {
                *v = self.posterior[j] - m;
            }
        }
    }

    pub fn hard_decision(&self) -> Vec<u8> {
        self.posterior.iter().map(|&l| (l < 0.0) as u8).collect()
    }
}

/// Leave-one-out `2 atanh(prod tanh(v/2))` via prefix and suffix products.
pub(crate) fn tanh_rule(v: &[f64], out: &mut [f64]) {
    let t: Vec<f64> = v.iter().map(|x| (x / 2.0).tanh()).collect();
    let mut prefix = 1.0;
    for (o, ti) in out.iter_mut().zip(&t) {
        *o = prefix;
        prefix *= ti;
    }
    let mut suffix = 1.0;
    for (o, ti) in out.iter_mut().zip(&t).rev() {
        *o = 2.0 * (*o * suffix).clamp(-TANH_LIMIT, TANH_LIMIT).atanh();
        suffix *= ti;
    }
}

/// Sum-product decoding with a flooding schedule. At least one iteration
/// runs; decoding stops once the hard decision satisfies every check.
pub fn lbp_decode(llr: &[f64], graph: &TannerGraph, max_iters: usize) -> GraphOutput {
    assert_eq!(llr.len(), graph.num_vars(), "one LLR per variable node");
    let mut bp = BpState::new(graph.checks().to_vec(), llr);
    let mut bits = bp.hard_decision();
    let mut syndrome = usize::MAX;
    let mut iterations = 0;
    while iterations < max_iters.max(1) && syndrome != 0 {
        bp.iterate(llr);
        iterations += 1;
        bits = bp.hard_decision();
        syndrome = graph.syndrome_weight(&bits);
    }
    GraphOutput {
        bits,
        posterior: bp.posterior,
        iterations,
        converged: syndrome == 0,
        syndrome_weight: syndrome,
        restarts: 0,
    }
}
