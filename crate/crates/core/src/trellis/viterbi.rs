use serde::{Deserialize, Serialize};

use super::DecodeError;
use crate::codec::{CodeSpec, LlrPlanes, PackedGenerator, TorusGrid};

/// Which grid axis is fed to the 1D trellis one slice at a time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    /// Pick whichever axis gives fewer states (columns on a tie).
    #[default]
    Auto,
    Columns,
    Rows,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ViterbiMode {
    /// One constrained pass per start state, start = end: true ML.
    #[default]
    Exact,
    /// One pass with free start and free end; approximate.
    SinglePass,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ViterbiOptions {
    pub mode: ViterbiMode,
    pub axis: Axis,
    /// Upper limit on trellis states, `2^((K2-1) N1)` for column slices.
    pub max_states: usize,
}

impl Default for ViterbiOptions {
    fn default() -> Self {
        ViterbiOptions {
            mode: ViterbiMode::Exact,
            axis: Axis::Auto,
            max_states: 1 << 16,
        }
    }
}

/// 1D trellis over column slices: a state holds the `K2 - 1` previous
/// columns, an input is one column of `N1` bits.
///
/// The window `state | input << ((K2-1) N1)` has column `t - K2 + 1 + j`
/// at bits `j N1 ..`; the next state is `window >> N1`.
#[derive(Clone, Debug)]
pub struct ColumnTrellis {
    pub n: usize,
    pub n1: usize,
    pub n2: usize,
    pub k2: usize,
    pub state_bits: usize,
    /// Output bits of every window: bit `i N1 + k1` is plane `i`, row `k1`
    /// of the current column.
    pub outputs: Vec<u64>,
}

impl ColumnTrellis {
    pub fn num_states(&self) -> usize {
        1 << self.state_bits
    }

    pub fn num_inputs(&self) -> usize {
        1 << self.n1
    }

    pub fn next_state(&self, window: usize) -> usize {
        window >> self.n1
    }
}

/// Column trellis of `spec` (rows axis: of its transpose).
pub fn build_column_trellis(
    spec: &CodeSpec,
    axis: Axis,
    max_states: usize,
) -> Result<ColumnTrellis, DecodeError> {
    let oriented = match resolve_axis(spec, axis) {
        Axis::Rows => transpose_spec(spec),
        _ => spec.clone(),
    };
    column_trellis(&oriented, max_states)
}

fn state_bits_for(spec: &CodeSpec) -> usize {
    (spec.support().1 - 1) * spec.info().0
}

fn resolve_axis(spec: &CodeSpec, axis: Axis) -> Axis {
    match axis {
        Axis::Auto => {
            let (k1, k2) = spec.support();
            let (n1, n2) = spec.info();
            if (k1 - 1) * n2 < (k2 - 1) * n1 {
                Axis::Rows
            } else {
                Axis::Columns
            }
        }
        a => a,
    }
}

pub(crate) fn transpose_spec(spec: &CodeSpec) -> CodeSpec {
    let (k1, k2) = spec.support();
    let (n1, n2) = spec.info();
    let kernels = (0..spec.n())
        .map(|i| {
            (0..k2)
                .map(|b| (0..k1).map(|a| spec.kernel_bit(i, a, b)).collect())
                .collect()
        })
        .collect();
    CodeSpec::new((n2, n1), (k2, k1), kernels).expect("transpose of a valid spec")
}

fn column_trellis(spec: &CodeSpec, max_states: usize) -> Result<ColumnTrellis, DecodeError> {
    let (n1, n2) = spec.info();
    let (k1, k2) = spec.support();
    let n = spec.n();
    let state_bits = state_bits_for(spec);
    let window_bits = state_bits + n1;
    if state_bits >= usize::BITS as usize - 1
        || (1usize << state_bits) > max_states
        || window_bits > 26
    {
        return Err(DecodeError::StateLimit {
            states_log2: state_bits,
            limit: max_states,
        });
    }
    if n * n1 > 64 {
        return Err(DecodeError::Invalid(format!(
            "{} output bits per slice exceed 64",
            n * n1
        )));
    }
    // output of each single-bit window, then extend linearly
    let mut unit = vec![0u64; window_bits];
    for (bit, u) in unit.iter_mut().enumerate() {
        let (j, r) = (bit / n1, bit % n1);
        let b = k2 - 1 - j; // column t - b
        for i in 0..n {
            for a in 0..k1 {
                if spec.kernel_bit(i, a, b) == 1 {
                    let k = (r + a) % n1;
                    *u ^= 1 << (i * n1 + k);
                }
            }
        }
    }
    let mut outputs = vec![0u64; 1 << window_bits];
    for w in 1..outputs.len() {
        let low = w.trailing_zeros() as usize;
        outputs[w] = outputs[w & (w - 1)] ^ unit[low];
    }
    Ok(ColumnTrellis {
        n,
        n1,
        n2,
        k2,
        state_bits,
        outputs,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ViterbiOutput {
    pub info: TorusGrid,
    /// Sum of the LLRs of the code bits decided as 1 (lower is better).
    pub metric: f64,
    /// Start states actually expanded in exact mode.
    pub start_states_run: usize,
}

/// Reusable decoder: trellis built once per code.
#[derive(Clone, Debug)]
pub struct ViterbiDecoder {
    trellis: ColumnTrellis,
    transposed: bool,
    mode: ViterbiMode,
    info: (usize, usize),
    n: usize,
}

impl ViterbiDecoder {
    pub fn new(spec: &CodeSpec, opts: ViterbiOptions) -> Result<Self, DecodeError> {
        let axis = resolve_axis(spec, opts.axis);
        let transposed = axis == Axis::Rows;
        let oriented = if transposed {
            transpose_spec(spec)
        } else {
            spec.clone()
        };
        Ok(ViterbiDecoder {
            trellis: column_trellis(&oriented, opts.max_states)?,
            transposed,
            mode: opts.mode,
            info: spec.info(),
            n: spec.n(),
        })
    }

    pub fn trellis(&self) -> &ColumnTrellis {
        &self.trellis
    }

    pub fn decode(&self, llr: &LlrPlanes) -> Result<ViterbiOutput, DecodeError> {
        if llr.n() != self.n || llr.dims() != self.info {
            return Err(DecodeError::Dimension(format!(
                "{} LLR planes of {:?} for a code with n = {} over {:?}",
                llr.n(),
                llr.dims(),
                self.n,
                self.info
            )));
        }
        let llr = if self.transposed {
            llr.transpose()
        } else {
            llr.clone()
        };
        let mut out = match self.mode {
            ViterbiMode::Exact => self.exact(&llr),
            ViterbiMode::SinglePass => self.single_pass(&llr),
        };
        if self.transposed {
            out.info = out.info.transpose();
        }
        Ok(out)
    }

    /// `bm[t][w]`: LLR sum over the 1-bits of window `w`'s output at stage
    /// `t`, assembled from byte tables.
    fn branch_metrics(&self, llr: &LlrPlanes) -> Vec<Vec<f64>> {
        let tr = &self.trellis;
        let out_bits = tr.n * tr.n1;
        let bytes = out_bits.div_ceil(8);
        (0..tr.n2)
            .map(|t| {
                let lv = |bit: usize| llr.planes[bit / tr.n1].get(bit % tr.n1, t);
                let tables: Vec<[f64; 256]> = (0..bytes)
                    .map(|byte| {
                        let mut tab = [0.0f64; 256];
                        for v in 1..256usize {
                            let bit = byte * 8 + v.trailing_zeros() as usize;
                            let add = if bit < out_bits { lv(bit) } else { 0.0 };
                            tab[v] = tab[v & (v - 1)] + add;
                        }
                        tab
                    })
                    .collect();
                tr.outputs
                    .iter()
                    .map(|&o| {
                        tables
                            .iter()
                            .enumerate()
                            .map(|(b, tab)| tab[((o >> (8 * b)) & 0xff) as usize])
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    /// Free-end cost-to-go `beta[t][s]`, a lower bound for any completion.
    fn cost_to_go(&self, bm: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let tr = &self.trellis;
        let (ns, ni) = (tr.num_states(), tr.num_inputs());
        let mut beta = vec![vec![0.0; ns]; tr.n2 + 1];
        for t in (0..tr.n2).rev() {
            for s in 0..ns {
                let mut best = f64::INFINITY;
                for c in 0..ni {
                    let w = s | (c << tr.state_bits);
                    let m = bm[t][w] + beta[t + 1][tr.next_state(w)];
                    if m < best {
                        best = m;
                    }
                }
                beta[t][s] = best;
            }
        }
        beta
    }

    fn assemble(&self, cols: &[usize]) -> TorusGrid {
        let tr = &self.trellis;
        TorusGrid::from_fn(tr.n1, tr.n2, |k1, k2| ((cols[k2] >> k1) & 1) as u8)
    }

    fn exact(&self, llr: &LlrPlanes) -> ViterbiOutput {
        let tr = &self.trellis;
        let (ns, ni) = (tr.num_states(), tr.num_inputs());
        let bm = self.branch_metrics(llr);
        let beta = self.cost_to_go(&bm);
        let mut order: Vec<usize> = (0..ns).collect();
        order.sort_by(|&a, &b| beta[0][a].total_cmp(&beta[0][b]).then(a.cmp(&b)));

        let forced_from = tr.n2 + 1 - tr.k2; // stages whose input is fixed by the start state
        let col_mask = ni - 1;
        let mut best = f64::INFINITY;
        let mut best_start = usize::MAX;
        let mut best_cols = vec![0usize; tr.n2];
        let mut runs = 0;
        let mut cur = vec![f64::INFINITY; ns];
        let mut next = vec![f64::INFINITY; ns];
        let mut surv = vec![vec![(0u32, 0u32); ns]; tr.n2];
        let slack = |b: f64| b + 1e-9 * (1.0 + b.abs());

        for &s in &order {
            if beta[0][s] > slack(best) {
                break;
            }
            runs += 1;
            cur.fill(f64::INFINITY);
            cur[s] = 0.0;
            for t in 0..tr.n2 {
                next.fill(f64::INFINITY);
                let forced =
                    (t >= forced_from).then(|| (s >> ((t - forced_from) * tr.n1)) & col_mask);
                for prev in 0..ns {
                    let m0 = cur[prev];
                    if !m0.is_finite() || m0 + beta[t][prev] > slack(best) {
                        continue;
                    }
                    let inputs = match forced {
                        Some(c) => c..c + 1,
                        None => 0..ni,
                    };
                    for c in inputs {
                        let w = prev | (c << tr.state_bits);
                        let m = m0 + bm[t][w];
                        let nx = tr.next_state(w);
                        if m < next[nx] {
                            next[nx] = m;
                            surv[t][nx] = (prev as u32, c as u32);
                        }
                    }
                }
                std::mem::swap(&mut cur, &mut next);
            }
            let m = cur[s];
            if m < best || (m == best && s < best_start) {
                best = m;
                best_start = s;
                let mut state = s;
                for t in (0..tr.n2).rev() {
                    let (p, c) = surv[t][state];
                    best_cols[t] = c as usize;
                    state = p as usize;
                }
            }
        }
        ViterbiOutput {
            info: self.assemble(&best_cols),
            metric: best,
            start_states_run: runs,
        }
    }

    fn single_pass(&self, llr: &LlrPlanes) -> ViterbiOutput {
        let tr = &self.trellis;
        let (ns, ni) = (tr.num_states(), tr.num_inputs());
        let bm = self.branch_metrics(llr);
        let mut cur = vec![0.0; ns];
        let mut next = vec![f64::INFINITY; ns];
        let mut surv = vec![vec![(0u32, 0u32); ns]; tr.n2];
        for t in 0..tr.n2 {
            next.fill(f64::INFINITY);
            for prev in 0..ns {
                for c in 0..ni {
                    let w = prev | (c << tr.state_bits);
                    let m = cur[prev] + bm[t][w];
                    let nx = tr.next_state(w);
                    if m < next[nx] {
                        next[nx] = m;
                        surv[t][nx] = (prev as u32, c as u32);
                    }
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        let (mut state, metric) =
            cur.iter()
                .copied()
                .enumerate()
                .fold(
                    (0, f64::INFINITY),
                    |acc, (s, m)| if m < acc.1 { (s, m) } else { acc },
                );
        let mut cols = vec![0usize; tr.n2];
        for t in (0..tr.n2).rev() {
            let (p, c) = surv[t][state];
            cols[t] = c as usize;
            state = p as usize;
        }
        ViterbiOutput {
            info: self.assemble(&cols),
            metric,
            start_states_run: 1,
        }
    }
}

pub fn ml_viterbi(
    llr: &LlrPlanes,
    spec: &CodeSpec,
    opts: ViterbiOptions,
) -> Result<ViterbiOutput, DecodeError> {
    ViterbiDecoder::new(spec, opts)?.decode(llr)
}

/// Information size up to which [`exhaustive_ml`] is accepted.
pub const EXHAUSTIVE_MAX_BITS: usize = 24;

/// Minimum-distance decoding by enumerating every codeword; ties go to
/// the smaller information word.
pub fn exhaustive_ml(llr: &LlrPlanes, spec: &CodeSpec) -> Result<TorusGrid, DecodeError> {
    if spec.k() > EXHAUSTIVE_MAX_BITS {
        return Err(DecodeError::Invalid(format!(
            "exhaustive search is limited to {EXHAUSTIVE_MAX_BITS} information bits"
        )));
    }
    let gen = PackedGenerator::new(spec).map_err(|e| DecodeError::Invalid(e.to_string()))?;
    let flat = llr.to_flat();
    if flat.len() != gen.n {
        return Err(DecodeError::Dimension(
            "LLR length does not match the code".into(),
        ));
    }
    let bytes = gen.n.div_ceil(8);
    let tables: Vec<[f64; 256]> = (0..bytes)
        .map(|b| {
            let mut tab = [0.0; 256];
            for v in 1..256usize {
                let bit = b * 8 + v.trailing_zeros() as usize;
                tab[v] = tab[v & (v - 1)] + flat.get(bit).copied().unwrap_or(0.0);
            }
            tab
        })
        .collect();
    let metric = |cw: u128| -> f64 {
        tables
            .iter()
            .enumerate()
            .map(|(b, t)| t[((cw >> (8 * b)) & 0xff) as usize])
            .sum()
    };
    let (mut best_u, mut best_m) = (0u64, metric(0));
    let mut cw = 0u128;
    for i in 1u64..(1u64 << gen.k) {
        cw ^= gen.rows[i.trailing_zeros() as usize];
        let u = i ^ (i >> 1);
        let m = metric(cw);
        if m < best_m || (m == best_m && u < best_u) {
            best_m = m;
            best_u = u;
        }
    }
    let (n1, n2) = spec.info();
    Ok(TorusGrid::from_word(n1, n2, best_u))
}
