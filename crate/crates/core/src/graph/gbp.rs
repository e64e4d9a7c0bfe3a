use serde::{Deserialize, Serialize};

use super::{GraphError, GraphOutput, RegionGraph};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GbpOptions {
    pub max_iters: usize,
    /// Weight of the old message in each update.
    pub damping: f64,
    /// Stop as soon as the decision satisfies every check.
    pub stop_on_codeword: bool,
    /// Also stop once no log-message moves by more than this (0 disables).
    pub tolerance: f64,
}

impl Default for GbpOptions {
    fn default() -> Self {
        GbpOptions {
            max_iters: 50,
            damping: 0.5,
            stop_on_codeword: true,
            tolerance: 0.0,
        }
    }
}

/// Regions above this many variables are refused (`2^n` beliefs each).
pub const GBP_MAX_REGION_VARS: usize = 20;

const LOG_FLOOR: f64 = -200.0;

#[derive(Clone, Debug)]
struct Edge {
    parent: usize,
    child: usize,
    /// Child state of every parent state.
    proj: Vec<u32>,
}

fn build_edges(rg: &RegionGraph) -> Vec<Edge> {
    let mut edges = Vec::new();
    for (child, ps) in rg.parents.iter().enumerate() {
        for &parent in ps {
            let pv = &rg.regions[parent].vars;
            let pos: Vec<usize> = rg.regions[child]
                .vars
                .iter()
                .map(|v| pv.iter().position(|x| x == v).expect("child inside parent"))
                .collect();
            let proj = (0..1u32 << pv.len())
                .map(|x| {
                    pos.iter()
                        .enumerate()
                        .fold(0u32, |acc, (j, &p)| acc | (x >> p & 1) << j)
                })
                .collect();
            edges.push(Edge {
                parent,
                child,
                proj,
            });
        }
    }
    edges
}

/// Two-way GBP over a region graph, in the log domain. Every region holds
/// the channel evidence of its variables raised to its counting number;
/// large regions also hold their parity indicators.
#[derive(Clone, Debug)]
pub struct GbpDecoder {
    rg: RegionGraph,
    opts: GbpOptions,
    edges: Vec<Edge>,
    /// Per region, the local bit mask of each of its checks.
    check_masks: Vec<Vec<u32>>,
}

/// Final messages and beliefs, for inspection.
#[derive(Clone, Debug)]
pub struct GbpState {
    /// Normalized log-beliefs per region, indexed by local state.
    pub beliefs: Vec<Vec<f64>>,
    pub max_change: f64,
}

fn log_sum_exp(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let m = xs.clone().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Shift so the maximum is 0, then floor.
fn normalize_log(v: &mut [f64]) {
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        v.fill(0.0);
        return;
    }
    for x in v.iter_mut() {
        *x = (*x - m).max(LOG_FLOOR);
    }
}

impl GbpDecoder {
    pub fn new(rg: &RegionGraph, opts: GbpOptions) -> Result<Self, GraphError> {
        if let Some(r) = rg
            .regions
            .iter()
            .find(|r| r.vars.len() > GBP_MAX_REGION_VARS)
        {
            return Err(GraphError::TooLarge(format!(
                "region with {} variables exceeds {GBP_MAX_REGION_VARS}",
                r.vars.len()
            )));
        }
        for (i, r) in rg.regions.iter().enumerate() {
            let p = rg.parents[i].len();
            if p > 0 && (2.0 - (1.0 - r.counting as f64) / p as f64).abs() < 1e-12 {
                return Err(GraphError::Invalid(format!(
                    "region {i} has an unbounded two-way exponent"
                )));
            }
        }
        if !(0.0..1.0).contains(&opts.damping) {
            return Err(GraphError::Invalid("damping must lie in [0, 1)".into()));
        }
        Ok(GbpDecoder {
            rg: rg.clone(),
            opts,
            edges: build_edges(rg),
            check_masks: rg
                .regions
                .iter()
                .map(|r| {
                    r.checks
                        .iter()
                        .map(|&k| {
                            rg.check_supports[k]
                                .iter()
                                .map(|v| {
                                    r.vars
                                        .iter()
                                        .position(|x| x == v)
                                        .expect("check inside its region")
                                })
                                .fold(0u32, |acc, j| acc | 1 << j)
                        })
                        .collect()
                })
                .collect(),
        })
    }

    /// `log f_R^{c_R}`, with parity-violating states of large regions at
    /// negative infinity.
    fn local_terms(&self, llr: &[f64]) -> Vec<Vec<f64>> {
        self.rg
            .regions
            .iter()
            .zip(&self.check_masks)
            .map(|(r, masks)| {
                let c = r.counting as f64;
                // energy of x extends that of x without its lowest set bit
                let mut e = vec![0.0; 1 << r.vars.len()];
                for x in 1..e.len() {
                    e[x] = e[x & (x - 1)] - llr[r.vars[x.trailing_zeros() as usize]];
                }
                e.iter()
                    .enumerate()
                    .map(|(x, &v)| {
                        if masks.iter().any(|m| (x as u32 & m).count_ones() % 2 == 1) {
                            f64::NEG_INFINITY
                        } else {
                            c * v
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn decode(&self, llr: &[f64]) -> Result<(GraphOutput, GbpState), GraphError> {
        let rg = &self.rg;
        if llr.len() != rg.num_vars {
            return Err(GraphError::Dimension(format!(
                "{} LLRs for {} variables",
                llr.len(),
                rg.num_vars
            )));
        }
        let llr: Vec<f64> = llr
            .iter()
            .map(|l| l.clamp(-crate::codec::LLR_CLIP, crate::codec::LLR_CLIP))
            .collect();
        let edges = &self.edges;
        let local = self.local_terms(&llr);
        // states allowed by the parity indicators; the rest stay at -inf
        let live: Vec<Vec<u32>> = local
            .iter()
            .map(|l| {
                (0..l.len() as u32)
                    .filter(|&x| l[x as usize] > f64::NEG_INFINITY)
                    .collect()
            })
            .collect();
        let n = rg.regions.len();
        let beta: Vec<f64> = (0..n)
            .map(|i| {
                let p = rg.parents[i].len();
                if p == 0 {
                    1.0
                } else {
                    1.0 / (2.0 - (1.0 - rg.regions[i].counting as f64) / p as f64)
                }
            })
            .collect();
        let mut up_edges = vec![Vec::new(); n]; // edges where region is the child
        let mut down_edges = vec![Vec::new(); n]; // edges where region is the parent
        for (e, edge) in edges.iter().enumerate() {
            up_edges[edge.child].push(e);
            down_edges[edge.parent].push(e);
        }
        // n_msg: child -> parent, m_msg: parent -> child, both over child states
        let mut n_msg: Vec<Vec<f64>> = edges
            .iter()
            .map(|e| vec![0.0; 1 << rg.regions[e.child].vars.len()])
            .collect();
        let mut m_msg = n_msg.clone();

        let beliefs = |n_msg: &[Vec<f64>], m_msg: &[Vec<f64>]| -> Vec<Vec<f64>> {
            (0..n)
                .map(|r| {
                    let mut b = local[r].clone();
                    for &e in &up_edges[r] {
                        for (x, v) in b.iter_mut().enumerate() {
                            *v += m_msg[e][x];
                        }
                    }
                    for &e in &down_edges[r] {
                        let proj = &edges[e].proj;
                        for (x, v) in b.iter_mut().enumerate() {
                            *v += n_msg[e][proj[x] as usize];
                        }
                    }
                    b
                })
                .collect()
        };

        let d = self.opts.damping;
        let mut iterations = 0;
        let mut max_change = f64::INFINITY;
        let mut b = beliefs(&n_msg, &m_msg);
        let (mut bits, mut posterior) = self.decide(&b);
        let mut syndrome = syndrome_weight(&rg.check_supports, &bits);
        let mut converged = false;
        let (mut n0, mut m0, mut sum, mut nn, mut mm) =
            (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
        while iterations < self.opts.max_iters.max(1) {
            iterations += 1;
            max_change = 0.0;
            // each edge reads only its own messages and the old beliefs, so
            // updating in place matches a parallel (flooding) update
            for (e, edge) in edges.iter().enumerate() {
                let size = n_msg[e].len();
                n0.clear();
                n0.extend(b[edge.child].iter().zip(&m_msg[e]).map(|(x, m)| x - m));
                // log-sum-exp of the parent belief over each child state
                m0.clear();
                m0.resize(size, f64::NEG_INFINITY);
                sum.clear();
                sum.resize(size, 0.0);
                let bp = &b[edge.parent];
                for &xp in &live[edge.parent] {
                    let xc = edge.proj[xp as usize] as usize;
                    m0[xc] = m0[xc].max(bp[xp as usize]);
                }
                for &xp in &live[edge.parent] {
                    let xc = edge.proj[xp as usize] as usize;
                    sum[xc] += (bp[xp as usize] - m0[xc]).exp();
                }
                for (xc, m) in m0.iter_mut().enumerate() {
                    if *m > f64::NEG_INFINITY {
                        *m += sum[xc].ln() - n_msg[e][xc];
                    }
                }
                normalize_log(&mut n0);
                normalize_log(&mut m0);
                let bt = beta[edge.child];
                nn.clear();
                nn.extend(n0.iter().zip(&m0).map(|(a, c)| bt * a + (bt - 1.0) * c));
                mm.clear();
                mm.extend(m0.iter().zip(&n0).map(|(a, c)| bt * a + (bt - 1.0) * c));
                normalize_log(&mut nn);
                normalize_log(&mut mm);
                for (o, a) in n_msg[e].iter_mut().zip(&nn) {
                    let v = (1.0 - d) * a + d * *o;
                    max_change = max_change.max((v - *o).abs());
                    *o = v;
                }
                for (o, a) in m_msg[e].iter_mut().zip(&mm) {
                    let v = (1.0 - d) * a + d * *o;
                    max_change = max_change.max((v - *o).abs());
                    *o = v;
                }
            }
            b = beliefs(&n_msg, &m_msg);
            (bits, posterior) = self.decide(&b);
            syndrome = syndrome_weight(&rg.check_supports, &bits);
            if self.opts.stop_on_codeword && syndrome == 0 {
                converged = true;
                break;
            }
            if self.opts.tolerance > 0.0 && max_change < self.opts.tolerance {
                converged = syndrome == 0;
                break;
            }
        }
        let normalized: Vec<Vec<f64>> = b
            .into_iter()
            .map(|bel| {
                let z = log_sum_exp(bel.iter().copied());
                bel.iter().map(|x| x - z).collect()
            })
            .collect();
        Ok((
            GraphOutput {
                bits,
                posterior,
                iterations,
                converged: converged || syndrome == 0,
                syndrome_weight: syndrome,
                restarts: 0,
            },
            GbpState {
                beliefs: normalized,
                max_change,
            },
        ))
    }

    /// Each variable is read from the smallest region containing it (the
    /// first such region on ties); an even split decides 0.
    fn decide(&self, b: &[Vec<f64>]) -> (Vec<u8>, Vec<f64>) {
        let rg = &self.rg;
        let mut best: Vec<Option<usize>> = vec![None; rg.num_vars];
        for (i, r) in rg.regions.iter().enumerate() {
            for &v in &r.vars {
                if best[v].is_none_or(|j| rg.regions[j].vars.len() > r.vars.len()) {
                    best[v] = Some(i);
                }
            }
        }
        let mut bits = vec![0u8; rg.num_vars];
        let mut post = vec![0.0; rg.num_vars];
        for v in 0..rg.num_vars {
            let Some(r) = best[v] else { continue };
            let j = rg.regions[r]
                .vars
                .iter()
                .position(|&x| x == v)
                .expect("member");
            let (l0, l1) = marginal(&b[r], j);
            post[v] = (l0 - l1).clamp(-2.0 * crate::codec::LLR_CLIP, 2.0 * crate::codec::LLR_CLIP);
            bits[v] = (l1 > l0) as u8;
        }
        (bits, post)
    }
}

/// Log-marginals `(ln P(x_j = 0), ln P(x_j = 1))` up to a common constant.
pub(crate) fn marginal(b: &[f64], j: usize) -> (f64, f64) {
    let zero = b
        .iter()
        .enumerate()
        .filter(|(x, _)| x >> j & 1 == 0)
        .map(|(_, &v)| v);
    let one = b
        .iter()
        .enumerate()
        .filter(|(x, _)| x >> j & 1 == 1)
        .map(|(_, &v)| v);
    (log_sum_exp(zero), log_sum_exp(one))
}

fn syndrome_weight(checks: &[Vec<usize>], bits: &[u8]) -> usize {
    checks
        .iter()
        .filter(|r| r.iter().fold(0u8, |a, &v| a ^ bits[v]) == 1)
        .count()
}

pub fn gbp_decode(
    llr: &[f64],
    rg: &RegionGraph,
    opts: GbpOptions,
) -> Result<GraphOutput, GraphError> {
    Ok(GbpDecoder::new(rg, opts)?.decode(llr)?.0)
}
