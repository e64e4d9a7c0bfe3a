use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::{SpectrumError, WeightSpectrum};
use crate::codec::CodeSpec;

/// Tree growth limits for [`beast_spectrum`].
#[derive(Clone, Copy, Debug)]
pub struct BeastCaps {
    /// Total tree nodes (both directions) before the search gives up and
    /// reports a non-exhaustive spectrum.
    pub max_nodes: u64,
}

impl Default for BeastCaps {
    fn default() -> Self {
        BeastCaps {
            max_nodes: 2_000_000_000,
        }
    }
}

/// One constraint region laid by a path: the information bits it assigns
/// for the first time, and per-plane masks whose parity is the fragment.
struct Step {
    new_bits: Vec<u32>,
    masks: Vec<u64>,
}

/// Regions in forward order `j = k2*N1 + k1`, each with its patch mask and
/// fragment masks over row-major information positions.
fn region_masks(spec: &CodeSpec) -> Vec<(u64, Vec<u64>)> {
    let (n1, n2) = spec.info();
    let (kk1, kk2) = spec.support();
    let mut out = Vec::with_capacity(n1 * n2);
    for k2 in 0..n2 {
        for k1 in 0..n1 {
            let pos = |a: usize, b: usize| ((k1 + a) % n1) * n2 + (k2 + b) % n2;
            let mut patch = 0u64;
            for a in 0..kk1 {
                for b in 0..kk2 {
                    patch |= 1 << pos(a, b);
                }
            }
            let masks = (0..spec.n())
                .map(|i| {
                    let mut m = 0u64;
                    for a in 0..kk1 {
                        for b in 0..kk2 {
                            if spec.kernel_bit(i, kk1 - 1 - a, kk2 - 1 - b) == 1 {
                                m ^= 1 << pos(a, b);
                            }
                        }
                    }
                    m
                })
                .collect();
            out.push((patch, masks));
        }
    }
    out
}

fn build_steps(regions: &[&(u64, Vec<u64>)]) -> (Vec<Step>, u64) {
    let mut assigned = 0u64;
    let mut steps = Vec::with_capacity(regions.len());
    for (patch, masks) in regions {
        let fresh = patch & !assigned;
        assigned |= fresh;
        let mut new_bits = Vec::new();
        let mut f = fresh;
        while f != 0 {
            new_bits.push(f.trailing_zeros());
            f &= f - 1;
        }
        steps.push(Step {
            new_bits,
            masks: masks.clone(),
        });
    }
    (steps, assigned)
}

type Bins = HashMap<u64, Vec<u64>>;

struct Tree<'a> {
    steps: &'a [Step],
    shared: u64,
    w_max: usize,
    nodes: &'a AtomicU64,
    max_nodes: u64,
    aborted: &'a AtomicBool,
}

impl Tree<'_> {
    fn grow(&self, depth: usize, u: u64, w: usize, bins: &mut Bins, local: &mut u64) {
        if depth == self.steps.len() {
            let h = bins
                .entry(u & self.shared)
                .or_insert_with(|| vec![0; self.w_max + 1]);
            h[w] += 1;
            return;
        }
        *local += 1;
        if *local >= 4096 {
            let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
            *local = 0;
            if total > self.max_nodes {
                self.aborted.store(true, Ordering::Relaxed);
            }
        }
        if self.aborted.load(Ordering::Relaxed) {
            return;
        }
        let step = &self.steps[depth];
        for choice in 0..(1u64 << step.new_bits.len()) {
            let mut next = u;
            for (j, &p) in step.new_bits.iter().enumerate() {
                next |= ((choice >> j) & 1) << p;
            }
            let dw: usize = step
                .masks
                .iter()
                .map(|m| ((next & m).count_ones() & 1) as usize)
                .sum();
            if w + dw <= self.w_max {
                self.grow(depth + 1, next, w + dw, bins, local);
            }
        }
    }

    /// Fans the first step out across workers and merges the bins.
    fn run(&self) -> Bins {
        if self.steps.is_empty() {
            let mut bins = Bins::new();
            let mut h = vec![0; self.w_max + 1];
            h[0] = 1;
            bins.insert(0, h);
            return bins;
        }
        let first = &self.steps[0];
        (0..(1u64 << first.new_bits.len()))
            .into_par_iter()
            .map(|choice| {
                let mut u = 0u64;
                for (j, &p) in first.new_bits.iter().enumerate() {
                    u |= ((choice >> j) & 1) << p;
                }
                let w: usize = first
                    .masks
                    .iter()
                    .map(|m| ((u & m).count_ones() & 1) as usize)
                    .sum();
                let mut bins = Bins::new();
                let mut local = 0;
                if w <= self.w_max {
                    self.grow(1, u, w, &mut bins, &mut local);
                }
                self.nodes.fetch_add(local, Ordering::Relaxed);
                bins
            })
            .reduce(Bins::new, |mut a, b| {
                for (k, h) in b {
                    let e = a.entry(k).or_insert_with(|| vec![0; h.len()]);
                    for (x, y) in e.iter_mut().zip(h) {
                        *x += y;
                    }
                }
                a
            })
    }
}

/// Counts every codeword of weight `1..=w_max` exactly once by pairing
/// forward paths (down then right from the top-left region) with backward
/// paths (up then left from the bottom-right region).
///
/// Forward paths lay the regions of the first `ceil(N2/2)` columns, backward
/// paths the rest. Each region's fragment belongs to exactly one side, so a
/// pair's weight is the sum of the sides. Pairs are binned on the bits both
/// sides assign, which include the `K2 - 1` wrap-around columns that form the
/// initial state, so binning enforces compatibility on the full border.
pub fn beast_spectrum(
    spec: &CodeSpec,
    w_max: usize,
    caps: BeastCaps,
) -> Result<WeightSpectrum, SpectrumError> {
    let (n1, n2) = spec.info();
    if n1 * n2 > 64 {
        return Err(SpectrumError::TooLarge(format!(
            "tree search packs the information word in 64 bits, N1*N2 = {}",
            n1 * n2
        )));
    }
    let regions = region_masks(spec);
    let split = n1 * n2.div_ceil(2);
    let fw_regions: Vec<_> = regions[..split].iter().collect();
    let bw_regions: Vec<_> = regions[split..].iter().rev().collect();
    let (fw_steps, fw_mask) = build_steps(&fw_regions);
    let (bw_steps, bw_mask) = build_steps(&bw_regions);
    let shared = fw_mask & bw_mask;

    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let tree = |steps| Tree {
        steps,
        shared,
        w_max,
        nodes: &nodes,
        max_nodes: caps.max_nodes,
        aborted: &aborted,
    };
    let fw = tree(&fw_steps).run();
    let bw = tree(&bw_steps).run();

    let mut counts = vec![0u64; w_max + 1];
    for (key, hf) in &fw {
        let Some(hb) = bw.get(key) else { continue };
        for (wf, &cf) in hf.iter().enumerate() {
            if cf == 0 {
                continue;
            }
            for (wb, &cb) in hb.iter().enumerate().take(w_max + 1 - wf) {
                counts[wf + wb] += cf * cb;
            }
        }
    }
    let exhaustive = !aborted.load(Ordering::Relaxed);
    if exhaustive {
        // the all-zero information word pairs with itself at weight 0
        counts[0] -= 1;
        if counts[0] > 0 {
            return Err(SpectrumError::Degenerate {
                collisions: counts[0],
            });
        }
    }
    counts[0] = 0;
    Ok(WeightSpectrum::from_counts(counts, exhaustive))
}
