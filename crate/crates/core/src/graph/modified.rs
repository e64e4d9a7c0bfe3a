use rand::Rng;
use serde::{Deserialize, Serialize};

use super::lbp::BpState;
use super::{GraphError, GraphOutput, TannerGraph};
use crate::codec::{syndrome_former_family, CodeSpec, ParityCheck};
use crate::Poly2;

/// Syndrome formers `H_1 .. H_T` realized over the same torus. Row `i` of
/// every member is a check centred on the same position, so rows can be
/// mixed freely.
#[derive(Clone, Debug)]
pub struct SyndromeFamily {
    members: Vec<ParityCheck>,
    base: TannerGraph,
}

impl SyndromeFamily {
    pub fn new(members: Vec<ParityCheck>) -> Result<Self, GraphError> {
        let first = members
            .first()
            .ok_or_else(|| GraphError::Invalid("empty syndrome family".into()))?;
        let shape = (first.num_checks(), first.num_vars());
        if members
            .iter()
            .any(|m| (m.num_checks(), m.num_vars()) != shape)
        {
            return Err(GraphError::Dimension(
                "family members differ in shape".into(),
            ));
        }
        Ok(SyndromeFamily {
            base: super::build_tanner(first),
            members,
        })
    }

    /// `z_k H` for each multiplier, the first being the base check.
    pub fn from_multipliers(spec: &CodeSpec, z: &[Poly2]) -> Result<Self, GraphError> {
        SyndromeFamily::new(syndrome_former_family(spec, z)?)
    }

    /// Multipliers `1, 1 + y, 1 + x`.
    pub fn standard(spec: &CodeSpec) -> Result<Self, GraphError> {
        let z = ["1", "1 + y", "1 + x"].map(|s| s.parse::<Poly2>().expect("valid literal"));
        SyndromeFamily::from_multipliers(spec, &z)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[ParityCheck] {
        &self.members
    }

    pub fn base(&self) -> &TannerGraph {
        &self.base
    }

    fn row(&self, k: usize, i: usize) -> Vec<usize> {
        let mut r = self.members[k].matrix.row(i).to_vec();
        r.sort_unstable();
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModifiedLbpOptions {
    /// Outer restarts `P`, each with a fresh row selection.
    pub outer: usize,
    /// Row-hopping rounds `Q` per restart.
    pub inner: usize,
    /// LBP iterations between two hops.
    pub segment_iters: usize,
    /// Probability that a row advances to the next family member.
    pub p_flip: f64,
}

impl Default for ModifiedLbpOptions {
    fn default() -> Self {
        ModifiedLbpOptions {
            outer: 5,
            inner: 10,
            segment_iters: 10,
            p_flip: 0.3,
        }
    }
}

/// Per-row family selection and the live messages.
#[derive(Clone, Debug)]
pub struct ThetaState {
    pub theta: Vec<usize>,
    bp: BpState,
}

/// LBP that, while the estimate is not a codeword of the base matrix,
/// hops a random subset of rows to the next syndrome former.
pub fn modified_lbp_decode<R: Rng + ?Sized>(
    llr: &[f64],
    family: &SyndromeFamily,
    opts: ModifiedLbpOptions,
    rng: &mut R,
) -> Result<GraphOutput, GraphError> {
    let base = family.base();
    if llr.len() != base.num_vars() {
        return Err(GraphError::Dimension(format!(
            "{} LLRs for {} variables",
            llr.len(),
            base.num_vars()
        )));
    }
    if !(0.0..1.0).contains(&opts.p_flip) || opts.outer == 0 {
        return Err(GraphError::Invalid(
            "need 0 <= p_flip < 1 and at least one restart".into(),
        ));
    }
    let t = family.len();
    let rows = base.num_checks();
    let mut iterations = 0;
    let mut last: Option<(Vec<u8>, Vec<f64>, usize)> = None;

    // one LBP segment, stopping early on a base codeword
    let segment = |state: &mut ThetaState, iterations: &mut usize| -> (Vec<u8>, usize) {
        let mut bits = state.bp.hard_decision();
        let mut syn = usize::MAX;
        for _ in 0..opts.segment_iters.max(1) {
            state.bp.iterate(llr);
            *iterations += 1;
            bits = state.bp.hard_decision();
            syn = base.syndrome_weight(&bits);
            if syn == 0 {
                break;
            }
        }
        (bits, syn)
    };

    for p in 0..opts.outer {
        let theta: Vec<usize> = (0..rows).map(|_| rng.random_range(0..t)).collect();
        let selected = (0..rows).map(|i| family.row(theta[i], i)).collect();
        let mut state = ThetaState {
            theta,
            bp: BpState::new(selected, llr),
        };
        let (mut bits, mut syn) = segment(&mut state, &mut iterations);
        for _ in 0..opts.inner {
            if syn == 0 {
                break;
            }
            for i in 0..rows {
                if rng.random_bool(opts.p_flip) {
                    state.theta[i] = (state.theta[i] + 1) % t;
                    state.bp.reset_row(i, family.row(state.theta[i], i), llr);
                }
            }
            (bits, syn) = segment(&mut state, &mut iterations);
        }
        if syn == 0 {
            return Ok(GraphOutput {
                bits,
                posterior: state.bp.posterior,
                iterations,
                converged: true,
                syndrome_weight: 0,
                restarts: p + 1,
            });
        }
        last = Some((bits, state.bp.posterior, syn));
    }
    let (bits, posterior, syn) = last.expect("at least one restart ran");
    Ok(GraphOutput {
        bits,
        posterior,
        iterations,
        converged: false,
        syndrome_weight: syn,
        restarts: opts.outer,
    })
}
