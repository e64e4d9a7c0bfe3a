use super::GraphError;
use crate::codec::{LlrPlanes, PseudoInverse, SoftGrid, LLR_CLIP};
use crate::TorusIdeal;

/// Soft inverse encoder: one check-node pass over `x^a y^b u = sum q_i v_i`.
///
/// The LLR of `(sum q_i v_i)[k]` is the tanh-rule combination of every
/// code-bit LLR in that sum; undoing the delay then gives `u[k]`.
pub fn inverter_network(
    posterior: &LlrPlanes,
    inv: &PseudoInverse,
) -> Result<SoftGrid, GraphError> {
    if posterior.n() != inv.q.len() {
        return Err(GraphError::Dimension(format!(
            "{} LLR planes for an inverse with {} cofactors",
            posterior.n(),
            inv.q.len()
        )));
    }
    let (rows, cols) = posterior.dims();
    let ideal = TorusIdeal::for_grid(rows, cols);
    let taps: Vec<(usize, usize, usize)> = inv
        .q
        .iter()
        .enumerate()
        .flat_map(|(i, q)| {
            q.mod_torus(&ideal)
                .terms()
                .map(|m| (i, m.y as usize % rows, m.x as usize % cols))
                .collect::<Vec<_>>()
        })
        .collect();
    let limit = 1.0 - 1e-15;
    let clip = 2.0 * LLR_CLIP;
    let mut w = SoftGrid::zeros(rows, cols);
    for k1 in 0..rows {
        for k2 in 0..cols {
            let prod: f64 = taps
                .iter()
                .map(|&(i, dr, dc)| {
                    (posterior.planes[i].get((k1 + rows - dr) % rows, (k2 + cols - dc) % cols)
                        / 2.0)
                        .tanh()
                })
                .product();
            w.set(
                k1,
                k2,
                (2.0 * prod.clamp(-limit, limit).atanh()).clamp(-clip, clip),
            );
        }
    }
    Ok(w.shift(-(inv.beta as isize), -(inv.alpha as isize)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{build_pseudo_inverse, catalog, encode, TorusGrid};

    #[test]
    fn clipped_codeword_gives_the_information_word() {
        for name in ["c1", "c2", "c3", "c5", "c6"] {
            let spec = catalog::get(name).unwrap();
            let inv = build_pseudo_inverse(&spec).unwrap().unwrap();
            let u = TorusGrid::from_word(6, 6, 0x7_1d2c_93e8);
            let llr = LlrPlanes::from_codeword(&encode(&u, &spec).unwrap(), LLR_CLIP);
            assert_eq!(
                inverter_network(&llr, &inv).unwrap().hard_decision(),
                u,
                "{name}"
            );
        }
    }

    #[test]
    fn identity_cofactor_passes_plane_one_through() {
        let spec = catalog::get("c6").unwrap();
        let inv = build_pseudo_inverse(&spec).unwrap().unwrap();
        assert_eq!((inv.alpha, inv.beta), (0, 0));
        let llr = LlrPlanes::from_flat(
            2,
            6,
            6,
            &(0..72).map(|i| (i as f64 - 35.5) / 7.0).collect::<Vec<_>>(),
        )
        .unwrap();
        let out = inverter_network(&llr, &inv).unwrap();
        for k1 in 0..6 {
            for k2 in 0..6 {
                assert!((out.get(k1, k2) - llr.planes[0].get(k1, k2)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn first_code_combines_two_bits() {
        let spec = catalog::get("c1").unwrap();
        let inv = build_pseudo_inverse(&spec).unwrap().unwrap();
        let llr = LlrPlanes::from_flat(
            2,
            6,
            6,
            &(0..72)
                .map(|i| 0.3 + (i % 5) as f64 * 0.4)
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let out = inverter_network(&llr, &inv).unwrap();
        // u[k] pairs v_1[k + (1,1)] and v_2[k + (1,1)]
        for (k1, k2) in [(0, 0), (2, 5), (5, 5)] {
            let (a, b) = ((k1 + 1) % 6, (k2 + 1) % 6);
            let t = (llr.planes[0].get(a, b) / 2.0).tanh() * (llr.planes[1].get(a, b) / 2.0).tanh();
            assert!((out.get(k1, k2) - 2.0 * t.atanh()).abs() < 1e-12);
        }
    }
}
