use super::{CodeSpec, CodecError, Codeword, TorusGrid};
use crate::algebra::{monomial_in_ideal, poly_add, poly_mul, Poly2};

/// Cofactors with `sum q_i g_i = x^alpha y^beta` in GF(2)[x, y].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoInverse {
    pub q: Vec<Poly2>,
    pub alpha: u32,
    pub beta: u32,
}

impl PseudoInverse {
    /// Recomputes `sum q_i g_i` and compares with the delay monomial.
    pub fn verify(&self, spec: &CodeSpec) -> bool {
        let sum = self
            .q
            .iter()
            .zip(spec.kernel_polys())
            .fold(Poly2::zero(), |acc, (q, g)| {
                poly_add(&acc, &poly_mul(q, &g))
            });
        sum == Poly2::monomial(self.alpha, self.beta)
    }
}

/// Smallest-delay pseudo-inverse, or `None` when no monomial lies in the
/// kernel ideal.
pub fn build_pseudo_inverse(spec: &CodeSpec) -> Result<Option<PseudoInverse>, CodecError> {
    Ok(
        monomial_in_ideal(&spec.kernel_polys())?.map(|w| PseudoInverse {
            q: w.cofactors,
            alpha: w.alpha,
            beta: w.beta,
        }),
    )
}

/// `u = x^-alpha y^-beta sum q_i v_i mod I`; exact on codewords since the
/// delay is an invertible torus shift.
pub fn apply_inverse(v: &Codeword, inv: &PseudoInverse) -> Result<TorusGrid, CodecError> {
    if v.n() != inv.q.len() {
        return Err(CodecError::Dimension(format!(
            "{} planes for an inverse with {} cofactors",
            v.n(),
            inv.q.len()
        )));
    }
    let (rows, cols) = v.dims();
    let w = v
        .planes
        .iter()
        .zip(&inv.q)
        .fold(TorusGrid::zeros(rows, cols), |acc, (p, q)| {
            acc.xor(&p.convolve(q))
        });
    Ok(w.shift(-(inv.beta as isize), -(inv.alpha as isize)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{catalog, encode};

    #[test]
    fn first_code_inverse() {
        let spec = catalog::get("c1").unwrap();
        let inv = build_pseudo_inverse(&spec).unwrap().unwrap();
        assert_eq!(inv.q, vec![Poly2::one(), Poly2::one()]);
        assert_eq!((inv.alpha, inv.beta), (1, 1));
        assert!(inv.verify(&spec));
    }

    #[test]
    fn systematic_code_inverse_reads_plane_one() {
        let spec = catalog::get("c6").unwrap();
        let inv = build_pseudo_inverse(&spec).unwrap().unwrap();
        assert_eq!(inv.q, vec![Poly2::one(), Poly2::zero()]);
        assert_eq!((inv.alpha, inv.beta), (0, 0));
        let u = TorusGrid::from_fn(6, 6, |a, b| ((a * 7 + b * 3) % 5 == 0) as u8);
        let v = encode(&u, &spec).unwrap();
        assert_eq!(apply_inverse(&v, &inv).unwrap(), v.planes[0]);
    }

    #[test]
    fn non_invertible_code() {
        assert!(build_pseudo_inverse(&catalog::get("c4").unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn round_trip() {
        let spec = catalog::get("c1").unwrap();
        let inv = build_pseudo_inverse(&spec).unwrap().unwrap();
        for seed in 0..20u64 {
            let u = TorusGrid::from_word(6, 6, seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) >> 28);
            assert_eq!(apply_inverse(&encode(&u, &spec).unwrap(), &inv).unwrap(), u);
        }
        let zero = Codeword::zeros(2, 6, 6);
        assert!(apply_inverse(&zero, &inv).unwrap().is_zero());
    }
}
