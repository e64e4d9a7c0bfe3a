use super::{CodeSpec, CodecError};
use crate::algebra::{exact_division, ideal_equal, ideal_quotient, Monomial, Poly2, TorusIdeal};

/// Non-degeneracy on the torus: `(I : <g_1..g_n>) = I`.
pub fn is_nondegenerate(spec: &CodeSpec) -> Result<bool, CodecError> {
    let (n1, n2) = spec.info();
    kernels_nondegenerate(&spec.kernel_polys(), n1, n2)
}

/// Same test for raw kernel polynomials on an `n1 x n2` torus. An all-zero
/// kernel set is degenerate.
pub fn kernels_nondegenerate(kernels: &[Poly2], n1: usize, n2: usize) -> Result<bool, CodecError> {
    let nonzero: Vec<Poly2> = kernels.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(false);
    }
    let ideal = TorusIdeal::for_grid(n1, n2).generators();
    let colon = ideal_quotient(&ideal, &nonzero)?;
    Ok(ideal_equal(&colon, &ideal)?)
}

/// True iff no polynomial other than 1 with support inside `K1 x K2`
/// divides every kernel.
pub fn common_divisor_check(spec: &CodeSpec) -> Result<bool, CodecError> {
    Ok(common_divisor(spec)?.is_none())
}

/// The first non-unit common divisor found, if any.
pub fn common_divisor(spec: &CodeSpec) -> Result<Option<Poly2>, CodecError> {
    let (k1, k2) = spec.support();
    let kernels: Vec<Poly2> = spec
        .kernel_polys()
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect();
    let cells = k1 * k2;
    for mask in 2u64..(1u64 << cells) {
        let d = Poly2::from_terms(
            (0..cells)
                .filter(|c| mask >> c & 1 == 1)
                .map(|c| Monomial::new((c % k2) as u32, (c / k2) as u32)),
        );
        let mut all = true;
        for g in &kernels {
            if exact_division(g, &d)?.is_none() {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::catalog;

    #[test]
    fn catalog_codes_are_nondegenerate() {
        for name in catalog::names() {
            let spec = catalog::get(name).unwrap();
            assert!(is_nondegenerate(&spec).unwrap(), "{name}");
        }
    }

    #[test]
    fn shared_factor_on_a_power_of_two_torus_is_degenerate() {
        let spec = CodeSpec::from_rows((4, 4), &["11", "11"]).unwrap();
        assert!(!is_nondegenerate(&spec).unwrap());
        assert!(!kernels_nondegenerate(&[Poly2::zero()], 4, 4).unwrap());
    }

    #[test]
    fn common_divisors() {
        assert!(common_divisor_check(&catalog::get("c1").unwrap()).unwrap());
        let spec = CodeSpec::from_rows((6, 6), &["011", "110"]).unwrap();
        assert_eq!(common_divisor(&spec).unwrap().unwrap().to_string(), "1+x");
        assert!(common_divisor_check(&CodeSpec::from_rows((3, 3), &["1"]).unwrap()).unwrap());
    }
}
