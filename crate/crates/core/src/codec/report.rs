use serde::Serialize;

use super::{
    build_parity_check, build_pseudo_inverse, common_divisor, is_nondegenerate, CodeSpec,
    CodecError,
};
use crate::algebra::{poly_add, poly_mul, Poly2, TorusIdeal};

/// Everything `validate` checks about one code.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub spec_sha256: String,
    pub kernels: Vec<String>,
    pub nondegenerate: bool,
    pub common_divisor: Option<String>,
    pub invertible: bool,
    pub inverse: Option<Vec<String>>,
    /// `(alpha, beta)` of the delay `x^alpha y^beta`.
    pub delay: Option<(u32, u32)>,
    /// Row weights of the realized parity matrix, one per parity row.
    pub parity_row_weights: Vec<usize>,
    /// `G H^T = 0` modulo the torus.
    pub parity_identity: bool,
}

impl ValidationReport {
    /// Valid means the code is usable at all: non-degenerate with coprime
    /// kernels. Invertibility is reported but not required.
    pub fn is_valid(&self) -> bool {
        self.nondegenerate && self.common_divisor.is_none() && self.parity_identity
    }

    pub fn to_text(&self) -> String {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let mut s = format!("kernels: {}\n", self.kernels.join(", "));
        s.push_str(&format!("non-degenerate: {}\n", yes(self.nondegenerate)));
        match &self.common_divisor {
            None => s.push_str("coprime: yes\n"),
            Some(d) => s.push_str(&format!("coprime: no (common factor {d})\n")),
        }
        match (&self.inverse, self.delay) {
            (Some(q), Some((a, b))) => s.push_str(&format!(
                "invertible: yes, q = ({}), delay x^{a} y^{b}\n",
                q.join(", ")
            )),
            _ => s.push_str("invertible: no\n"),
        }
        if self.parity_row_weights.is_empty() {
            s.push_str("parity check: not constructed\n");
        } else {
            let w: Vec<String> = self
                .parity_row_weights
                .iter()
                .map(usize::to_string)
                .collect();
            s.push_str(&format!(
                "parity check: {} row(s) of weight {}, G H^T = 0: {}\n",
                w.len(),
                w.join(", "),
                yes(self.parity_identity)
            ));
        }
        s.push_str(&format!("valid: {}\n", yes(self.is_valid())));
        s
    }
}

pub fn validate_code(spec: &CodeSpec) -> Result<ValidationReport, CodecError> {
    let (n1, n2) = spec.info();
    let ideal = TorusIdeal::for_grid(n1, n2);
    let g = spec.kernel_polys();
    let divisor = common_divisor(spec)?;
    let inv = build_pseudo_inverse(spec)?;
    let (weights, identity) = match divisor {
        Some(_) => (Vec::new(), false),
        None => {
            let h = build_parity_check(spec)?;
            let identity = h.entries.iter().all(|row| {
                row.iter()
                    .zip(&g)
                    .fold(Poly2::zero(), |acc, (hji, gi)| {
                        poly_add(&acc, &poly_mul(hji, gi))
                    })
                    .mod_torus(&ideal)
                    .is_zero()
            });
            let area = n1 * n2;
            (
                (0..h.entries.len())
                    .map(|j| h.matrix.row(j * area).len())
                    .collect(),
                identity,
            )
        }
    };
    Ok(ValidationReport {
        spec_sha256: spec.content_hash(),
        kernels: g.iter().map(|p| p.to_string()).collect(),
        nondegenerate: is_nondegenerate(spec)?,
        common_divisor: divisor.map(|d| d.to_string()),
        invertible: inv.is_some(),
        delay: inv.as_ref().map(|i| (i.alpha, i.beta)),
        inverse: inv.map(|i| i.q.iter().map(|p| p.to_string()).collect()),
        parity_row_weights: weights,
        parity_identity: identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::catalog;

    #[test]
    fn first_code_report() {
        let r = validate_code(&catalog::get("c1").unwrap()).unwrap();
        assert!(r.is_valid() && r.invertible);
        assert_eq!(r.delay, Some((1, 1)));
        assert_eq!(r.inverse, Some(vec!["1".to_string(), "1".to_string()]));
        assert_eq!(r.parity_row_weights, vec![7]);
        assert!(r.to_text().contains("delay x^1 y^1"));
    }

    #[test]
    fn shared_factor_is_invalid() {
        let spec = CodeSpec::from_rows((4, 4), &["11/00", "11/00"]).unwrap();
        let r = validate_code(&spec).unwrap();
        assert!(!r.is_valid());
        assert!(r.common_divisor.is_some());
    }
}
