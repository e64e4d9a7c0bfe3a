use super::sparse::SparseBinary;
use super::validity::common_divisor;
use super::{CodeSpec, CodecError, Codeword, TorusGrid};
use crate::algebra::{Poly2, TorusIdeal};

/// Polynomial syndrome former and its realization on the torus.
///
/// Check `row * N1*N2 + k1*N2 + k2` sums every variable
/// `i * N1*N2 + (k - m)` for each monomial `m` of entry `(row, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCheck {
    pub entries: Vec<Vec<Poly2>>,
    pub matrix: SparseBinary,
    n1: usize,
    n2: usize,
}

impl ParityCheck {
    /// Realizes polynomial entries (folded modulo the torus).
    pub fn from_entries(
        entries: Vec<Vec<Poly2>>,
        n1: usize,
        n2: usize,
    ) -> Result<Self, CodecError> {
        let n = entries.first().map_or(0, Vec::len);
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(CodecError::Dimension("ragged parity entries".into()));
        }
        let ideal = TorusIdeal::for_grid(n1, n2);
        let entries: Vec<Vec<Poly2>> = entries
            .into_iter()
            .map(|r| r.into_iter().map(|p| p.mod_torus(&ideal)).collect())
            .collect();
        let area = n1 * n2;
        let mut rows = Vec::with_capacity(entries.len() * area);
        for row in &entries {
            for k1 in 0..n1 {
                for k2 in 0..n2 {
                    let mut support = Vec::new();
                    for (i, p) in row.iter().enumerate() {
                        for m in p.terms() {
                            let r = (k1 + n1 - m.y as usize % n1) % n1;
                            let c = (k2 + n2 - m.x as usize % n2) % n2;
                            support.push(i * area + r * n2 + c);
                        }
                    }
                    rows.push(support);
                }
            }
        }
        Ok(ParityCheck {
            entries,
            matrix: SparseBinary::new(n * area, rows)?,
            n1,
            n2,
        })
    }

    pub fn n(&self) -> usize {
        self.entries[0].len()
    }

    pub fn info(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    pub fn num_checks(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_vars(&self) -> usize {
        self.matrix.cols()
    }

    /// Multiplies every entry by `z` (reduced modulo the torus).
    pub fn scaled(&self, z: &Poly2) -> Result<ParityCheck, CodecError> {
        if z.is_zero() {
            return Err(CodecError::Invalid(
                "syndrome-former multiplier is zero".into(),
            ));
        }
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| p * z).collect())
            .collect();
        ParityCheck::from_entries(entries, self.n1, self.n2)
    }
}

/// Row `j` carries `g_{j+1}` in column 0 and `g_0` in column `j + 1`, so
/// `G H^T = g_0 g_{j+1} + g_{j+1} g_0 = 0`.
pub fn build_parity_check(spec: &CodeSpec) -> Result<ParityCheck, CodecError> {
    if let Some(d) = common_divisor(spec)? {
        return Err(CodecError::NotCoprime(d.to_string()));
    }
    let g = spec.kernel_polys();
    let n = g.len();
    if n < 2 {
        return Err(CodecError::Invalid("a parity check needs n >= 2".into()));
    }
    let entries = (0..n - 1)
        .map(|j| {
            let mut row = vec![Poly2::zero(); n];
            row[0] = g[j + 1].clone();
            row[j + 1] = g[0].clone();
            row
        })
        .collect();
    let (n1, n2) = spec.info();
    ParityCheck::from_entries(entries, n1, n2)
}

/// Plane `j` of the syndrome is `sum_i H_{j,i} v_i mod I`.
pub fn syndrome(v: &Codeword, h: &ParityCheck) -> Result<Vec<TorusGrid>, CodecError> {
    if v.n() != h.n() || v.dims() != h.info() {
        return Err(CodecError::Dimension(format!(
            "codeword {}x{:?} against parity check {}x{:?}",
            v.n(),
            v.dims(),
            h.n(),
            h.info()
        )));
    }
    Ok(h.entries
        .iter()
        .map(|row| {
            row.iter()
                .zip(&v.planes)
                .fold(TorusGrid::zeros(h.n1, h.n2), |acc, (p, vi)| {
                    acc.xor(&vi.convolve(p))
                })
        })
        .collect())
}

/// Base parity check multiplied by each `z_k`; rows stay aligned position
/// by position across the family.
pub fn syndrome_former_family(
    spec: &CodeSpec,
    z_list: &[Poly2],
) -> Result<Vec<ParityCheck>, CodecError> {
    let base = build_parity_check(spec)?;
    z_list.iter().map(|z| base.scaled(z)).collect()
}

/// Every candidate multiplier `z` with support inside `K1 x K2` (monomials
/// other than 1 excluded, since they only shift rows), ranked by the
/// resulting realized row weight.
pub fn rank_multipliers(spec: &CodeSpec) -> Result<Vec<(Poly2, usize)>, CodecError> {
    let base = build_parity_check(spec)?;
    let (k1, k2) = spec.support();
    let cells = k1 * k2;
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << cells) {
        if mask.count_ones() == 1 && mask != 1 {
            continue;
        }
        let z = Poly2::from_terms(
            (0..cells)
                .filter(|c| mask >> c & 1 == 1)
                .map(|c| crate::algebra::Monomial::new((c % k2) as u32, (c / k2) as u32)),
        );
        let h = base.scaled(&z)?;
        let w = h.matrix.row(0).len();
        out.push((z, w));
    }
    out.sort_by(|a, b| {
        a.1.cmp(&b.1)
            .then_with(|| a.0.sorted_terms().cmp(&b.0.sorted_terms()))
    });
    Ok(out)
}
