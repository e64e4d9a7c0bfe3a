use rand::Rng;

use super::CodecError;
use crate::algebra::{Monomial, Poly2};

/// Binary `rows x cols` grid with toroidal indexing.
///
/// Bit `(k1, k2)` corresponds to the monomial `x^k2 y^k1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TorusGrid {
    rows: usize,
    cols: usize,
    bits: Vec<u8>,
}

#[inline]
pub(crate) fn wrap(i: isize, n: usize) -> usize {
    i.rem_euclid(n as isize) as usize
}

impl TorusGrid {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "grid dimensions must be positive");
        TorusGrid {
            rows,
            cols,
            bits: vec![0; rows * cols],
        }
    }

    pub fn from_bits(rows: usize, cols: usize, bits: Vec<u8>) -> Result<Self, CodecError> {
        if rows == 0 || cols == 0 || bits.len() != rows * cols {
            return Err(CodecError::Dimension(format!(
                "{} bits for a {rows}x{cols} grid",
                bits.len()
            )));
        }
        Ok(TorusGrid {
            rows,
            cols,
            bits: bits.into_iter().map(|b| b & 1).collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut g = TorusGrid::zeros(rows, cols);
        for k1 in 0..rows {
            for k2 in 0..cols {
                g.bits[k1 * cols + k2] = f(k1, k2) & 1;
            }
        }
        g
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        TorusGrid::from_fn(rows, cols, |_, _| rng.random::<bool>() as u8)
    }

    /// Row-major bits packed into an integer (bit `k1*cols + k2`).
    pub fn from_word(rows: usize, cols: usize, word: u64) -> Self {
        assert!(rows * cols <= 64);
        TorusGrid::from_fn(rows, cols, |k1, k2| ((word >> (k1 * cols + k2)) & 1) as u8)
    }

    pub fn to_word(&self) -> u64 {
        assert!(self.bits.len() <= 64);
        self.bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn get(&self, k1: usize, k2: usize) -> u8 {
        self.bits[(k1 % self.rows) * self.cols + (k2 % self.cols)]
    }

    /// Toroidal access with signed offsets.
    pub fn at(&self, k1: isize, k2: isize) -> u8 {
        self.bits[wrap(k1, self.rows) * self.cols + wrap(k2, self.cols)]
    }

    pub fn set(&mut self, k1: usize, k2: usize, v: u8) {
        let c = self.cols;
        self.bits[(k1 % self.rows) * c + (k2 % self.cols)] = v & 1;
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn xor(&self, other: &TorusGrid) -> TorusGrid {
        assert_eq!(self.dims(), other.dims());
        TorusGrid {
            rows: self.rows,
            cols: self.cols,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    /// Cyclic shift by `a` rows and `b` columns: `out[k] = self[k - (a, b)]`.
    pub fn shift(&self, a: isize, b: isize) -> TorusGrid {
        TorusGrid::from_fn(self.rows, self.cols, |k1, k2| {
            self.at(k1 as isize - a, k2 as isize - b)
        })
    }

    pub fn transpose(&self) -> TorusGrid {
        TorusGrid::from_fn(self.cols, self.rows, |k1, k2| self.get(k2, k1))
    }

    pub fn to_poly(&self) -> Poly2 {
        Poly2::from_terms(
            (0..self.rows)
                .flat_map(|k1| (0..self.cols).map(move |k2| (k1, k2)))
                .filter(|&(k1, k2)| self.get(k1, k2) == 1)
                .map(|(k1, k2)| Monomial::new(k2 as u32, k1 as u32)),
        )
    }

    /// Places `p` on the torus, folding exponents modulo the grid size.
    pub fn from_poly(rows: usize, cols: usize, p: &Poly2) -> TorusGrid {
        let mut g = TorusGrid::zeros(rows, cols);
        for m in p.terms() {
            let k1 = m.y as usize % rows;
            let k2 = m.x as usize % cols;
            g.bits[k1 * cols + k2] ^= 1;
        }
        g
    }

    /// Cyclic convolution with a polynomial: `out = p * self mod I`.
    pub fn convolve(&self, p: &Poly2) -> TorusGrid {
        let mut out = TorusGrid::zeros(self.rows, self.cols);
        for m in p.terms() {
            let (dr, dc) = (m.y as usize % self.rows, m.x as usize % self.cols);
            for k1 in 0..self.rows {
                let src_row = (k1 + self.rows - dr) % self.rows;
                for k2 in 0..self.cols {
                    let src = src_row * self.cols + (k2 + self.cols - dc) % self.cols;
                    out.bits[k1 * self.cols + k2] ^= self.bits[src];
                }
            }
        }
        out
    }
}

/// Real-valued grid, used for LLR planes.
#[derive(Clone, PartialEq, Debug)]
pub struct SoftGrid {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl SoftGrid {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SoftGrid {
            rows,
            cols,
            values: vec![0.0; rows * cols],
        }
    }

    pub fn from_values(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self, CodecError> {
        if rows == 0 || cols == 0 || values.len() != rows * cols {
            return Err(CodecError::Dimension(format!(
                "{} values for a {rows}x{cols} grid",
                values.len()
            )));
        }
        Ok(SoftGrid { rows, cols, values })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, k1: usize, k2: usize) -> f64 {
        self.values[(k1 % self.rows) * self.cols + (k2 % self.cols)]
    }

    pub fn at(&self, k1: isize, k2: isize) -> f64 {
        self.values[wrap(k1, self.rows) * self.cols + wrap(k2, self.cols)]
    }

    pub fn set(&mut self, k1: usize, k2: usize, v: f64) {
        let c = self.cols;
        self.values[k1 * c + k2] = v;
    }

    pub fn shift(&self, a: isize, b: isize) -> SoftGrid {
        let mut out = SoftGrid::zeros(self.rows, self.cols);
        for k1 in 0..self.rows {
            for k2 in 0..self.cols {
                out.values[k1 * self.cols + k2] = self.at(k1 as isize - a, k2 as isize - b);
            }
        }
        out
    }

    pub fn transpose(&self) -> SoftGrid {
        let mut out = SoftGrid::zeros(self.cols, self.rows);
        for k1 in 0..self.rows {
            for k2 in 0..self.cols {
                out.values[k2 * self.rows + k1] = self.get(k1, k2);
            }
        }
        out
    }

    /// Hard decision under the LLR convention (`> 0` means bit 0); zero
    /// decides 0.
    pub fn hard_decision(&self) -> TorusGrid {
        TorusGrid::from_fn(self.rows, self.cols, |k1, k2| {
            (self.get(k1, k2) < 0.0) as u8
        })
    }
}

/// Per-plane log-likelihood ratios, `LLR > 0` meaning bit 0 is more likely.
#[derive(Clone, PartialEq, Debug)]
pub struct LlrPlanes {
    pub planes: Vec<SoftGrid>,
}

/// Magnitude bound applied before any exponentiation.
pub const LLR_CLIP: f64 = 30.0;

impl LlrPlanes {
    pub fn new(planes: Vec<SoftGrid>) -> Result<Self, CodecError> {
        if planes.is_empty() {
            return Err(CodecError::Dimension("no LLR planes".into()));
        }
        let d = (planes[0].rows, planes[0].cols);
        if planes.iter().any(|p| (p.rows, p.cols) != d) {
            return Err(CodecError::Dimension("LLR planes differ in size".into()));
        }
        Ok(LlrPlanes { planes })
    }

    pub fn zeros(n: usize, rows: usize, cols: usize) -> Self {
        LlrPlanes {
            planes: vec![SoftGrid::zeros(rows, cols); n],
        }
    }

    /// Noiseless LLRs of a codeword with magnitude `mag`.
    pub fn from_codeword(v: &Codeword, mag: f64) -> Self {
        LlrPlanes {
            planes: v
                .planes
                .iter()
                .map(|p| SoftGrid {
                    rows: p.rows,
                    cols: p.cols,
                    values: p
                        .bits
                        .iter()
                        .map(|&b| if b == 0 { mag } else { -mag })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.planes.len()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.planes[0].rows, self.planes[0].cols)
    }

    /// Flattened as `plane * N1*N2 + k1 * N2 + k2`.
    pub fn to_flat(&self) -> Vec<f64> {
        self.planes
            .iter()
            .flat_map(|p| p.values.iter().copied())
            .collect()
    }

    pub fn from_flat(n: usize, rows: usize, cols: usize, flat: &[f64]) -> Result<Self, CodecError> {
        if flat.len() != n * rows * cols {
            return Err(CodecError::Dimension(format!(
                "{} LLRs for {n} planes of {rows}x{cols}",
                flat.len()
            )));
        }
        let area = rows * cols;
        LlrPlanes::new(
            (0..n)
                .map(|i| SoftGrid::from_values(rows, cols, flat[i * area..(i + 1) * area].to_vec()))
                .collect::<Result<Vec<_>, _>>()?,
        )
    }

    pub fn clipped(&self) -> Self {
        LlrPlanes {
            planes: self
                .planes
                .iter()
                .map(|p| SoftGrid {
                    rows: p.rows,
                    cols: p.cols,
                    values: p
                        .values
                        .iter()
                        .map(|v| v.clamp(-LLR_CLIP, LLR_CLIP))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn shift(&self, a: isize, b: isize) -> Self {
        LlrPlanes {
            planes: self.planes.iter().map(|p| p.shift(a, b)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        LlrPlanes {
            planes: self.planes.iter().map(SoftGrid::transpose).collect(),
        }
    }

    pub fn hard_decision(&self) -> Codeword {
        Codeword {
            planes: self.planes.iter().map(SoftGrid::hard_decision).collect(),
        }
    }
}

/// The `n` output planes of the encoder.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Codeword {
    pub planes: Vec<TorusGrid>,
}

impl Codeword {
    pub fn zeros(n: usize, rows: usize, cols: usize) -> Self {
        Codeword {
            planes: vec![TorusGrid::zeros(rows, cols); n],
        }
    }

    pub fn n(&self) -> usize {
        self.planes.len()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.planes[0].dims()
    }

    pub fn weight(&self) -> usize {
        self.planes.iter().map(TorusGrid::weight).sum()
    }

    /// The code fragment at `(k1, k2)`: one bit from every plane.
    pub fn fragment(&self, k1: usize, k2: usize) -> Vec<u8> {
        self.planes.iter().map(|p| p.get(k1, k2)).collect()
    }

    pub fn shift(&self, a: isize, b: isize) -> Self {
        Codeword {
            planes: self.planes.iter().map(|p| p.shift(a, b)).collect(),
        }
    }

    pub fn xor(&self, other: &Codeword) -> Codeword {
        Codeword {
            planes: self
                .planes
                .iter()
                .zip(&other.planes)
                .map(|(a, b)| a.xor(b))
                .collect(),
        }
    }

    /// Flattened as `plane * N1*N2 + k1 * N2 + k2`.
    pub fn to_flat(&self) -> Vec<u8> {
        self.planes
            .iter()
            .flat_map(|p| p.bits.iter().copied())
            .collect()
    }

    pub fn from_flat(n: usize, rows: usize, cols: usize, flat: &[u8]) -> Result<Self, CodecError> {
        if flat.len() != n * rows * cols {
            return Err(CodecError::Dimension(format!(
                "{} bits for {n} planes of {rows}x{cols}",
                flat.len()
            )));
        }
        let area = rows * cols;
        Ok(Codeword {
            planes: (0..n)
                .map(|i| TorusGrid::from_bits(rows, cols, flat[i * area..(i + 1) * area].to_vec()))
                .collect::<Result<Vec<_>, _>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_roundtrip_uses_column_for_x() {
        let mut g = TorusGrid::zeros(3, 4);
        g.set(1, 2, 1);
        assert_eq!(g.to_poly(), Poly2::monomial(2, 1));
        assert_eq!(TorusGrid::from_poly(3, 4, &Poly2::monomial(6, 4)), {
            let mut h = TorusGrid::zeros(3, 4);
            h.set(1, 2, 1);
            h
        });
    }

    #[test]
    fn shift_wraps() {
        let mut g = TorusGrid::zeros(4, 4);
        g.set(3, 3, 1);
        let s = g.shift(1, 2);
        assert_eq!(s.get(0, 1), 1);
        assert_eq!(s.weight(), 1);
        assert_eq!(s.shift(-1, -2), g);
    }

    #[test]
    fn convolve_matches_polynomial_product() {
        let u = TorusGrid::from_word(3, 5, 0b101_1001_0110_0101);
        let p: Poly2 = "1+x*y+y^2+x^4".parse().unwrap();
        let ideal = crate::algebra::TorusIdeal::for_grid(3, 5);
        let expect = TorusGrid::from_poly(3, 5, &(&p * &u.to_poly()).mod_torus(&ideal));
        assert_eq!(u.convolve(&p), expect);
    }

    #[test]
    fn dimension_errors() {
        assert!(TorusGrid::from_bits(2, 2, vec![0; 3]).is_err());
        assert!(LlrPlanes::from_flat(2, 2, 2, &[0.0; 7]).is_err());
    }
}
