use super::{CodeSpec, CodecError, Codeword, TorusGrid};

/// Tail-biting encoding: `v_i = g_i * u mod I`, i.e.
/// `v_i[k] = sum_l g_i[l] u[(k - l) mod N]`.
pub fn encode(u: &TorusGrid, spec: &CodeSpec) -> Result<Codeword, CodecError> {
    if u.dims() != spec.info() {
        return Err(CodecError::Dimension(format!(
            "information grid {:?} does not match N = {:?}",
            u.dims(),
            spec.info()
        )));
    }
    Ok(Codeword {
        planes: spec.kernel_polys().iter().map(|g| u.convolve(g)).collect(),
    })
}

/// Packed generator matrix for small codes: row `j` is the codeword of the
/// unit information word at row-major position `j`.
///
/// Codeword bit `i * N1*N2 + k1*N2 + k2` is plane `i` at `(k1, k2)`.
#[derive(Clone, Debug)]
pub struct PackedGenerator {
    pub rows: Vec<u128>,
    pub k: usize,
    pub n: usize,
}

impl PackedGenerator {
    pub fn new(spec: &CodeSpec) -> Result<Self, CodecError> {
        let (n1, n2) = spec.info();
        let k = n1 * n2;
        if k > 64 || spec.block_length() > 128 {
            return Err(CodecError::Dimension(format!(
                "packed generator needs N1*N2 <= 64 and n*N1*N2 <= 128, got {k} and {}",
                spec.block_length()
            )));
        }
        let rows = (0..k)
            .map(|j| {
                let u = TorusGrid::from_word(n1, n2, 1u64 << j);
                pack(&encode(&u, spec).expect("dimensions agree"))
            })
            .collect();
        Ok(PackedGenerator {
            rows,
            k,
            n: spec.block_length(),
        })
    }

    pub fn encode_word(&self, u: u64) -> u128 {
        let mut v = 0u128;
        let mut w = u;
        while w != 0 {
            let j = w.trailing_zeros() as usize;
            v ^= self.rows[j];
            w &= w - 1;
        }
        v
    }
}

/// Codeword packed in the flat variable order (at most 128 bits).
pub fn pack(v: &Codeword) -> u128 {
    v.to_flat()
        .iter()
        .enumerate()
        .fold(0u128, |acc, (i, &b)| acc | ((b as u128) << i))
}

pub fn unpack(word: u128, n: usize, rows: usize, cols: usize) -> Codeword {
    let flat: Vec<u8> = (0..n * rows * cols)
        .map(|i| ((word >> i) & 1) as u8)
        .collect();
    Codeword::from_flat(n, rows, cols, &flat).expect("length matches")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::catalog;

    #[test]
    fn impulse_response_is_the_kernel() {
        let spec = catalog::get("c1").unwrap();
        let mut u = TorusGrid::zeros(6, 6);
        u.set(0, 0, 1);
        let v = encode(&u, &spec).unwrap();
        for i in 0..2 {
            for a in 0..6 {
                for b in 0..6 {
                    let expect = if a < 2 && b < 2 {
                        spec.kernel_bit(i, a, b)
                    } else {
                        0
                    };
                    assert_eq!(v.planes[i].get(a, b), expect);
                }
            }
        }
    }

    #[test]
    fn all_ones_input_follows_kernel_parity() {
        let spec = catalog::get("c1").unwrap();
        let u = TorusGrid::from_fn(6, 6, |_, _| 1);
        let v = encode(&u, &spec).unwrap();
        assert_eq!(v.planes[0].weight(), 36);
        assert_eq!(v.planes[1].weight(), 0);
        assert_eq!(v.weight(), 36);
    }

    #[test]
    fn packed_generator_agrees_with_encode() {
        let spec = catalog::example_4x4();
        let g = PackedGenerator::new(&spec).unwrap();
        for word in [0u64, 1, 0xbeef, 0xffff, 0x1234] {
            let u = TorusGrid::from_word(4, 4, word);
            assert_eq!(g.encode_word(word), pack(&encode(&u, &spec).unwrap()));
        }
        let v = encode(&TorusGrid::from_word(4, 4, 0xa5a5), &spec).unwrap();
        assert_eq!(unpack(pack(&v), 2, 4, 4), v);
    }

    #[test]
    fn rejects_mismatched_input() {
        let spec = catalog::get("c1").unwrap();
        assert!(encode(&TorusGrid::zeros(4, 6), &spec).is_err());
    }
}
