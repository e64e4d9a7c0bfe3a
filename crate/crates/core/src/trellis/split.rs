use crate::codec::CodeSpec;
use crate::spectrum::Direction;

/// A constraint region split into the part `S` it shares with the
/// neighbour in `direction` and the remaining column or row `T`, so that
/// the fragment is `v = G' s + G'' t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSplit {
    pub direction: Direction,
    /// Patch cells `(a, b)` of `S`, row-major.
    pub s_cells: Vec<(usize, usize)>,
    pub t_cells: Vec<(usize, usize)>,
    /// `n x |S|`, entry `[i][j]` = `g_i[K1-1-a][K2-1-b]` for `s_cells[j]`.
    pub g_s: Vec<Vec<u8>>,
    pub g_t: Vec<Vec<u8>>,
}

impl RegionSplit {
    /// `G' s + G'' t` over GF(2).
    pub fn fragment(&self, s: &[u8], t: &[u8]) -> Vec<u8> {
        self.g_s
            .iter()
            .zip(&self.g_t)
            .map(|(gs, gt)| {
                let a = gs.iter().zip(s).fold(0, |acc, (g, x)| acc ^ (g & x));
                gt.iter().zip(t).fold(a, |acc, (g, x)| acc ^ (g & x))
            })
            .collect()
    }
}

/// `S` is the overlap with the neighbour in `direction`: the left
/// neighbour shares patch columns `0..K2-1`, the right one columns
/// `1..K2`, and likewise for rows.
pub fn region_split(spec: &CodeSpec, direction: Direction) -> RegionSplit {
    let (k1, k2) = spec.support();
    let in_s = |a: usize, b: usize| match direction {
        Direction::Left => b + 1 < k2,
        Direction::Right => b >= 1,
        Direction::Up => a + 1 < k1,
        Direction::Down => a >= 1,
    };
    let cells: Vec<(usize, usize)> = (0..k1).flat_map(|a| (0..k2).map(move |b| (a, b))).collect();
    let (s_cells, t_cells): (Vec<_>, Vec<_>) = cells.into_iter().partition(|&(a, b)| in_s(a, b));
    let column = |cells: &[(usize, usize)]| -> Vec<Vec<u8>> {
        (0..spec.n())
            .map(|i| {
                cells
                    .iter()
                    .map(|&(a, b)| spec.kernel_bit(i, k1 - 1 - a, k2 - 1 - b))
                    .collect()
            })
            .collect()
    };
    RegionSplit {
        direction,
        g_s: column(&s_cells),
        g_t: column(&t_cells),
        s_cells,
        t_cells,
    }
}

/// GF(2) rank of the column set of an `n x m` matrix given row-wise.
fn column_rank(rows: &[Vec<u8>]) -> usize {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    let mut cols: Vec<u64> = (0..m)
        .map(|j| (0..n).fold(0u64, |acc, i| acc | ((rows[i][j] as u64) << i)))
        .collect();
    let mut rank = 0;
    for bit in 0..n {
        let Some(p) = (rank..cols.len()).find(|&c| cols[c] >> bit & 1 == 1) else {
            continue;
        };
        cols.swap(rank, p);
        let pivot = cols[rank];
        for (c, col) in cols.iter_mut().enumerate() {
            if c != rank && *col >> bit & 1 == 1 {
                *col ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Non-trivial messages need `Im G' != Im G`, where `G = [G' G'']` is the
/// full region-to-fragment map. Since `Im G'` lies inside `Im G`, this is
/// a rank comparison.
pub fn check_message_passing_condition(spec: &CodeSpec, direction: Direction) -> bool {
    let split = region_split(spec, direction);
    let full: Vec<Vec<u8>> = split
        .g_s
        .iter()
        .zip(&split.g_t)
        .map(|(a, b)| a.iter().chain(b).copied().collect())
        .collect();
    column_rank(&split.g_s) != column_rank(&full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::catalog;
    use crate::spectrum::{code_fragment, ConstraintRegion};

    #[test]
    fn split_reassembles_the_fragment() {
        let spec = catalog::get("c5").unwrap();
        for d in Direction::ALL {
            let split = region_split(&spec, d);
            assert_eq!(split.s_cells.len() + split.t_cells.len(), 9);
            for idx in 0..512usize {
                let r = ConstraintRegion::from_index((0, 0), (3, 3), idx);
                let s: Vec<u8> = split.s_cells.iter().map(|&(a, b)| r.get(a, b)).collect();
                let t: Vec<u8> = split.t_cells.iter().map(|&(a, b)| r.get(a, b)).collect();
                assert_eq!(split.fragment(&s, &t), code_fragment(&r, &spec).unwrap());
            }
        }
    }

    #[test]
    fn horizontal_split_of_the_first_code() {
        let split = region_split(&catalog::get("c1").unwrap(), Direction::Left);
        assert_eq!(split.t_cells, vec![(0, 1), (1, 1)]);
        // G'' columns: g_i at (K1-1-a, 0) for a = 0, 1
        assert_eq!(split.g_t, vec![vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn condition_for_the_first_code() {
        let spec = catalog::get("c1").unwrap();
        assert!(check_message_passing_condition(&spec, Direction::Right));
        assert!(check_message_passing_condition(&spec, Direction::Down));
        assert!(!check_message_passing_condition(&spec, Direction::Left));
        assert!(!check_message_passing_condition(&spec, Direction::Up));
    }

    #[test]
    fn kernels_inside_the_shared_part_fail() {
        // both kernels vanish on patch column 0, the T part of a right split
        let spec = CodeSpec::from_rows((4, 4), &["10/00", "10/10"]).unwrap();
        assert!(!check_message_passing_condition(&spec, Direction::Right));
        // a single-column kernel leaves S empty on a horizontal split
        let thin = CodeSpec::from_rows((4, 4), &["1/1", "1/0"]).unwrap();
        assert!(check_message_passing_condition(&thin, Direction::Left));
    }
}
