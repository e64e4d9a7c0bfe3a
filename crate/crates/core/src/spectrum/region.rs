use super::SpectrumError;
use crate::codec::{CodeSpec, TorusGrid};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Up,
        Direction::Down,
        Direction::Left,
        Direction::Right,
    ];

    pub fn opposite(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, Direction::Up | Direction::Down)
    }

    /// Anchor offset `(d_row, d_col)` of the neighbouring region.
    pub fn offset(self) -> (isize, isize) {
        match self {
            Direction::Up => (-1, 0),
            Direction::Down => (1, 0),
            Direction::Left => (0, -1),
            Direction::Right => (0, 1),
        }
    }
}

impl std::str::FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "up" => Ok(Direction::Up),
            "down" => Ok(Direction::Down),
            "left" => Ok(Direction::Left),
            "right" => Ok(Direction::Right),
            _ => Err(format!("unknown direction `{s}`")),
        }
    }
}

/// The `K1 x K2` patch `p[a][b] = u[k1 + a][k2 + b]` (toroidal).
///
/// A region fixes the code fragment at `anchor + (K1 - 1, K2 - 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConstraintRegion {
    pub anchor: (usize, usize),
    pub shape: (usize, usize),
    /// Row-major patch bits.
    pub bits: Vec<u8>,
}

impl ConstraintRegion {
    pub fn new(
        anchor: (usize, usize),
        shape: (usize, usize),
        bits: Vec<u8>,
    ) -> Result<Self, SpectrumError> {
        if bits.len() != shape.0 * shape.1 {
            return Err(SpectrumError::Shape(format!(
                "{} bits for a {}x{} region",
                bits.len(),
                shape.0,
                shape.1
            )));
        }
        Ok(ConstraintRegion {
            anchor,
            shape,
            bits,
        })
    }

    pub fn from_grid(u: &TorusGrid, anchor: (usize, usize), shape: (usize, usize)) -> Self {
        let bits = (0..shape.0)
            .flat_map(|a| (0..shape.1).map(move |b| (a, b)))
            .map(|(a, b)| u.get(anchor.0 + a, anchor.1 + b))
            .collect();
        ConstraintRegion {
            anchor,
            shape,
            bits,
        }
    }

    /// Configuration index: bit `a*K2 + b` of the result is `p[a][b]`.
    pub fn from_index(anchor: (usize, usize), shape: (usize, usize), index: usize) -> Self {
        let bits = (0..shape.0 * shape.1)
            .map(|j| ((index >> j) & 1) as u8)
            .collect();
        ConstraintRegion {
            anchor,
            shape,
            bits,
        }
    }

    pub fn index(&self) -> usize {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &b)| acc | ((b as usize) << j))
    }

    pub fn get(&self, a: usize, b: usize) -> u8 {
        self.bits[a * self.shape.1 + b]
    }

    pub fn fragment_position(&self, info: (usize, usize)) -> (usize, usize) {
        (
            (self.anchor.0 + self.shape.0 - 1) % info.0,
            (self.anchor.1 + self.shape.1 - 1) % info.1,
        )
    }
}

/// Fragment bit `i = sum_{a,b} g_i[K1-1-a][K2-1-b] p[a][b]` over GF(2).
pub fn code_fragment(region: &ConstraintRegion, spec: &CodeSpec) -> Result<Vec<u8>, SpectrumError> {
    if region.shape != spec.support() {
        return Err(SpectrumError::Shape(format!(
            "region {:?} against kernel support {:?}",
            region.shape,
            spec.support()
        )));
    }
    Ok(fragment_of_index(spec, region.index()))
}

/// Fragment of a packed configuration (same bit layout as
/// [`ConstraintRegion::index`]).
pub(crate) fn fragment_of_index(spec: &CodeSpec, config: usize) -> Vec<u8> {
    let (k1, k2) = spec.support();
    (0..spec.n())
        .map(|i| {
            let mut acc = 0u8;
            for a in 0..k1 {
                for b in 0..k2 {
                    acc ^= spec.kernel_bit(i, k1 - 1 - a, k2 - 1 - b)
                        & ((config >> (a * k2 + b)) & 1) as u8;
                }
            }
            acc
        })
        .collect()
}

/// Is `r2` the `direction` neighbour of `r1` with agreeing overlap?
pub fn compatible(r1: &ConstraintRegion, r2: &ConstraintRegion, direction: Direction) -> bool {
    if r1.shape != r2.shape {
        return false;
    }
    let (k1, k2) = r1.shape;
    match direction {
        Direction::Up => (0..k1 - 1).all(|a| (0..k2).all(|b| r1.get(a, b) == r2.get(a + 1, b))),
        Direction::Down => (1..k1).all(|a| (0..k2).all(|b| r1.get(a, b) == r2.get(a - 1, b))),
        Direction::Left => (0..k1).all(|a| (0..k2 - 1).all(|b| r1.get(a, b) == r2.get(a, b + 1))),
        Direction::Right => (0..k1).all(|a| (1..k2).all(|b| r1.get(a, b) == r2.get(a, b - 1))),
    }
}
