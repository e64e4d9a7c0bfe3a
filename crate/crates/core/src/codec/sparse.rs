use std::fmt::Write as _;

use super::CodecError;

/// Binary matrix stored as sorted column indices per row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseBinary {
    rows: usize,
    cols: usize,
    support: Vec<Vec<usize>>,
}

impl SparseBinary {
    /// Rows are sorted and duplicate entries cancel (GF(2) addition).
    pub fn new(cols: usize, rows: Vec<Vec<usize>>) -> Result<Self, CodecError> {
        let mut support = Vec::with_capacity(rows.len());
        for (r, mut row) in rows.into_iter().enumerate() {
            if let Some(&c) = row.iter().find(|&&c| c >= cols) {
                return Err(CodecError::Dimension(format!(
                    "row {r}: column {c} >= {cols}"
                )));
            }
            row.sort_unstable();
            let mut kept: Vec<usize> = Vec::with_capacity(row.len());
            for c in row {
                if kept.last() == Some(&c) {
                    kept.pop();
                } else {
                    kept.push(c);
                }
            }
            support.push(kept);
        }
        Ok(SparseBinary {
            rows: support.len(),
            cols,
            support,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.support.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.support[r]
    }

    pub fn row_supports(&self) -> &[Vec<usize>] {
        &self.support
    }

    /// Row indices touching each column.
    pub fn column_supports(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (r, row) in self.support.iter().enumerate() {
            for &c in row {
                cols[c].push(r);
            }
        }
        cols
    }

    /// `H v^T` over GF(2).
    pub fn syndrome(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        self.support
            .iter()
            .map(|row| row.iter().fold(0u8, |acc, &c| acc ^ (v[c] & 1)))
            .collect()
    }

    pub fn syndrome_weight(&self, v: &[u8]) -> usize {
        self.syndrome(v).iter().map(|&s| s as usize).sum()
    }

    pub fn annihilates(&self, v: &[u8]) -> bool {
        self.support
            .iter()
            .all(|row| row.iter().fold(0u8, |acc, &c| acc ^ (v[c] & 1)) == 0)
    }

    /// GF(2) rank by elimination on packed rows.
    pub fn rank(&self) -> usize {
        let words = self.cols.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = self
            .support
            .iter()
            .map(|row| {
                let mut w = vec![0u64; words];
                for &c in row {
                    w[c / 64] |= 1 << (c % 64);
                }
                w
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let (wi, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][wi] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[wi] & bit != 0 {
                    for (a, b) in row.iter_mut().zip(&pivot) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Coordinate text: a `rows cols nnz` header, then one `row col` pair
    /// per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.nnz());
        for (r, row) in self.support.iter().enumerate() {
            for c in row {
                let _ = writeln!(s, "{r} {c}");
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, CodecError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| CodecError::Parse("empty matrix file".into()))?;
        let nums = |l: &str| -> Result<Vec<usize>, CodecError> {
            l.split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| CodecError::Parse(format!("bad integer `{t}`")))
                })
                .collect()
        };
        let h = nums(header)?;
        let [rows, cols, nnz] = h[..] else {
            return Err(CodecError::Parse("header must be `rows cols nnz`".into()));
        };
        let mut support = vec![Vec::new(); rows];
        let mut seen = 0;
        for l in lines {
            let p = nums(l)?;
            let [r, c] = p[..] else {
                return Err(CodecError::Parse(format!(
                    "expected `row col`, found `{l}`"
                )));
            };
            if r >= rows || c >= cols {
                return Err(CodecError::Parse(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            support[r].push(c);
            seen += 1;
        }
        if seen != nnz {
            return Err(CodecError::Parse(format!(
                "header declares {nnz} entries, found {seen}"
            )));
        }
        SparseBinary::new(cols, support)
    }
}
