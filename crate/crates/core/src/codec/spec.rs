use std::fmt;
use std::str::FromStr;

use super::CodecError;
use crate::algebra::{Monomial, Poly2};

/// A rate-1/n 2D tail-biting convolutional code: `n` binary kernels of
/// support `K1 x K2` acting on an `N1 x N2` information torus.
///
/// Kernel entry `g_i[k1][k2]` is the coefficient of `x^k2 y^k1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CodeSpec {
    n1: usize,
    n2: usize,
    k1: usize,
    k2: usize,
    /// Row-major `K1 x K2` bit matrices.
    kernels: Vec<Vec<u8>>,
}

impl CodeSpec {
    /// `kernels[i]` lists `K1` rows of `K2` bits, top row first.
    pub fn new(
        info: (usize, usize),
        support: (usize, usize),
        kernels: Vec<Vec<Vec<u8>>>,
    ) -> Result<Self, CodecError> {
        let (n1, n2) = info;
        let (k1, k2) = support;
        if n1 == 0 || n2 == 0 {
            return Err(CodecError::Invalid(
                "information support must be positive".into(),
            ));
        }
        if k1 == 0 || k2 == 0 || k1 > n1 || k2 > n2 {
            return Err(CodecError::Invalid(format!(
                "kernel support {k1}x{k2} must lie within 1..=N ({n1}x{n2})"
            )));
        }
        if kernels.is_empty() {
            return Err(CodecError::Invalid(
                "at least one kernel is required".into(),
            ));
        }
        let mut flat = Vec::with_capacity(kernels.len());
        for (i, k) in kernels.iter().enumerate() {
            if k.len() != k1 || k.iter().any(|row| row.len() != k2) {
                return Err(CodecError::Invalid(format!(
                    "kernel {} is not {k1}x{k2}",
                    i + 1
                )));
            }
            if k.iter().flatten().any(|&b| b > 1) {
                return Err(CodecError::Invalid(format!(
                    "kernel {} has a non-binary entry",
                    i + 1
                )));
            }
            flat.push(k.iter().flatten().copied().collect::<Vec<u8>>());
        }
        if flat.iter().all(|k| k.iter().all(|&b| b == 0)) {
            return Err(CodecError::Invalid("all kernels are zero".into()));
        }
        Ok(CodeSpec {
            n1,
            n2,
            k1,
            k2,
            kernels: flat,
        })
    }

    /// Builds kernels from strings such as `"110/110/001"` (rows split by `/`).
    pub fn from_rows(info: (usize, usize), rows: &[&str]) -> Result<Self, CodecError> {
        let kernels: Vec<Vec<Vec<u8>>> = rows
            .iter()
            .map(|s| {
                s.split('/')
                    .map(|r| {
                        r.chars()
                            .filter(|c| !c.is_whitespace())
                            .map(|c| match c {
                                '0' => Ok(0),
                                '1' => Ok(1),
                                _ => Err(CodecError::Invalid(format!("bad kernel digit {c:?}"))),
                            })
                            .collect::<Result<Vec<u8>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        let k1 = kernels.first().map_or(0, |k| k.len());
        let k2 = kernels
            .first()
            .and_then(|k| k.first())
            .map_or(0, |r| r.len());
        CodeSpec::new(info, (k1, k2), kernels)
    }

    /// Same kernels on a different information torus.
    pub fn with_info(&self, n1: usize, n2: usize) -> Result<Self, CodecError> {
        CodeSpec::new((n1, n2), (self.k1, self.k2), self.kernel_matrices())
    }

    pub fn n(&self) -> usize {
        self.kernels.len()
    }

    /// `(N1, N2)`.
    pub fn info(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    /// `(K1, K2)`.
    pub fn support(&self) -> (usize, usize) {
        (self.k1, self.k2)
    }

    /// Information bits per codeword, `N1 * N2`.
    pub fn k(&self) -> usize {
        self.n1 * self.n2
    }

    /// Code bits per codeword, `n * N1 * N2`.
    pub fn block_length(&self) -> usize {
        self.n() * self.k()
    }

    pub fn rate(&self) -> f64 {
        1.0 / self.n() as f64
    }

    pub fn kernel_bit(&self, i: usize, a: usize, b: usize) -> u8 {
        self.kernels[i][a * self.k2 + b]
    }

    pub fn kernel_matrices(&self) -> Vec<Vec<Vec<u8>>> {
        self.kernels
            .iter()
            .map(|k| k.chunks(self.k2).map(<[u8]>::to_vec).collect())
            .collect()
    }

    pub fn kernel_weight(&self, i: usize) -> usize {
        self.kernels[i].iter().map(|&b| b as usize).sum()
    }

    pub fn kernel_poly(&self, i: usize) -> Poly2 {
        let k = &self.kernels[i];
        Poly2::from_terms(
            (0..self.k1)
                .flat_map(|a| (0..self.k2).map(move |b| (a, b)))
                .filter(|&(a, b)| k[a * self.k2 + b] == 1)
                .map(|(a, b)| Monomial::new(b as u32, a as u32)),
        )
    }

    pub fn kernel_polys(&self) -> Vec<Poly2> {
        (0..self.n()).map(|i| self.kernel_poly(i)).collect()
    }

    /// SHA-256 of the canonical file form.
    pub fn content_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(self.to_string().as_bytes()))
    }

    /// Kernels as a compact string, e.g. `"1110 | 1111"`.
    pub fn kernel_summary(&self) -> String {
        self.kernel_matrices()
            .iter()
            .map(|k| {
                k.iter()
                    .map(|r| r.iter().map(|b| char::from(b'0' + b)).collect::<String>())
                    .collect::<Vec<_>>()
                    .join("/")
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n())?;
        writeln!(f, "N1: {}", self.n1)?;
        writeln!(f, "N2: {}", self.n2)?;
        writeln!(f, "K1: {}", self.k1)?;
        writeln!(f, "K2: {}", self.k2)?;
        for (i, k) in self.kernel_matrices().iter().enumerate() {
            writeln!(f, "kernel {}:", i + 1)?;
            for row in k {
                let line: Vec<String> = row.iter().map(u8::to_string).collect();
                writeln!(f, "{}", line.join(" "))?;
            }
        }
        Ok(())
    }
}

impl FromStr for CodeSpec {
    type Err = CodecError;

    /// Parses the `key: value` code-spec format. Lines starting with `#`
    /// and blank lines are ignored.
    fn from_str(text: &str) -> Result<Self, CodecError> {
        let bad = |msg: String| CodecError::Parse(msg);
        let mut lines = text
            .lines()
            .map(str::trim)
            .enumerate()
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let mut header = |key: &str| -> Result<usize, CodecError> {
            let (no, line) = lines
                .next()
                .ok_or_else(|| bad(format!("missing `{key}:` line")))?;
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| bad(format!("line {}: expected `{key}: value`", no + 1)))?;
            if k.trim() != key {
                return Err(bad(format!(
                    "line {}: expected key `{key}`, found `{}`",
                    no + 1,
                    k.trim()
                )));
            }
            v.trim()
                .parse()
                .map_err(|_| bad(format!("line {}: `{}` is not a count", no + 1, v.trim())))
        };
        let n = header("n")?;
        let n1 = header("N1")?;
        let n2 = header("N2")?;
        let k1 = header("K1")?;
        let k2 = header("K2")?;

        let mut kernels = Vec::with_capacity(n);
        for i in 1..=n {
            let (no, line) = lines
                .next()
                .ok_or_else(|| bad(format!("missing `kernel {i}:` block")))?;
            let label = line.trim_end_matches(':').trim();
            if label != format!("kernel {i}") {
                return Err(bad(format!("line {}: expected `kernel {i}:`", no + 1)));
            }
            let mut rows = Vec::with_capacity(k1);
            for _ in 0..k1 {
                let (no, line) = lines
                    .next()
                    .ok_or_else(|| bad(format!("kernel {i}: expected {k1} rows")))?;
                let row = line
                    .split_whitespace()
                    .map(|t| match t {
                        "0" => Ok(0u8),
                        "1" => Ok(1u8),
                        _ => Err(bad(format!("line {}: `{t}` is not a bit", no + 1))),
                    })
                    .collect::<Result<Vec<u8>, _>>()?;
                if row.len() != k2 {
                    return Err(bad(format!("line {}: expected {k2} bits", no + 1)));
                }
                rows.push(row);
            }
            kernels.push(rows);
        }
        if let Some((no, _)) = lines.next() {
            return Err(bad(format!("line {}: trailing content", no + 1)));
        }
        CodeSpec::new((n1, n2), (k1, k2), kernels)
    }
}

/// Named codes used throughout tests, examples and the CLI, all rate 1/2
/// over a 6x6 torus unless noted.
pub mod catalog {
    use super::CodeSpec;

    /// `(name, g1, g2)` with kernels written top row first.
    pub const CODES: &[(&str, &str, &str)] = &[
        ("c1", "11/10", "11/11"),
        ("c2", "11/10", "10/11"),
        ("c3", "10/00", "11/11"),
        ("c4", "110/110/001", "101/111/111"),
        ("c5", "111/100/010", "111/111/011"),
        ("c6", "100/000/000", "111/110/101"),
        ("c7", "111/110/010", "111/111/010"),
    ];

    /// Looks up a code by name; `ex4` is the 4x4 example code with
    /// `G = (x + y, 1 + x + y)`.
    pub fn get(name: &str) -> Option<CodeSpec> {
        if name == "ex4" {
            return Some(example_4x4());
        }
        CODES.iter().find(|(n, _, _)| *n == name).map(|(_, a, b)| {
            CodeSpec::from_rows((6, 6), &[a, b]).expect("catalog entries are valid")
        })
    }

    pub fn names() -> impl Iterator<Item = &'static str> {
        CODES
            .iter()
            .map(|(n, _, _)| *n)
            .chain(std::iter::once("ex4"))
    }

    pub fn example_4x4() -> CodeSpec {
        CodeSpec::from_rows((4, 4), &["01/10", "11/10"]).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_polynomials_follow_the_grid_mapping() {
        let c1 = catalog::get("c1").unwrap();
        assert_eq!(c1.kernel_poly(0).to_string(), "1+x+y");
        assert_eq!(c1.kernel_poly(1).to_string(), "1+x+y+x*y");
        let c2 = catalog::get("c2").unwrap();
        assert_eq!(c2.kernel_poly(1).to_string(), "1+y+x*y");
        let ex = catalog::example_4x4();
        assert_eq!(ex.kernel_poly(0).to_string(), "x+y");
        assert_eq!(ex.kernel_poly(1).to_string(), "1+x+y");
    }

    #[test]
    fn file_format_roundtrip() {
        for name in catalog::names() {
            let spec = catalog::get(name).unwrap();
            let text = spec.to_string();
            assert_eq!(text.parse::<CodeSpec>().unwrap(), spec, "{name}");
        }
    }

    #[test]
    fn parse_rejects_malformed_input() {
        let good = catalog::get("c1").unwrap().to_string();
        assert!(good.replace("K2: 2", "K2: 3").parse::<CodeSpec>().is_err());
        assert!(good
            .replace("kernel 2:", "kernel 3:")
            .parse::<CodeSpec>()
            .is_err());
        assert!(good.replace("1 0", "1 2").parse::<CodeSpec>().is_err());
        assert!(format!("{good}1 1\n").parse::<CodeSpec>().is_err());
        assert!("n: 1\nN1: 2\nN2: 2\nK1: 1\nK2: 1\nkernel 1:\n0\n"
            .parse::<CodeSpec>()
            .is_err());
    }

    #[test]
    fn support_must_fit_the_torus() {
        assert!(CodeSpec::from_rows((1, 4), &["11/11"]).is_err());
        assert!(CodeSpec::from_rows((2, 2), &["11/11"]).is_ok());
    }
}
