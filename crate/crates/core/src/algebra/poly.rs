use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use super::AlgebraError;

/// Exponents at or above this value are rejected by the parser and the
/// Gröbner machinery.
pub const DEGREE_CAP: u32 = 1 << 16;

/// A monomial `x^x * y^y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

/// Bivariate polynomial over GF(2), stored as its set of monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeSet<Monomial>,
}

/// The torus ideal `<x^px + 1, y^py + 1>`.
///
/// Grids map bit `(k1, k2)` to `x^k2 y^k1`, so the x period is the number of
/// grid columns and the y period the number of rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorusIdeal {
    pub x_period: u32,
    pub y_period: u32,
}

impl TorusIdeal {
    pub fn new(x_period: u32, y_period: u32) -> Self {
        assert!(
            x_period > 0 && y_period > 0,
            "torus periods must be positive"
        );
        TorusIdeal { x_period, y_period }
    }

    /// Ideal for an `rows x cols` grid.
    pub fn for_grid(rows: usize, cols: usize) -> Self {
        TorusIdeal::new(cols as u32, rows as u32)
    }

    /// Generators `x^px + 1` and `y^py + 1`.
    pub fn generators(&self) -> Vec<Poly2> {
        vec![
            Poly2::from_terms([Monomial::new(self.x_period, 0), Monomial::ONE]),
            Poly2::from_terms([Monomial::new(0, self.y_period), Monomial::ONE]),
        ]
    }
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::monomial(0, 0)
    }

    pub fn x() -> Self {
        Poly2::monomial(1, 0)
    }

    pub fn y() -> Self {
        Poly2::monomial(0, 1)
    }

    pub fn monomial(x: u32, y: u32) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(Monomial::new(x, y));
        Poly2 { terms }
    }

    /// Builds a polynomial from monomials; repeated monomials cancel in pairs.
    pub fn from_terms<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        let mut p = Poly2::zero();
        for m in iter {
            p.toggle(m);
        }
        p
    }

    /// Toggles the coefficient of `m`.
    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains(&Monomial::ONE)
    }

    /// Returns the single monomial if the polynomial is one.
    pub fn as_monomial(&self) -> Option<Monomial> {
        if self.terms.len() == 1 {
            self.terms.iter().next().copied()
        } else {
            None
        }
    }

    /// Number of nonzero terms.
    pub fn weight(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.iter()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.iter().map(|m| m.x).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.iter().map(|m| m.y).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(Monomial::degree).max()
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|m| Monomial::new(m.x + a, m.y + b))
                .collect(),
        }
    }

    /// Reduces all exponents modulo the torus periods.
    pub fn mod_torus(&self, ideal: &TorusIdeal) -> Poly2 {
        Poly2::from_terms(
            self.terms
                .iter()
                .map(|m| Monomial::new(m.x % ideal.x_period, m.y % ideal.y_period)),
        )
    }

    /// Fails if any exponent reaches [`DEGREE_CAP`].
    pub fn check_degree_cap(&self) -> Result<(), AlgebraError> {
        match self
            .terms
            .iter()
            .find(|m| m.x >= DEGREE_CAP || m.y >= DEGREE_CAP)
        {
            Some(m) => Err(AlgebraError::DegreeCap { x: m.x, y: m.y }),
            None => Ok(()),
        }
    }

    /// Terms in the printing order: ascending total degree, x-heavy first.
    pub fn sorted_terms(&self) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = self.terms.iter().copied().collect();
        v.sort_by(|a, b| a.degree().cmp(&b.degree()).then(b.x.cmp(&a.x)));
        v
    }
}

pub fn poly_add(a: &Poly2, b: &Poly2) -> Poly2 {
    Poly2 {
        terms: a.terms.symmetric_difference(&b.terms).copied().collect(),
    }
}

pub fn poly_mul(a: &Poly2, b: &Poly2) -> Poly2 {
    let mut prods = Vec::with_capacity(a.weight() * b.weight());
    for ma in &a.terms {
        for mb in &b.terms {
            prods.push(Monomial::new(ma.x + mb.x, ma.y + mb.y));
        }
    }
    prods.sort_unstable();
    let mut terms = BTreeSet::new();
    let mut i = 0;
    while i < prods.len() {
        let mut j = i;
        while j < prods.len() && prods[j] == prods[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            terms.insert(prods[i]);
        }
        i = j;
    }
    Poly2 { terms }
}

pub fn poly_mod_torus(a: &Poly2, ideal: &TorusIdeal) -> Poly2 {
    a.mod_torus(ideal)
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        poly_add(self, rhs)
    }
}

impl Add for Poly2 {
    type Output = Poly2;
    fn add(self, rhs: Poly2) -> Poly2 {
        poly_add(&self, &rhs)
    }
}

impl AddAssign<&Poly2> for Poly2 {
    fn add_assign(&mut self, rhs: &Poly2) {
        for m in &rhs.terms {
            self.toggle(*m);
        }
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        poly_mul(self, rhs)
    }
}

impl Mul for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        poly_mul(&self, &rhs)
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let var = |f: &mut fmt::Formatter<'_>, name: &str, e: u32| -> fmt::Result {
        if e == 1 {
            write!(f, "{name}")
        } else {
            write!(f, "{name}^{e}")
        }
    };
    match (m.x, m.y) {
        (0, 0) => write!(f, "1"),
        (a, 0) => var(f, "x", a),
        (0, b) => var(f, "y", b),
        (a, b) => {
            var(f, "x", a)?;
            write!(f, "*")?;
            var(f, "y", b)
        }
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, m) in self.sorted_terms().iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            fmt_monomial(m, f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

fn parse_exponent(s: &str, full: &str) -> Result<u32, AlgebraError> {
    let e: u64 = s
        .parse()
        .map_err(|_| AlgebraError::Parse(format!("bad exponent in {full:?}")))?;
    if e >= DEGREE_CAP as u64 {
        return Err(AlgebraError::DegreeCap {
            x: e.min(u32::MAX as u64) as u32,
            y: 0,
        });
    }
    Ok(e as u32)
}

fn parse_term(term: &str) -> Result<Option<Monomial>, AlgebraError> {
    let mut m = Monomial::ONE;
    let mut zero = false;
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(AlgebraError::Parse(format!(
                "empty factor in term {term:?}"
            )));
        }
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (b.trim(), parse_exponent(e.trim(), term)?),
            None => (factor, 1),
        };
        match base {
            "x" => m.x += exp,
            "y" => m.y += exp,
            "1" => {}
            "0" => zero = true,
            _ => return Err(AlgebraError::Parse(format!("unknown factor {factor:?}"))),
        }
    }
    if m.x >= DEGREE_CAP || m.y >= DEGREE_CAP {
        return Err(AlgebraError::DegreeCap { x: m.x, y: m.y });
    }
    Ok(if zero { None } else { Some(m) })
}

impl FromStr for Poly2 {
    type Err = AlgebraError;

    /// Parses `"1+x+y+x*y"`, `"x^2*y + 1"` and the like; whitespace and term
    /// order are free, repeated terms cancel.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(AlgebraError::Parse("empty polynomial".into()));
        }
        let mut p = Poly2::zero();
        for term in s.split('+') {
            if let Some(m) = parse_term(term.trim())? {
                p.toggle(m);
            }
        }
        Ok(p)
    }
}
