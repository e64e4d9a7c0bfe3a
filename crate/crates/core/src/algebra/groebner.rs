//! Buchberger's algorithm over GF(2)[x, y, t].
//!
//! The auxiliary variable `t` only appears inside elimination computations
//! (intersections, saturations); everything returned to callers is in
//! GF(2)[x, y].

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, HashSet};

use super::poly::{Monomial, Poly2, DEGREE_CAP};
use super::AlgebraError;

/// Exponent vector `[x, y, t]`.
pub(crate) type Exp = [u16; 3];

const X: usize = 0;
const Y: usize = 1;
const T: usize = 2;

/// Monomial orders. All of them rank `x > y`; the auxiliary variable `t`
/// ranks above both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Pure lexicographic, `t > x > y`.
    Lex,
    /// Graded reverse lexicographic, `x > y > t`.
    #[default]
    GrevLex,
    /// Block order eliminating `t`: compare the `t` degree first, then
    /// grevlex on `(x, y)`.
    Elimination,
}

impl MonomialOrder {
    pub(crate) fn cmp(&self, a: &Exp, b: &Exp) -> Ordering {
        match self {
            MonomialOrder::Lex => a[T].cmp(&b[T]).then(a[X].cmp(&b[X])).then(a[Y].cmp(&b[Y])),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Elimination => a[T].cmp(&b[T]).then_with(|| {
                let a2 = [a[X], a[Y], 0];
                let b2 = [b[X], b[Y], 0];
                grevlex(&a2, &b2)
            }),
        }
    }

    /// Compares two bivariate monomials.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp(&[a.x as u16, a.y as u16, 0], &[b.x as u16, b.y as u16, 0])
    }
}

fn grevlex(a: &Exp, b: &Exp) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..3).rev() {
            if a[i] != b[i] {
                // smaller exponent in the last differing variable wins
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

fn divides(a: &Exp, b: &Exp) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2]
}

fn lcm(a: &Exp, b: &Exp) -> Exp {
    [a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2])]
}

fn quot(a: &Exp, b: &Exp) -> Exp {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn coprime(a: &Exp, b: &Exp) -> bool {
    (0..3).all(|i| a[i] == 0 || b[i] == 0)
}

fn degree(e: &Exp) -> u32 {
    e.iter().map(|&v| v as u32).sum()
}

/// Polynomial over GF(2) with terms sorted strictly descending in `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MPoly {
    pub terms: Vec<Exp>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lt(&self) -> Option<&Exp> {
        self.terms.first()
    }

    pub fn from_exps(mut exps: Vec<Exp>, order: MonomialOrder) -> Self {
        exps.sort_unstable_by(|a, b| order.cmp(b, a));
        let mut terms = Vec::with_capacity(exps.len());
        let mut i = 0;
        while i < exps.len() {
            let mut j = i;
            while j < exps.len() && exps[j] == exps[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                terms.push(exps[i]);
            }
            i = j;
        }
        MPoly { terms }
    }

    pub fn from_poly2(p: &Poly2, order: MonomialOrder) -> Result<Self, AlgebraError> {
        p.check_degree_cap()?;
        Ok(MPoly::from_exps(
            p.terms().map(|m| [m.x as u16, m.y as u16, 0]).collect(),
            order,
        ))
    }

    /// Drops the `t` variable; callers guarantee it does not occur.
    pub fn to_poly2(&self) -> Poly2 {
        debug_assert!(self.terms.iter().all(|e| e[T] == 0));
        Poly2::from_terms(
            self.terms
                .iter()
                .map(|e| Monomial::new(e[X] as u32, e[Y] as u32)),
        )
    }

    pub fn has_t(&self) -> bool {
        self.terms.iter().any(|e| e[T] != 0)
    }

    pub fn add(&self, other: &MPoly, order: MonomialOrder) -> MPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i], &b[j]) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        MPoly { terms: out }
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Exp) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|e| [e[0] + m[0], e[1] + m[1], e[2] + m[2]])
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly, order: MonomialOrder) -> MPoly {
        let mut exps = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                exps.push([a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
            }
        }
        MPoly::from_exps(exps, order)
    }

    fn check_cap(&self) -> Result<(), AlgebraError> {
        for e in &self.terms {
            if e.iter().any(|&v| v as u32 >= DEGREE_CAP - 1) {
                return Err(AlgebraError::DegreeCap {
                    x: e[X] as u32,
                    y: e[Y] as u32,
                });
            }
        }
        Ok(())
    }
}

/// Cofactor vectors: `cof[i]` multiplies input generator `i`.
pub(crate) type Cofactors = Vec<MPoly>;

fn cof_add(a: &Cofactors, b: &Cofactors, order: MonomialOrder) -> Cofactors {
    a.iter().zip(b).map(|(x, y)| x.add(y, order)).collect()
}

fn cof_mul_term(a: &Cofactors, m: &Exp) -> Cofactors {
    a.iter().map(|p| p.mul_term(m)).collect()
}

/// Full reduction of `f` by `basis`. Returns per-basis-element quotients and
/// the remainder, with `f = sum q_i basis_i + r`.
pub(crate) fn reduce(
    f: &MPoly,
    basis: &[&MPoly],
    order: MonomialOrder,
    want_quotients: bool,
) -> (Vec<MPoly>, MPoly) {
    let mut quotients: Vec<Vec<Exp>> =
        vec![Vec::new(); if want_quotients { basis.len() } else { 0 }];
    let mut rem: Vec<Exp> = Vec::new();
    let mut p = f.clone();
    while let Some(&lt) = p.lt() {
        match basis.iter().position(|g| divides(g.lt().unwrap(), &lt)) {
            Some(k) => {
                let q = quot(&lt, basis[k].lt().unwrap());
                if want_quotients {
                    quotients[k].push(q);
                }
                p = p.add(&basis[k].mul_term(&q), order);
            }
            None => {
                rem.push(lt);
                p.terms.remove(0);
            }
        }
    }
    let quotients = quotients
        .into_iter()
        .map(|q| MPoly::from_exps(q, order))
        .collect();
    (quotients, MPoly { terms: rem })
}

#[derive(Clone, Debug)]
pub(crate) struct Basis {
    pub order: MonomialOrder,
    pub polys: Vec<MPoly>,
    /// Present when cofactor tracking was requested.
    pub cofactors: Option<Vec<Cofactors>>,
}

#[derive(PartialEq, Eq)]
struct Pair {
    deg: u32,
    lcm: Exp,
    i: usize,
    j: usize,
}

/// Buchberger with the product and chain criteria and the normal selection
/// strategy (smallest lcm first).
pub(crate) fn buchberger_raw(
    gens: &[MPoly],
    order: MonomialOrder,
    track: bool,
) -> Result<Basis, AlgebraError> {
    let m = gens.len();
    let mut polys: Vec<MPoly> = Vec::new();
    let mut cofs: Vec<Cofactors> = Vec::new();
    let unit = |i: usize| -> Cofactors {
        (0..m)
            .map(|k| {
                if k == i {
                    MPoly {
                        terms: vec![[0, 0, 0]],
                    }
                } else {
                    MPoly::zero()
                }
            })
            .collect()
    };

    // Seed basis with the nonzero inputs.
    for (i, g) in gens.iter().enumerate() {
        if !g.is_zero() {
            polys.push(g.clone());
            if track {
                cofs.push(unit(i));
            }
        }
    }
    if polys.is_empty() {
        return Err(AlgebraError::ZeroIdeal);
    }

    // Ordering for the pair heap: BinaryHeap is a max-heap, so invert.
    struct Ordered(Pair, MonomialOrder);
    impl PartialEq for Ordered {
        fn eq(&self, o: &Self) -> bool {
            self.0 == o.0
        }
    }
    impl Eq for Ordered {}
    impl PartialOrd for Ordered {
        fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
            Some(self.cmp(o))
        }
    }
    impl Ord for Ordered {
        fn cmp(&self, o: &Self) -> Ordering {
            o.0.deg
                .cmp(&self.0.deg)
                .then_with(|| self.1.cmp(&o.0.lcm, &self.0.lcm))
                .then(o.0.i.cmp(&self.0.i))
                .then(o.0.j.cmp(&self.0.j))
        }
    }

    let mut heap: BinaryHeap<Ordered> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let push_pairs = |new: usize,
                      polys: &Vec<MPoly>,
                      heap: &mut BinaryHeap<Ordered>,
                      pending: &mut HashSet<(usize, usize)>| {
        let ln = *polys[new].lt().unwrap();
        for i in 0..new {
            let li = *polys[i].lt().unwrap();
            let l = lcm(&li, &ln);
            heap.push(Ordered(
                Pair {
                    deg: degree(&l),
                    lcm: l,
                    i,
                    j: new,
                },
                order,
            ));
            pending.insert((i, new));
        }
    };
    for k in 0..polys.len() {
        push_pairs(k, &polys, &mut heap, &mut pending);
    }

    while let Some(Ordered(pair, _)) = heap.pop() {
        pending.remove(&(pair.i, pair.j));
        let (i, j) = (pair.i, pair.j);
        let li = *polys[i].lt().unwrap();
        let lj = *polys[j].lt().unwrap();
        if coprime(&li, &lj) {
            continue;
        }
        // chain criterion
        let chained = (0..polys.len()).any(|k| {
            k != i
                && k != j
                && divides(polys[k].lt().unwrap(), &pair.lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }
        let mi = quot(&pair.lcm, &li);
        let mj = quot(&pair.lcm, &lj);
        let s = polys[i].mul_term(&mi).add(&polys[j].mul_term(&mj), order);
        let refs: Vec<&MPoly> = polys.iter().collect();
        let (qs, r) = reduce(&s, &refs, order, track);
        if r.is_zero() {
            continue;
        }
        r.check_cap()?;
        if track {
            let mut c = cof_add(
                &cof_mul_term(&cofs[i], &mi),
                &cof_mul_term(&cofs[j], &mj),
                order,
            );
            for (k, q) in qs.iter().enumerate() {
                if !q.is_zero() {
                    let qc: Cofactors = cofs[k].iter().map(|p| p.mul(q, order)).collect();
                    c = cof_add(&c, &qc, order);
                }
            }
            cofs.push(c);
        }
        polys.push(r);
        let new = polys.len() - 1;
        push_pairs(new, &polys, &mut heap, &mut pending);
    }

    Ok(Basis {
        order,
        polys,
        cofactors: if track { Some(cofs) } else { None },
    })
}

/// Turns a Gröbner basis into the reduced one, keeping cofactors consistent.
pub(crate) fn reduce_basis(basis: Basis) -> Basis {
    let order = basis.order;
    let track = basis.cofactors.is_some();
    let mut items: Vec<(MPoly, Option<Cofactors>)> = match basis.cofactors {
        Some(c) => basis
            .polys
            .into_iter()
            .zip(c.into_iter().map(Some))
            .collect(),
        None => basis.polys.into_iter().map(|p| (p, None)).collect(),
    };
    items.retain(|(p, _)| !p.is_zero());

    // Minimal basis: drop elements whose leading term is divisible by
    // another element's leading term (keep the first of equal ones).
    let mut keep = vec![true; items.len()];
    for a in 0..items.len() {
        for b in 0..items.len() {
            if a == b || !keep[b] {
                continue;
            }
            let la = items[a].0.lt().unwrap();
            let lb = items[b].0.lt().unwrap();
            if divides(lb, la) && (la != lb || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    let mut items: Vec<(MPoly, Option<Cofactors>)> = items
        .into_iter()
        .zip(keep)
        .filter_map(|(it, k)| k.then_some(it))
        .collect();

    // Tail-reduce each element by the others.
    for a in 0..items.len() {
        let others: Vec<MPoly> = items
            .iter()
            .enumerate()
            .filter(|(b, _)| *b != a)
            .map(|(_, (p, _))| p.clone())
            .collect();
        let refs: Vec<&MPoly> = others.iter().collect();
        let (qs, r) = reduce(&items[a].0, &refs, order, track);
        if track {
            let other_cofs: Vec<Cofactors> = items
                .iter()
                .enumerate()
                .filter(|(b, _)| *b != a)
                .map(|(_, (_, c))| c.clone().unwrap())
                .collect();
            let mut c = items[a].1.clone().unwrap();
            for (k, q) in qs.iter().enumerate() {
                if !q.is_zero() {
                    let qc: Cofactors = other_cofs[k].iter().map(|p| p.mul(q, order)).collect();
                    c = cof_add(&c, &qc, order);
                }
            }
            items[a].1 = Some(c);
        }
        items[a].0 = r;
    }

    items.sort_by(|a, b| order.cmp(a.0.lt().unwrap(), b.0.lt().unwrap()));
    let (polys, cofs): (Vec<MPoly>, Vec<Option<Cofactors>>) = items.into_iter().unzip();
    Basis {
        order,
        polys,
        cofactors: if track {
            Some(cofs.into_iter().map(Option::unwrap).collect())
        } else {
            None
        },
    }
}

/// Reduced basis without cofactor bookkeeping.
pub(crate) fn rgb_raw(gens: &[MPoly], order: MonomialOrder) -> Result<Basis, AlgebraError> {
    Ok(reduce_basis(buchberger_raw(gens, order, false)?))
}

/// Generators of `<a> ∩ <b>` via the elimination `t*A + (1+t)*B`.
pub(crate) fn intersect(a: &[MPoly], b: &[MPoly]) -> Result<Vec<MPoly>, AlgebraError> {
    let order = MonomialOrder::Elimination;
    let t = MPoly {
        terms: vec![[0, 0, 1]],
    };
    let one_t = MPoly::from_exps(vec![[0, 0, 1], [0, 0, 0]], order);
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for p in a {
        gens.push(reorder(p, order).mul(&t, order));
    }
    for p in b {
        gens.push(reorder(p, order).mul(&one_t, order));
    }
    let basis = rgb_raw(&gens, order)?;
    Ok(basis.polys.into_iter().filter(|p| !p.has_t()).collect())
}

/// Re-sorts terms for a different order.
pub(crate) fn reorder(p: &MPoly, order: MonomialOrder) -> MPoly {
    MPoly::from_exps(p.terms.clone(), order)
}

/// Does `<gens>` contain some monomial? Decided by whether
/// `<gens> + <1 + t*x*y>` is the unit ideal.
pub(crate) fn contains_monomial(gens: &[MPoly]) -> Result<bool, AlgebraError> {
    let order = MonomialOrder::GrevLex;
    let mut all: Vec<MPoly> = gens.iter().map(|g| reorder(g, order)).collect();
    all.push(MPoly::from_exps(vec![[1, 1, 1], [0, 0, 0]], order));
    let basis = rgb_raw(&all, order)?;
    Ok(basis.polys.len() == 1 && basis.polys[0].terms == vec![[0, 0, 0]])
}

/// Distinct leading terms, for debugging and tests.
#[allow(dead_code)]
pub(crate) fn leading_terms(b: &Basis) -> BTreeSet<Exp> {
    b.polys.iter().filter_map(|p| p.lt().copied()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> MPoly {
        MPoly::from_poly2(&s.parse().unwrap(), MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn grevlex_ranks_x_above_y() {
        let o = MonomialOrder::GrevLex;
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2, 0], &[1, 0, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 1, 0], &[2, 0, 0]), Ordering::Less);
    }

    #[test]
    fn elimination_puts_t_first() {
        let o = MonomialOrder::Elimination;
        assert_eq!(o.cmp(&[0, 0, 1], &[9, 9, 0]), Ordering::Greater);
    }

    #[test]
    fn order_is_multiplicative() {
        let exps: Vec<Exp> = (0..4)
            .flat_map(|a| (0..4).flat_map(move |b| (0..3).map(move |c| [a, b, c])))
            .collect();
        for o in [
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::Elimination,
        ] {
            for a in &exps {
                for b in &exps {
                    for m in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 1, 1]] {
                        let am = [a[0] + m[0], a[1] + m[1], a[2] + m[2]];
                        let bm = [b[0] + m[0], b[1] + m[1], b[2] + m[2]];
                        assert_eq!(o.cmp(a, b), o.cmp(&am, &bm));
                    }
                }
            }
        }
    }

    #[test]
    fn intersection_of_principal_ideals() {
        // <x> ∩ <y> = <xy>
        let r = intersect(&[mp("x")], &[mp("y")]).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].to_poly2(), "x*y".parse().unwrap());
    }

    #[test]
    fn monomial_detection() {
        assert!(contains_monomial(&[mp("1+x+y"), mp("1+x+y+x*y")]).unwrap());
        assert!(!contains_monomial(&[mp("1+x"), mp("1+x^2")]).unwrap());
    }
}
