use super::groebner::{self, Basis, MPoly, MonomialOrder};
use super::poly::{poly_add, poly_mul, Monomial, Poly2};
use super::AlgebraError;

/// A Gröbner basis of the ideal generated by `inputs`, together with the
/// expression of every basis element in those inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub generators: Vec<Poly2>,
    pub order: MonomialOrder,
    /// `cofactors[j][i]` multiplies `inputs[i]` in the expansion of
    /// `generators[j]`.
    pub cofactors: Vec<Vec<Poly2>>,
    pub inputs: Vec<Poly2>,
}

impl GroebnerBasis {
    fn from_basis(b: Basis, inputs: Vec<Poly2>) -> Self {
        let cofactors = b
            .cofactors
            .as_ref()
            .map(|cs| {
                cs.iter()
                    .map(|c| c.iter().map(MPoly::to_poly2).collect())
                    .collect()
            })
            .unwrap_or_default();
        GroebnerBasis {
            generators: b.polys.iter().map(MPoly::to_poly2).collect(),
            order: b.order,
            cofactors,
            inputs,
        }
    }

    fn to_basis(&self) -> Result<Basis, AlgebraError> {
        let polys = self
            .generators
            .iter()
            .map(|g| MPoly::from_poly2(g, self.order))
            .collect::<Result<Vec<_>, _>>()?;
        let cofactors = self
            .cofactors
            .iter()
            .map(|c| {
                c.iter()
                    .map(|p| MPoly::from_poly2(p, self.order))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Basis {
            order: self.order,
            polys,
            cofactors: Some(cofactors),
        })
    }

    /// Leading monomial of each generator under the basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| leading_monomial(g, self.order).expect("basis elements are nonzero"))
            .collect()
    }

    /// Recombines the cofactor ledger for generator `j`.
    pub fn expand(&self, j: usize) -> Poly2 {
        self.cofactors[j]
            .iter()
            .zip(&self.inputs)
            .fold(Poly2::zero(), |acc, (c, g)| poly_add(&acc, &poly_mul(c, g)))
    }

    /// Normal form of `f` modulo the basis.
    pub fn normal_form(&self, f: &Poly2) -> Result<Poly2, AlgebraError> {
        let (_, r) = divide_with_quotients(f, &self.generators, self.order)?;
        Ok(r)
    }

    pub fn contains(&self, f: &Poly2) -> Result<bool, AlgebraError> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

pub fn leading_monomial(p: &Poly2, order: MonomialOrder) -> Option<Monomial> {
    p.terms().copied().max_by(|a, b| order.compare(a, b))
}

fn to_mpolys(gens: &[Poly2], order: MonomialOrder) -> Result<Vec<MPoly>, AlgebraError> {
    gens.iter().map(|g| MPoly::from_poly2(g, order)).collect()
}

/// Gröbner basis of `<gens>` with a cofactor ledger.
pub fn buchberger(gens: &[Poly2], order: MonomialOrder) -> Result<GroebnerBasis, AlgebraError> {
    if gens.iter().all(Poly2::is_zero) {
        return Err(AlgebraError::ZeroIdeal);
    }
    let raw = groebner::buchberger_raw(&to_mpolys(gens, order)?, order, true)?;
    Ok(GroebnerBasis::from_basis(raw, gens.to_vec()))
}

/// The unique reduced Gröbner basis of the same ideal.
pub fn reduce_to_rgb(gb: &GroebnerBasis) -> Result<GroebnerBasis, AlgebraError> {
    let reduced = groebner::reduce_basis(gb.to_basis()?);
    Ok(GroebnerBasis::from_basis(reduced, gb.inputs.clone()))
}

/// Reduced Gröbner basis straight from generators.
pub fn reduced_basis(gens: &[Poly2], order: MonomialOrder) -> Result<GroebnerBasis, AlgebraError> {
    reduce_to_rgb(&buchberger(gens, order)?)
}

/// Multivariate long division: `f = sum quotients[i] * basis[i] + remainder`
/// with no remainder term divisible by a basis leading term.
pub fn divide_with_quotients(
    f: &Poly2,
    basis: &[Poly2],
    order: MonomialOrder,
) -> Result<(Vec<Poly2>, Poly2), AlgebraError> {
    if basis.iter().any(Poly2::is_zero) {
        return Err(AlgebraError::ZeroDivisor);
    }
    let fb = MPoly::from_poly2(f, order)?;
    let bs = to_mpolys(basis, order)?;
    let refs: Vec<&MPoly> = bs.iter().collect();
    let (qs, r) = groebner::reduce(&fb, &refs, order, true);
    Ok((qs.iter().map(MPoly::to_poly2).collect(), r.to_poly2()))
}

/// Exact quotient `f / g`, if `g` divides `f`.
pub fn exact_division(f: &Poly2, g: &Poly2) -> Result<Option<Poly2>, AlgebraError> {
    let (q, r) = divide_with_quotients(f, std::slice::from_ref(g), MonomialOrder::GrevLex)?;
    Ok(r.is_zero().then(|| q.into_iter().next().unwrap()))
}

fn intersect_poly2(a: &[Poly2], b: &[Poly2]) -> Result<Vec<Poly2>, AlgebraError> {
    let order = MonomialOrder::Elimination;
    let r = groebner::intersect(&to_mpolys(a, order)?, &to_mpolys(b, order)?)?;
    Ok(r.iter().map(MPoly::to_poly2).collect())
}

/// Generators of `<a> ∩ <b>`.
pub fn ideal_intersection(a: &[Poly2], b: &[Poly2]) -> Result<Vec<Poly2>, AlgebraError> {
    let a: Vec<Poly2> = a.iter().filter(|p| !p.is_zero()).cloned().collect();
    let b: Vec<Poly2> = b.iter().filter(|p| !p.is_zero()).cloned().collect();
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    intersect_poly2(&a, &b)
}

/// `I : <g> = (I ∩ <g>) / g`.
fn colon_principal(i_gens: &[Poly2], g: &Poly2) -> Result<Vec<Poly2>, AlgebraError> {
    if g.is_zero() {
        return Ok(vec![Poly2::one()]);
    }
    let inter = ideal_intersection(i_gens, std::slice::from_ref(g))?;
    inter
        .iter()
        .map(|h| exact_division(h, g)?.ok_or(AlgebraError::ColonDivision))
        .collect()
}

/// Generators of the colon ideal `(I : J)`, intersected across the
/// generators of `J`.
pub fn ideal_quotient(i_gens: &[Poly2], j_gens: &[Poly2]) -> Result<Vec<Poly2>, AlgebraError> {
    if i_gens.is_empty() || j_gens.is_empty() {
        return Err(AlgebraError::EmptyGenerators);
    }
    if i_gens.iter().all(Poly2::is_zero) {
        // (0 : J) = 0 unless J is zero too
        return Ok(if j_gens.iter().all(Poly2::is_zero) {
            vec![Poly2::one()]
        } else {
            vec![Poly2::zero()]
        });
    }
    let mut acc: Option<Vec<Poly2>> = None;
    for g in j_gens {
        let q = colon_principal(i_gens, g)?;
        acc = Some(match acc {
            None => q,
            Some(prev) => ideal_intersection(&prev, &q)?,
        });
    }
    let out = acc.unwrap();
    // Present the result as a reduced basis.
    Ok(reduced_basis(&out, MonomialOrder::GrevLex)?.generators)
}

/// Do both generator lists span the same ideal?
pub fn ideal_equal(a: &[Poly2], b: &[Poly2]) -> Result<bool, AlgebraError> {
    let za = a.iter().all(Poly2::is_zero);
    let zb = b.iter().all(Poly2::is_zero);
    if za || zb {
        return Ok(za == zb);
    }
    let ra = reduced_basis(a, MonomialOrder::GrevLex)?;
    let rb = reduced_basis(b, MonomialOrder::GrevLex)?;
    Ok(ra.generators == rb.generators)
}

/// A monomial `x^alpha y^beta` in an ideal with cofactors expressing it in
/// the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialWitness {
    pub alpha: u32,
    pub beta: u32,
    pub cofactors: Vec<Poly2>,
}

/// Finds the smallest monomial (default order) in `<gens>`, if any, with
/// cofactors satisfying `sum q_i g_i = x^alpha y^beta` exactly.
pub fn monomial_in_ideal(gens: &[Poly2]) -> Result<Option<MonomialWitness>, AlgebraError> {
    if gens.iter().all(Poly2::is_zero) {
        return Err(AlgebraError::ZeroIdeal);
    }
    let order = MonomialOrder::GrevLex;
    if !groebner::contains_monomial(&to_mpolys(gens, order)?)? {
        return Ok(None);
    }
    let rgb = reduced_basis(gens, order)?;

    // Walk monomials upward in grevlex: degree by degree, y^d first.
    let mut found = None;
    'search: for d in 0..super::poly::DEGREE_CAP {
        for a in 0..=d {
            let m = Poly2::monomial(a, d - a);
            if rgb.contains(&m)? {
                found = Some(Monomial::new(a, d - a));
                break 'search;
            }
        }
    }
    let m = found.ok_or(AlgebraError::SearchExhausted)?;
    let target = Poly2::monomial(m.x, m.y);

    let (quotients, rem) = divide_with_quotients(&target, &rgb.generators, order)?;
    debug_assert!(rem.is_zero());
    let mut cofactors = vec![Poly2::zero(); gens.len()];
    for (j, q) in quotients.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        for (i, c) in rgb.cofactors[j].iter().enumerate() {
            cofactors[i] = poly_add(&cofactors[i], &poly_mul(q, c));
        }
    }

    let check = cofactors
        .iter()
        .zip(gens)
        .fold(Poly2::zero(), |acc, (q, g)| poly_add(&acc, &poly_mul(q, g)));
    if check != target {
        return Err(AlgebraError::CofactorMismatch);
    }
    Ok(Some(MonomialWitness {
        alpha: m.x,
        beta: m.y,
        cofactors,
    }))
}
