//! Exact arithmetic in GF(2)[x, y] and its torus quotients, with the
//! Gröbner-basis tools used to validate encoders.

mod groebner;
mod ideal;
mod poly;

pub use groebner::MonomialOrder;
pub use ideal::{
    buchberger, divide_with_quotients, exact_division, ideal_equal, ideal_intersection,
    ideal_quotient, leading_monomial, monomial_in_ideal, reduce_to_rgb, reduced_basis,
    GroebnerBasis, MonomialWitness,
};
pub use poly::{poly_add, poly_mod_torus, poly_mul, Monomial, Poly2, TorusIdeal, DEGREE_CAP};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("polynomial parse error: {0}")]
    Parse(String),
    #[error("exponent cap exceeded (x^{x} y^{y})")]
    DegreeCap { x: u32, y: u32 },
    #[error("generators span the zero ideal")]
    ZeroIdeal,
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("intersection generator not divisible by the colon element")]
    ColonDivision,
    #[error("monomial search ran past the degree cap")]
    SearchExhausted,
    #[error("cofactors do not reproduce the monomial")]
    CofactorMismatch,
}
