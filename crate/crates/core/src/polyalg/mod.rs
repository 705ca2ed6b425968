//! Exact multivariate polynomials over ℚ and prime fields.

mod field;
mod monomial;
mod polynomial;

pub use field::{Coeff, FieldSpec, DEFAULT_FUZZ_PRIME};
pub use monomial::{compare_monomials, Monomial, MonomialOrder};
pub use polynomial::{PolyContext, Polynomial};

pub(crate) use polynomial::{fresh_name_among, same_context};

use crate::error::Result;

pub fn add(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.checked_add(q)
}

pub fn mul(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.checked_mul(q)
}

pub fn leading_term(p: &Polynomial, ord: MonomialOrder) -> Result<(Monomial, Coeff)> {
    p.leading_term(ord)
}
