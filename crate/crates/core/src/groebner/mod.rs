//! Gröbner bases and the ideal calculus built on them: membership, radical
//! membership, sums, products, powers, intersections, elimination, kernels,
//! contractions and subalgebra membership.

mod buchberger;
mod ideal;
mod ringmap;

use std::sync::Arc;

pub use buchberger::{normal_form, Budget};
pub use ideal::Ideal;
pub use ringmap::PolyRingMap;

use crate::error::{Error, Result};
use crate::polyalg::{MonomialOrder, Polynomial};

/// Reduced Gröbner basis of `ideal` under `ord` (cached on the ideal).
pub fn buchberger(ideal: &Ideal, ord: MonomialOrder, budget: &Budget) -> Result<Arc<Vec<Polynomial>>> {
    ideal.basis(ord, budget)
}

pub fn ideal_membership(p: &Polynomial, ideal: &Ideal, budget: &Budget) -> Result<bool> {
    ideal.contains(p, budget)
}

pub fn radical_membership(p: &Polynomial, ideal: &Ideal, budget: &Budget) -> Result<bool> {
    ideal.radical_contains(p, budget)
}

pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.sum(b)
}

pub fn ideal_product(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.product(b)
}

pub fn ideal_power(a: &Ideal, n: u32) -> Result<Ideal> {
    if n == 0 {
        return Err(Error::Precondition("ideal power needs n ≥ 1".into()));
    }
    Ok(a.power(n))
}

pub fn intersect(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<Ideal> {
    a.intersect(b, budget)
}

/// `I ∩ k[keep]` with `keep` given by variable names.
pub fn eliminate(ideal: &Ideal, keep: &[&str], budget: &Budget) -> Result<Ideal> {
    let idx = keep
        .iter()
        .map(|v| {
            ideal
                .context()
                .index_of(v)
                .ok_or_else(|| Error::InvalidContext(format!("unknown variable '{v}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    ideal.eliminate(&idx, budget)
}

pub fn map_kernel(f: &PolyRingMap, budget: &Budget) -> Result<Ideal> {
    f.kernel(budget)
}

pub fn contract(f: &PolyRingMap, j: &Ideal, budget: &Budget) -> Result<Ideal> {
    f.contract(j, budget)
}

pub fn image_membership(b: &Polynomial, f: &PolyRingMap, budget: &Budget) -> Result<Option<Polynomial>> {
    f.image_membership(b, budget)
}
