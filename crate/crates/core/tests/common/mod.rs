#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use adicforge::corpus::Corpus;
use adicforge::polyalg::{Coeff, PolyContext, Polynomial};
use rand::Rng;

pub const P: u64 = 101;
pub const SEED: u64 = 20_240_601;

/// Sparse vector over 𝔽ₚ keyed by exponent vectors.
type Vector = BTreeMap<Vec<u16>, u64>;

fn to_vector(p: &Polynomial) -> Vector {
    p.terms()
        .iter()
        .map(|(m, c)| match c {
            Coeff::Modular(c) => (m.exponents().to_vec(), *c as u64),
            Coeff::Rational(_) => panic!("oracle works over 𝔽ₚ"),
        })
        .collect()
}

fn inv(a: u64) -> u64 {
    // Fermat
    let mut r = 1;
    let mut b = a % P;
    let mut e = P - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn shift(v: &Vector, m: &[u16]) -> Vector {
    v.iter()
        .map(|(k, c)| (k.iter().zip(m).map(|(a, b)| a + b).collect(), *c))
        .collect()
}

fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Vec<u16>> {
    let mut out = vec![vec![0u16; nvars]];
    let mut frontier = out.clone();
    for _ in 0..deg {
        let mut next = Vec::new();
        for m in &frontier {
            for i in 0..nvars {
                let mut n = m.clone();
                n[i] += 1;
                if !next.contains(&n) {
                    next.push(n);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Row echelon basis of a subspace, pivots at the largest key.
#[derive(Default)]
struct Echelon {
    rows: HashMap<Vec<u16>, Vector>,
}

impl Echelon {
    fn reduce(&self, mut v: Vector) -> Vector {
        loop {
            let pivot = v.keys().rev().find(|k| self.rows.contains_key(*k)).cloned();
            let Some(k) = pivot else { return v };
            let c = v[&k];
            for (key, rc) in &self.rows[&k] {
                let e = v.entry(key.clone()).or_insert(0);
                *e = (*e + P - c * rc % P) % P;
                if *e == 0 {
                    v.remove(key);
                }
            }
        }
    }

    fn insert(&mut self, v: Vector) {
        let v = self.reduce(v);
        if let Some((k, c)) = v.iter().next_back().map(|(k, c)| (k.clone(), *c)) {
            let s = inv(c);
            let v = v.into_iter().map(|(key, x)| (key, x * s % P)).collect();
            self.rows.insert(k, v);
        }
    }
}

/// Is `f` a combination `Σ hᵢ gᵢ` with `deg(hᵢ gᵢ) ≤ d`? Pure linear algebra,
/// no Gröbner bases.
pub fn in_degree_span(f: &Polynomial, gens: &[Polynomial], d: u32) -> bool {
    let n = f.context().nvars();
    let mut span = Echelon::default();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        let gv = to_vector(g);
        for m in monomials_up_to(n, d - dg) {
            span.insert(shift(&gv, &m));
        }
    }
    span.reduce(to_vector(f)).is_empty()
}

/// Membership by cofactor search, raising the degree bound up to `max_d`.
pub fn oracle_member(f: &Polynomial, gens: &[Polynomial], max_d: u32) -> bool {
    if f.is_zero() {
        return true;
    }
    let start = f.degree().unwrap_or(0);
    (start..=max_d).any(|d| in_degree_span(f, gens, d))
}

pub struct MembershipInstance {
    pub ctx: Arc<PolyContext>,
    pub gens: Vec<Polynomial>,
    pub f: Polynomial,
}

/// At most three variables and generator degree at most three over 𝔽₁₀₁.
/// Half the instances are built inside the ideal.
pub fn membership_instance(seed: u64) -> MembershipInstance {
    let mut c = Corpus::new(seed);
    let n = c.rng().gen_range(1..=3);
    let ctx = PolyContext::new(["x", "y", "z"][..n].iter().copied(), c.field()).unwrap();
    let k = c.rng().gen_range(1..=3);
    let gens: Vec<Polynomial> = (0..k)
        .map(|_| {
            let min = if c.rng().gen_bool(0.2) { 0 } else { 1 };
            loop {
                let g = c.poly(&ctx, min, 3, 3);
                if g.degree().is_some_and(|d| d > 0) {
                    return g;
                }
            }
        })
        .collect();
    let f = if c.rng().gen_bool(0.5) {
        gens.iter()
            .map(|g| &c.poly(&ctx, 0, 2, 3) * g)
            .fold(Polynomial::zero(&ctx), |acc, t| &acc + &t)
    } else if c.rng().gen_bool(0.5) {
        c.vanishing_poly(&ctx, 3, 4)
    } else {
        c.poly(&ctx, 0, 3, 4)
    };
    MembershipInstance { ctx, gens, f }
}
