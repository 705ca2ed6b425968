use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Dense exponent vector; one entry per context variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u16; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Monomial orders.
///
/// `Block { split }` compares the first `split` variables by grevlex and
/// breaks ties with grevlex on the remaining ones. It is an elimination order
/// for the leading block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    Block { split: usize },
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            MonomialOrder::Block { split } if *split > nvars => Err(Error::InvalidOrder(format!(
                "block split {split} exceeds variable count {nvars}"
            ))),
            _ => Ok(()),
        }
    }

    /// Compare two monomials of equal length.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Block { split } => {
                let s = (*split).min(a.len());
                grevlex(&a[..s], &b[..s]).then_with(|| grevlex(&a[s..], &b[s..]))
            }
        }
    }
}

/// Checked comparison.
pub fn compare_monomials(a: &Monomial, b: &Monomial, ord: MonomialOrder) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::ContextMismatch);
    }
    ord.validate(a.len())?;
    Ok(ord.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn lex_prefers_first_variable() {
        assert_eq!(compare_monomials(&m(&[1, 0]), &m(&[0, 1]), MonomialOrder::Lex), Ok(Ordering::Greater));
    }

    #[test]
    fn grevlex_tie_break() {
        // x^2 y vs x y^2
        assert_eq!(
            compare_monomials(&m(&[2, 1]), &m(&[1, 2]), MonomialOrder::Grevlex),
            Ok(Ordering::Greater)
        );
        // x y z vs x^2 z : grevlex looks at z first (equal), then y
        assert_eq!(MonomialOrder::Grevlex.cmp(&m(&[1, 1, 1]), &m(&[2, 0, 1])), Ordering::Less);
    }

    #[test]
    fn reflexive_and_length_checked() {
        let a = m(&[3, 1, 4]);
        for ord in [MonomialOrder::Lex, MonomialOrder::Grevlex, MonomialOrder::Block { split: 1 }] {
            assert_eq!(compare_monomials(&a, &a, ord), Ok(Ordering::Equal));
        }
        assert_eq!(
            compare_monomials(&m(&[1]), &m(&[1, 0]), MonomialOrder::Lex),
            Err(Error::ContextMismatch)
        );
        assert!(MonomialOrder::Block { split: 4 }.validate(3).is_err());
    }

    #[test]
    fn block_eliminates_leading_group() {
        let ord = MonomialOrder::Block { split: 1 };
        // t beats any power of the kept variables
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
    }

    fn exps(n: usize) -> impl Strategy<Value = Vec<u16>> {
        proptest::collection::vec(0u16..6, n)
    }

    fn order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::Grevlex),
            (0usize..=4).prop_map(|split| MonomialOrder::Block { split }),
        ]
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_total_and_well_founded(a in exps(4), b in exps(4), c in exps(4), ord in order()) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            let ab = ord.cmp(&a, &b);
            prop_assert_eq!(ab.reverse(), ord.cmp(&b, &a));
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ab);
            let one = Monomial::one(4);
            if !a.is_one() {
                prop_assert_eq!(ord.cmp(&one, &a), Ordering::Less);
            }
        }

        #[test]
        fn orders_are_transitive(a in exps(3), b in exps(3), c in exps(3), ord in order()) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            if ord.cmp(&a, &b) != Ordering::Greater && ord.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(ord.cmp(&a, &c), Ordering::Greater);
            }
        }
    }
}
