use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field of a polynomial context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// The rationals, characteristic 0.
    Rationals,
    /// The prime field with `p` elements.
    PrimeField(u32),
}

/// Prime used by the fuzz corpora.
pub const DEFAULT_FUZZ_PRIME: u32 = 101;

/// An exact field element. The variant always matches the owning context's
/// [`FieldSpec`]; modular values are kept in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular(u32),
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::InvalidContext(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::zero()),
            FieldSpec::PrimeField(_) => Coeff::Modular(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => Coeff::Modular(n.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => {
                let r = ((n % BigInt::from(*p)) + BigInt::from(*p)) % BigInt::from(*p);
                Coeff::Modular(r.to_u32().expect("residue fits in u32"))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x + y),
            (FieldSpec::PrimeField(p), Coeff::Modular(x), Coeff::Modular(y)) => {
                Coeff::Modular(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            _ => unreachable!("coefficient does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Rationals, Coeff::Rational(x)) => Coeff::Rational(-x),
            (FieldSpec::PrimeField(p), Coeff::Modular(x)) => Coeff::Modular((p - x) % p),
            _ => unreachable!("coefficient does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x * y),
            (FieldSpec::PrimeField(p), Coeff::Modular(x), Coeff::Modular(y)) => {
                Coeff::Modular(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            _ => unreachable!("coefficient does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (FieldSpec::Rationals, Coeff::Rational(x)) => Coeff::Rational(x.recip()),
            (FieldSpec::PrimeField(p), Coeff::Modular(x)) => Coeff::Modular(pow_mod(*x, p - 2, *p)),
            _ => unreachable!("coefficient does not belong to {self}"),
        })
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p = p as u64;
    let mut b = base as u64 % p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        exp >>= 1;
    }
    acc as u32
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(x) => x.is_zero(),
            Coeff::Modular(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(x) => x.is_one(),
            Coeff::Modular(x) => *x == 1,
        }
    }

    /// True when the printed form starts with a minus sign.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Coeff::Rational(x) => x.is_negative(),
            Coeff::Modular(_) => false,
        }
    }

    pub(crate) fn abs_string(&self) -> String {
        match self {
            Coeff::Rational(x) => x.abs().to_string(),
            Coeff::Modular(x) => x.to_string(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(x) => write!(f, "{x}"),
            Coeff::Modular(x) => write!(f, "{x}"),
        }
    }
}
