use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyalg::field::{Coeff, FieldSpec};
use crate::polyalg::monomial::{Monomial, MonomialOrder};
use crate::syntax::Cursor;

/// Ordered variable names plus the coefficient field.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyContext {
    variables: Vec<String>,
    field: FieldSpec,
}

impl PolyContext {
    pub fn new<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        field: FieldSpec,
    ) -> Result<Arc<Self>> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        for (i, v) in variables.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidContext("empty variable name".into()));
            }
            if variables[..i].contains(v) {
                return Err(Error::InvalidContext(format!("duplicate variable '{v}'")));
            }
        }
        if let FieldSpec::PrimeField(p) = field {
            FieldSpec::prime(p)?;
        }
        Ok(Arc::new(PolyContext { variables, field }))
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// `base` if unused, otherwise the first unused `base_2`, `base_3`, ...
    pub fn fresh_name(&self, base: &str) -> String {
        fresh_name_among(&self.variables, base)
    }
}

pub(crate) fn fresh_name_among(taken: &[String], base: &str) -> String {
    if !taken.iter().any(|v| v == base) {
        return base.to_string();
    }
    (2..)
        .map(|i| format!("{base}_{i}"))
        .find(|c| !taken.contains(c))
        .expect("unbounded search")
}

pub(crate) fn same_context(a: &Arc<PolyContext>, b: &Arc<PolyContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exact multivariate polynomial.
///
/// Terms are stored in descending grevlex order, without zero
/// coefficients, so structural equality is equality of polynomials.
#[derive(Clone)]
pub struct Polynomial {
    ctx: Arc<PolyContext>,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ctx: &Arc<PolyContext>) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ctx: &Arc<PolyContext>, c: Coeff) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.nvars()), c)
    }

    pub fn one(ctx: &Arc<PolyContext>) -> Self {
        Self::constant(ctx, ctx.field().one())
    }

    pub fn from_i64(ctx: &Arc<PolyContext>, n: i64) -> Self {
        Self::constant(ctx, ctx.field().from_i64(n))
    }

    pub fn var(ctx: &Arc<PolyContext>, index: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.nvars(), index), ctx.field().one())
    }

    pub fn monomial(ctx: &Arc<PolyContext>, m: Monomial, c: Coeff) -> Self {
        debug_assert_eq!(m.len(), ctx.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Canonicalize an arbitrary term list: combine like monomials, drop
    /// zeros, sort.
    pub fn from_terms(ctx: &Arc<PolyContext>, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let field = ctx.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), ctx.nvars());
            match acc.get_mut(&m) {
                Some(old) => *old = field.add(old, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0));
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Terms already sorted descending in grevlex and free of zeros.
    pub(crate) fn from_sorted_terms(ctx: &Arc<PolyContext>, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| MonomialOrder::Grevlex.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn parse(ctx: &Arc<PolyContext>, text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text)?;
        let p = cur.poly(ctx)?;
        cur.expect_eof()?;
        Ok(p)
    }

    pub fn context(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn field(&self) -> FieldSpec {
        self.ctx.field()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(self.field().zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.constant_value(), Some(c) if c.is_one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Variables occurring in some term.
    pub fn uses_variable(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[index] > 0)
    }

    pub fn leading_term(&self, ord: MonomialOrder) -> Result<(Monomial, Coeff)> {
        ord.validate(self.ctx.nvars())?;
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
            .cloned()
            .ok_or(Error::ZeroPolynomial)
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let field = self.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let fix = |c: &Coeff| if negate { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match MonomialOrder::Grevlex.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), fix(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(&a[i].1, &fix(&b[j].1));
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), fix(c))));
        Polynomial {
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        let field = self.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(old) => *old = field.add(old, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0));
        Polynomial {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        let field = self.field();
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), field.mul(c, d))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.product(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base);
            }
        }
        acc
    }

    /// Evaluate at `images`, one polynomial per variable of this context,
    /// all living in a common target context.
    pub fn substitute(&self, images: &[Polynomial], target: &Arc<PolyContext>) -> Result<Polynomial> {
        if images.len() != self.ctx.nvars() {
            return Err(Error::ContextMismatch);
        }
        if images.iter().any(|p| !same_context(&p.ctx, target)) {
            return Err(Error::ContextMismatch);
        }
        let field = target.field();
        if field != self.field() {
            return Err(Error::ContextMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().product(&images[i]);
                    powers[i].push(next);
                }
                t = t.product(&powers[i][e]);
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    /// Move into `target`, sending variable `i` to variable `var_map[i]`.
    pub fn embed(&self, target: &Arc<PolyContext>, var_map: &[usize]) -> Polynomial {
        debug_assert_eq!(var_map.len(), self.ctx.nvars());
        let n = target.nvars();
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u16; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[var_map[i]] += x;
                }
                (Monomial::from_exponents(&e), c.clone())
            }),
        )
    }

    /// Scale so the leading coefficient under `ord` is one.
    pub fn monic(&self, ord: MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            Ok((_, c)) => self.scale(&self.field().inv(&c).expect("nonzero leading coefficient")),
            Err(_) => self.clone(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let v = &self.ctx.variables[i];
                    if e == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            let abs = c.abs_string();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

// Operator impls panic on mismatched contexts; use the `checked_*` methods
// where inputs are not already known to agree.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("context mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("context mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("context mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let field = self.field();
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }
}
