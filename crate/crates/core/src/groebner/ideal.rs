use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::groebner::buchberger::{self, Budget};
use crate::polyalg::{same_context, Monomial, MonomialOrder, PolyContext, Polynomial};

type Slot = Arc<Mutex<Option<Arc<Vec<Polynomial>>>>>;

/// Per-ideal cache of reduced bases. A slot is locked for the duration of
/// its computation, so concurrent readers wait for the one result.
#[derive(Default)]
struct BasisCache {
    slots: Mutex<HashMap<MonomialOrder, Slot>>,
}

impl BasisCache {
    fn slot(&self, ord: MonomialOrder) -> Slot {
        self.slots.lock().unwrap().entry(ord).or_default().clone()
    }
}

/// Finitely generated ideal of a polynomial ring.
#[derive(Clone)]
pub struct Ideal {
    ctx: Arc<PolyContext>,
    gens: Vec<Polynomial>,
    cache: Arc<BasisCache>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

/// Comma-separated generators, `0` for the zero ideal.
impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl Ideal {
    /// Zero generators are dropped and exact duplicates removed.
    pub fn new(ctx: &Arc<PolyContext>, gens: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut out: Vec<Polynomial> = Vec::new();
        for g in gens {
            if !same_context(g.context(), ctx) {
                return Err(Error::ContextMismatch);
            }
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(Ideal {
            ctx: ctx.clone(),
            gens: out,
            cache: Arc::default(),
        })
    }

    pub fn zero(ctx: &Arc<PolyContext>) -> Self {
        Ideal::new(ctx, []).expect("no generators")
    }

    pub fn unit(ctx: &Arc<PolyContext>) -> Self {
        Ideal::new(ctx, [Polynomial::one(ctx)]).expect("same context")
    }

    /// Parse each generator in `ctx`.
    pub fn parse(ctx: &Arc<PolyContext>, gens: &[&str]) -> Result<Self> {
        let ps = gens.iter().map(|s| Polynomial::parse(ctx, s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ctx, ps)
    }

    pub fn context(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub(crate) fn with_cached_basis(self, ord: MonomialOrder, basis: Vec<Polynomial>) -> Self {
        *self.cache.slot(ord).lock().unwrap() = Some(Arc::new(basis));
        self
    }

    /// Reduced Gröbner basis under `ord`, computed at most once per order.
    pub fn basis(&self, ord: MonomialOrder, budget: &Budget) -> Result<Arc<Vec<Polynomial>>> {
        let slot = self.cache.slot(ord);
        let mut guard = slot.lock().unwrap();
        if let Some(b) = guard.as_ref() {
            return Ok(b.clone());
        }
        let b = Arc::new(buchberger::reduced_basis(&self.ctx, &self.gens, ord, budget)?);
        *guard = Some(b.clone());
        Ok(b)
    }

    /// The canonical (grevlex) reduced basis.
    pub fn reduced_basis(&self, budget: &Budget) -> Result<Arc<Vec<Polynomial>>> {
        self.basis(MonomialOrder::Grevlex, budget)
    }

    pub fn normal_form(&self, p: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        if !same_context(p.context(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        let b = self.reduced_basis(budget)?;
        buchberger::normal_form(p, &b, MonomialOrder::Grevlex)
    }

    pub fn contains(&self, p: &Polynomial, budget: &Budget) -> Result<bool> {
        if !same_context(p.context(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        if p.is_zero() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        Ok(self.normal_form(p, budget)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        if self.gens.iter().any(|g| matches!(g.constant_value(), Some(c) if !c.is_zero())) {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        let b = self.reduced_basis(budget)?;
        Ok(b.len() == 1 && b[0].is_one())
    }

    /// Equality as ideals: equal reduced grevlex bases.
    pub fn same_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        if !same_context(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(*self.reduced_basis(budget)? == *other.reduced_basis(budget)?)
    }

    /// Is some power of `p` in the ideal? Decided by testing
    /// `1 ∈ I + ⟨1 - t·p⟩` with one fresh variable `t`.
    pub fn radical_contains(&self, p: &Polynomial, budget: &Budget) -> Result<bool> {
        if !same_context(p.context(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        if p.is_zero() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            // k[x] is reduced
            return Ok(false);
        }
        if self.contains(p, budget)? {
            return Ok(true);
        }
        let n = self.ctx.nvars();
        let mut names = self.ctx.variables().to_vec();
        names.push(self.ctx.fresh_name("t"));
        let big = PolyContext::new(names, self.ctx.field())?;
        let map: Vec<usize> = (0..n).collect();
        let t = Polynomial::var(&big, n);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.embed(&big, &map)).collect();
        gens.push(&Polynomial::one(&big) - &(&t * &p.embed(&big, &map)));
        Ideal::new(&big, gens)?.is_unit(budget)
    }

    /// Smallest `n ≤ max_n` with `pⁿ` in the ideal, by direct membership of
    /// successive powers.
    pub fn nilpotency_exponent(&self, p: &Polynomial, max_n: u32, budget: &Budget) -> Result<Option<u32>> {
        let mut q = Polynomial::one(&self.ctx);
        for n in 1..=max_n {
            q = &q * p;
            if self.contains(&q, budget)? {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !same_context(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ideal::new(&self.ctx, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if !same_context(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ctx, gens)
    }

    /// `Iⁿ` generated by all degree-`n` products of generators. `n = 0`
    /// gives the unit ideal.
    pub fn power(&self, n: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ctx);
        for _ in 0..n {
            let mut gens = Vec::new();
            for a in &acc.gens {
                for b in &self.gens {
                    gens.push(a * b);
                }
            }
            acc = Ideal::new(&self.ctx, gens).expect("same context");
        }
        acc
    }

    /// `I ∩ J` via `t·I + (1 - t)·J`, eliminating `t`.
    pub fn intersect(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        if !same_context(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        let n = self.ctx.nvars();
        let mut names = vec![self.ctx.fresh_name("t")];
        names.extend(self.ctx.variables().iter().cloned());
        let big = PolyContext::new(names, self.ctx.field())?;
        let map: Vec<usize> = (1..=n).collect();
        let t = Polynomial::var(&big, 0);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let gens = self
            .gens
            .iter()
            .map(|g| &t * &g.embed(&big, &map))
            .chain(other.gens.iter().map(|g| &one_minus_t * &g.embed(&big, &map)));
        let joint = Ideal::new(&big, gens)?;
        joint.eliminate_leading(1, &self.ctx, budget)
    }

    /// `I ∩ k[keep]`, stated in a context of the kept variables (in their
    /// original relative order).
    pub fn eliminate(&self, keep: &[usize], budget: &Budget) -> Result<Ideal> {
        let n = self.ctx.nvars();
        if keep.iter().any(|&k| k >= n) {
            return Err(Error::InvalidContext("kept variable out of range".into()));
        }
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let dropped: Vec<usize> = (0..n).filter(|i| !kept.contains(i)).collect();
        // reorder as [dropped..., kept...]
        let mut perm = vec![0usize; n];
        for (pos, &i) in dropped.iter().chain(&kept).enumerate() {
            perm[i] = pos;
        }
        let names: Vec<String> = dropped.iter().chain(&kept).map(|&i| self.ctx.variables()[i].clone()).collect();
        let big = PolyContext::new(names, self.ctx.field())?;
        let small = PolyContext::new(kept.iter().map(|&i| self.ctx.variables()[i].clone()), self.ctx.field())?;
        let joint = Ideal::new(&big, self.gens.iter().map(|g| g.embed(&big, &perm)))?;
        joint.eliminate_leading(dropped.len(), &small, budget)
    }

    /// Eliminate the first `split` variables; `target` names the remaining
    /// ones in order.
    pub(crate) fn eliminate_leading(&self, split: usize, target: &Arc<PolyContext>, budget: &Budget) -> Result<Ideal> {
        debug_assert_eq!(self.ctx.nvars(), split + target.nvars());
        let ord = MonomialOrder::Block { split };
        let basis = self.basis(ord, budget)?;
        let kept: Vec<Polynomial> = basis
            .iter()
            .filter(|g| (0..split).all(|i| !g.uses_variable(i)))
            .map(|g| restrict(g, split, target))
            .collect();
        // a reduced block basis restricts to the reduced grevlex basis of
        // the elimination ideal
        let cached = kept.clone();
        Ok(Ideal::new(target, kept)?.with_cached_basis(MonomialOrder::Grevlex, cached))
    }

    /// Move into `target`, sending variable `i` to `var_map[i]`.
    pub fn embed(&self, target: &Arc<PolyContext>, var_map: &[usize]) -> Ideal {
        Ideal::new(target, self.gens.iter().map(|g| g.embed(target, var_map))).expect("embedded into target")
    }

    /// Image of each generator under a substitution into `target`.
    pub fn substitute(&self, images: &[Polynomial], target: &Arc<PolyContext>) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.substitute(images, target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }
}

/// Drop the first `split` (unused) variables.
fn restrict(p: &Polynomial, split: usize, target: &Arc<PolyContext>) -> Polynomial {
    Polynomial::from_terms(
        target,
        p.terms()
            .iter()
            .map(|(m, c)| (Monomial::from_exponents(&m.exponents()[split..]), c.clone())),
    )
}
