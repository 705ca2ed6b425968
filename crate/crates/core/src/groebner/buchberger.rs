use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyalg::{Coeff, FieldSpec, Monomial, MonomialOrder, PolyContext, Polynomial};

/// Resource limits for a single Gröbner basis computation. Exceeding either
/// limit yields [`Error::Inconclusive`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 10_000,
            max_degree: 40,
        }
    }
}

/// Terms sorted ascending under the working order; the leading term is last.
pub(crate) type Terms = Vec<(Monomial, Coeff)>;

pub(crate) struct Engine {
    pub field: FieldSpec,
    pub ord: MonomialOrder,
}

impl Engine {
    pub fn new(field: FieldSpec, ord: MonomialOrder) -> Self {
        Engine { field, ord }
    }

    pub fn to_terms(&self, p: &Polynomial) -> Terms {
        let mut t: Terms = p.terms().to_vec();
        if self.ord == MonomialOrder::Grevlex {
            t.reverse();
        } else {
            t.sort_by(|a, b| self.ord.cmp(&a.0, &b.0));
        }
        t
    }

    pub fn to_poly(&self, ctx: &Arc<PolyContext>, t: &Terms) -> Polynomial {
        if self.ord == MonomialOrder::Grevlex {
            Polynomial::from_sorted_terms(ctx, t.iter().rev().cloned().collect())
        } else {
            Polynomial::from_terms(ctx, t.iter().cloned())
        }
    }

    fn monic(&self, mut t: Terms) -> Terms {
        if let Some((_, lc)) = t.last() {
            if !lc.is_one() {
                let inv = self.field.inv(lc).expect("nonzero");
                for (_, c) in t.iter_mut() {
                    *c = self.field.mul(c, &inv);
                }
            }
        }
        t
    }

    /// `p - factor * shift * g`, all ascending.
    fn sub_scaled(&self, p: &Terms, g: &Terms, shift: &Monomial, factor: &Coeff) -> Terms {
        let mut out = Vec::with_capacity(p.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let scaled = |k: usize| -> (Monomial, Coeff) {
            let (m, c) = &g[k];
            (m.mul(shift), self.field.neg(&self.field.mul(c, factor)))
        };
        let mut next_g = if g.is_empty() { None } else { Some(scaled(0)) };
        while i < p.len() {
            let Some((gm, gc)) = next_g.as_ref() else { break };
            match self.ord.cmp(&p[i].0, gm) {
                Ordering::Less => {
                    out.push(p[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((gm.clone(), gc.clone()));
                    j += 1;
                    next_g = if j < g.len() { Some(scaled(j)) } else { None };
                }
                Ordering::Equal => {
                    let c = self.field.add(&p[i].1, gc);
                    if !c.is_zero() {
                        out.push((p[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                    next_g = if j < g.len() { Some(scaled(j)) } else { None };
                }
            }
        }
        out.extend(p[i..].iter().cloned());
        if let Some(t) = next_g {
            out.push(t);
            j += 1;
            while j < g.len() {
                out.push(scaled(j));
                j += 1;
            }
        }
        out
    }

    /// Full reduction. Each step uses the first basis element (in slice
    /// order) whose leading monomial divides the current leading term.
    pub fn reduce(&self, p: Terms, basis: &[&Terms]) -> Terms {
        let mut p = p;
        let mut rem: Terms = Vec::new();
        while let Some((m, c)) = p.last() {
            let hit = basis.iter().find_map(|g| {
                let (gm, _) = g.last()?;
                gm.quotient_of(m).map(|q| (*g, q))
            });
            match hit {
                Some((g, shift)) => {
                    let factor = self.field.div(c, &g.last().unwrap().1).expect("nonzero leading coefficient");
                    let mut next = self.sub_scaled(&p, g, &shift, &factor);
                    // the leading terms cancel exactly
                    debug_assert!(next.last().is_none_or(|(lm, _)| self.ord.cmp(lm, m) == Ordering::Less));
                    std::mem::swap(&mut p, &mut next);
                }
                None => rem.push(p.pop().unwrap()),
            }
        }
        rem.reverse();
        rem
    }

    fn s_poly(&self, f: &Terms, g: &Terms) -> Terms {
        let (fm, _) = f.last().unwrap();
        let (gm, _) = g.last().unwrap();
        let l = fm.lcm(gm);
        let sf = fm.quotient_of(&l).unwrap();
        let sg = gm.quotient_of(&l).unwrap();
        // f, g monic
        let neg_one = self.field.neg(&self.field.one());
        let a = self.sub_scaled(&Vec::new(), f, &sf, &neg_one);
        self.sub_scaled(&a, g, &sg, &self.field.one())
    }

    /// Reduced Gröbner basis: monic, auto-reduced, sorted ascending by
    /// leading monomial.
    pub fn groebner(&self, gens: &[Terms], budget: &Budget) -> Result<Vec<Terms>> {
        let mut basis: Vec<Terms> = Vec::new();
        let mut pending: Vec<(usize, usize)> = Vec::new();
        let mut pairs_done = 0usize;

        let too_deep = |t: &Terms| t.iter().any(|(m, _)| m.degree() > budget.max_degree);
        let unit = |field: FieldSpec, n: usize| vec![vec![(Monomial::one(n), field.one())]];

        for g in gens {
            if g.is_empty() {
                continue;
            }
            if too_deep(g) {
                return Err(Error::Inconclusive(format!(
                    "generator degree exceeds budget {}",
                    budget.max_degree
                )));
            }
            let refs: Vec<&Terms> = basis.iter().collect();
            let r = self.reduce(g.clone(), &refs);
            if r.is_empty() {
                continue;
            }
            let r = self.monic(r);
            if r.last().unwrap().0.is_one() {
                return Ok(unit(self.field, r[0].0.len()));
            }
            let k = basis.len();
            basis.push(r);
            pending.extend((0..k).map(|i| (i, k)));
        }

        while !pending.is_empty() {
            // normal selection strategy: smallest lcm first
            let idx = (0..pending.len())
                .min_by(|&a, &b| {
                    let la = self.pair_lcm(&basis, pending[a]);
                    let lb = self.pair_lcm(&basis, pending[b]);
                    la.degree().cmp(&lb.degree()).then_with(|| self.ord.cmp(&la, &lb)).then(a.cmp(&b))
                })
                .unwrap();
            let (i, j) = pending.swap_remove(idx);
            let mi = &basis[i].last().unwrap().0;
            let mj = &basis[j].last().unwrap().0;
            if mi.is_coprime(mj) {
                continue;
            }
            let l = mi.lcm(mj);
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k].last().unwrap().0.divides(&l)
                    && !pending.contains(&(i.min(k), i.max(k)))
                    && !pending.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            pairs_done += 1;
            if pairs_done > budget.max_pairs {
                return Err(Error::Inconclusive(format!(
                    "S-pair budget of {} exhausted",
                    budget.max_pairs
                )));
            }
            let s = self.s_poly(&basis[i], &basis[j]);
            let refs: Vec<&Terms> = basis.iter().collect();
            let r = self.reduce(s, &refs);
            if r.is_empty() {
                continue;
            }
            if too_deep(&r) {
                return Err(Error::Inconclusive(format!(
                    "intermediate degree exceeds budget {}",
                    budget.max_degree
                )));
            }
            let r = self.monic(r);
            if r.last().unwrap().0.is_one() {
                return Ok(unit(self.field, r[0].0.len()));
            }
            let k = basis.len();
            basis.push(r);
            pending.extend((0..k).map(|i| (i, k)));
        }

        Ok(self.auto_reduce(basis))
    }

    fn pair_lcm(&self, basis: &[Terms], (i, j): (usize, usize)) -> Monomial {
        basis[i].last().unwrap().0.lcm(&basis[j].last().unwrap().0)
    }

    fn auto_reduce(&self, mut basis: Vec<Terms>) -> Vec<Terms> {
        basis.sort_by(|a, b| self.ord.cmp(&a.last().unwrap().0, &b.last().unwrap().0));
        let mut minimal: Vec<Terms> = Vec::new();
        for g in basis {
            let lm = &g.last().unwrap().0;
            if !minimal.iter().any(|h| h.last().unwrap().0.divides(lm)) {
                minimal.push(g);
            }
        }
        let mut reduced = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let others: Vec<&Terms> = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g).collect();
            let r = self.monic(self.reduce(minimal[k].clone(), &others));
            reduced.push(r);
        }
        reduced.sort_by(|a, b| self.ord.cmp(&a.last().unwrap().0, &b.last().unwrap().0));
        reduced
    }
}

/// Multivariate division remainder of `p` by `basis` under `ord`.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial], ord: MonomialOrder) -> Result<Polynomial> {
    let ctx = p.context();
    ord.validate(ctx.nvars())?;
    if basis.iter().any(|g| !crate::polyalg::same_context(g.context(), ctx)) {
        return Err(Error::ContextMismatch);
    }
    let eng = Engine::new(ctx.field(), ord);
    let gs: Vec<Terms> = basis.iter().filter(|g| !g.is_zero()).map(|g| eng.to_terms(g)).collect();
    let refs: Vec<&Terms> = gs.iter().collect();
    Ok(eng.to_poly(ctx, &eng.reduce(eng.to_terms(p), &refs)))
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub(crate) fn reduced_basis(
    ctx: &Arc<PolyContext>,
    gens: &[Polynomial],
    ord: MonomialOrder,
    budget: &Budget,
) -> Result<Vec<Polynomial>> {
    ord.validate(ctx.nvars())?;
    let eng = Engine::new(ctx.field(), ord);
    let ts: Vec<Terms> = gens.iter().map(|g| eng.to_terms(g)).collect();
    Ok(eng.groebner(&ts, budget)?.iter().map(|t| eng.to_poly(ctx, t)).collect())
}
