use crate::adic::morphism::AdicMorphism;
use crate::adic::presentation::AdicPresentation;
use crate::adic::report::{settle, Certificate, Verdict, VerdictReport, Witness};
use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal, PolyRingMap};
use crate::polyalg::Polynomial;

/// Default truncation cap for level-indexed checks.
pub const DEFAULT_CAP: u32 = 4;

/// `φ(I)·B` and `J` define the same topology on `B`, decided by mutual
/// radical membership.
pub fn is_adic(phi: &AdicMorphism, budget: &Budget) -> Result<VerdictReport> {
    settle(adic_report(phi, budget))
}

fn adic_report(phi: &AdicMorphism, budget: &Budget) -> Result<VerdictReport> {
    let target = phi.target();
    let mut rep = VerdictReport::new(Verdict::True);
    rep.zero_ring = target.is_zero_ring(budget)?;
    let ext = phi.extend(phi.source().def_ideal())?;
    let s_ext = target.relations().sum(&ext)?;
    let sj = target.reduction_ideal();
    let mut ok = true;
    for g in target.def_ideal().generators() {
        let holds = s_ext.radical_contains(g, budget)?;
        rep.push(Certificate::member(g, &s_ext, true, holds));
        ok &= holds;
    }
    for g in ext.generators() {
        let holds = sj.radical_contains(g, budget)?;
        rep.push(Certificate::member(g, sj, true, holds));
        ok &= holds;
    }
    if rep.certificates.is_empty() {
        rep.push(Certificate::note("both ideals of definition are zero"));
    }
    rep.verdict = Verdict::from_bool(ok);
    Ok(rep)
}

/// Which target variables lie in the image of `k[x] → k[y]/rels`. Returns
/// the certificates and whether every variable was reached.
fn surjective_modulo(phi: &AdicMorphism, rels: Ideal, level: u32, budget: &Budget) -> Result<(bool, Vec<Certificate>)> {
    let target = phi.target().context();
    let map = PolyRingMap::new(phi.source().context(), target, rels, phi.images().to_vec())?;
    let vars: Vec<Polynomial> = (0..target.nvars()).map(|i| Polynomial::var(target, i)).collect();
    let found = map.image_membership_all(&vars, budget)?;
    let mut certs = Vec::new();
    let mut all = true;
    for (name, w) in target.variables().iter().zip(found) {
        match w {
            Some(w) => certs.push(Certificate::value(format!("preimage of {name} at level {level}"), Witness::Poly(w))),
            None => {
                all = false;
                certs.push(Certificate::note(format!("{name} is not in the image at level {level}")));
            }
        }
    }
    Ok((all, certs))
}

/// Adic, and `A/I → B/φ(I)B` surjective. Levels `1..=cap` are re-verified
/// against `B/(φ(I)B)^{n+1}`; a disagreement is an engine error.
pub fn is_surjective_adic(phi: &AdicMorphism, cap: u32, budget: &Budget) -> Result<VerdictReport> {
    settle(surjective_adic_report(phi, cap, budget))
}

fn surjective_adic_report(phi: &AdicMorphism, cap: u32, budget: &Budget) -> Result<VerdictReport> {
    let adic = adic_report(phi, budget)?;
    if !adic.is_true() {
        return Ok(adic.with(Certificate::note("not adic")));
    }
    let mut rep = VerdictReport::new(Verdict::True);
    rep.absorb(&adic);
    let ext = phi.extend(phi.source().def_ideal())?;
    let s = phi.target().relations();
    let (base, certs) = surjective_modulo(phi, s.sum(&ext)?, 0, budget)?;
    rep.certificates.extend(certs);
    rep.use_levels([0]);
    for n in 1..=cap {
        let (ok, _) = surjective_modulo(phi, s.sum(&ext.power(n + 1))?, n, budget)?;
        if ok != base {
            return Err(Error::EngineInconsistency(format!(
                "surjectivity at level 0 is {base} but at level {n} is {ok}"
            )));
        }
        rep.use_levels([n]);
    }
    rep.verdict = Verdict::from_bool(base);
    Ok(rep)
}

/// Every generator of the presentation kernel lies in `rad(R + I)`.
pub fn kernel_criterion(phi: &AdicMorphism, budget: &Budget) -> Result<(bool, Vec<Certificate>)> {
    let ri = phi.source().reduction_ideal();
    let k = phi.kernel(budget)?;
    let mut ok = true;
    let mut certs = Vec::new();
    for g in k.generators() {
        let holds = ri.radical_contains(g, budget)?;
        certs.push(Certificate::member(g, ri, true, holds));
        ok &= holds;
    }
    if certs.is_empty() {
        certs.push(Certificate::note("kernel is zero"));
    }
    Ok((ok, certs))
}

/// `rad(R + I) = rad(φ⁻¹(S + J))`, by mutual generator radical membership.
pub fn preimage_criterion(phi: &AdicMorphism, budget: &Budget) -> Result<bool> {
    let ri = phi.source().reduction_ideal();
    let c = phi.poly_map().contract(phi.target().def_ideal(), budget)?;
    for g in c.generators() {
        if !ri.radical_contains(g, budget)? {
            return Ok(false);
        }
    }
    for g in ri.generators() {
        if !c.radical_contains(g, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Surjective adic with kernel inside `rad(R + I)`. The preimage form of
/// the criterion is evaluated as well and must agree.
pub fn is_thickening(phi: &AdicMorphism, cap: u32, budget: &Budget) -> Result<VerdictReport> {
    settle(thickening_report(phi, cap, budget))
}

fn thickening_report(phi: &AdicMorphism, cap: u32, budget: &Budget) -> Result<VerdictReport> {
    let sa = surjective_adic_report(phi, cap, budget)?;
    if !sa.is_true() {
        return Ok(sa.with(Certificate::note("not surjective adic")));
    }
    let mut rep = VerdictReport::new(Verdict::True);
    rep.zero_ring = sa.zero_ring;
    rep.use_levels(sa.levels_used.iter().copied());
    let (by_kernel, certs) = kernel_criterion(phi, budget)?;
    let by_preimage = preimage_criterion(phi, budget)?;
    if by_kernel != by_preimage {
        return Err(Error::EngineInconsistency(format!(
            "kernel criterion says {by_kernel}, preimage criterion says {by_preimage} for {phi}"
        )));
    }
    rep.certificates.extend(certs);
    rep.push(Certificate::note(if by_preimage {
        "rad(R + I) = rad(φ⁻¹(S + J))"
    } else {
        "rad(R + I) ≠ rad(φ⁻¹(S + J))"
    }));
    rep.verdict = Verdict::from_bool(by_kernel);
    Ok(rep)
}

/// Is `φ(I)^{n+1} ⊆ S + J^{m+1}`?
fn modulus_holds(phi: &AdicMorphism, ext: &Ideal, m: u32, n: u32, budget: &Budget) -> Result<bool> {
    let t = phi.target();
    let goal = if t.is_discrete() {
        t.relations().clone()
    } else {
        t.relations().sum(&t.def_ideal().power(m + 1))?
    };
    goal.contains_ideal(&ext.power(n + 1), budget)
}

/// Smallest `n ≤ cap` with `φ(I)^{n+1} ⊆ S + J^{m+1}`, which makes
/// `A/I^{n+1} → B/J^{m+1}` well defined.
pub fn continuity_modulus(phi: &AdicMorphism, m: u32, cap: u32, budget: &Budget) -> Result<u32> {
    let ext = phi.extend(phi.source().def_ideal())?;
    for n in 0..=cap {
        if modulus_holds(phi, &ext, m, n, budget)? {
            return Ok(n);
        }
    }
    Err(Error::Inconclusive(format!("no continuity modulus n ≤ {cap} for m = {m}")))
}

/// Cap on the exponent search for a single nilpotency.
const NILPOTENCY_SEARCH: u32 = 64;

/// An `N` with `φ(I)^N ⊆ S + J`, from the nilpotency exponents of the
/// generator images.
fn continuity_exponent(phi: &AdicMorphism, budget: &Budget) -> Result<u32> {
    let sj = phi.target().reduction_ideal();
    let mut total = 1u32;
    for g in phi.source().def_ideal().generators() {
        let img = phi.apply(g)?;
        match sj.nilpotency_exponent(&img, NILPOTENCY_SEARCH, budget)? {
            Some(e) => total += e - 1,
            None if !sj.radical_contains(&img, budget)? => {
                return Err(Error::NotContinuous(format!("{g} maps to {img} ∉ rad({sj})")))
            }
            None => return Err(Error::Inconclusive(format!("nilpotency exponent of {img} exceeds {NILPOTENCY_SEARCH}"))),
        }
    }
    Ok(total)
}

/// Moduli `(m, n(m))` for `m = 0..=cap`. Every truncation of a presented
/// morphism over a field is of finite presentation, so these moduli are
/// the whole content of formal finite presentation here. The search for
/// `n(m)` is bounded by `N(m+1) - 1` where `φ(I)^N ⊆ S + J`.
pub fn ffp_witnesses(phi: &AdicMorphism, cap: u32, budget: &Budget) -> Result<Vec<(u32, u32)>> {
    let ext = phi.extend(phi.source().def_ideal())?;
    let big_n = continuity_exponent(phi, budget)?;
    let mut out = Vec::new();
    let mut n = 0u32;
    for m in 0..=cap {
        let bound = big_n * (m + 1) - 1;
        while !modulus_holds(phi, &ext, m, n, budget)? {
            n += 1;
            if n > bound {
                return Err(Error::EngineInconsistency(format!("modulus for m = {m} exceeds the bound {bound}")));
            }
        }
        out.push((m, n));
    }
    Ok(out)
}

/// [`ffp_witnesses`] as a report.
pub fn ffp_report(phi: &AdicMorphism, cap: u32, budget: &Budget) -> Result<VerdictReport> {
    settle(ffp_witnesses(phi, cap, budget).map(|table| {
        let mut rep = VerdictReport::new(Verdict::True);
        for &(m, n) in &table {
            rep.push(Certificate::value(format!("n({m})"), Witness::Int(n as u64)));
            rep.use_levels([m]);
        }
        rep.push(Certificate::note(
            "truncations of presented algebras over a field are finitely presented",
        ));
        rep
    }))
}

/// `p ≡ q` in `A_red = A / rad(R + I)`.
pub fn reduction_equal(a: &AdicPresentation, p: &Polynomial, q: &Polynomial, budget: &Budget) -> Result<bool> {
    a.reduction_ideal().radical_contains(&p.checked_sub(q)?, budget)
}
