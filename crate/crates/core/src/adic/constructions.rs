use crate::adic::morphism::AdicMorphism;
use crate::adic::predicates::{is_surjective_adic, is_thickening};
use crate::adic::presentation::AdicPresentation;
use crate::adic::report::{Certificate, Verdict, VerdictReport, Witness};
use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::polyalg::{fresh_name_among, PolyContext, Polynomial};

/// The pushout square
///
/// ```text
///   A  --φ-->  B
///   |ψ         |ψ′
///   v          v
///   A′ --φ′--> B′ = B ⊗̂_A A′
/// ```
#[derive(Debug, Clone)]
pub struct TensorSquare {
    pub apex: AdicPresentation,
    pub phi: AdicMorphism,
    pub psi: AdicMorphism,
    /// `B → B′`
    pub psi_prime: AdicMorphism,
    /// `A′ → B′`
    pub phi_prime: AdicMorphism,
}

impl TensorSquare {
    /// Apex variable index of each `B` variable, then of each `A′` variable.
    pub fn b_vars(&self) -> std::ops::Range<usize> {
        0..self.phi.target().nvars()
    }

    pub fn a_prime_vars(&self) -> std::ops::Range<usize> {
        let nb = self.phi.target().nvars();
        nb..nb + self.psi.target().nvars()
    }
}

/// Apex variables: the `B` variables, then the `A′` variables renamed away
/// from clashes.
pub(crate) fn tensor_variable_names(b: &[String], a_prime: &[String]) -> Vec<String> {
    let mut names = b.to_vec();
    for v in a_prime {
        let fresh = fresh_name_among(&names, v);
        names.push(fresh);
    }
    names
}

/// `B′` on the disjoint union of the variables of `B` and `A′` (the latter
/// renamed on clash), with relations `S ∪ S′ ∪ {φ(xᵢ) - ψ(xᵢ)}` and ideal
/// of definition `J·B′ + I′·B′`.
pub fn completed_tensor(phi: &AdicMorphism, psi: &AdicMorphism) -> Result<TensorSquare> {
    if !phi.source().identical(psi.source()) {
        return Err(Error::Precondition("tensor legs have different sources".into()));
    }
    let b = phi.target();
    let ap = psi.target();
    let names = tensor_variable_names(b.context().variables(), ap.context().variables());
    let ctx = PolyContext::new(names, b.field())?;
    let nb = b.nvars();
    let bmap: Vec<usize> = (0..nb).collect();
    let amap: Vec<usize> = (nb..nb + ap.nvars()).collect();

    let mut rels: Vec<Polynomial> = b.relations().generators().iter().map(|r| r.embed(&ctx, &bmap)).collect();
    rels.extend(ap.relations().generators().iter().map(|r| r.embed(&ctx, &amap)));
    for (u, v) in phi.images().iter().zip(psi.images()) {
        rels.push(&u.embed(&ctx, &bmap) - &v.embed(&ctx, &amap));
    }
    let defs = b
        .def_ideal()
        .generators()
        .iter()
        .map(|g| g.embed(&ctx, &bmap))
        .chain(ap.def_ideal().generators().iter().map(|g| g.embed(&ctx, &amap)));
    let apex = AdicPresentation::new(Ideal::new(&ctx, rels)?, Ideal::new(&ctx, defs)?)?;

    let psi_prime = AdicMorphism::from_parts(b, &apex, bmap.iter().map(|&i| Polynomial::var(&ctx, i)).collect())?;
    let phi_prime = AdicMorphism::from_parts(ap, &apex, amap.iter().map(|&i| Polynomial::var(&ctx, i)).collect())?;
    Ok(TensorSquare {
        apex,
        phi: phi.clone(),
        psi: psi.clone(),
        psi_prime,
        phi_prime,
    })
}

/// The morphism `B′ → C` induced by `β: B → C` and `α′: A′ → C` with
/// `β∘φ = α′∘ψ`.
pub fn pushout_mediator(
    sq: &TensorSquare,
    beta: &AdicMorphism,
    alpha: &AdicMorphism,
    budget: &Budget,
) -> Result<AdicMorphism> {
    if !beta.source().identical(sq.phi.target()) || !alpha.source().identical(sq.psi.target()) {
        return Err(Error::Precondition("mediator legs do not start at B and A′".into()));
    }
    if !beta.target().identical(alpha.target()) {
        return Err(Error::Precondition("mediator legs have different targets".into()));
    }
    let c = beta.target();
    for (u, v) in sq.phi.images().iter().zip(sq.psi.images()) {
        let d = &beta.apply(u)? - &alpha.apply(v)?;
        if !c.relations().contains(&d, budget)? {
            return Err(Error::Precondition(format!("square does not commute: {d} ≠ 0 in the target")));
        }
    }
    let images: Vec<Polynomial> = beta.images().iter().chain(alpha.images()).cloned().collect();
    AdicMorphism::new(&sq.apex, c, images, budget)
}

/// `A_f`: one fresh variable `u` with relation `u·f - 1`, and the
/// localisation map `A → A_f`.
pub fn completed_localisation(a: &AdicPresentation, f: &Polynomial) -> Result<(AdicPresentation, AdicMorphism)> {
    if !crate::polyalg::same_context(f.context(), a.context()) {
        return Err(Error::ContextMismatch);
    }
    let n = a.nvars();
    let mut names = a.context().variables().to_vec();
    names.push(a.context().fresh_name("u"));
    let ctx = PolyContext::new(names, a.field())?;
    let map: Vec<usize> = (0..n).collect();
    let u = Polynomial::var(&ctx, n);
    let inv = &(&u * &f.embed(&ctx, &map)) - &Polynomial::one(&ctx);
    let rels = a.relations().embed(&ctx, &map).sum(&Ideal::new(&ctx, [inv])?)?;
    let af = AdicPresentation::new(rels, a.def_ideal().embed(&ctx, &map))?;
    let loc = AdicMorphism::from_parts(a, &af, (0..n).map(|i| Polynomial::var(&ctx, i)).collect())?;
    Ok((af, loc))
}

/// The diagonal `B ⊗̂_A B → B`, sending both copies of each variable to
/// itself.
pub fn diagonal(phi: &AdicMorphism, budget: &Budget) -> Result<(TensorSquare, AdicMorphism)> {
    let sq = completed_tensor(phi, phi)?;
    let id = AdicMorphism::identity(phi.target());
    let delta = pushout_mediator(&sq, &id, &id, budget)?;
    Ok((sq, delta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalPredicate {
    SurjectiveAdic,
    Thickening,
}

impl LocalPredicate {
    pub fn evaluate(self, phi: &AdicMorphism, cap: u32, budget: &Budget) -> Result<VerdictReport> {
        match self {
            LocalPredicate::SurjectiveAdic => is_surjective_adic(phi, cap, budget),
            LocalPredicate::Thickening => is_thickening(phi, cap, budget),
        }
    }
}

/// `φ_f: A_f → B ⊗̂_A A_f`.
pub fn localise_morphism(phi: &AdicMorphism, f: &Polynomial) -> Result<AdicMorphism> {
    let (_, loc) = completed_localisation(phi.source(), f)?;
    Ok(completed_tensor(phi, &loc)?.phi_prime)
}

/// Evaluates the predicate on `φ` and on every `φ_{fᵢ}`; true iff the
/// global answer equals the conjunction of the local ones.
pub fn locality_check(
    phi: &AdicMorphism,
    cover: &[Polynomial],
    predicate: LocalPredicate,
    cap: u32,
    budget: &Budget,
) -> Result<VerdictReport> {
    let a = phi.source();
    let unit = Ideal::new(a.context(), cover.iter().cloned())?.sum(a.relations())?;
    if !unit.contains(&Polynomial::one(a.context()), budget)? {
        return Err(Error::Precondition(format!("cover ({unit}) does not generate the unit ideal")));
    }
    let global = predicate.evaluate(phi, cap, budget)?;
    if global.is_inconclusive() {
        return Ok(global);
    }
    let mut rep = VerdictReport::new(Verdict::True);
    rep.push(Certificate::member(&Polynomial::one(a.context()), &unit, false, true));
    rep.push(Certificate::note(format!("global: {}", global.verdict)));
    rep.use_levels(global.levels_used.iter().copied());
    let mut all_local = true;
    for f in cover {
        let local = predicate.evaluate(&localise_morphism(phi, f)?, cap, budget)?;
        if local.is_inconclusive() {
            return Ok(local);
        }
        rep.zero_ring |= local.zero_ring;
        rep.push(Certificate::note(format!("at {f}: {}", local.verdict)));
        all_local &= local.is_true();
    }
    if global.is_true() != all_local {
        rep.verdict = Verdict::False;
        rep.push(Certificate::value("counterexample", Witness::Polys(cover.to_vec())));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adic::predicates::{is_adic, is_surjective_adic};
    use crate::adic::presentation::truncate;
    use crate::polyalg::FieldSpec;

    fn b() -> Budget {
        Budget::default()
    }

    fn qq(vars: &[&str], rels: &[&str], defs: &[&str]) -> AdicPresentation {
        AdicPresentation::parse(FieldSpec::Rationals, vars, rels, defs).unwrap()
    }

    fn map(a: &AdicPresentation, t: &AdicPresentation, imgs: &[&str]) -> AdicMorphism {
        AdicMorphism::parse(a, t, imgs, &b()).unwrap()
    }

    /// The apex quotient at level `n`, with every variable of the second
    /// leg eliminated.
    fn apex_truncation_in_first_leg(sq: &TensorSquare, n: u32) -> Ideal {
        let t = truncate(&sq.apex, n);
        let keep: Vec<usize> = sq.b_vars().collect();
        t.quotient_ideal().eliminate(&keep, &b()).unwrap()
    }

    #[test]
    fn tensor_over_the_field() {
        let k = qq(&[], &[], &[]);
        let bx = qq(&["x"], &[], &["x"]);
        let by = qq(&["y"], &[], &["y"]);
        let sq = completed_tensor(&map(&k, &bx, &[]), &map(&k, &by, &[])).unwrap();
        assert_eq!(sq.apex.to_string(), "QQ[x,y] adic (x, y)");
    }

    #[test]
    fn tensor_with_identity_is_trivial() {
        let a = qq(&["x"], &[], &["x"]);
        let bb = qq(&["y"], &["y^3"], &["y"]);
        let phi = map(&a, &bb, &["y^2"]);
        let sq = completed_tensor(&phi, &AdicMorphism::identity(&a)).unwrap();
        assert_eq!(sq.apex.context().variables(), &["y".to_string(), "x".to_string()]);
        for n in 0..3 {
            let lhs = apex_truncation_in_first_leg(&sq, n);
            let rhs = truncate(&bb, n).quotient_ideal().clone();
            let rhs = rhs.embed(lhs.context(), &[0]);
            assert!(lhs.same_ideal(&rhs, &b()).unwrap(), "level {n}");
        }
    }

    #[test]
    fn tensor_base_change_of_quotient() {
        let a = qq(&["x", "y"], &[], &["x", "y"]);
        let quo = qq(&["x", "y"], &["x*y - y^2"], &["x", "y"]);
        let phi = map(&a, &quo, &["x", "y"]);
        let ap = qq(&["s"], &[], &["s"]);
        let psi = map(&a, &ap, &["s", "s^2"]);
        let sq = completed_tensor(&phi, &psi).unwrap();
        // expected: A′/⟨ψ(f)⟩ = k[s]/⟨s^3 - s^4⟩
        for n in 0..3 {
            let t = truncate(&sq.apex, n);
            let keep: Vec<usize> = sq.a_prime_vars().collect();
            let lhs = t.quotient_ideal().eliminate(&keep, &b()).unwrap();
            let expect = qq(&["s"], &["s^3 - s^4"], &["s"]);
            let rhs = truncate(&expect, n).quotient_ideal().embed(lhs.context(), &[0]);
            assert!(lhs.same_ideal(&rhs, &b()).unwrap(), "level {n}");
        }
    }

    #[test]
    fn tensor_square_commutes() {
        let a = qq(&["x"], &[], &["x"]);
        let bb = qq(&["y", "z"], &["z^2 - y"], &["y", "z"]);
        let phi = map(&a, &bb, &["y"]);
        let ap = qq(&["w"], &[], &["w"]);
        let psi = map(&a, &ap, &["w^2 + w"]);
        let sq = completed_tensor(&phi, &psi).unwrap();
        let left = crate::adic::compose(&sq.psi_prime, &phi, &b()).unwrap();
        let right = crate::adic::compose(&sq.phi_prime, &psi, &b()).unwrap();
        assert!(left.same_as(&right, &b()).unwrap());
    }

    #[test]
    fn mediator_examples() {
        let a = qq(&["x"], &[], &["x"]);
        let bb = qq(&["y"], &[], &["y"]);
        let phi = map(&a, &bb, &["y^2"]);
        let sq = completed_tensor(&phi, &AdicMorphism::identity(&a)).unwrap();
        let m = pushout_mediator(&sq, &sq.psi_prime, &sq.phi_prime, &b()).unwrap();
        assert!(m.same_as(&AdicMorphism::identity(&sq.apex), &b()).unwrap());

        // legs that do not commute are refused
        let bad = map(&a, &bb, &["y^3"]);
        assert!(matches!(
            pushout_mediator(&sq, &AdicMorphism::identity(&bb), &bad, &b()),
            Err(Error::Precondition(_))
        ));

        // to level-0 truncations: the induced map of quotients
        let c = qq(&["y"], &["y"], &[]);
        let beta = map(&bb, &c, &["y"]);
        let alpha = map(&a, &c, &["0"]);
        let m = pushout_mediator(&sq, &beta, &alpha, &b()).unwrap();
        assert_eq!(m.to_string(), "{ y -> y, x -> 0 }");
    }

    #[test]
    fn localisation_examples() {
        let a = qq(&["x"], &[], &[]);
        let (af, _) = completed_localisation(&a, &a.poly("x").unwrap()).unwrap();
        assert_eq!(af.to_string(), "QQ[x,u] / (x*u - 1) adic (0)");

        let (a1, _) = completed_localisation(&a, &a.poly("1").unwrap()).unwrap();
        let keep = vec![0usize];
        for n in 0..2 {
            let e = truncate(&a1, n).quotient_ideal().eliminate(&keep, &b()).unwrap();
            assert!(e.is_zero_ideal());
        }

        let ax = qq(&["x"], &[], &["x"]);
        let (az, _) = completed_localisation(&ax, &ax.poly("x").unwrap()).unwrap();
        assert!(truncate(&az, 0).is_zero_ring(&b()).unwrap());
    }

    #[test]
    fn diagonal_examples() {
        let k = qq(&[], &[], &[]);
        let bx = qq(&["x"], &[], &["x"]);
        let (sq, delta) = diagonal(&map(&k, &bx, &[]), &b()).unwrap();
        assert_eq!(sq.apex.context().variables(), &["x".to_string(), "x_2".to_string()]);
        let ker = delta.kernel(&b()).unwrap();
        assert!(ker.contains(&sq.apex.poly("x - x_2").unwrap(), &b()).unwrap());
        assert!(is_surjective_adic(&delta, 3, &b()).unwrap().is_true());

        let a = qq(&["x", "y"], &["y^2 - x^3"], &["x", "y"]);
        let (_, d) = diagonal(&AdicMorphism::identity(&a), &b()).unwrap();
        assert!(is_adic(&d, &b()).unwrap().is_true());
        assert!(crate::adic::is_thickening(&d, 2, &b()).unwrap().is_true());
    }

    #[test]
    fn locality_examples() {
        let a = qq(&["x"], &[], &["x"]);
        let pt = qq(&["x"], &["x"], &[]);
        let phi = map(&a, &pt, &["x"]);
        let one = vec![a.poly("1").unwrap()];
        assert!(locality_check(&phi, &one, LocalPredicate::Thickening, 2, &b()).unwrap().is_true());

        let d = qq(&["x"], &[], &[]);
        let id = AdicMorphism::identity(&d);
        let cover = vec![d.poly("x").unwrap(), d.poly("x - 1").unwrap()];
        let rep = locality_check(&id, &cover, LocalPredicate::SurjectiveAdic, 2, &b()).unwrap();
        assert!(rep.is_true(), "{rep}");

        let bad = vec![d.poly("x").unwrap(), d.poly("x^2").unwrap()];
        assert!(matches!(
            locality_check(&id, &bad, LocalPredicate::SurjectiveAdic, 2, &b()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn locality_detects_a_non_thickening_everywhere() {
        let plane = qq(&["x", "y"], &[], &["x"]);
        let axis = qq(&["x", "y"], &["y"], &["x"]);
        let phi = map(&plane, &axis, &["x", "y"]);
        let cover = vec![plane.poly("y").unwrap(), plane.poly("1 - y").unwrap()];
        let rep = locality_check(&phi, &cover, LocalPredicate::Thickening, 2, &b()).unwrap();
        assert!(rep.is_true(), "{rep}");
        assert!(rep.certificate_strings().contains(&"global: false".to_string()));
    }
}
