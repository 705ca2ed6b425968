//! The affine infinitesimal neighbourhood of a surjective adic morphism and
//! its verification suite.
//!
//! For `φ: A → B` surjective adic with kernel `K`, the neighbourhood `Â_φ`
//! is `A` re-completed along `D = I + K = φ⁻¹(I·B)`. It factors `φ` as
//! `A → Â_φ → B`, the second map being a thickening, universally among
//! thickenings of discrete rings with square-zero kernel.

use crate::adic::{
    compose, completed_tensor, ffp_witnesses, is_surjective_adic, is_thickening, settle, AdicMorphism,
    AdicPresentation, Certificate, Verdict, VerdictReport, Witness,
};
use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::polyalg::Polynomial;

/// Default bound on the nilpotence exponent searched by
/// [`verify_universal_property`].
pub const DEFAULT_NILPOTENCE_CAP: u32 = 8;

#[derive(Debug, Clone)]
pub struct NeighbourhoodResult {
    /// `Â_φ`: the variables and relations of `A`, ideal of definition `D`.
    pub hat_ring: AdicPresentation,
    pub to_hat: AdicMorphism,
    pub from_hat: AdicMorphism,
    pub def_ideal_d: Ideal,
    pub report: VerdictReport,
}

fn require_true(rep: VerdictReport, what: &str) -> Result<VerdictReport> {
    match rep.verdict {
        Verdict::True => Ok(rep),
        Verdict::False => Err(Error::Precondition(format!("{what} does not hold"))),
        Verdict::Inconclusive => Err(Error::Inconclusive(format!("{what} undecided: {}", rep.certificate_strings().join("; ")))),
    }
}

pub fn infinitesimal_neighbourhood(phi: &AdicMorphism, cap: u32, budget: &Budget) -> Result<NeighbourhoodResult> {
    require_true(is_surjective_adic(phi, cap, budget)?, "surjective adic")?;
    let a = phi.source();
    let ext = phi.extend(a.def_ideal())?;
    let by_preimage = phi.poly_map().contract(&ext, budget)?;
    let by_sum = a.def_ideal().sum(&phi.kernel(budget)?)?;
    if !by_preimage.same_ideal(&by_sum, budget)? {
        return Err(Error::EngineInconsistency(format!(
            "φ⁻¹(I·B) = ({by_preimage}) differs from I + K = ({by_sum})"
        )));
    }
    let d = Ideal::new(a.context(), by_sum.reduced_basis(budget)?.iter().cloned())?;
    let hat = a.with_def_ideal(d.clone())?;
    let to_hat = AdicMorphism::from_parts(a, &hat, AdicMorphism::identity(a).images().to_vec())?;
    let from_hat = AdicMorphism::from_parts(&hat, phi.target(), phi.images().to_vec())?;

    let mut report = VerdictReport::new(Verdict::True);
    report.push(Certificate::value("D", Witness::Polys(d.generators().to_vec())));
    report.push(Certificate::note("φ⁻¹(I·B) = I + K"));
    if !compose(&from_hat, &to_hat, budget)?.same_as(phi, budget)? {
        return Err(Error::EngineInconsistency("factorisation does not recover φ".into()));
    }
    let th = is_thickening(&from_hat, cap, budget)?;
    match th.verdict {
        Verdict::True => {}
        Verdict::False => return Err(Error::EngineInconsistency(format!("Â_φ → B is not a thickening: {th}"))),
        Verdict::Inconclusive => return Err(Error::Inconclusive("thickening check on Â_φ → B".into())),
    }
    report.use_levels(th.levels_used.iter().copied());
    report.push(Certificate::note("Â_φ → B is a thickening"));
    for (m, n) in ffp_witnesses(phi, 1, budget)? {
        report.push(Certificate::value(format!("n({m})"), Witness::Int(n as u64)));
    }
    Ok(NeighbourhoodResult {
        hat_ring: hat,
        to_hat,
        from_hat,
        def_ideal_d: d,
        report,
    })
}

/// A thickening `C′ → C = C′/L` of discrete rings with `L² = 0`.
#[derive(Debug, Clone)]
pub struct SquareZeroThickening {
    pub big: AdicPresentation,
    pub kernel_l: Ideal,
    pub small: AdicPresentation,
    pub map: AdicMorphism,
}

pub fn make_square_zero(big: &AdicPresentation, l: &Ideal, budget: &Budget) -> Result<SquareZeroThickening> {
    if !big.is_discrete() {
        return Err(Error::Precondition("C′ must be discrete".into()));
    }
    let sq = l.product(l)?;
    for g in sq.generators() {
        if !big.relations().contains(g, budget)? {
            return Err(Error::Precondition(format!("{g} ∈ L² is not zero in C′")));
        }
    }
    let small = AdicPresentation::discrete(big.relations().sum(l)?);
    let map = AdicMorphism::from_parts(big, &small, AdicMorphism::identity(big).images().to_vec())?;
    let th = is_thickening(&map, 0, budget)?;
    require_true(th, "square-zero map is a thickening")?;
    Ok(SquareZeroThickening {
        big: big.clone(),
        kernel_l: l.clone(),
        small,
        map,
    })
}

/// Smallest `a ≤ cap` with `ψ(D)^a ⊆` relations of `C′`.
fn nilpotence_of_image(psi: &AdicMorphism, d: &Ideal, cap: u32, budget: &Budget) -> Result<Option<u32>> {
    let img = psi.extend(d)?;
    let rels = psi.target().relations();
    if img.is_zero_ideal() {
        return Ok(Some(1));
    }
    let mut pow = img.clone();
    for a in 1..=cap {
        if rels.contains_ideal(&pow, budget)? {
            return Ok(Some(a));
        }
        pow = pow.product(&img)?;
    }
    Ok(None)
}

/// Does `ψ: A → C′` factor uniquely through `Â_φ`, compatibly with
/// `ψ′: B → C`?
pub fn verify_universal_property(
    nbhd: &NeighbourhoodResult,
    t: &SquareZeroThickening,
    psi: &AdicMorphism,
    psi_prime: &AdicMorphism,
    nilpotence_cap: u32,
    budget: &Budget,
) -> Result<VerdictReport> {
    let a = nbhd.to_hat.source();
    if !psi.source().identical(a) || !psi.target().identical(&t.big) {
        return Err(Error::Precondition("ψ must go from A to C′".into()));
    }
    if !psi_prime.source().identical(nbhd.from_hat.target()) || !psi_prime.target().identical(&t.small) {
        return Err(Error::Precondition("ψ′ must go from B to C".into()));
    }
    let phi = compose(&nbhd.from_hat, &nbhd.to_hat, budget)?;
    let down = compose(&t.map, psi, budget)?;
    let across = compose(psi_prime, &phi, budget)?;
    if !down.same_as(&across, budget)? {
        return Err(Error::Precondition("outer square does not commute".into()));
    }
    settle((|| {
        let mut rep = VerdictReport::new(Verdict::True);
        let chi = match AdicMorphism::ring_map(&nbhd.hat_ring, &t.big, psi.images().to_vec(), budget) {
            Ok(chi) => chi,
            Err(Error::NotWellDefined(why)) => {
                rep.verdict = Verdict::False;
                rep.push(Certificate::note(format!("factorisation not well defined: {why}")));
                return Ok(rep);
            }
            Err(e) => return Err(e),
        };
        match nilpotence_of_image(psi, &nbhd.def_ideal_d, nilpotence_cap, budget)? {
            Some(a) => rep.push(Certificate::value("a", Witness::Int(a as u64))),
            None => {
                return Ok(VerdictReport::inconclusive(format!(
                    "ψ(D) not nilpotent modulo the relations of C′ within exponent {nilpotence_cap}"
                )))
            }
        }
        let left = compose(&chi, &nbhd.to_hat, budget)?.same_as(psi, budget)?;
        let right = compose(&t.map, &chi, budget)?.same_as(&compose(psi_prime, &nbhd.from_hat, budget)?, budget)?;
        rep.push(Certificate::note(format!("χ∘(A → Â_φ) = ψ: {left}")));
        rep.push(Certificate::note(format!("(C′ → C)∘χ = ψ′∘(Â_φ → B): {right}")));
        rep.push(Certificate::note(
            "unique: a morphism out of Â_φ is determined by the images of its variables",
        ));
        rep.verdict = Verdict::from_bool(left && right);
        Ok(rep)
    })())
}

/// `D = I + K` and `I` define the same topology when `φ` is a thickening.
pub fn neighbourhood_idempotence(phi: &AdicMorphism, cap: u32, budget: &Budget) -> Result<VerdictReport> {
    require_true(is_thickening(phi, cap, budget)?, "thickening")?;
    settle((|| {
        let a = phi.source();
        let d = a.def_ideal().sum(&phi.kernel(budget)?)?;
        let ri = a.reduction_ideal();
        let rd = a.relations().sum(&d)?;
        let mut rep = VerdictReport::new(Verdict::True);
        let mut ok = true;
        for g in d.generators() {
            let holds = ri.radical_contains(g, budget)?;
            rep.push(Certificate::member(g, ri, true, holds));
            ok &= holds;
        }
        for g in a.def_ideal().generators() {
            let holds = rd.radical_contains(g, budget)?;
            rep.push(Certificate::member(g, &rd, true, holds));
            ok &= holds;
        }
        if rep.certificates.is_empty() {
            rep.push(Certificate::note("D = I = 0"));
        }
        rep.verdict = Verdict::from_bool(ok);
        Ok(rep)
    })())
}

/// Compares `Â_{φ′}` for the base change `φ′: A′ → B ⊗̂_A A′` with
/// `Â_φ ⊗̂_A A′`. Both live on `k[x′]/R′`: the latter after eliminating the
/// `A` variables through `x = ψ(x)`, with ideal of definition
/// `E = ψ(D) + I′`. The verdict requires `D′` and `E` to define the same
/// topology and the truncations along `E` and along `D′ + E` to coincide
/// at levels `0..=cap`.
pub fn neighbourhood_base_change(phi: &AdicMorphism, psi: &AdicMorphism, cap: u32, budget: &Budget) -> Result<VerdictReport> {
    let nb = infinitesimal_neighbourhood(phi, cap, budget)?;
    let sq = completed_tensor(phi, psi)?;
    let phi_prime = &sq.phi_prime;
    let sa = is_surjective_adic(phi_prime, cap, budget)?;
    if !sa.is_true() {
        return Ok(sa.with(Certificate::note("base change φ′ is not surjective adic")));
    }
    let nb_prime = infinitesimal_neighbourhood(phi_prime, cap, budget)?;
    let t = completed_tensor(&nb.to_hat, psi)?;

    settle((|| {
        let ap = psi.target();
        let ctx = ap.context();
        // T → A′: A variables go to their ψ-images, A′ variables to themselves
        let mut images: Vec<Polynomial> = psi.images().to_vec();
        images.extend((0..ap.nvars()).map(|i| Polynomial::var(ctx, i)));
        let t_rels = t.apex.relations().substitute(&images, ctx)?;
        let e = t.apex.def_ideal().substitute(&images, ctx)?;
        let d_prime = nb_prime.def_ideal_d.clone();

        let mut rep = VerdictReport::new(Verdict::True);
        rep.push(Certificate::value("E", Witness::Polys(e.generators().to_vec())));
        rep.push(Certificate::value("D′", Witness::Polys(d_prime.generators().to_vec())));
        let r_e = ap.relations().sum(&e)?;
        let r_d = ap.relations().sum(&d_prime)?;
        let mut ok = true;
        for g in d_prime.generators() {
            ok &= r_e.radical_contains(g, budget)?;
        }
        for g in e.generators() {
            ok &= r_d.radical_contains(g, budget)?;
        }
        rep.push(Certificate::note(format!("D′ and E define the same topology: {ok}")));

        let joint = d_prime.sum(&e)?;
        for n in 0..=cap {
            let lhs = t_rels.sum(&e.power(n + 1))?;
            let rhs = ap.relations().sum(&joint.power(n + 1))?;
            let same = lhs.same_ideal(&rhs, budget)?;
            rep.use_levels([n]);
            if !same {
                rep.push(Certificate::note(format!("truncations differ at level {n}")));
                ok = false;
                break;
            }
        }
        rep.verdict = Verdict::from_bool(ok);
        Ok(rep)
    })())
}

/// For the pushout of `φ: A → B` along a thickening `ψ: A → A₀`, checks
/// that `φ₀` surjective adic implies `φ` surjective adic, and likewise for
/// thickenings.
pub fn descent_check(phi: &AdicMorphism, psi: &AdicMorphism, cap: u32, budget: &Budget) -> Result<VerdictReport> {
    let th_psi = is_thickening(psi, cap, budget)?;
    if th_psi.is_inconclusive() {
        return Ok(th_psi);
    }
    require_true(th_psi, "ψ is a thickening")?;
    let sq = completed_tensor(phi, psi)?;
    let phi0 = &sq.phi_prime;

    let sa0 = is_surjective_adic(phi0, cap, budget)?;
    let sa = is_surjective_adic(phi, cap, budget)?;
    if sa0.is_inconclusive() || sa.is_inconclusive() {
        return Ok(VerdictReport::inconclusive("surjectivity undecided"));
    }
    let th0 = if sa0.is_true() { is_thickening(phi0, cap, budget)? } else { sa0.clone() };
    let th = if sa.is_true() { is_thickening(phi, cap, budget)? } else { sa.clone() };
    if th0.is_inconclusive() || th.is_inconclusive() {
        return Ok(VerdictReport::inconclusive("thickening undecided"));
    }
    let mut rep = VerdictReport::new(Verdict::True);
    for (m, n) in ffp_witnesses(psi, 1, budget)? {
        rep.push(Certificate::value(format!("n_ψ({m})"), Witness::Int(n as u64)));
    }
    rep.push(Certificate::note(format!("φ₀ surjective adic: {}, φ surjective adic: {}", sa0.verdict, sa.verdict)));
    rep.push(Certificate::note(format!("φ₀ thickening: {}, φ thickening: {}", th0.verdict, th.verdict)));
    rep.use_levels(sa.levels_used.iter().chain(&sa0.levels_used).copied());
    let ok = (!sa0.is_true() || sa.is_true()) && (!th0.is_true() || th.is_true());
    rep.verdict = Verdict::from_bool(ok);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adic::{truncate, DEFAULT_CAP};
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

    fn axis() -> AdicMorphism {
        let plane = qq(&["x", "y"], &[], &[]);
        let line = qq(&["x", "y"], &["y"], &[]);
        map(&plane, &line, &["x", "y"])
    }

    #[test]
    fn axis_neighbourhood() {
        let nb = infinitesimal_neighbourhood(&axis(), DEFAULT_CAP, &b()).unwrap();
        let ctx = nb.hat_ring.context().clone();
        assert_eq!(nb.def_ideal_d.generators(), &[Polynomial::parse(&ctx, "y").unwrap()]);
        let t1 = truncate(&nb.hat_ring, 1);
        assert_eq!(*t1.quotient_ideal().reduced_basis(&b()).unwrap(), vec![Polynomial::parse(&ctx, "y^2").unwrap()]);
    }

    #[test]
    fn neighbourhood_of_thickening_and_identity() {
        let dual = qq(&["x"], &["x^2"], &["x"]);
        let pt = qq(&["x"], &["x"], &[]);
        let nb = infinitesimal_neighbourhood(&map(&dual, &pt, &["x"]), 2, &b()).unwrap();
        assert!(nb.def_ideal_d.same_ideal(dual.def_ideal(), &b()).unwrap());

        let a = qq(&["x", "y"], &["y^2 - x^3"], &["x", "y"]);
        let nb = infinitesimal_neighbourhood(&AdicMorphism::identity(&a), 2, &b()).unwrap();
        assert!(nb.def_ideal_d.same_ideal(a.def_ideal(), &b()).unwrap());
    }

    #[test]
    fn neighbourhood_requires_surjective_adic() {
        let a = qq(&["x"], &[], &["x"]);
        let f = map(&a, &a, &["x^2"]);
        assert!(matches!(infinitesimal_neighbourhood(&f, 2, &b()), Err(Error::Precondition(_))));
    }

    #[test]
    fn square_zero_examples() {
        let dual = qq(&["e"], &["e^2"], &[]);
        let t = make_square_zero(&dual, &Ideal::parse(dual.context(), &["e"]).unwrap(), &b()).unwrap();
        assert!(t.small.relations().same_ideal(&Ideal::parse(dual.context(), &["e"]).unwrap(), &b()).unwrap());

        let t0 = make_square_zero(&dual, &Ideal::zero(dual.context()), &b()).unwrap();
        assert!(t0.small.relations().same_ideal(dual.relations(), &b()).unwrap());

        let two = qq(&["a", "b"], &["a^2", "a*b", "b^2"], &[]);
        let t2 = make_square_zero(&two, &Ideal::parse(two.context(), &["a", "b"]).unwrap(), &b()).unwrap();
        assert!(t2.small.relations().same_ideal(&Ideal::parse(two.context(), &["a", "b"]).unwrap(), &b()).unwrap());

        let cube = qq(&["e"], &["e^3"], &[]);
        assert!(make_square_zero(&cube, &Ideal::parse(cube.context(), &["e"]).unwrap(), &b()).is_err());
    }

    fn dual_numbers_setup() -> (NeighbourhoodResult, SquareZeroThickening) {
        let nb = infinitesimal_neighbourhood(&axis(), DEFAULT_CAP, &b()).unwrap();
        let dual = qq(&["e"], &["e^2"], &[]);
        let t = make_square_zero(&dual, &Ideal::parse(dual.context(), &["e"]).unwrap(), &b()).unwrap();
        (nb, t)
    }

    #[test]
    fn universal_property_dual_numbers() {
        let (nb, t) = dual_numbers_setup();
        let psi = map(nb.to_hat.source(), &t.big, &["0", "e"]);
        let psi_p = map(nb.from_hat.target(), &t.small, &["0", "0"]);
        let rep = verify_universal_property(&nb, &t, &psi, &psi_p, DEFAULT_NILPOTENCE_CAP, &b()).unwrap();
        assert!(rep.is_true(), "{rep}");
        assert!(rep.certificate_strings().contains(&"a = 2".to_string()));
    }

    #[test]
    fn universal_property_rejects_a_broken_square() {
        let (nb, t) = dual_numbers_setup();
        let psi = map(nb.to_hat.source(), &t.big, &["e", "e"]);
        let psi_p = map(nb.from_hat.target(), &t.small, &["0", "0"]);
        assert!(verify_universal_property(&nb, &t, &psi, &psi_p, 8, &b()).unwrap().is_true());
        let one = AdicMorphism::ring_map(nb.to_hat.source(), &t.big, vec![t.big.poly("1").unwrap(), t.big.poly("e").unwrap()], &b()).unwrap();
        assert!(matches!(
            verify_universal_property(&nb, &t, &one, &psi_p, 8, &b()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn universal_property_identity_thickening() {
        let (nb, _) = dual_numbers_setup();
        let c = qq(&["e"], &["e^3"], &[]);
        let t = make_square_zero(&c, &Ideal::zero(c.context()), &b()).unwrap();
        let psi = map(nb.to_hat.source(), &t.big, &["e^2", "e"]);
        let psi_p = map(nb.from_hat.target(), &t.small, &["e^2", "0"]);
        // y ↦ e cannot close the square: y = 0 in B but e ≠ 0 in C
        assert!(verify_universal_property(&nb, &t, &psi, &psi_p, 8, &b()).is_err());
        let psi = map(nb.to_hat.source(), &t.big, &["e", "0"]);
        let psi_p = map(nb.from_hat.target(), &t.small, &["e", "0"]);
        let rep = verify_universal_property(&nb, &t, &psi, &psi_p, 8, &b()).unwrap();
        assert!(rep.is_true(), "{rep}");
        assert!(rep.certificate_strings().contains(&"a = 1".to_string()));
    }

    #[test]
    fn chained_square_zero_factorisation() {
        // C′ = k[e]/(e^3) → k with L = (e), L^3 = 0, factored through k[e]/(e^2)
        let nb = infinitesimal_neighbourhood(&axis(), DEFAULT_CAP, &b()).unwrap();
        let c3 = qq(&["e"], &["e^3"], &[]);
        let a = nb.to_hat.source();
        let bb = nb.from_hat.target();
        let psi = map(a, &c3, &["0", "e"]);
        let step1 = make_square_zero(&c3, &Ideal::parse(c3.context(), &["e^2"]).unwrap(), &b()).unwrap();
        let step2 = make_square_zero(&step1.small, &Ideal::parse(c3.context(), &["e"]).unwrap(), &b()).unwrap();
        let to_k = map(bb, &step2.small, &["0", "0"]);

        // last step: A → k[e]/(e^2) over B → k
        let psi_mid = compose(&step1.map, &psi, &b()).unwrap();
        let r2 = verify_universal_property(&nb, &step2, &psi_mid, &to_k, 8, &b()).unwrap();
        assert!(r2.is_true(), "{r2}");

        // first step: A → k[e]/(e^3) over B → k[e]/(e^2); ψ′ must send y to e,
        // impossible on B = k[x,y]/(y), so the square cannot close there
        assert!(AdicMorphism::ring_map(bb, &step1.small, vec![c3.poly("0").unwrap(), c3.poly("e").unwrap()], &b()).is_err());
        let zero_mid = map(bb, &step1.small, &["0", "0"]);
        assert!(verify_universal_property(&nb, &step1, &psi, &zero_mid, 8, &b()).is_err());

        // direct check against C′ → k: the same factorisation χ = ψ
        let direct_t = SquareZeroThickening {
            big: c3.clone(),
            kernel_l: Ideal::parse(c3.context(), &["e"]).unwrap(),
            small: step2.small.clone(),
            map: compose(&step2.map, &step1.map, &b()).unwrap(),
        };
        let direct = verify_universal_property(&nb, &direct_t, &psi, &to_k, 8, &b()).unwrap();
        assert!(direct.is_true());
        assert!(direct.certificate_strings().contains(&"a = 3".to_string()));
        assert_eq!(r2.certificate_strings()[0], "a = 2");
    }

    #[test]
    fn idempotence_examples() {
        let a = qq(&["x", "y"], &["y^2 - x^3"], &["x", "y"]);
        assert!(neighbourhood_idempotence(&AdicMorphism::identity(&a), 2, &b()).unwrap().is_true());
        let dual = qq(&["x"], &["x^2"], &["x"]);
        let pt = qq(&["x"], &["x"], &[]);
        assert!(neighbourhood_idempotence(&map(&dual, &pt, &["x"]), 2, &b()).unwrap().is_true());
        assert!(neighbourhood_idempotence(&axis(), 2, &b()).is_err());
    }

    #[test]
    fn base_change_examples() {
        let phi = axis();
        let a = phi.source().clone();
        let rep = neighbourhood_base_change(&phi, &AdicMorphism::identity(&a), 3, &b()).unwrap();
        assert!(rep.is_true(), "{rep}");
        assert_eq!(rep.levels_used, vec![0, 1, 2, 3]);

        let ap = qq(&["x", "y"], &["x"], &[]);
        let psi = map(&a, &ap, &["x", "y"]);
        let rep = neighbourhood_base_change(&phi, &psi, 3, &b()).unwrap();
        assert!(rep.is_true(), "{rep}");
    }

    #[test]
    fn descent_examples() {
        let a = qq(&["x"], &[], &["x"]);
        let id = AdicMorphism::identity(&a);
        assert!(descent_check(&id, &id, 2, &b()).unwrap().is_true());

        let dual = qq(&["x"], &["x^2"], &["x"]);
        let pt = qq(&["x"], &["x"], &[]);
        let psi = map(&dual, &pt, &["x"]);
        let quo = qq(&["x", "z"], &["x^2", "z^2 - x"], &["x", "z"]);
        let phi = map(&dual, &quo, &["x"]);
        let rep = descent_check(&phi, &psi, 2, &b()).unwrap();
        assert!(rep.is_true(), "{rep}");
    }
}
