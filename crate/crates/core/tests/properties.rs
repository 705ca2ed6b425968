mod common;

use adicforge::adic::{
    completed_localisation, compose, ffp_witnesses, is_adic, truncate, AdicMorphism, AdicPresentation,
};
use adicforge::corpus::Corpus;
use adicforge::groebner::{ideal_membership, Budget, Ideal};
use adicforge::polyalg::{PolyContext, Polynomial};
use adicforge::session::parse_session;
use adicforge::Error;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(common::SEED),
        ..ProptestConfig::default()
    }
}

fn budget() -> Budget {
    Budget::default()
}

/// Well-definedness and continuity by direct membership: `φ(r) ∈ S` for
/// every relation and `φ(I)ⁿ ⊆ S + J` for some `n ≤ max_n`, with powers
/// expanded generator by generator.
fn oracle_valid(a: &AdicPresentation, b: &AdicPresentation, images: &[Polynomial], max_n: u32) -> bool {
    let ctx = b.context();
    let img = |p: &Polynomial| p.substitute(images, ctx).unwrap();
    for r in a.relations().generators() {
        if !ideal_membership(&img(r), b.relations(), &budget()).unwrap() {
            return false;
        }
    }
    let sj = b.relations().sum(b.def_ideal()).unwrap();
    let gens: Vec<Polynomial> = a.def_ideal().generators().iter().map(img).collect();
    if gens.is_empty() {
        return true;
    }
    let mut power = vec![Polynomial::one(ctx)];
    for _ in 1..=max_n {
        power = power.iter().flat_map(|p| gens.iter().map(move |g| p * g)).collect();
        power.sort_by_key(|p| p.to_string());
        power.dedup();
        if power.iter().all(|p| ideal_membership(p, &sj, &budget()).unwrap()) {
            return true;
        }
    }
    false
}

proptest! {
    #![proptest_config(config(120))]

    #[test]
    fn corrupted_images_are_rejected_iff_invalid(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let a = c.presentation();
        let phi = if c.rng().gen_bool(0.5) { c.morphism_from(&a) } else { c.surjective_adic_from(&a) };
        let images = c.corrupt(&phi);
        let expected = oracle_valid(phi.source(), phi.target(), &images, 6);
        match AdicMorphism::new(phi.source(), phi.target(), images.clone(), &budget()) {
            Ok(_) => prop_assert!(expected, "accepted invalid images {:?}", images),
            Err(Error::NotWellDefined(_)) | Err(Error::NotContinuous(_)) => {
                prop_assert!(!expected, "rejected valid images {:?}", images)
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn truncation_commutes_with_localisation(seed in any::<u64>(), n in 0u32..3) {
        let mut c = Corpus::new(seed);
        let a = c.presentation();
        let f = c.poly(a.context(), 0, 2, 2);
        let (af, _) = completed_localisation(&a, &f).unwrap();
        let lhs = truncate(&af, n);
        // ordinary localisation of k[x]/(R + I^{n+1})
        let ctx = af.context();
        let embed: Vec<usize> = (0..a.nvars()).collect();
        let u = Polynomial::var(ctx, a.nvars());
        let mut gens: Vec<Polynomial> = truncate(&a, n).quotient_ideal().embed(ctx, &embed).generators().to_vec();
        gens.push(&(&u * &f.embed(ctx, &embed)) - &Polynomial::one(ctx));
        let rhs = Ideal::new(ctx, gens).unwrap();
        prop_assert!(lhs.quotient_ideal().same_ideal(&rhs, &budget()).unwrap());
    }

    #[test]
    fn factorisation_keeps_moduli_tables(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let a = c.presentation();
        let phi = c.morphism_from(&a);
        let psi = c.morphism_from(phi.target());
        let chi = compose(&psi, &phi, &budget()).unwrap();
        let cap = 3;
        if ffp_witnesses(&psi, cap, &budget()).is_ok() && ffp_witnesses(&chi, cap, &budget()).is_ok() {
            let table = ffp_witnesses(&phi, cap, &budget()).unwrap();
            prop_assert_eq!(table.len(), cap as usize + 1);
        }
    }

    #[test]
    fn composition_of_adic_is_adic(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let phi = c.surjective_adic();
        let psi = c.surjective_adic_from(phi.target());
        let chi = compose(&psi, &phi, &budget()).unwrap();
        prop_assert!(is_adic(&chi, &budget()).unwrap().is_true());
    }

    #[test]
    fn radical_membership_has_a_power_witness(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let a = c.presentation();
        let ideal = a.reduction_ideal();
        let p = c.vanishing_poly(a.context(), 2, 2);
        if ideal.radical_contains(&p, &budget()).unwrap() {
            let bound = 2 * budget().max_degree;
            let mut q = p.clone();
            let mut found = false;
            for _ in 1..=bound {
                if ideal_membership(&q, ideal, &budget()).unwrap() {
                    found = true;
                    break;
                }
                q = &q * &p;
            }
            prop_assert!(found, "{} ∈ rad({}) without a power witness", p, ideal);
        }
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn ring_laws(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let ctx = PolyContext::new(["x", "y", "z"], c.field()).unwrap();
        let p = c.poly(&ctx, 0, 3, 4);
        let q = c.poly(&ctx, 0, 3, 4);
        let r = c.poly(&ctx, 0, 2, 3);
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p - &p), &Polynomial::zero(&ctx));
        prop_assert_eq!(Polynomial::parse(&ctx, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn reduced_basis_is_canonical(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let ctx = PolyContext::new(["x", "y", "z"][..c.rng().gen_range(1..=3)].iter().copied(), c.field()).unwrap();
        let gens: Vec<Polynomial> = (0..c.rng().gen_range(1..=3)).map(|_| c.poly(&ctx, 1, 2, 3)).collect();
        let mut shuffled = gens.clone();
        shuffled.reverse();
        let extra = &gens[0] * &c.poly(&ctx, 0, 1, 2);
        shuffled.push(extra);
        let i = Ideal::new(&ctx, gens).unwrap();
        let j = Ideal::new(&ctx, shuffled).unwrap();
        prop_assert_eq!(i.reduced_basis(&budget()).unwrap(), j.reduced_basis(&budget()).unwrap());
        let f = c.poly(&ctx, 0, 3, 4);
        let nf = i.normal_form(&f, &budget()).unwrap();
        prop_assert_eq!(i.normal_form(&nf, &budget()).unwrap(), nf.clone());
        prop_assert!(ideal_membership(&(&f - &nf), &i, &budget()).unwrap());
    }

    #[test]
    fn generated_sessions_round_trip(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let phi = c.surjective_adic();
        let text = format!(
            "ring A = {};\nring B = {};\nmorphism f : A -> B {};\ncheck surjective f;\ncompute neighbourhood f as H;\ncompute truncation H @ level 1;\n",
            phi.source(), phi.target(), phi
        );
        let parsed = parse_session(&text).unwrap();
        let printed = parsed.to_string();
        let again = parse_session(&printed).unwrap();
        prop_assert_eq!(&again, &parsed);
        prop_assert_eq!(again.to_string(), printed);
    }
}
