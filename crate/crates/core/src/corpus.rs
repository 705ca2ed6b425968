//! Seeded random inputs for the lemma harnesses.
//!
//! Presentations have at most three variables, at most two relations of
//! degree at most two and ideal-of-definition generators of degree at most
//! two. Every generator that promises a property (surjective adic,
//! thickening, a compatible universal-property triple) builds its output so
//! that the property holds on the presentation itself.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adic::{AdicMorphism, AdicPresentation};
use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::neighbourhood::{make_square_zero, SquareZeroThickening};
use crate::polyalg::{FieldSpec, Monomial, PolyContext, Polynomial, DEFAULT_FUZZ_PRIME};

const SOURCE_VARS: [&str; 3] = ["x", "y", "z"];
const TARGET_VARS: [&str; 3] = ["s", "t", "w"];
const BASE_VARS: [&str; 3] = ["a", "b", "c"];

/// A universal-property instance whose outer square commutes by
/// construction.
#[derive(Debug, Clone)]
pub struct UniversalTriple {
    pub phi: AdicMorphism,
    pub thickening: SquareZeroThickening,
    pub psi: AdicMorphism,
    pub psi_prime: AdicMorphism,
}

pub struct Corpus {
    rng: ChaCha8Rng,
    field: FieldSpec,
    budget: Budget,
}

impl Corpus {
    /// Over 𝔽₁₀₁.
    pub fn new(seed: u64) -> Self {
        Corpus::with_field(seed, FieldSpec::PrimeField(DEFAULT_FUZZ_PRIME))
    }

    pub fn with_field(seed: u64, field: FieldSpec) -> Self {
        Corpus {
            rng: ChaCha8Rng::seed_from_u64(seed),
            field,
            budget: Budget::default(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn coeff(&mut self) -> i64 {
        // small nonzero integers keep ℚ cases readable
        let c = self.rng.gen_range(1..=9);
        if self.rng.gen_bool(0.5) {
            -c
        } else {
            c
        }
    }

    /// Random polynomial with up to `max_terms` terms of degree in
    /// `min_deg..=max_deg`.
    pub fn poly(&mut self, ctx: &Arc<PolyContext>, min_deg: u32, max_deg: u32, max_terms: usize) -> Polynomial {
        let n = ctx.nvars();
        let nterms = self.rng.gen_range(1..=max_terms.max(1));
        let mut terms = Vec::with_capacity(nterms);
        for _ in 0..nterms {
            let deg = self.rng.gen_range(min_deg..=max_deg);
            let mut exps = vec![0u16; n];
            if n > 0 {
                for _ in 0..deg {
                    exps[self.rng.gen_range(0..n)] += 1;
                }
            }
            let c = self.coeff();
            let c = self.field.from_i64(c);
            terms.push((Monomial::from_exponents(&exps), c));
        }
        Polynomial::from_terms(ctx, terms)
    }

    /// Random polynomial with no constant term.
    pub fn vanishing_poly(&mut self, ctx: &Arc<PolyContext>, max_deg: u32, max_terms: usize) -> Polynomial {
        if ctx.nvars() == 0 {
            return Polynomial::zero(ctx);
        }
        loop {
            let p = self.poly(ctx, 1, max_deg, max_terms);
            if !p.is_zero() {
                return p;
            }
        }
    }

    fn context(&mut self, names: &[&str], n: usize) -> Arc<PolyContext> {
        PolyContext::new(names[..n].iter().copied(), self.field).expect("distinct names")
    }

    /// Random presentation on `x, y, z` (one to three of them).
    pub fn presentation(&mut self) -> AdicPresentation {
        let n = self.rng.gen_range(1..=3);
        self.presentation_on(&SOURCE_VARS, n)
    }

    fn presentation_on(&mut self, names: &[&str], n: usize) -> AdicPresentation {
        let ctx = self.context(names, n);
        let nrels = self.rng.gen_range(0..=2);
        let rels: Vec<Polynomial> = (0..nrels).map(|_| self.vanishing_poly(&ctx, 2, 2)).collect();
        let ndefs = self.rng.gen_range(0..=2);
        let defs: Vec<Polynomial> = (0..ndefs).map(|_| self.vanishing_poly(&ctx, 2, 2)).collect();
        AdicPresentation::new(Ideal::new(&ctx, rels).expect("ctx"), Ideal::new(&ctx, defs).expect("ctx")).expect("ctx")
    }

    /// Images of a surjective polynomial map `k[x] → k[s]` with `k ≤ n`
    /// target variables, plus the target context. Pivot source variables
    /// map to `sⱼ + g(s₀..sⱼ₋₁)`, so every `sⱼ` lies in the image.
    fn triangular_images(&mut self, n: usize, names: &[&str]) -> (Arc<PolyContext>, Vec<Polynomial>) {
        let k = self.rng.gen_range(1..=n);
        let ctx = self.context(names, k);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut self.rng);
        let mut images = vec![Polynomial::zero(&ctx); n];
        for (j, &src) in order.iter().enumerate() {
            images[src] = if j < k {
                let mut img = Polynomial::var(&ctx, j);
                if j > 0 && self.rng.gen_bool(0.5) {
                    let lower = PolyContext::new(names[..j].iter().copied(), self.field).expect("names");
                    let g = self.vanishing_poly(&lower, 2, 2);
                    let embed: Vec<usize> = (0..j).collect();
                    img = &img + &g.embed(&ctx, &embed);
                }
                img
            } else if self.rng.gen_bool(0.3) {
                Polynomial::zero(&ctx)
            } else {
                self.vanishing_poly(&ctx, 2, 2)
            };
        }
        (ctx, images)
    }

    fn image_ideal(&self, ctx: &Arc<PolyContext>, i: &Ideal, images: &[Polynomial]) -> Ideal {
        i.substitute(images, ctx).expect("images in ctx")
    }

    /// A morphism surjective on presentations whose target ideal of
    /// definition has the same radical as `φ(I)·B`, hence surjective adic.
    pub fn surjective_adic(&mut self) -> AdicMorphism {
        let a = self.presentation();
        self.surjective_adic_from(&a)
    }

    pub fn surjective_adic_from(&mut self, a: &AdicPresentation) -> AdicMorphism {
        loop {
            let (ctx, images) = self.triangular_images(a.nvars(), &TARGET_VARS);
            let mut rels = self.image_ideal(&ctx, a.relations(), &images).generators().to_vec();
            if self.rng.gen_bool(0.6) {
                rels.push(self.vanishing_poly(&ctx, 2, 2));
            }
            let defs: Vec<Polynomial> = self
                .image_ideal(&ctx, a.def_ideal(), &images)
                .generators()
                .iter()
                .map(|g| if self.rng.gen_bool(0.3) { g.pow(2) } else { g.clone() })
                .collect();
            let b = AdicPresentation::new(Ideal::new(&ctx, rels).expect("ctx"), Ideal::new(&ctx, defs).expect("ctx"))
                .expect("ctx");
            if let Ok(phi) = AdicMorphism::new(a, &b, images, &self.budget) {
                return phi;
            }
        }
    }

    /// A surjective adic morphism whose kernel lies in `R + I`, hence a
    /// thickening.
    pub fn thickening(&mut self) -> AdicMorphism {
        let mut a = self.presentation();
        // a discrete source only yields isomorphisms
        while a.is_discrete() && self.rng.gen_bool(0.8) {
            a = self.presentation();
        }
        self.thickening_from(&a)
    }

    pub fn thickening_from(&mut self, a: &AdicPresentation) -> AdicMorphism {
        loop {
            let n = a.nvars();
            let ctx = self.context(&TARGET_VARS, n);
            let mut images = Vec::with_capacity(n);
            for j in 0..n {
                let mut img = Polynomial::var(&ctx, j);
                if j > 0 && self.rng.gen_bool(0.4) {
                    let lower = PolyContext::new(TARGET_VARS[..j].iter().copied(), self.field).expect("names");
                    let embed: Vec<usize> = (0..j).collect();
                    img = &img + &self.vanishing_poly(&lower, 2, 2).embed(&ctx, &embed);
                }
                images.push(img);
            }
            let mut kernel_extra = Vec::new();
            for g in a.def_ideal().generators() {
                if self.rng.gen_bool(0.6) {
                    let h = self.poly(a.context(), 0, 1, 2);
                    kernel_extra.push(&h * g);
                }
            }
            let rels = self
                .image_ideal(&ctx, a.relations(), &images)
                .sum(&self.image_ideal(&ctx, &Ideal::new(a.context(), kernel_extra).expect("ctx"), &images))
                .expect("ctx");
            let defs = self.image_ideal(&ctx, a.def_ideal(), &images);
            let b = AdicPresentation::new(rels, defs).expect("ctx");
            if let Ok(phi) = AdicMorphism::new(a, &b, images, &self.budget) {
                return phi;
            }
        }
    }

    /// An arbitrary adic-ring morphism out of `a` into a random presentation
    /// on `a, b, c`, well defined and continuous by construction.
    pub fn morphism_from(&mut self, a: &AdicPresentation) -> AdicMorphism {
        loop {
            let m = self.rng.gen_range(1..=3);
            let ctx = self.context(&BASE_VARS, m);
            let images: Vec<Polynomial> = (0..a.nvars())
                .map(|_| {
                    if self.rng.gen_bool(0.15) {
                        Polynomial::zero(&ctx)
                    } else {
                        self.vanishing_poly(&ctx, 2, 2)
                    }
                })
                .collect();
            let mut rels = self.image_ideal(&ctx, a.relations(), &images).generators().to_vec();
            if self.rng.gen_bool(0.4) {
                rels.push(self.vanishing_poly(&ctx, 2, 2));
            }
            let mut defs = self.image_ideal(&ctx, a.def_ideal(), &images).generators().to_vec();
            if self.rng.gen_bool(0.4) {
                defs.push(self.vanishing_poly(&ctx, 2, 1));
            }
            let target = AdicPresentation::new(Ideal::new(&ctx, rels).expect("ctx"), Ideal::new(&ctx, defs).expect("ctx"))
                .expect("ctx");
            if let Ok(psi) = AdicMorphism::new(a, &target, images, &self.budget) {
                return psi;
            }
        }
    }

    /// `f₁ = g`, `f₂ = 1 - g·h`, so `1 = f₂ + h·f₁`.
    pub fn unit_cover(&mut self, a: &AdicPresentation) -> Vec<Polynomial> {
        let ctx = a.context();
        let g = self.poly(ctx, 0, 1, 2);
        let h = self.poly(ctx, 0, 1, 1);
        vec![g.clone(), &Polynomial::one(ctx) - &(&g * &h)]
    }

    /// Replaces one image with a perturbed one.
    pub fn corrupt(&mut self, phi: &AdicMorphism) -> Vec<Polynomial> {
        let mut images = phi.images().to_vec();
        if images.is_empty() {
            return images;
        }
        let i = self.rng.gen_range(0..images.len());
        let ctx = phi.target().context().clone();
        let delta = self.poly(&ctx, 0, 2, 2);
        images[i] = &images[i] + &delta;
        images
    }

    /// `A → B = A/K` (same variables) with `ψ: A → C′` and `ψ′: B → C`, where
    /// `C′ = k[e…]/((e)² + ψ(R))`, `C = C′/L` and `K ⊆ ψ⁻¹(L)`.
    pub fn universal_triple(&mut self) -> Result<UniversalTriple> {
        let budget = self.budget;
        let a = self.presentation();
        let e = self.rng.gen_range(1..=2);
        let cctx = self.context(&["e", "f"], e);
        let images: Vec<Polynomial> = (0..a.nvars()).map(|_| self.vanishing_poly(&cctx, 1, 2)).collect();
        let square: Vec<Polynomial> = {
            let m = Ideal::new(&cctx, (0..e).map(|i| Polynomial::var(&cctx, i))).expect("ctx");
            m.power(2).generators().to_vec()
        };
        let c_rels = Ideal::new(&cctx, square)?.sum(&a.relations().substitute(&images, &cctx)?)?;
        let big = AdicPresentation::discrete(c_rels);
        let l_gens: Vec<Polynomial> = (0..self.rng.gen_range(0..=e))
            .map(|_| self.vanishing_poly(&cctx, 1, 2))
            .collect();
        let l = Ideal::new(&cctx, l_gens)?;
        let t = make_square_zero(&big, &l, &budget)?;
        let psi = AdicMorphism::new(&a, &big, images.clone(), &budget)?;

        let pulled = psi.poly_map().contract(t.small.relations(), &budget)?;
        let basis = pulled.reduced_basis(&budget)?;
        let mut kernel: Vec<Polynomial> = a.relations().generators().to_vec();
        for g in basis.iter() {
            if self.rng.gen_bool(0.5) {
                kernel.push(g.clone());
            }
        }
        let b = AdicPresentation::new(Ideal::new(a.context(), kernel)?, a.def_ideal().clone())?;
        let ids = AdicMorphism::identity(&a).images().to_vec();
        let phi = AdicMorphism::new(&a, &b, ids, &budget)?;
        let psi_prime = AdicMorphism::new(&b, &t.small, images, &budget)?;
        if !phi.target().identical(psi_prime.source()) {
            return Err(Error::EngineInconsistency("triple assembly".into()));
        }
        Ok(UniversalTriple {
            phi,
            thickening: t,
            psi,
            psi_prime,
        })
    }
}

/// Hand-picked morphisms over ℚ: the axis, a cusp inclusion, dual numbers,
/// a squaring map, a thickening with nonreduced target.
pub fn qq_suite() -> Vec<AdicMorphism> {
    let budget = Budget::default();
    let qq = |vars: &[&str], rels: &[&str], defs: &[&str]| {
        AdicPresentation::parse(FieldSpec::Rationals, vars, rels, defs).expect("hand-written")
    };
    let plane = qq(&["x", "y"], &[], &[]);
    let axis = qq(&["x", "y"], &["y"], &[]);
    let cusp = qq(&["x", "y"], &["y^2 - x^3"], &["x", "y"]);
    let cusp_pt = qq(&["x", "y"], &["y^2 - x^3", "x", "y"], &[]);
    let line = qq(&["x"], &[], &["x"]);
    let dual = qq(&["x"], &["x^2"], &["x"]);
    let pt = qq(&["x"], &["x"], &[]);
    let formal_plane = qq(&["x", "y"], &[], &["x", "y"]);
    let m = |s: &AdicPresentation, t: &AdicPresentation, imgs: &[&str]| {
        AdicMorphism::parse(s, t, imgs, &budget).expect("hand-written")
    };
    vec![
        m(&plane, &axis, &["x", "y"]),
        m(&cusp, &cusp_pt, &["x", "y"]),
        m(&dual, &pt, &["x"]),
        m(&line, &dual, &["x"]),
        m(&formal_plane, &cusp, &["x", "y"]),
        m(&line, &line, &["x"]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adic::{is_surjective_adic, is_thickening};

    #[test]
    fn deterministic() {
        let a: Vec<String> = (0..5).map(|_| Corpus::new(7).surjective_adic().to_string()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut c = Corpus::new(7);
        let xs: Vec<String> = (0..5).map(|_| c.presentation().to_string()).collect();
        let mut c = Corpus::new(7);
        let ys: Vec<String> = (0..5).map(|_| c.presentation().to_string()).collect();
        assert_eq!(xs, ys);
    }

    #[test]
    fn generators_keep_promises() {
        let budget = Budget::default();
        let mut c = Corpus::new(1);
        for _ in 0..10 {
            let phi = c.surjective_adic();
            assert!(!is_surjective_adic(&phi, 2, &budget).unwrap().is_false(), "{phi}");
            let th = c.thickening();
            assert!(!is_thickening(&th, 2, &budget).unwrap().is_false(), "{th}");
        }
    }

    #[test]
    fn universal_triples_commute() {
        let budget = Budget::default();
        let mut c = Corpus::new(3);
        let mut built = 0;
        for _ in 0..10 {
            if let Ok(t) = c.universal_triple() {
                let down = crate::adic::compose(&t.thickening.map, &t.psi, &budget).unwrap();
                let across = crate::adic::compose(&t.psi_prime, &t.phi, &budget).unwrap();
                assert!(down.same_as(&across, &budget).unwrap());
                built += 1;
            }
        }
        assert!(built >= 8, "{built}");
    }

    #[test]
    fn qq_suite_builds() {
        assert_eq!(qq_suite().len(), 6);
    }
}
