//! Lemma harnesses over the seeded corpus.
//!
//! Each suite draws inputs from a [`Corpus`] seeded per case, so case `i`
//! of a suite is reproducible on its own. Inconclusive cases (budget
//! exhaustion) are retried with fresh inputs, up to three attempts per
//! requested case, and counted separately.

use std::fmt;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::adic::{
    completed_localisation, completed_tensor, compose, diagonal, ffp_witnesses, is_adic, is_surjective_adic,
    is_thickening, kernel_criterion, locality_check, preimage_criterion, truncate, AdicMorphism, LocalPredicate,
    Verdict, VerdictReport,
};
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::neighbourhood::{
    descent_check, infinitesimal_neighbourhood, neighbourhood_base_change, neighbourhood_idempotence,
    verify_universal_property, DEFAULT_NILPOTENCE_CAP,
};
use crate::polyalg::Polynomial;

pub const SUITES: [&str; 14] = [
    "thickening-criteria",
    "base-change-surjective",
    "base-change-thickening",
    "diagonal",
    "neighbourhood",
    "universal",
    "universal-corrupted",
    "idempotence",
    "neighbourhood-base-change",
    "locality",
    "descent",
    "compose-adic",
    "factorisation",
    "localisation-truncation",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseOutcome {
    Pass,
    Fail(String),
    Inconclusive(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub requested: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub failures: Vec<String>,
    pub millis: u64,
}

impl SuiteReport {
    /// Decided cases.
    pub fn decided(&self) -> usize {
        self.passed + self.failed
    }

    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed >= self.requested
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} passed, {} failed, {} inconclusive (seed {}, {} ms)",
            self.suite, self.passed, self.failed, self.inconclusive, self.seed, self.millis
        )?;
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

fn case_seed(seed: u64, suite: usize, attempt: usize) -> u64 {
    // splitmix64 over the triple
    let mut z = seed
        .wrapping_add((suite as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add((attempt as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs `cases` decided cases of `suite`.
pub fn run_suite(suite: &str, seed: u64, cases: usize, cap: u32) -> Result<SuiteReport> {
    let index = SUITES
        .iter()
        .position(|s| *s == suite)
        .ok_or_else(|| Error::Precondition(format!("unknown suite '{suite}' (known: {})", SUITES.join(", "))))?;
    let budget = Budget::default();
    let start = Instant::now();
    let mut report = SuiteReport {
        suite: suite.to_string(),
        seed,
        requested: cases,
        passed: 0,
        failed: 0,
        inconclusive: 0,
        failures: Vec::new(),
        millis: 0,
    };
    let mut attempt = 0;
    while report.decided() < cases && attempt < 3 * cases {
        let mut corpus = Corpus::new(case_seed(seed, index, attempt));
        let outcome = match run_case(suite, &mut corpus, cap, &budget) {
            Ok(o) => o,
            Err(e) if e.is_inconclusive() => CaseOutcome::Inconclusive(e.to_string()),
            Err(e) => CaseOutcome::Fail(format!("error: {e}")),
        };
        match outcome {
            CaseOutcome::Pass => report.passed += 1,
            CaseOutcome::Fail(msg) => {
                report.failed += 1;
                report.failures.push(format!("case {attempt}: {msg}"));
            }
            CaseOutcome::Inconclusive(_) => report.inconclusive += 1,
        }
        attempt += 1;
    }
    report.millis = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn expect_true(rep: VerdictReport, what: impl fmt::Display) -> CaseOutcome {
    match rep.verdict {
        Verdict::True => CaseOutcome::Pass,
        Verdict::False => CaseOutcome::Fail(format!("{what}: {rep}")),
        Verdict::Inconclusive => CaseOutcome::Inconclusive(rep.to_string()),
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> CaseOutcome {
    if cond {
        CaseOutcome::Pass
    } else {
        CaseOutcome::Fail(msg())
    }
}

fn run_case(suite: &str, c: &mut Corpus, cap: u32, budget: &Budget) -> Result<CaseOutcome> {
    Ok(match suite {
        "thickening-criteria" => {
            let phi = c.surjective_adic();
            let (by_kernel, _) = kernel_criterion(&phi, budget)?;
            let by_preimage = preimage_criterion(&phi, budget)?;
            check(by_kernel == by_preimage, || {
                format!("{phi}: kernel criterion {by_kernel}, preimage criterion {by_preimage}")
            })
        }
        "base-change-surjective" => {
            let phi = c.surjective_adic();
            let psi = c.morphism_from(phi.source());
            let sq = completed_tensor(&phi, &psi)?;
            expect_true(is_surjective_adic(&sq.phi_prime, cap, budget)?, format!("base change of {phi} along {psi}"))
        }
        "base-change-thickening" => {
            let phi = c.thickening();
            let psi = c.morphism_from(phi.source());
            let sq = completed_tensor(&phi, &psi)?;
            expect_true(is_thickening(&sq.phi_prime, cap, budget)?, format!("base change of {phi} along {psi}"))
        }
        "diagonal" => {
            let a = c.presentation();
            let phi = c.morphism_from(&a);
            let (_, delta) = diagonal(&phi, budget)?;
            expect_true(is_surjective_adic(&delta, cap, budget)?, format!("diagonal of {phi}"))
        }
        "neighbourhood" => {
            let phi = c.surjective_adic();
            let nb = infinitesimal_neighbourhood(&phi, cap, budget)?;
            let a = phi.source();
            let by_preimage = phi.poly_map().contract(&phi.extend(a.def_ideal())?, budget)?;
            let by_sum = a.def_ideal().sum(&phi.kernel(budget)?)?;
            if !by_preimage.same_ideal(&nb.def_ideal_d, budget)? || !by_sum.same_ideal(&nb.def_ideal_d, budget)? {
                return Ok(CaseOutcome::Fail(format!("{phi}: D = {} disagrees", nb.def_ideal_d)));
            }
            if !compose(&nb.from_hat, &nb.to_hat, budget)?.same_as(&phi, budget)? {
                return Ok(CaseOutcome::Fail(format!("{phi}: factorisation")));
            }
            expect_true(is_thickening(&nb.from_hat, cap, budget)?, format!("from_hat of {phi}"))
        }
        "universal" => {
            let t = c.universal_triple()?;
            let nb = infinitesimal_neighbourhood(&t.phi, cap, budget)?;
            let rep = verify_universal_property(&nb, &t.thickening, &t.psi, &t.psi_prime, DEFAULT_NILPOTENCE_CAP, budget)?;
            expect_true(rep, format!("universal property for {} with {}", t.phi, t.psi))
        }
        "universal-corrupted" => {
            let t = c.universal_triple()?;
            let nb = infinitesimal_neighbourhood(&t.phi, cap, budget)?;
            let images = c.corrupt(&t.psi);
            let psi = match AdicMorphism::ring_map(t.psi.source(), t.psi.target(), images, budget) {
                Ok(psi) => psi,
                // rejected before the square is even formed
                Err(Error::NotWellDefined(_)) => return Ok(CaseOutcome::Pass),
                Err(e) => return Err(e),
            };
            let down = compose(&t.thickening.map, &psi, budget)?;
            let across = compose(&t.psi_prime, &t.phi, budget)?;
            let commutes = down.same_as(&across, budget)?;
            match verify_universal_property(&nb, &t.thickening, &psi, &t.psi_prime, DEFAULT_NILPOTENCE_CAP, budget) {
                Err(Error::Precondition(_)) if !commutes => CaseOutcome::Pass,
                Ok(rep) if commutes => expect_true(rep, "corruption preserved the square"),
                Err(e) if e.is_inconclusive() => CaseOutcome::Inconclusive(e.to_string()),
                other => CaseOutcome::Fail(format!("corrupted {psi}: commutes {commutes}, got {other:?}")),
            }
        }
        "idempotence" => {
            let phi = c.thickening();
            expect_true(neighbourhood_idempotence(&phi, cap, budget)?, format!("idempotence for {phi}"))
        }
        "neighbourhood-base-change" => {
            let phi = c.surjective_adic();
            let psi = c.morphism_from(phi.source());
            expect_true(
                neighbourhood_base_change(&phi, &psi, cap, budget)?,
                format!("neighbourhood base change of {phi} along {psi}"),
            )
        }
        "locality" => {
            let (phi, pred) = if c.rng().gen_bool(0.5) {
                (c.thickening(), LocalPredicate::Thickening)
            } else {
                (c.surjective_adic(), LocalPredicate::SurjectiveAdic)
            };
            let cover = c.unit_cover(phi.source());
            expect_true(locality_check(&phi, &cover, pred, cap, budget)?, format!("locality of {phi}"))
        }
        "descent" => {
            let a = c.presentation();
            let psi = c.thickening_from(&a);
            let phi = if c.rng().gen_bool(0.5) {
                c.surjective_adic_from(&a)
            } else {
                c.morphism_from(&a)
            };
            expect_true(descent_check(&phi, &psi, cap, budget)?, format!("descent for {phi} along {psi}"))
        }
        "compose-adic" => {
            let phi = c.surjective_adic();
            let psi = c.surjective_adic_from(phi.target());
            let chi = compose(&psi, &phi, budget)?;
            expect_true(is_adic(&chi, budget)?, format!("{psi} ∘ {phi}"))
        }
        "factorisation" => {
            let a = c.presentation();
            let phi = c.morphism_from(&a);
            let psi = c.morphism_from(phi.target());
            let chi = compose(&psi, &phi, budget)?;
            let table = |f: &AdicMorphism| match ffp_witnesses(f, cap, budget) {
                Ok(t) => Ok(Some(t)),
                Err(e) if e.is_inconclusive() => Ok(None),
                Err(e) => Err(e),
            };
            match (table(&psi)?, table(&chi)?) {
                (Some(_), Some(_)) => match table(&phi)? {
                    Some(t) => check(t.len() == cap as usize + 1, || format!("{phi}: table {t:?}")),
                    None => CaseOutcome::Fail(format!("{phi}: no moduli table although ψ and ψ∘φ have one")),
                },
                _ => CaseOutcome::Inconclusive("hypothesis undecided".into()),
            }
        }
        "localisation-truncation" => {
            let a = c.presentation();
            let f = c.poly(a.context(), 0, 2, 2);
            let n = c.rng().gen_range(0..=cap);
            localisation_truncation(&a, &f, n, budget)?
        }
        _ => unreachable!("suite names are checked by run_suite"),
    })
}

/// `truncate(A_f, n)` against the localisation of `truncate(A, n)`.
fn localisation_truncation(a: &crate::adic::AdicPresentation, f: &Polynomial, n: u32, budget: &Budget) -> Result<CaseOutcome> {
    let (af, _) = completed_localisation(a, f)?;
    let lhs = truncate(&af, n);
    let an = truncate(a, n);
    let (ordinary, _) = completed_localisation(&an.as_presentation(), f)?;
    let rhs: &Ideal = ordinary.relations();
    let same = lhs.quotient_ideal().same_ideal(rhs, budget)?;
    Ok(check(same, || format!("{a} at {f}, level {n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_runs() {
        for s in SUITES {
            let rep = run_suite(s, 11, 2, 2).unwrap();
            assert!(rep.ok(), "{rep}");
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 0, 1, 1).is_err());
    }

    #[test]
    fn reproducible() {
        let a = run_suite("diagonal", 5, 3, 2).unwrap();
        let b = run_suite("diagonal", 5, 3, 2).unwrap();
        assert_eq!((a.passed, a.failed, a.inconclusive), (b.passed, b.failed, b.inconclusive));
    }
}
