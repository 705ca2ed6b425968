use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::adic::{
    completed_localisation, completed_tensor, diagonal, ffp_report, is_adic, is_surjective_adic, is_thickening,
    truncate, AdicMorphism, AdicPresentation, Verdict, VerdictReport, Witness, Certificate, DEFAULT_CAP,
};
use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::neighbourhood::{
    infinitesimal_neighbourhood, make_square_zero, neighbourhood_idempotence, verify_universal_property,
    DEFAULT_NILPOTENCE_CAP,
};
use crate::session::ast::{CheckKind, ComputeKind, Session, SessionOption, Statement};

/// Run-wide settings. `set` statements change the running copy only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub cap: u32,
    pub budget: Budget,
    /// When false every `millis` is reported as 0.
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            cap: DEFAULT_CAP,
            budget: Budget::default(),
            timing: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryVerdict {
    /// A definition, computation or option that succeeded.
    Ok,
    True,
    False,
    Inconclusive,
    Error,
}

impl EntryVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryVerdict::Ok => "ok",
            EntryVerdict::True => "true",
            EntryVerdict::False => "false",
            EntryVerdict::Inconclusive => "inconclusive",
            EntryVerdict::Error => "error",
        }
    }

    fn from_verdict(v: Verdict) -> Self {
        match v {
            Verdict::True => EntryVerdict::True,
            Verdict::False => EntryVerdict::False,
            Verdict::Inconclusive => EntryVerdict::Inconclusive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatementReport {
    pub id: usize,
    pub kind: String,
    pub name: String,
    pub verdict: EntryVerdict,
    pub certificates: Vec<String>,
    pub levels_used: Vec<u32>,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportOptions {
    pub cap: u32,
    pub budget: usize,
    pub max_degree: u32,
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JsonReport {
    pub version: String,
    pub options: ReportOptions,
    pub statements: Vec<StatementReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone)]
enum Value {
    Ring(AdicPresentation),
    Morphism(AdicMorphism),
    Unavailable(String),
}

struct Env {
    values: HashMap<String, Value>,
    cap: u32,
    budget: Budget,
}

struct Outcome {
    verdict: EntryVerdict,
    certificates: Vec<String>,
    levels_used: Vec<u32>,
}

impl Outcome {
    fn ok() -> Self {
        Outcome {
            verdict: EntryVerdict::Ok,
            certificates: Vec::new(),
            levels_used: Vec::new(),
        }
    }

    fn with(mut self, c: impl Into<String>) -> Self {
        self.certificates.push(c.into());
        self
    }

    fn from_report(rep: &VerdictReport) -> Self {
        Outcome {
            verdict: EntryVerdict::from_verdict(rep.verdict),
            certificates: rep.certificate_strings(),
            levels_used: rep.levels_used.clone(),
        }
    }
}

impl Env {
    fn lookup(&self, name: &str) -> Result<&Value> {
        match self.values.get(name) {
            Some(Value::Unavailable(why)) => Err(Error::Precondition(format!("{name} is unavailable: {why}"))),
            Some(v) => Ok(v),
            None => Err(Error::Precondition(format!("undefined name '{name}'"))),
        }
    }

    fn ring(&self, name: &str) -> Result<AdicPresentation> {
        match self.lookup(name)? {
            Value::Ring(a) => Ok(a.clone()),
            _ => Err(Error::Precondition(format!("'{name}' is not a ring"))),
        }
    }

    fn morphism(&self, name: &str) -> Result<AdicMorphism> {
        match self.lookup(name)? {
            Value::Morphism(f) => Ok(f.clone()),
            _ => Err(Error::Precondition(format!("'{name}' is not a morphism"))),
        }
    }

    fn bind(&mut self, name: &str, v: Value) {
        self.values.insert(name.to_string(), v);
    }
}

/// Names a statement introduces, so that a failure can mark them.
fn bound_names(st: &Statement) -> Vec<String> {
    match st {
        Statement::Ring { name, .. } | Statement::Morphism { name, .. } => vec![name.clone()],
        Statement::Compute { kind, bind: Some(b), .. } => std::iter::once(b.clone())
            .chain(kind.bound_morphisms().iter().map(|s| format!("{b}_{s}")))
            .collect(),
        _ => Vec::new(),
    }
}

/// Evaluates every statement in order. A failing statement is recorded and
/// the names it would bind become unavailable; later statements still run.
pub fn execute(session: &Session, options: &Options) -> JsonReport {
    let mut env = Env {
        values: HashMap::new(),
        cap: options.cap,
        budget: options.budget,
    };
    let mut statements = Vec::with_capacity(session.statements.len());
    for (i, st) in session.statements.iter().enumerate() {
        let start = Instant::now();
        let outcome = match run(&mut env, st) {
            Ok(o) => o,
            Err(e) => {
                let verdict = if e.is_inconclusive() {
                    EntryVerdict::Inconclusive
                } else {
                    EntryVerdict::Error
                };
                for n in bound_names(st) {
                    env.bind(&n, Value::Unavailable(e.to_string()));
                }
                Outcome {
                    verdict,
                    certificates: vec![e.to_string()],
                    levels_used: Vec::new(),
                }
            }
        };
        let millis = if options.timing { start.elapsed().as_millis() as u64 } else { 0 };
        statements.push(StatementReport {
            id: i + 1,
            kind: st.kind_label(),
            name: st.subject(),
            verdict: outcome.verdict,
            certificates: outcome.certificates,
            levels_used: outcome.levels_used,
            millis,
        });
    }
    JsonReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        options: ReportOptions {
            cap: options.cap,
            budget: options.budget.max_pairs,
            max_degree: options.budget.max_degree,
            timing: options.timing,
        },
        statements,
    }
}

fn run(env: &mut Env, st: &Statement) -> Result<Outcome> {
    match st {
        Statement::Ring {
            name,
            context,
            relations,
            def_ideal,
        } => {
            let a = AdicPresentation::new(
                Ideal::new(context, relations.iter().cloned())?,
                Ideal::new(context, def_ideal.iter().cloned())?,
            )?;
            // an undecided zero-ring test does not block the definition
            let zero = a.is_zero_ring(&env.budget).unwrap_or(false);
            env.bind(name, Value::Ring(a));
            let out = Outcome::ok();
            Ok(if zero { out.with("zero ring") } else { out })
        }
        Statement::Morphism {
            name,
            source,
            target,
            assignments,
        } => {
            let a = env.ring(source)?;
            let b = env.ring(target)?;
            let images = assignments.iter().map(|(_, p)| p.clone()).collect();
            let f = AdicMorphism::ring_map(&a, &b, images, &env.budget)?;
            env.bind(name, Value::Morphism(f));
            Ok(Outcome::ok())
        }
        Statement::Set { option, value } => {
            match option {
                SessionOption::Cap => {
                    env.cap = u32::try_from(*value).map_err(|_| Error::Precondition("cap out of range".into()))?
                }
                SessionOption::Budget => env.budget.max_pairs = *value as usize,
            }
            Ok(Outcome::ok())
        }
        Statement::Check {
            kind,
            subject,
            with,
            level,
        } => check(env, *kind, subject, with, *level),
        Statement::Compute {
            kind,
            args,
            at,
            level,
            bind,
        } => compute(env, *kind, args, at.as_ref(), *level, bind.as_deref()),
    }
}

fn check(env: &Env, kind: CheckKind, subject: &str, with: &[String], level: Option<u32>) -> Result<Outcome> {
    let phi = env.morphism(subject)?;
    let cap = level.unwrap_or(env.cap);
    let budget = &env.budget;
    let rep = match kind {
        CheckKind::Adic => is_adic(&phi, budget)?,
        CheckKind::Surjective => is_surjective_adic(&phi, cap, budget)?,
        CheckKind::Thickening => is_thickening(&phi, cap, budget)?,
        CheckKind::Ffp => ffp_report(&phi, cap, budget)?,
        CheckKind::Idempotent => neighbourhood_idempotence(&phi, cap, budget)?,
        CheckKind::Universal => {
            let psi = env.morphism(&with[0])?;
            let psi_prime = env.morphism(&with[1])?;
            universal(&phi, &psi, &psi_prime, level.unwrap_or(DEFAULT_NILPOTENCE_CAP), env.cap, budget)?
        }
    };
    Ok(Outcome::from_report(&rep))
}

/// `ψ: A → C′` and `ψ′: B → C` where `C` is `C′` with more relations; the
/// extra relations form the square-zero ideal `L`.
fn universal(
    phi: &AdicMorphism,
    psi: &AdicMorphism,
    psi_prime: &AdicMorphism,
    nilpotence_cap: u32,
    cap: u32,
    budget: &Budget,
) -> Result<VerdictReport> {
    let big = psi.target();
    let c = psi_prime.target();
    if !crate::polyalg::same_context(big.context(), c.context()) {
        return Err(Error::Precondition("the targets of ψ and ψ′ must share variables".into()));
    }
    if !c.is_discrete() {
        return Err(Error::Precondition("the target of ψ′ must be discrete".into()));
    }
    if !c.relations().contains_ideal(big.relations(), budget)? {
        return Err(Error::Precondition("the target of ψ′ is not a quotient of the target of ψ".into()));
    }
    let nbhd = infinitesimal_neighbourhood(phi, cap, budget)?;
    let t = make_square_zero(big, c.relations(), budget)?;
    let retargeted = AdicMorphism::ring_map(psi_prime.source(), &t.small, psi_prime.images().to_vec(), budget)?;
    verify_universal_property(&nbhd, &t, psi, &retargeted, nilpotence_cap, budget)
}

fn compute(
    env: &mut Env,
    kind: ComputeKind,
    args: &[String],
    at: Option<&crate::polyalg::Polynomial>,
    level: Option<u32>,
    bind: Option<&str>,
) -> Result<Outcome> {
    let cap = level.unwrap_or(env.cap);
    let budget = env.budget;
    let (ring, morphisms, out) = match kind {
        ComputeKind::Neighbourhood => {
            let phi = env.morphism(&args[0])?;
            let nb = infinitesimal_neighbourhood(&phi, cap, &budget)?;
            let out = Outcome {
                verdict: EntryVerdict::Ok,
                certificates: nb.report.certificate_strings(),
                levels_used: nb.report.levels_used.clone(),
            };
            (Some(nb.hat_ring), vec![nb.to_hat, nb.from_hat], out)
        }
        ComputeKind::Tensor => {
            let phi = env.morphism(&args[0])?;
            let psi = env.morphism(&args[1])?;
            let sq = completed_tensor(&phi, &psi)?;
            let out = Outcome::ok().with(format!("apex = {}", sq.apex));
            (Some(sq.apex), vec![sq.psi_prime, sq.phi_prime], out)
        }
        ComputeKind::Localisation => {
            let a = env.ring(&args[0])?;
            let f = at.expect("parser supplies the localising element");
            let (af, loc) = completed_localisation(&a, f)?;
            let mut out = Outcome::ok().with(format!("localisation = {af}"));
            if af.is_zero_ring(&budget)? {
                out = out.with("zero ring");
            }
            (Some(af), vec![loc], out)
        }
        ComputeKind::Diagonal => {
            let phi = env.morphism(&args[0])?;
            let (sq, delta) = diagonal(&phi, &budget)?;
            let out = Outcome::ok()
                .with(format!("apex = {}", sq.apex))
                .with(format!("diagonal = {delta}"));
            (Some(sq.apex), vec![delta], out)
        }
        ComputeKind::Truncation => {
            let a = env.ring(&args[0])?;
            let n = level.unwrap_or(1);
            let q = truncate(&a, n);
            let basis = q.quotient_ideal().reduced_basis(&budget)?.to_vec();
            let mut out = Outcome::ok().with(Certificate::value("basis", Witness::Polys(basis)).to_string());
            out.levels_used = vec![n];
            if q.is_zero_ring(&budget)? {
                out = out.with("zero ring");
            }
            (None, Vec::new(), out)
        }
    };
    if let (Some(b), Some(ring)) = (bind, ring) {
        env.bind(b, Value::Ring(ring));
        for (suffix, m) in kind.bound_morphisms().iter().zip(morphisms) {
            env.bind(&format!("{b}_{suffix}"), Value::Morphism(m));
        }
    }
    Ok(out)
}

/// 3 if any statement errored, else 1 if a check is false, else 2 if
/// anything is inconclusive, else 0.
pub fn exit_code(report: &JsonReport) -> i32 {
    let has = |v: EntryVerdict| report.statements.iter().any(|s| s.verdict == v);
    if has(EntryVerdict::Error) {
        3
    } else if has(EntryVerdict::False) {
        1
    } else if has(EntryVerdict::Inconclusive) {
        2
    } else {
        0
    }
}

fn text_prefix(v: EntryVerdict) -> &'static str {
    match v {
        EntryVerdict::Ok | EntryVerdict::True => "OK",
        EntryVerdict::False => "FAIL",
        EntryVerdict::Inconclusive => "INCONCLUSIVE (budget)",
        EntryVerdict::Error => "ERROR",
    }
}

pub fn print_report(report: &JsonReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serialises");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for e in &report.statements {
                let _ = write!(s, "{} [{}] {} {}", text_prefix(e.verdict), e.id, e.kind, e.name);
                if e.verdict == EntryVerdict::True {
                    s.push_str(": true");
                }
                if !e.levels_used.is_empty() {
                    let levels: Vec<String> = e.levels_used.iter().map(|l| l.to_string()).collect();
                    let _ = write!(s, " (levels {})", levels.join(","));
                }
                if report.options.timing {
                    let _ = write!(s, " {} ms", e.millis);
                }
                s.push('\n');
                for c in &e.certificates {
                    let _ = writeln!(s, "    {c}");
                }
            }
            s
        }
    }
}
