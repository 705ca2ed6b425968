use std::fmt;
use std::sync::Arc;

use crate::polyalg::{PolyContext, Polynomial};

/// A parsed session: statements in source order, every name resolved.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Session {
    pub statements: Vec<Statement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Ring {
        name: String,
        context: Arc<PolyContext>,
        relations: Vec<Polynomial>,
        def_ideal: Vec<Polynomial>,
    },
    Morphism {
        name: String,
        source: String,
        target: String,
        /// `(source variable, image)` in source variable order.
        assignments: Vec<(String, Polynomial)>,
    },
    Check {
        kind: CheckKind,
        subject: String,
        /// `with` arguments (`universal` only).
        with: Vec<String>,
        level: Option<u32>,
    },
    Compute {
        kind: ComputeKind,
        args: Vec<String>,
        /// Localising element (`localisation` only).
        at: Option<Polynomial>,
        level: Option<u32>,
        bind: Option<String>,
    },
    Set {
        option: SessionOption,
        value: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Adic,
    Surjective,
    Thickening,
    Ffp,
    Universal,
    Idempotent,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Adic,
        CheckKind::Surjective,
        CheckKind::Thickening,
        CheckKind::Ffp,
        CheckKind::Universal,
        CheckKind::Idempotent,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            CheckKind::Adic => "adic",
            CheckKind::Surjective => "surjective",
            CheckKind::Thickening => "thickening",
            CheckKind::Ffp => "ffp",
            CheckKind::Universal => "universal",
            CheckKind::Idempotent => "idempotent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComputeKind {
    Neighbourhood,
    Tensor,
    Localisation,
    Diagonal,
    Truncation,
}

impl ComputeKind {
    pub const ALL: [ComputeKind; 5] = [
        ComputeKind::Neighbourhood,
        ComputeKind::Tensor,
        ComputeKind::Localisation,
        ComputeKind::Diagonal,
        ComputeKind::Truncation,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            ComputeKind::Neighbourhood => "neighbourhood",
            ComputeKind::Tensor => "tensor",
            ComputeKind::Localisation => "localisation",
            ComputeKind::Diagonal => "diagonal",
            ComputeKind::Truncation => "truncation",
        }
    }

    /// Suffixes of the morphism names bound next to the ring by
    /// `compute ... as NAME`.
    pub fn bound_morphisms(self) -> &'static [&'static str] {
        match self {
            ComputeKind::Neighbourhood => &["to", "from"],
            ComputeKind::Tensor => &["psi", "phi"],
            ComputeKind::Localisation => &["loc"],
            ComputeKind::Diagonal => &["diag"],
            ComputeKind::Truncation => &[],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SessionOption {
    Cap,
    Budget,
}

impl SessionOption {
    pub fn keyword(self) -> &'static str {
        match self {
            SessionOption::Cap => "cap",
            SessionOption::Budget => "budget",
        }
    }
}

impl Statement {
    /// The `kind` field of the report entry.
    pub fn kind_label(&self) -> String {
        match self {
            Statement::Ring { .. } => "ring".into(),
            Statement::Morphism { .. } => "morphism".into(),
            Statement::Check { kind, .. } => format!("check {}", kind.keyword()),
            Statement::Compute { kind, .. } => format!("compute {}", kind.keyword()),
            Statement::Set { .. } => "set".into(),
        }
    }

    /// The `name` field of the report entry.
    pub fn subject(&self) -> String {
        match self {
            Statement::Ring { name, .. } | Statement::Morphism { name, .. } => name.clone(),
            Statement::Check { subject, .. } => subject.clone(),
            Statement::Compute { args, bind, .. } => bind.clone().unwrap_or_else(|| args.join(", ")),
            Statement::Set { option, .. } => option.keyword().into(),
        }
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Ring {
                name,
                context,
                relations,
                def_ideal,
            } => {
                write!(f, "ring {name} = {}[{}]", context.field(), context.variables().join(","))?;
                if !relations.is_empty() {
                    write!(f, " / ({})", join(relations))?;
                }
                if def_ideal.is_empty() {
                    write!(f, " adic (0);")
                } else {
                    write!(f, " adic ({});", join(def_ideal))
                }
            }
            Statement::Morphism {
                name,
                source,
                target,
                assignments,
            } => {
                let body: Vec<String> = assignments.iter().map(|(v, p)| format!("{v} -> {p}")).collect();
                if body.is_empty() {
                    write!(f, "morphism {name} : {source} -> {target} {{ }};")
                } else {
                    write!(f, "morphism {name} : {source} -> {target} {{ {} }};", body.join(", "))
                }
            }
            Statement::Check {
                kind,
                subject,
                with,
                level,
            } => {
                write!(f, "check {} {subject}", kind.keyword())?;
                if !with.is_empty() {
                    write!(f, " with {}", with.join(", "))?;
                }
                if let Some(l) = level {
                    write!(f, " @ level {l}")?;
                }
                write!(f, ";")
            }
            Statement::Compute {
                kind,
                args,
                at,
                level,
                bind,
            } => {
                write!(f, "compute {} {}", kind.keyword(), args.join(", "))?;
                if let Some(p) = at {
                    write!(f, " at ({p})")?;
                }
                if let Some(l) = level {
                    write!(f, " @ level {l}")?;
                }
                if let Some(b) = bind {
                    write!(f, " as {b}")?;
                }
                write!(f, ";")
            }
            Statement::Set { option, value } => write!(f, "set {} = {value};", option.keyword()),
        }
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
