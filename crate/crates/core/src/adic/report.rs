use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyalg::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Poly(Polynomial),
    Int(u64),
    Polys(Vec<Polynomial>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Poly(p) => write!(f, "{p}"),
            Witness::Int(n) => write!(f, "{n}"),
            Witness::Polys(ps) => {
                let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

/// One piece of evidence behind a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `element ∈ ideal` or `element ∈ rad(ideal)`, or the negation.
    Membership {
        element: Polynomial,
        ideal: String,
        radical: bool,
        holds: bool,
    },
    Value { label: String, value: Witness },
    Note(String),
}

impl Certificate {
    pub fn member(element: &Polynomial, ideal: &Ideal, radical: bool, holds: bool) -> Self {
        Certificate::Membership {
            element: element.clone(),
            ideal: ideal.to_string(),
            radical,
            holds,
        }
    }

    pub fn value(label: impl Into<String>, value: Witness) -> Self {
        Certificate::Value {
            label: label.into(),
            value,
        }
    }

    pub fn note(text: impl Into<String>) -> Self {
        Certificate::Note(text.into())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Membership {
                element,
                ideal,
                radical,
                holds,
            } => {
                let rel = if *holds { "∈" } else { "∉" };
                if *radical {
                    write!(f, "{element} {rel} rad({ideal})")
                } else {
                    write!(f, "{element} {rel} ({ideal})")
                }
            }
            Certificate::Value { label, value } => write!(f, "{label} = {value}"),
            Certificate::Note(s) => f.write_str(s),
        }
    }
}

/// Outcome of a check: the verdict, the evidence, and the truncation levels
/// that were consulted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictReport {
    pub verdict: Verdict,
    pub certificates: Vec<Certificate>,
    pub levels_used: Vec<u32>,
    /// Some ring involved collapsed to the zero ring.
    pub zero_ring: bool,
}

impl VerdictReport {
    pub fn new(verdict: Verdict) -> Self {
        VerdictReport {
            verdict,
            certificates: Vec::new(),
            levels_used: Vec::new(),
            zero_ring: false,
        }
    }

    pub fn inconclusive(reason: impl Into<String>) -> Self {
        let mut r = VerdictReport::new(Verdict::Inconclusive);
        r.certificates.push(Certificate::note(reason));
        r
    }

    pub fn is_true(&self) -> bool {
        self.verdict == Verdict::True
    }

    pub fn is_false(&self) -> bool {
        self.verdict == Verdict::False
    }

    pub fn is_inconclusive(&self) -> bool {
        self.verdict == Verdict::Inconclusive
    }

    pub fn push(&mut self, c: Certificate) {
        self.certificates.push(c);
    }

    pub fn with(mut self, c: Certificate) -> Self {
        self.certificates.push(c);
        self
    }

    pub(crate) fn use_levels(&mut self, levels: impl IntoIterator<Item = u32>) {
        for l in levels {
            if !self.levels_used.contains(&l) {
                self.levels_used.push(l);
            }
        }
        self.levels_used.sort_unstable();
    }

    /// Append another report's evidence (not its verdict).
    pub(crate) fn absorb(&mut self, other: &VerdictReport) {
        self.certificates.extend(other.certificates.iter().cloned());
        self.use_levels(other.levels_used.iter().copied());
        self.zero_ring |= other.zero_ring;
    }

    pub fn certificate_strings(&self) -> Vec<String> {
        self.certificates.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verdict)?;
        for c in &self.certificates {
            write!(f, "\n  {c}")?;
        }
        Ok(())
    }
}

/// Budget exhaustion becomes an inconclusive report; other errors pass.
pub(crate) fn settle(r: Result<VerdictReport>) -> Result<VerdictReport> {
    match r {
        Err(Error::Inconclusive(why)) => Ok(VerdictReport::inconclusive(why)),
        other => other,
    }
}
