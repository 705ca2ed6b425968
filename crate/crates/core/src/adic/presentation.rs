use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::polyalg::{same_context, FieldSpec, PolyContext, Polynomial};

/// The `I`-adic completion of `k[x]/R`, held as the data `(x, R, I)`.
#[derive(Clone)]
pub struct AdicPresentation {
    inner: Arc<Inner>,
}

struct Inner {
    ctx: Arc<PolyContext>,
    relations: Ideal,
    def_ideal: Ideal,
    reduction: OnceLock<Ideal>,
}

impl AdicPresentation {
    pub fn new(relations: Ideal, def_ideal: Ideal) -> Result<Self> {
        if !same_context(relations.context(), def_ideal.context()) {
            return Err(Error::ContextMismatch);
        }
        Ok(AdicPresentation {
            inner: Arc::new(Inner {
                ctx: relations.context().clone(),
                relations,
                def_ideal,
                reduction: OnceLock::new(),
            }),
        })
    }

    /// Discrete ring `k[x]/R`, ideal of definition zero.
    pub fn discrete(relations: Ideal) -> Self {
        let zero = Ideal::zero(relations.context());
        AdicPresentation::new(relations, zero).expect("same context")
    }

    /// `k[vars]/(relations)` completed along `(def_ideal)`, all given as text.
    pub fn parse(field: FieldSpec, vars: &[&str], relations: &[&str], def_ideal: &[&str]) -> Result<Self> {
        let ctx = PolyContext::new(vars.iter().copied(), field)?;
        AdicPresentation::new(Ideal::parse(&ctx, relations)?, Ideal::parse(&ctx, def_ideal)?)
    }

    pub fn context(&self) -> &Arc<PolyContext> {
        &self.inner.ctx
    }

    pub fn relations(&self) -> &Ideal {
        &self.inner.relations
    }

    pub fn def_ideal(&self) -> &Ideal {
        &self.inner.def_ideal
    }

    pub fn field(&self) -> FieldSpec {
        self.inner.ctx.field()
    }

    pub fn nvars(&self) -> usize {
        self.inner.ctx.nvars()
    }

    pub fn is_discrete(&self) -> bool {
        self.inner.def_ideal.is_zero_ideal()
    }

    /// `R + I`, whose radical cuts out the reduction `A_red`.
    pub fn reduction_ideal(&self) -> &Ideal {
        self.inner.reduction.get_or_init(|| self.inner.relations.sum(&self.inner.def_ideal).expect("same context"))
    }

    /// Same ring with another ideal of definition.
    pub fn with_def_ideal(&self, def_ideal: Ideal) -> Result<Self> {
        AdicPresentation::new(self.inner.relations.clone(), def_ideal)
    }

    /// The completion is the zero ring exactly when `1 ∈ R + I`.
    pub fn is_zero_ring(&self, budget: &Budget) -> Result<bool> {
        self.reduction_ideal().is_unit(budget)
    }

    pub fn poly(&self, text: &str) -> Result<Polynomial> {
        Polynomial::parse(&self.inner.ctx, text)
    }

    /// Same context and the same generator lists.
    pub fn identical(&self, other: &AdicPresentation) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (same_context(self.context(), other.context())
                && self.relations().generators() == other.relations().generators()
                && self.def_ideal().generators() == other.def_ideal().generators())
    }
}

impl fmt::Debug for AdicPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdicPresentation({self})")
    }
}

/// Session syntax: `QQ[x,y] / (y^2 - x^3) adic (x, y)`.
impl fmt::Display for AdicPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field(), self.inner.ctx.variables().join(","))?;
        if !self.inner.relations.is_zero_ideal() {
            write!(f, " / ({})", self.inner.relations)?;
        }
        write!(f, " adic ({})", self.inner.def_ideal)
    }
}

/// The discrete ring `A / I^{n+1} = k[x] / (R + I^{n+1})`.
#[derive(Debug, Clone)]
pub struct TruncatedQuotient {
    base: AdicPresentation,
    level: u32,
    quotient: Ideal,
}

impl TruncatedQuotient {
    pub fn base(&self) -> &AdicPresentation {
        &self.base
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn quotient_ideal(&self) -> &Ideal {
        &self.quotient
    }

    pub fn is_zero_ring(&self, budget: &Budget) -> Result<bool> {
        self.quotient.is_unit(budget)
    }

    /// The truncation as a discrete presentation.
    pub fn as_presentation(&self) -> AdicPresentation {
        AdicPresentation::discrete(self.quotient.clone())
    }
}

pub fn truncate(a: &AdicPresentation, n: u32) -> TruncatedQuotient {
    let quotient = if a.is_discrete() {
        a.relations().clone()
    } else {
        a.relations().sum(&a.def_ideal().power(n + 1)).expect("same context")
    };
    TruncatedQuotient {
        base: a.clone(),
        level: n,
        quotient,
    }
}
