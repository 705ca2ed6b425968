use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::adic::presentation::AdicPresentation;
use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal, PolyRingMap};
use crate::polyalg::{same_context, Polynomial};

/// A morphism of presented adic rings, given by polynomial images of the
/// source variables.
#[derive(Clone)]
pub struct AdicMorphism {
    inner: Arc<Inner>,
}

struct Inner {
    source: AdicPresentation,
    target: AdicPresentation,
    images: Vec<Polynomial>,
    ring_map: OnceLock<PolyRingMap>,
}

impl AdicMorphism {
    /// Validated construction: the images must respect the relations and
    /// send the ideal of definition into `rad(S + J)`.
    pub fn new(
        source: &AdicPresentation,
        target: &AdicPresentation,
        images: Vec<Polynomial>,
        budget: &Budget,
    ) -> Result<Self> {
        let f = AdicMorphism::ring_map(source, target, images, budget)?;
        f.check_continuous(budget)?;
        Ok(f)
    }

    /// A ring map of presentations that is well defined but not checked for
    /// continuity. [`is_adic`](crate::adic::is_adic) still decides
    /// continuity for such maps.
    pub fn ring_map(
        source: &AdicPresentation,
        target: &AdicPresentation,
        images: Vec<Polynomial>,
        budget: &Budget,
    ) -> Result<Self> {
        let f = AdicMorphism::from_parts(source, target, images)?;
        f.check_well_defined(budget)?;
        Ok(f)
    }

    /// Images given as text in the target's variables.
    pub fn parse(source: &AdicPresentation, target: &AdicPresentation, images: &[&str], budget: &Budget) -> Result<Self> {
        let images = images.iter().map(|s| target.poly(s)).collect::<Result<Vec<_>>>()?;
        AdicMorphism::new(source, target, images, budget)
    }

    /// No validation beyond shapes; for maps valid by construction.
    pub(crate) fn from_parts(source: &AdicPresentation, target: &AdicPresentation, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::Precondition(format!(
                "{} images for {} source variables",
                images.len(),
                source.nvars()
            )));
        }
        if source.field() != target.field() || images.iter().any(|p| !same_context(p.context(), target.context())) {
            return Err(Error::ContextMismatch);
        }
        Ok(AdicMorphism {
            inner: Arc::new(Inner {
                source: source.clone(),
                target: target.clone(),
                images,
                ring_map: OnceLock::new(),
            }),
        })
    }

    pub fn identity(a: &AdicPresentation) -> Self {
        let images = (0..a.nvars()).map(|i| Polynomial::var(a.context(), i)).collect();
        AdicMorphism::from_parts(a, a, images).expect("identity")
    }

    pub fn source(&self) -> &AdicPresentation {
        &self.inner.source
    }

    pub fn target(&self) -> &AdicPresentation {
        &self.inner.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.inner.images
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if !same_context(p.context(), self.source().context()) {
            return Err(Error::ContextMismatch);
        }
        p.substitute(&self.inner.images, self.target().context())
    }

    /// `φ(I)·k[y]`, generated by the images of the generators of `I`.
    pub fn extend(&self, i: &Ideal) -> Result<Ideal> {
        if !same_context(i.context(), self.source().context()) {
            return Err(Error::ContextMismatch);
        }
        i.substitute(&self.inner.images, self.target().context())
    }

    /// The underlying map `k[x] → k[y]/S` of presentations.
    pub fn poly_map(&self) -> &PolyRingMap {
        self.inner.ring_map.get_or_init(|| {
            PolyRingMap::new(
                self.source().context(),
                self.target().context(),
                self.target().relations().clone(),
                self.inner.images.clone(),
            )
            .expect("checked at construction")
        })
    }

    /// Presentation-level kernel `ker(k[x] → k[y]/S)`.
    pub fn kernel(&self, budget: &Budget) -> Result<Ideal> {
        self.poly_map().kernel(budget)
    }

    fn check_well_defined(&self, budget: &Budget) -> Result<()> {
        let s = self.target().relations();
        for r in self.source().relations().generators() {
            let img = self.apply(r)?;
            if !s.contains(&img, budget)? {
                return Err(Error::NotWellDefined(format!("relation {r} maps to {img} ∉ ({s})")));
            }
        }
        Ok(())
    }

    fn check_continuous(&self, budget: &Budget) -> Result<()> {
        let sj = self.target().reduction_ideal();
        for g in self.source().def_ideal().generators() {
            let img = self.apply(g)?;
            if !sj.radical_contains(&img, budget)? {
                return Err(Error::NotContinuous(format!("{g} maps to {img} ∉ rad({sj})")));
            }
        }
        Ok(())
    }

    /// Images agree modulo the target relations.
    pub fn same_as(&self, other: &AdicMorphism, budget: &Budget) -> Result<bool> {
        if !self.source().identical(other.source()) || !same_context(self.target().context(), other.target().context()) {
            return Ok(false);
        }
        let s = self.target().relations();
        for (a, b) in self.images().iter().zip(other.images()) {
            if !s.contains(&(a - b), budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `ψ ∘ φ`, with well-definedness re-validated.
pub fn compose(psi: &AdicMorphism, phi: &AdicMorphism, budget: &Budget) -> Result<AdicMorphism> {
    if !phi.target().identical(psi.source()) {
        return Err(Error::Precondition("middle presentations differ".into()));
    }
    let images = phi.images().iter().map(|p| psi.apply(p)).collect::<Result<Vec<_>>>()?;
    AdicMorphism::ring_map(phi.source(), psi.target(), images, budget)
}

impl fmt::Debug for AdicMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdicMorphism({self})")
    }
}

/// `{ x -> y^2, y -> y }`.
impl fmt::Display for AdicMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .source()
            .context()
            .variables()
            .iter()
            .zip(self.images())
            .map(|(v, p)| format!("{v} -> {p}"))
            .collect();
        if parts.is_empty() {
            write!(f, "{{ }}")
        } else {
            write!(f, "{{ {} }}", parts.join(", "))
        }
    }
}
