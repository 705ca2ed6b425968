use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::buchberger::{normal_form, Budget};
use crate::groebner::ideal::Ideal;
use crate::polyalg::{same_context, MonomialOrder, PolyContext, Polynomial};

/// `k[source] → k[target] / relations`, given by the images of the source
/// variables.
#[derive(Debug, Clone)]
pub struct PolyRingMap {
    source: Arc<PolyContext>,
    target: Arc<PolyContext>,
    relations: Ideal,
    images: Vec<Polynomial>,
    graph: Arc<OnceLock<(Arc<PolyContext>, Ideal)>>,
}

impl PolyRingMap {
    pub fn new(
        source: &Arc<PolyContext>,
        target: &Arc<PolyContext>,
        relations: Ideal,
        images: Vec<Polynomial>,
    ) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::Precondition(format!(
                "{} images for {} source variables",
                images.len(),
                source.nvars()
            )));
        }
        if !same_context(relations.context(), target) || images.iter().any(|p| !same_context(p.context(), target)) {
            return Err(Error::ContextMismatch);
        }
        if source.field() != target.field() {
            return Err(Error::ContextMismatch);
        }
        Ok(PolyRingMap {
            source: source.clone(),
            target: target.clone(),
            relations,
            images,
            graph: Arc::default(),
        })
    }

    pub fn source(&self) -> &Arc<PolyContext> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PolyContext> {
        &self.target
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if !same_context(p.context(), &self.source) {
            return Err(Error::ContextMismatch);
        }
        p.substitute(&self.images, &self.target)
    }

    /// Joint context `[target vars..., source vars...]` (internal names) and
    /// the graph ideal `relations + ⟨xᵢ - image(xᵢ)⟩` in it.
    fn graph(&self) -> &(Arc<PolyContext>, Ideal) {
        self.graph.get_or_init(|| {
            let m = self.target.nvars();
            let n = self.source.nvars();
            let names = (0..m).map(|i| format!("_y{i}")).chain((0..n).map(|i| format!("_x{i}")));
            let joint = PolyContext::new(names, self.target.field()).expect("distinct internal names");
            let tmap: Vec<usize> = (0..m).collect();
            let mut gens: Vec<Polynomial> = self.relations.generators().iter().map(|r| r.embed(&joint, &tmap)).collect();
            for (i, img) in self.images.iter().enumerate() {
                gens.push(&Polynomial::var(&joint, m + i) - &img.embed(&joint, &tmap));
            }
            let ideal = Ideal::new(&joint, gens).expect("joint context");
            (joint, ideal)
        })
    }

    /// Kernel of `k[source] → k[target]/relations`.
    pub fn kernel(&self, budget: &Budget) -> Result<Ideal> {
        let (_, graph) = self.graph();
        graph.eliminate_leading(self.target.nvars(), &self.source, budget)
    }

    /// Preimage of `J + relations` in `k[source]`.
    pub fn contract(&self, j: &Ideal, budget: &Budget) -> Result<Ideal> {
        if !same_context(j.context(), &self.target) {
            return Err(Error::ContextMismatch);
        }
        if j.is_zero_ideal() {
            return self.kernel(budget);
        }
        let (joint, graph) = self.graph();
        let tmap: Vec<usize> = (0..self.target.nvars()).collect();
        let ideal = graph.sum(&j.embed(joint, &tmap))?;
        ideal.eliminate_leading(self.target.nvars(), &self.source, budget)
    }

    /// Is `b` (mod relations) in the subalgebra generated by the images?
    /// On success the witness is a source polynomial `w` with
    /// `w(images) ≡ b`.
    pub fn image_membership(&self, b: &Polynomial, budget: &Budget) -> Result<Option<Polynomial>> {
        Ok(self.image_membership_all(std::slice::from_ref(b), budget)?.pop().unwrap())
    }

    /// [`image_membership`](Self::image_membership) for several targets,
    /// sharing one elimination basis.
    pub fn image_membership_all(&self, bs: &[Polynomial], budget: &Budget) -> Result<Vec<Option<Polynomial>>> {
        if bs.iter().any(|b| !same_context(b.context(), &self.target)) {
            return Err(Error::ContextMismatch);
        }
        let (joint, graph) = self.graph();
        let m = self.target.nvars();
        let ord = MonomialOrder::Block { split: m };
        let basis = graph.basis(ord, budget)?;
        let tmap: Vec<usize> = (0..m).collect();
        let back: Vec<Polynomial> = (0..joint.nvars())
            .map(|i| {
                if i < m {
                    Polynomial::zero(&self.source)
                } else {
                    Polynomial::var(&self.source, i - m)
                }
            })
            .collect();
        bs.iter()
            .map(|b| {
                let nf = normal_form(&b.embed(joint, &tmap), &basis, ord)?;
                if (0..m).any(|i| nf.uses_variable(i)) {
                    Ok(None)
                } else {
                    Ok(Some(nf.substitute(&back, &self.source)?))
                }
            })
            .collect()
    }
}
