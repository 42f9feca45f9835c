//! Profunctors between finite categories with values in rational vector
//! spaces, their composition by coends, shadows, duality witnesses and
//! the bicategorical trace.
//!
//! A profunctor `H: A ⇸ B` is a functor `B^op × A → Vect`. Its value
//! `H(b, a)` carries a covariant action of `A` (called the left action
//! here) and a contravariant action of `B` (the right action). Every coend
//! is kept as an explicit cokernel with its projection and section, so any
//! composite map through a coend is a concrete matrix.

mod duality;

use std::sync::Arc;

use thiserror::Error;

use crate::diagrams::VectDiagram;
use crate::exactalg::{int, AlgError, RatMatrix, Rational};
use crate::fincat::{generating_arrows, opposite, terminal, ArrowId, FinCat, ObjId};

pub use duality::{
    bicat_trace, coeff_vector_direct, dual_of_pointwise, dual_via_retract, representable, restriction_comparison,
    trace_matrix, DualityWitness, RestrictionIso,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("profunctor is not functorial: {0}")]
    NotFunctorial(String),
    #[error("the two actions do not commute at {0}")]
    ActionsDoNotCommute(String),
    #[error("middle categories do not match")]
    Mismatch,
    #[error("transformation is not natural at {0}")]
    NotNatural(String),
    #[error("triangle identity fails at {0}")]
    Triangle(String),
    #[error("evaluation does not factor through the coend at {0}")]
    NotWellDefined(String),
    #[error("retraction composite r∘s is not the identity")]
    NotARetract,
    #[error("invalid functor: {0}")]
    Functor(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// Functor `B^op × A → Vect`, stored with values indexed `b * |A| + a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profunctor {
    src: Arc<FinCat>,
    tgt: Arc<FinCat>,
    dims: Vec<usize>,
    /// `left[b][α]` for `α: a -> a'` maps `H(b,a) -> H(b,a')`.
    left: Vec<Vec<RatMatrix>>,
    /// `right[a][β]` for `β: b -> b'` maps `H(b',a) -> H(b,a)`.
    right: Vec<Vec<RatMatrix>>,
}

impl Profunctor {
    pub fn new(
        src: Arc<FinCat>,
        tgt: Arc<FinCat>,
        dims: Vec<usize>,
        left: Vec<Vec<RatMatrix>>,
        right: Vec<Vec<RatMatrix>>,
    ) -> Result<Self, ProfError> {
        let p = Profunctor { src, tgt, dims, left, right };
        p.check()?;
        Ok(p)
    }

    /// `(b, a) ↦ ℚ[A(b, a)]`, acted on by composition.
    pub fn unit(cat: Arc<FinCat>) -> Self {
        let n = cat.num_objects();
        let dims = (0..n * n).map(|i| cat.hom(i / n, i % n).len()).collect();
        let position = |b: ObjId, a: ObjId, f: ArrowId| cat.hom(b, a).iter().position(|&g| g == f).expect("in hom");
        let left = cat
            .objects()
            .map(|b| {
                cat.arrow_ids()
                    .map(|alpha| {
                        let (a, a2) = (cat.src(alpha), cat.dst(alpha));
                        let mut m = RatMatrix::zeros(cat.hom(b, a2).len(), cat.hom(b, a).len());
                        for (j, &g) in cat.hom(b, a).iter().enumerate() {
                            m[(position(b, a2, cat.compose(alpha, g)), j)] = int(1);
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        let right = cat
            .objects()
            .map(|a| {
                cat.arrow_ids()
                    .map(|beta| {
                        let (b, b2) = (cat.src(beta), cat.dst(beta));
                        let mut m = RatMatrix::zeros(cat.hom(b, a).len(), cat.hom(b2, a).len());
                        for (j, &g) in cat.hom(b2, a).iter().enumerate() {
                            m[(position(b, a, cat.compose(g, beta)), j)] = int(1);
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        Profunctor { src: cat.clone(), tgt: cat, dims, left, right }
    }

    /// A covariant diagram `X: A → Vect` as a profunctor `A ⇸ 1`.
    pub fn from_covariant(x: &VectDiagram) -> Self {
        let cat = x.cat().clone();
        let one = Arc::new(terminal());
        let dims = x.dims().to_vec();
        let left = vec![x.maps().to_vec()];
        let right = cat.objects().map(|a| vec![RatMatrix::identity(x.dim(a))]).collect();
        Profunctor { src: cat, tgt: one, dims, left, right }
    }

    /// A weight `Φ: A^op → Vect` (a diagram over `opposite(A)`) as a
    /// profunctor `1 ⇸ A`.
    pub fn from_weight(cat: Arc<FinCat>, phi: &VectDiagram) -> Result<Self, ProfError> {
        if **phi.cat() != opposite(&cat) {
            return Err(ProfError::Mismatch);
        }
        let one = Arc::new(terminal());
        let dims = phi.dims().to_vec();
        let left = cat.objects().map(|b| vec![RatMatrix::identity(phi.dim(b))]).collect();
        let right = vec![phi.maps().to_vec()];
        Ok(Profunctor { src: one, tgt: cat, dims, left, right })
    }

    /// Inverse of [`Profunctor::from_covariant`] for profunctors into `1`.
    pub fn to_covariant(&self) -> Option<VectDiagram> {
        if self.tgt.num_objects() != 1 || self.tgt.num_arrows() != 1 {
            return None;
        }
        VectDiagram::new(self.src.clone(), self.dims.clone(), self.left[0].clone()).ok()
    }

    /// Inverse of [`Profunctor::from_weight`] for profunctors out of `1`.
    pub fn to_weight(&self) -> Option<VectDiagram> {
        if self.src.num_objects() != 1 || self.src.num_arrows() != 1 {
            return None;
        }
        VectDiagram::new(Arc::new(opposite(&self.tgt)), self.dims.clone(), self.right[0].clone()).ok()
    }

    pub fn src(&self) -> &Arc<FinCat> {
        &self.src
    }

    pub fn tgt(&self) -> &Arc<FinCat> {
        &self.tgt
    }

    fn idx(&self, b: ObjId, a: ObjId) -> usize {
        b * self.src.num_objects() + a
    }

    pub fn dim(&self, b: ObjId, a: ObjId) -> usize {
        self.dims[self.idx(b, a)]
    }

    /// Action of `α: a -> a'` on `H(b, a)`.
    pub fn left(&self, b: ObjId, alpha: ArrowId) -> &RatMatrix {
        &self.left[b][alpha]
    }

    /// Action of `β: b -> b'`, mapping `H(b', a) -> H(b, a)`.
    pub fn right(&self, a: ObjId, beta: ArrowId) -> &RatMatrix {
        &self.right[a][beta]
    }

    pub fn check(&self) -> Result<(), ProfError> {
        let (a_cat, b_cat) = (&*self.src, &*self.tgt);
        let (na, nb) = (a_cat.num_objects(), b_cat.num_objects());
        if self.dims.len() != na * nb || self.left.len() != nb || self.right.len() != na {
            return Err(ProfError::Shape("component tables have the wrong size".into()));
        }
        for b in b_cat.objects() {
            if self.left[b].len() != a_cat.num_arrows() {
                return Err(ProfError::Shape("left action table".into()));
            }
            for alpha in a_cat.arrow_ids() {
                let want = (self.dim(b, a_cat.dst(alpha)), self.dim(b, a_cat.src(alpha)));
                if self.left[b][alpha].shape() != want {
                    return Err(ProfError::Shape(format!("left action of {}", a_cat.arrow_name(alpha))));
                }
            }
            for a in a_cat.objects() {
                if !self.left[b][a_cat.id(a)].is_identity() {
                    return Err(ProfError::NotFunctorial(format!("identity {}", a_cat.arrow_name(a_cat.id(a)))));
                }
            }
            for f in a_cat.arrow_ids() {
                for &g in a_cat.out_arrows(a_cat.dst(f)) {
                    if self.left[b][a_cat.compose(g, f)] != &self.left[b][g] * &self.left[b][f] {
                        return Err(ProfError::NotFunctorial(format!(
                            "{}∘{}",
                            a_cat.arrow_name(g),
                            a_cat.arrow_name(f)
                        )));
                    }
                }
            }
        }
        for a in a_cat.objects() {
            if self.right[a].len() != b_cat.num_arrows() {
                return Err(ProfError::Shape("right action table".into()));
            }
            for beta in b_cat.arrow_ids() {
                let want = (self.dim(b_cat.src(beta), a), self.dim(b_cat.dst(beta), a));
                if self.right[a][beta].shape() != want {
                    return Err(ProfError::Shape(format!("right action of {}", b_cat.arrow_name(beta))));
                }
            }
            for b in b_cat.objects() {
                if !self.right[a][b_cat.id(b)].is_identity() {
                    return Err(ProfError::NotFunctorial(format!("identity {}", b_cat.arrow_name(b_cat.id(b)))));
                }
            }
            for f in b_cat.arrow_ids() {
                for &g in b_cat.out_arrows(b_cat.dst(f)) {
                    if self.right[a][b_cat.compose(g, f)] != &self.right[a][f] * &self.right[a][g] {
                        return Err(ProfError::NotFunctorial(format!(
                            "{}∘{}",
                            b_cat.arrow_name(g),
                            b_cat.arrow_name(f)
                        )));
                    }
                }
            }
        }
        for alpha in generating_arrows(a_cat) {
            for beta in generating_arrows(b_cat) {
                let (a, a2) = (a_cat.src(alpha), a_cat.dst(alpha));
                let (b, b2) = (b_cat.src(beta), b_cat.dst(beta));
                let one = &self.left[b][alpha] * &self.right[a][beta];
                let two = &self.right[a2][beta] * &self.left[b2][alpha];
                if one != two {
                    return Err(ProfError::ActionsDoNotCommute(format!(
                        "({}, {})",
                        b_cat.arrow_name(beta),
                        a_cat.arrow_name(alpha)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity_map(&self) -> ProfMap {
        ProfMap { comps: self.dims.iter().map(|&d| RatMatrix::identity(d)).collect() }
    }
}

/// Natural transformation between profunctors with the same endpoints,
/// components indexed `b * |A| + a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfMap {
    pub comps: Vec<RatMatrix>,
}

impl ProfMap {
    pub fn at(&self, p: &Profunctor, b: ObjId, a: ObjId) -> &RatMatrix {
        &self.comps[p.idx(b, a)]
    }

    /// `self ∘ before`.
    pub fn after(&self, before: &ProfMap) -> ProfMap {
        ProfMap { comps: self.comps.iter().zip(&before.comps).map(|(g, f)| g * f).collect() }
    }

    /// Checks shapes and naturality in both variables.
    pub fn check(&self, src: &Profunctor, tgt: &Profunctor) -> Result<(), ProfError> {
        if src.src != tgt.src || src.tgt != tgt.tgt {
            return Err(ProfError::Mismatch);
        }
        let (a_cat, b_cat) = (&*src.src, &*src.tgt);
        if self.comps.len() != src.dims.len() {
            return Err(ProfError::Shape("one component per pair of objects".into()));
        }
        for (i, m) in self.comps.iter().enumerate() {
            if m.shape() != (tgt.dims[i], src.dims[i]) {
                return Err(ProfError::Shape(format!("component {i}")));
            }
        }
        for b in b_cat.objects() {
            for alpha in generating_arrows(a_cat) {
                let (a, a2) = (a_cat.src(alpha), a_cat.dst(alpha));
                if &self.comps[src.idx(b, a2)] * src.left(b, alpha) != tgt.left(b, alpha) * &self.comps[src.idx(b, a)] {
                    return Err(ProfError::NotNatural(a_cat.arrow_name(alpha).to_string()));
                }
            }
        }
        for a in a_cat.objects() {
            for beta in generating_arrows(b_cat) {
                let (b, b2) = (b_cat.src(beta), b_cat.dst(beta));
                if &self.comps[src.idx(b, a)] * src.right(a, beta) != tgt.right(a, beta) * &self.comps[src.idx(b2, a)] {
                    return Err(ProfError::NotNatural(b_cat.arrow_name(beta).to_string()));
                }
            }
        }
        Ok(())
    }
}

/// A coend presented as a cokernel of `⊕_m block_m` by the relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coend {
    pub proj: RatMatrix,
    pub sect: RatMatrix,
    pub relations: RatMatrix,
    /// Offsets of the blocks, one per object of the middle category, plus the total.
    pub offsets: Vec<usize>,
}

impl Coend {
    pub fn dim(&self) -> usize {
        self.proj.rows()
    }

    pub fn total(&self) -> usize {
        *self.offsets.last().expect("offsets")
    }

    fn from_relations(offsets: Vec<usize>, relations: RatMatrix) -> Coend {
        let q = relations.cokernel();
        Coend { proj: q.proj, sect: q.sect, relations, offsets }
    }
}

fn offsets(dims: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for d in dims {
        out.push(out.last().expect("nonempty") + d);
    }
    out
}

fn minus_one() -> Rational {
    int(-1)
}

/// Composite profunctor together with the coend data behind each value.
#[derive(Clone, Debug)]
pub struct Composite {
    pub prof: Profunctor,
    /// Indexed like the composite's values, `c * |A| + a`.
    pub coends: Vec<Coend>,
}

impl Composite {
    pub fn coend(&self, c: ObjId, a: ObjId) -> &Coend {
        &self.coends[self.prof.idx(c, a)]
    }
}

/// `(c, a) ↦ ∫^b H(b,a) ⊗ K(c,b)` for `H: A ⇸ B` and `K: B ⇸ C`.
pub fn compose_prof(h: &Profunctor, k: &Profunctor) -> Result<Composite, ProfError> {
    if h.tgt != k.src {
        return Err(ProfError::Mismatch);
    }
    let (a_cat, b_cat, c_cat) = (h.src.clone(), h.tgt.clone(), k.tgt.clone());
    let gens: Vec<ArrowId> = generating_arrows(&b_cat).into_iter().filter(|&g| !b_cat.is_identity(g)).collect();
    let mut coends = Vec::with_capacity(c_cat.num_objects() * a_cat.num_objects());
    for c in c_cat.objects() {
        for a in a_cat.objects() {
            let off = offsets(b_cat.objects().map(|b| h.dim(b, a) * k.dim(c, b)));
            let cols: usize = gens.iter().map(|&g| h.dim(b_cat.dst(g), a) * k.dim(c, b_cat.src(g))).sum();
            let mut rel = RatMatrix::zeros(off[b_cat.num_objects()], cols);
            let mut col = 0;
            for &beta in &gens {
                let (b, b2) = (b_cat.src(beta), b_cat.dst(beta));
                let via_h = h.right(a, beta).kron(&RatMatrix::identity(k.dim(c, b)));
                let via_k = RatMatrix::identity(h.dim(b2, a)).kron(k.left(c, beta));
                rel.set_block(off[b], col, &via_h);
                rel.add_block(off[b2], col, &via_k.scale(&minus_one()));
                col += via_h.cols();
            }
            coends.push(Coend::from_relations(off, rel));
        }
    }
    let na = a_cat.num_objects();
    let coend = |c: ObjId, a: ObjId| &coends[c * na + a];
    let dims = coends.iter().map(Coend::dim).collect();
    let left = c_cat
        .objects()
        .map(|c| {
            a_cat
                .arrow_ids()
                .map(|alpha| {
                    let (a, a2) = (a_cat.src(alpha), a_cat.dst(alpha));
                    let blocks: Vec<RatMatrix> =
                        b_cat.objects().map(|b| h.left(b, alpha).kron(&RatMatrix::identity(k.dim(c, b)))).collect();
                    let pre = RatMatrix::direct_sum(&blocks.iter().collect::<Vec<_>>());
                    &(&coend(c, a2).proj * &pre) * &coend(c, a).sect
                })
                .collect()
        })
        .collect();
    let right = a_cat
        .objects()
        .map(|a| {
            c_cat
                .arrow_ids()
                .map(|gamma| {
                    let (c, c2) = (c_cat.src(gamma), c_cat.dst(gamma));
                    let blocks: Vec<RatMatrix> =
                        b_cat.objects().map(|b| RatMatrix::identity(h.dim(b, a)).kron(k.right(b, gamma))).collect();
                    let pre = RatMatrix::direct_sum(&blocks.iter().collect::<Vec<_>>());
                    &(&coend(c, a).proj * &pre) * &coend(c2, a).sect
                })
                .collect()
        })
        .collect();
    let prof = Profunctor::new(a_cat, c_cat, dims, left, right)?;
    Ok(Composite { prof, coends })
}

/// `∫^a H(a, a)` as a quotient of `⊕_a H(a, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowSpace {
    pub proj: RatMatrix,
    pub sect: RatMatrix,
    pub offsets: Vec<usize>,
    /// For the unit profunctor, the least member of the class each basis vector stands for.
    pub class_basis: Option<Vec<ArrowId>>,
}

impl ShadowSpace {
    pub fn dim(&self) -> usize {
        self.proj.rows()
    }
}

fn shadow_relations(h: &Profunctor) -> (Vec<usize>, RatMatrix) {
    let cat = &*h.src;
    let off = offsets(cat.objects().map(|a| h.dim(a, a)));
    let gens: Vec<ArrowId> = generating_arrows(cat).into_iter().filter(|&g| !cat.is_identity(g)).collect();
    let cols: usize = gens.iter().map(|&g| h.dim(cat.dst(g), cat.src(g))).sum();
    let mut rel = RatMatrix::zeros(off[cat.num_objects()], cols);
    let mut col = 0;
    for &alpha in &gens {
        let (a, a2) = (cat.src(alpha), cat.dst(alpha));
        rel.set_block(off[a2], col, h.left(a2, alpha));
        rel.add_block(off[a], col, &h.right(a, alpha).scale(&minus_one()));
        col += h.dim(a2, a);
    }
    (off, rel)
}

/// Shadow of an endo-profunctor. The unit profunctor gets the basis of
/// conjugacy classes: each endomorphism projects to the indicator of its class.
pub fn shadow(h: &Profunctor) -> Result<ShadowSpace, ProfError> {
    if h.src != h.tgt {
        return Err(ProfError::Mismatch);
    }
    let (off, rel) = shadow_relations(h);
    if *h != Profunctor::unit(h.src.clone()) {
        let q = rel.cokernel();
        return Ok(ShadowSpace { proj: q.proj, sect: q.sect, offsets: off, class_basis: None });
    }
    let cat = &*h.src;
    let classes = cat.conjugacy_classes();
    let mut proj = RatMatrix::zeros(classes.len(), off[cat.num_objects()]);
    let mut sect = RatMatrix::zeros(off[cat.num_objects()], classes.len());
    for a in cat.objects() {
        for (j, &f) in cat.hom(a, a).iter().enumerate() {
            proj[(classes.class_of(f).expect("endomorphism"), off[a] + j)] = int(1);
        }
    }
    for (i, &f) in classes.reps().iter().enumerate() {
        let a = cat.src(f);
        let j = cat.hom(a, a).iter().position(|&g| g == f).expect("endomorphism");
        sect[(off[a] + j, i)] = int(1);
    }
    // the class indicator must present the same quotient as the relations
    assert!((&proj * &rel).is_zero(), "class projection kills the shadow relations");
    assert_eq!(rel.cokernel().dim(), classes.len(), "one shadow dimension per conjugacy class");
    Ok(ShadowSpace { proj, sect, offsets: off, class_basis: Some(classes.reps()) })
}

/// The conjugacy-class-indexed shadow of a category's unit profunctor.
pub fn shadow_unit(cat: Arc<FinCat>) -> ShadowSpace {
    shadow(&Profunctor::unit(cat)).expect("unit profunctor is an endo-profunctor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{bg, discrete, free_idempotent, span, FinGroup};

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn unit_is_valid_and_shadow_counts_classes() {
        for c in [discrete(2), free_idempotent(), bg(&FinGroup::symmetric(3)), span()] {
            let c = arc(c);
            let u = Profunctor::unit(c.clone());
            u.check().unwrap();
            let s = shadow(&u).unwrap();
            assert_eq!(s.dim(), c.conjugacy_classes().len());
        }
        assert_eq!(shadow_unit(arc(free_idempotent())).dim(), 2);
        assert_eq!(shadow_unit(arc(bg(&FinGroup::symmetric(3)))).dim(), 3);
    }

    #[test]
    fn unit_laws_on_dimensions() {
        let c = arc(span());
        let x = VectDiagram::representable(c.clone(), 0);
        let h = Profunctor::from_covariant(&x);
        let comp = compose_prof(&Profunctor::unit(c.clone()), &h).unwrap();
        assert_eq!(comp.prof.dims, h.dims);
        let one = h.tgt.clone();
        let comp = compose_prof(&h, &Profunctor::unit(one)).unwrap();
        assert_eq!(comp.prof.dims, h.dims);
    }

    #[test]
    fn coend_over_discrete_is_direct_sum() {
        let c = arc(discrete(3));
        let x = VectDiagram::new(
            c.clone(),
            vec![1, 2, 3],
            vec![RatMatrix::identity(1), RatMatrix::identity(2), RatMatrix::identity(3)],
        )
        .unwrap();
        let phi = VectDiagram::constant(arc(opposite(&c)), 1);
        let comp = compose_prof(&Profunctor::from_weight(c, &phi).unwrap(), &Profunctor::from_covariant(&x)).unwrap();
        assert_eq!(comp.prof.dims, vec![6]);
    }
}
