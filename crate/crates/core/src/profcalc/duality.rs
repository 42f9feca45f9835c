use std::sync::Arc;

use super::{compose_prof, shadow, shadow_unit, Composite, ProfError, ProfMap, Profunctor};
use crate::coeffs::CoeffVector;
use crate::diagrams::VectDiagram;
use crate::exactalg::{idempotent_image, int, RatMatrix, Rational};
use crate::fincat::{terminal, ArrowId, FinCat, Functor, ObjId};

/// A dual pair `M: A ⇸ B`, `N: B ⇸ A` with coevaluation `η: U_A → N⊙M`
/// and evaluation `ε: M⊙N → U_B`.
///
/// `N⊙M` is `compose_prof(m, n)` with values `∫^b M(b,a) ⊗ N(a',b)` and
/// `M⊙N` is `compose_prof(n, m)` with values `∫^a N(a,b) ⊗ M(b',a)`. Both
/// `eta` and `eps` are stored on the direct sums before the coend is taken,
/// indexed like the composite's values.
#[derive(Clone, Debug)]
pub struct DualityWitness {
    pub m: Profunctor,
    pub n: Profunctor,
    pub nm: Composite,
    pub mn: Composite,
    pub eta: Vec<RatMatrix>,
    pub eps: Vec<RatMatrix>,
}

fn position(hom: &[ArrowId], f: ArrowId) -> usize {
    hom.iter().position(|&g| g == f).expect("arrow in hom-set")
}

/// Matrix of `g ↦ op(g)` from `ℚ[from]` to `ℚ[to]`.
fn hom_action(from: &[ArrowId], to: &[ArrowId], op: impl Fn(ArrowId) -> ArrowId) -> RatMatrix {
    let mut m = RatMatrix::zeros(to.len(), from.len());
    for (j, &g) in from.iter().enumerate() {
        m[(position(to, op(g)), j)] = int(1);
    }
    m
}

fn basis(n: usize, i: usize) -> RatMatrix {
    let mut v = RatMatrix::zeros(n, 1);
    v[(i, 0)] = int(1);
    v
}

fn block_diag(blocks: &[RatMatrix]) -> RatMatrix {
    RatMatrix::direct_sum(&blocks.iter().collect::<Vec<_>>())
}

/// Permutation taking `u ⊗ v` to `v ⊗ u` for `u ∈ ℚ^p`, `v ∈ ℚ^q`.
fn swap(p: usize, q: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(p * q, p * q);
    for i in 0..p {
        for j in 0..q {
            m[(j * p + i, i * q + j)] = int(1);
        }
    }
    m
}

fn is_point(cat: &FinCat) -> bool {
    cat.num_objects() == 1 && cat.num_arrows() == 1
}

impl DualityWitness {
    /// Builds the composites and verifies naturality of both structure maps,
    /// that `ε` is well defined on the coend, and both triangle identities.
    pub fn new(m: Profunctor, n: Profunctor, eta: Vec<RatMatrix>, eps: Vec<RatMatrix>) -> Result<Self, ProfError> {
        if m.src != n.tgt || m.tgt != n.src {
            return Err(ProfError::Mismatch);
        }
        let nm = compose_prof(&m, &n)?;
        let mn = compose_prof(&n, &m)?;
        let unit_a = Profunctor::unit(m.src.clone());
        let unit_b = Profunctor::unit(m.tgt.clone());
        if eta.len() != nm.coends.len() || eps.len() != mn.coends.len() {
            return Err(ProfError::Shape("one structure component per pair of objects".into()));
        }
        for (i, e) in eta.iter().enumerate() {
            if e.shape() != (nm.coends[i].total(), unit_a.dims[i]) {
                return Err(ProfError::Shape(format!("coevaluation component {i}")));
            }
        }
        for (i, e) in eps.iter().enumerate() {
            if e.shape() != (unit_b.dims[i], mn.coends[i].total()) {
                return Err(ProfError::Shape(format!("evaluation component {i}")));
            }
            if !(e * &mn.coends[i].relations).is_zero() {
                return Err(ProfError::NotWellDefined(format!("evaluation component {i}")));
            }
        }
        let w = DualityWitness { m, n, nm, mn, eta, eps };
        w.eta_bar().check(&unit_a, &w.nm.prof)?;
        w.eps_bar().check(&w.mn.prof, &unit_b)?;
        w.check_triangles()?;
        Ok(w)
    }

    /// Coevaluation with values in the coend coordinates.
    pub fn eta_bar(&self) -> ProfMap {
        ProfMap { comps: self.eta.iter().zip(&self.nm.coends).map(|(e, c)| &c.proj * e).collect() }
    }

    /// Evaluation read on the coend coordinates.
    pub fn eps_bar(&self) -> ProfMap {
        ProfMap { comps: self.eps.iter().zip(&self.mn.coends).map(|(e, c)| e * &c.sect).collect() }
    }

    fn a_cat(&self) -> &FinCat {
        &self.m.src
    }

    fn b_cat(&self) -> &FinCat {
        &self.m.tgt
    }

    /// Lift of `η(id_a)` in `⊕_b M(b,a) ⊗ N(a,b)`.
    fn unit_element(&self, a: ObjId) -> RatMatrix {
        let cat = self.a_cat();
        let na = cat.num_objects();
        let e = basis(cat.hom(a, a).len(), position(cat.hom(a, a), cat.id(a)));
        &self.eta[a * na + a] * &e
    }

    /// `M ≅ M⊙U_A → M⊙N⊙M → U_B⊙M ≅ M` at `(b, a)`.
    fn first_triangle(&self, b: ObjId, a: ObjId) -> RatMatrix {
        let b_cat = self.b_cat();
        let nb = b_cat.num_objects();
        let d = self.m.dim(b, a);
        let w = self.unit_element(a);
        let w_off = &self.nm.coend(a, a).offsets;
        let mut out = RatMatrix::zeros(d, d);
        for b2 in b_cat.objects() {
            let (m2, n2) = (self.m.dim(b2, a), self.n.dim(a, b2));
            if m2 * n2 == 0 {
                continue;
            }
            let wb = w.submatrix(w_off[b2], 0, m2 * n2, 1);
            let ev = &self.eps[b * nb + b2];
            let ev_off = self.mn.coend(b, b2).offsets[a];
            let lifted = wb.kron(&RatMatrix::identity(d));
            for (k, &beta) in b_cat.hom(b, b2).iter().enumerate() {
                let row = ev.submatrix(k, ev_off, 1, n2 * d);
                let contracted = &RatMatrix::identity(m2).kron(&row) * &lifted;
                out = &out + &(self.m.right(a, beta) * &contracted);
            }
        }
        out
    }

    /// `N ≅ U_A⊙N → N⊙M⊙N → N⊙U_B ≅ N` at `(a, b)`, with an optional
    /// endomorphism of `M` inserted in the middle; with `g = s∘r` this is the
    /// mate of a retraction.
    fn second_triangle(&self, a: ObjId, b: ObjId, g: Option<&ProfMap>) -> RatMatrix {
        let b_cat = self.b_cat();
        let nb = b_cat.num_objects();
        let d = self.n.dim(a, b);
        let w = self.unit_element(a);
        let w_off = &self.nm.coend(a, a).offsets;
        let mut out = RatMatrix::zeros(d, d);
        for b2 in b_cat.objects() {
            let (m2, n2) = (self.m.dim(b2, a), self.n.dim(a, b2));
            if m2 * n2 == 0 {
                continue;
            }
            let mut wb = w.submatrix(w_off[b2], 0, m2 * n2, 1);
            if let Some(g) = g {
                wb = &g.at(&self.m, b2, a).kron(&RatMatrix::identity(n2)) * &wb;
            }
            let ev = &self.eps[b2 * nb + b];
            let ev_off = self.mn.coend(b2, b).offsets[a];
            let lifted = RatMatrix::identity(d).kron(&wb);
            for (k, &beta) in b_cat.hom(b2, b).iter().enumerate() {
                let row = ev.submatrix(k, ev_off, 1, d * m2);
                let contracted = &row.kron(&RatMatrix::identity(n2)) * &lifted;
                out = &out + &(self.n.left(a, beta) * &contracted);
            }
        }
        out
    }

    pub fn check_triangles(&self) -> Result<(), ProfError> {
        let (a_cat, b_cat) = (self.a_cat(), self.b_cat());
        for b in b_cat.objects() {
            for a in a_cat.objects() {
                if !self.first_triangle(b, a).is_identity() {
                    return Err(ProfError::Triangle(format!("M({}, {})", b_cat.object_name(b), a_cat.object_name(a))));
                }
                if !self.second_triangle(a, b, None).is_identity() {
                    return Err(ProfError::Triangle(format!("N({}, {})", a_cat.object_name(a), b_cat.object_name(b))));
                }
            }
        }
        Ok(())
    }
}

/// Trace of an endomorphism `f` of the dualizable `M`, as a matrix from the
/// shadow of `A` to the shadow of `B`, both in their conjugacy-class bases:
/// coevaluation, then `N⊙f`, then the cyclic isomorphism
/// `⟨⟨N⊙M⟩⟩ ≅ ⟨⟨M⊙N⟩⟩`, then evaluation.
pub fn trace_matrix(w: &DualityWitness, f: &ProfMap) -> Result<RatMatrix, ProfError> {
    f.check(&w.m, &w.m)?;
    let (a_cat, b_cat) = (w.m.src.clone(), w.m.tgt.clone());
    let (na, nb) = (a_cat.num_objects(), b_cat.num_objects());
    let sh_a = shadow_unit(a_cat.clone());
    let sh_b = shadow_unit(b_cat.clone());
    let sh_nm = shadow(&w.nm.prof)?;
    let sh_mn = shadow(&w.mn.prof)?;

    let coev: Vec<RatMatrix> = (0..na).map(|a| &w.nm.coend(a, a).proj * &w.eta[a * na + a]).collect();
    let coev = &(&sh_nm.proj * &block_diag(&coev)) * &sh_a.sect;

    let act: Vec<RatMatrix> = (0..na)
        .map(|a| {
            let c = w.nm.coend(a, a);
            let pre: Vec<RatMatrix> =
                (0..nb).map(|b| f.at(&w.m, b, a).kron(&RatMatrix::identity(w.n.dim(a, b)))).collect();
            &(&c.proj * &block_diag(&pre)) * &c.sect
        })
        .collect();
    let act = &(&sh_nm.proj * &block_diag(&act)) * &sh_nm.sect;

    let lifts: Vec<RatMatrix> = (0..na).map(|a| w.nm.coend(a, a).sect.clone()).collect();
    let projs: Vec<RatMatrix> = (0..nb).map(|b| w.mn.coend(b, b).proj.clone()).collect();
    let src_total: usize = (0..na).map(|a| w.nm.coend(a, a).total()).sum();
    let tgt_total: usize = (0..nb).map(|b| w.mn.coend(b, b).total()).sum();
    let mut perm = RatMatrix::zeros(tgt_total, src_total);
    let mut src_base = 0;
    let tgt_base: Vec<usize> = (0..nb)
        .scan(0, |acc, b| {
            let here = *acc;
            *acc += w.mn.coend(b, b).total();
            Some(here)
        })
        .collect();
    for a in 0..na {
        let src_off = &w.nm.coend(a, a).offsets;
        for b in 0..nb {
            let (p, q) = (w.m.dim(b, a), w.n.dim(a, b));
            if p * q > 0 {
                let row = tgt_base[b] + w.mn.coend(b, b).offsets[a];
                perm.set_block(row, src_base + src_off[b], &swap(p, q));
            }
        }
        src_base += w.nm.coend(a, a).total();
    }
    let cyc = &(&(&(&sh_mn.proj * &block_diag(&projs)) * &perm) * &block_diag(&lifts)) * &sh_nm.sect;

    let ev: Vec<RatMatrix> = (0..nb).map(|b| &w.eps[b * nb + b] * &w.mn.coend(b, b).sect).collect();
    let ev = &(&sh_b.proj * &block_diag(&ev)) * &sh_mn.sect;

    Ok(&(&(&ev * &cyc) * &act) * &coev)
}

/// Component vector of the trace of `f` for a dualizable `X: A ⇸ 1`, one
/// entry per conjugacy class of `A` in class order.
pub fn bicat_trace(w: &DualityWitness, f: &ProfMap) -> Result<Vec<Rational>, ProfError> {
    if !is_point(&w.m.tgt) {
        return Err(ProfError::Shape("trace vectors need a profunctor into the point".into()));
    }
    let t = trace_matrix(w, f)?;
    Ok((0..t.cols()).map(|j| t[(0, j)].clone()).collect())
}

/// Trace of the identity of a dualizable weight `Φ: 1 ⇸ A`, read in the
/// conjugacy-class basis of the shadow of `A`.
pub fn coeff_vector_direct(w: &DualityWitness) -> Result<CoeffVector, ProfError> {
    if !is_point(&w.m.src) {
        return Err(ProfError::Shape("coefficient vectors need a profunctor out of the point".into()));
    }
    let t = trace_matrix(w, &w.m.identity_map())?;
    let values = (0..t.rows()).map(|i| t[(i, 0)].clone()).collect();
    Ok(CoeffVector::new(&w.m.tgt, values).expect("one shadow coordinate per class"))
}

/// `B(id, F): A ⇸ B`, `(b, a) ↦ ℚ[B(b, Fa)]`.
fn corepresented(f: &Functor) -> Profunctor {
    let (a_cat, b_cat) = (f.src().clone(), f.tgt().clone());
    let dims = b_cat
        .objects()
        .flat_map(|b| a_cat.objects().map(move |a| (b, a)))
        .map(|(b, a)| b_cat.hom(b, f.on_object(a)).len())
        .collect();
    let left = b_cat
        .objects()
        .map(|b| {
            a_cat
                .arrow_ids()
                .map(|alpha| {
                    let (fa, fa2) = (f.on_object(a_cat.src(alpha)), f.on_object(a_cat.dst(alpha)));
                    hom_action(b_cat.hom(b, fa), b_cat.hom(b, fa2), |g| b_cat.compose(f.on_arrow(alpha), g))
                })
                .collect()
        })
        .collect();
    let right = a_cat
        .objects()
        .map(|a| {
            b_cat
                .arrow_ids()
                .map(|beta| {
                    let fa = f.on_object(a);
                    hom_action(b_cat.hom(b_cat.dst(beta), fa), b_cat.hom(b_cat.src(beta), fa), |g| {
                        b_cat.compose(g, beta)
                    })
                })
                .collect()
        })
        .collect();
    Profunctor::new(a_cat, b_cat, dims, left, right).expect("representable profunctor")
}

/// `B(F, id): B ⇸ A`, `(a, b) ↦ ℚ[B(Fa, b)]`.
fn represented(f: &Functor) -> Profunctor {
    let (a_cat, b_cat) = (f.src().clone(), f.tgt().clone());
    let dims = a_cat
        .objects()
        .flat_map(|a| b_cat.objects().map(move |b| (a, b)))
        .map(|(a, b)| b_cat.hom(f.on_object(a), b).len())
        .collect();
    let left = a_cat
        .objects()
        .map(|a| {
            b_cat
                .arrow_ids()
                .map(|beta| {
                    let fa = f.on_object(a);
                    hom_action(b_cat.hom(fa, b_cat.src(beta)), b_cat.hom(fa, b_cat.dst(beta)), |g| {
                        b_cat.compose(beta, g)
                    })
                })
                .collect()
        })
        .collect();
    let right = b_cat
        .objects()
        .map(|b| {
            a_cat
                .arrow_ids()
                .map(|alpha| {
                    let (fa, fa2) = (f.on_object(a_cat.src(alpha)), f.on_object(a_cat.dst(alpha)));
                    hom_action(b_cat.hom(fa2, b), b_cat.hom(fa, b), |g| b_cat.compose(g, f.on_arrow(alpha)))
                })
                .collect()
        })
        .collect();
    Profunctor::new(b_cat, a_cat, dims, left, right).expect("representable profunctor")
}

/// The dual pair `B(id, F) ⊣ B(F, id)` of a functor: coevaluation sends
/// `α` to `F(α)` and evaluation is composition in `B`.
pub fn representable(f: &Functor) -> Result<DualityWitness, ProfError> {
    let (a_cat, b_cat) = (f.src().clone(), f.tgt().clone());
    let m = corepresented(f);
    let n = represented(f);
    let nm = compose_prof(&m, &n)?;
    let mn = compose_prof(&n, &m)?;
    let mut eta = Vec::new();
    for a2 in a_cat.objects() {
        for a in a_cat.objects() {
            let c = nm.coend(a2, a);
            let (fa, fa2) = (f.on_object(a), f.on_object(a2));
            let hom = a_cat.hom(a2, a);
            let mut e = RatMatrix::zeros(c.total(), hom.len());
            let ends = b_cat.hom(fa2, fa2);
            for (j, &alpha) in hom.iter().enumerate() {
                let row = c.offsets[fa2]
                    + position(b_cat.hom(fa2, fa), f.on_arrow(alpha)) * ends.len()
                    + position(ends, b_cat.id(fa2));
                e[(row, j)] = int(1);
            }
            eta.push(e);
        }
    }
    let mut eps = Vec::new();
    for b2 in b_cat.objects() {
        for b in b_cat.objects() {
            let c = mn.coend(b2, b);
            let target = b_cat.hom(b2, b);
            let mut e = RatMatrix::zeros(target.len(), c.total());
            for a in a_cat.objects() {
                let fa = f.on_object(a);
                let (outer, inner) = (b_cat.hom(fa, b), b_cat.hom(b2, fa));
                for (i, &g) in outer.iter().enumerate() {
                    for (j, &h) in inner.iter().enumerate() {
                        e[(position(target, b_cat.compose(g, h)), c.offsets[a] + i * inner.len() + j)] = int(1);
                    }
                }
            }
            eps.push(e);
        }
    }
    DualityWitness::new(m, n, eta, eps)
}

/// Dual of a pointwise finite diagram `X: A ⇸ 1`: the transposed diagram on
/// dual spaces, with coevaluation at `α` the matrix of `X_α` and evaluation
/// the canonical pairing.
pub fn dual_of_pointwise(x: &VectDiagram) -> Result<DualityWitness, ProfError> {
    let cat = x.cat().clone();
    let one = Arc::new(terminal());
    let m = Profunctor::from_covariant(x);
    let dims = x.dims().to_vec();
    let left = cat.objects().map(|a| vec![RatMatrix::identity(x.dim(a))]).collect();
    let right = vec![x.maps().iter().map(RatMatrix::transpose).collect()];
    let n = Profunctor::new(one, cat.clone(), dims, left, right)?;
    let mut eta = Vec::new();
    for a2 in cat.objects() {
        for a in cat.objects() {
            let cols: Vec<RatMatrix> = cat.hom(a2, a).iter().map(|&alpha| x.map(alpha).vectorize()).collect();
            eta.push(if cols.is_empty() {
                RatMatrix::zeros(x.dim(a) * x.dim(a2), 0)
            } else {
                RatMatrix::hstack(&cols.iter().collect::<Vec<_>>())
            });
        }
    }
    let pairing: Vec<RatMatrix> =
        cat.objects().map(|a| RatMatrix::identity(x.dim(a)).vectorize().transpose()).collect();
    let eps = vec![RatMatrix::hstack(&pairing.iter().collect::<Vec<_>>())];
    DualityWitness::new(m, n, eta, eps)
}

/// Witness for a retract `Z` of a dualizable `M`, given `r: M → Z` and
/// `s: Z → M` with `r∘s = id`. The dual of `Z` splits the mate of `s∘r`
/// on the dual of `M`.
pub fn dual_via_retract(
    w: &DualityWitness,
    z: &Profunctor,
    r: &ProfMap,
    s: &ProfMap,
) -> Result<DualityWitness, ProfError> {
    r.check(&w.m, z)?;
    s.check(z, &w.m)?;
    if !r.after(s).comps.iter().all(RatMatrix::is_identity) {
        return Err(ProfError::NotARetract);
    }
    let (a_cat, b_cat) = (w.m.src.clone(), w.m.tgt.clone());
    let (na, nb) = (a_cat.num_objects(), b_cat.num_objects());
    let sr = s.after(r);
    let mut incl = Vec::new();
    let mut proj = Vec::new();
    for a in a_cat.objects() {
        for b in b_cat.objects() {
            let e = w.second_triangle(a, b, Some(&sr));
            let img = idempotent_image(&e)?;
            incl.push(img.incl);
            proj.push(img.proj);
        }
    }
    let at = |a: ObjId, b: ObjId| a * nb + b;
    let dims = incl.iter().map(RatMatrix::cols).collect();
    let left = a_cat
        .objects()
        .map(|a| {
            b_cat
                .arrow_ids()
                .map(|beta| &(&proj[at(a, b_cat.dst(beta))] * w.n.left(a, beta)) * &incl[at(a, b_cat.src(beta))])
                .collect()
        })
        .collect();
    let right = b_cat
        .objects()
        .map(|b| {
            a_cat
                .arrow_ids()
                .map(|alpha| &(&proj[at(a_cat.src(alpha), b)] * w.n.right(b, alpha)) * &incl[at(a_cat.dst(alpha), b)])
                .collect()
        })
        .collect();
    let nz = Profunctor::new(b_cat.clone(), a_cat.clone(), dims, left, right)?;
    let mut eta = Vec::new();
    for a2 in a_cat.objects() {
        for a in a_cat.objects() {
            let blocks: Vec<RatMatrix> = b_cat.objects().map(|b| r.at(&w.m, b, a).kron(&proj[at(a2, b)])).collect();
            eta.push(&block_diag(&blocks) * &w.eta[a2 * na + a]);
        }
    }
    let mut eps = Vec::new();
    for b2 in b_cat.objects() {
        for b in b_cat.objects() {
            let blocks: Vec<RatMatrix> = a_cat.objects().map(|a| incl[at(a, b)].kron(s.at(z, b2, a))).collect();
            eps.push(&w.eps[b2 * nb + b] * &block_diag(&blocks));
        }
    }
    DualityWitness::new(z.clone(), nz, eta, eps)
}

/// Comparison between `B(id, F) ⊙ H` and the restriction `H(-, F-)`.
#[derive(Clone, Debug)]
pub struct RestrictionIso {
    pub restricted: Profunctor,
    pub composite: Composite,
    /// Natural isomorphism from `restricted` to `composite.prof`.
    pub comparison: ProfMap,
}

/// Builds the restriction of `H: B ⇸ C` along `F: A → B` and verifies that
/// `y ↦ [id_{Fa} ⊗ y]` is a natural isomorphism onto the composite.
pub fn restriction_comparison(f: &Functor, h: &Profunctor) -> Result<RestrictionIso, ProfError> {
    if **f.tgt() != *h.src {
        return Err(ProfError::Mismatch);
    }
    let (a_cat, b_cat, c_cat) = (f.src().clone(), f.tgt().clone(), h.tgt.clone());
    let m = corepresented(f);
    let composite = compose_prof(&m, h)?;
    let dims = c_cat
        .objects()
        .flat_map(|c| a_cat.objects().map(move |a| (c, a)))
        .map(|(c, a)| h.dim(c, f.on_object(a)))
        .collect();
    let left = c_cat
        .objects()
        .map(|c| a_cat.arrow_ids().map(|alpha| h.left(c, f.on_arrow(alpha)).clone()).collect())
        .collect();
    let right = a_cat
        .objects()
        .map(|a| c_cat.arrow_ids().map(|gamma| h.right(f.on_object(a), gamma).clone()).collect())
        .collect();
    let restricted = Profunctor::new(a_cat.clone(), c_cat.clone(), dims, left, right)?;
    let mut comps = Vec::new();
    for c in c_cat.objects() {
        for a in a_cat.objects() {
            let fa = f.on_object(a);
            let co = composite.coend(c, a);
            let ends = b_cat.hom(fa, fa);
            let d = h.dim(c, fa);
            let mut inj = RatMatrix::zeros(co.total(), d);
            inj.set_block(
                co.offsets[fa],
                0,
                &basis(ends.len(), position(ends, b_cat.id(fa))).kron(&RatMatrix::identity(d)),
            );
            let comp = &co.proj * &inj;
            if comp.inverse().is_none() {
                return Err(ProfError::NotNatural(format!(
                    "comparison at ({}, {}) is not invertible",
                    c_cat.object_name(c),
                    a_cat.object_name(a)
                )));
            }
            comps.push(comp);
        }
    }
    let comparison = ProfMap { comps };
    comparison.check(&restricted, &composite.prof)?;
    Ok(RestrictionIso { restricted, composite, comparison })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::coeff_group;
    use crate::diagrams::nat_endo_basis;
    use crate::exactalg::{rat, trace};
    use crate::fincat::{bg, free_idempotent, opposite, span, walking_arrow, FinGroup};

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    /// Direct per-class traces `tr(f_a ∘ X_α)`.
    fn direct(x: &VectDiagram, f: &[RatMatrix]) -> Vec<Rational> {
        let cat = x.cat();
        cat.conjugacy_classes()
            .reps()
            .into_iter()
            .map(|alpha| trace(&(&f[cat.src(alpha)] * x.map(alpha))).unwrap())
            .collect()
    }

    fn endo_as_prof_map(f: &[RatMatrix]) -> ProfMap {
        ProfMap { comps: f.to_vec() }
    }

    #[test]
    fn point_trace_is_matrix_trace() {
        let one = arc(terminal());
        let x = VectDiagram::new(one, vec![3], vec![RatMatrix::identity(3)]).unwrap();
        let w = dual_of_pointwise(&x).unwrap();
        let f = RatMatrix::from_i64(3, 3, &[1, 2, 0, 0, 3, 1, 5, 0, -2]);
        let t = bicat_trace(&w, &endo_as_prof_map(&[f])).unwrap();
        assert_eq!(t, vec![int(2)]);
    }

    #[test]
    fn regular_representation_of_c2() {
        let g = FinGroup::cyclic(2);
        let cat = arc(bg(&g));
        let x = VectDiagram::representable(cat.clone(), 0);
        let w = dual_of_pointwise(&x).unwrap();
        let t = bicat_trace(&w, &endo_as_prof_map(&x.identity_endo().comps)).unwrap();
        assert_eq!(t, vec![int(2), int(0)]);
    }

    #[test]
    fn components_match_pointwise_traces_on_small_cases() {
        let cats = [span(), free_idempotent(), bg(&FinGroup::symmetric(3)), walking_arrow()];
        for c in cats {
            let cat = arc(c);
            for a in cat.objects() {
                let x = VectDiagram::representable(cat.clone(), a);
                let w = dual_of_pointwise(&x).unwrap();
                for f in nat_endo_basis(&x) {
                    let t = bicat_trace(&w, &endo_as_prof_map(&f.comps)).unwrap();
                    assert_eq!(t, direct(&x, &f.comps));
                }
            }
        }
    }

    #[test]
    fn identity_functor_gives_units() {
        let cat = arc(span());
        let w = representable(&Functor::identity(cat.clone())).unwrap();
        assert_eq!(w.m, Profunctor::unit(cat.clone()));
        assert_eq!(w.n, Profunctor::unit(cat));
    }

    #[test]
    fn representable_weight_has_identity_class_coefficient() {
        let g = FinGroup::symmetric(3);
        let cat = arc(bg(&g));
        let w = representable(&Functor::object(cat.clone(), 0)).unwrap();
        let v = coeff_vector_direct(&w).unwrap();
        assert_eq!(v.values(), &[int(1), int(0), int(0)]);
        // postcomposition with a transposition picks out its class
        let t = ProfMap { comps: vec![hom_action(cat.hom(0, 0), cat.hom(0, 0), |h| cat.compose(1, h))] };
        let m = trace_matrix(&w, &t).unwrap();
        assert_eq!((m[(0, 0)].clone(), m[(1, 0)].clone(), m[(2, 0)].clone()), (int(0), int(1), int(0)));
    }

    #[test]
    fn retracts_give_known_coefficients() {
        // averaging retract of the regular representation onto the trivial weight
        for g in [FinGroup::cyclic(2), FinGroup::symmetric(3)] {
            let cat = arc(bg(&g));
            let w = representable(&Functor::object(cat.clone(), 0)).unwrap();
            let order = g.order() as i64;
            let phi = VectDiagram::constant(arc(opposite(&cat)), 1);
            let z = Profunctor::from_weight(cat.clone(), &phi).unwrap();
            let r = ProfMap { comps: vec![RatMatrix::from_i64(1, g.order(), &vec![1; g.order()])] };
            let s = ProfMap { comps: vec![RatMatrix::column(vec![rat(1, order); g.order()])] };
            let wz = dual_via_retract(&w, &z, &r, &s).unwrap();
            assert_eq!(coeff_vector_direct(&wz).unwrap(), coeff_group(&g));
        }
        // splitting the free idempotent
        let e_cat = arc(free_idempotent());
        let e = e_cat.arrow_by_name("e").unwrap();
        let w = representable(&Functor::object(e_cat.clone(), 0)).unwrap();
        let hom = e_cat.hom(0, 0);
        let phi = VectDiagram::constant(arc(opposite(&e_cat)), 1);
        let z = Profunctor::from_weight(e_cat.clone(), &phi).unwrap();
        let r = ProfMap { comps: vec![RatMatrix::from_i64(1, 2, &[1, 1])] };
        let s = ProfMap { comps: vec![basis(2, position(hom, e))] };
        let wz = dual_via_retract(&w, &z, &r, &s).unwrap();
        let v = coeff_vector_direct(&wz).unwrap();
        assert_eq!(v.at(e), Some(&int(1)));
        assert_eq!(v.at(e_cat.id(0)), Some(&int(0)));
        // trace transfer: tr(id_Z) equals tr(s∘r) on the representable
        let direct = trace_matrix(&w, &s.after(&r)).unwrap();
        assert_eq!(direct.entries(), v.values());
    }

    #[test]
    fn restriction_along_object_inclusion() {
        let cat = arc(span());
        let x = VectDiagram::representable(cat.clone(), 0);
        let h = Profunctor::from_covariant(&x);
        for a in cat.objects() {
            let iso = restriction_comparison(&Functor::object(cat.clone(), a), &h).unwrap();
            assert_eq!(iso.restricted.dim(0, 0), x.dim(a));
        }
        let iso = restriction_comparison(&Functor::identity(cat.clone()), &Profunctor::unit(cat)).unwrap();
        assert_eq!(iso.composite.prof.dims, iso.restricted.dims);
    }
}
