//! Functors from finite categories into rational vector spaces, chain
//! complexes and finite sets, with natural endomorphisms and colimits.

mod colim;
mod hocolim;
mod io;

use std::collections::BTreeMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::exactalg::{AlgError, ChainComplex, ChainMap, RatMatrix};
use crate::fincat::{generating_arrows, ArrowId, FinCat, FinCatError, ObjId};

pub use colim::{
    colim_vect, induced_endo_colim, nat_endo_basis, nat_endo_basis_chain, nat_trans_basis, weighted_colim_vect,
    weighted_endo, Colimit, WeightedColimit,
};
pub use hocolim::{
    cofiber, coinvariants, coinvariants_group, hocolim_ei, hocolim_groupoid, hocolim_hofin, pushout_ho, Coinvariants,
    EiResolution, Hocolim, HocolimResult,
};
pub use io::{
    diagram_to_json, matrix_to_json, parse_diagram, parse_entry, parse_matrix, parse_matrix_any, DiagramFile, IoError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("identity {0} is not sent to an identity")]
    Identity(String),
    #[error("functoriality fails for {g}∘{f}")]
    NotFunctorial { f: String, g: String },
    #[error("endomorphism is not natural at {0}")]
    NotNatural(String),
    #[error("diagram base categories do not match")]
    BaseMismatch,
    #[error(transparent)]
    Cat(#[from] FinCatError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// Natural endomorphism, one component per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatEndo<M> {
    pub comps: Vec<M>,
}

pub type VectEndo = NatEndo<RatMatrix>;
pub type ChainEndo = NatEndo<ChainMap>;

impl<M> NatEndo<M> {
    pub fn new(comps: Vec<M>) -> Self {
        NatEndo { comps }
    }
}

/// Functor into finite-dimensional rational vector spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectDiagram {
    cat: Arc<FinCat>,
    dims: Vec<usize>,
    maps: Vec<RatMatrix>,
}

impl VectDiagram {
    pub fn new(cat: Arc<FinCat>, dims: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self, DiagramError> {
        let d = VectDiagram { cat, dims, maps };
        d.check()?;
        Ok(d)
    }

    /// Extends values on generating arrows to all arrows by composition, then
    /// verifies functoriality.
    pub fn from_generators(
        cat: Arc<FinCat>,
        dims: Vec<usize>,
        gens: &BTreeMap<ArrowId, RatMatrix>,
    ) -> Result<Self, DiagramError> {
        if dims.len() != cat.num_objects() {
            return Err(DiagramError::Shape("one dimension per object required".into()));
        }
        let maps = extend_from_generators(&cat, gens, |a| RatMatrix::identity(dims[a]), |g, f| g * f)?;
        Self::new(cat, dims, maps)
    }

    /// `b ↦ ℚ[hom(a, b)]`, with `β` acting by postcomposition.
    pub fn representable(cat: Arc<FinCat>, a: ObjId) -> Self {
        let dims: Vec<usize> = cat.objects().map(|b| cat.hom(a, b).len()).collect();
        let maps = cat
            .arrow_ids()
            .map(|beta| {
                let (b, b2) = (cat.src(beta), cat.dst(beta));
                let mut m = RatMatrix::zeros(dims[b2], dims[b]);
                for (j, &x) in cat.hom(a, b).iter().enumerate() {
                    let y = cat.compose(beta, x);
                    let i = cat.hom(a, b2).iter().position(|&z| z == y).expect("composite in hom");
                    m[(i, j)] = crate::exactalg::int(1);
                }
                m
            })
            .collect();
        VectDiagram { cat, dims, maps }
    }

    /// Every object sent to `ℚ^n`, every arrow to the identity.
    pub fn constant(cat: Arc<FinCat>, n: usize) -> Self {
        let dims = vec![n; cat.num_objects()];
        let maps = cat.arrow_ids().map(|_| RatMatrix::identity(n)).collect();
        VectDiagram { cat, dims, maps }
    }

    pub fn direct_sum(parts: &[&VectDiagram]) -> Result<Self, DiagramError> {
        let cat = parts.first().ok_or_else(|| DiagramError::Shape("empty direct sum".into()))?.cat.clone();
        if parts.iter().any(|p| p.cat != cat) {
            return Err(DiagramError::BaseMismatch);
        }
        let dims = cat.objects().map(|a| parts.iter().map(|p| p.dims[a]).sum()).collect();
        let maps = cat
            .arrow_ids()
            .map(|f| RatMatrix::direct_sum(&parts.iter().map(|p| &p.maps[f]).collect::<Vec<_>>()))
            .collect();
        Ok(VectDiagram { cat, dims, maps })
    }

    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn dim(&self, a: ObjId) -> usize {
        self.dims[a]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, f: ArrowId) -> &RatMatrix {
        &self.maps[f]
    }

    pub fn maps(&self) -> &[RatMatrix] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Start of each object's block in `⊕_a X_a`.
    pub fn offsets(&self) -> Vec<usize> {
        offsets(&self.dims)
    }

    pub fn check(&self) -> Result<(), DiagramError> {
        let cat = &self.cat;
        if self.dims.len() != cat.num_objects() || self.maps.len() != cat.num_arrows() {
            return Err(DiagramError::Shape("wrong number of objects or arrows".into()));
        }
        for f in cat.arrow_ids() {
            if self.maps[f].shape() != (self.dims[cat.dst(f)], self.dims[cat.src(f)]) {
                return Err(DiagramError::Shape(format!("matrix for arrow {}", cat.arrow_name(f))));
            }
        }
        for a in cat.objects() {
            if !self.maps[cat.id(a)].is_identity() {
                return Err(DiagramError::Identity(cat.arrow_name(cat.id(a)).into()));
            }
        }
        for f in cat.arrow_ids() {
            for &g in cat.out_arrows(cat.dst(f)) {
                if self.maps[cat.compose(g, f)] != &self.maps[g] * &self.maps[f] {
                    return Err(DiagramError::NotFunctorial {
                        f: cat.arrow_name(f).into(),
                        g: cat.arrow_name(g).into(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn check_endo(&self, f: &VectEndo) -> Result<(), DiagramError> {
        let cat = &self.cat;
        if f.comps.len() != cat.num_objects() {
            return Err(DiagramError::Shape("one endomorphism component per object".into()));
        }
        for a in cat.objects() {
            if f.comps[a].shape() != (self.dims[a], self.dims[a]) {
                return Err(DiagramError::Shape(format!("endomorphism at {}", cat.object_name(a))));
            }
        }
        for alpha in cat.arrow_ids() {
            let (a, b) = (cat.src(alpha), cat.dst(alpha));
            if &self.maps[alpha] * &f.comps[a] != &f.comps[b] * &self.maps[alpha] {
                return Err(DiagramError::NotNatural(cat.arrow_name(alpha).into()));
            }
        }
        Ok(())
    }

    pub fn identity_endo(&self) -> VectEndo {
        NatEndo::new(self.dims.iter().map(|&d| RatMatrix::identity(d)).collect())
    }

    /// The same diagram viewed as a chain diagram concentrated in degree `deg`.
    pub fn to_chain(&self, deg: i32) -> ChainDiagram {
        let complexes = self.dims.iter().map(|&d| ChainComplex::concentrated(deg, d)).collect();
        let maps = self.maps.iter().map(|m| ChainMap::new(BTreeMap::from([(deg, m.clone())]))).collect();
        ChainDiagram { cat: self.cat.clone(), complexes, maps }
    }
}

pub(crate) fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    for &d in dims {
        out.push(acc);
        acc += d;
    }
    out.push(acc);
    out
}

pub(crate) fn extend_from_generators<M: Clone + PartialEq>(
    cat: &FinCat,
    gens: &BTreeMap<ArrowId, M>,
    identity: impl Fn(ObjId) -> M,
    mul: impl Fn(&M, &M) -> M,
) -> Result<Vec<M>, DiagramError> {
    let mut values: Vec<Option<M>> = vec![None; cat.num_arrows()];
    for a in cat.objects() {
        values[cat.id(a)] = Some(identity(a));
    }
    for (&g, m) in gens {
        if g >= cat.num_arrows() {
            return Err(DiagramError::Shape(format!("generator index {g} out of range")));
        }
        if cat.is_identity(g) {
            continue;
        }
        values[g] = Some(m.clone());
    }
    let mut frontier: Vec<ArrowId> = cat.arrow_ids().filter(|&f| values[f].is_some()).collect();
    while let Some(f) = frontier.pop() {
        for &g in cat.out_arrows(cat.dst(f)) {
            if !gens.contains_key(&g) {
                continue;
            }
            let h = cat.compose(g, f);
            if values[h].is_none() {
                let v = mul(values[g].as_ref().expect("generator value"), values[f].as_ref().expect("assigned"));
                values[h] = Some(v);
                frontier.push(h);
            }
        }
    }
    values
        .into_iter()
        .enumerate()
        .map(|(f, v)| v.ok_or_else(|| DiagramError::Shape(format!("arrow {} not generated", cat.arrow_name(f)))))
        .collect()
}

/// Functor into bounded chain complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDiagram {
    cat: Arc<FinCat>,
    complexes: Vec<ChainComplex>,
    maps: Vec<ChainMap>,
}

impl ChainDiagram {
    pub fn new(cat: Arc<FinCat>, complexes: Vec<ChainComplex>, maps: Vec<ChainMap>) -> Result<Self, DiagramError> {
        let d = ChainDiagram { cat, complexes, maps };
        d.check()?;
        Ok(d)
    }

    /// Assembles a chain diagram from one vector diagram per degree and
    /// natural differentials `diffs[n][a]: X_n(a) -> X_{n-1}(a)`.
    pub fn from_degrees(
        cat: Arc<FinCat>,
        degrees: &BTreeMap<i32, VectDiagram>,
        diffs: &BTreeMap<i32, Vec<RatMatrix>>,
    ) -> Result<Self, DiagramError> {
        let mut complexes = Vec::new();
        for a in cat.objects() {
            let dims: BTreeMap<i32, usize> = degrees.iter().map(|(&n, x)| (n, x.dim(a))).collect();
            let ds: BTreeMap<i32, RatMatrix> = diffs.iter().map(|(&n, v)| (n, v[a].clone())).collect();
            complexes.push(ChainComplex::from_parts(&dims, &ds)?);
        }
        let maps = cat
            .arrow_ids()
            .map(|f| ChainMap::new(degrees.iter().map(|(&n, x)| (n, x.map(f).clone())).collect()))
            .collect();
        Self::new(cat, complexes, maps)
    }

    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn complex(&self, a: ObjId) -> &ChainComplex {
        &self.complexes[a]
    }

    pub fn complexes(&self) -> &[ChainComplex] {
        &self.complexes
    }

    pub fn map(&self, f: ArrowId) -> &ChainMap {
        &self.maps[f]
    }

    pub fn maps(&self) -> &[ChainMap] {
        &self.maps
    }

    /// Degrees where some object is nonzero.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let nz = self.complexes.iter().filter(|c| !c.is_zero());
        let lo = nz.clone().map(ChainComplex::lo).min()?;
        let hi = nz.map(ChainComplex::hi).max()?;
        Some((lo, hi))
    }

    /// Component of `X_α` in degree `n`.
    pub fn map_at(&self, f: ArrowId, n: i32) -> RatMatrix {
        let c = &self.cat;
        self.maps[f].at(n, self.complexes[c.dst(f)].dim(n), self.complexes[c.src(f)].dim(n))
    }

    pub fn degree(&self, n: i32) -> VectDiagram {
        let dims = self.complexes.iter().map(|c| c.dim(n)).collect();
        let maps = self.cat.arrow_ids().map(|f| self.map_at(f, n)).collect();
        VectDiagram { cat: self.cat.clone(), dims, maps }
    }

    pub fn check(&self) -> Result<(), DiagramError> {
        let cat = &self.cat;
        if self.complexes.len() != cat.num_objects() || self.maps.len() != cat.num_arrows() {
            return Err(DiagramError::Shape("wrong number of objects or arrows".into()));
        }
        for f in cat.arrow_ids() {
            self.maps[f].check(&self.complexes[cat.src(f)], &self.complexes[cat.dst(f)])?;
        }
        if let Some((lo, hi)) = self.degree_range() {
            for n in lo..=hi {
                self.degree(n).check()?;
            }
        }
        Ok(())
    }

    pub fn check_endo(&self, f: &ChainEndo) -> Result<(), DiagramError> {
        if f.comps.len() != self.cat.num_objects() {
            return Err(DiagramError::Shape("one endomorphism component per object".into()));
        }
        for a in self.cat.objects() {
            f.comps[a].check(&self.complexes[a], &self.complexes[a])?;
        }
        if let Some((lo, hi)) = self.degree_range() {
            for n in lo..=hi {
                self.degree(n).check_endo(&self.endo_degree(f, n))?;
            }
        }
        Ok(())
    }

    pub fn endo_degree(&self, f: &ChainEndo, n: i32) -> VectEndo {
        NatEndo::new(
            self.cat
                .objects()
                .map(|a| {
                    let d = self.complexes[a].dim(n);
                    f.comps[a].at(n, d, d)
                })
                .collect(),
        )
    }

    pub fn identity_endo(&self) -> ChainEndo {
        NatEndo::new(self.complexes.iter().map(ChainComplex::identity_map).collect())
    }

    /// Restriction along a full embedding given by object and arrow maps.
    pub fn restrict(&self, sub: Arc<FinCat>, objs: &[ObjId], arrows: &[ArrowId]) -> ChainDiagram {
        ChainDiagram {
            cat: sub,
            complexes: objs.iter().map(|&a| self.complexes[a].clone()).collect(),
            maps: arrows.iter().map(|&f| self.maps[f].clone()).collect(),
        }
    }
}

/// Functor into finite sets, each set being `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSetDiagram {
    cat: Arc<FinCat>,
    sizes: Vec<usize>,
    funcs: Vec<Vec<usize>>,
}

impl FinSetDiagram {
    pub fn new(cat: Arc<FinCat>, sizes: Vec<usize>, funcs: Vec<Vec<usize>>) -> Result<Self, DiagramError> {
        let d = FinSetDiagram { cat, sizes, funcs };
        d.check()?;
        Ok(d)
    }

    /// `b ↦ hom(a, b)` with postcomposition.
    pub fn representable(cat: Arc<FinCat>, a: ObjId) -> Self {
        let sizes = cat.objects().map(|b| cat.hom(a, b).len()).collect();
        let funcs = cat
            .arrow_ids()
            .map(|beta| {
                let (b, b2) = (cat.src(beta), cat.dst(beta));
                cat.hom(a, b)
                    .iter()
                    .map(|&x| {
                        let y = cat.compose(beta, x);
                        cat.hom(a, b2).iter().position(|&z| z == y).expect("composite in hom")
                    })
                    .collect()
            })
            .collect();
        FinSetDiagram { cat, sizes, funcs }
    }

    pub fn coproduct(parts: &[&FinSetDiagram]) -> Result<Self, DiagramError> {
        let cat = parts.first().ok_or_else(|| DiagramError::Shape("empty coproduct".into()))?.cat.clone();
        if parts.iter().any(|p| p.cat != cat) {
            return Err(DiagramError::BaseMismatch);
        }
        let sizes: Vec<usize> = cat.objects().map(|a| parts.iter().map(|p| p.sizes[a]).sum()).collect();
        let funcs = cat
            .arrow_ids()
            .map(|f| {
                let (a, b) = (cat.src(f), cat.dst(f));
                let mut out = Vec::with_capacity(sizes[a]);
                let mut off = 0;
                for p in parts {
                    out.extend(p.funcs[f].iter().map(|&y| y + off));
                    off += p.sizes[b];
                }
                out
            })
            .collect();
        Ok(FinSetDiagram { cat, sizes, funcs })
    }

    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn size(&self, a: ObjId) -> usize {
        self.sizes[a]
    }

    pub fn func(&self, f: ArrowId) -> &[usize] {
        &self.funcs[f]
    }

    pub fn check(&self) -> Result<(), DiagramError> {
        let cat = &self.cat;
        if self.sizes.len() != cat.num_objects() || self.funcs.len() != cat.num_arrows() {
            return Err(DiagramError::Shape("wrong number of objects or arrows".into()));
        }
        for f in cat.arrow_ids() {
            let (a, b) = (cat.src(f), cat.dst(f));
            if self.funcs[f].len() != self.sizes[a] || self.funcs[f].iter().any(|&y| y >= self.sizes[b]) {
                return Err(DiagramError::Shape(format!("function for arrow {}", cat.arrow_name(f))));
            }
        }
        for a in cat.objects() {
            if self.funcs[cat.id(a)].iter().enumerate().any(|(i, &y)| i != y) {
                return Err(DiagramError::Identity(cat.arrow_name(cat.id(a)).into()));
            }
        }
        for f in cat.arrow_ids() {
            for &g in cat.out_arrows(cat.dst(f)) {
                let gf = &self.funcs[cat.compose(g, f)];
                if self.funcs[f].iter().zip(gf).any(|(&y, &z)| self.funcs[g][y] != z) {
                    return Err(DiagramError::NotFunctorial {
                        f: cat.arrow_name(f).into(),
                        g: cat.arrow_name(g).into(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Free vector space on each set; functions become 0/1 matrices.
    pub fn linearize(&self) -> VectDiagram {
        let maps = self
            .cat
            .arrow_ids()
            .map(|f| {
                let (a, b) = (self.cat.src(f), self.cat.dst(f));
                function_matrix(&self.funcs[f], self.sizes[a], self.sizes[b])
            })
            .collect();
        VectDiagram { cat: self.cat.clone(), dims: self.sizes.clone(), maps }
    }

    /// Colimit as a set: the quotient of the disjoint union by `x ~ X_α(x)`.
    /// Returns its size and the class of each element, indexed by object.
    pub fn colimit(&self) -> (usize, Vec<Vec<usize>>) {
        let off = offsets(&self.sizes);
        let mut uf = UnionFind::<usize>::new(off[self.sizes.len()]);
        for f in self.cat.arrow_ids() {
            let (a, b) = (self.cat.src(f), self.cat.dst(f));
            for (x, &y) in self.funcs[f].iter().enumerate() {
                uf.union(off[a] + x, off[b] + y);
            }
        }
        let mut label = BTreeMap::new();
        let classes = self
            .cat
            .objects()
            .map(|a| {
                (0..self.sizes[a])
                    .map(|x| {
                        let n = label.len();
                        *label.entry(uf.find(off[a] + x)).or_insert(n)
                    })
                    .collect()
            })
            .collect();
        (label.len(), classes)
    }
}

/// Matrix of a function `0..n -> 0..m`.
pub fn function_matrix(func: &[usize], n: usize, m: usize) -> RatMatrix {
    let mut out = RatMatrix::zeros(m, n);
    for (x, &y) in func.iter().enumerate() {
        out[(y, x)] = crate::exactalg::int(1);
    }
    out
}

/// Number of fixed points of an endofunction.
pub fn fixed_points(func: &[usize]) -> usize {
    func.iter().enumerate().filter(|(i, &y)| *i == y).count()
}

/// Values on the generating arrows of a category, for building diagrams.
pub fn generators(cat: &FinCat) -> Vec<ArrowId> {
    generating_arrows(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, trace};
    use crate::fincat::{bg, span, FinGroup};

    #[test]
    fn linearized_traces_count_fixed_points() {
        for (func, fix) in [(vec![0, 1, 2], 3), (vec![1, 2, 0], 0), (vec![2, 2, 2], 1)] {
            assert_eq!(trace(&function_matrix(&func, 3, 3)).unwrap(), int(fix));
            assert_eq!(fixed_points(&func), fix as usize);
        }
    }

    #[test]
    fn regular_representation_from_generator() {
        let cat = Arc::new(bg(&FinGroup::cyclic(2)));
        let swap = RatMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        let x = VectDiagram::from_generators(cat.clone(), vec![2], &BTreeMap::from([(1, swap.clone())])).unwrap();
        assert_eq!(x.map(1), &swap);
        let bad = RatMatrix::from_i64(2, 2, &[0, 1, 1, 1]);
        assert!(VectDiagram::from_generators(cat, vec![2], &BTreeMap::from([(1, bad)])).is_err());
    }

    #[test]
    fn representables_are_functors() {
        let cat = Arc::new(span());
        for a in cat.objects() {
            VectDiagram::representable(cat.clone(), a).check().unwrap();
            FinSetDiagram::representable(cat.clone(), a).check().unwrap();
        }
        let r = FinSetDiagram::representable(cat.clone(), 0);
        assert_eq!(r.colimit().0, 1);
    }
}
