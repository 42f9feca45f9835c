use std::collections::BTreeMap;

use super::{offsets, ChainDiagram, ChainEndo, DiagramError, NatEndo, VectDiagram, VectEndo};
use crate::exactalg::{ChainMap, RatMatrix, Rational};
use crate::fincat::{generating_arrows, opposite};

/// Strict colimit presented as a cokernel of `⊕_a X_a`.
#[derive(Clone, Debug)]
pub struct Colimit {
    /// `dim × Σ dim X_a`, surjective.
    pub proj: RatMatrix,
    /// Right inverse of `proj`.
    pub sect: RatMatrix,
    pub offsets: Vec<usize>,
}

impl Colimit {
    pub fn dim(&self) -> usize {
        self.proj.rows()
    }

    /// Cocone leg at object `a`.
    pub fn leg(&self, a: usize) -> RatMatrix {
        let (s, e) = (self.offsets[a], self.offsets[a + 1]);
        self.proj.submatrix(0, s, self.dim(), e - s)
    }
}

/// Cokernel of `⊕_α X_a -> ⊕_a X_a`, `v ↦ ι_{a'}(X_α v) - ι_a(v)` over the
/// nonidentity generating arrows (the other relations follow from these).
pub fn colim_vect(x: &VectDiagram) -> Colimit {
    let cat = x.cat();
    let off = x.offsets();
    let gens: Vec<usize> = generating_arrows(cat).into_iter().filter(|&g| !cat.is_identity(g)).collect();
    let cols: usize = gens.iter().map(|&g| x.dim(cat.src(g))).sum();
    let mut rel = RatMatrix::zeros(x.total_dim(), cols);
    let mut c = 0;
    for &g in &gens {
        let (a, b) = (cat.src(g), cat.dst(g));
        let n = x.dim(a);
        rel.set_block(off[b], c, x.map(g));
        rel.add_block(off[a], c, &RatMatrix::identity(n).scale(&Rational::from_integer((-1).into())));
        c += n;
    }
    let q = rel.cokernel();
    Colimit { proj: q.proj, sect: q.sect, offsets: off }
}

/// Map induced on the colimit by a natural endomorphism.
pub fn induced_endo_colim(c: &Colimit, f: &VectEndo) -> RatMatrix {
    let blocks: Vec<&RatMatrix> = f.comps.iter().collect();
    &(&c.proj * &RatMatrix::direct_sum(&blocks)) * &c.sect
}

/// Coend `∫^a Φ(a) ⊗ X(a)` presented as a cokernel of `⊕_a Φ(a) ⊗ X(a)`.
#[derive(Clone, Debug)]
pub struct WeightedColimit {
    pub proj: RatMatrix,
    pub sect: RatMatrix,
    pub offsets: Vec<usize>,
}

impl WeightedColimit {
    pub fn dim(&self) -> usize {
        self.proj.rows()
    }
}

/// `Φ` lives over the opposite of `X`'s category; arrow `α: a -> a'` of the
/// base acts by `Φ_α: Φ(a') -> Φ(a)`.
pub fn weighted_colim_vect(phi: &VectDiagram, x: &VectDiagram) -> Result<WeightedColimit, DiagramError> {
    let cat = x.cat();
    if **phi.cat() != opposite(cat) {
        return Err(DiagramError::BaseMismatch);
    }
    let block_dims: Vec<usize> = cat.objects().map(|a| phi.dim(a) * x.dim(a)).collect();
    let off = offsets(&block_dims);
    let gens: Vec<usize> = generating_arrows(cat).into_iter().filter(|&g| !cat.is_identity(g)).collect();
    let cols: usize = gens.iter().map(|&g| phi.dim(cat.dst(g)) * x.dim(cat.src(g))).sum();
    let mut rel = RatMatrix::zeros(off[cat.num_objects()], cols);
    let mut c = 0;
    let minus_one = Rational::from_integer((-1).into());
    for &g in &gens {
        let (a, b) = (cat.src(g), cat.dst(g));
        let left = phi.map(g).kron(&RatMatrix::identity(x.dim(a)));
        let right = RatMatrix::identity(phi.dim(b)).kron(x.map(g));
        rel.set_block(off[a], c, &left);
        rel.add_block(off[b], c, &right.scale(&minus_one));
        c += left.cols();
    }
    let q = rel.cokernel();
    Ok(WeightedColimit { proj: q.proj, sect: q.sect, offsets: off })
}

/// Map induced on the weighted colimit by `1 ⊗ f`.
pub fn weighted_endo(w: &WeightedColimit, phi: &VectDiagram, f: &VectEndo) -> RatMatrix {
    let blocks: Vec<RatMatrix> =
        f.comps.iter().enumerate().map(|(a, m)| RatMatrix::identity(phi.dim(a)).kron(m)).collect();
    let refs: Vec<&RatMatrix> = blocks.iter().collect();
    &(&w.proj * &RatMatrix::direct_sum(&refs)) * &w.sect
}

/// Sparse linear equations over unknown matrix blocks.
struct System {
    blocks: Vec<(usize, usize, usize)>,
    rows: Vec<Vec<(usize, Rational)>>,
    nvars: usize,
}

impl System {
    fn new(shapes: &[(usize, usize)]) -> Self {
        let mut blocks = Vec::new();
        let mut nvars = 0;
        for &(r, c) in shapes {
            blocks.push((nvars, r, c));
            nvars += r * c;
        }
        System { blocks, rows: Vec::new(), nvars }
    }

    fn var(&self, block: usize, i: usize, j: usize) -> usize {
        let (off, _, c) = self.blocks[block];
        off + i * c + j
    }

    /// Adds `L · U_p - U_q · R = 0` where `U_p`, `U_q` are unknown blocks.
    fn commute(&mut self, left: &RatMatrix, p: usize, q: usize, right: &RatMatrix) {
        let (rows, cols) = (left.rows(), right.cols());
        for i in 0..rows {
            for j in 0..cols {
                let mut eq = Vec::new();
                for k in 0..left.cols() {
                    let v = &left[(i, k)];
                    if !num_traits::Zero::is_zero(v) {
                        eq.push((self.var(p, k, j), v.clone()));
                    }
                }
                for k in 0..right.rows() {
                    let v = &right[(k, j)];
                    if !num_traits::Zero::is_zero(v) {
                        eq.push((self.var(q, i, k), -v.clone()));
                    }
                }
                if !eq.is_empty() {
                    self.rows.push(eq);
                }
            }
        }
    }

    fn solve(&self) -> Vec<Vec<RatMatrix>> {
        let mut m = RatMatrix::zeros(self.rows.len(), self.nvars);
        for (i, eq) in self.rows.iter().enumerate() {
            for (v, c) in eq {
                let cur = m[(i, *v)].clone();
                m[(i, *v)] = cur + c;
            }
        }
        let k = m.kernel_basis();
        (0..k.cols())
            .map(|col| {
                self.blocks
                    .iter()
                    .map(|&(off, r, c)| {
                        let mut b = RatMatrix::zeros(r, c);
                        for i in 0..r {
                            for j in 0..c {
                                b[(i, j)] = k[(off + i * c + j, col)].clone();
                            }
                        }
                        b
                    })
                    .collect()
            })
            .collect()
    }
}

/// Basis of natural transformations `X -> Y`.
pub fn nat_trans_basis(x: &VectDiagram, y: &VectDiagram) -> Result<Vec<Vec<RatMatrix>>, DiagramError> {
    let cat = x.cat();
    if y.cat() != cat {
        return Err(DiagramError::BaseMismatch);
    }
    let shapes: Vec<(usize, usize)> = cat.objects().map(|a| (y.dim(a), x.dim(a))).collect();
    let mut sys = System::new(&shapes);
    for g in generating_arrows(cat) {
        let (a, b) = (cat.src(g), cat.dst(g));
        sys.commute(y.map(g), a, b, x.map(g));
    }
    Ok(sys.solve())
}

/// Basis of the natural endomorphisms of a vector diagram.
pub fn nat_endo_basis(x: &VectDiagram) -> Vec<VectEndo> {
    nat_trans_basis(x, x).expect("same base").into_iter().map(NatEndo::new).collect()
}

/// Basis of the natural chain endomorphisms of a chain diagram.
pub fn nat_endo_basis_chain(x: &ChainDiagram) -> Vec<ChainEndo> {
    let cat = x.cat();
    let Some((lo, hi)) = x.degree_range() else {
        return Vec::new();
    };
    let nobj = cat.num_objects();
    let block = |a: usize, n: i32| (n - lo) as usize * nobj + a;
    let mut shapes = Vec::new();
    for n in lo..=hi {
        for a in cat.objects() {
            let d = x.complex(a).dim(n);
            shapes.push((d, d));
        }
    }
    let mut sys = System::new(&shapes);
    let gens = generating_arrows(cat);
    for n in lo..=hi {
        for &g in &gens {
            let (a, b) = (cat.src(g), cat.dst(g));
            let m = x.map_at(g, n);
            sys.commute(&m, block(a, n), block(b, n), &m);
        }
        if n > lo {
            for a in cat.objects() {
                let d = x.complex(a).d(n);
                sys.commute(&d, block(a, n), block(a, n - 1), &d);
            }
        }
    }
    sys.solve()
        .into_iter()
        .map(|blocks| {
            NatEndo::new(
                cat.objects()
                    .map(|a| {
                        ChainMap::new((lo..=hi).map(|n| (n, blocks[block(a, n)].clone())).collect::<BTreeMap<_, _>>())
                    })
                    .collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactalg::{int, ChainComplex};
    use crate::fincat::{bg, discrete, free_idempotent, terminal, walking_arrow, FinGroup};

    fn regular_c2() -> VectDiagram {
        let cat = Arc::new(bg(&FinGroup::cyclic(2)));
        VectDiagram::from_generators(cat, vec![2], &BTreeMap::from([(1, RatMatrix::from_i64(2, 2, &[0, 1, 1, 0]))]))
            .unwrap()
    }

    #[test]
    fn colimit_dimensions() {
        let d = Arc::new(discrete(2));
        let x = VectDiagram::new(d, vec![2, 3], vec![RatMatrix::identity(2), RatMatrix::identity(3)]).unwrap();
        assert_eq!(colim_vect(&x).dim(), 5);
        assert_eq!(colim_vect(&regular_c2()).dim(), 1);
        let e = Arc::new(free_idempotent());
        let idem = RatMatrix::from_i64(3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let x = VectDiagram::new(e, vec![3], vec![RatMatrix::identity(3), idem]).unwrap();
        assert_eq!(colim_vect(&x).dim(), 2);
    }

    #[test]
    fn endo_bases() {
        assert_eq!(nat_endo_basis(&regular_c2()).len(), 2);
        let d = Arc::new(discrete(2));
        let x = VectDiagram::new(d, vec![2, 3], vec![RatMatrix::identity(2), RatMatrix::identity(3)]).unwrap();
        assert_eq!(nat_endo_basis(&x).len(), 13);
        let w = Arc::new(walking_arrow());
        let iso = RatMatrix::from_i64(2, 2, &[1, 1, 0, 1]);
        let x = VectDiagram::new(w, vec![2, 2], vec![RatMatrix::identity(2), iso, RatMatrix::identity(2)]).unwrap();
        let basis = nat_endo_basis(&x);
        assert_eq!(basis.len(), 4);
        for f in &basis {
            x.check_endo(f).unwrap();
        }
    }

    #[test]
    fn weighted_tensor_on_point() {
        let t = Arc::new(terminal());
        let phi = VectDiagram::constant(t.clone(), 2);
        let x = VectDiagram::constant(t, 3);
        assert_eq!(weighted_colim_vect(&phi, &x).unwrap().dim(), 6);
        let x = regular_c2();
        let one = VectDiagram::constant(Arc::new(opposite(x.cat())), 1);
        assert_eq!(weighted_colim_vect(&one, &x).unwrap().dim(), colim_vect(&x).dim());
    }

    #[test]
    fn chain_endo_basis_commutes() {
        let t = Arc::new(terminal());
        let c =
            ChainComplex::new(0, vec![1, 1], vec![RatMatrix::zeros(0, 1), RatMatrix::from_i64(1, 1, &[1])]).unwrap();
        let x = ChainDiagram::new(t, vec![c.clone()], vec![c.identity_map()]).unwrap();
        let basis = nat_endo_basis_chain(&x);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].comps[0].get(0).unwrap()[(0, 0)], int(1));
    }
}
