//! Seeded random generators for categories, complexes and diagrams.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagrams::{
    extend_from_generators, nat_endo_basis, nat_endo_basis_chain, ChainDiagram, ChainEndo, NatEndo, VectDiagram,
    VectEndo,
};
use crate::exactalg::{int, ChainComplex, ChainMap, RatMatrix, Rational};
use crate::fincat::{free_category_on_dag, generating_arrows, Dag, FinCat, FinGroup, GroupAction};

pub type CaseRng = ChaCha8Rng;

/// Generator for case `index` of a run seeded with `seed`. Each case gets its
/// own stream so cases can be replayed individually.
pub fn case_rng(seed: u64, index: u64) -> CaseRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Integer in `lo..=hi` as a rational.
pub fn small_int(rng: &mut CaseRng, lo: i64, hi: i64) -> Rational {
    int(rng.gen_range(lo..=hi))
}

pub fn random_matrix(rng: &mut CaseRng, rows: usize, cols: usize, lo: i64, hi: i64) -> RatMatrix {
    let data = (0..rows * cols).map(|_| small_int(rng, lo, hi)).collect();
    RatMatrix::from_vec(rows, cols, data)
}

/// A random invertible integer matrix together with its inverse, built from
/// elementary row operations.
pub fn random_unimodular(rng: &mut CaseRng, n: usize) -> (RatMatrix, RatMatrix) {
    let mut p = RatMatrix::identity(n);
    let mut inv = RatMatrix::identity(n);
    if n < 2 {
        return (p, inv);
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = small_int(rng, -1, 1);
        let mut e = RatMatrix::identity(n);
        e[(i, j)] = c.clone();
        let mut e_inv = RatMatrix::identity(n);
        e_inv[(i, j)] = -c;
        p = &e * &p;
        inv = &inv * &e_inv;
    }
    (p, inv)
}

/// Random acyclic multigraph: edges only go from lower to higher index.
pub fn random_dag(rng: &mut CaseRng, max_objects: usize, max_edges: usize) -> Dag {
    let n = rng.gen_range(1..=max_objects.max(1));
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let m = if n > 1 { rng.gen_range(0..=max_edges) } else { 0 };
    let mut edges = Vec::with_capacity(m);
    for e in 0..m {
        let s = rng.gen_range(0..n - 1);
        let t = rng.gen_range(s + 1..n);
        edges.push((format!("e{e}"), s, t));
    }
    Dag { objects: names, edges }
}

/// Most arrows a generated category may have.
pub const MAX_ARROWS: usize = 200;

/// Free category on a random DAG, redrawn until it has at most
/// [`MAX_ARROWS`] arrows.
pub fn gen_hofin_category(seed: u64, max_objects: usize, max_edges: usize) -> FinCat {
    gen_hofin_with(&mut case_rng(seed, 0), max_objects, max_edges)
}

pub fn gen_hofin_with(rng: &mut CaseRng, max_objects: usize, max_edges: usize) -> FinCat {
    assert!(max_objects > 0, "bounds must be positive");
    loop {
        let dag = random_dag(rng, max_objects, max_edges);
        if dag.count_paths().is_some_and(|p| p <= MAX_ARROWS) {
            return free_category_on_dag(&dag).expect("edges increase the index");
        }
    }
}

/// Complex in degrees `lo..=hi` with dimensions at most `max_dim`: a direct
/// sum of cycles and contractible pieces, conjugated by random unimodular
/// changes of basis.
pub fn random_complex(rng: &mut CaseRng, max_dim: usize, lo: i32, hi: i32) -> ChainComplex {
    let len = (hi - lo + 1).max(0) as usize;
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_dim)).collect();
    // ranks[i] is the rank of the differential leaving degree lo + i
    let mut ranks = vec![0usize; len + 1];
    for i in (1..len).rev() {
        let room = dims[i].saturating_sub(ranks[i + 1]).min(dims[i - 1]);
        ranks[i] = rng.gen_range(0..=room);
    }
    let bases: Vec<(RatMatrix, RatMatrix)> = dims.iter().map(|&d| random_unimodular(rng, d)).collect();
    let mut dm = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for i in 0..len {
        let n = lo + i as i32;
        dm.insert(n, dims[i]);
        if i == 0 {
            continue;
        }
        let (rows, cols) = (dims[i - 1], dims[i]);
        let mut d = RatMatrix::zeros(rows, cols);
        for k in 0..ranks[i] {
            d[(k, cols - ranks[i] + k)] = int(1);
        }
        let d = &(&bases[i - 1].0 * &d) * &bases[i].1;
        diffs.insert(n, d);
    }
    ChainComplex::from_parts(&dm, &diffs).expect("differentials square to zero by construction")
}

/// Basis of the chain maps `x -> y`.
pub fn chain_map_basis(x: &ChainComplex, y: &ChainComplex) -> Vec<ChainMap> {
    let degrees: Vec<i32> = {
        let mut v: Vec<i32> = x.degrees().filter(|&n| y.dim(n) > 0 && x.dim(n) > 0).collect();
        v.dedup();
        v
    };
    let mut offsets = BTreeMap::new();
    let mut nvars = 0;
    for &n in &degrees {
        offsets.insert(n, nvars);
        nvars += y.dim(n) * x.dim(n);
    }
    if nvars == 0 {
        return Vec::new();
    }
    let var = |n: i32, i: usize, j: usize| offsets.get(&n).map(|o| o + i * x.dim(n) + j);
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    let (lo, hi) = (x.lo().min(y.lo()), x.hi().max(y.hi()) + 1);
    for n in lo..=hi {
        // d_Y f_n - f_{n-1} d_X = 0 as maps X_n -> Y_{n-1}
        let (dy, dx) = (y.d(n), x.d(n));
        for i in 0..y.dim(n - 1) {
            for j in 0..x.dim(n) {
                let mut eq = Vec::new();
                for k in 0..y.dim(n) {
                    if let Some(v) = var(n, k, j) {
                        eq.push((v, dy[(i, k)].clone()));
                    }
                }
                for k in 0..x.dim(n - 1) {
                    if let Some(v) = var(n - 1, i, k) {
                        eq.push((v, -dx[(k, j)].clone()));
                    }
                }
                rows.push(eq);
            }
        }
    }
    let mut m = RatMatrix::zeros(rows.len(), nvars);
    for (r, eq) in rows.iter().enumerate() {
        for (v, c) in eq {
            let cur = m[(r, *v)].clone();
            m[(r, *v)] = cur + c;
        }
    }
    let k = m.kernel_basis();
    (0..k.cols())
        .map(|col| {
            ChainMap::new(
                degrees
                    .iter()
                    .map(|&n| {
                        let (r, c) = (y.dim(n), x.dim(n));
                        let data = (0..r * c).map(|t| k[(offsets[&n] + t, col)].clone()).collect();
                        (n, RatMatrix::from_vec(r, c, data))
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Random combination of basis elements with coefficients in `-2..=2`.
fn combine<T: Clone>(
    rng: &mut CaseRng,
    basis: &[T],
    zero: T,
    scale: impl Fn(&T, &Rational) -> T,
    add: impl Fn(&T, &T) -> T,
) -> T {
    basis.iter().fold(zero, |acc, b| add(&acc, &scale(b, &small_int(rng, -2, 2))))
}

pub fn random_chain_map(rng: &mut CaseRng, x: &ChainComplex, y: &ChainComplex) -> ChainMap {
    let basis = chain_map_basis(x, y);
    combine(rng, &basis, ChainMap::zero(), ChainMap::scale, ChainMap::add)
}

pub fn random_vect_endo(rng: &mut CaseRng, x: &VectDiagram) -> VectEndo {
    let basis = nat_endo_basis(x);
    let zero = NatEndo::new(x.dims().iter().map(|&d| RatMatrix::zeros(d, d)).collect());
    combine(
        rng,
        &basis,
        zero,
        |f, c| NatEndo::new(f.comps.iter().map(|m| m.scale(c)).collect()),
        |f, g| NatEndo::new(f.comps.iter().zip(&g.comps).map(|(a, b)| a + b).collect()),
    )
}

pub fn random_chain_endo(rng: &mut CaseRng, x: &ChainDiagram) -> ChainEndo {
    let basis = nat_endo_basis_chain(x);
    let zero = NatEndo::new(vec![ChainMap::zero(); x.cat().num_objects()]);
    combine(
        rng,
        &basis,
        zero,
        |f, c| NatEndo::new(f.comps.iter().map(|m| m.scale(c)).collect()),
        |f, g| NatEndo::new(f.comps.iter().zip(&g.comps).map(|(a, b)| a.add(b)).collect()),
    )
}

/// The fixed list of exact representations used for group objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rep {
    Trivial,
    Sign,
    Regular,
    Standard,
}

pub const REPS: [Rep; 4] = [Rep::Trivial, Rep::Sign, Rep::Regular, Rep::Standard];

fn permutation_matrix(perm: &[usize]) -> RatMatrix {
    let n = perm.len();
    let mut m = RatMatrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        m[(i, j)] = int(1);
    }
    m
}

fn is_even(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

/// Matrices of a representation, indexed by group element.
///
/// `Sign` is the parity of left multiplication on the group itself. `Standard`
/// is the sum-zero part of the permutation action on cosets of the first
/// non-normal subgroup of order two, or of the trivial subgroup if none
/// exists.
pub fn group_rep(g: &FinGroup, rep: Rep) -> Vec<RatMatrix> {
    let left: Vec<Vec<usize>> = g.elements().map(|x| g.elements().map(|y| g.mul(x, y)).collect()).collect();
    match rep {
        Rep::Trivial => g.elements().map(|_| RatMatrix::identity(1)).collect(),
        Rep::Sign => left.iter().map(|p| RatMatrix::scalar(1, &int(if is_even(p) { 1 } else { -1 }))).collect(),
        Rep::Regular => left.iter().map(|p| permutation_matrix(p)).collect(),
        Rep::Standard => {
            let e = g.identity();
            let sub = g
                .elements()
                .filter(|&x| x != e && g.mul(x, x) == e)
                .map(|x| vec![e, x])
                .find(|h| g.elements().any(|y| !h.contains(&g.conjugate(y, h[1]))))
                .unwrap_or_else(|| vec![e]);
            let action = GroupAction::cosets(g, &sub).expect("subgroup");
            let m = action.size();
            g.elements()
                .map(|x| {
                    // basis v_i = e_i - e_{m-1}; v_{m-1} = 0
                    let mut r = RatMatrix::zeros(m - 1, m - 1);
                    let last = action.apply(x, m - 1);
                    for i in 0..m - 1 {
                        let to = action.apply(x, i);
                        if to < m - 1 {
                            r[(to, i)] = &r[(to, i)] + &int(1);
                        }
                        if last < m - 1 {
                            r[(last, i)] = &r[(last, i)] - &int(1);
                        }
                    }
                    r
                })
                .collect()
        }
    }
}

/// A representation of the automorphism group at the only object of a
/// one-object groupoid, as a diagram.
pub fn rep_diagram(cat: &Arc<FinCat>, rep: Rep) -> VectDiagram {
    assert!(cat.num_objects() == 1 && cat.is_groupoid(), "representations live over one-object groupoids");
    let (group, arrows) = cat.aut_group(0);
    let mats = group_rep(&group, rep);
    let dim = mats[0].rows();
    let mut maps = vec![RatMatrix::identity(dim); cat.num_arrows()];
    for (i, &f) in arrows.iter().enumerate() {
        maps[f] = mats[i].clone();
    }
    VectDiagram::new(cat.clone(), vec![dim], maps).expect("group representation")
}

/// Building blocks with every value of dimension at most `max_dim`:
/// representables, the constant diagram, and for groups the fixed
/// representations.
pub fn block_pool(cat: &Arc<FinCat>, max_dim: usize) -> Vec<VectDiagram> {
    let mut pool = vec![VectDiagram::constant(cat.clone(), 1)];
    if cat.num_objects() == 1 && cat.is_groupoid() {
        pool.extend(REPS.iter().map(|&r| rep_diagram(cat, r)));
    }
    pool.extend(cat.objects().map(|a| VectDiagram::representable(cat.clone(), a)));
    pool.retain(|v| v.dims().iter().all(|&d| d <= max_dim) && v.total_dim() > 0);
    pool.dedup();
    pool
}

/// `V ⊗ K` with `V` acting on the left tensor factor.
pub fn tensor_with_complex(v: &VectDiagram, k: &ChainComplex) -> ChainDiagram {
    let cat = v.cat().clone();
    let complexes = cat
        .objects()
        .map(|a| {
            let dims: BTreeMap<i32, usize> = k.degrees().map(|n| (n, v.dim(a) * k.dim(n))).collect();
            let diffs: BTreeMap<i32, RatMatrix> =
                k.degrees().map(|n| (n, RatMatrix::identity(v.dim(a)).kron(&k.d(n)))).collect();
            ChainComplex::from_parts(&dims, &diffs).expect("tensor of a complex")
        })
        .collect();
    let maps = cat
        .arrow_ids()
        .map(|f| ChainMap::new(k.degrees().map(|n| (n, v.map(f).kron(&RatMatrix::identity(k.dim(n))))).collect()))
        .collect();
    ChainDiagram::new(cat, complexes, maps).expect("tensor with a complex is a diagram")
}

pub fn sum_chain_diagrams(parts: &[ChainDiagram]) -> ChainDiagram {
    let cat = parts[0].cat().clone();
    let complexes: Vec<ChainComplex> = cat
        .objects()
        .map(|a| ChainComplex::direct_sum(&parts.iter().map(|p| p.complex(a)).collect::<Vec<_>>()))
        .collect();
    let maps = cat
        .arrow_ids()
        .map(|f| {
            let (s, t) = (cat.src(f), cat.dst(f));
            ChainMap::direct_sum(&parts.iter().map(|p| (p.map(f), p.complex(s), p.complex(t))).collect::<Vec<_>>())
        })
        .collect();
    ChainDiagram::new(cat, complexes, maps).expect("sum of diagrams")
}

/// Values and maps chosen freely on generating arrows. Succeeds exactly when
/// the category is free on those generators (or the random choice happens to
/// satisfy its relations).
fn free_chain_diagram(rng: &mut CaseRng, cat: &Arc<FinCat>, max_dim: usize, lo: i32, hi: i32) -> Option<ChainDiagram> {
    if !cat.is_strictly_homotopy_finite() {
        return None;
    }
    let complexes: Vec<ChainComplex> = cat.objects().map(|_| random_complex(rng, max_dim, lo, hi)).collect();
    let gens: BTreeMap<_, _> = generating_arrows(cat)
        .into_iter()
        .map(|g| (g, random_chain_map(rng, &complexes[cat.src(g)], &complexes[cat.dst(g)])))
        .collect();
    let maps = extend_from_generators(cat, &gens, |a| complexes[a].identity_map(), |g, f| g.after(f)).ok()?;
    ChainDiagram::new(cat.clone(), complexes, maps).ok()
}

/// Sum of blocks tensored with random complexes, keeping dimensions at most `max_dim`.
fn block_chain_diagram(rng: &mut CaseRng, cat: &Arc<FinCat>, max_dim: usize, lo: i32, hi: i32) -> ChainDiagram {
    let pool = block_pool(cat, max_dim);
    let mut parts = Vec::new();
    let mut budget = max_dim;
    for _ in 0..3 {
        let Some(v) = pool.choose(rng) else { break };
        let width = v.dims().iter().copied().max().unwrap_or(1).max(1);
        if width > budget {
            continue;
        }
        let k = random_complex(rng, budget / width, lo, hi);
        if k.is_zero() {
            continue;
        }
        let top = k.degrees().map(|n| k.dim(n)).max().unwrap_or(0);
        budget -= width * top;
        parts.push(tensor_with_complex(v, &k));
    }
    if parts.is_empty() {
        let zero = cat.objects().map(|_| ChainComplex::zero()).collect();
        let maps = cat.arrow_ids().map(|_| ChainMap::zero()).collect();
        return ChainDiagram::new(cat.clone(), zero, maps).expect("zero diagram");
    }
    sum_chain_diagrams(&parts)
}

/// Random chain diagram over `cat` in degrees `lo..=hi` with a natural
/// endomorphism drawn from the naturality solution space.
pub fn gen_chain_diagram(
    rng: &mut CaseRng,
    cat: &Arc<FinCat>,
    max_dim: usize,
    (lo, hi): (i32, i32),
) -> (ChainDiagram, ChainEndo) {
    let x = match free_chain_diagram(rng, cat, max_dim, lo, hi) {
        Some(x) => x,
        None => block_chain_diagram(rng, cat, max_dim, lo, hi),
    };
    let f = random_chain_endo(rng, &x);
    (x, f)
}

/// Random diagram of vector spaces with a random natural endomorphism.
pub fn gen_vect_diagram(rng: &mut CaseRng, cat: &Arc<FinCat>, max_dim: usize) -> (VectDiagram, VectEndo) {
    let (x, _) = gen_chain_diagram(rng, cat, max_dim, (0, 0));
    let x = x.degree(0);
    let f = random_vect_endo(rng, &x);
    (x, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{bg, free_idempotent, span};

    #[test]
    fn representations_are_homomorphisms() {
        for g in [FinGroup::cyclic(2), FinGroup::cyclic(3), FinGroup::cyclic(4), FinGroup::symmetric(3)] {
            for rep in REPS {
                let m = group_rep(&g, rep);
                for x in g.elements() {
                    for y in g.elements() {
                        assert_eq!(&m[x] * &m[y], m[g.mul(x, y)]);
                    }
                }
            }
            let dims: Vec<usize> = REPS.iter().map(|&r| group_rep(&g, r)[0].rows()).collect();
            assert_eq!(dims[2], g.order());
        }
        let s3 = FinGroup::symmetric(3);
        assert_eq!(group_rep(&s3, Rep::Standard)[0].rows(), 2);
        let chi: Rational = group_rep(&s3, Rep::Sign).iter().map(|m| m.trace()).sum();
        assert_eq!(chi, int(0));
    }

    #[test]
    fn generated_categories() {
        for seed in 0..20 {
            let c = gen_hofin_category(seed, 5, 8);
            assert!(c.is_strictly_homotopy_finite());
            assert!(c.num_arrows() <= MAX_ARROWS);
            assert_eq!(c, gen_hofin_category(seed, 5, 8));
        }
        let single = gen_hofin_category(3, 1, 8);
        assert_eq!(single.num_arrows(), 1);
    }

    #[test]
    fn complexes_and_maps() {
        let mut rng = case_rng(7, 0);
        for _ in 0..20 {
            let x = random_complex(&mut rng, 3, 0, 2);
            let y = random_complex(&mut rng, 3, 0, 2);
            for f in chain_map_basis(&x, &y) {
                f.check(&x, &y).unwrap();
            }
            random_chain_map(&mut rng, &x, &y).check(&x, &y).unwrap();
        }
    }

    #[test]
    fn diagrams_are_natural() {
        let mut rng = case_rng(11, 3);
        for cat in [span(), free_idempotent(), bg(&FinGroup::symmetric(3))] {
            let cat = Arc::new(cat);
            for _ in 0..3 {
                let (x, f) = gen_chain_diagram(&mut rng, &cat, 3, (0, 2));
                x.check_endo(&f).unwrap();
                let (v, g) = gen_vect_diagram(&mut rng, &cat, 4);
                v.check_endo(&g).unwrap();
                assert!(v.dims().iter().all(|&d| d <= 4));
            }
        }
    }
}
