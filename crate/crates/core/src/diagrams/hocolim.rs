use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{ChainDiagram, ChainEndo, DiagramError, NatEndo};
use crate::exactalg::{cone, idempotent_image, lefschetz, ChainComplex, ChainMap, Cone, RatMatrix, Rational};
use crate::fincat::{
    all_strings, max_string_length, poset_reflection, skeletalize, string_iso_classes, Arrow, ArrowId, ArrowString,
    FinCat, FinCatError, ObjId, PosetReflection, Skeleton, StringOrbits,
};

/// A complex together with the endomorphism induced on it.
#[derive(Clone, Debug)]
pub struct HocolimResult {
    pub complex: ChainComplex,
    pub endo: ChainMap,
}

impl HocolimResult {
    pub fn lefschetz(&self) -> Rational {
        lefschetz(&self.endo).expect("endomorphism components are square")
    }
}

/// One summand `X_{a0}` in internal degree `internal` sitting over a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub string: ArrowString,
    pub internal: i32,
    pub degree: i32,
    pub offset: usize,
    pub dim: usize,
}

/// Total complex of the semisimplicial bar construction.
#[derive(Clone, Debug)]
pub struct Hocolim {
    pub complex: ChainComplex,
    pub summands: Vec<Summand>,
}

impl Hocolim {
    /// Endomorphism acting by `f_{a0}` on each summand.
    pub fn endo(&self, f: &ChainEndo) -> ChainMap {
        let mut comps: BTreeMap<i32, RatMatrix> =
            self.complex.degrees().map(|n| (n, RatMatrix::zeros(self.complex.dim(n), self.complex.dim(n)))).collect();
        for s in &self.summands {
            let m = f.comps[s.string.start].at(s.internal, s.dim, s.dim);
            comps.get_mut(&s.degree).expect("degree in range").set_block(s.offset, s.offset, &m);
        }
        ChainMap::new(comps)
    }

    pub fn with_endo(&self, f: &ChainEndo) -> HocolimResult {
        HocolimResult { complex: self.complex.clone(), endo: self.endo(f) }
    }
}

fn sign(k: usize) -> Rational {
    Rational::from_integer(if k.is_multiple_of(2) { 1 } else { -1 }.into())
}

/// `i`-th face of a string: `0` applies and drops the first arrow, `k` drops
/// the last, anything between composes two neighbours.
fn face(cat: &FinCat, s: &ArrowString, i: usize) -> ArrowString {
    let k = s.arrows.len();
    if i == 0 {
        ArrowString { start: cat.dst(s.arrows[0]), arrows: s.arrows[1..].to_vec() }
    } else if i == k {
        ArrowString { start: s.start, arrows: s.arrows[..k - 1].to_vec() }
    } else {
        let mut arrows = s.arrows[..i - 1].to_vec();
        arrows.push(cat.compose(s.arrows[i], s.arrows[i - 1]));
        arrows.extend_from_slice(&s.arrows[i + 1..]);
        ArrowString { start: s.start, arrows }
    }
}

/// Bar construction over a strictly homotopy finite category: summands
/// `X_{a0}` over nonidentity strings `a0 -> ... -> ak` in total degree `k + m`,
/// with `D = Σ (-1)^i ∂_i + (-1)^k d`.
pub fn hocolim_hofin(x: &ChainDiagram) -> Result<Hocolim, DiagramError> {
    let cat = x.cat();
    let top = max_string_length(cat)?;
    let Some((lo, hi)) = x.degree_range() else {
        return Ok(Hocolim { complex: ChainComplex::zero(), summands: Vec::new() });
    };
    let strings: Vec<Vec<ArrowString>> = (0..=top).map(|k| all_strings(cat, k)).collect();
    let mut summands = Vec::new();
    let mut index: HashMap<(ArrowString, i32), usize> = HashMap::new();
    let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
    for layer in &strings {
        for s in layer {
            for m in lo..=hi {
                let dim = x.complex(s.start).dim(m);
                if dim == 0 {
                    continue;
                }
                let degree = s.len() as i32 + m;
                let slot = dims.entry(degree).or_insert(0);
                index.insert((s.clone(), m), summands.len());
                summands.push(Summand { string: s.clone(), internal: m, degree, offset: *slot, dim });
                *slot += dim;
            }
        }
    }
    let mut diffs: BTreeMap<i32, RatMatrix> = BTreeMap::new();
    for (&n, &d) in &dims {
        diffs.insert(n, RatMatrix::zeros(dims.get(&(n - 1)).copied().unwrap_or(0), d));
    }
    for s in &summands {
        let k = s.string.len();
        let d = diffs.get_mut(&s.degree).expect("degree present");
        for i in 0..=k {
            if k == 0 {
                break;
            }
            let target = face(cat, &s.string, i);
            let Some(&t) = index.get(&(target, s.internal)) else { continue };
            let block = if i == 0 { x.map_at(s.string.arrows[0], s.internal) } else { RatMatrix::identity(s.dim) };
            d.add_block(summands[t].offset, s.offset, &block.scale(&sign(i)));
        }
        if let Some(&t) = index.get(&(s.string.clone(), s.internal - 1)) {
            let inner = x.complex(s.string.start).d(s.internal);
            d.add_block(summands[t].offset, s.offset, &inner.scale(&sign(k)));
        }
    }
    let complex = ChainComplex::from_parts(&dims, &diffs)?;
    Ok(Hocolim { complex, summands })
}

/// Homotopy pushout of a diagram over a span.
pub fn pushout_ho(x: &ChainDiagram) -> Result<Hocolim, DiagramError> {
    hocolim_hofin(x)
}

/// Mapping cone of `f: X -> Y`.
pub fn cofiber(f: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> Result<Cone, DiagramError> {
    Ok(cone(f, x, y)?)
}

/// Image of the averaging idempotent of a finite group acting on a complex.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub complex: ChainComplex,
    pub incl: ChainMap,
    pub proj: ChainMap,
}

impl Coinvariants {
    pub fn endo(&self, f: &ChainMap) -> ChainMap {
        self.proj.after(f).after(&self.incl)
    }
}

/// Coinvariants of `c` under the maps `action` (all elements of a finite group,
/// repetitions allowed as long as each element occurs equally often).
pub fn coinvariants(c: &ChainComplex, action: &[ChainMap]) -> Coinvariants {
    if c.is_zero() {
        return Coinvariants { complex: ChainComplex::zero(), incl: ChainMap::zero(), proj: ChainMap::zero() };
    }
    let scale = Rational::new(1.into(), (action.len() as i64).into());
    let mut dims = BTreeMap::new();
    let mut incl = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for n in c.degrees() {
        let d = c.dim(n);
        let mut e = RatMatrix::zeros(d, d);
        for g in action {
            e = &e + &g.at(n, d, d);
        }
        let split = idempotent_image(&e.scale(&scale)).expect("averaging is idempotent");
        dims.insert(n, split.dim());
        incl.insert(n, split.incl);
        proj.insert(n, split.proj);
    }
    let diffs: BTreeMap<i32, RatMatrix> = c
        .degrees()
        .map(|n| {
            (
                n,
                &(&proj.get(&(n - 1)).cloned().unwrap_or_else(|| RatMatrix::zeros(0, c.dim(n - 1))) * &c.d(n))
                    * &incl[&n],
            )
        })
        .collect();
    let complex = ChainComplex::from_parts(&dims, &diffs).expect("coinvariants of a complex form a complex");
    Coinvariants { complex, incl: ChainMap::new(incl), proj: ChainMap::new(proj) }
}

/// Coinvariants of a diagram over a one-object groupoid, with the induced endomorphism.
pub fn coinvariants_group(x: &ChainDiagram, f: &ChainEndo) -> Result<HocolimResult, DiagramError> {
    let cat = x.cat();
    if cat.num_objects() != 1 || !cat.is_groupoid() {
        return Err(DiagramError::Cat(FinCatError::NotGroupoid));
    }
    let q = coinvariants(x.complex(0), x.maps());
    Ok(HocolimResult { endo: q.endo(&f.comps[0]), complex: q.complex })
}

/// Homotopy colimit over a finite groupoid: coinvariants at one object per
/// isomorphism class.
pub fn hocolim_groupoid(x: &ChainDiagram, f: &ChainEndo) -> Result<HocolimResult, DiagramError> {
    let cat = x.cat();
    if !cat.is_groupoid() {
        return Err(DiagramError::Cat(FinCatError::NotGroupoid));
    }
    let skel = skeletalize(cat);
    let parts: Vec<(Coinvariants, ChainMap)> = skel
        .reps
        .iter()
        .map(|&r| {
            let action: Vec<ChainMap> = cat.endos(r).iter().map(|&g| x.map(g).clone()).collect();
            let q = coinvariants(x.complex(r), &action);
            let e = q.endo(&f.comps[r]);
            (q, e)
        })
        .collect();
    let complexes: Vec<&ChainComplex> = parts.iter().map(|(q, _)| &q.complex).collect();
    let complex = ChainComplex::direct_sum(&complexes);
    let endo = ChainMap::direct_sum(&parts.iter().map(|(q, e)| (e, &q.complex, &q.complex)).collect::<Vec<_>>());
    Ok(HocolimResult { complex, endo })
}

/// The stages of the homotopy colimit over a finite EI category.
#[derive(Clone, Debug)]
pub struct EiResolution {
    pub skeleton: Skeleton,
    pub reflection: PosetReflection,
    /// Objects of the indexing category: strictly increasing chains.
    pub chains: Vec<Vec<ObjId>>,
    pub orbits: Vec<StringOrbits>,
    /// Opposite of the poset of chains under inclusion.
    pub index_cat: Arc<FinCat>,
    /// Sum of coinvariants over string classes at each chain.
    pub fibers: ChainDiagram,
    pub fiber_endo: ChainEndo,
    pub hocolim: Hocolim,
    pub result: HocolimResult,
}

/// Strictly increasing chains of a poset, shortest first, lexicographic within a length.
/// Positions of `sub` inside `chain` if it is a subsequence.
fn embedding(chain: &[ObjId], sub: &[ObjId]) -> Option<Vec<usize>> {
    let mut pos = Vec::with_capacity(sub.len());
    let mut i = 0;
    for &b in sub {
        while i < chain.len() && chain[i] != b {
            i += 1;
        }
        if i == chain.len() {
            return None;
        }
        pos.push(i);
        i += 1;
    }
    Some(pos)
}

/// Homotopy colimit over a finite EI category via the poset of chains of its
/// preorder reflection.
pub fn hocolim_ei(x: &ChainDiagram, f: &ChainEndo) -> Result<EiResolution, DiagramError> {
    let cat = x.cat();
    if !cat.is_ei() {
        return Err(DiagramError::Cat(FinCatError::NotEI));
    }
    let skeleton = skeletalize(cat);
    let s = Arc::new(skeleton.cat.clone());
    let xs = x.restrict(s.clone(), &skeleton.reps, &skeleton.embed);
    let fs: Vec<ChainMap> = skeleton.reps.iter().map(|&r| f.comps[r].clone()).collect();
    let reflection = poset_reflection(&s)?;
    let chains = reflection.chains();
    let orbits: Vec<StringOrbits> = chains.iter().map(|c| string_iso_classes(&s, c)).collect::<Result<_, _>>()?;

    // fibers: one coinvariant summand per string class
    let mut fibers = Vec::with_capacity(chains.len());
    for (c, o) in chains.iter().zip(&orbits) {
        let parts: Vec<Coinvariants> = o
            .classes
            .iter()
            .map(|cl| {
                let action: Vec<ChainMap> = cl.stabilizer.iter().map(|g| xs.map(g[0]).clone()).collect();
                coinvariants(xs.complex(c[0]), &action)
            })
            .collect();
        fibers.push(parts);
    }
    let complexes: Vec<ChainComplex> = fibers
        .iter()
        .map(|parts| ChainComplex::direct_sum(&parts.iter().map(|q| &q.complex).collect::<Vec<_>>()))
        .collect();

    // index category: an arrow from each chain to each of its nonempty subchains
    let mut arrows = Vec::new();
    let mut arrow_ix = HashMap::new();
    for (i, c) in chains.iter().enumerate() {
        for (j, b) in chains.iter().enumerate() {
            if embedding(c, b).is_some() {
                arrow_ix.insert((i, j), arrows.len());
                let name = if i == j {
                    format!("id_{}", chain_name(&s, c))
                } else {
                    format!("{}>{}", chain_name(&s, c), chain_name(&s, b))
                };
                arrows.push(Arrow { name, src: i, dst: j });
            }
        }
    }
    let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.src, a.dst)).collect();
    let ids = (0..chains.len()).map(|i| arrow_ix[&(i, i)]).collect();
    let names = chains.iter().map(|c| chain_name(&s, c)).collect();
    let index_cat = Arc::new(FinCat::from_fn(names, arrows, ids, |g, f| arrow_ix[&(ends[f].0, ends[g].1)]));

    let mut maps = Vec::with_capacity(ends.len());
    for &(i, j) in &ends {
        if i == j {
            maps.push(complexes[i].identity_map());
            continue;
        }
        let gamma = embedding(&chains[i], &chains[j]).expect("subchain");
        maps.push(face_map(
            &s,
            &xs,
            &orbits[i],
            &fibers[i],
            &orbits[j],
            &fibers[j],
            &gamma,
            &complexes[i],
            &complexes[j],
        ));
    }
    let fibers_diagram = ChainDiagram::new(index_cat.clone(), complexes.clone(), maps)?;
    let fiber_endo = NatEndo::new(
        chains
            .iter()
            .zip(&fibers)
            .zip(&complexes)
            .map(|((c, parts), total)| {
                let es: Vec<ChainMap> = parts.iter().map(|q| q.endo(&fs[c[0]])).collect();
                let trip: Vec<(&ChainMap, &ChainComplex, &ChainComplex)> =
                    es.iter().zip(parts).map(|(e, q)| (e, &q.complex, &q.complex)).collect();
                let m = ChainMap::direct_sum(&trip);
                debug_assert!(m.check(total, total).is_ok());
                m
            })
            .collect(),
    );
    let hocolim = hocolim_hofin(&fibers_diagram)?;
    let result = hocolim.with_endo(&fiber_endo);
    Ok(EiResolution {
        skeleton,
        reflection,
        chains,
        orbits,
        index_cat,
        fibers: fibers_diagram,
        fiber_endo,
        hocolim,
        result,
    })
}

fn chain_name(cat: &FinCat, c: &[ObjId]) -> String {
    c.iter().map(|&a| cat.object_name(a)).collect::<Vec<_>>().join("<")
}

/// Map between fibers along the face `γ: b⃗ ↪ a⃗`: each string class is
/// restricted to the subchain, moved to its class representative, and pushed
/// through coinvariants.
#[allow(clippy::too_many_arguments)]
fn face_map(
    cat: &FinCat,
    x: &ChainDiagram,
    src_orbits: &StringOrbits,
    src_parts: &[Coinvariants],
    dst_orbits: &StringOrbits,
    dst_parts: &[Coinvariants],
    gamma: &[usize],
    src: &ChainComplex,
    dst: &ChainComplex,
) -> ChainMap {
    let src_off = part_offsets(src_parts, src);
    let dst_off = part_offsets(dst_parts, dst);
    let mut comps: BTreeMap<i32, RatMatrix> = BTreeMap::new();
    let lo = src.lo().min(dst.lo());
    let hi = src.hi().max(dst.hi());
    if src.is_zero() || dst.is_zero() {
        return ChainMap::zero();
    }
    for n in lo..=hi {
        comps.insert(n, RatMatrix::zeros(dst.dim(n), src.dim(n)));
    }
    for (ci, class) in src_orbits.classes.iter().enumerate() {
        let r = &class.rep.arrows;
        let start = src_orbits.chain[0];
        // the part of the string before the first kept object
        let prefix = if gamma[0] == 0 { cat.id(start) } else { cat.compose_path(&r[..gamma[0]]) };
        let beta: Vec<ArrowId> = gamma.windows(2).map(|w| cat.compose_path(&r[w[0]..w[1]])).collect();
        let (cj, delta) = dst_orbits.locate(&beta).expect("restricted string lies in some class");
        let back = cat.inverse(delta[0]).expect("automorphism");
        let carry = x.map(cat.compose(back, prefix));
        let (sp, dp) = (&src_parts[ci], &dst_parts[cj]);
        for n in lo..=hi {
            let (sd, dd) = (sp.complex.dim(n), dp.complex.dim(n));
            if sd == 0 || dd == 0 {
                continue;
            }
            let xa = x.complex(x.cat().src(prefix)).dim(n);
            let xb = x.complex(x.cat().dst(prefix)).dim(n);
            let m = &(&dp.proj.at(n, dd, xb) * &carry.at(n, xb, xa)) * &sp.incl.at(n, xa, sd);
            comps.get_mut(&n).expect("degree").set_block(dst_off[cj][&n], src_off[ci][&n], &m);
        }
    }
    ChainMap::new(comps.into_iter().filter(|(_, m)| m.rows() > 0 || m.cols() > 0).collect())
}

fn part_offsets(parts: &[Coinvariants], total: &ChainComplex) -> Vec<BTreeMap<i32, usize>> {
    let mut running: BTreeMap<i32, usize> = BTreeMap::new();
    parts
        .iter()
        .map(|q| {
            let here: BTreeMap<i32, usize> =
                total.degrees().map(|n| (n, running.get(&n).copied().unwrap_or(0))).collect();
            for n in q.complex.degrees() {
                *running.entry(n).or_insert(0) += q.complex.dim(n);
            }
            here
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::VectDiagram;
    use crate::exactalg::{int, rat};
    use crate::fincat::{bg, category_from_group_hom, span, terminal, FinGroup};

    #[test]
    fn point_hocolim_is_the_value() {
        let t = Arc::new(terminal());
        let c =
            ChainComplex::new(0, vec![2, 1], vec![RatMatrix::zeros(0, 2), RatMatrix::from_i64(2, 1, &[1, 0])]).unwrap();
        let x = ChainDiagram::new(t, vec![c.clone()], vec![c.identity_map()]).unwrap();
        let h = hocolim_hofin(&x).unwrap();
        assert_eq!(h.complex, c);
    }

    #[test]
    fn span_of_points() {
        let cat = Arc::new(span());
        let x = VectDiagram::constant(cat, 1).to_chain(0);
        let h = hocolim_hofin(&x).unwrap();
        assert_eq!(h.complex.dims(), BTreeMap::from([(0, 3), (1, 2)]));
        let r = h.with_endo(&x.identity_endo());
        assert_eq!(r.lefschetz(), int(1));
    }

    #[test]
    fn regular_coinvariants() {
        let cat = Arc::new(bg(&FinGroup::cyclic(2)));
        let x = VectDiagram::from_generators(
            cat,
            vec![2],
            &BTreeMap::from([(1, RatMatrix::from_i64(2, 2, &[0, 1, 1, 0]))]),
        )
        .unwrap()
        .to_chain(0);
        let r = coinvariants_group(&x, &x.identity_endo()).unwrap();
        assert_eq!(r.complex.total_dim(), 1);
        let g = hocolim_groupoid(&x, &x.identity_endo()).unwrap();
        assert_eq!(g.lefschetz(), int(1));
        let e = hocolim_ei(&x, &x.identity_endo()).unwrap();
        assert_eq!(e.result.lefschetz(), int(1));
        let _ = rat(1, 2);
    }

    #[test]
    fn ei_on_group_hom_category() {
        let c2 = FinGroup::cyclic(2);
        let cat = Arc::new(category_from_group_hom(&c2, &c2, &[0, 1]).unwrap());
        let x = VectDiagram::constant(cat, 1).to_chain(0);
        let e = hocolim_ei(&x, &x.identity_endo()).unwrap();
        // rationally the nerve is acyclic
        assert_eq!(e.result.complex.homology_dims().values().sum::<usize>(), 1);
        assert_eq!(e.result.lefschetz(), int(1));
    }
}
