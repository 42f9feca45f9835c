use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;

use super::{Arrow, ArrowId, FinCat, FinCatError, FinGroup, ObjId};

struct KeyedArrow<K> {
    key: K,
    name: String,
    src: ObjId,
    dst: ObjId,
}

/// Builds a category whose arrows are identified by keys; `compose(g, f)` returns the key of `g∘f`.
fn from_keys<K: Clone + Eq + Hash>(
    objects: Vec<String>,
    arrows: Vec<KeyedArrow<K>>,
    identities: &[K],
    compose: impl Fn(&K, &K) -> K,
) -> FinCat {
    let index: HashMap<K, ArrowId> = arrows.iter().enumerate().map(|(i, a)| (a.key.clone(), i)).collect();
    let ids = identities.iter().map(|k| index[k]).collect();
    let keys: Vec<K> = arrows.iter().map(|a| a.key.clone()).collect();
    let plain = arrows.into_iter().map(|a| Arrow { name: a.name, src: a.src, dst: a.dst }).collect();
    FinCat::from_fn(objects, plain, ids, |g, f| {
        let k = compose(&keys[g], &keys[f]);
        *index.get(&k).expect("composite lies in the arrow set")
    })
}

fn letter_names(n: usize) -> Vec<String> {
    (0..n).map(|i| if n <= 26 { ((b'a' + i as u8) as char).to_string() } else { format!("x{i}") }).collect()
}

/// One object, one arrow.
pub fn terminal() -> FinCat {
    discrete_named(vec!["*".into()])
}

/// `n` objects and only identities.
pub fn discrete(n: usize) -> FinCat {
    discrete_named(letter_names(n))
}

fn discrete_named(objects: Vec<String>) -> FinCat {
    let arrows = objects.iter().enumerate().map(|(i, o)| Arrow { name: format!("id_{o}"), src: i, dst: i }).collect();
    let ids = (0..objects.len()).collect();
    FinCat::from_fn(objects, arrows, ids, |g, _| g)
}

/// `a -> b`.
pub fn walking_arrow() -> FinCat {
    free_category_on_dag(&Dag::new(&["a", "b"], &[("f", 0, 1)])).expect("acyclic")
}

/// `b <- a -> c`.
pub fn span() -> FinCat {
    free_category_on_dag(&Dag::new(&["a", "b", "c"], &[("f", 0, 1), ("g", 0, 2)])).expect("acyclic")
}

/// Objects `b1, b2` with `m` parallel arrows `b1 -> b2`.
pub fn parallel_arrows(m: usize) -> FinCat {
    let names: Vec<String> = (0..m).map(|i| format!("f{i}")).collect();
    let edges: Vec<(&str, usize, usize)> = names.iter().map(|n| (n.as_str(), 0, 1)).collect();
    free_category_on_dag(&Dag::new(&["b1", "b2"], &edges)).expect("acyclic")
}

/// One object with an idempotent `e`.
pub fn free_idempotent() -> FinCat {
    let arrows = vec![Arrow { name: "id_*".into(), src: 0, dst: 0 }, Arrow { name: "e".into(), src: 0, dst: 0 }];
    FinCat::from_fn(vec!["*".into()], arrows, vec![0], |g, f| g.max(f))
}

/// One-object category of a group; arrow `i` is element `i`.
pub fn bg(g: &FinGroup) -> FinCat {
    let arrows = g.elements().map(|x| Arrow { name: g.name(x).to_string(), src: 0, dst: 0 }).collect();
    FinCat::from_fn(vec!["*".into()], arrows, vec![g.identity()], |a, b| g.mul(a, b))
}

/// Exactly one arrow between any two of `n` objects.
pub fn indiscrete(n: usize) -> FinCat {
    let names = letter_names(n);
    let mut arrows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let name = if a == b { format!("id_{}", names[a]) } else { format!("{}->{}", names[a], names[b]) };
            arrows.push(KeyedArrow { key: (a, b), name, src: a, dst: b });
        }
    }
    let ids: Vec<(usize, usize)> = (0..n).map(|a| (a, a)).collect();
    from_keys(names, arrows, &ids, |g, f| (f.0, g.1))
}

pub fn opposite(c: &FinCat) -> FinCat {
    let arrows = c.arrows().iter().map(|a| Arrow { name: a.name.clone(), src: a.dst, dst: a.src }).collect();
    let ids = c.objects().map(|a| c.id(a)).collect();
    FinCat::from_fn(c.object_names().to_vec(), arrows, ids, |g, f| c.compose(f, g))
}

/// Arrow `(α, β)` has index `β * |arrows(A)| + α`.
pub fn product(a: &FinCat, b: &FinCat) -> FinCat {
    let (na, nobj) = (a.num_arrows(), a.num_objects());
    let objects = b
        .objects()
        .flat_map(|y| a.objects().map(move |x| (x, y)))
        .map(|(x, y)| format!("({},{})", a.object_name(x), b.object_name(y)))
        .collect();
    let mut arrows = Vec::with_capacity(na * b.num_arrows());
    for beta in b.arrow_ids() {
        for alpha in a.arrow_ids() {
            arrows.push(Arrow {
                name: format!("({},{})", a.arrow_name(alpha), b.arrow_name(beta)),
                src: b.src(beta) * nobj + a.src(alpha),
                dst: b.dst(beta) * nobj + a.dst(alpha),
            });
        }
    }
    let ids = b.objects().flat_map(|y| a.objects().map(move |x| (x, y))).map(|(x, y)| b.id(y) * na + a.id(x)).collect();
    FinCat::from_fn(objects, arrows, ids, |g, f| b.compose(g / na, f / na) * na + a.compose(g % na, f % na))
}

/// Disjoint union; object names are prefixed with the summand index when they collide.
pub fn disjoint_union(parts: &[&FinCat]) -> FinCat {
    let mut all: Vec<&str> = parts.iter().flat_map(|c| c.object_names().iter().map(String::as_str)).collect();
    all.sort_unstable();
    let clash = all.windows(2).any(|w| w[0] == w[1]);
    let mut objects = Vec::new();
    let mut arrows = Vec::new();
    let mut ids = Vec::new();
    let mut offsets = Vec::new();
    for (i, c) in parts.iter().enumerate() {
        let (o_off, a_off) = (objects.len(), arrows.len());
        offsets.push((o_off, a_off));
        let tag = |s: &str| if clash { format!("{i}.{s}") } else { s.to_string() };
        objects.extend(c.object_names().iter().map(|o| tag(o)));
        arrows.extend(c.arrows().iter().map(|a| Arrow { name: tag(&a.name), src: a.src + o_off, dst: a.dst + o_off }));
        ids.extend(c.objects().map(|a| c.id(a) + a_off));
    }
    let owner: Vec<usize> =
        parts.iter().enumerate().flat_map(|(i, c)| std::iter::repeat_n(i, c.num_arrows())).collect();
    FinCat::from_fn(objects, arrows, ids, |g, f| {
        let i = owner[g];
        let off = offsets[i].1;
        parts[i].compose(g - off, f - off) + off
    })
}

/// A finite directed acyclic multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dag {
    pub objects: Vec<String>,
    pub edges: Vec<(String, ObjId, ObjId)>,
}

impl Dag {
    pub fn new(objects: &[&str], edges: &[(&str, ObjId, ObjId)]) -> Dag {
        Dag {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            edges: edges.iter().map(|&(n, s, t)| (n.to_string(), s, t)).collect(),
        }
    }

    fn graph(&self) -> DiGraph<(), ()> {
        let mut g = DiGraph::new();
        let nodes: Vec<_> = self.objects.iter().map(|_| g.add_node(())).collect();
        for &(_, s, t) in &self.edges {
            g.add_edge(nodes[s], nodes[t], ());
        }
        g
    }

    pub fn is_acyclic(&self) -> bool {
        !petgraph::algo::is_cyclic_directed(&self.graph())
    }

    /// Number of paths, including the empty path at each object.
    pub fn count_paths(&self) -> Option<usize> {
        let order = petgraph::algo::toposort(&self.graph(), None).ok()?;
        let mut from = vec![1usize; self.objects.len()];
        for node in order.into_iter().rev() {
            let v = node.index();
            for &(_, s, t) in &self.edges {
                if s == v {
                    from[v] = from[v].saturating_add(from[t]);
                }
            }
        }
        Some(from.iter().fold(0usize, |a, &b| a.saturating_add(b)))
    }
}

/// Free category on a DAG: arrows are paths, named by their edges in
/// application order joined with `;`.
pub fn free_category_on_dag(dag: &Dag) -> Result<FinCat, FinCatError> {
    let n = dag.objects.len();
    if dag.edges.iter().any(|&(_, s, t)| s >= n || t >= n) {
        return Err(FinCatError::BadInput("edge endpoint out of range".into()));
    }
    if !dag.is_acyclic() {
        return Err(FinCatError::Cyclic);
    }
    // paths as (start, edge list), enumerated by depth-first search from each object
    let mut arrows = Vec::new();
    for a in 0..n {
        let mut stack = vec![(a, Vec::<usize>::new())];
        let mut found = Vec::new();
        while let Some((at, path)) = stack.pop() {
            for (e, &(_, s, t)) in dag.edges.iter().enumerate().rev() {
                if s == at {
                    let mut p = path.clone();
                    p.push(e);
                    stack.push((t, p));
                }
            }
            found.push((at, path));
        }
        found.sort_by(|x, y| x.1.len().cmp(&y.1.len()).then(x.1.cmp(&y.1)));
        for (end, path) in found {
            let name = if path.is_empty() {
                format!("id_{}", dag.objects[a])
            } else {
                path.iter().map(|&e| dag.edges[e].0.as_str()).collect::<Vec<_>>().join(";")
            };
            arrows.push(KeyedArrow { key: (a, path), name, src: a, dst: end });
        }
    }
    let ids: Vec<(usize, Vec<usize>)> = (0..n).map(|a| (a, Vec::new())).collect();
    Ok(from_keys(dag.objects.clone(), arrows, &ids, |g, f| {
        let mut p = f.1.clone();
        p.extend_from_slice(&g.1);
        (f.0, p)
    }))
}

/// Opposite of the category of `[0..=n]` and monotone injections.
pub fn delta_prime_op(n: usize) -> FinCat {
    let objects: Vec<String> = (0..=n).map(|k| format!("[{k}]")).collect();
    let mut arrows = Vec::new();
    for j in 0..=n {
        for k in j..=n {
            for img in subsets(k + 1, j + 1) {
                let name = if j == k {
                    format!("id_[{k}]")
                } else {
                    format!("d{}:[{j}]->[{k}]", img.iter().map(|x| x.to_string()).collect::<String>())
                };
                // the injection [j] -> [k]; reversed below
                arrows.push(KeyedArrow { key: (k, img), name, src: k, dst: j });
            }
        }
    }
    let ids: Vec<(usize, Vec<usize>)> = (0..=n).map(|k| (k, (0..=k).collect())).collect();
    // an arrow of the opposite category g∘f corresponds to the injection f∘g
    from_keys(objects, arrows, &ids, |g, f| (f.0, g.1.iter().map(|&t| f.1[t]).collect()))
}

/// Increasing `r`-element subsets of `0..m` in lexicographic order.
fn subsets(m: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..m {
            cur.push(x);
            rec(x + 1, m, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, r, &mut Vec::new(), &mut out);
    out
}

/// Two objects `a, b` with `Aut(a) = G`, `Aut(b) = H`, `hom(a, b) = H` and
/// `[h] ∘ g = [h φ(g)]`, `h' ∘ [h] = [h' h]`.
pub fn category_from_group_hom(g: &FinGroup, h: &FinGroup, phi: &[usize]) -> Result<FinCat, FinCatError> {
    if !g.is_homomorphism(h, phi) {
        return Err(FinCatError::BadInput("map is not a group homomorphism".into()));
    }
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum K {
        A(usize),
        B(usize),
        AB(usize),
    }
    let mut arrows = Vec::new();
    for x in g.elements() {
        arrows.push(KeyedArrow { key: K::A(x), name: format!("a:{}", g.name(x)), src: 0, dst: 0 });
    }
    for y in h.elements() {
        arrows.push(KeyedArrow { key: K::B(y), name: format!("b:{}", h.name(y)), src: 1, dst: 1 });
    }
    for y in h.elements() {
        arrows.push(KeyedArrow { key: K::AB(y), name: format!("[{}]", h.name(y)), src: 0, dst: 1 });
    }
    let ids = [K::A(g.identity()), K::B(h.identity())];
    Ok(from_keys(vec!["a".into(), "b".into()], arrows, &ids, |second, first| match (second, first) {
        (K::A(x), K::A(y)) => K::A(g.mul(*x, *y)),
        (K::B(x), K::B(y)) => K::B(h.mul(*x, *y)),
        (K::B(x), K::AB(y)) => K::AB(h.mul(*x, *y)),
        (K::AB(y), K::A(x)) => K::AB(h.mul(*y, phi[*x])),
        _ => unreachable!("only composable pairs are queried"),
    }))
}

/// Orbit category on the given subgroups: arrows `G/H -> G/K` are cosets `gK`
/// with `g⁻¹Hg ⊆ K`, acting by `xH ↦ xgK`.
pub fn orbit_category(g: &FinGroup, subgroups: &[(String, Vec<usize>)]) -> Result<FinCat, FinCatError> {
    for (name, s) in subgroups {
        if !g.is_subgroup(s) {
            return Err(FinCatError::BadInput(format!("{name} is not a subgroup")));
        }
    }
    let sets: Vec<BTreeSet<usize>> = subgroups.iter().map(|(_, s)| s.iter().copied().collect()).collect();
    let coset = |x: usize, k: usize| -> Vec<usize> {
        let c: BTreeSet<usize> = sets[k].iter().map(|&y| g.mul(x, y)).collect();
        c.into_iter().collect()
    };
    let objects: Vec<String> = subgroups.iter().map(|(n, _)| format!("G/{n}")).collect();
    let mut arrows = Vec::new();
    let mut ids = Vec::new();
    for (hi, hset) in sets.iter().enumerate() {
        for ki in 0..sets.len() {
            let mut seen = BTreeSet::new();
            for x in g.elements() {
                let conj_ok = hset.iter().all(|&h| sets[ki].contains(&g.mul(g.mul(g.inv(x), h), x)));
                if !conj_ok {
                    continue;
                }
                let c = coset(x, ki);
                if seen.insert(c.clone()) {
                    let name = if hi == ki && c == coset(g.identity(), ki) {
                        format!("id_{}", objects[hi])
                    } else {
                        format!("{}{}:{}->{}", g.name(c[0]), subgroups[ki].0, objects[hi], objects[ki])
                    };
                    arrows.push(KeyedArrow { key: (hi, ki, c), name, src: hi, dst: ki });
                }
            }
        }
        ids.push((hi, hi, coset(g.identity(), hi)));
    }
    Ok(from_keys(objects, arrows, &ids, |second, first| {
        // first = xK (H -> K), second = yL (K -> L); composite is xyL
        let (x, y) = (first.2[0], second.2[0]);
        (first.0, second.1, coset(g.mul(x, y), second.1))
    }))
}

pub fn twisted_arrow(c: &FinCat) -> FinCat {
    let objects: Vec<String> = c.arrows().iter().map(|a| a.name.clone()).collect();
    let mut arrows = Vec::new();
    for f1 in c.arrow_ids() {
        let (a1, b1) = (c.src(f1), c.dst(f1));
        for f2 in c.arrow_ids() {
            let (a2, b2) = (c.src(f2), c.dst(f2));
            for &h in c.hom(b1, b2) {
                let hf = c.compose(h, f1);
                for &g in c.hom(a2, a1) {
                    if c.compose(hf, g) == f2 {
                        let name =
                            format!("({},{}):{}->{}", c.arrow_name(h), c.arrow_name(g), objects[f1], objects[f2]);
                        arrows.push(KeyedArrow { key: (f1, h, g), name, src: f1, dst: f2 });
                    }
                }
            }
        }
    }
    let ids: Vec<(ArrowId, ArrowId, ArrowId)> = c.arrow_ids().map(|f| (f, c.id(c.dst(f)), c.id(c.src(f)))).collect();
    let cat = from_keys(objects, arrows, &ids, |second, first| {
        (first.0, c.compose(second.1, first.1), c.compose(first.2, second.2))
    });
    rename_identities(cat)
}

fn rename_identities(cat: FinCat) -> FinCat {
    let mut arrows = cat.arrows().to_vec();
    for a in cat.objects() {
        arrows[cat.id(a)].name = format!("id_{}", cat.object_name(a));
    }
    let ids = cat.objects().map(|a| cat.id(a)).collect();
    FinCat::from_fn(cat.object_names().to_vec(), arrows, ids, |g, f| cat.compose(g, f))
}

/// The category of pairs composable in both orders, with its components.
#[derive(Clone, Debug)]
pub struct LambdaCat {
    pub cat: FinCat,
    /// Object `i` is the pair `(α: a -> b, β: b -> a)`.
    pub pairs: Vec<(ArrowId, ArrowId)>,
    /// Component index of each object, numbered in order of first appearance.
    pub component: Vec<usize>,
    pub num_components: usize,
}

/// Objects `(α: a -> b, β: b -> a)`; arrows `(ξ: a -> a', ζ: b' -> b)` into
/// `(α', β')` with `α = ζ α' ξ` and `β' = ξ β ζ`.
pub fn lambda_cat(c: &FinCat) -> LambdaCat {
    let mut pairs = Vec::new();
    for a in c.objects() {
        for b in c.objects() {
            for &alpha in c.hom(a, b) {
                for &beta in c.hom(b, a) {
                    pairs.push((alpha, beta));
                }
            }
        }
    }
    let objects: Vec<String> =
        pairs.iter().map(|&(x, y)| format!("({},{})", c.arrow_name(x), c.arrow_name(y))).collect();
    let mut arrows = Vec::new();
    let mut uf = UnionFind::<usize>::new(pairs.len());
    for (i, &(alpha, beta)) in pairs.iter().enumerate() {
        let (a, b) = (c.src(alpha), c.dst(alpha));
        for (j, &(alpha2, beta2)) in pairs.iter().enumerate() {
            let (a2, b2) = (c.src(alpha2), c.dst(alpha2));
            for &xi in c.hom(a, a2) {
                let a2xi = c.compose(alpha2, xi);
                for &zeta in c.hom(b2, b) {
                    if c.compose(zeta, a2xi) == alpha && c.compose(xi, c.compose(beta, zeta)) == beta2 {
                        let name = format!("({},{})", c.arrow_name(xi), c.arrow_name(zeta));
                        arrows.push(KeyedArrow { key: (i, j, xi, zeta), name, src: i, dst: j });
                        uf.union(i, j);
                    }
                }
            }
        }
    }
    let ids: Vec<(usize, usize, ArrowId, ArrowId)> =
        pairs.iter().enumerate().map(|(i, &(alpha, _))| (i, i, c.id(c.src(alpha)), c.id(c.dst(alpha)))).collect();
    let cat = from_keys(objects, arrows, &ids, |second, first| {
        (first.0, second.1, c.compose(second.2, first.2), c.compose(first.3, second.3))
    });
    let mut label = HashMap::new();
    let component: Vec<usize> = (0..pairs.len())
        .map(|i| {
            let n = label.len();
            *label.entry(uf.find(i)).or_insert(n)
        })
        .collect();
    LambdaCat { cat: rename_identities(cat), pairs, num_components: label.len(), component }
}

/// An element of order 3 in `S_3` and its square.
fn three_cycle(s3: &FinGroup) -> [usize; 3] {
    let x = s3
        .elements()
        .find(|&x| x != s3.identity() && s3.mul(x, s3.mul(x, x)) == s3.identity())
        .expect("S3 has a 3-cycle");
    [s3.identity(), x, s3.mul(x, x)]
}

/// Orbit categories and homomorphism categories used as the EI corpus.
fn builtin_ei(name: &str) -> Option<FinCat> {
    let sub = |n: &str, s: Vec<usize>| (n.to_string(), s);
    let c2 = FinGroup::cyclic(2);
    let c4 = FinGroup::cyclic(4);
    let s3 = FinGroup::symmetric(3);
    let rot = three_cycle(&s3);
    let all = |g: &FinGroup| g.elements().collect::<Vec<_>>();
    let cat = match name {
        "OC2" => orbit_category(&c2, &[sub("e", vec![0]), sub("C2", all(&c2))]),
        "OC4" => orbit_category(&c4, &[sub("e", vec![0]), sub("C2", vec![0, 2]), sub("C4", all(&c4))]),
        "OS3" => {
            let t = s3.elements().find(|&x| x != s3.identity() && s3.mul(x, x) == s3.identity()).expect("involution");
            orbit_category(
                &s3,
                &[sub("e", vec![0]), sub("C2", vec![0, t]), sub("C3", rot.to_vec()), sub("S3", all(&s3))],
            )
        }
        "hom_C2_C2_id" => category_from_group_hom(&c2, &c2, &[0, 1]),
        "hom_C2_C2_triv" => category_from_group_hom(&c2, &c2, &[0, 0]),
        "hom_C2_C4" => category_from_group_hom(&c2, &c4, &[0, 2]),
        "hom_C3_S3" => category_from_group_hom(&FinGroup::cyclic(3), &s3, &rot),
        _ => return None,
    };
    Some(cat.expect("builtin construction"))
}

/// Names understood by [`builtin`]; a trailing `N` stands for a number.
pub const BUILTIN_NAMES: &[&str] = &[
    "terminal",
    "walking_arrow",
    "span",
    "free_idempotent",
    "discreteN",
    "indiscreteN",
    "parallelN",
    "delta_prime_opN",
    "BCN",
    "BSN",
    "OC2",
    "OC4",
    "OS3",
    "hom_C2_C2_id",
    "hom_C2_C2_triv",
    "hom_C2_C4",
    "hom_C3_S3",
];

/// Looks up a named construction.
pub fn builtin(name: &str) -> Option<FinCat> {
    let numbered = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    match name {
        "terminal" | "1" => return Some(terminal()),
        "walking_arrow" | "2" => return Some(walking_arrow()),
        "span" | "pushout" => return Some(span()),
        "free_idempotent" | "E" => return Some(free_idempotent()),
        _ => {}
    }
    if let Some(n) = numbered("discrete") {
        return Some(discrete(n));
    }
    if let Some(n) = numbered("indiscrete").filter(|&n| n > 0) {
        return Some(indiscrete(n));
    }
    if let Some(n) = numbered("parallel").filter(|&n| n > 0) {
        return Some(parallel_arrows(n));
    }
    if let Some(n) = numbered("delta_prime_op").filter(|&n| n <= 6) {
        return Some(delta_prime_op(n));
    }
    if let Some(n) = numbered("BC").filter(|&n| n > 0) {
        return Some(bg(&FinGroup::cyclic(n)));
    }
    if let Some(n) = numbered("BS").filter(|&n| (1..=4).contains(&n)) {
        return Some(bg(&FinGroup::symmetric(n)));
    }
    builtin_ei(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::count_strings;
    use num_bigint::BigUint;

    #[test]
    fn constructions_are_categories() {
        let g = FinGroup::symmetric(3);
        let cats = vec![
            terminal(),
            discrete(3),
            walking_arrow(),
            span(),
            parallel_arrows(3),
            free_idempotent(),
            bg(&g),
            indiscrete(3),
            opposite(&span()),
            product(&walking_arrow(), &bg(&FinGroup::cyclic(2))),
            disjoint_union(&[&bg(&FinGroup::cyclic(2)), &bg(&FinGroup::cyclic(3))]),
            delta_prime_op(3),
            twisted_arrow(&span()),
            lambda_cat(&walking_arrow()).cat,
            category_from_group_hom(&FinGroup::cyclic(2), &FinGroup::cyclic(4), &[0, 2]).unwrap(),
            orbit_category(
                &g,
                &[("1".into(), vec![0]), ("C2".into(), vec![0, 1]), ("S3".into(), g.elements().collect())],
            )
            .unwrap(),
        ];
        for c in cats {
            assert_eq!(c.violations(), vec![], "{c:?}");
        }
    }

    #[test]
    fn delta_prime_counts() {
        let d = delta_prime_op(3);
        let top = d.object_by_name("[3]").unwrap();
        let counts: Vec<BigUint> = (0..4).map(|k| count_strings(&d, top, k)).collect();
        assert_eq!(counts, [1u32, 14, 36, 24].map(BigUint::from).to_vec());
        assert_eq!(delta_prime_op(0).num_arrows(), 1);
        let d1 = delta_prime_op(1);
        assert_eq!(d1.hom(1, 0).len(), 2);
    }

    #[test]
    fn twisted_of_arrow_is_cospan() {
        let t = twisted_arrow(&walking_arrow());
        assert_eq!(t.num_objects(), 3);
        assert_eq!(t.num_arrows(), 5);
        let f = t.object_by_name("f").unwrap();
        let into_f: usize = t.objects().filter(|&x| x != f).map(|x| t.hom(x, f).len()).sum();
        assert_eq!(into_f, 2);
    }

    #[test]
    fn lambda_components() {
        let l = lambda_cat(&walking_arrow());
        assert_eq!(l.cat.num_objects(), 2);
        assert_eq!(l.cat.num_arrows(), 2);
        let s3 = bg(&FinGroup::symmetric(3));
        assert_eq!(lambda_cat(&s3).num_components, 3);
    }

    #[test]
    fn opposite_is_involutive() {
        let c = category_from_group_hom(&FinGroup::cyclic(3), &FinGroup::symmetric(3), &[0, 3, 4]).unwrap();
        assert_eq!(opposite(&opposite(&c)), c);
    }

    #[test]
    fn cyclic_dag_rejected() {
        let d = Dag::new(&["a", "b"], &[("f", 0, 1), ("g", 1, 0)]);
        assert_eq!(free_category_on_dag(&d), Err(FinCatError::Cyclic));
    }
}
