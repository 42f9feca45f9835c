use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use super::corpus::{corpus, ei_corpus, CorpusEntry, Method};
use super::gen::{
    case_rng, gen_chain_diagram, gen_hofin_with, gen_vect_diagram, random_chain_map, random_complex, random_matrix,
    random_unimodular, random_vect_endo, CaseRng,
};
use super::{CaseResult, VerificationReport, Witness};
use crate::coeffs::{
    coeff_cofiber, coeff_coproduct, coeff_ei, coeff_ei_desouza, coeff_group, coeff_groupoid, coeff_hofin,
    coeff_idempotent, leinster_weighting, realiz_coeff_check, stabilizer_orbit_identity, CoeffVector, WeightingResult,
};
use crate::diagrams::{
    coinvariants_group, colim_vect, diagram_to_json, hocolim_ei, hocolim_groupoid, hocolim_hofin, induced_endo_colim,
    ChainDiagram, ChainEndo, FinSetDiagram, VectDiagram, VectEndo,
};
use crate::exactalg::{cone, int, lefschetz, shift_map, trace, ChainMap, RatMatrix, Rational};
use crate::fincat::{
    bg, discrete, free_idempotent, lambda_cat, parallel_arrows, span, walking_arrow, FinCat, FinGroup, GroupAction,
};
use crate::profcalc::{bicat_trace, dual_of_pointwise, ProfMap};

/// What a case body hands back: a label, both sides, and a way to serialize
/// its inputs if the sides differ.
struct Outcome {
    label: String,
    lhs: Vec<Rational>,
    rhs: Vec<Rational>,
    witness: Option<Box<dyn FnOnce() -> Witness>>,
}

impl Outcome {
    fn new(label: impl Into<String>, lhs: Vec<Rational>, rhs: Vec<Rational>) -> Self {
        Outcome { label: label.into(), lhs, rhs, witness: None }
    }

    fn scalar(label: impl Into<String>, lhs: Rational, rhs: Rational) -> Self {
        Self::new(label, vec![lhs], vec![rhs])
    }

    fn with_diagram(mut self, x: &ChainDiagram, f: &ChainEndo) -> Self {
        let (x, f) = (x.clone(), f.clone());
        self.witness = Some(Box::new(move || Witness {
            category: x.cat().to_json(),
            diagram: Some(diagram_to_json(&x, Some(&f), None)),
        }));
        self
    }

    fn with_category(mut self, cat: &FinCat) -> Self {
        let cat = cat.clone();
        self.witness = Some(Box::new(move || Witness { category: cat.to_json(), diagram: None }));
        self
    }
}

fn run_case(suite: &str, id: usize, seed: u64, body: impl FnOnce() -> Result<Outcome, String>) -> CaseResult {
    let start = Instant::now();
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(body));
    let micros = start.elapsed().as_micros();
    let base = CaseResult {
        suite: suite.to_string(),
        id,
        label: String::new(),
        seed,
        lhs: Vec::new(),
        rhs: Vec::new(),
        equal: false,
        error: None,
        micros,
        witness: None,
    };
    match result {
        Ok(Ok(o)) => {
            let equal = o.lhs == o.rhs;
            let witness = if equal { None } else { o.witness.map(|w| w()) };
            CaseResult { label: o.label, lhs: o.lhs, rhs: o.rhs, equal, witness, ..base }
        }
        Ok(Err(e)) => CaseResult { label: "error".into(), error: Some(e), ..base },
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            CaseResult { label: "panic".into(), error: Some(msg), ..base }
        }
    }
}

type Body = Box<dyn FnOnce() -> Result<Outcome, String> + Send>;

/// Runs case bodies on a few threads; results keep their submission order.
fn run_all_cases(suite: &str, seed: u64, bodies: Vec<Body>) -> Vec<CaseResult> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let jobs: Vec<(usize, Body)> = bodies.into_iter().enumerate().collect();
    let queue = std::sync::Mutex::new(jobs.into_iter());
    let results = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let next = queue.lock().expect("queue lock").next();
                let Some((id, body)) = next else { break };
                let r = run_case(suite, id, seed, body);
                results.lock().expect("results lock").push(r);
            });
        }
    });
    let mut out = results.into_inner().expect("results lock");
    out.sort_by_key(|c| c.id);
    out
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ratio(n: usize, d: usize) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `lefschetz(f_a ∘ X_α)` at the representative of every conjugacy class.
/// Fails if some other member of a class gives a different value.
fn class_lefschetz(x: &ChainDiagram, f: &ChainEndo) -> Result<Vec<Rational>, String> {
    let cat = x.cat();
    let at = |alpha| lefschetz(&f.comps[cat.src(alpha)].after(x.map(alpha))).map_err(err);
    let mut out = Vec::new();
    for class in cat.conjugacy_classes().classes() {
        let v = at(class[0])?;
        for &alpha in &class[1..] {
            if at(alpha)? != v {
                return Err(format!("trace is not constant on the class of {}", cat.arrow_name(class[0])));
            }
        }
        out.push(v);
    }
    Ok(out)
}

fn class_traces(x: &VectDiagram, f: &VectEndo) -> Result<Vec<Rational>, String> {
    let cat = x.cat();
    let at = |alpha| trace(&(&f.comps[cat.src(alpha)] * x.map(alpha))).map_err(err);
    let mut out = Vec::new();
    for class in cat.conjugacy_classes().classes() {
        let v = at(class[0])?;
        for &alpha in &class[1..] {
            if at(alpha)? != v {
                return Err(format!("trace is not constant on the class of {}", cat.arrow_name(class[0])));
            }
        }
        out.push(v);
    }
    Ok(out)
}

fn linearity(
    label: String,
    x: &ChainDiagram,
    f: &ChainEndo,
    phi: &CoeffVector,
    total: Rational,
) -> Result<Outcome, String> {
    let rhs = phi.pair(&class_lefschetz(x, f)?);
    Ok(Outcome::scalar(label, total, rhs).with_diagram(x, f))
}

fn hofin_linearity(label: String, x: &ChainDiagram, f: &ChainEndo) -> Result<Outcome, String> {
    let phi = coeff_hofin(x.cat()).map_err(err)?;
    let total = hocolim_hofin(x).map_err(err)?.with_endo(f).lefschetz();
    linearity(label, x, f, &phi, total)
}

/// The suites, in the order `all` runs them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Linearity,
    Cofiber,
    Component,
    Burnside,
    Ei,
    Realiz,
    Sets,
    Leinster,
    Multiplicativity,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Linearity,
        Suite::Cofiber,
        Suite::Component,
        Suite::Burnside,
        Suite::Ei,
        Suite::Realiz,
        Suite::Sets,
        Suite::Leinster,
        Suite::Multiplicativity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Linearity => "linearity",
            Suite::Cofiber => "cofiber",
            Suite::Component => "component",
            Suite::Burnside => "burnside",
            Suite::Ei => "ei",
            Suite::Realiz => "realiz",
            Suite::Sets => "sets",
            Suite::Leinster => "leinster",
            Suite::Multiplicativity => "multiplicativity",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Number of random cases when none is given.
    pub fn default_cases(self) -> usize {
        match self {
            Suite::Component => 200,
            Suite::Linearity | Suite::Cofiber => 100,
            Suite::Burnside | Suite::Sets | Suite::Multiplicativity => 50,
            Suite::Ei => 28,
            Suite::Realiz | Suite::Leinster => 20,
        }
    }

    pub fn run(self, seed: u64, cases: usize) -> Vec<CaseResult> {
        match self {
            Suite::Linearity => suite_linearity(seed, cases),
            Suite::Cofiber => suite_cofiber(seed, cases),
            Suite::Component => suite_component(seed, cases),
            Suite::Burnside => suite_burnside(seed, cases),
            Suite::Ei => suite_ei(seed, cases),
            Suite::Realiz => suite_realiz(seed, cases),
            Suite::Sets => suite_sets(seed, cases),
            Suite::Leinster => suite_leinster(seed, cases),
            Suite::Multiplicativity => suite_multiplicativity(seed, cases),
        }
    }
}

pub fn run_suite(suite: Suite, seed: u64, cases: Option<usize>) -> VerificationReport {
    VerificationReport { seed, cases: suite.run(seed, cases.unwrap_or_else(|| suite.default_cases())) }
}

pub fn run_all(seed: u64, cases: Option<usize>) -> VerificationReport {
    let mut report = VerificationReport { seed, cases: Vec::new() };
    for s in Suite::ALL {
        report.merge(run_suite(s, seed, cases));
    }
    report
}

/// Homotopy finite linearity on random free categories, plus fixed
/// coefficient checks and group, groupoid and non-free cases.
pub fn suite_linearity(seed: u64, cases: usize) -> Vec<CaseResult> {
    let mut bodies: Vec<Body> = Vec::new();
    bodies.push(Box::new(|| {
        let v = coeff_hofin(&span()).map_err(err)?;
        Ok(Outcome::new("fixed span coefficients", v.values().to_vec(), vec![int(-1), int(1), int(1)]))
    }));
    for n in 0..5usize {
        bodies.push(Box::new(move || {
            let v = coeff_hofin(&parallel_arrows(n + 1)).map_err(err)?;
            let expected = vec![int(-(n as i64)), int(1)];
            Ok(Outcome::new(format!("fixed parallel{} coefficients", n + 1), v.values().to_vec(), expected))
        }));
    }
    for i in 0..cases {
        bodies.push(Box::new(move || {
            let mut rng = case_rng(seed, i as u64);
            let cat = Arc::new(gen_hofin_with(&mut rng, 5, 8));
            let (x, f) = gen_chain_diagram(&mut rng, &cat, 3, (0, 2));
            let label = format!("dag objects={} arrows={}", cat.num_objects(), cat.num_arrows());
            hofin_linearity(label, &x, &f)
        }));
    }
    let extra: Vec<(&str, FinCat)> = vec![
        ("span", span()),
        ("parallel3", parallel_arrows(3)),
        ("delta_prime_op2", crate::fincat::delta_prime_op(2)),
        ("delta_prime_op3", crate::fincat::delta_prime_op(3)),
    ];
    for (k, (name, c)) in extra.into_iter().enumerate() {
        bodies.push(Box::new(move || {
            let mut rng = case_rng(seed, 10_000 + k as u64);
            let (x, f) = gen_chain_diagram(&mut rng, &Arc::new(c), 3, (0, 2));
            hofin_linearity(format!("hofin {name}"), &x, &f)
        }));
    }
    let groupoids: Vec<CorpusEntry> = corpus().into_iter().filter(|e| e.has(Method::Groupoid)).collect();
    for (k, e) in groupoids.into_iter().enumerate() {
        bodies.push(Box::new(move || {
            let mut rng = case_rng(seed, 20_000 + k as u64);
            let cat = Arc::new(e.cat.clone());
            let (x, f) = gen_chain_diagram(&mut rng, &cat, 6, (0, 1));
            if e.has(Method::Group) {
                let (g, _) = cat.aut_group(0);
                let phi = coeff_group(&g);
                let total = coinvariants_group(&x, &f).map_err(err)?.lefschetz();
                // the group table and the category share arrow order
                let phi = CoeffVector::new(&cat, phi.values().to_vec()).map_err(err)?;
                linearity(format!("group {}", e.name), &x, &f, &phi, total)
            } else {
                let phi = coeff_groupoid(&cat).map_err(err)?;
                let total = hocolim_groupoid(&x, &f).map_err(err)?.lefschetz();
                linearity(format!("groupoid {}", e.name), &x, &f, &phi, total)
            }
        }));
    }
    run_all_cases("linearity", seed, bodies)
}

/// Lefschetz numbers of cone endomorphisms against the cofiber coefficients.
pub fn suite_cofiber(seed: u64, cases: usize) -> Vec<CaseResult> {
    let bodies: Vec<Body> = (0..cases)
        .map(|i| -> Body {
            Box::new(move || {
                let mut rng = case_rng(seed, i as u64);
                let cat = Arc::new(walking_arrow());
                let (x, f) = gen_chain_diagram(&mut rng, &cat, 3, (0, 2));
                let arrow = cat.arrow_by_name("f").expect("walking arrow");
                let (a, b) = (cat.src(arrow), cat.dst(arrow));
                let c = cone(x.map(arrow), x.complex(a), x.complex(b)).map_err(err)?;
                let e = c.endo(&f.comps[a], &f.comps[b], x.complex(a), x.complex(b));
                let lhs = lefschetz(&e).map_err(err)?;
                let rhs = coeff_cofiber().pair(&class_lefschetz(&x, &f)?);
                let direct = lefschetz(&f.comps[b]).map_err(err)? - lefschetz(&f.comps[a]).map_err(err)?;
                Ok(Outcome::new("cone", vec![lhs.clone(), lhs], vec![rhs, direct]).with_diagram(&x, &f))
            })
        })
        .collect();
    run_all_cases("cofiber", seed, bodies)
}

/// Component vectors from the profunctor trace against pointwise traces.
pub fn suite_component(seed: u64, cases: usize) -> Vec<CaseResult> {
    let cats: Vec<CorpusEntry> = corpus().into_iter().filter(|e| e.cat.num_objects() <= 5).collect();
    let mut bodies: Vec<Body> = Vec::new();
    bodies.push(Box::new(move || {
        // idempotent: components are tr(f) and tr(f∘e)
        let mut rng = case_rng(seed, 1 << 32);
        let cat = Arc::new(free_idempotent());
        let x = VectDiagram::representable(cat.clone(), 0);
        let f = random_vect_endo(&mut rng, &x);
        let e = cat.arrow_by_name("e").expect("idempotent");
        let w = dual_of_pointwise(&x).map_err(err)?;
        let lhs = bicat_trace(&w, &ProfMap { comps: f.comps.clone() }).map_err(err)?;
        let rhs = vec![f.comps[0].trace(), (&f.comps[0] * x.map(e)).trace()];
        Ok(Outcome::new("fixed idempotent", lhs, rhs))
    }));
    for i in 0..cases {
        let entry = cats[i % cats.len()].clone();
        bodies.push(Box::new(move || {
            let mut rng = case_rng(seed, i as u64);
            let cat = Arc::new(entry.cat.clone());
            let (x, f) = gen_vect_diagram(&mut rng, &cat, 4);
            let w = dual_of_pointwise(&x).map_err(err)?;
            let lhs = bicat_trace(&w, &ProfMap { comps: f.comps.clone() }).map_err(err)?;
            let rhs = class_traces(&x, &f)?;
            let xc = x.to_chain(0);
            let fc =
                crate::diagrams::NatEndo::new(f.comps.iter().map(|m| ChainMap::new([(0, m.clone())].into())).collect());
            Ok(Outcome::new(format!("{} dims={:?}", entry.name, x.dims()), lhs, rhs).with_diagram(&xc, &fc))
        }));
    }
    run_all_cases("component", seed, bodies)
}

/// Subgroups generated by one or two elements.
fn small_subgroups(g: &FinGroup) -> Vec<Vec<usize>> {
    let mut subs: Vec<Vec<usize>> = Vec::new();
    for x in g.elements() {
        for y in g.elements() {
            let mut h = g.generated(&[x, y]);
            h.sort_unstable();
            if !subs.contains(&h) {
                subs.push(h);
            }
        }
    }
    subs.sort();
    subs
}

/// Disjoint union of one to four coset spaces of random subgroups.
pub fn random_gset(rng: &mut CaseRng, g: &FinGroup) -> GroupAction {
    let subs = small_subgroups(g);
    let k = rng.gen_range(1..=4);
    let parts: Vec<GroupAction> = (0..k)
        .map(|_| GroupAction::cosets(g, subs.choose(rng).expect("trivial subgroup")).expect("subgroup"))
        .collect();
    GroupAction::sum(&parts).expect("same group")
}

fn test_groups() -> Vec<(&'static str, FinGroup)> {
    vec![
        ("C2", FinGroup::cyclic(2)),
        ("C3", FinGroup::cyclic(3)),
        ("C4", FinGroup::cyclic(4)),
        ("S3", FinGroup::symmetric(3)),
    ]
}

/// Orbit counting on complexes of representations and on finite G-sets.
pub fn suite_burnside(seed: u64, cases: usize) -> Vec<CaseResult> {
    let groups = test_groups();
    let mut bodies: Vec<Body> = Vec::new();
    for i in 0..cases {
        let (name, g) = groups[i % groups.len()].clone();
        bodies.push(Box::new(move || {
            let mut rng = case_rng(seed, i as u64);
            let cat = Arc::new(bg(&g));
            let (x, f) = gen_chain_diagram(&mut rng, &cat, 6, (0, 2));
            let lhs = coinvariants_group(&x, &f).map_err(err)?.lefschetz();
            let mut sum = int(0);
            for h in g.elements() {
                sum += lefschetz(&f.comps[0].after(x.map(h))).map_err(err)?;
            }
            let rhs = sum / int(g.order() as i64);
            Ok(Outcome::scalar(format!("complex {name}"), lhs, rhs).with_diagram(&x, &f))
        }));
    }
    for i in 0..cases {
        let (name, g) = groups[i % groups.len()].clone();
        bodies.push(Box::new(move || {
            let mut rng = case_rng(seed, (cases + i) as u64);
            let z = random_gset(&mut rng, &g);
            let lhs = int(z.orbits().len() as i64);
            let fixed: usize = g.elements().map(|h| z.fixed_points(h)).sum();
            Ok(Outcome::scalar(format!("gset {name} size={}", z.size()), lhs, ratio(fixed, g.order()))
                .with_category(&bg(&g)))
        }));
    }
    run_all_cases("burnside", seed, bodies)
}

/// Agreement of the two EI formulas, collapse to the group and homotopy
/// finite formulas, and linearity against the EI homotopy colimit.
pub fn suite_ei(seed: u64, cases: usize) -> Vec<CaseResult> {
    let entries = ei_corpus();
    let mut bodies: Vec<Body> = Vec::new();
    for e in entries.clone() {
        let first = e.clone();
        bodies.push(Box::new(move || {
            let e = first;
            let lhs = coeff_ei(&e.cat).map_err(err)?;
            let rhs = coeff_ei_desouza(&e.cat).map_err(err)?;
            Ok(Outcome::new(format!("formulas {}", e.name), lhs.values().to_vec(), rhs.values().to_vec())
                .with_category(&e.cat))
        }));
        if e.has(Method::Group) {
            bodies.push(Box::new(move || {
                let (g, _) = e.cat.aut_group(0);
                let lhs = coeff_ei(&e.cat).map_err(err)?;
                Ok(Outcome::new(
                    format!("collapse group {}", e.name),
                    lhs.values().to_vec(),
                    coeff_group(&g).values().to_vec(),
                ))
            }));
        } else if e.has(Method::Hofin) {
            bodies.push(Box::new(move || {
                let lhs = coeff_ei(&e.cat).map_err(err)?;
                let rhs = coeff_hofin(&e.cat).map_err(err)?;
                Ok(Outcome::new(format!("collapse hofin {}", e.name), lhs.values().to_vec(), rhs.values().to_vec()))
            }));
        }
    }
    let curated: Vec<CorpusEntry> = entries.into_iter().filter(CorpusEntry::has_automorphisms).collect();
    for i in 0..cases {
        let e = curated[i % curated.len()].clone();
        bodies.push(Box::new(move || {
            let mut rng = case_rng(seed, i as u64);
            let cat = Arc::new(e.cat.clone());
            let (x, f) = gen_chain_diagram(&mut rng, &cat, 4, (0, 1));
            let phi = coeff_ei(&cat).map_err(err)?;
            let total = hocolim_ei(&x, &f).map_err(err)?.result.lefschetz();
            linearity(format!("linearity {}", e.name), &x, &f, &phi, total)
        }));
    }
    run_all_cases("ei", seed, bodies)
}

/// Alternating face counts, components of the loop category, and the
/// stabilizer identity on random triples.
pub fn suite_realiz(seed: u64, cases: usize) -> Vec<CaseResult> {
    let mut bodies: Vec<Body> = Vec::new();
    for n in 0..=5usize {
        bodies.push(Box::new(move || {
            let (lhs, rhs) = realiz_coeff_check(n);
            Ok(Outcome::scalar(format!("realization n={n}"), lhs, rhs))
        }));
    }
    for e in corpus() {
        bodies.push(Box::new(move || {
            let l = lambda_cat(&e.cat);
            let lhs = int(l.num_components as i64);
            let rhs = int(e.cat.conjugacy_classes().len() as i64);
            Ok(Outcome::scalar(format!("loop components {}", e.name), lhs, rhs).with_category(&e.cat))
        }));
    }
    let groups = test_groups();
    for i in 0..cases {
        let (name, g) = groups[i % groups.len()].clone();
        bodies.push(Box::new(move || {
            let mut rng = case_rng(seed, i as u64);
            let z = random_gset(&mut rng, &g);
            let classes = g.conj_classes();
            let mut s: Vec<usize> = Vec::new();
            while s.is_empty() {
                for c in &classes {
                    if rng.gen_bool(0.5) {
                        s.extend(c);
                    }
                }
            }
            s.sort_unstable();
            let (lhs, rhs) = stabilizer_orbit_identity(&z, &s).map_err(err)?;
            Ok(Outcome::scalar(format!("stabilizer {name} |Z|={} |S|={}", z.size(), s.len()), lhs, rhs))
        }));
    }
    run_all_cases("realiz", seed, bodies)
}

fn random_injection(rng: &mut CaseRng, from: usize, to: usize) -> Vec<usize> {
    let mut targets: Vec<usize> = (0..to).collect();
    targets.shuffle(rng);
    targets.truncate(from);
    targets
}

/// Extends `h` on the image of the injection `f` to a random self-map of the target.
fn extend_endo(rng: &mut CaseRng, f: &[usize], h: &[usize], size: usize) -> Vec<usize> {
    let mut out: Vec<Option<usize>> = vec![None; size];
    for (x, &y) in f.iter().enumerate() {
        out[y] = Some(f[h[x]]);
    }
    out.into_iter().map(|v| v.unwrap_or_else(|| rng.gen_range(0..size))).collect()
}

fn fixed(h: &[usize]) -> usize {
    h.iter().enumerate().filter(|&(i, &j)| i == j).count()
}

fn function_matrix(f: &[usize], cols: usize, rows: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(rows, cols);
    for (j, &i) in f.iter().enumerate() {
        m[(i, j)] = int(1);
    }
    m
}

/// Fixed points of the induced map on a pushout of injections, counted in
/// the set colimit and as a trace on the linearized colimit.
pub fn suite_sets(seed: u64, cases: usize) -> Vec<CaseResult> {
    let bodies: Vec<Body> = (0..cases)
        .map(|i| -> Body {
            Box::new(move || {
                let mut rng = case_rng(seed, i as u64);
                let cat = Arc::new(span());
                let nx = rng.gen_range(0..=4);
                let ny = nx + rng.gen_range(0..=3);
                let nz = nx + rng.gen_range(0..=3);
                let f = random_injection(&mut rng, nx, ny);
                let g = random_injection(&mut rng, nx, nz);
                let hx: Vec<usize> = (0..nx).map(|_| rng.gen_range(0..nx)).collect();
                let hy = extend_endo(&mut rng, &f, &hx, ny);
                let hz = extend_endo(&mut rng, &g, &hx, nz);
                let (af, ag) = (cat.arrow_by_name("f").expect("f"), cat.arrow_by_name("g").expect("g"));
                let sizes = vec![nx, ny, nz];
                let mut funcs: Vec<Vec<usize>> = cat.arrow_ids().map(|_| Vec::new()).collect();
                for a in cat.objects() {
                    funcs[cat.id(a)] = (0..sizes[a]).collect();
                }
                funcs[af] = f.clone();
                funcs[ag] = g.clone();
                let d = FinSetDiagram::new(cat.clone(), sizes.clone(), funcs).map_err(err)?;
                let (size, class) = d.colimit();
                let hs = [hx.clone(), hy.clone(), hz.clone()];
                // induced map on classes, read through any representative
                let mut induced = vec![usize::MAX; size];
                for a in cat.objects() {
                    for (x, &c) in class[a].iter().enumerate() {
                        let image = class[a][hs[a][x]];
                        if induced[c] != usize::MAX && induced[c] != image {
                            return Err("endomorphism is not well defined on the pushout".into());
                        }
                        induced[c] = image;
                    }
                }
                let lin = d.linearize();
                let col = colim_vect(&lin);
                let endo = crate::diagrams::NatEndo::new(
                    cat.objects().map(|a| function_matrix(&hs[a], sizes[a], sizes[a])).collect(),
                );
                lin.check_endo(&endo).map_err(err)?;
                let tr = induced_endo_colim(&col, &endo).trace();
                let formula = int(fixed(&hy) as i64 + fixed(&hz) as i64 - fixed(&hx) as i64);
                let lhs = vec![int(fixed(&induced) as i64), int(col.dim() as i64), tr];
                let rhs = vec![formula.clone(), int(size as i64), formula];
                Ok(Outcome::new(format!("pushout sizes=({nx},{ny},{nz})"), lhs, rhs))
            })
        })
        .collect();
    run_all_cases("sets", seed, bodies)
}

/// Weighted cardinalities of coproducts of representables against the size
/// of their colimits, and the idempotent family under both formulas.
pub fn suite_leinster(seed: u64, cases: usize) -> Vec<CaseResult> {
    let entries: Vec<CorpusEntry> = corpus().into_iter().filter(|e| e.has(Method::Leinster)).collect();
    let mut bodies: Vec<Body> = Vec::new();
    for i in 0..cases {
        let e = entries[i % entries.len()].clone();
        bodies.push(Box::new(move || {
            let mut rng = case_rng(seed, i as u64);
            let cat = Arc::new(e.cat.clone());
            let WeightingResult::Found(k) = leinster_weighting(&cat) else {
                return Err("weighting vanished".into());
            };
            let mut reps = Vec::new();
            while reps.is_empty() {
                for a in cat.objects() {
                    for _ in 0..rng.gen_range(0..=2) {
                        reps.push(FinSetDiagram::representable(cat.clone(), a));
                    }
                }
            }
            let x = FinSetDiagram::coproduct(&reps.iter().collect::<Vec<_>>()).map_err(err)?;
            let sizes: Vec<usize> = cat.objects().map(|a| x.size(a)).collect();
            let lhs = k.cardinality(&sizes);
            let rhs = int(x.colimit().0 as i64);
            Ok(Outcome::scalar(format!("{} representables={}", e.name, reps.len()), lhs, rhs).with_category(&cat))
        }));
    }
    for n in 1..=5usize {
        bodies.push(Box::new(move || {
            let cat = Arc::new(free_idempotent());
            let e = cat.arrow_by_name("e").expect("idempotent");
            let r = FinSetDiagram::representable(cat.clone(), 0);
            let x = FinSetDiagram::coproduct(&vec![&r; n]).map_err(err)?;
            let per_class: Vec<Rational> =
                cat.conjugacy_classes().classes().iter().map(|c| int(fixed(x.func(c[0])) as i64)).collect();
            let by_trace = coeff_idempotent().pair(&per_class);
            let WeightingResult::Found(k) = leinster_weighting(&cat) else {
                return Err("free idempotent has a weighting".into());
            };
            let leinster = k.cardinality(&[x.size(0)]);
            let size = int(x.colimit().0 as i64);
            let _ = e;
            Ok(Outcome::new(format!("idempotent n={n}"), vec![by_trace, leinster], vec![size.clone(), size]))
        }));
    }
    run_all_cases("leinster", seed, bodies)
}

fn random_square(rng: &mut CaseRng, max: usize) -> RatMatrix {
    let n = rng.gen_range(1..=max);
    random_matrix(rng, n, n, -3, 3)
}

/// Tensor multiplicativity, the sign flip under suspension, idempotent
/// splitting and coproduct additivity.
pub fn suite_multiplicativity(seed: u64, cases: usize) -> Vec<CaseResult> {
    let mut bodies: Vec<Body> = Vec::new();
    for i in 0..cases {
        bodies.push(Box::new(move || {
            let mut rng = case_rng(seed, i as u64);
            let (a, b) = (random_square(&mut rng, 4), random_square(&mut rng, 4));
            let lhs = a.kron(&b).trace();
            Ok(Outcome::scalar(format!("tensor {}x{}", a.rows(), b.rows()), lhs, a.trace() * b.trace()))
        }));
    }
    let side = cases.div_ceil(5).max(1);
    for i in 0..side {
        let stream = (cases + i) as u64;
        bodies.push(Box::new(move || {
            let mut rng = case_rng(seed, stream);
            let x = random_complex(&mut rng, 3, 0, 2);
            let f = random_chain_map(&mut rng, &x, &x);
            let shifted = lefschetz(&shift_map(&f, 1)).map_err(err)?;
            Ok(Outcome::scalar("suspension", shifted, -lefschetz(&f).map_err(err)?))
        }));
    }
    for i in 0..side {
        let stream = (cases + side + i) as u64;
        bodies.push(Box::new(move || {
            let mut rng = case_rng(seed, stream);
            let cat = Arc::new(free_idempotent());
            let e_arrow = cat.arrow_by_name("e").expect("idempotent");
            let d = rng.gen_range(1..=4);
            let r = rng.gen_range(0..=d);
            let (p, p_inv) = random_unimodular(&mut rng, d);
            let mut diag = RatMatrix::zeros(d, d);
            for k in 0..r {
                diag[(k, k)] = int(1);
            }
            let e = &(&p * &diag) * &p_inv;
            let mut maps = vec![RatMatrix::identity(d); cat.num_arrows()];
            maps[e_arrow] = e.clone();
            let x = VectDiagram::new(cat.clone(), vec![d], maps).map_err(err)?;
            let f = random_vect_endo(&mut rng, &x);
            let col = colim_vect(&x);
            let lhs = induced_endo_colim(&col, &f).trace();
            let rhs = (&e * &f.comps[0]).trace();
            Ok(Outcome::scalar(format!("idempotent split d={d} rank={r}"), lhs, rhs))
        }));
    }
    for i in 0..side {
        let stream = (cases + 2 * side + i) as u64;
        bodies.push(Box::new(move || {
            let mut rng = case_rng(seed, stream);
            let n = 1 + i % 4;
            let cat = Arc::new(discrete(n));
            let (x, f) = gen_chain_diagram(&mut rng, &cat, 3, (0, 2));
            let total = hocolim_hofin(&x).map_err(err)?.with_endo(&f).lefschetz();
            let phi = CoeffVector::new(&cat, coeff_coproduct(n).values().to_vec()).map_err(err)?;
            linearity(format!("coproduct n={n}"), &x, &f, &phi, total)
        }));
    }
    run_all_cases("multiplicativity", seed, bodies)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass_and_repeat() {
        for s in Suite::ALL {
            let a = run_suite(s, 5, Some(4));
            assert!(a.passed(), "{}", a.to_text(false));
            let b = run_suite(s, 5, Some(4));
            assert_eq!(a.to_json(false), b.to_json(false));
        }
    }
}
