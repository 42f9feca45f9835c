use std::collections::BTreeMap;

use super::{AlgError, RatMatrix, Rational, Solution};

/// Bounded chain complex with differentials of degree -1.
///
/// `diffs[i]` maps degree `lo + i` to degree `lo + i - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    lo: i32,
    dims: Vec<usize>,
    diffs: Vec<RatMatrix>,
}

impl ChainComplex {
    pub fn zero() -> Self {
        ChainComplex { lo: 0, dims: Vec::new(), diffs: Vec::new() }
    }

    /// A single space placed in degree `deg`.
    pub fn concentrated(deg: i32, dim: usize) -> Self {
        ChainComplex { lo: deg, dims: vec![dim], diffs: vec![RatMatrix::zeros(0, dim)] }
    }

    /// Builds a complex from dimensions and differentials keyed by source degree.
    /// Missing differentials are zero.
    pub fn from_parts(dims: &BTreeMap<i32, usize>, diffs: &BTreeMap<i32, RatMatrix>) -> Result<Self, AlgError> {
        let degrees: Vec<i32> = dims.iter().filter(|(_, &d)| d > 0).map(|(&n, _)| n).collect();
        for (&n, m) in diffs {
            let want = (dims.get(&(n - 1)).copied().unwrap_or(0), dims.get(&n).copied().unwrap_or(0));
            if m.shape() != want {
                return Err(AlgError::Shape(format!(
                    "differential from degree {n} is {:?}, expected {want:?}",
                    m.shape()
                )));
            }
        }
        let (Some(&lo), Some(&hi)) = (degrees.first(), degrees.last()) else {
            if diffs.values().any(|m| !m.is_zero()) {
                return Err(AlgError::Shape("differential on an empty complex".into()));
            }
            return Ok(Self::zero());
        };
        let dim_vec: Vec<usize> = (lo..=hi).map(|n| dims.get(&n).copied().unwrap_or(0)).collect();
        let mut ds = Vec::with_capacity(dim_vec.len());
        for n in lo..=hi {
            let rows = if n == lo { 0 } else { dim_vec[(n - 1 - lo) as usize] };
            let cols = dim_vec[(n - lo) as usize];
            let d = match diffs.get(&n) {
                Some(m) => m.clone(),
                None => RatMatrix::zeros(rows, cols),
            };
            ds.push(d);
        }
        // a differential out of the bottom degree must vanish
        if let Some(m) = diffs.get(&lo) {
            if !m.is_zero() {
                return Err(AlgError::Shape(format!("nonzero differential below degree {lo}")));
            }
        }
        let c = ChainComplex { lo, dims: dim_vec, diffs: ds };
        c.check()?;
        Ok(c)
    }

    /// Complex from consecutive dimensions starting at `lo`; `diffs[i]` leaves degree `lo + i`.
    pub fn new(lo: i32, dims: Vec<usize>, diffs: Vec<RatMatrix>) -> Result<Self, AlgError> {
        let dm: BTreeMap<i32, usize> = dims.iter().enumerate().map(|(i, &d)| (lo + i as i32, d)).collect();
        let df: BTreeMap<i32, RatMatrix> = diffs.into_iter().enumerate().map(|(i, m)| (lo + i as i32, m)).collect();
        Self::from_parts(&dm, &df)
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.lo..=self.hi()
    }

    pub fn dim(&self, n: i32) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.degrees().map(|n| (n, self.dim(n))).collect()
    }

    /// Differential leaving degree `n`.
    pub fn d(&self, n: i32) -> RatMatrix {
        if n < self.lo || n > self.hi() {
            RatMatrix::zeros(self.dim(n - 1), self.dim(n))
        } else {
            self.diffs[(n - self.lo) as usize].clone()
        }
    }

    pub fn check(&self) -> Result<(), AlgError> {
        for n in self.degrees() {
            let d = self.d(n);
            if d.shape() != (self.dim(n - 1), self.dim(n)) {
                return Err(AlgError::Shape(format!("differential from degree {n}")));
            }
            if !(&self.d(n - 1) * &d).is_zero() {
                return Err(AlgError::NotAComplex(n));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|n| if n.rem_euclid(2) == 0 { self.dim(n) as i64 } else { -(self.dim(n) as i64) }).sum()
    }

    pub fn direct_sum(parts: &[&ChainComplex]) -> ChainComplex {
        let mut dims = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        let lo = parts.iter().filter(|c| !c.is_zero()).map(|c| c.lo).min();
        let hi = parts.iter().filter(|c| !c.is_zero()).map(|c| c.hi()).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return ChainComplex::zero();
        };
        for n in lo..=hi {
            dims.insert(n, parts.iter().map(|c| c.dim(n)).sum());
            let ds: Vec<RatMatrix> = parts.iter().map(|c| c.d(n)).collect();
            let refs: Vec<&RatMatrix> = ds.iter().collect();
            diffs.insert(n, RatMatrix::direct_sum(&refs));
        }
        ChainComplex::from_parts(&dims, &diffs).expect("direct sum of complexes")
    }

    pub fn identity_map(&self) -> ChainMap {
        ChainMap::new(self.degrees().map(|n| (n, RatMatrix::identity(self.dim(n)))).collect())
    }

    pub fn homology(&self) -> Homology {
        let mut degrees = BTreeMap::new();
        for n in self.degrees() {
            let cycles = self.d(n).kernel_basis();
            let boundaries = self.d(n + 1);
            let coords = match cycles.solve(&boundaries) {
                Solution::Unique(c) => c,
                Solution::NotUnique { particular, .. } => particular,
                Solution::NoSolution => unreachable!("boundaries are cycles in a valid complex"),
            };
            let q = coords.cokernel();
            degrees.insert(n, HomologyDegree { cycles, proj: q.proj, sect: q.sect });
        }
        Homology { degrees }
    }

    pub fn homology_dims(&self) -> BTreeMap<i32, usize> {
        self.homology().dims()
    }
}

#[derive(Clone, Debug)]
struct HomologyDegree {
    cycles: RatMatrix,
    proj: RatMatrix,
    sect: RatMatrix,
}

/// Homology with explicit bases, so endomorphisms can be pushed down.
#[derive(Clone, Debug)]
pub struct Homology {
    degrees: BTreeMap<i32, HomologyDegree>,
}

impl Homology {
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.degrees.iter().map(|(&n, h)| (n, h.proj.rows())).collect()
    }

    pub fn dim(&self, n: i32) -> usize {
        self.degrees.get(&n).map_or(0, |h| h.proj.rows())
    }

    /// Matrix of the map induced on `H_n` by a chain endomorphism.
    pub fn induced(&self, f: &ChainMap, n: i32) -> RatMatrix {
        let Some(h) = self.degrees.get(&n) else {
            return RatMatrix::zeros(0, 0);
        };
        let dim = h.cycles.rows();
        let fz = &f.at(n, dim, dim) * &h.cycles;
        let m = match h.cycles.solve(&fz) {
            Solution::Unique(m) => m,
            Solution::NotUnique { particular, .. } => particular,
            Solution::NoSolution => unreachable!("chain maps preserve cycles"),
        };
        &(&h.proj * &m) * &h.sect
    }

    /// Alternating sum of traces of the induced maps on homology.
    pub fn lefschetz(&self, f: &ChainMap) -> Rational {
        let mut total = Rational::from_integer(0.into());
        for &n in self.degrees.keys() {
            let t = self.induced(f, n).trace();
            if n.rem_euclid(2) == 0 {
                total += t;
            } else {
                total -= t;
            }
        }
        total
    }
}

/// Degreewise matrices. Missing degrees are zero maps.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChainMap {
    comps: BTreeMap<i32, RatMatrix>,
}

impl ChainMap {
    pub fn new(comps: BTreeMap<i32, RatMatrix>) -> Self {
        ChainMap { comps }
    }

    pub fn zero() -> Self {
        ChainMap::default()
    }

    pub fn components(&self) -> impl Iterator<Item = (i32, &RatMatrix)> {
        self.comps.iter().map(|(&n, m)| (n, m))
    }

    pub fn get(&self, n: i32) -> Option<&RatMatrix> {
        self.comps.get(&n)
    }

    /// Component in degree `n`, materialising zeros of the given shape.
    pub fn at(&self, n: i32, rows: usize, cols: usize) -> RatMatrix {
        match self.comps.get(&n) {
            Some(m) => {
                assert_eq!(m.shape(), (rows, cols), "chain map component in degree {n} has unexpected shape");
                m.clone()
            }
            None => RatMatrix::zeros(rows, cols),
        }
    }

    /// Checks shapes against `src -> tgt` and commutation with differentials.
    pub fn check(&self, src: &ChainComplex, tgt: &ChainComplex) -> Result<(), AlgError> {
        for (&n, m) in &self.comps {
            if m.shape() != (tgt.dim(n), src.dim(n)) {
                return Err(AlgError::Shape(format!(
                    "chain map component in degree {n} is {:?}, expected {:?}",
                    m.shape(),
                    (tgt.dim(n), src.dim(n))
                )));
            }
        }
        let lo = src.lo().min(tgt.lo());
        let hi = src.hi().max(tgt.hi()) + 1;
        for n in lo..=hi {
            let left = &tgt.d(n) * &self.at(n, tgt.dim(n), src.dim(n));
            let right = &self.at(n - 1, tgt.dim(n - 1), src.dim(n - 1)) * &src.d(n);
            if left != right {
                return Err(AlgError::NotAChainMap(n));
            }
        }
        Ok(())
    }

    /// `self ∘ before`.
    pub fn after(&self, before: &ChainMap) -> ChainMap {
        let mut comps = BTreeMap::new();
        for (&n, g) in &self.comps {
            if let Some(f) = before.comps.get(&n) {
                comps.insert(n, g * f);
            }
        }
        ChainMap { comps }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let mut comps = self.comps.clone();
        for (&n, m) in &other.comps {
            match comps.get_mut(&n) {
                Some(x) => *x = &*x + m,
                None => {
                    comps.insert(n, m.clone());
                }
            }
        }
        ChainMap { comps }
    }

    pub fn scale(&self, c: &Rational) -> ChainMap {
        ChainMap { comps: self.comps.iter().map(|(&n, m)| (n, m.scale(c))).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(RatMatrix::is_zero)
    }

    /// Block diagonal sum of maps `src_i -> tgt_i`.
    pub fn direct_sum(parts: &[(&ChainMap, &ChainComplex, &ChainComplex)]) -> ChainMap {
        let degrees: std::collections::BTreeSet<i32> =
            parts.iter().flat_map(|(_, s, t)| s.degrees().chain(t.degrees())).collect();
        let mut comps = BTreeMap::new();
        for n in degrees {
            let blocks: Vec<RatMatrix> = parts.iter().map(|(f, s, t)| f.at(n, t.dim(n), s.dim(n))).collect();
            let refs: Vec<&RatMatrix> = blocks.iter().collect();
            comps.insert(n, RatMatrix::direct_sum(&refs));
        }
        ChainMap { comps }
    }
}

/// Mapping cone `Y_n ⊕ X_{n-1}` of `f: X -> Y` with its canonical maps.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: ChainComplex,
    /// `Y -> cone`.
    pub incl: ChainMap,
    /// `cone -> X[1]`.
    pub proj: ChainMap,
}

impl Cone {
    /// Endomorphism of the cone induced by endomorphisms of `X` and `Y`
    /// that commute with `f`.
    pub fn endo(&self, gx: &ChainMap, gy: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> ChainMap {
        let mut comps = BTreeMap::new();
        for n in self.complex.degrees() {
            let a = gy.at(n, y.dim(n), y.dim(n));
            let b = gx.at(n - 1, x.dim(n - 1), x.dim(n - 1));
            comps.insert(n, RatMatrix::direct_sum(&[&a, &b]));
        }
        ChainMap::new(comps)
    }
}

/// `d(y, x) = (d_Y y + f x, -d_X x)`.
pub fn cone(f: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> Result<Cone, AlgError> {
    f.check(x, y)?;
    let lo = [y.lo(), x.lo() + 1].into_iter().zip([y.is_zero(), x.is_zero()]).filter(|(_, z)| !z).map(|(n, _)| n).min();
    let hi = [y.hi(), x.hi() + 1].into_iter().zip([y.is_zero(), x.is_zero()]).filter(|(_, z)| !z).map(|(n, _)| n).max();
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Ok(Cone { complex: ChainComplex::zero(), incl: ChainMap::zero(), proj: ChainMap::zero() });
    };
    let mut dims = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    let mut incl = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for n in lo..=hi {
        let (yn, xn1) = (y.dim(n), x.dim(n - 1));
        let (yn1, xn2) = (y.dim(n - 1), x.dim(n - 2));
        dims.insert(n, yn + xn1);
        let mut d = RatMatrix::zeros(yn1 + xn2, yn + xn1);
        d.set_block(0, 0, &y.d(n));
        d.set_block(0, yn, &f.at(n - 1, yn1, xn1));
        d.set_block(yn1, yn, &-&x.d(n - 1));
        diffs.insert(n, d);
        let mut i = RatMatrix::zeros(yn + xn1, yn);
        i.set_block(0, 0, &RatMatrix::identity(yn));
        incl.insert(n, i);
        let mut p = RatMatrix::zeros(xn1, yn + xn1);
        p.set_block(0, yn, &RatMatrix::identity(xn1));
        proj.insert(n, p);
    }
    let complex = ChainComplex::from_parts(&dims, &diffs)?;
    Ok(Cone { complex, incl: ChainMap::new(incl), proj: ChainMap::new(proj) })
}

/// `(C[k])_n = C_{n-k}` with differential `(-1)^k d`.
pub fn shift(c: &ChainComplex, k: i32) -> ChainComplex {
    if c.is_zero() {
        return ChainComplex::zero();
    }
    let sign =
        if k.rem_euclid(2) == 0 { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };
    let dims: BTreeMap<i32, usize> = c.degrees().map(|n| (n + k, c.dim(n))).collect();
    let diffs: BTreeMap<i32, RatMatrix> = c.degrees().map(|n| (n + k, c.d(n).scale(&sign))).collect();
    ChainComplex::from_parts(&dims, &diffs).expect("shift of a valid complex")
}

pub fn shift_map(f: &ChainMap, k: i32) -> ChainMap {
    ChainMap::new(f.components().map(|(n, m)| (n + k, m.clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, lefschetz};

    fn two_term() -> ChainComplex {
        // Q^2 <- Q^3 with a rank-one differential
        ChainComplex::new(0, vec![2, 3], vec![RatMatrix::zeros(0, 2), RatMatrix::from_i64(2, 3, &[1, 1, 0, 0, 0, 0])])
            .unwrap()
    }

    #[test]
    fn identity_lefschetz_is_euler_characteristic() {
        let c = two_term();
        assert_eq!(lefschetz(&c.identity_map()).unwrap(), int(-1));
        assert_eq!(c.euler_characteristic(), -1);
    }

    #[test]
    fn rejects_nonzero_square() {
        let d1 = RatMatrix::from_i64(1, 1, &[1]);
        let d2 = RatMatrix::from_i64(1, 1, &[1]);
        assert_eq!(
            ChainComplex::new(0, vec![1, 1, 1], vec![RatMatrix::zeros(0, 1), d1, d2]),
            Err(AlgError::NotAComplex(2))
        );
    }

    #[test]
    fn homology_dims_and_hopf() {
        let c = two_term();
        assert_eq!(c.homology_dims(), BTreeMap::from([(0, 1), (1, 2)]));
        let h = c.homology();
        let id = c.identity_map();
        assert_eq!(h.lefschetz(&id), int(-1));
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = two_term();
        let k = cone(&c.identity_map(), &c, &c).unwrap();
        assert!(k.complex.homology_dims().values().all(|&d| d == 0));
    }

    #[test]
    fn cone_of_map_to_zero_is_suspension() {
        let c = two_term();
        let z = ChainComplex::zero();
        let k = cone(&ChainMap::zero(), &c, &z).unwrap();
        assert_eq!(k.complex, shift(&c, 1));
    }

    #[test]
    fn shift_flips_lefschetz_sign() {
        let c = two_term();
        let f = ChainMap::new(BTreeMap::from([
            (0, RatMatrix::from_i64(2, 2, &[3, 0, 0, 1])),
            (1, RatMatrix::from_i64(3, 3, &[3, 0, 0, 0, 3, 0, 0, 0, 5])),
        ]));
        f.check(&c, &c).unwrap();
        let l = lefschetz(&f).unwrap();
        assert_eq!(lefschetz(&shift_map(&f, 1)).unwrap(), -l.clone());
        shift_map(&f, 1).check(&shift(&c, 1), &shift(&c, 1)).unwrap();
        assert_eq!(lefschetz(&shift_map(&f, 2)).unwrap(), l);
    }
}
