use num_bigint::BigInt;

use super::{CoeffError, CoeffVector};
use crate::exactalg::{int, RatMatrix, Rational, Solution};
use crate::fincat::{FinCat, GroupAction};

/// Rational weights on objects with `Σ_b |A(a,b)| k^b = 1` for every `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weighting {
    base: FinCat,
    values: Vec<Rational>,
}

impl Weighting {
    /// Checks the weighting equation before accepting.
    pub fn new(base: &FinCat, values: Vec<Rational>) -> Result<Self, CoeffError> {
        assert_eq!(values.len(), base.num_objects(), "one weight per object");
        for a in base.objects() {
            let lhs: Rational =
                base.objects().map(|b| &values[b] * Rational::from_integer(base.hom(a, b).len().into())).sum();
            if lhs != int(1) {
                return Err(CoeffError::NotAWeighting(base.object_name(a).to_string()));
            }
        }
        Ok(Weighting { base: base.clone(), values })
    }

    pub fn base(&self) -> &FinCat {
        &self.base
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `Σ_a k^a · sizes[a]`.
    pub fn cardinality(&self, sizes: &[usize]) -> Rational {
        self.values.iter().zip(sizes).map(|(k, &n)| k * Rational::from_integer(n.into())).sum()
    }
}

/// Evidence that no weighting exists: coefficients `y` with `Σ_a y_a |A(a,-)| = 0`
/// but `Σ_a y_a = 1`, so the rows of the system are inconsistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoWeighting {
    pub combination: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightingResult {
    Found(Weighting),
    None(NoWeighting),
}

fn hom_counts(cat: &FinCat) -> RatMatrix {
    let n = cat.num_objects();
    let mut entries = Vec::with_capacity(n * n);
    for a in cat.objects() {
        for b in cat.objects() {
            entries.push(cat.hom(a, b).len() as i64);
        }
    }
    RatMatrix::from_i64(n, n, &entries)
}

/// Solves the hom-count system exactly; when it is underdetermined the
/// particular solution from elimination is returned.
pub fn leinster_weighting(cat: &FinCat) -> WeightingResult {
    match solve_weighting(&hom_counts(cat)) {
        Ok(values) => WeightingResult::Found(Weighting::new(cat, values).expect("solution of the weighting system")),
        Err(cert) => WeightingResult::None(cert),
    }
}

fn solve_weighting(m: &RatMatrix) -> Result<Vec<Rational>, NoWeighting> {
    let n = m.rows();
    let ones = RatMatrix::column(vec![int(1); n]);
    let x = match m.solve(&ones) {
        Solution::Unique(x) => x,
        Solution::NotUnique { particular, .. } => particular,
        Solution::NoSolution => {
            let left = m.transpose().kernel_basis();
            let column_sum = |j: usize| (0..n).map(|i| &left[(i, j)]).sum::<Rational>();
            let j = (0..left.cols())
                .find(|&j| column_sum(j) != int(0))
                .expect("inconsistent system has a separating left kernel vector");
            let total = column_sum(j);
            return Err(NoWeighting { combination: (0..n).map(|i| &left[(i, j)] / &total).collect() });
        }
    };
    Ok((0..n).map(|i| x[(i, 0)].clone()).collect())
}

/// Reads the identity-class components of a coefficient vector as a
/// weighting. Refused unless every endomorphism monoid acts freely on the
/// homsets into its object.
pub fn weighting_from_coeffs(cat: &FinCat, v: &CoeffVector) -> Result<Weighting, CoeffError> {
    if v.base() != cat {
        return Err(CoeffError::Vector("coefficient vector over a different category".into()));
    }
    for b in cat.objects() {
        for &beta in cat.endos(b).iter().filter(|&&e| !cat.is_identity(e)) {
            for a in cat.objects() {
                if let Some(&alpha) = cat.hom(a, b).iter().find(|&&al| cat.compose(beta, al) == al) {
                    return Err(CoeffError::NotFree {
                        endo: cat.arrow_name(beta).to_string(),
                        arrow: cat.arrow_name(alpha).to_string(),
                    });
                }
            }
        }
    }
    let values = cat.objects().map(|a| v.at(cat.id(a)).expect("identity class").clone()).collect();
    Weighting::new(cat, values)
}

/// Both sides of `Σ_[z] |G_z ∩ S| / |G_z| = Σ_{g∈S} |Z^g| / |G|`.
pub fn stabilizer_orbit_identity(action: &GroupAction, s: &[usize]) -> Result<(Rational, Rational), CoeffError> {
    let g = &action.group;
    if !g.is_conjugation_closed(s) {
        return Err(CoeffError::NotConjugationClosed);
    }
    let frac = |a: usize, b: usize| Rational::new(BigInt::from(a), BigInt::from(b));
    let lhs = action
        .orbits()
        .iter()
        .map(|orbit| {
            let stab = action.stabilizer(orbit[0]);
            frac(stab.iter().filter(|h| s.contains(h)).count(), stab.len())
        })
        .sum();
    let rhs = s.iter().map(|&x| frac(action.fixed_points(x), g.order())).sum();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{coeff_group, coeff_hofin};
    use crate::exactalg::rat;
    use crate::fincat::{bg, free_idempotent, parallel_arrows, span, walking_arrow, FinGroup};

    #[test]
    fn weightings() {
        let WeightingResult::Found(w) = leinster_weighting(&bg(&FinGroup::symmetric(3))) else { panic!() };
        assert_eq!(w.values(), &[rat(1, 6)]);
        let WeightingResult::Found(w) = leinster_weighting(&free_idempotent()) else { panic!() };
        assert_eq!(w.values(), &[rat(1, 2)]);
        let WeightingResult::Found(w) = leinster_weighting(&span()) else { panic!() };
        assert_eq!(w.values(), &[int(-1), int(1), int(1)]);
    }

    #[test]
    fn no_weighting_certificate() {
        let m = RatMatrix::from_i64(2, 2, &[1, 1, 2, 2]);
        let cert = solve_weighting(&m).unwrap_err();
        assert_eq!(cert.combination, vec![int(2), int(-1)]);
        let indiscrete = crate::fincat::indiscrete(2);
        assert!(matches!(leinster_weighting(&indiscrete), WeightingResult::Found(_)));
    }

    #[test]
    fn weighting_from_coefficients() {
        let w = weighting_from_coeffs(&span(), &coeff_hofin(&span()).unwrap()).unwrap();
        assert_eq!(w.values(), &[int(-1), int(1), int(1)]);
        let p = parallel_arrows(2);
        assert!(weighting_from_coeffs(&p, &coeff_hofin(&p).unwrap()).is_ok());
        let g = FinGroup::cyclic(3);
        let w = weighting_from_coeffs(&bg(&g), &coeff_group(&g)).unwrap();
        assert_eq!(w.values(), &[rat(1, 3)]);
        let e = free_idempotent();
        assert!(matches!(
            weighting_from_coeffs(&e, &crate::coeffs::coeff_idempotent()),
            Err(CoeffError::NotFree { .. })
        ));
        assert!(weighting_from_coeffs(&walking_arrow(), &coeff_hofin(&span()).unwrap()).is_err());
    }

    #[test]
    fn orbit_identity() {
        let s3 = FinGroup::symmetric(3);
        let z = GroupAction::sum(&[
            GroupAction::cosets(&s3, &[0]).unwrap(),
            GroupAction::cosets(&s3, &[0, 1]).unwrap(),
            GroupAction::cosets(&s3, &s3.elements().collect::<Vec<_>>()).unwrap(),
        ])
        .unwrap();
        let all: Vec<usize> = s3.elements().collect();
        let (l, r) = stabilizer_orbit_identity(&z, &all).unwrap();
        assert_eq!(l, int(3));
        assert_eq!(l, r);
        for class in s3.conj_classes() {
            let (l, r) = stabilizer_orbit_identity(&z, &class).unwrap();
            assert_eq!(l, r);
        }
        assert!(stabilizer_orbit_identity(&z, &[1]).is_err());
    }
}
