//! Coefficient vectors of absolute weights, Leinster weightings, and the
//! counting identities that relate them.
//!
//! A [`CoeffVector`] assigns one exact rational to each conjugacy class of
//! endomorphisms of its base category. Pairing it with the per-class traces
//! `tr(f_a ∘ X_α)` of an endomorphism of a diagram gives the trace of the
//! induced map on the (weighted, homotopy) colimit.

mod formulas;
mod weighting;

use std::fmt;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::exactalg::{format_rational, int, parse_rational, AlgError, Rational};
use crate::fincat::{
    count_strings, delta_prime_op, discrete, free_idempotent, max_string_length, span, walking_arrow, ArrowId,
    ConjClasses, FinCat, FinCatError,
};

pub use formulas::{coeff_ei, coeff_ei_desouza, coeff_group, coeff_groupoid, coeff_hofin};
pub use weighting::{
    leinster_weighting, stabilizer_orbit_identity, weighting_from_coeffs, NoWeighting, Weighting, WeightingResult,
};

#[derive(Debug, Error)]
pub enum CoeffError {
    #[error("category is not strictly homotopy finite")]
    NotHomotopyFinite,
    #[error("category is not a groupoid")]
    NotGroupoid,
    #[error("category is not EI")]
    NotEI,
    #[error("endomorphism {endo} fixes {arrow}, so endomorphisms do not act freely on homsets")]
    NotFree { endo: String, arrow: String },
    #[error("subset is not a union of conjugacy classes")]
    NotConjugationClosed,
    #[error("weighting equation fails at object {0}")]
    NotAWeighting(String),
    #[error("conjugacy class of automorphisms restricts to more than one class at the first object")]
    IllDefinedRestriction,
    #[error("coefficient vector: {0}")]
    Vector(String),
    #[error(transparent)]
    Cat(#[from] FinCatError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// One rational per conjugacy class of a finite category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffVector {
    base: FinCat,
    classes: ConjClasses,
    values: Vec<Rational>,
}

impl CoeffVector {
    pub fn new(base: &FinCat, values: Vec<Rational>) -> Result<Self, CoeffError> {
        let classes = base.conjugacy_classes();
        if values.len() != classes.len() {
            return Err(CoeffError::Vector(format!("{} values for {} conjugacy classes", values.len(), classes.len())));
        }
        Ok(CoeffVector { base: base.clone(), classes, values })
    }

    pub fn zero(base: &FinCat) -> Self {
        let classes = base.conjugacy_classes();
        let values = vec![int(0); classes.len()];
        CoeffVector { base: base.clone(), classes, values }
    }

    pub fn base(&self) -> &FinCat {
        &self.base
    }

    pub fn classes(&self) -> &ConjClasses {
        &self.classes
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value on the class of an endomorphism.
    pub fn at(&self, f: ArrowId) -> Option<&Rational> {
        self.classes.class_of(f).map(|i| &self.values[i])
    }

    pub(crate) fn add_at(&mut self, f: ArrowId, v: &Rational) {
        let i = self.classes.class_of(f).expect("endomorphism");
        self.values[i] += v;
    }

    /// `Σ_[α] φ_[α] · t_[α]` for per-class values `t`.
    pub fn pair(&self, per_class: &[Rational]) -> Rational {
        assert_eq!(per_class.len(), self.values.len(), "pair: length mismatch");
        self.values.iter().zip(per_class).map(|(a, b)| a * b).sum()
    }

    pub fn sum(&self) -> Rational {
        self.values.iter().sum()
    }

    /// `{"rep arrow name": "p/q"}` keyed by the least arrow of each class.
    pub fn to_json_map(&self) -> Map<String, Value> {
        self.classes
            .reps()
            .into_iter()
            .zip(&self.values)
            .map(|(r, v)| (self.base.arrow_name(r).to_string(), Value::String(format_rational(v))))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&Value::Object(self.to_json_map())).expect("json map")
    }

    /// Parses the map form. Keys may name any member of a class; each class
    /// must be given exactly once. Values are strings or integers.
    pub fn from_json(base: &FinCat, text: &str) -> Result<Self, CoeffError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CoeffError::Vector(e.to_string()))?;
        let Value::Object(map) = value else {
            return Err(CoeffError::Vector("expected an object".into()));
        };
        let mut out = CoeffVector::zero(base);
        let mut given = vec![false; out.len()];
        for (key, v) in &map {
            let f = base.arrow_by_name(key).ok_or_else(|| CoeffError::Vector(format!("unknown arrow {key}")))?;
            let i =
                out.classes.class_of(f).ok_or_else(|| CoeffError::Vector(format!("{key} is not an endomorphism")))?;
            if std::mem::replace(&mut given[i], true) {
                return Err(CoeffError::Vector(format!("class of {key} given twice")));
            }
            out.values[i] = match v {
                Value::String(s) => parse_rational(s)?,
                Value::Number(n) => parse_rational(&n.to_string())?,
                _ => return Err(CoeffError::Vector(format!("bad value for {key}"))),
            };
        }
        if let Some(i) = given.iter().position(|g| !g) {
            return Err(CoeffError::Vector(format!("missing class of {}", base.arrow_name(out.classes.rep(i)))));
        }
        Ok(out)
    }
}

impl fmt::Display for CoeffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, v) in self.classes.reps().into_iter().zip(&self.values) {
            writeln!(f, "[{}]\t{}", self.base.arrow_name(r), format_rational(v))?;
        }
        Ok(())
    }
}

fn table(base: FinCat, by_name: &[(&str, i64)]) -> CoeffVector {
    let mut v = CoeffVector::zero(&base);
    for &(name, x) in by_name {
        let f = base.arrow_by_name(name).expect("table arrow");
        v.add_at(f, &int(x));
    }
    v
}

/// Coproduct of `n` objects: every coefficient is 1.
pub fn coeff_coproduct(n: usize) -> CoeffVector {
    let base = discrete(n);
    let values = vec![int(1); n];
    CoeffVector::new(&base, values).expect("one class per object")
}

/// The empty colimit has no coefficients.
pub fn coeff_initial() -> CoeffVector {
    CoeffVector::zero(&discrete(0))
}

/// Splitting of an idempotent: only the class of the idempotent contributes.
pub fn coeff_idempotent() -> CoeffVector {
    table(free_idempotent(), &[("e", 1)])
}

/// Cofiber of a map `a -> b`.
pub fn coeff_cofiber() -> CoeffVector {
    table(walking_arrow(), &[("id_a", -1), ("id_b", 1)])
}

/// Pushout of a span `b <- a -> c`.
pub fn coeff_pushout() -> CoeffVector {
    table(span(), &[("id_a", -1), ("id_b", 1), ("id_c", 1)])
}

/// Names accepted by [`coeff_table`].
pub const TABLE_NAMES: [&str; 5] = ["coproduct", "initial", "idempotent", "cofiber", "pushout"];

/// Looks up a fixed table; `coproduct` may carry a size as `coproduct<n>`.
pub fn coeff_table(name: &str) -> Option<CoeffVector> {
    match name {
        "initial" => Some(coeff_initial()),
        "idempotent" => Some(coeff_idempotent()),
        "cofiber" => Some(coeff_cofiber()),
        "pushout" => Some(coeff_pushout()),
        "coproduct" => Some(coeff_coproduct(2)),
        _ => name.strip_prefix("coproduct").and_then(|n| n.parse().ok()).map(coeff_coproduct),
    }
}

/// Alternating count of strings of nonidentity face maps starting at `[n]`,
/// returned with the expected value `(-1)^n`.
pub fn realiz_coeff_check(n: usize) -> (Rational, Rational) {
    let cat = delta_prime_op(n);
    let top = cat.object_by_name(&format!("[{n}]")).expect("top object");
    let len = max_string_length(&cat).expect("finite nerve");
    let mut total = int(0);
    for k in 0..=len {
        let c = Rational::from_integer(count_strings(&cat, top, k).into());
        if k % 2 == 0 {
            total += c;
        } else {
            total -= c;
        }
    }
    let expected = int(if n.is_multiple_of(2) { 1 } else { -1 });
    (total, expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn fixed_tables() {
        assert_eq!(coeff_coproduct(2).values(), &[int(1), int(1)]);
        assert!(coeff_initial().is_empty());
        assert_eq!(coeff_idempotent().values(), &[int(0), int(1)]);
        assert_eq!(coeff_cofiber().values(), &[int(-1), int(1)]);
        assert_eq!(coeff_pushout().sum(), int(1));
    }

    #[test]
    fn realization_identity_small() {
        for n in 0..=4 {
            let (lhs, rhs) = realiz_coeff_check(n);
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn json_round_trip() {
        let v = coeff_cofiber();
        let back = CoeffVector::from_json(v.base(), &v.to_json()).unwrap();
        assert_eq!(back, v);
        let w = CoeffVector::from_json(&walking_arrow(), r#"{"id_a": "1/3", "id_b": 2}"#).unwrap();
        assert_eq!(w.values(), &[rat(1, 3), int(2)]);
        assert!(CoeffVector::from_json(&walking_arrow(), r#"{"id_a": "1"}"#).is_err());
        assert!(CoeffVector::from_json(&walking_arrow(), r#"{"f": "1", "id_b": "1"}"#).is_err());
    }
}
