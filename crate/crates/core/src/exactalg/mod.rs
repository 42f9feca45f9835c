//! Exact rational linear algebra and bounded chain complexes.

mod chain;
mod matrix;

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use chain::{cone, shift, shift_map, ChainComplex, ChainMap, Cone, Homology};
pub use matrix::{rref, Cokernel, RatMatrix, Solution};

/// Canonical exact rational (reduced, positive denominator).
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("differentials do not square to zero in degree {0}")]
    NotAComplex(i32),
    #[error("map does not commute with differentials in degree {0}")]
    NotAChainMap(i32),
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`; zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, AlgError> {
    let t = s.trim();
    let bad = || AlgError::BadRational(s.to_string());
    if t.is_empty() || t.len() > 4096 {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Checked matrix trace.
pub fn trace(m: &RatMatrix) -> Result<Rational, AlgError> {
    if !m.is_square() {
        return Err(AlgError::NotSquare(m.rows(), m.cols()));
    }
    Ok(m.trace())
}

/// Alternating sum of degreewise traces of a chain endomorphism.
pub fn lefschetz(f: &ChainMap) -> Result<Rational, AlgError> {
    let mut total = Rational::from_integer(0.into());
    for (n, m) in f.components() {
        let t = trace(m)?;
        if n.rem_euclid(2) == 0 {
            total += t;
        } else {
            total -= t;
        }
    }
    Ok(total)
}

/// Splitting of an idempotent: `incl` has the image basis as columns, `proj`
/// expresses vectors in that basis, with `proj * incl = 1` and `incl * proj = e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentImage {
    pub incl: RatMatrix,
    pub proj: RatMatrix,
}

impl IdempotentImage {
    pub fn dim(&self) -> usize {
        self.incl.cols()
    }
}

pub fn idempotent_image(e: &RatMatrix) -> Result<IdempotentImage, AlgError> {
    if !e.is_square() {
        return Err(AlgError::NotSquare(e.rows(), e.cols()));
    }
    if &(e * e) != e {
        return Err(AlgError::NotIdempotent);
    }
    let incl = e.image_basis();
    let proj = match incl.solve(e) {
        Solution::Unique(p) => p,
        // the image basis has full column rank, so the solution is unique
        _ => unreachable!("image basis is not injective"),
    };
    Ok(IdempotentImage { incl, proj })
}

/// Solves `a x = b`, reporting absence or non-uniqueness.
pub fn solve_linear(a: &RatMatrix, b: &RatMatrix) -> Solution {
    a.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("4").unwrap(), int(4));
        assert_eq!(format_rational(&rat(2, -4)), "-1/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace(&RatMatrix::identity(5)).unwrap(), int(5));
        assert_eq!(trace(&RatMatrix::from_i64(2, 2, &[0, 0, 1, 1])).unwrap(), int(1));
        assert!(trace(&RatMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn idempotent_block_splits() {
        let e = RatMatrix::from_i64(2, 2, &[0, 0, 1, 1]);
        let s = idempotent_image(&e).unwrap();
        assert_eq!(s.dim(), 1);
        assert!((&s.proj * &s.incl).is_identity());
        assert_eq!(&s.incl * &s.proj, e);
        assert_eq!(idempotent_image(&RatMatrix::from_i64(1, 1, &[2])), Err(AlgError::NotIdempotent));
    }
}
