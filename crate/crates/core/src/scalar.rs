//! Exact coefficient field.
//!
//! Everything in this crate is computed over the rationals with
//! arbitrary-precision numerators and denominators. [`Scalar`] is the single
//! place the coefficient field is named; swapping in another exact field
//! (e.g. Gaussian rationals) means changing this alias and the few helpers
//! below.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ParseError;

/// Coefficient field of all polynomials, vector fields and matrices.
pub type Scalar = BigRational;

/// A rational matrix stored row-major.
pub type ScalarMatrix = Vec<Vec<Scalar>>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"3"`, `"-3/2"` or `"0.5"`-free rational literals.
pub fn parse_scalar(s: &str) -> Result<Scalar, ParseError> {
    let t = s.trim();
    let bad = || ParseError::Rational(t.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Scalar::from_integer(n))
        }
    }
}

/// Canonical `num/den` (or bare integer) rendering.
pub fn format_scalar(q: &Scalar) -> String {
    q.to_string()
}

pub fn to_i64(q: &Scalar) -> Option<i64> {
    if q.is_integer() {
        i64::try_from(q.to_integer()).ok()
    } else {
        None
    }
}

pub fn int_matrix_to_scalar(m: &[Vec<i64>]) -> ScalarMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| int(x)).collect())
        .collect()
}

pub fn transpose(m: &[Vec<Scalar>]) -> ScalarMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse_scalar(" 4/2 ").unwrap(), int(2));
        assert_eq!(format_scalar(&ratio(6, -4)), "-3/2");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }
}
