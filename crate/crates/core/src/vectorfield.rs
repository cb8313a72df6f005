//! Regular vector fields on the algebraic torus.
//!
//! `Der(L_r)` is a free `L_r`-module on the logarithmic fields
//! `D_j = z_j d/dz_j`, so a [`Derivation`] is stored as its `r` Laurent
//! coefficients `q_j` in `D = sum_j q_j D_j`. On a monomial,
//! `D_j(z^m) = m_j z^m`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{LaurentError, ParseError};
use crate::laurent::{LaurentPoly, Monomial};
use crate::scalar::{format_scalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    coords: Vec<LaurentPoly>,
}

impl Derivation {
    pub fn zero(rank: usize) -> Self {
        Derivation {
            coords: vec![LaurentPoly::zero(rank); rank],
        }
    }

    /// The basis field `D_j` (0-based).
    pub fn basis(rank: usize, j: usize) -> Self {
        let mut d = Self::zero(rank);
        d.coords[j] = LaurentPoly::one(rank);
        d
    }

    /// `sum_j c_j D_j` with constant coefficients.
    pub fn constant(coeffs: &[Scalar]) -> Self {
        let rank = coeffs.len();
        Derivation {
            coords: coeffs
                .iter()
                .map(|c| LaurentPoly::constant(rank, c.clone()))
                .collect(),
        }
    }

    pub fn from_coords(coords: Vec<LaurentPoly>) -> Result<Self, LaurentError> {
        let rank = coords.len();
        for c in &coords {
            if c.rank() != rank {
                return Err(LaurentError::RankMismatch {
                    left: rank,
                    right: c.rank(),
                });
            }
        }
        Ok(Derivation { coords })
    }

    /// The monomial field `z^alpha * sum_j h_j D_j`.
    pub fn monomial_field(alpha: &[i64], h: &[Scalar]) -> Self {
        let m = Monomial(alpha.to_vec());
        Derivation {
            coords: h
                .iter()
                .map(|c| LaurentPoly::term(m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[LaurentPoly] {
        &self.coords
    }

    pub fn coord(&self, j: usize) -> &LaurentPoly {
        &self.coords[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(LaurentPoly::is_zero)
    }

    /// Coefficients when every coordinate is a constant.
    pub fn constant_coeffs(&self) -> Option<Vec<Scalar>> {
        self.coords.iter().map(LaurentPoly::as_constant).collect()
    }

    /// Decomposes `z^m * sum_j h_j D_j` into `(m, h)` when the field has that
    /// shape (all nonzero coordinates are single terms on one monomial).
    pub fn as_monomial_field(&self) -> Option<(Monomial, Vec<Scalar>)> {
        let mut mono: Option<&Monomial> = None;
        for c in &self.coords {
            if c.is_zero() {
                continue;
            }
            let (m, _) = c.as_single_term()?;
            match mono {
                None => mono = Some(m),
                Some(prev) if prev != m => return None,
                _ => {}
            }
        }
        let m = mono.cloned().unwrap_or_else(|| Monomial::one(self.rank()));
        let h = self.coords.iter().map(|c| c.coeff(&m)).collect();
        Some((m, h))
    }

    /// Value of the functional `alpha` (integer combination of the dual basis
    /// of the `D_j`) on a constant field.
    pub fn evaluate_weight(&self, alpha: &[i64]) -> Option<Scalar> {
        let h = self.constant_coeffs()?;
        Some(pair(alpha, &h))
    }

    fn check_rank(&self, rank: usize) -> Result<(), LaurentError> {
        if self.rank() == rank {
            Ok(())
        } else {
            Err(LaurentError::RankMismatch {
                left: self.rank(),
                right: rank,
            })
        }
    }

    /// `D(f) = sum_j q_j D_j(f)`.
    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_rank(f.rank())?;
        let mut out = LaurentPoly::zero(self.rank());
        for (j, q) in self.coords.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let dj = f.euler(j);
            if !dj.is_zero() {
                out = out.try_add(&q.try_mul(&dj)?)?;
            }
        }
        Ok(out)
    }

    /// Lie bracket: coordinate `k` of `[D, E]` is `D(e_k) - E(d_k)`.
    pub fn bracket(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_rank(other.rank())?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(dk, ek)| self.apply(ek)?.try_sub(&other.apply(dk)?))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Derivation { coords })
    }

    /// `ad(self)^k (other)`, for `k >= 1`.
    pub fn ad_pow(&self, k: usize, other: &Self) -> Result<Self, LaurentError> {
        assert!(k >= 1, "ad_pow needs k >= 1");
        let mut acc = other.clone();
        for _ in 0..k {
            acc = self.bracket(&acc)?;
            if acc.is_zero() {
                break;
            }
        }
        #[cfg(debug_assertions)]
        if let (Some((ma, ha)), Some((mb, hb))) =
            (self.as_monomial_field(), other.as_monomial_field())
        {
            debug_assert_eq!(acc, ad_pow_closed_form(&ma.0, &ha, k, &mb.0, &hb));
        }
        Ok(acc)
    }

    /// Multiplies the field by a function: `f * D`.
    pub fn mul_poly(&self, f: &LaurentPoly) -> Result<Self, LaurentError> {
        self.check_rank(f.rank())?;
        let coords = self
            .coords
            .iter()
            .map(|q| q.try_mul(f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Derivation { coords })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Derivation {
            coords: self.coords.iter().map(|q| q.scale(c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_rank(other.rank())?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Derivation { coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.try_add(&other.scale(&-Scalar::one()))
    }

    /// Drops coordinate `j`; fails if `D_j` or `z_j` occurs.
    pub fn drop_coordinate(&self, j: usize) -> Option<Self> {
        if !self.coords[j].is_zero() {
            return None;
        }
        let coords = self
            .coords
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, q)| q.drop_variable(j))
            .collect::<Option<Vec<_>>>()?;
        Some(Derivation { coords })
    }

    /// Sets `D_j = 0` and removes the variable `z_j`; `None` if some remaining
    /// coordinate depends on `z_j`.
    pub fn project_out(&self, j: usize) -> Option<Self> {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, q)| q.drop_variable(j))
            .collect::<Option<Vec<_>>>()?;
        Some(Derivation { coords })
    }

    /// Coordinates as Laurent text strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(ToString::to_string).collect()
    }

    pub fn parse_coords<S: AsRef<str>>(coords: &[S]) -> Result<Self, ParseError> {
        let rank = coords.len();
        let coords = coords
            .iter()
            .map(|s| LaurentPoly::parse(s.as_ref(), rank))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Derivation { coords })
    }

    /// Display in `d/dz_j` coordinates: the coefficient of `d/dz_j` is `z_j q_j`.
    pub fn display_partial(&self) -> String {
        let rank = self.rank();
        let parts: Vec<(usize, LaurentPoly)> = self
            .coords
            .iter()
            .enumerate()
            .map(|(j, q)| (j, q.mul_monomial(&Monomial::var(rank, j, 1))))
            .collect();
        write_terms(&parts, |j| format!("d/dz{}", j + 1))
    }
}

fn write_terms(parts: &[(usize, LaurentPoly)], op: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (j, q) in parts {
        for (m, c) in q.terms().rev() {
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            if !a.is_one() {
                out.push_str(&format_scalar(&a));
                out.push('*');
            }
            if !m.is_one() {
                out.push_str(&LaurentPoly::term(m.clone(), Scalar::one()).to_string());
                out.push('*');
            }
            out.push_str(&op(*j));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Derivation {
    /// Expanded form such as `z1^2*D2 - 1/2*D1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(usize, LaurentPoly)> = self.coords.iter().cloned().enumerate().collect();
        f.write_str(&write_terms(&parts, |j| format!("D{}", j + 1)))
    }
}

impl Add<&Derivation> for &Derivation {
    type Output = Derivation;
    fn add(self, rhs: &Derivation) -> Derivation {
        self.try_add(rhs).expect("derivation rank mismatch")
    }
}

impl Sub<&Derivation> for &Derivation {
    type Output = Derivation;
    fn sub(self, rhs: &Derivation) -> Derivation {
        self.try_sub(rhs).expect("derivation rank mismatch")
    }
}

impl Neg for &Derivation {
    type Output = Derivation;
    fn neg(self) -> Derivation {
        self.scale(&-Scalar::one())
    }
}

/// `alpha(H)` for an integer functional and constant coefficients.
pub fn pair(alpha: &[i64], h: &[Scalar]) -> Scalar {
    alpha
        .iter()
        .zip(h)
        .map(|(&a, c)| c * Scalar::from_integer(a.into()))
        .sum()
}

/// Closed form of `[z^alpha H, z^beta H'] = z^(alpha+beta) (beta(H) H' - alpha(H') H)`.
pub fn bracket_closed_form(alpha: &[i64], h: &[Scalar], beta: &[i64], h2: &[Scalar]) -> Derivation {
    let b_h = pair(beta, h);
    let a_h2 = pair(alpha, h2);
    let coeffs: Vec<Scalar> = h
        .iter()
        .zip(h2)
        .map(|(x, y)| &b_h * y - &a_h2 * x)
        .collect();
    let sum: Vec<i64> = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
    Derivation::monomial_field(&sum, &coeffs)
}

/// Closed form of `ad(z^alpha H)^k (z^beta H')`:
///
/// `z^(beta+k alpha) ( P_k H' - k alpha(H') P_(k-1) H )` with
/// `P_m = prod_{i<m} (beta + i alpha)(H)`.
pub fn ad_pow_closed_form(
    alpha: &[i64],
    h: &[Scalar],
    k: usize,
    beta: &[i64],
    h2: &[Scalar],
) -> Derivation {
    assert!(k >= 1);
    let shifted = |i: usize| -> Vec<i64> {
        beta.iter()
            .zip(alpha)
            .map(|(b, a)| b + i as i64 * a)
            .collect()
    };
    let prod = |m: usize| -> Scalar { (0..m).map(|i| pair(&shifted(i), h)).product() };
    let p_k = prod(k);
    let p_km1 = prod(k - 1);
    let c = Scalar::from_integer((k as i64).into()) * pair(alpha, h2) * p_km1;
    let coeffs: Vec<Scalar> = h2.iter().zip(h).map(|(y, x)| &p_k * y - &c * x).collect();
    Derivation::monomial_field(&shifted(k), &coeffs)
}

/// Incrementally maintained linear span of derivations over the rationals.
#[derive(Debug, Clone, Default)]
pub struct DerivationSpan {
    // Each basis vector is reduced against all earlier pivots and has a unit
    // coefficient at its own pivot.
    rows: Vec<(Key, BTreeMap<Key, Scalar>)>,
}

type Key = (usize, Monomial);

fn to_vector(d: &Derivation) -> BTreeMap<Key, Scalar> {
    let mut v = BTreeMap::new();
    for (j, q) in d.coords().iter().enumerate() {
        for (m, c) in q.terms() {
            v.insert((j, m.clone()), c.clone());
        }
    }
    v
}

impl DerivationSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: BTreeMap<Key, Scalar>) -> BTreeMap<Key, Scalar> {
        for (pivot, row) in &self.rows {
            let Some(c) = v.get(pivot).cloned() else {
                continue;
            };
            for (k, x) in row {
                let e = v.entry(k.clone()).or_insert_with(Scalar::zero);
                *e -= &c * x;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
        v
    }

    pub fn contains(&self, d: &Derivation) -> bool {
        self.reduce(to_vector(d)).is_empty()
    }

    /// Adds `d`; returns `false` when it was already in the span.
    pub fn insert(&mut self, d: &Derivation) -> bool {
        let v = self.reduce(to_vector(d));
        let Some((pivot, c)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = c.recip();
        let row = v.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.rows.push((pivot, row));
        true
    }
}
