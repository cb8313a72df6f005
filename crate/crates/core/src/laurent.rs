//! Sparse multivariate Laurent polynomials `Q[z1^±1, ..., zr^±1]`.
//!
//! A [`LaurentPoly`] is a finite map from exponent vectors to nonzero
//! rational coefficients. Zero coefficients are never stored, so structural
//! equality is polynomial equality. Variables are `z1..zr` in text form and
//! `0..r` as indices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LaurentError, ParseError};
use crate::scalar::{format_scalar, parse_scalar, Scalar};

/// Exponent vector of a Laurent monomial. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn one(rank: usize) -> Self {
        Monomial(vec![0; rank])
    }

    /// `z_var^exp`.
    pub fn var(rank: usize, var: usize, exp: i64) -> Self {
        let mut e = vec![0; rank];
        e[var] = exp;
        Monomial(e)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[i64] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub fn pow(&self, k: i64) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    fn write_text(&self, f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (j, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{}", j + 1)?;
            } else {
                write!(f, "z{}^{}", j + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Element of the Laurent polynomial ring in `rank` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Scalar::one())
    }

    pub fn constant(rank: usize, c: Scalar) -> Self {
        Self::term(Monomial::one(rank), c)
    }

    /// The coordinate function `z_var` (0-based index).
    pub fn var(rank: usize, var: usize) -> Self {
        Self::term(Monomial::var(rank, var, 1), Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let rank = m.rank();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { rank, terms }
    }

    /// Builds a polynomial from possibly repeated or zero terms.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(rank);
        for (m, c) in terms {
            assert_eq!(m.rank(), rank, "monomial rank mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_single_term(&self) -> Option<(&Monomial, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Units of the Laurent ring are exactly the nonzero scalar monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    fn check_rank(&self, other: &Self) -> Result<(), LaurentError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(LaurentError::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.mul(m), x.clone()))
                .collect(),
        }
    }

    pub fn invert(&self) -> Result<Self, LaurentError> {
        let (m, c) = self.as_single_term().ok_or(LaurentError::NotAUnit)?;
        Ok(Self::term(m.inverse(), c.recip()))
    }

    /// `self^k`; negative `k` requires a unit.
    pub fn power(&self, k: i64) -> Result<Self, LaurentError> {
        if k < 0 {
            return self.invert()?.power(-k);
        }
        if let Some((m, c)) = self.as_single_term() {
            return Ok(Self::term(m.pow(k), num_traits::pow(c.clone(), k as usize)));
        }
        let mut base = self.clone();
        let mut acc = Self::one(self.rank);
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `z_j d/dz_j` applied to `self`: multiplies each term by its `j`-th exponent.
    pub fn euler(&self, j: usize) -> Self {
        let mut out = Self::zero(self.rank);
        for (m, c) in &self.terms {
            let e = m.0[j];
            if e != 0 {
                out.terms
                    .insert(m.clone(), c * Scalar::from_integer(e.into()));
            }
        }
        out
    }

    /// Removes variable `var` if it does not occur; `None` otherwise.
    pub fn drop_variable(&self, var: usize) -> Option<Self> {
        let mut out = Self::zero(self.rank - 1);
        for (m, c) in &self.terms {
            if m.0[var] != 0 {
                return None;
            }
            let mut e = m.0.clone();
            e.remove(var);
            out.terms.insert(Monomial(e), c.clone());
        }
        Some(out)
    }

    /// Parses the text syntax `3/2*z1^2*z2^-1 + z3`.
    pub fn parse(input: &str, rank: usize) -> Result<Self, ParseError> {
        Parser::new(input, rank).parse()
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                coeff: format_scalar(c),
                exps: m.0.clone(),
            })
            .collect()
    }

    pub fn from_json_terms(rank: usize, terms: &[TermJson]) -> Result<Self, ParseError> {
        let mut out = Self::zero(rank);
        for t in terms {
            if t.exps.len() != rank {
                return Err(ParseError::Json(format!(
                    "term has {} exponents, expected {rank}",
                    t.exps.len()
                )));
            }
            out.add_term(Monomial(t.exps.clone()), parse_scalar(&t.coeff)?);
        }
        Ok(out)
    }
}

/// JSON form of one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<i64>,
}

impl fmt::Display for LaurentPoly {
    /// Terms are printed in descending lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                f.write_str(&format_scalar(&a))?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", format_scalar(&a))?;
                }
                m.write_text(f)?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            /// Panics on rank mismatch; use the `try_` form to handle it.
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$inner(rhs).expect("Laurent polynomial rank mismatch")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
    rank: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str, rank: usize) -> Self {
        Parser {
            input,
            chars: input.chars().collect(),
            pos: 0,
            rank,
        }
    }

    fn err(&self, reason: impl Into<String>) -> ParseError {
        ParseError::Polynomial {
            input: self.input.to_string(),
            reason: reason.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn parse(mut self) -> Result<LaurentPoly, ParseError> {
        let mut out = LaurentPoly::zero(self.rank);
        if self.peek().is_none() {
            return Err(self.err("empty input"));
        }
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    Scalar::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -Scalar::one()
                }
                Some(_) if first => Scalar::one(),
                Some(c) => return Err(self.err(format!("unexpected `{c}`"))),
                None => break,
            };
            first = false;
            let (m, c) = self.parse_term()?;
            out.add_term(m, c * sign);
            if self.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<(Monomial, Scalar), ParseError> {
        let mut coeff = Scalar::one();
        let mut exps = vec![0i64; self.rank];
        loop {
            match self.peek() {
                Some('z') => {
                    self.pos += 1;
                    let idx = self.digits();
                    let var: usize = idx
                        .parse()
                        .map_err(|_| self.err("expected variable index after `z`"))?;
                    if var == 0 || var > self.rank {
                        return Err(
                            self.err(format!("variable z{var} out of range 1..={}", self.rank))
                        );
                    }
                    let mut e = 1i64;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        let neg = match self.peek() {
                            Some('-') => {
                                self.pos += 1;
                                true
                            }
                            Some('+') => {
                                self.pos += 1;
                                false
                            }
                            _ => false,
                        };
                        self.skip_ws();
                        let d = self.digits();
                        e = d
                            .parse()
                            .map_err(|_| self.err("expected exponent after `^`"))?;
                        if neg {
                            e = -e;
                        }
                    }
                    exps[var - 1] += e;
                }
                Some(c) if c.is_ascii_digit() => {
                    let num = self.digits();
                    let lit = if self.peek() == Some('/') {
                        self.pos += 1;
                        self.skip_ws();
                        format!("{num}/{}", self.digits())
                    } else {
                        num
                    };
                    coeff *= parse_scalar(&lit)?;
                }
                Some(c) => return Err(self.err(format!("unexpected `{c}`"))),
                None => return Err(self.err("unexpected end of input")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial(exps), coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn p(s: &str, r: usize) -> LaurentPoly {
        LaurentPoly::parse(s, r).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("z1 + z2", 2);
        let b = p("z1 - z2", 2);
        assert_eq!(&a * &b, p("z1^2 - z2^2", 2));
    }

    #[test]
    fn additive_identity_and_unit_cancellation() {
        let a = p("3/2*z1^2*z2^-1 + z2", 2);
        assert_eq!(&a + &LaurentPoly::zero(2), a);
        let h = p("1/2*z1", 1);
        let g = p("2*z1^-1", 1);
        assert_eq!(&h * &g, LaurentPoly::one(1));
    }

    #[test]
    fn rank_mismatch_is_reported() {
        let a = LaurentPoly::var(2, 0);
        let b = LaurentPoly::var(3, 0);
        assert_eq!(
            a.try_add(&b),
            Err(LaurentError::RankMismatch { left: 2, right: 3 })
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn invert_monomials_only() {
        assert_eq!(p("3*z1*z2^-2", 2).invert().unwrap(), p("1/3*z1^-1*z2^2", 2));
        assert_eq!(p("z1 + 1", 1).invert(), Err(LaurentError::NotAUnit));
        assert_eq!(LaurentPoly::zero(1).invert(), Err(LaurentError::NotAUnit));
        assert_eq!(LaurentPoly::one(3).invert().unwrap(), LaurentPoly::one(3));
    }

    #[test]
    fn powers() {
        assert_eq!(p("z1*z2", 2).power(3).unwrap(), p("z1^3*z2^3", 2));
        assert_eq!(p("2*z1", 1).power(-1).unwrap(), p("1/2*z1^-1", 1));
        assert_eq!(p("z1 + 1", 1).power(2).unwrap(), p("z1^2 + 2*z1 + 1", 1));
        assert_eq!(p("z1 + 1", 1).power(0).unwrap(), LaurentPoly::one(1));
        assert_eq!(p("z1 + 1", 1).power(-2), Err(LaurentError::NotAUnit));
    }

    #[test]
    fn display_is_descending_lex() {
        let a = p("z2^2 - z1^2 + 7 - 3/2*z1*z2^-1", 2);
        assert_eq!(a.to_string(), "-z1^2 - 3/2*z1*z2^-1 + z2^2 + 7");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
        assert_eq!(p("-1", 1).to_string(), "-1");
    }

    #[test]
    fn parser_edge_cases() {
        assert_eq!(
            p("  -z1 ^ -2 ", 1),
            LaurentPoly::term(Monomial(vec![-2]), int(-1))
        );
        assert_eq!(p("z1*z1", 1), p("z1^2", 1));
        assert_eq!(p("2*3/4", 1), LaurentPoly::constant(1, ratio(3, 2)));
        assert_eq!(p("z1 - z1", 1), LaurentPoly::zero(1));
        assert!(LaurentPoly::parse("z3", 2).is_err());
        assert!(LaurentPoly::parse("z0", 2).is_err());
        assert!(LaurentPoly::parse("", 2).is_err());
        assert!(LaurentPoly::parse("z1 +", 2).is_err());
        assert!(LaurentPoly::parse("z1 z2", 2).is_err());
    }

    #[test]
    fn euler_operator() {
        let f = p("z1^2*z2^-1 + 5", 2);
        assert_eq!(f.euler(0), p("2*z1^2*z2^-1", 2));
        assert_eq!(f.euler(1), p("-z1^2*z2^-1", 2));
    }

    #[test]
    fn json_terms() {
        let a = p("3/2*z1^2*z2^-1 + z2", 2);
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(
            j,
            r#"[{"coeff":"1","exps":[0,1]},{"coeff":"3/2","exps":[2,-1]}]"#
        );
        let terms: Vec<TermJson> = serde_json::from_str(&j).unwrap();
        assert_eq!(LaurentPoly::from_json_terms(2, &terms).unwrap(), a);
        assert!(LaurentPoly::from_json_terms(3, &terms).is_err());
    }
}
