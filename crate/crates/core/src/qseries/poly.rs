use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invariant, Result};

/// Exponents of `q`, `R` and `C` in one monomial.
pub type Exponent = (i64, u32, u32);

/// Integer polynomial in `R` and `C` with Laurent exponents in `q`.
///
/// Terms are kept sorted by `(q, R, C)` and zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0, 0)
    }

    pub fn monomial(coef: impl Into<BigInt>, q: i64, r: u32, c: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((q, r, c), coef.into());
        p
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e, 0, 0)
    }

    /// Univariate polynomial `∑ coeffs[i] q^i`.
    pub fn from_q_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            p.add_term((i as i64, 0, 0), c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coefficient(&self, q: i64, r: u32, c: u32) -> BigInt {
        self.terms.get(&(q, r, c)).cloned().unwrap_or_default()
    }

    /// The coefficient of `R^r C^c`, as a polynomial in `q`.
    pub fn coefficient_rc(&self, r: u32, c: u32) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|((_, er, ec), _)| *er == r && *ec == c)
            .map(|((eq, _, _), v)| ((*eq, 0, 0), v.clone()))
            .collect();
        MultiPoly { terms }
    }

    pub fn min_q_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.0).min()
    }

    pub fn max_q_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.0).max()
    }

    /// True when only `q` occurs.
    pub fn is_univariate(&self) -> bool {
        self.terms.keys().all(|&(_, r, c)| r == 0 && c == 0)
    }

    /// True when no `q` exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.min_q_degree().is_none_or(|d| d >= 0)
    }

    /// Returns `self` after checking that no `q` exponent is negative.
    pub fn into_polynomial(self) -> Result<Self> {
        if self.is_polynomial() {
            Ok(self)
        } else {
            invariant(format!("negative q exponent in {self}"))
        }
    }

    /// Coefficients of `q^0..=q^max` for a univariate polynomial.
    pub fn q_coeffs(&self) -> Vec<BigInt> {
        let top = self.max_q_degree().unwrap_or(-1).max(-1);
        let mut out = vec![BigInt::zero(); (top + 1) as usize];
        for ((e, _, _), c) in &self.terms {
            if *e >= 0 {
                out[*e as usize] += c;
            }
        }
        out
    }

    /// Drops every term whose `q` exponent exceeds `max_q`.
    pub fn truncate(mut self, max_q: i64) -> Self {
        self.terms.retain(|e, _| e.0 <= max_q);
        self
    }

    /// Drops every term whose `R` exponent exceeds `max_r`.
    pub fn truncate_r(mut self, max_r: u32) -> Self {
        self.terms.retain(|e, _| e.1 <= max_r);
        self
    }

    /// Substitutes `q -> q^s`.
    pub fn dilate(&self, s: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((q, r, c), v)| ((q * s, *r, *c), v.clone()))
            .collect();
        MultiPoly { terms }
    }

    /// Multiplies by `q^e R^r C^c`.
    pub fn shift(&self, e: i64, r: u32, c: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((eq, er, ec), v)| ((eq + e, er + r, ec + c), v.clone()))
            .collect();
        MultiPoly { terms }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, v)| (*e, v * k)).collect();
        MultiPoly { terms }
    }

    /// Product keeping only terms with `q` exponent at most `max_q`.
    pub fn mul_truncated(&self, other: &Self, max_q: i64) -> Self {
        let mut out = Self::zero();
        for ((aq, ar, ac), av) in &self.terms {
            for ((bq, br, bc), bv) in &other.terms {
                if aq + bq <= max_q {
                    out.add_term((aq + bq, ar + br, ac + bc), av * bv);
                }
            }
        }
        out
    }

    pub fn pow_truncated(&self, n: u32, max_q: i64) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul_truncated(self, max_q))
    }

    fn fmt_term(
        f: &mut fmt::Formatter<'_>,
        (q, r, c): Exponent,
        coef: &BigInt,
        first: bool,
    ) -> fmt::Result {
        let neg = coef.is_negative();
        let abs = coef.abs();
        if !first {
            f.write_str(if neg { " - " } else { " + " })?;
        } else if neg {
            f.write_str("-")?;
        }
        let mut vars = Vec::new();
        for (name, e) in [("q", q), ("R", i64::from(r)), ("C", i64::from(c))] {
            match e {
                0 => {}
                1 => vars.push(name.to_string()),
                _ => vars.push(format!("{name}^{e}")),
            }
        }
        if vars.is_empty() {
            write!(f, "{abs}")
        } else if abs.is_one() {
            write!(f, "{}", vars.join("*"))
        } else {
            write!(f, "{abs}*{}", vars.join("*"))
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Univariate polynomials with a common power of `q` are printed with it
    /// factored out, as in `q^31*(1 + 2*q^3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let low = self.min_q_degree().unwrap_or(0);
        if self.is_univariate() && self.len() > 1 && low != 0 {
            let inner = self.shift(-low, 0, 0);
            return if low == 1 {
                write!(f, "q*({inner})")
            } else {
                write!(f, "q^{low}*({inner})")
            };
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            Self::fmt_term(f, *e, c, i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += rhs;
        self
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for v in self.terms.values_mut() {
            *v = -std::mem::take(v);
        }
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self + (-rhs)
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.clone() - rhs.clone()
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_truncated(rhs, i64::MAX)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::zero(), |acc, p| acc + p)
    }
}

/// Coefficients fitting in `i64` are written as JSON numbers, larger ones
/// as decimal strings.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coef {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct Term {
    q: i64,
    #[serde(rename = "R")]
    r: u32,
    #[serde(rename = "C")]
    c: u32,
    coef: Coef,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(&(q, r, c), v)| Term {
                q,
                r,
                c,
                coef: v
                    .to_i64()
                    .map_or_else(|| Coef::Big(v.to_string()), Coef::Small),
            })
            .collect();
        terms.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(de)?;
        let mut p = MultiPoly::zero();
        for t in terms {
            let coef = match t.coef {
                Coef::Small(v) => BigInt::from(v),
                Coef::Big(s) => s.parse().map_err(D::Error::custom)?,
            };
            p.add_term((t.q, t.r, t.c), coef);
        }
        Ok(p)
    }
}
