use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::terms::{self, Exponent, Term};
use crate::error::{Error, Result};

/// An ordinal below ε₀ in Cantor normal form.
///
/// The term list `[(e1, c1), …, (ek, ck)]` denotes `ω^e1·c1 + … + ω^ek·ck`
/// with `e1 > … > ek` and every `ci ≥ 1`; the empty list is `0`.
/// Coefficients are `u64` and arithmetic panics on coefficient overflow.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CnfOrdinal {
    terms: Arc<[(CnfOrdinal, u64)]>,
}

impl Exponent for CnfOrdinal {
    fn zero() -> Self {
        CnfOrdinal::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl CnfOrdinal {
    pub(crate) fn from_vec(v: Vec<Term<CnfOrdinal>>) -> Self {
        debug_assert!(terms::is_canonical(&v));
        CnfOrdinal { terms: v.into() }
    }

    pub fn zero() -> Self {
        CnfOrdinal {
            terms: Arc::from([]),
        }
    }

    pub fn one() -> Self {
        Self::from(1)
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// `ω^e`.
    pub fn omega_pow(e: CnfOrdinal) -> Self {
        Self::from_vec(vec![(e, 1)])
    }

    /// `ω^e · c`, or `0` when `c = 0`.
    pub fn monomial(e: CnfOrdinal, c: u64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self::from_vec(vec![(e, c)])
        }
    }

    /// Builds an ordinal from explicit terms, rejecting non-canonical lists.
    pub fn from_terms(v: Vec<(CnfOrdinal, u64)>) -> Result<Self> {
        if terms::is_canonical(&v) {
            Ok(Self::from_vec(v))
        } else {
            let value = v.iter().fold(Self::zero(), |acc, (e, c)| {
                acc.add(&Self::monomial(e.clone(), *c))
            });
            Err(Error::NonCanonical {
                input: format!("{v:?}"),
                hint: value.to_string(),
            })
        }
    }

    pub fn terms(&self) -> &[(CnfOrdinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    pub fn as_finite(&self) -> Option<u64> {
        match &*self.terms {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_successor(&self) -> bool {
        terms::is_successor(&self.terms)
    }

    pub fn is_limit(&self) -> bool {
        terms::is_limit(&self.terms)
    }

    pub fn leading_exponent(&self) -> Option<&CnfOrdinal> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn last_exponent(&self) -> Option<&CnfOrdinal> {
        self.terms.last().map(|t| &t.0)
    }

    pub fn succ(&self) -> Self {
        Self::from_vec(terms::succ(&self.terms))
    }

    pub fn pred(&self) -> Option<Self> {
        self.is_successor()
            .then(|| Self::from_vec(terms::drop_last_unit(&self.terms)))
    }

    /// `γ` where `self = γ + ω^e` with `e` the last exponent; `0` for `0`.
    pub fn drop_last_unit(&self) -> Self {
        Self::from_vec(terms::drop_last_unit(&self.terms))
    }

    /// The terms with exponent at least `e`.
    pub fn high_part(&self, e: &CnfOrdinal) -> Self {
        Self::from_vec(terms::high(&self.terms, e))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_vec(terms::add(&self.terms, &other.terms))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let Some((lead, lead_c)) = self.terms.first() else {
            return Self::zero();
        };
        let mut out = Self::zero();
        for (f, d) in other.terms.iter() {
            let piece = if f.is_zero() {
                let mut v = self.terms.to_vec();
                v[0].1 = terms::coef_mul(*lead_c, *d);
                Self::from_vec(v)
            } else {
                Self::monomial(lead.add(f), *d)
            };
            out = out.add(&piece);
        }
        out
    }

    pub fn nat_add(&self, other: &Self) -> Self {
        Self::from_vec(terms::nat_add(&self.terms, &other.terms))
    }

    pub fn nat_mul(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for (e, c) in self.terms.iter() {
            let row: Vec<_> = other
                .terms
                .iter()
                .map(|(f, d)| (e.nat_add(f), terms::coef_mul(*c, *d)))
                .collect();
            let row = row
                .into_iter()
                .fold(Vec::new(), |acc, t| terms::nat_add(&acc, &[t]));
            out = terms::nat_add(&out, &row);
        }
        Self::from_vec(out)
    }

    /// `(-self) + b`: the unique `γ` with `self + γ = b`.
    pub fn left_subtract(&self, b: &Self) -> Result<Self> {
        terms::left_subtract(&self.terms, &b.terms)
            .map(Self::from_vec)
            .ok_or_else(|| Error::NegativeDifference {
                a: self.to_string(),
                b: b.to_string(),
            })
    }

    /// Euclidean division `self = d·q + r` with `r < d`.
    pub fn euclid_div(&self, d: &Self) -> Result<(Self, Self)> {
        let Some((delta, c)) = d.terms.first() else {
            return Err(Error::DivisionByZero);
        };
        let mut q = Vec::new();
        let mut low = Vec::new();
        for (e, k) in self.terms.iter() {
            if e > delta {
                let x = delta.left_subtract(e).expect("exponent order");
                q.push((x, *k));
            } else {
                low.push((e.clone(), *k));
            }
        }
        let low = Self::from_vec(low);
        let a_delta = low
            .terms
            .first()
            .filter(|(e, _)| e == delta)
            .map_or(0, |t| t.1);
        let mut m = a_delta / c;
        if m > 0 && d.mul(&Self::from(m)) > low {
            m -= 1;
        }
        let q = Self::from_vec(q).add(&Self::from(m));
        let r = d.mul(&q).left_subtract(self)?;
        Ok((q, r))
    }

    pub fn is_indecomposable(&self) -> bool {
        terms::is_indecomposable(&self.terms)
    }

    /// The underlined natural sum `sup⁺{a' ⊕ b' : a' < self, b' < b}`.
    pub fn ul_nat_add(&self, b: &Self) -> Self {
        Self::from_vec(terms::nat_sup_plus(&[&self.terms, &b.terms], &[]))
    }

    /// `sup⁺{a1' ⊕ … ⊕ an' ⊕ fixed : ai' < ai}` over the underlined arguments.
    pub fn nat_sup_plus(underlined: &[&CnfOrdinal], fixed: &CnfOrdinal) -> Self {
        let lists: Vec<&[Term<CnfOrdinal>]> = underlined.iter().map(|a| &*a.terms).collect();
        Self::from_vec(terms::nat_sup_plus(&lists, &fixed.terms))
    }

    /// The `n`-th element of the canonical fundamental sequence of a limit.
    ///
    /// For `γ + ω^(e+1)` it is `γ + ω^e·n`; for `γ + ω^e` with `e` a limit it
    /// is `γ + ω^(e[n])`.
    pub fn fund_seq(&self, n: u64) -> Result<Self> {
        let Some(e) = self.last_exponent().filter(|e| !e.is_zero()) else {
            return Err(Error::NotALimit(self.to_string()));
        };
        let gamma = self.drop_last_unit();
        let tail = match e.pred() {
            Some(p) => Self::monomial(p, n),
            None => Self::omega_pow(e.fund_seq(n)?),
        };
        Ok(gamma.add(&tail))
    }
}

impl From<u64> for CnfOrdinal {
    fn from(n: u64) -> Self {
        Self::monomial(Self::zero(), n)
    }
}

impl Ord for CnfOrdinal {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.terms, &other.terms) {
            return Ordering::Equal;
        }
        terms::cmp(&self.terms, &other.terms)
    }
}

impl PartialOrd for CnfOrdinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CnfOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::syntax::render_ordinal(self))
    }
}

impl fmt::Debug for CnfOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CnfOrdinal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::syntax::parse_ordinal(s)
    }
}

impl Serialize for CnfOrdinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CnfOrdinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
