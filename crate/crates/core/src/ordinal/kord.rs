use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cnf::CnfOrdinal;
use super::terms::{self, Exponent, Term};
use crate::error::{Error, Result};

/// Exponent of a [`KOrdinal`] term: `ω^(k, e)` stands for `ω_k · ω^e` when
/// `k ≥ 1` and for the countable power `ω^e` when `k = 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct KExp {
    level: u8,
    exp: CnfOrdinal,
}

impl Exponent for KExp {
    fn zero() -> Self {
        KExp {
            level: 0,
            exp: CnfOrdinal::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.level == 0 && self.exp.is_zero()
    }
}

/// An ordinal below `ω_10`, written relative to the tower `ω = ω_0 < ω_1 < … < ω_9`.
///
/// The value is a Cantor normal form whose exponents are either countable
/// ordinals `e` or `ω_k + e`; seen at its own level `k` it reads
/// `ω_k · q + r` with `r < ω_k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KOrdinal {
    terms: Vec<Term<KExp>>,
}

impl KOrdinal {
    pub const MAX_LEVEL: u8 = 9;

    fn from_vec(terms: Vec<Term<KExp>>) -> Self {
        debug_assert!(terms::is_canonical(&terms));
        KOrdinal { terms }
    }

    pub fn zero() -> Self {
        KOrdinal { terms: Vec::new() }
    }

    /// The initial ordinal `ω_k`.
    pub fn omega_k(k: u8) -> Self {
        assert!(k <= Self::MAX_LEVEL, "cardinal level {k} out of range");
        if k == 0 {
            CnfOrdinal::omega().into()
        } else {
            Self::from_vec(vec![(
                KExp {
                    level: k,
                    exp: CnfOrdinal::zero(),
                },
                1,
            )])
        }
    }

    /// `ω_k · q`.
    pub fn cardinal_times(k: u8, q: &CnfOrdinal) -> Self {
        assert!(k <= Self::MAX_LEVEL, "cardinal level {k} out of range");
        if k == 0 {
            return CnfOrdinal::omega().mul(q).into();
        }
        Self::from_vec(
            q.terms()
                .iter()
                .map(|(e, c)| {
                    (
                        KExp {
                            level: k,
                            exp: e.clone(),
                        },
                        *c,
                    )
                })
                .collect(),
        )
    }

    /// `ω_level · q + r`, which requires `r < ω_level` (`r` finite at level 0).
    pub fn from_parts(level: u8, q: &CnfOrdinal, r: &KOrdinal) -> Result<Self> {
        if level > Self::MAX_LEVEL {
            return Err(Error::LevelOverflow {
                level: level as usize,
                max: Self::MAX_LEVEL,
            });
        }
        if *r >= Self::omega_k(level) {
            return Err(Error::Precondition(format!(
                "remainder {r} is not below W{level}"
            )));
        }
        Ok(Self::cardinal_times(level, q).add(r))
    }

    pub fn as_countable(&self) -> Option<CnfOrdinal> {
        self.terms
            .iter()
            .map(|(k, c)| (k.level == 0).then(|| (k.exp.clone(), *c)))
            .collect::<Option<Vec<_>>>()
            .map(CnfOrdinal::from_vec)
    }

    pub fn is_countable(&self) -> bool {
        self.terms.first().is_none_or(|(k, _)| k.level == 0)
    }

    pub fn as_finite(&self) -> Option<u64> {
        self.as_countable().and_then(|c| c.as_finite())
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The level `k` of the canonical presentation `ω_k·q + r`: the level of the
    /// leading term, `0` for countable values.
    pub fn level(&self) -> u8 {
        self.terms.first().map_or(0, |(k, _)| k.level)
    }

    /// Quotient by `ω_level`.
    pub fn quotient(&self) -> CnfOrdinal {
        match self.as_countable() {
            Some(c) => {
                c.euclid_div(&CnfOrdinal::omega())
                    .expect("nonzero divisor")
                    .0
            }
            None => {
                let l = self.level();
                CnfOrdinal::from_vec(
                    self.terms
                        .iter()
                        .take_while(|(k, _)| k.level == l)
                        .map(|(k, c)| (k.exp.clone(), *c))
                        .collect(),
                )
            }
        }
    }

    /// Remainder modulo `ω_level`.
    pub fn remainder(&self) -> KOrdinal {
        match self.as_countable() {
            Some(c) => {
                let r = c
                    .euclid_div(&CnfOrdinal::omega())
                    .expect("nonzero divisor")
                    .1;
                r.into()
            }
            None => {
                let l = self.level();
                Self::from_vec(
                    self.terms
                        .iter()
                        .filter(|(k, _)| k.level < l)
                        .cloned()
                        .collect(),
                )
            }
        }
    }

    /// Euclidean division by `ω_k`, valid when `self < ω_(k+1)`.
    pub fn div_cardinal(&self, k: u8) -> Result<(CnfOrdinal, KOrdinal)> {
        if k < Self::MAX_LEVEL && *self >= Self::omega_k(k + 1) {
            return Err(Error::Precondition(format!(
                "{self} is too large for a quotient by W{k}"
            )));
        }
        if k == 0 {
            let c = self.as_countable().expect("countable");
            let (q, r) = c.euclid_div(&CnfOrdinal::omega())?;
            return Ok((q, r.into()));
        }
        let mut q = Vec::new();
        let mut r = Vec::new();
        for (e, c) in &self.terms {
            if e.level == k {
                q.push((e.exp.clone(), *c));
            } else {
                r.push((e.clone(), *c));
            }
        }
        Ok((CnfOrdinal::from_vec(q), Self::from_vec(r)))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_vec(terms::add(&self.terms, &other.terms))
    }

    pub fn nat_add(&self, other: &Self) -> Self {
        Self::from_vec(terms::nat_add(&self.terms, &other.terms))
    }

    pub fn ul_nat_add(&self, other: &Self) -> Self {
        Self::from_vec(terms::nat_sup_plus(&[&self.terms, &other.terms], &[]))
    }

    pub fn succ(&self) -> Self {
        Self::from_vec(terms::succ(&self.terms))
    }

    pub fn pred(&self) -> Option<Self> {
        self.is_successor()
            .then(|| Self::from_vec(terms::drop_last_unit(&self.terms)))
    }

    pub fn is_successor(&self) -> bool {
        terms::is_successor(&self.terms)
    }

    pub fn is_limit(&self) -> bool {
        terms::is_limit(&self.terms)
    }

    pub fn is_indecomposable(&self) -> bool {
        terms::is_indecomposable(&self.terms)
    }

    /// The `n`-th element of a canonical increasing sequence below a limit.
    ///
    /// For a limit of countable cofinality the sequence is cofinal. For
    /// `γ + ω_k` with `k ≥ 1` it is `γ + ω_(k-1)·ω^n`, which only probes the
    /// gap.
    pub fn approx_below(&self, n: u64) -> Result<Self> {
        let Some((KExp { level, exp }, _)) = self.terms.last().filter(|(e, _)| !e.is_zero()) else {
            return Err(Error::NotALimit(self.to_string()));
        };
        let gamma = Self::from_vec(terms::drop_last_unit(&self.terms));
        let step = if exp.is_zero() {
            Self::cardinal_times(level - 1, &CnfOrdinal::omega_pow(CnfOrdinal::from(n)))
        } else {
            let x = CnfOrdinal::omega_pow(exp.clone()).fund_seq(n)?;
            if *level == 0 {
                x.into()
            } else {
                Self::cardinal_times(*level, &x)
            }
        };
        Ok(gamma.add(&step))
    }

    /// `|self|` as an initial ordinal.
    pub fn cardinality(&self) -> Self {
        match self.as_countable() {
            Some(c) if c.is_finite() => self.clone(),
            _ => Self::omega_k(self.level()),
        }
    }

    pub fn is_initial(&self) -> bool {
        self.cardinality() == *self
    }

    pub fn equipotent(&self, other: &Self) -> bool {
        self.cardinality() == other.cardinality()
    }

    /// `|self|⁺`, the least initial ordinal strictly above `self`.
    pub fn hartog(&self) -> Result<Self> {
        if let Some(n) = self.as_finite() {
            return Ok(CnfOrdinal::from(n).succ().into());
        }
        let next = self.level() + 1;
        if next > Self::MAX_LEVEL {
            return Err(Error::LevelOverflow {
                level: next as usize,
                max: Self::MAX_LEVEL,
            });
        }
        Ok(Self::omega_k(next))
    }
}

impl From<CnfOrdinal> for KOrdinal {
    fn from(c: CnfOrdinal) -> Self {
        Self::from_vec(
            c.terms()
                .iter()
                .map(|(e, n)| {
                    (
                        KExp {
                            level: 0,
                            exp: e.clone(),
                        },
                        *n,
                    )
                })
                .collect(),
        )
    }
}

impl From<u64> for KOrdinal {
    fn from(n: u64) -> Self {
        CnfOrdinal::from(n).into()
    }
}

impl Ord for KOrdinal {
    fn cmp(&self, other: &Self) -> Ordering {
        terms::cmp(&self.terms, &other.terms)
    }
}

impl PartialOrd for KOrdinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::syntax::render_kordinal(self))
    }
}

impl fmt::Debug for KOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for KOrdinal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::syntax::parse_kordinal(s)
    }
}

impl Serialize for KOrdinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for KOrdinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(s: &str) -> KOrdinal {
        s.parse().unwrap()
    }

    #[test]
    fn tower_order() {
        for i in 0..KOrdinal::MAX_LEVEL {
            assert!(KOrdinal::omega_k(i) < KOrdinal::omega_k(i + 1));
        }
        assert!(k("w^(w^w)*9") < k("W1"));
        assert!(k("W1*(w)+(w^5)") < k("W1*(w+1)+(0)"));
        assert!(k("W1*(w)+(w^5)") > k("W1*(w)+(0)"));
    }

    #[test]
    fn cardinality_and_hartog() {
        assert_eq!(k("5").cardinality(), k("5"));
        assert_eq!(k("w^2+3").cardinality(), k("w"));
        assert_eq!(k("W1*(2)+(w)").cardinality(), k("W1"));
        assert_eq!(k("5").hartog().unwrap(), k("6"));
        assert_eq!(k("w+3").hartog().unwrap(), k("W1"));
        assert_eq!(k("W1*(2)+(w)").hartog().unwrap(), k("W2"));
        assert!(matches!(k("W9").hartog(), Err(Error::LevelOverflow { .. })));
        assert!(k("0").hartog().unwrap() == k("1"));
    }

    #[test]
    fn approximations_stay_below() {
        for s in [
            "w",
            "w^2+w",
            "W1",
            "W1*(w)+(0)",
            "W2*(3)+(W1)",
            "W1*(w^w)+(w^2)",
        ] {
            let v = k(s);
            let xs: Vec<_> = (0..5).map(|n| v.approx_below(n).unwrap()).collect();
            assert!(xs.windows(2).all(|w| w[0] < w[1]), "{s}");
            assert!(xs.iter().all(|x| *x < v), "{s}");
        }
        assert_eq!(k("W1*(w)+(0)").approx_below(3).unwrap(), k("W1*(3)+(0)"));
        assert_eq!(k("W2").approx_below(1).unwrap(), k("W1*(w)+(0)"));
        assert!(k("w+1").approx_below(0).is_err());
    }

    #[test]
    fn parts() {
        let a = k("W2*(w+1)+(W1*(3)+(w))");
        assert_eq!(a.level(), 2);
        assert_eq!(a.quotient().to_string(), "w+1");
        assert_eq!(a.remainder(), k("W1*(3)+(w)"));
        assert_eq!(
            KOrdinal::from_parts(2, &a.quotient(), &a.remainder()).unwrap(),
            a
        );
        let b = k("w^2+w*3+5");
        assert_eq!(b.level(), 0);
        assert_eq!(b.quotient().to_string(), "w+3");
        assert_eq!(b.remainder(), k("5"));
        assert!(KOrdinal::from_parts(0, &CnfOrdinal::one(), &k("w")).is_err());
        assert!(a.div_cardinal(1).is_err());
        assert_eq!(a.div_cardinal(2).unwrap(), (a.quotient(), a.remainder()));
    }

    #[test]
    fn sums_across_levels() {
        assert_eq!(k("w+5").add(&k("W1")), k("W1"));
        assert_eq!(k("W1").add(&k("w+5")).to_string(), "W1*(1)+(w+5)");
        assert_eq!(k("W1").nat_add(&k("W1")), k("W1*(2)+(0)"));
        assert_eq!(k("W1").ul_nat_add(&k("W1")), k("W1"));
        assert_eq!(k("W2").add(&k("W1")).to_string(), "W2*(1)+(W1*(1)+(0))");
    }
}
