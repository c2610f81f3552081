//! Bijections between the naturals and countable sets of ordinals.
//!
//! `{β < α}` for `α = ω^e1·c1 + … + ω^ek·ck` is the disjoint union of the
//! pieces `ω^e1·c1 + … + ω^ei·j + γ` with `j < ci` and `γ < ω^ei`. Pieces are
//! visited round-robin, skipping exhausted ones. Inside a piece, `(j, γ)` is
//! decoded with [`split`], and `{γ < ω^e}` is decoded by recursion on `e`:
//! for `e = f + 1` as `ω^f·d + δ` with `δ < ω^f`, and for a limit `e` as `0`
//! followed by the values `ω^f·(d + 1) + δ` with `f < e` and `δ < ω^f`.

use crate::error::{Error, Result};
use crate::ordinal::CnfOrdinal;

/// Size of a countable set: `None` stands for `ℵ₀`.
pub type Size = Option<u64>;

/// The inverse of the Cantor pairing `(i, j) ↦ (i + j)(i + j + 1)/2 + j`.
pub fn cantor(n: u64) -> (u64, u64) {
    let w = ((8 * n as u128 + 1).isqrt() as u64 - 1) / 2;
    let j = n - w * (w + 1) / 2;
    (w - j, j)
}

pub fn cantor_index(i: u64, j: u64) -> u64 {
    let w = i + j;
    w * (w + 1) / 2 + j
}

/// A bijection from `0..|A|·|B|` onto `A × B` given by the two sizes.
///
/// Finite factors are read as digits (`n mod a`, or `n mod b` for a finite
/// right factor); two infinite factors use the Cantor pairing.
pub fn split(n: u64, a: Size, b: Size) -> (u64, u64) {
    match (a, b) {
        (_, Some(b)) => (n / b, n % b),
        (Some(a), None) => (n % a, n / a),
        (None, None) => cantor(n),
    }
}

pub fn split_index(i: u64, j: u64, a: Size, b: Size) -> u64 {
    match (a, b) {
        (_, Some(b)) => i * b + j,
        (Some(a), None) => j * a + i,
        (None, None) => cantor_index(i, j),
    }
}

/// Round-robin over parts of the given sizes: the `n`-th visit is
/// `(part, index within part)`. `None` when `n` exceeds the total size.
pub fn round_robin(mut n: u64, sizes: &[Size]) -> Option<(usize, u64)> {
    let mut round = 0u64;
    loop {
        let active: Vec<usize> = (0..sizes.len())
            .filter(|&p| sizes[p].is_none_or(|s| s > round))
            .collect();
        if active.is_empty() {
            return None;
        }
        let a = active.len() as u64;
        let next = active.iter().filter_map(|&p| sizes[p]).min();
        match next {
            Some(next) if n >= (next - round) * a => {
                n -= (next - round) * a;
                round = next;
            }
            _ => return Some((active[(n % a) as usize], round + n / a)),
        }
    }
}

pub fn round_robin_index(part: usize, idx: u64, sizes: &[Size]) -> u64 {
    let mut n = 0u64;
    let mut round = 0u64;
    loop {
        let active: Vec<usize> = (0..sizes.len())
            .filter(|&p| sizes[p].is_none_or(|s| s > round))
            .collect();
        let a = active.len() as u64;
        let next = active.iter().filter_map(|&p| sizes[p]).min();
        match next {
            Some(next) if idx >= next => {
                n += (next - round) * a;
                round = next;
            }
            _ => {
                let slot = active
                    .iter()
                    .position(|&p| p == part)
                    .expect("part is active") as u64;
                return n + (idx - round) * a + slot;
            }
        }
    }
}

pub fn size_below(alpha: &CnfOrdinal) -> Size {
    alpha.as_finite()
}

fn size_power(e: &CnfOrdinal) -> Size {
    if e.is_zero() {
        Some(1)
    } else {
        None
    }
}

/// The `n`-th element of the canonical enumeration of `{β < alpha}`.
pub fn below(alpha: &CnfOrdinal, n: u64) -> Result<CnfOrdinal> {
    if size_below(alpha).is_some_and(|s| n >= s) {
        return Err(Error::Precondition(format!(
            "index {n} is past the {alpha} elements below {alpha}"
        )));
    }
    let terms = alpha.terms();
    let sizes: Vec<Size> = terms
        .iter()
        .map(|(e, c)| if e.is_zero() { Some(*c) } else { None })
        .collect();
    let (part, idx) = round_robin(n, &sizes).expect("index in range");
    let (e, c) = &terms[part];
    let (j, g) = split(idx, Some(*c), size_power(e));
    let prefix = CnfOrdinal::from_terms(terms[..part].to_vec())?;
    Ok(prefix
        .add(&CnfOrdinal::monomial(e.clone(), j))
        .add(&power_below(e, g)))
}

/// The position of `beta` in the enumeration of `{β < alpha}`.
pub fn index_below(alpha: &CnfOrdinal, beta: &CnfOrdinal) -> Result<u64> {
    if beta >= alpha {
        return Err(Error::Precondition(format!("{beta} is not below {alpha}")));
    }
    let terms = alpha.terms();
    let sizes: Vec<Size> = terms
        .iter()
        .map(|(e, c)| if e.is_zero() { Some(*c) } else { None })
        .collect();
    let mut part = 0;
    let mut prefix = CnfOrdinal::zero();
    for i in 1..terms.len() {
        let p = CnfOrdinal::from_terms(terms[..i].to_vec())?;
        if p <= *beta {
            part = i;
            prefix = p;
        }
    }
    let (e, c) = &terms[part];
    let rest = prefix.left_subtract(beta)?;
    let (j, gamma) = rest.euclid_div(&CnfOrdinal::omega_pow(e.clone()))?;
    let j = j.as_finite().expect("quotient below the coefficient");
    let idx = split_index(j, power_index(e, &gamma), Some(*c), size_power(e));
    Ok(round_robin_index(part, idx, &sizes))
}

/// The `n`-th element of `{γ < ω^e}`.
fn power_below(e: &CnfOrdinal, n: u64) -> CnfOrdinal {
    if e.is_zero() {
        return CnfOrdinal::zero();
    }
    match e.pred() {
        Some(f) => {
            let (d, m) = split(n, None, size_power(&f));
            CnfOrdinal::monomial(f.clone(), d).add(&power_below(&f, m))
        }
        None if n == 0 => CnfOrdinal::zero(),
        None => {
            let (fi, r) = cantor(n - 1);
            let f = below(e, fi).expect("a limit has infinitely many elements below");
            let (d, m) = split(r, None, size_power(&f));
            CnfOrdinal::monomial(f.clone(), d + 1).add(&power_below(&f, m))
        }
    }
}

fn power_index(e: &CnfOrdinal, gamma: &CnfOrdinal) -> u64 {
    if e.is_zero() {
        return 0;
    }
    match e.pred() {
        Some(f) => {
            let (d, delta) = gamma
                .euclid_div(&CnfOrdinal::omega_pow(f.clone()))
                .expect("nonzero divisor");
            split_index(
                d.as_finite().expect("finite digit"),
                power_index(&f, &delta),
                None,
                size_power(&f),
            )
        }
        None => match gamma.terms().first() {
            None => 0,
            Some((f, d)) => {
                let delta = CnfOrdinal::from_terms(gamma.terms()[1..].to_vec())
                    .expect("tail of a normal form");
                let fi = index_below(e, f).expect("exponent below a limit");
                let r = split_index(d - 1, power_index(f, &delta), None, size_power(f));
                1 + cantor_index(fi, r)
            }
        },
    }
}

/// A bijection `ℕ → {β < alpha}` (onto `0..alpha` for finite `alpha`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinalEnum {
    alpha: CnfOrdinal,
}

impl OrdinalEnum {
    pub fn new(alpha: &CnfOrdinal) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::Precondition(
                "there is nothing to enumerate below 0".into(),
            ));
        }
        Ok(OrdinalEnum {
            alpha: alpha.clone(),
        })
    }

    pub fn alpha(&self) -> &CnfOrdinal {
        &self.alpha
    }

    pub fn size(&self) -> Size {
        size_below(&self.alpha)
    }

    pub fn get(&self, n: u64) -> Option<CnfOrdinal> {
        below(&self.alpha, n).ok()
    }

    pub fn index_of(&self, beta: &CnfOrdinal) -> Option<u64> {
        index_below(&self.alpha, beta).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = CnfOrdinal> + '_ {
        (0..).map_while(|n| self.get(n))
    }
}

/// Shorthand for [`OrdinalEnum::new`].
pub fn enum_below(alpha: &CnfOrdinal) -> Result<OrdinalEnum> {
    OrdinalEnum::new(alpha)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn o(s: &str) -> CnfOrdinal {
        s.parse().unwrap()
    }

    fn first(alpha: &str, k: usize) -> Vec<String> {
        enum_below(&o(alpha))
            .unwrap()
            .iter()
            .take(k)
            .map(|b| b.to_string())
            .collect()
    }

    #[test]
    fn documented_prefixes() {
        assert_eq!(first("5", 10), ["0", "1", "2", "3", "4"]);
        assert_eq!(first("w", 5), ["0", "1", "2", "3", "4"]);
        assert_eq!(first("w*2", 6), ["0", "w", "1", "w+1", "2", "w+2"]);
        assert!(enum_below(&CnfOrdinal::zero()).is_err());
    }

    #[test]
    fn pairings_invert() {
        for n in 0..500 {
            let (i, j) = cantor(n);
            assert_eq!(cantor_index(i, j), n);
            for (a, b) in [
                (Some(3), None),
                (None, Some(4)),
                (None, None),
                (Some(5), Some(7)),
            ] {
                if a.zip(b).is_some_and(|(a, b)| n >= a * b) {
                    continue;
                }
                let (i, j) = split(n, a, b);
                assert_eq!(split_index(i, j, a, b), n);
            }
            let sizes = [Some(2), None, Some(5), None];
            let (p, i) = round_robin(n, &sizes).unwrap();
            assert_eq!(round_robin_index(p, i, &sizes), n);
        }
        assert_eq!(round_robin(7, &[Some(3), Some(5)]), Some((1, 4)));
        assert_eq!(round_robin(8, &[Some(3), Some(5)]), None);
    }

    #[test]
    fn bijective_on_prefixes() {
        for alpha in [
            "7",
            "w+3",
            "w*2",
            "w^2+w*3+5",
            "w^3*2",
            "w^w",
            "w^(w+1)*2+w",
            "w^(w^w)",
        ] {
            let e = enum_below(&o(alpha)).unwrap();
            let mut seen = HashSet::new();
            for (n, b) in e.iter().take(400).enumerate() {
                assert!(b < o(alpha), "{b} >= {alpha}");
                assert!(seen.insert(b.clone()), "{b} repeated below {alpha}");
                assert_eq!(e.index_of(&b), Some(n as u64), "{b} below {alpha}");
            }
        }
    }

    #[test]
    fn surjective_on_small_ordinals() {
        let e = enum_below(&o("w^2+w*3+5")).unwrap();
        for b in ["0", "4", "w^2", "w^2+w*2+4", "w*7+1", "w^2+w+9"] {
            let i = e.index_of(&o(b)).unwrap();
            assert_eq!(e.get(i), Some(o(b)));
        }
        assert_eq!(e.index_of(&o("w^2+w*3+5")), None);
    }
}
