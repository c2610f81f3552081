use std::sync::Arc;

use super::enumeration::{enum_below, split, split_index, Size};
use super::lazy::{Certificate, LazyPoset, MixingInfo, Realizer};
use crate::error::{Error, Result};
use crate::ordinal::CnfOrdinal;

/// The partitions `(K_a)` and `(K^b)` of `K = ℕ` behind a mixing relation.
///
/// A natural `k` is read as a code `⟨u, v, w⟩ ∈ I_A × I_B × ℕ` through two
/// nested pairings; `k ∈ K_a` when `u` is the index of `a` and `k ∈ K^b` when
/// `v` is the index of `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MixingCode {
    pub size_a: Size,
    pub size_b: Size,
}

impl MixingCode {
    pub fn decode(&self, k: u64) -> (u64, u64, u64) {
        let (u, r) = split(k, self.size_a, None);
        let (v, w) = split(r, self.size_b, None);
        (u, v, w)
    }

    pub fn encode(&self, u: u64, v: u64, w: u64) -> u64 {
        split_index(u, split_index(v, w, self.size_b, None), self.size_a, None)
    }

    /// The `i`-th element of `K_a` for the `u`-th `a`.
    pub fn nth_in_k_a(&self, u: u64, i: u64) -> u64 {
        split_index(u, i, self.size_a, None)
    }

    /// The `i`-th element of `K^b` for the `v`-th `b`.
    pub fn nth_in_k_b(&self, v: u64, i: u64) -> u64 {
        let (u, w) = split(i, self.size_a, None);
        self.encode(u, v, w)
    }
}

/// `ω·x`.
pub(crate) fn omega_times(x: &CnfOrdinal) -> CnfOrdinal {
    CnfOrdinal::omega().mul(x)
}

/// The poset `p↾R` for the mixing bi-functional relation
/// `R = {((k1, a), (k2, b)) : (k1, k2) ∈ G_a^b}` with `K = ℕ`, where `G_a^b`
/// sends the `i`-th element of `K^b` to the `i`-th element of `K_a`.
///
/// Vertex `n` decodes to `(u, v, i)`, the `i`-th pair of the section of the
/// `u`-th `a` and the `v`-th `b`; its coordinates are
/// `[k1, a, k2, b, u, v]`. The realizer is the pair of lexicographic orders
/// `ω·a + k1` and `ω·b + k2`.
pub fn mixing_poset(alpha: &CnfOrdinal, beta: &CnfOrdinal) -> Result<LazyPoset> {
    for x in [alpha, beta] {
        if x.is_zero() {
            return Err(Error::BadOrdinal {
                expected: "a nonzero countable ordinal",
                got: x.to_string(),
            });
        }
    }
    let (ea, eb) = (enum_below(alpha)?, enum_below(beta)?);
    let code = MixingCode {
        size_a: ea.size(),
        size_b: eb.size(),
    };
    let vertex = Arc::new(move |n: u64| {
        let (u, v, i) = code.decode(n);
        vec![
            CnfOrdinal::from(code.nth_in_k_b(v, i)),
            ea.get(u).expect("index below alpha"),
            CnfOrdinal::from(code.nth_in_k_a(u, i)),
            eb.get(v).expect("index below beta"),
            CnfOrdinal::from(u),
            CnfOrdinal::from(v),
        ]
    });
    let left = |x: &[CnfOrdinal]| omega_times(&x[1]).add(&x[0]);
    let right = |x: &[CnfOrdinal]| omega_times(&x[3]).add(&x[2]);
    let lt = Arc::new(move |x: &[CnfOrdinal], y: &[CnfOrdinal]| {
        let below = |a: &CnfOrdinal, k: &CnfOrdinal, b: &CnfOrdinal, l: &CnfOrdinal| {
            a < b || (a == b && k < l)
        };
        below(&x[1], &x[0], &y[1], &y[0]) && below(&x[3], &x[2], &y[3], &y[2])
    });
    let certificate = Certificate {
        value: omega_times(&alpha.nat_mul(beta)),
        derivation: vec![
            format!(
                "projection ((k1,a),(k2,b)) -> (k1,(a,b)) is increasing into w.({alpha} x {beta})"
            ),
            format!("l(w.({alpha} x {beta})) >= w.({alpha} (x) {beta})"),
        ],
    };
    let mut p = LazyPoset::new("mixing", None, vertex, lt)
        .with_param("alpha", alpha)
        .with_param("beta", beta)
        .with_realizer(Realizer::ranked(
            Arc::new(left),
            Arc::new(right),
            omega_times(alpha),
            omega_times(beta),
        ))
        .with_certificate(certificate);
    p.mixing = Some(MixingInfo {
        path: Vec::new(),
        size_a: code.size_a,
        size_b: code.size_b,
    });
    Ok(p)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::poset::FinPoset;

    #[test]
    fn code_partitions() {
        for (sa, sb) in [
            (Some(1), Some(1)),
            (Some(2), Some(3)),
            (None, Some(2)),
            (None, None),
        ] {
            let c = MixingCode {
                size_a: sa,
                size_b: sb,
            };
            let mut seen = HashSet::new();
            for u in 0..sa.unwrap_or(3) {
                for v in 0..sb.unwrap_or(3) {
                    for i in 0..20 {
                        let k1 = c.nth_in_k_b(v, i);
                        let k2 = c.nth_in_k_a(u, i);
                        assert_eq!(c.decode(k1).1, v);
                        assert_eq!(c.decode(k2).0, u);
                        assert!(seen.insert((u, k1)));
                    }
                }
            }
            for k in 0..200 {
                let (u, v, w) = c.decode(k);
                assert_eq!(c.encode(u, v, w), k);
            }
        }
    }

    #[test]
    fn singleton_indices_give_a_chain() {
        let p = mixing_poset(&CnfOrdinal::one(), &CnfOrdinal::one()).unwrap();
        assert_eq!(p.prefix(40).poset().unwrap(), FinPoset::chain(40));
        assert_eq!(p.certificate().unwrap().value, CnfOrdinal::omega());
    }
}
