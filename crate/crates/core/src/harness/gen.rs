//! Seeded generators for ordinals, cardinal-tower ordinals and posets.
//!
//! Every case draws from its own ChaCha stream, so a case's input depends
//! only on `(seed, case index)` and not on scheduling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ordinal::{CnfOrdinal, KOrdinal};
use crate::poset::{BitMatrix, FinPoset};

pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

/// Bounds on random Cantor normal forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrdShape {
    /// Nesting depth of exponents; depth 0 yields naturals.
    pub depth: u32,
    pub max_coeff: u64,
    pub max_terms: usize,
}

impl Default for OrdShape {
    fn default() -> Self {
        OrdShape {
            depth: 3,
            max_coeff: 9,
            max_terms: 4,
        }
    }
}

impl OrdShape {
    pub const SMALL: OrdShape = OrdShape {
        depth: 2,
        max_coeff: 3,
        max_terms: 3,
    };

    fn lower(self) -> Self {
        OrdShape {
            depth: self.depth.saturating_sub(1),
            max_terms: self.max_terms.min(3),
            ..self
        }
    }

    /// An ordinal, with extra weight on naturals, pure powers, successors and
    /// multiples of `ω`.
    pub fn ordinal(self, rng: &mut impl Rng) -> CnfOrdinal {
        if self.depth == 0 {
            return CnfOrdinal::from(rng.random_range(0..=self.max_coeff));
        }
        match rng.random_range(0..8) {
            0 => CnfOrdinal::from(rng.random_range(0..=self.max_coeff)),
            1 => CnfOrdinal::omega_pow(self.nonzero_exponent(rng)),
            2 => {
                let head = self.generic(rng);
                let limit = CnfOrdinal::from_terms(
                    head.terms()
                        .iter()
                        .filter(|(e, _)| !e.is_zero())
                        .take(self.max_terms - 1)
                        .cloned()
                        .collect(),
                )
                .expect("a subsequence of a normal form");
                limit.add(&CnfOrdinal::from(rng.random_range(1..=self.max_coeff)))
            }
            3 => {
                let x = self.generic(rng);
                let limit = x
                    .euclid_div(&CnfOrdinal::omega())
                    .expect("nonzero divisor")
                    .0;
                CnfOrdinal::omega().mul(&limit.max(CnfOrdinal::one()))
            }
            _ => self.generic(rng),
        }
    }

    /// An infinite ordinal.
    pub fn infinite(self, rng: &mut impl Rng) -> CnfOrdinal {
        let shape = OrdShape {
            depth: self.depth.max(1),
            ..self
        };
        loop {
            let x = shape.ordinal(rng);
            if !x.is_finite() {
                return x;
            }
        }
    }

    pub fn nonzero(self, rng: &mut impl Rng) -> CnfOrdinal {
        loop {
            let x = self.ordinal(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    fn nonzero_exponent(self, rng: &mut impl Rng) -> CnfOrdinal {
        let lower = self.lower();
        if lower.depth == 0 {
            return CnfOrdinal::from(rng.random_range(1..=4));
        }
        lower.nonzero(rng)
    }

    fn exponent(self, rng: &mut impl Rng) -> CnfOrdinal {
        let lower = self.lower();
        if lower.depth == 0 {
            CnfOrdinal::from(rng.random_range(0..=4))
        } else {
            lower.ordinal(rng)
        }
    }

    fn generic(self, rng: &mut impl Rng) -> CnfOrdinal {
        let k = rng.random_range(1..=self.max_terms);
        let mut exps: Vec<CnfOrdinal> = (0..k).map(|_| self.exponent(rng)).collect();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        exps.dedup();
        let terms = exps
            .into_iter()
            .map(|e| (e, rng.random_range(1..=self.max_coeff)))
            .collect();
        CnfOrdinal::from_terms(terms).expect("strictly decreasing exponents")
    }
}

pub fn ordinal(rng: &mut impl Rng) -> CnfOrdinal {
    OrdShape::default().ordinal(rng)
}

pub fn infinite_ordinal(rng: &mut impl Rng) -> CnfOrdinal {
    OrdShape::default().infinite(rng)
}

/// A level, mostly `0` or `1`.
pub fn level(rng: &mut impl Rng) -> u8 {
    match rng.random_range(0..10) {
        0..=4 => 0,
        5..=7 => 1,
        _ => rng.random_range(2..=KOrdinal::MAX_LEVEL),
    }
}

/// An infinite ordinal of cardinality exactly `ω_level`.
pub fn kordinal_at(rng: &mut impl Rng, level: u8) -> KOrdinal {
    let shape = OrdShape::SMALL;
    if level == 0 {
        return shape.infinite(rng).into();
    }
    let q = shape.nonzero(rng);
    let r = match rng.random_range(0..4) {
        0 => KOrdinal::zero(),
        1 => CnfOrdinal::from(rng.random_range(1..=shape.max_coeff)).into(),
        _ => {
            let lower = rng.random_range(0..level);
            kordinal_at(rng, lower)
        }
    };
    KOrdinal::from_parts(level, &q, &r).expect("remainder below the level")
}

pub fn kordinal(rng: &mut impl Rng) -> KOrdinal {
    if rng.random_range(0..8) == 0 {
        return CnfOrdinal::from(rng.random_range(0..=9)).into();
    }
    let l = level(rng);
    kordinal_at(rng, l)
}

/// `n` ordinals of one common cardinality; one time in eight they are the
/// same natural number.
pub fn equipotent_tuple(rng: &mut impl Rng, n: usize) -> Vec<KOrdinal> {
    if rng.random_range(0..8) == 0 {
        let k: KOrdinal = CnfOrdinal::from(rng.random_range(1..=9)).into();
        return vec![k; n];
    }
    let l = level(rng);
    (0..n).map(|_| kordinal_at(rng, l)).collect()
}

/// A random labeled poset: the transitive closure of a random subrelation of
/// a random linear order.
pub fn poset(rng: &mut impl Rng, n: usize) -> FinPoset {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let density = rng.random_range(0.0..=1.0);
    let mut m = BitMatrix::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                m.set(order[i], order[j]);
            }
        }
    }
    m.close_transitively();
    FinPoset::from_matrix(m).expect("closed subrelation of a linear order")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<CnfOrdinal> = (0..20).map(|i| ordinal(&mut case_rng(7, i))).collect();
        let b: Vec<CnfOrdinal> = (0..20).map(|i| ordinal(&mut case_rng(7, i))).collect();
        assert_eq!(a, b);
        assert_ne!(ordinal(&mut case_rng(7, 0)), ordinal(&mut case_rng(8, 0)));
    }

    #[test]
    fn shapes_are_respected() {
        let mut rng = case_rng(1, 0);
        let mut limits = 0;
        for _ in 0..500 {
            let x = ordinal(&mut rng);
            assert!(x.terms().len() <= 4);
            assert!(x.terms().iter().all(|(_, c)| *c <= 9));
            limits += usize::from(x.is_limit());
            assert!(!infinite_ordinal(&mut rng).is_finite());
            let t = equipotent_tuple(&mut rng, 3);
            assert!(t.windows(2).all(|w| w[0].equipotent(&w[1])));
            assert!(poset(&mut rng, 6).validate().is_ok());
        }
        assert!(limits > 50);
    }
}
