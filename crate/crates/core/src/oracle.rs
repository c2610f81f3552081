//! Brute-force reference implementations, independent of the term-list
//! arithmetic they check.
//!
//! Ordinals are handled here as sequences of unit terms `ω^e`: `ω^2·2 + 3`
//! is the sequence `[2, 2, 0, 0, 0]` of exponents.

use std::collections::HashMap;

use itertools::Itertools;

use crate::bound_ops::BoundOp;
use crate::ordinal::{CnfOrdinal, KOrdinal};

pub fn units(a: &CnfOrdinal) -> Vec<CnfOrdinal> {
    a.terms()
        .iter()
        .flat_map(|(e, c)| std::iter::repeat_n(e.clone(), *c as usize))
        .collect()
}

/// Ordinal sum of a sequence of unit terms: each new `ω^e` swallows every
/// smaller unit still on the stack.
pub fn sum_units(seq: &[CnfOrdinal]) -> CnfOrdinal {
    let mut stack: Vec<&CnfOrdinal> = Vec::new();
    for e in seq {
        while stack.last().is_some_and(|x| *x < e) {
            stack.pop();
        }
        stack.push(e);
    }
    let terms = stack
        .into_iter()
        .chunk_by(|e| (*e).clone())
        .into_iter()
        .map(|(e, g)| (e, g.count() as u64))
        .collect();
    CnfOrdinal::from_terms(terms).expect("stack is non-increasing")
}

pub fn add(a: &CnfOrdinal, b: &CnfOrdinal) -> CnfOrdinal {
    let mut seq = units(a);
    seq.extend(units(b));
    sum_units(&seq)
}

/// `a·b` by left distributivity over the unit terms of `b`:
/// `a·1 = a` and `a·ω^f = ω^(lead(a)+f)` for `f > 0`.
pub fn mul(a: &CnfOrdinal, b: &CnfOrdinal) -> CnfOrdinal {
    let Some(lead) = a.leading_exponent() else {
        return CnfOrdinal::zero();
    };
    let mut seq = Vec::new();
    for f in units(b) {
        if f.is_zero() {
            seq.extend(units(a));
        } else {
            seq.push(add(lead, &f));
        }
    }
    sum_units(&seq)
}

/// The natural sum as the largest ordinal sum over all interleavings of the
/// two unit sequences. Exponents are compared with the derived order only.
pub fn nat_add(a: &CnfOrdinal, b: &CnfOrdinal) -> CnfOrdinal {
    let x = units(a);
    let y = units(b);
    // best[(i, j)] = max over interleavings of x[i..] and y[j..]
    let mut best: HashMap<(usize, usize), CnfOrdinal> = HashMap::new();
    for i in (0..=x.len()).rev() {
        for j in (0..=y.len()).rev() {
            let v = if i == x.len() && j == y.len() {
                CnfOrdinal::zero()
            } else {
                let mut opts = Vec::new();
                if i < x.len() {
                    let mut s = vec![x[i].clone()];
                    s.extend(units(&best[&(i + 1, j)]));
                    opts.push(sum_units(&s));
                }
                if j < y.len() {
                    let mut s = vec![y[j].clone()];
                    s.extend(units(&best[&(i, j + 1)]));
                    opts.push(sum_units(&s));
                }
                opts.into_iter().max().unwrap()
            };
            best.insert((i, j), v);
        }
    }
    best.remove(&(0, 0)).unwrap()
}

/// The natural product as the natural sum of `ω^(e ⊕ f)` over all pairs of
/// unit terms. A natural sum of powers is their ordinal sum taken in
/// non-increasing order, so the pairs are sorted rather than folded.
pub fn nat_mul(a: &CnfOrdinal, b: &CnfOrdinal) -> CnfOrdinal {
    let (x, y) = (units(a), units(b));
    let mut seq: Vec<CnfOrdinal> = x
        .iter()
        .flat_map(|e| y.iter().map(move |f| nat_add(e, f)))
        .collect();
    seq.sort_unstable_by(|p, q| q.cmp(p));
    sum_units(&seq)
}

/// [`nat_mul`] folded pair by pair through the interleaving oracle; slow,
/// kept to cross-check the sorted form.
pub fn nat_mul_folded(a: &CnfOrdinal, b: &CnfOrdinal) -> CnfOrdinal {
    let mut acc = CnfOrdinal::zero();
    for e in units(a) {
        for f in units(b) {
            acc = nat_add(&acc, &CnfOrdinal::omega_pow(nat_add(&e, &f)));
        }
    }
    acc
}

/// Every ordinal `ω^(k-1)·c_(k-1) + … + c_0` with `c_i ≤ cmax`, in
/// increasing order (counting in base `cmax + 1`, most significant digit first).
pub fn enumerate_below_power(k: u32, cmax: u64) -> Vec<CnfOrdinal> {
    (0..k)
        .map(|_| 0..=cmax)
        .multi_cartesian_product()
        .map(|digits| {
            let terms = digits
                .iter()
                .enumerate()
                .filter(|(_, c)| **c > 0)
                .map(|(i, c)| (CnfOrdinal::from((k - 1) as u64 - i as u64), *c))
                .collect();
            CnfOrdinal::from_terms(terms).unwrap()
        })
        .collect()
}

/// A finite set of ordinals below `a`: the last few predecessors and, below
/// the limit reached, the first elements of its canonical sequence.
pub fn sample_below(a: &KOrdinal, depth: u64) -> Vec<KOrdinal> {
    let mut out = Vec::new();
    let mut x = a.clone();
    for _ in 0..3 {
        match x.pred() {
            Some(p) => {
                out.push(p.clone());
                x = p;
            }
            None => break,
        }
    }
    if x.is_limit() {
        out.extend((0..=depth).map(|n| x.approx_below(n).expect("limit")));
    }
    out
}

/// Checks a claimed `sup{f(a') : a'_i < a_i}` against sampled tuples: no
/// sample may exceed it, and it must either be attained or be a limit that
/// the samples reach up to its `depth`-th canonical approximation.
///
/// Samples go two steps deeper than the target. Each argument also draws
/// from the other arguments, their samples and the probes `ω_l·ω^n` of every
/// smaller cardinal, wherever those lie below it.
pub fn check_sup_below(
    f: &BoundOp,
    args: &[KOrdinal],
    claimed: &KOrdinal,
    depth: u64,
) -> Result<(), String> {
    let deep = depth + 2;
    let own: Vec<Vec<KOrdinal>> = args.iter().map(|a| sample_below(a, deep)).collect();
    let top = args.iter().map(KOrdinal::level).max().unwrap_or(0);
    let probes = (1..=top).flat_map(|l| {
        (0..=deep).map(move |n| KOrdinal::omega_k(l).approx_below(n).expect("a limit"))
    });
    let shared: Vec<KOrdinal> = own
        .iter()
        .flatten()
        .chain(args)
        .cloned()
        .chain(probes)
        .collect();
    let pools: Vec<Vec<KOrdinal>> = args
        .iter()
        .zip(own)
        .map(|(a, mut pool)| {
            pool.extend(shared.iter().filter(|x| *x < a).cloned());
            pool.sort();
            pool.dedup();
            pool
        })
        .collect();
    let mut best: Option<KOrdinal> = None;
    for tuple in pools
        .iter()
        .map(|p| p.iter().cloned())
        .multi_cartesian_product()
    {
        let v = f.eval(&tuple).map_err(|e| e.to_string())?;
        if v > *claimed {
            return Err(format!("{}({tuple:?}) = {v} exceeds {claimed}", f.name()));
        }
        if best.as_ref().is_none_or(|b| v > *b) {
            best = Some(v);
        }
    }
    let best = best.unwrap_or_else(KOrdinal::zero);
    if best == *claimed {
        return Ok(());
    }
    let target = claimed.approx_below(depth).map_err(|_| {
        format!("{claimed} is not attained by any sample and is not a limit (best {best})")
    })?;
    if best >= target {
        Ok(())
    } else {
        Err(format!(
            "samples reach only {best}, below {target} on the way to {claimed}"
        ))
    }
}

/// Sampled check of `ul_nat_add`: a strict bound for every sampled
/// `a' ⊕ b'`, at most `a ⊕ b`, and attained or approached like
/// [`check_sup_below`].
pub fn check_ul_nat_add(a: &CnfOrdinal, b: &CnfOrdinal, depth: u64) -> Result<(), String> {
    let claimed: KOrdinal = a.ul_nat_add(b).into();
    if claimed > KOrdinal::from(a.nat_add(b)) {
        return Err(format!("{a} ul+ {b} = {claimed} exceeds the natural sum"));
    }
    let xs = sample_below(&a.clone().into(), depth);
    let ys = sample_below(&b.clone().into(), depth);
    let mut best = KOrdinal::zero();
    for x in &xs {
        for y in &ys {
            let s = x.nat_add(y).succ();
            if s > claimed {
                return Err(format!("{x} (+) {y} is not below {claimed}"));
            }
            best = best.max(s);
        }
    }
    if best == claimed {
        return Ok(());
    }
    match claimed.approx_below(depth) {
        Ok(t) if best >= t => Ok(()),
        _ => Err(format!("samples reach only {best} towards {claimed}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bound_ops::{theta_plus_op, theta_tilde};

    fn o(s: &str) -> CnfOrdinal {
        s.parse().unwrap()
    }

    #[test]
    fn unit_arithmetic() {
        assert_eq!(add(&o("w*2+3"), &o("w+5")), o("w*3+5"));
        assert_eq!(mul(&o("w+1"), &o("2")), o("w*2+1"));
        assert_eq!(mul(&o("w"), &o("w+1")), o("w^2+w"));
        assert_eq!(nat_add(&o("w+1"), &o("w")), o("w*2+1"));
        assert_eq!(nat_mul(&o("w+1"), &o("w+1")), o("w^2+w*2+1"));
        for (a, b) in [
            ("w^2+3", "w*2+1"),
            ("w^w+w", "w^3+w^2"),
            ("2", "w+5"),
            ("0", "w"),
        ] {
            assert_eq!(
                nat_mul(&o(a), &o(b)),
                nat_mul_folded(&o(a), &o(b)),
                "{a} (x) {b}"
            );
        }
    }

    #[test]
    fn enumeration_is_increasing() {
        let all = enumerate_below_power(3, 2);
        assert_eq!(all.len(), 27);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let i = |s: &str| all.iter().position(|x| *x == o(s)).unwrap();
        assert!(i("w^2") > i("w*2+2"));
    }

    #[test]
    fn sampled_sups() {
        let plus = theta_plus_op();
        for args in [
            ["w", "w"],
            ["w+1", "w+1"],
            ["w^2", "w*3"],
            ["W1*(2)+(0)", "W1*(1)+(w)"],
            ["w+1", "W1"],
        ] {
            let args: Vec<KOrdinal> = args.iter().map(|s| s.parse().unwrap()).collect();
            let claimed = theta_tilde(&args).unwrap();
            check_sup_below(&plus, &args, &claimed, 4).unwrap();
        }
        for (a, b) in [("w", "w"), ("w+1", "w+1"), ("w^2+w", "w*3"), ("7", "w^w")] {
            check_ul_nat_add(&o(a), &o(b), 4).unwrap();
        }
    }
}
