//! Term-list arithmetic shared by [`CnfOrdinal`](super::CnfOrdinal) and
//! [`KOrdinal`](super::KOrdinal).
//!
//! A term list `[(e1, c1), …, (ek, ck)]` denotes `ω^e1·c1 + … + ω^ek·ck`
//! with strictly decreasing exponents and positive coefficients. Nothing here
//! needs more of the exponent type than a total order and a zero.

use std::cmp::Ordering;

pub(crate) trait Exponent: Ord + Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
}

pub(crate) type Term<E> = (E, u64);

pub(crate) fn coef_add(a: u64, b: u64) -> u64 {
    a.checked_add(b).expect("ordinal coefficient overflow")
}

pub(crate) fn coef_mul(a: u64, b: u64) -> u64 {
    a.checked_mul(b).expect("ordinal coefficient overflow")
}

pub(crate) fn is_canonical<E: Exponent>(t: &[Term<E>]) -> bool {
    t.iter().all(|(_, c)| *c > 0) && t.windows(2).all(|w| w[0].0 > w[1].0)
}

pub(crate) fn cmp<E: Exponent>(a: &[Term<E>], b: &[Term<E>]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.0.cmp(&y.0).then(x.1.cmp(&y.1));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// Ordinal sum: terms of `a` below the leading exponent of `b` are absorbed.
pub(crate) fn add<E: Exponent>(a: &[Term<E>], b: &[Term<E>]) -> Vec<Term<E>> {
    let Some((lead, lead_c)) = b.first() else {
        return a.to_vec();
    };
    let mut out: Vec<Term<E>> = a.iter().take_while(|(e, _)| e > lead).cloned().collect();
    let same = a.iter().find(|(e, _)| e == lead).map_or(0, |t| t.1);
    out.push((lead.clone(), coef_add(*lead_c, same)));
    out.extend(b[1..].iter().cloned());
    out
}

/// Hessenberg sum: merge the term lists, adding coefficients of equal exponents.
pub(crate) fn nat_add<E: Exponent>(a: &[Term<E>], b: &[Term<E>]) -> Vec<Term<E>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0.clone(), coef_add(a[i].1, b[j].1)));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().cloned());
    out
}

pub(crate) fn one<E: Exponent>() -> Vec<Term<E>> {
    vec![(E::zero(), 1)]
}

pub(crate) fn power<E: Exponent>(e: E) -> Vec<Term<E>> {
    vec![(e, 1)]
}

pub(crate) fn succ<E: Exponent>(a: &[Term<E>]) -> Vec<Term<E>> {
    add(a, &one())
}

pub(crate) fn is_successor<E: Exponent>(a: &[Term<E>]) -> bool {
    a.last().is_some_and(|(e, _)| e.is_zero())
}

pub(crate) fn is_limit<E: Exponent>(a: &[Term<E>]) -> bool {
    a.last().is_some_and(|(e, _)| !e.is_zero())
}

/// Drop one copy of the last term. For a successor this is the predecessor;
/// for a limit `γ + ω^e` it is `γ`.
pub(crate) fn drop_last_unit<E: Exponent>(a: &[Term<E>]) -> Vec<Term<E>> {
    let mut out = a.to_vec();
    if let Some(last) = out.last_mut() {
        last.1 -= 1;
        if last.1 == 0 {
            out.pop();
        }
    }
    out
}

/// Terms whose exponent is at least `e`.
pub(crate) fn high<E: Exponent>(a: &[Term<E>], e: &E) -> Vec<Term<E>> {
    a.iter().take_while(|(x, _)| x >= e).cloned().collect()
}

/// `(-a) + b`, or `None` when `a > b`.
pub(crate) fn left_subtract<E: Exponent>(a: &[Term<E>], b: &[Term<E>]) -> Option<Vec<Term<E>>> {
    if cmp(a, b) == Ordering::Greater {
        return None;
    }
    let i = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    if i == a.len() || a[i].0 < b[i].0 {
        return Some(b[i..].to_vec());
    }
    // same exponent, a's coefficient is smaller
    let mut out = vec![(b[i].0.clone(), b[i].1 - a[i].1)];
    out.extend(b[i + 1..].iter().cloned());
    Some(out)
}

pub(crate) fn is_indecomposable<E: Exponent>(a: &[Term<E>]) -> bool {
    a.is_empty() || (a.len() == 1 && a[0].1 == 1)
}

/// `sup⁺{ a1' ⊕ … ⊕ an' ⊕ fixed : ai' < ai }`.
///
/// Successor arguments contribute their predecessor. A limit argument
/// `γ + ω^e` ranges cofinally over `γ ⊕ z` with `z < ω^e`; the varying parts
/// then sweep out everything below `ω^E`, `E` the largest such `e`, so the
/// terms of the constant part below `ω^E` are swallowed.
pub(crate) fn nat_sup_plus<E: Exponent>(
    underlined: &[&[Term<E>]],
    fixed: &[Term<E>],
) -> Vec<Term<E>> {
    if underlined.iter().any(|a| a.is_empty()) {
        return Vec::new();
    }
    let mut base = fixed.to_vec();
    let mut top: Option<E> = None;
    for a in underlined {
        base = nat_add(&base, &drop_last_unit(a));
        if is_limit(a) {
            let e = a.last().unwrap().0.clone();
            if top.as_ref().is_none_or(|t| e > *t) {
                top = Some(e);
            }
        }
    }
    match top {
        None => succ(&base),
        Some(e) => nat_add(&high(&base, &e), &power(e)),
    }
}
