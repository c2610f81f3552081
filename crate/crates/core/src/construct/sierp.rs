use std::sync::Arc;

use super::enumeration::enum_below;
use super::lazy::{Certificate, LazyPoset, Realizer};
use crate::error::{Error, Result};
use crate::ordinal::CnfOrdinal;

/// The sierpinskisation of a countably infinite `alpha`: the naturals ordered
/// by `x ≤ y` numerically and `φ(x) ≤ φ(y)` in `alpha`, where `φ` is the
/// canonical enumeration of `{β < alpha}`.
pub fn sierpinskisation(alpha: &CnfOrdinal) -> Result<LazyPoset> {
    if alpha.is_finite() {
        return Err(Error::BadOrdinal {
            expected: "a countably infinite ordinal",
            got: alpha.to_string(),
        });
    }
    let phi = enum_below(alpha)?;
    let vertex = Arc::new(move |n: u64| {
        vec![
            CnfOrdinal::from(n),
            phi.get(n).expect("infinite enumeration"),
        ]
    });
    let lt = Arc::new(|x: &[CnfOrdinal], y: &[CnfOrdinal]| x[0] < y[0] && x[1] < y[1]);
    let realizer = Realizer::ranked(
        Arc::new(|x: &[CnfOrdinal]| x[0].clone()),
        Arc::new(|x: &[CnfOrdinal]| x[1].clone()),
        CnfOrdinal::omega(),
        alpha.clone(),
    );
    Ok(LazyPoset::new("sierpinskisation", None, vertex, lt)
        .with_param("alpha", alpha)
        .with_realizer(realizer)
        .with_certificate(Certificate::new(
            alpha.clone(),
            format!("intersection of orders of types w and {alpha} has length {alpha}"),
        )))
}

/// A chain on `0..n` realized by two copies of the same order.
pub fn aligned_chain(n: u64) -> LazyPoset {
    let rank = Arc::new(|x: &[CnfOrdinal]| x[0].clone());
    let t = CnfOrdinal::from(n);
    LazyPoset::new(
        "chain",
        Some(n),
        Arc::new(|i: u64| vec![CnfOrdinal::from(i)]),
        Arc::new(|x: &[CnfOrdinal], y: &[CnfOrdinal]| x[0] < y[0]),
    )
    .with_param("n", n)
    .with_realizer(Realizer::ranked(rank.clone(), rank, t.clone(), t.clone()))
    .with_certificate(Certificate::new(t, format!("chain of {n} elements")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_two_prefix() {
        let p = sierpinskisation(&"w*2".parse().unwrap()).unwrap().prefix(6);
        let expected = vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 3),
            (1, 5),
            (2, 3),
            (2, 4),
            (2, 5),
            (3, 5),
            (4, 5),
        ];
        assert_eq!(p.poset().unwrap().pairs(), expected);
    }

    #[test]
    fn identity_case_is_a_chain() {
        let p = sierpinskisation(&CnfOrdinal::omega())
            .unwrap()
            .prefix(50)
            .poset()
            .unwrap();
        assert_eq!(p, crate::poset::FinPoset::chain(50));
        assert!(sierpinskisation(&CnfOrdinal::from(4)).is_err());
    }
}
