use std::sync::Arc;

use super::enumeration::{round_robin, Size};
use super::lazy::{Certificate, Comparator, Coords, LazyPoset, RankFn, Realizer};
use super::mixing::{mixing_poset, omega_times};
use super::sierp::{aligned_chain, sierpinskisation};
use crate::error::{Error, Result};
use crate::ordinal::CnfOrdinal;

pub(crate) fn ranks(p: &LazyPoset) -> Result<(Realizer, RankFn, RankFn)> {
    let r = p
        .realizer()
        .ok_or_else(|| Error::Precondition(format!("{} has no realizer", p.name())))?
        .clone();
    match (&r.left, &r.right) {
        (Comparator::Rank(a), Comparator::Rank(b)) => {
            let (a, b) = (a.clone(), b.clone());
            Ok((r, a, b))
        }
        _ => Err(Error::Precondition(format!(
            "{} has a realizer without ranks",
            p.name()
        ))),
    }
}

/// The direct sum `p1 ⊎ … ⊎ pn` realized by the lexicographic sums
/// `a1 + … + an` and `bn + … + b1` of the blocks' realizers.
///
/// Vertices are taken round-robin from the blocks and get the block index as
/// their first coordinate.
pub fn block_sum(blocks: Vec<LazyPoset>) -> Result<LazyPoset> {
    let blocks: Vec<LazyPoset> = blocks.into_iter().filter(|b| b.size() != Some(0)).collect();
    let mut lefts = Vec::new();
    let mut rights = Vec::new();
    let mut types_left = Vec::new();
    let mut types_right = Vec::new();
    for b in &blocks {
        let (r, left, right) = ranks(b)?;
        lefts.push(left);
        rights.push(right);
        types_left.push(r.type_left);
        types_right.push(r.type_right);
    }
    let k = blocks.len();
    let off_left: Vec<CnfOrdinal> = (0..k)
        .map(|i| {
            types_left[..i]
                .iter()
                .fold(CnfOrdinal::zero(), |acc, t| acc.add(t))
        })
        .collect();
    let off_right: Vec<CnfOrdinal> = (0..k)
        .map(|i| {
            types_right[i + 1..]
                .iter()
                .rev()
                .fold(CnfOrdinal::zero(), |acc, t| acc.add(t))
        })
        .collect();
    let type_left = types_left
        .iter()
        .fold(CnfOrdinal::zero(), |acc, t| acc.add(t));
    let type_right = types_right
        .iter()
        .rev()
        .fold(CnfOrdinal::zero(), |acc, t| acc.add(t));

    let sizes: Vec<Size> = blocks.iter().map(LazyPoset::size).collect();
    let total = sizes.iter().try_fold(0u64, |acc, s| s.map(|s| acc + s));
    let vertex_blocks = blocks.clone();
    let vertex = Arc::new(move |n: u64| {
        let (part, idx) = round_robin(n, &sizes).expect("vertex index in range");
        let mut c: Coords = vec![CnfOrdinal::from(part as u64)];
        c.extend(vertex_blocks[part].vertex(idx));
        c
    });
    let lt_blocks = blocks.clone();
    let lt = Arc::new(move |x: &[CnfOrdinal], y: &[CnfOrdinal]| {
        x[0] == y[0] && lt_blocks[block_of(x)].lt(&x[1..], &y[1..])
    });
    let left =
        Arc::new(move |x: &[CnfOrdinal]| off_left[block_of(x)].add(&lefts[block_of(x)](&x[1..])));
    let right =
        Arc::new(move |x: &[CnfOrdinal]| off_right[block_of(x)].add(&rights[block_of(x)](&x[1..])));

    let mut derivation = Vec::new();
    let mut value = CnfOrdinal::zero();
    for b in &blocks {
        let c = b.certificate().ok_or_else(|| {
            Error::Precondition(format!("block {} has no length certificate", b.name()))
        })?;
        value = value.nat_add(&c.value);
        derivation.push(format!("{}: {}", b.name(), c.value));
    }
    derivation.push(format!(
        "direct sum of the blocks has length {value} (natural sum)"
    ));

    let mixing = blocks
        .iter()
        .enumerate()
        .find_map(|(i, b)| b.mixing.as_ref().map(|m| m.nested(i as u64)));
    let mut p = LazyPoset::new("block_sum", total, vertex, lt)
        .with_realizer(Realizer::ranked(left, right, type_left, type_right))
        .with_certificate(Certificate { value, derivation });
    p.mixing = mixing;
    Ok(p)
}

fn block_of(x: &[CnfOrdinal]) -> usize {
    x[0].as_finite().expect("block index") as usize
}

fn swap(p: LazyPoset) -> LazyPoset {
    let r = p.realizer().map(Realizer::swapped);
    LazyPoset { realizer: r, ..p }
}

/// A witness block for an equipotent pair `(alpha, beta)`: an aligned chain
/// for finite values, a sierpinskisation when either side is `ω`, a mixing
/// relation for two multiples of `ω`, and a minoration witness otherwise.
pub fn witness_block(alpha: &CnfOrdinal, beta: &CnfOrdinal) -> Result<LazyPoset> {
    match (alpha.as_finite(), beta.as_finite()) {
        (Some(a), Some(b)) if a == b => Ok(aligned_chain(a)),
        (None, None) => {
            let w = CnfOrdinal::omega();
            if *alpha == w {
                sierpinskisation(beta)
            } else if *beta == w {
                Ok(swap(sierpinskisation(alpha)?))
            } else {
                let (qa, ra) = alpha.euclid_div(&w)?;
                let (qb, rb) = beta.euclid_div(&w)?;
                if ra.is_zero() && rb.is_zero() {
                    mixing_poset(&qa, &qb)
                } else {
                    minoration_witness(alpha, beta)
                }
            }
        }
        _ => Err(Error::Precondition(format!(
            "block ({alpha}, {beta}) is not equipotent"
        ))),
    }
}

/// Blocks `(αi, βi)` assembled so that the realizer types are `α1 + … + αn`
/// and `βn + … + β1` and the poset is the direct sum of the blocks.
pub fn decompinver_witness(blocks: &[(CnfOrdinal, CnfOrdinal)]) -> Result<LazyPoset> {
    let parts = blocks
        .iter()
        .map(|(a, b)| witness_block(a, b))
        .collect::<Result<Vec<_>>>()?;
    let labels: Vec<String> = blocks.iter().map(|(a, b)| format!("{a}:{b}")).collect();
    Ok(LazyPoset {
        name: "decompinver".into(),
        ..block_sum(parts)?
    }
    .with_param("blocks", labels.join(" ")))
}

/// Three blocks `(r(β), r(β))`, `(ω·q(α), ω·q(β))`, `(r(α), r(α))` with
/// `α = ω·q(α) + r(α)` and likewise for `β`: the realizer types are exactly
/// `α` and `β`, and the middle block is a mixing relation.
pub fn minoration_witness(alpha: &CnfOrdinal, beta: &CnfOrdinal) -> Result<LazyPoset> {
    for x in [alpha, beta] {
        if x.is_finite() {
            return Err(Error::BadOrdinal {
                expected: "a countably infinite ordinal",
                got: x.to_string(),
            });
        }
    }
    let w = CnfOrdinal::omega();
    let (qa, ra) = alpha.euclid_div(&w)?;
    let (qb, rb) = beta.euclid_div(&w)?;
    let (ra, rb) = (
        ra.as_finite().expect("finite remainder"),
        rb.as_finite().expect("finite remainder"),
    );
    let p = block_sum(vec![
        aligned_chain(rb),
        mixing_poset(&qa, &qb)?,
        aligned_chain(ra),
    ])?;
    let r = p.realizer().expect("ranked blocks");
    debug_assert_eq!((&r.type_left, &r.type_right), (alpha, beta));
    let mut c = p.certificate().expect("certified blocks").clone();
    c.derivation.push(format!(
        "{} (+) w.({qa} (x) {qb}) (+) {ra} = {}",
        rb, c.value
    ));
    debug_assert_eq!(
        c.value,
        omega_times(&qa.nat_mul(&qb)).add(&CnfOrdinal::from(ra + rb))
    );
    Ok(LazyPoset {
        name: "minoration".into(),
        ..p
    }
    .with_param("alpha", alpha)
    .with_param("beta", beta)
    .with_certificate(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinPoset;

    fn o(s: &str) -> CnfOrdinal {
        s.parse().unwrap()
    }

    #[test]
    fn finite_blocks() {
        let p = decompinver_witness(&[(o("1"), o("1")), (o("1"), o("1"))]).unwrap();
        assert_eq!(p.prefix(10).poset().unwrap(), FinPoset::antichain(2));
        assert_eq!(p.certificate().unwrap().value, o("2"));

        let p = decompinver_witness(&[(o("2"), o("2")), (o("3"), o("3"))]).unwrap();
        let fin = p.prefix(10).poset().unwrap();
        assert_eq!(fin.n(), 5);
        assert_eq!(fin.length_recursive().unwrap(), 5);
        assert_eq!(p.certificate().unwrap().value, o("5"));
        // round-robin vertex order: block 0, block 1, block 0, block 1, block 1
        let expected = crate::poset::make_poset(5, &[(0, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(fin, expected);
    }

    #[test]
    fn infinite_blocks() {
        let p = decompinver_witness(&[(o("w"), o("w")), (o("w"), o("w"))]).unwrap();
        let r = p.realizer().unwrap();
        assert_eq!(
            (r.type_left.clone(), r.type_right.clone()),
            (o("w*2"), o("w*2"))
        );
        assert_eq!(p.certificate().unwrap().value, o("w*2"));
        assert!(decompinver_witness(&[(o("3"), o("w"))]).is_err());
    }

    #[test]
    fn minoration_certificates() {
        let p = minoration_witness(&o("w*2+3"), &o("w*2+4")).unwrap();
        assert_eq!(p.certificate().unwrap().value, o("w*4+7"));
        let r = p.realizer().unwrap();
        assert_eq!(
            (r.type_left.clone(), r.type_right.clone()),
            (o("w*2+3"), o("w*2+4"))
        );
        assert_eq!(
            minoration_witness(&o("w"), &o("w"))
                .unwrap()
                .certificate()
                .unwrap()
                .value,
            o("w")
        );
        assert!(minoration_witness(&o("5"), &o("w")).is_err());
    }
}
