use std::sync::Arc;

use super::decomp::ranks;
use super::enumeration::enum_below;
use super::lazy::{Coords, LazyPoset, Realizer};
use crate::error::{Error, Result};
use crate::ordinal::CnfOrdinal;

fn tagged(tag: u64, inner: Coords) -> Coords {
    let mut c = vec![CnfOrdinal::from(tag)];
    c.extend(inner);
    c
}

fn is_new(x: &[CnfOrdinal]) -> bool {
    x[0] == CnfOrdinal::one()
}

fn index(x: &CnfOrdinal) -> u64 {
    x.as_finite().expect("finite index")
}

/// Grows `p` and its realizer so that the realizer types become exactly
/// `(alpha, beta)` while the order on the old vertices is unchanged.
///
/// Rank maps are taken to be bijections onto `{ρ < type}`. For an infinite
/// `p` the left order gets a chain of type `γ = -type_left + alpha` on top,
/// and each new vertex is placed just below one element of the initial
/// segment of type `|γ|` of the right order; the right order is then grown
/// the same way. A finite `p` gets the same number of new vertices on top of
/// both orders.
pub fn extend_realizer(p: &LazyPoset, alpha: &CnfOrdinal, beta: &CnfOrdinal) -> Result<LazyPoset> {
    let (r, _, _) = ranks(p)?;
    let (ta, tb) = (&r.type_left, &r.type_right);
    if alpha < ta || beta < tb {
        return Err(Error::Precondition(format!(
            "targets ({alpha}, {beta}) are below the types ({ta}, {tb})"
        )));
    }
    if alpha == ta && beta == tb {
        return Ok(p.clone());
    }
    let q = match p.size() {
        Some(_) => top_chain(p, alpha, beta)?,
        None => {
            if alpha.is_finite() || beta.is_finite() {
                return Err(Error::Precondition(
                    "an infinite poset needs infinite targets".into(),
                ));
            }
            let q = grow_left(p, alpha)?;
            swap(&grow_left(&swap(&q), beta)?)
        }
    };
    Ok(q.with_param("target_left", alpha)
        .with_param("target_right", beta))
}

fn swap(p: &LazyPoset) -> LazyPoset {
    LazyPoset {
        realizer: p.realizer().map(Realizer::swapped),
        ..p.clone()
    }
}

fn top_chain(p: &LazyPoset, alpha: &CnfOrdinal, beta: &CnfOrdinal) -> Result<LazyPoset> {
    let (r, left, right) = ranks(p)?;
    let n = p.size().expect("finite poset");
    let types = [&r.type_left, &r.type_right, alpha, beta].map(CnfOrdinal::as_finite);
    let [Some(ta), Some(tb), Some(a), Some(b)] = types else {
        return Err(Error::Precondition(
            "a finite poset needs finite types and targets".into(),
        ));
    };
    if a - ta != b - tb {
        return Err(Error::Precondition(format!(
            "a finite realizer grows by the same amount on both sides, not by {} and {}",
            a - ta,
            b - tb
        )));
    }
    let m = a - ta;
    let inner = p.clone();
    let vertex = Arc::new(move |i: u64| {
        if i < n {
            tagged(0, inner.vertex(i))
        } else {
            tagged(1, vec![CnfOrdinal::from(i - n)])
        }
    });
    let inner = p.clone();
    let lt = Arc::new(
        move |x: &[CnfOrdinal], y: &[CnfOrdinal]| match (is_new(x), is_new(y)) {
            (false, false) => inner.lt(&x[1..], &y[1..]),
            (false, true) => true,
            (true, false) => false,
            (true, true) => x[1] < y[1],
        },
    );
    let side = |rank: super::lazy::RankFn, t: u64| {
        Arc::new(move |x: &[CnfOrdinal]| {
            if is_new(x) {
                CnfOrdinal::from(t + index(&x[1]))
            } else {
                rank(&x[1..])
            }
        })
    };
    let mut c = p.certificate().cloned();
    if let Some(c) = c.as_mut() {
        c.value = c.value.add(&CnfOrdinal::from(m));
        c.derivation
            .push(format!("{m} new vertices above everything in both orders"));
    }
    let mut q = LazyPoset::new(format!("{}+top", p.name()), Some(n + m), vertex, lt).with_realizer(
        Realizer::ranked(side(left, ta), side(right, tb), alpha.clone(), beta.clone()),
    );
    q.certificate = c;
    q.params = p.params.clone();
    Ok(q)
}

fn grow_left(p: &LazyPoset, target: &CnfOrdinal) -> Result<LazyPoset> {
    let (r, left, right) = ranks(p)?;
    let gamma = r.type_left.left_subtract(target)?;
    if gamma.is_zero() {
        return Ok(p.clone());
    }
    let m = gamma.as_finite();
    let fresh = enum_below(&gamma)?;
    let inner = p.clone();
    let vertex = Arc::new(move |n: u64| match m {
        Some(m) if n < m => tagged(1, vec![CnfOrdinal::from(n)]),
        Some(m) => tagged(0, inner.vertex(n - m)),
        None if n.is_multiple_of(2) => tagged(0, inner.vertex(n / 2)),
        None => tagged(1, vec![CnfOrdinal::from(n / 2)]),
    });
    let base = r.type_left.clone();
    let new_left = Arc::new(move |x: &[CnfOrdinal]| {
        if is_new(x) {
            base.add(&fresh.get(index(&x[1])).expect("index below gamma"))
        } else {
            left(&x[1..])
        }
    });
    let new_right = Arc::new(move |x: &[CnfOrdinal]| {
        if is_new(x) {
            return CnfOrdinal::from(2 * index(&x[1]));
        }
        let rho = right(&x[1..]);
        match rho.as_finite() {
            Some(f) if m.is_none_or(|m| f < m) => CnfOrdinal::from(2 * f + 1),
            Some(f) => CnfOrdinal::from(f + m.expect("finite gamma")),
            None => rho,
        }
    });
    let (lr, rr) = (new_left.clone(), new_right.clone());
    let inner = p.clone();
    let lt = Arc::new(move |x: &[CnfOrdinal], y: &[CnfOrdinal]| {
        if !is_new(x) && !is_new(y) {
            inner.lt(&x[1..], &y[1..])
        } else {
            lr(x) < lr(y) && rr(x) < rr(y)
        }
    });
    let mut c = p.certificate().cloned();
    if let Some(c) = c.as_mut() {
        c.derivation.push(format!(
            "old vertices keep their order after adding a chain of type {gamma}"
        ));
    }
    let mut q = LazyPoset::new(format!("{}+ext", p.name()), None, vertex, lt).with_realizer(
        Realizer::ranked(new_left, new_right, target.clone(), r.type_right.clone()),
    );
    q.certificate = c;
    q.params = p.params.clone();
    q.mixing = p.mixing.as_ref().map(|m| m.nested(0));
    Ok(q)
}
