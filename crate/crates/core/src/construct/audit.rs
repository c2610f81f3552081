use std::collections::HashSet;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use super::lazy::{Comparator, LazyPoset, Prefix, Realizer};
use crate::ordinal::CnfOrdinal;
use crate::poset::BitMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub construction: String,
    pub prefix: usize,
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Whether every check passed apart from the prefix-length dependent
    /// `left_reach` and `right_reach`.
    pub fn passed_up_to_reach(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.passed || c.name.ends_with("_reach"))
    }

    fn push(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: witness.is_none(),
            witness,
        });
    }
}

/// Checks a prefix of `p`: the order axioms, linearity of both realizer
/// sides, exactness of `le = left ∩ right`, the declared realizer types
/// (bounded and injective ranks, and the top of the type reached) and,
/// for mixing relations with a window `(wa, wb)`, bi-functionality, the
/// sections `R_a^b` with `a`, `b` among the first `wa`, `wb` indices, and
/// monotonicity of the projection `((k1, a), (k2, b)) ↦ (k1, (a, b))`.
pub fn prefix_audit(p: &LazyPoset, n: usize, window: Option<(u64, u64)>) -> AuditReport {
    let pre = p.prefix(n);
    let mut report = AuditReport {
        construction: p.name().to_string(),
        prefix: pre.len(),
        checks: Vec::new(),
    };
    report.push(
        "partial_order",
        order_violation(&pre.lt).map(|w| describe(&pre, &w)),
    );
    if let Some(r) = p.realizer() {
        let (left, right) = (
            pre.left.as_ref().expect("realizer"),
            pre.right.as_ref().expect("realizer"),
        );
        report.push(
            "left_linear",
            linearity_violation(left).map(|w| describe(&pre, &w)),
        );
        report.push(
            "right_linear",
            linearity_violation(right).map(|w| describe(&pre, &w)),
        );
        report.push(
            "realizer_intersection",
            intersection_mismatch(&pre.lt, left, right).map(|(i, j)| {
                format!(
                    "{} vs {}: lt={} left={} right={}",
                    pre.label(i),
                    pre.label(j),
                    pre.lt.get(i, j),
                    left.get(i, j),
                    right.get(i, j)
                )
            }),
        );
        for (side, ranks, t) in [
            ("left", &pre.left_ranks, &r.type_left),
            ("right", &pre.right_ranks, &r.type_right),
        ] {
            if let Some(ranks) = ranks {
                report.push(&format!("{side}_type"), type_violation(ranks, t));
                report.push(&format!("{side}_reach"), reach_violation(ranks, t));
            }
        }
    }
    if let (Some(info), Some((wa, wb))) = (&p.mixing, window) {
        let wa = info.size_a.map_or(wa, |s| wa.min(s));
        let wb = info.size_b.map_or(wb, |s| wb.min(s));
        mixing_checks(&pre, &info.path, wa, wb, &mut report);
    }
    report
}

fn describe(pre: &Prefix, w: &[usize]) -> String {
    let parts: Vec<String> = w
        .iter()
        .map(|&i| format!("{}{}", i, pre.label(i)))
        .collect();
    parts.join(" -> ")
}

/// A witness against irreflexivity, antisymmetry or transitivity.
fn order_violation(m: &BitMatrix) -> Option<Vec<usize>> {
    let n = m.size();
    if let Some(i) = (0..n).find(|&i| m.get(i, i)) {
        return Some(vec![i, i]);
    }
    for i in 0..n {
        for j in m.row_iter(i) {
            if m.get(j, i) {
                return Some(vec![i, j, i]);
            }
            let extra = m.row(j).iter().zip(m.row(i)).position(|(a, b)| a & !b != 0);
            if let Some(w) = extra {
                let bits = m.row(j)[w] & !m.row(i)[w];
                let k = w * 64 + bits.trailing_zeros() as usize;
                return Some(vec![i, j, k]);
            }
        }
    }
    None
}

/// For a strict relation that should be a linear order: a reflexive point,
/// an incomparable or doubly related pair, or a 3-cycle.
fn linearity_violation(m: &BitMatrix) -> Option<Vec<usize>> {
    let n = m.size();
    for i in 0..n {
        if m.get(i, i) {
            return Some(vec![i, i]);
        }
        for j in i + 1..n {
            if m.get(i, j) == m.get(j, i) {
                return Some(vec![i, j]);
            }
        }
    }
    // In a tournament whose above-set sizes strictly decrease along every
    // edge there is no cycle; otherwise an edge u < v with
    // |above(u)| <= |above(v)| yields w above v and below u.
    let above: Vec<usize> = (0..n)
        .map(|i| m.row(i).iter().map(|w| w.count_ones() as usize).sum())
        .collect();
    for u in 0..n {
        for v in m.row_iter(u) {
            if above[u] <= above[v] {
                let w = (0..n)
                    .find(|&w| m.get(v, w) && !m.get(u, w))
                    .expect("tournament 3-cycle");
                return Some(vec![u, v, w, u]);
            }
        }
    }
    None
}

fn intersection_mismatch(
    lt: &BitMatrix,
    left: &BitMatrix,
    right: &BitMatrix,
) -> Option<(usize, usize)> {
    let both = left.and(right);
    if both == *lt {
        return None;
    }
    (0..lt.size())
        .flat_map(|i| (0..lt.size()).map(move |j| (i, j)))
        .find(|&(i, j)| lt.get(i, j) != both.get(i, j))
}

/// Every rank lies below the declared type and ranks are distinct.
fn type_violation(ranks: &[CnfOrdinal], t: &CnfOrdinal) -> Option<String> {
    if let Some(r) = ranks.iter().find(|r| *r >= t) {
        return Some(format!("rank {r} is not below the type {t}"));
    }
    let mut seen = HashSet::new();
    ranks
        .iter()
        .find(|r| !seen.insert(*r))
        .map(|r| format!("rank {r} is used twice"))
}

/// The top of the type shows up in the prefix: its last element when it is
/// a successor, some rank in its last unit `ω^e` when it is a limit. Unlike
/// the other checks this depends on the prefix being long enough.
fn reach_violation(ranks: &[CnfOrdinal], t: &CnfOrdinal) -> Option<String> {
    let Some(top) = ranks.iter().max() else {
        return (!t.is_zero()).then(|| format!("no vertices for type {t}"));
    };
    match t.pred() {
        Some(_) if t.as_finite().is_some_and(|k| (ranks.len() as u64) < k) => None,
        Some(last) => {
            (!ranks.contains(&last)).then(|| format!("the last element {last} of {t} is missing"))
        }
        None => {
            let target = t.drop_last_unit();
            (*top < target).then(|| format!("ranks stay below {target} on the way to {t}"))
        }
    }
}

fn mixing_checks(pre: &Prefix, path: &[u64], wa: u64, wb: u64, report: &mut AuditReport) {
    let depth = path.len();
    let members: Vec<usize> = (0..pre.len())
        .filter(|&i| {
            let c = &pre.coords[i];
            c.len() >= depth + 6 && path.iter().zip(c).all(|(t, x)| x.as_finite() == Some(*t))
        })
        .collect();
    let mix = |i: usize| &pre.coords[i][depth..depth + 6];

    let mut firsts = HashSet::new();
    let mut seconds = HashSet::new();
    let clash = members.iter().find(|&&i| {
        let m = mix(i);
        !firsts.insert((m[0].clone(), m[1].clone()))
            || !seconds.insert((m[2].clone(), m[3].clone()))
    });
    report.push(
        "bi_functional",
        clash.map(|&i| format!("{} shares a coordinate pair", pre.label(i))),
    );

    let present: HashSet<(u64, u64)> = members
        .iter()
        .map(|&i| {
            (
                mix(i)[4].as_finite().expect("index"),
                mix(i)[5].as_finite().expect("index"),
            )
        })
        .collect();
    let missing = (0..wa)
        .flat_map(|a| (0..wb).map(move |b| (a, b)))
        .find(|s| !present.contains(s));
    report.push(
        "sections",
        missing.map(|(a, b)| format!("section for index pair ({a}, {b}) is empty")),
    );

    let mut bad = None;
    'outer: for &i in &members {
        for &j in &members {
            if pre.lt.get(i, j) {
                let (x, y) = (mix(i), mix(j));
                let pair_le = x[1] <= y[1] && x[3] <= y[3];
                let same = x[1] == y[1] && x[3] == y[3];
                if !(pair_le && (!same || x[0] < y[0])) {
                    bad = Some(format!(
                        "{} < {} but the projection is not increasing",
                        pre.label(i),
                        pre.label(j)
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.push("projection_monotone", bad);
}

/// Replaces the right side of the realizer by a seeded tournament that
/// reverses a pseudo-random eighth of the pairs of the original right order.
pub fn with_faulty_right(p: &LazyPoset, seed: u64) -> LazyPoset {
    let r = p.realizer().expect("a realizer to corrupt").clone();
    let original = r.right.clone();
    let relation = Arc::new(move |x: &[CnfOrdinal], y: &[CnfOrdinal]| {
        if x == y {
            return false;
        }
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        let mut h = DefaultHasher::new();
        (seed, lo, hi).hash(&mut h);
        original.lt(x, y) != h.finish().is_multiple_of(8)
    });
    LazyPoset {
        realizer: Some(Realizer {
            right: Comparator::Relation(relation),
            ..r
        }),
        name: format!("{}+fault", p.name()),
        ..p.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{mixing_poset, sierpinskisation};

    fn o(s: &str) -> CnfOrdinal {
        s.parse().unwrap()
    }

    #[test]
    fn sierpinskisation_passes() {
        let rep = prefix_audit(&sierpinskisation(&o("w*2")).unwrap(), 200, None);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.checks.len(), 8);
    }

    #[test]
    fn fault_is_caught() {
        let p = with_faulty_right(&sierpinskisation(&o("w*2")).unwrap(), 7);
        let rep = prefix_audit(&p, 200, None);
        let lin = rep.check("right_linear").unwrap();
        assert!(!lin.passed);
        assert_eq!(lin.witness.as_ref().unwrap().matches("->").count(), 3);
        assert!(rep.check("left_linear").unwrap().passed);
    }

    #[test]
    fn mixing_window() {
        let rep = prefix_audit(
            &mixing_poset(&o("w*2"), &o("w*3")).unwrap(),
            300,
            Some((3, 3)),
        );
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.checks.len(), 11);
    }

    #[test]
    fn three_cycles() {
        let mut m = BitMatrix::new(3);
        m.set(0, 1);
        m.set(1, 2);
        m.set(2, 0);
        assert_eq!(linearity_violation(&m), Some(vec![0, 1, 2, 0]));
        let mut c = BitMatrix::new(3);
        c.set(0, 1);
        c.set(1, 2);
        assert_eq!(order_violation(&c), Some(vec![0, 1, 2]));
        c.set(0, 2);
        assert_eq!(order_violation(&c), None);
        assert_eq!(linearity_violation(&c), None);
    }
}
