//! Explicit finite posets.

mod bitmatrix;
mod extensions;

use std::collections::{HashMap, VecDeque};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

pub use bitmatrix::BitMatrix;
pub use extensions::LinearExtensions;

use crate::error::{Error, Result};

/// A partial order on `0..n`, stored as its transitively closed strict relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinPoset {
    lt: BitMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Combine {
    DirectSum,
    CartesianProduct,
    LexSum,
}

/// The tree of bad sequences, rooted at the empty sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadTree {
    pub seq: Vec<usize>,
    pub children: Vec<BadTree>,
}

impl BadTree {
    /// `sup⁺` of the children's heights; `0` at a leaf.
    pub fn height(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.height() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(BadTree::node_count).sum::<usize>()
    }
}

/// Checks the relation for cycles and closes it transitively.
pub fn make_poset(n: usize, pairs: &[(usize, usize)]) -> Result<FinPoset> {
    let mut m = BitMatrix::new(n);
    for &(i, j) in pairs {
        for v in [i, j] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        m.set(i, j);
    }
    let raw = m.clone();
    m.close_transitively();
    if let Some(v) = (0..n).find(|&v| m.get(v, v)) {
        return Err(Error::Cycle {
            witness: cycle_through(&raw, v),
        });
    }
    Ok(FinPoset { lt: m })
}

/// A shortest cycle through `v` in the raw relation, as `v, …, v`.
fn cycle_through(raw: &BitMatrix, v: usize) -> Vec<usize> {
    let n = raw.size();
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for y in raw.row_iter(x) {
            if y == v {
                let mut path = Vec::new();
                let mut z = x;
                while z != v {
                    path.push(z);
                    z = parent[z];
                }
                path.push(v);
                path.reverse();
                path.push(v);
                return path;
            }
            if parent[y] == usize::MAX && y != v {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    unreachable!("vertex {v} lies on a cycle")
}

impl FinPoset {
    pub fn from_matrix(lt: BitMatrix) -> Result<Self> {
        let pairs = lt.pairs();
        make_poset(lt.size(), &pairs)
    }

    pub fn antichain(n: usize) -> Self {
        FinPoset {
            lt: BitMatrix::new(n),
        }
    }

    pub fn chain(n: usize) -> Self {
        Self::from_linear_order(&(0..n).collect::<Vec<_>>())
    }

    /// The linear order listing `order` from bottom to top.
    pub fn from_linear_order(order: &[usize]) -> Self {
        let n = order.len();
        let mut m = BitMatrix::new(n);
        for (a, &x) in order.iter().enumerate() {
            for &y in &order[a + 1..] {
                m.set(x, y);
            }
        }
        FinPoset { lt: m }
    }

    pub fn n(&self) -> usize {
        self.lt.size()
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.lt.get(i, j)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt.get(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.lt(j, i)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.lt
    }

    /// The strict pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.lt.pairs()
    }

    pub fn is_linear(&self) -> bool {
        let n = self.n();
        self.lt.count() == n * n.saturating_sub(1) / 2
    }

    /// `other ⊑ self`: same vertices, and every relation of `other` holds in `self`.
    pub fn extends(&self, other: &FinPoset) -> bool {
        self.n() == other.n() && other.lt.and(&self.lt) == other.lt
    }

    pub fn restrict(&self, keep: &[usize]) -> FinPoset {
        FinPoset {
            lt: self.lt.induced(keep),
        }
    }

    /// Pairs `(i, j)` with `i < j` and nothing strictly between.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .filter(|&(i, j)| !(0..self.n()).any(|k| self.lt(i, k) && self.lt(k, j)))
            .collect()
    }

    pub fn linear_extensions(&self) -> LinearExtensions<'_> {
        LinearExtensions::new(self)
    }

    /// The length of a finite poset: every linear extension has type `n`.
    pub fn length_fin(&self) -> usize {
        self.n()
    }

    /// `ℓ(S) = sup⁺{ℓ({y ∈ S : y ≱ x}) : x ∈ S}`, memoized over vertex subsets.
    pub fn length_recursive(&self) -> Result<usize> {
        let n = self.n();
        if n > 64 {
            return Err(Error::Precondition(format!(
                "length_recursive supports at most 64 vertices, got {n}"
            )));
        }
        // not_above[x]: the y with y ≱ x
        let not_above: Vec<u64> = (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&y| !self.le(x, y))
                    .fold(0u64, |m, y| m | 1 << y)
            })
            .collect();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut memo = HashMap::new();
        Ok(ell(full, &not_above, &mut memo))
    }

    pub fn bad_tree(&self) -> BadTree {
        let mut root = BadTree {
            seq: Vec::new(),
            children: Vec::new(),
        };
        self.grow(&mut root);
        root
    }

    fn grow(&self, node: &mut BadTree) {
        for x in 0..self.n() {
            if node.seq.iter().all(|&y| !self.le(y, x)) {
                let mut seq = node.seq.clone();
                seq.push(x);
                let mut child = BadTree {
                    seq,
                    children: Vec::new(),
                };
                self.grow(&mut child);
                node.children.push(child);
            }
        }
    }

    /// Height of the root of the bad-sequence tree, by exhaustive enumeration.
    pub fn bad_tree_height(&self) -> usize {
        let mut seq = Vec::with_capacity(self.n());
        self.longest_bad(&mut seq)
    }

    fn longest_bad(&self, seq: &mut Vec<usize>) -> usize {
        let mut best = 0;
        for x in 0..self.n() {
            if seq.iter().all(|&y| !self.le(y, x)) {
                seq.push(x);
                best = best.max(1 + self.longest_bad(seq));
                seq.pop();
            }
        }
        best
    }

    /// Some `x` with both `x ≤ y` and `x ≥ y` for distinct vertices, or `x < x`.
    pub fn validate(&self) -> Result<()> {
        Self::from_matrix(self.lt.clone()).map(|_| ())
    }
}

fn ell(s: u64, not_above: &[u64], memo: &mut HashMap<u64, usize>) -> usize {
    if s == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&s) {
        return v;
    }
    let mut best = 0;
    let mut rest = s;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        best = best.max(ell(s & not_above[x], not_above, memo) + 1);
    }
    memo.insert(s, best);
    best
}

pub fn intersect(p: &FinPoset, q: &FinPoset) -> Result<FinPoset> {
    if p.n() != q.n() {
        return Err(Error::SizeMismatch(format!(
            "{} vs {} vertices",
            p.n(),
            q.n()
        )));
    }
    Ok(FinPoset {
        lt: p.lt.and(&q.lt),
    })
}

pub fn combine(kind: Combine, p: &FinPoset, q: &FinPoset) -> FinPoset {
    let (n, m) = (p.n(), q.n());
    match kind {
        Combine::DirectSum | Combine::LexSum => {
            let mut out = BitMatrix::new(n + m);
            for (i, j) in p.pairs() {
                out.set(i, j);
            }
            for (i, j) in q.pairs() {
                out.set(n + i, n + j);
            }
            if kind == Combine::LexSum {
                for i in 0..n {
                    for j in 0..m {
                        out.set(i, n + j);
                    }
                }
            }
            FinPoset { lt: out }
        }
        Combine::CartesianProduct => {
            let mut out = BitMatrix::new(n * m);
            for (i, j) in (0..n).cartesian_product(0..m) {
                for (k, l) in (0..n).cartesian_product(0..m) {
                    if (i, j) != (k, l) && p.le(i, k) && q.le(j, l) {
                        out.set(i * m + j, k * m + l);
                    }
                }
            }
            FinPoset { lt: out }
        }
    }
}

/// Whether some injective map preserves both `<` and its negation.
pub fn embeds(p: &FinPoset, q: &FinPoset) -> bool {
    fn extend(p: &FinPoset, q: &FinPoset, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let a = map.len();
        if a == p.n() {
            return true;
        }
        for x in 0..q.n() {
            if used[x] {
                continue;
            }
            let ok = map
                .iter()
                .enumerate()
                .all(|(b, &y)| p.lt(a, b) == q.lt(x, y) && p.lt(b, a) == q.lt(y, x));
            if ok {
                map.push(x);
                used[x] = true;
                if extend(p, q, map, used) {
                    return true;
                }
                used[x] = false;
                map.pop();
            }
        }
        false
    }
    p.n() <= q.n() && extend(p, q, &mut Vec::new(), &mut vec![false; q.n()])
}

/// Splits the vertices into a down-closed set of size `a1` and its complement,
/// choosing the lexicographically least such set.
pub fn longcut_fin(p: &FinPoset, a1: usize, a2: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if a1 + a2 != p.n() {
        return Err(Error::SizeMismatch(format!(
            "{a1} + {a2} does not add up to {} vertices",
            p.n()
        )));
    }
    for init in (0..p.n()).combinations(a1) {
        let down_closed = init.iter().all(|&y| {
            (0..p.n())
                .filter(|&x| p.lt(x, y))
                .all(|x| init.contains(&x))
        });
        if down_closed {
            let fin = (0..p.n()).filter(|v| !init.contains(v)).collect();
            return Ok((init, fin));
        }
    }
    unreachable!("a linear extension always yields a down-closed prefix")
}

/// Every labeled poset on `0..n`, found by filtering all relations.
pub fn all_labeled_posets(n: usize) -> Vec<FinPoset> {
    assert!(n <= 5, "exhaustive enumeration is limited to 5 vertices");
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << slots.len() {
        let mut m = BitMatrix::new(n);
        for (b, &(i, j)) in slots.iter().enumerate() {
            if mask >> b & 1 == 1 {
                m.set(i, j);
            }
        }
        let transitive = (0..n)
            .all(|i| (0..n).all(|j| !m.get(i, j) || (0..n).all(|k| !m.get(j, k) || m.get(i, k))));
        let antisymmetric = slots.iter().all(|&(i, j)| !(m.get(i, j) && m.get(j, i)));
        if transitive && antisymmetric {
            out.push(FinPoset { lt: m });
        }
    }
    out
}

/// All linear orders on `0..n`.
pub fn all_linear_orders(n: usize) -> Vec<FinPoset> {
    (0..n)
        .permutations(n)
        .map(|p| FinPoset::from_linear_order(&p))
        .collect()
}

impl std::fmt::Debug for FinPoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FinPoset {{ n: {}, lt: {:?} }}", self.n(), self.pairs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_poset() -> FinPoset {
        make_poset(3, &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn construction() {
        let c = make_poset(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(c.pairs(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(
            make_poset(2, &[(0, 1), (1, 0)]),
            Err(Error::Cycle {
                witness: vec![0, 1, 0]
            })
        );
        match make_poset(4, &[(0, 1), (1, 2), (2, 3), (3, 1)]) {
            Err(Error::Cycle { witness }) => {
                assert_eq!(witness.first(), witness.last());
                for w in witness.windows(2) {
                    assert!(
                        [(1, 2), (2, 3), (3, 1)].contains(&(w[0], w[1])),
                        "{witness:?}"
                    );
                }
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(make_poset(3, &[]).unwrap(), FinPoset::antichain(3));
        assert_eq!(
            make_poset(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn intersections() {
        let up = FinPoset::chain(3);
        let down = FinPoset::from_linear_order(&[2, 1, 0]);
        assert_eq!(intersect(&up, &down).unwrap(), FinPoset::antichain(3));
        assert_eq!(intersect(&up, &up).unwrap(), up);
        let other = FinPoset::from_linear_order(&[0, 2, 1]);
        assert_eq!(
            intersect(&up, &other).unwrap().pairs(),
            vec![(0, 1), (0, 2)]
        );
        assert!(intersect(&up, &FinPoset::chain(2)).is_err());
    }

    #[test]
    fn extension_counts() {
        assert_eq!(FinPoset::chain(3).linear_extensions().count(), 1);
        assert_eq!(FinPoset::antichain(3).linear_extensions().count(), 6);
        assert_eq!(
            v_poset().linear_extensions().collect::<Vec<_>>(),
            vec![vec![0, 1, 2], vec![0, 2, 1]]
        );
    }

    #[test]
    fn lengths() {
        for p in [
            FinPoset::antichain(0),
            FinPoset::antichain(2),
            FinPoset::chain(3),
            v_poset(),
        ] {
            assert_eq!(p.length_recursive().unwrap(), p.n());
            assert_eq!(p.bad_tree_height(), p.n());
            assert_eq!(p.bad_tree().height(), p.n());
        }
        assert_eq!(FinPoset::chain(3).bad_tree().node_count(), 8);
    }

    #[test]
    fn combinations() {
        let d = combine(Combine::DirectSum, &FinPoset::chain(2), &FinPoset::chain(2));
        assert_eq!(d.pairs(), vec![(0, 1), (2, 3)]);
        let diamond = combine(
            Combine::CartesianProduct,
            &FinPoset::chain(2),
            &FinPoset::chain(2),
        );
        assert_eq!(
            diamond.pairs(),
            vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]
        );
        assert_eq!(diamond.bad_tree_height(), 4);
        let l = combine(
            Combine::LexSum,
            &FinPoset::antichain(2),
            &FinPoset::chain(1),
        );
        assert_eq!(l.pairs(), vec![(0, 2), (1, 2)]);
        assert!(embeds(&v_poset(), &diamond));
        assert!(embeds(&FinPoset::chain(2), &FinPoset::chain(3)));
        assert!(!embeds(&FinPoset::antichain(2), &FinPoset::chain(3)));
    }

    #[test]
    fn longcuts() {
        let (a, b) = longcut_fin(&FinPoset::chain(5), 2, 3).unwrap();
        assert_eq!((a, b), (vec![0, 1], vec![2, 3, 4]));
        let (a, b) = longcut_fin(&FinPoset::antichain(3), 2, 1).unwrap();
        assert_eq!((a, b), (vec![0, 1], vec![2]));
        let (a, _) = longcut_fin(&FinPoset::from_linear_order(&[2, 0, 1]), 1, 2).unwrap();
        assert_eq!(a, vec![2]);
        assert!(longcut_fin(&FinPoset::chain(2), 2, 1).is_err());
    }

    #[test]
    fn labeled_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| all_labeled_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219]);
    }

    #[test]
    fn hasse_diagram() {
        assert_eq!(FinPoset::chain(3).hasse(), vec![(0, 1), (1, 2)]);
    }
}
