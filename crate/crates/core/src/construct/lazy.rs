use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::enumeration::Size;
use crate::error::Result;
use crate::ordinal::CnfOrdinal;
use crate::poset::{BitMatrix, FinPoset};

/// A vertex is identified by a short vector of ordinal coordinates.
pub type Coords = Vec<CnfOrdinal>;

pub type VertexFn = Arc<dyn Fn(u64) -> Coords + Send + Sync>;
pub type RelFn = Arc<dyn Fn(&[CnfOrdinal], &[CnfOrdinal]) -> bool + Send + Sync>;
pub type RankFn = Arc<dyn Fn(&[CnfOrdinal]) -> CnfOrdinal + Send + Sync>;

/// One side of a realizer.
#[derive(Clone)]
pub enum Comparator {
    /// `x < y` iff `rank(x) < rank(y)`; ranks lie below the declared type.
    Rank(RankFn),
    /// An arbitrary strict relation, linear or not.
    Relation(RelFn),
}

impl Comparator {
    pub fn lt(&self, x: &[CnfOrdinal], y: &[CnfOrdinal]) -> bool {
        match self {
            Comparator::Rank(r) => r(x) < r(y),
            Comparator::Relation(f) => f(x, y),
        }
    }

    pub fn rank(&self) -> Option<&RankFn> {
        match self {
            Comparator::Rank(r) => Some(r),
            Comparator::Relation(_) => None,
        }
    }
}

/// Two linear orders whose intersection is the poset, with their types.
#[derive(Clone)]
pub struct Realizer {
    pub left: Comparator,
    pub right: Comparator,
    pub type_left: CnfOrdinal,
    pub type_right: CnfOrdinal,
}

impl Realizer {
    pub fn ranked(
        left: RankFn,
        right: RankFn,
        type_left: CnfOrdinal,
        type_right: CnfOrdinal,
    ) -> Self {
        Realizer {
            left: Comparator::Rank(left),
            right: Comparator::Rank(right),
            type_left,
            type_right,
        }
    }

    /// The same orders read the other way round.
    pub fn swapped(&self) -> Self {
        Realizer {
            left: self.right.clone(),
            right: self.left.clone(),
            type_left: self.type_right.clone(),
            type_right: self.type_left.clone(),
        }
    }
}

/// A lower bound on the length together with the rules that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub value: CnfOrdinal,
    pub derivation: Vec<String>,
}

impl Certificate {
    pub fn new(value: CnfOrdinal, step: impl Into<String>) -> Self {
        Certificate {
            value,
            derivation: vec![step.into()],
        }
    }
}

/// Where the vertices of a mixing relation sit inside a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixingInfo {
    /// Coordinate prefix of the vertices that belong to the relation; their
    /// remaining coordinates are `[k1, a, k2, b, a-index, b-index]`.
    pub path: Vec<u64>,
    pub size_a: Size,
    pub size_b: Size,
}

impl MixingInfo {
    pub(crate) fn nested(&self, tag: u64) -> Self {
        let mut path = vec![tag];
        path.extend(&self.path);
        MixingInfo {
            path,
            ..self.clone()
        }
    }
}

/// A countable poset on `0..size`, given by a vertex map and a decidable order.
#[derive(Clone)]
pub struct LazyPoset {
    pub(crate) name: String,
    pub(crate) params: BTreeMap<String, String>,
    pub(crate) size: Size,
    pub(crate) vertex: VertexFn,
    pub(crate) lt: RelFn,
    pub(crate) realizer: Option<Realizer>,
    pub(crate) certificate: Option<Certificate>,
    pub(crate) mixing: Option<MixingInfo>,
}

impl LazyPoset {
    pub fn new(name: impl Into<String>, size: Size, vertex: VertexFn, lt: RelFn) -> Self {
        LazyPoset {
            name: name.into(),
            params: BTreeMap::new(),
            size,
            vertex,
            lt,
            realizer: None,
            certificate: None,
            mixing: None,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_realizer(mut self, r: Realizer) -> Self {
        self.realizer = Some(r);
        self
    }

    pub fn with_certificate(mut self, c: Certificate) -> Self {
        self.certificate = Some(c);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, String> {
        &self.params
    }

    pub fn size(&self) -> Size {
        self.size
    }

    pub fn vertex(&self, n: u64) -> Coords {
        (self.vertex)(n)
    }

    pub fn lt(&self, x: &[CnfOrdinal], y: &[CnfOrdinal]) -> bool {
        (self.lt)(x, y)
    }

    pub fn realizer(&self) -> Option<&Realizer> {
        self.realizer.as_ref()
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        self.certificate.as_ref()
    }

    pub fn is_mixing(&self) -> bool {
        self.mixing.is_some()
    }

    /// The first `n` vertices (fewer if the poset is smaller) with every
    /// relation evaluated.
    pub fn prefix(&self, n: usize) -> Prefix {
        let n = self.size.map_or(n, |s| n.min(s as usize));
        let coords: Vec<Coords> = (0..n as u64)
            .into_par_iter()
            .map(|i| self.vertex(i))
            .collect();
        let lt = relation_matrix(&coords, |x, y| self.lt(x, y));
        let (left, right, left_ranks, right_ranks) = match &self.realizer {
            Some(r) => {
                let ranks = |c: &Comparator| {
                    c.rank()
                        .map(|f| coords.par_iter().map(|x| f(x)).collect::<Vec<_>>())
                };
                let (lr, rr) = (ranks(&r.left), ranks(&r.right));
                let matrix = |c: &Comparator, rk: &Option<Vec<CnfOrdinal>>| match rk {
                    Some(rk) => ranked_matrix(rk),
                    None => relation_matrix(&coords, |x, y| c.lt(x, y)),
                };
                (
                    Some(matrix(&r.left, &lr)),
                    Some(matrix(&r.right, &rr)),
                    lr,
                    rr,
                )
            }
            None => (None, None, None, None),
        };
        Prefix {
            coords,
            lt,
            left,
            right,
            left_ranks,
            right_ranks,
        }
    }
}

impl fmt::Debug for LazyPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazyPoset")
            .field("name", &self.name)
            .field("params", &self.params)
            .field("size", &self.size)
            .field("certificate", &self.certificate)
            .finish_non_exhaustive()
    }
}

fn relation_matrix(
    coords: &[Coords],
    f: impl Fn(&[CnfOrdinal], &[CnfOrdinal]) -> bool + Sync,
) -> BitMatrix {
    let n = coords.len();
    let rows: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).filter(|&j| f(&coords[i], &coords[j])).collect())
        .collect();
    let mut m = BitMatrix::new(n);
    for (i, row) in rows.into_iter().enumerate() {
        for j in row {
            m.set(i, j);
        }
    }
    m
}

fn ranked_matrix(ranks: &[CnfOrdinal]) -> BitMatrix {
    let n = ranks.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| ranks[a].cmp(&ranks[b]));
    let mut m = BitMatrix::new(n);
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if ranks[i] < ranks[j] {
                m.set(i, j);
            }
        }
    }
    m
}

/// A materialized finite prefix of a [`LazyPoset`].
#[derive(Clone, Debug)]
pub struct Prefix {
    pub coords: Vec<Coords>,
    pub lt: BitMatrix,
    pub left: Option<BitMatrix>,
    pub right: Option<BitMatrix>,
    pub left_ranks: Option<Vec<CnfOrdinal>>,
    pub right_ranks: Option<Vec<CnfOrdinal>>,
}

impl Prefix {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// The prefix order as a validated finite poset.
    pub fn poset(&self) -> Result<FinPoset> {
        FinPoset::from_matrix(self.lt.clone())
    }

    /// Vertices listed from bottom to top in a ranked realizer order.
    pub fn linear_order(ranks: &[CnfOrdinal]) -> Vec<usize> {
        let mut order: Vec<usize> = (0..ranks.len()).collect();
        order.sort_by(|&a, &b| ranks[a].cmp(&ranks[b]));
        order
    }

    pub fn label(&self, i: usize) -> String {
        let parts: Vec<String> = self.coords[i].iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }
}
