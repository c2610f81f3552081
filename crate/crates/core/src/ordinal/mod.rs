//! Ordinals below ε₀ and the symbolic cardinal tower above them.

mod cnf;
mod kord;
mod syntax;
pub(crate) mod terms;

use std::collections::BTreeSet;

pub use cnf::CnfOrdinal;
pub use kord::KOrdinal;
pub use syntax::{parse_kordinal, parse_ordinal, render_kordinal, render_ordinal};

/// A finite set of ordinals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrdinalSet {
    elements: BTreeSet<CnfOrdinal>,
}

impl OrdinalSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: CnfOrdinal) -> bool {
        self.elements.insert(a)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CnfOrdinal> {
        self.elements.iter()
    }

    /// The least upper bound; `0` for the empty set.
    pub fn sup(&self) -> CnfOrdinal {
        self.elements
            .last()
            .cloned()
            .unwrap_or_else(CnfOrdinal::zero)
    }

    /// The least strict upper bound; `0` for the empty set.
    pub fn sup_plus(&self) -> CnfOrdinal {
        self.elements
            .last()
            .map_or_else(CnfOrdinal::zero, CnfOrdinal::succ)
    }
}

impl FromIterator<CnfOrdinal> for OrdinalSet {
    fn from_iter<I: IntoIterator<Item = CnfOrdinal>>(iter: I) -> Self {
        OrdinalSet {
            elements: iter.into_iter().collect(),
        }
    }
}

/// `sup⁺` of a finite set of ordinals.
pub fn sup_plus(s: &OrdinalSet) -> CnfOrdinal {
    s.sup_plus()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_upper_bounds() {
        assert!(sup_plus(&OrdinalSet::new()).is_zero());
        let five: OrdinalSet = [CnfOrdinal::from(5)].into_iter().collect();
        assert_eq!(sup_plus(&five), CnfOrdinal::from(6));
        let s: OrdinalSet = ["3", "w", "w+1", "w"]
            .iter()
            .map(|t| t.parse().unwrap())
            .collect();
        assert_eq!(s.len(), 3);
        assert_eq!(sup_plus(&s).to_string(), "w+2");
    }
}
