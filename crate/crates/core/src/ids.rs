//! Indices into the catalogue of indecomposables, bitsets of them, and support τ-rigid objects.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Position of an indecomposable in the canonical enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndId(pub usize);

impl fmt::Display for IndId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A set of catalogued indecomposables (at most 64).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndSet(pub u64);

pub const MAX_INDECOMPOSABLES: usize = 64;

impl IndSet {
    pub const EMPTY: IndSet = IndSet(0);

    pub fn full(n: usize) -> IndSet {
        if n >= 64 {
            IndSet(u64::MAX)
        } else {
            IndSet((1u64 << n) - 1)
        }
    }

    pub fn single(id: IndId) -> IndSet {
        IndSet(1 << id.0)
    }

    pub fn contains(self, id: IndId) -> bool {
        self.0 >> id.0 & 1 == 1
    }

    pub fn with(self, id: IndId) -> IndSet {
        IndSet(self.0 | 1 << id.0)
    }

    pub fn without(self, id: IndId) -> IndSet {
        IndSet(self.0 & !(1 << id.0))
    }

    pub fn union(self, other: IndSet) -> IndSet {
        IndSet(self.0 | other.0)
    }

    pub fn intersect(self, other: IndSet) -> IndSet {
        IndSet(self.0 & other.0)
    }

    pub fn minus(self, other: IndSet) -> IndSet {
        IndSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: IndSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = IndId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(IndId(i))
            }
        })
    }

    pub fn first(self) -> Option<IndId> {
        self.iter().next()
    }

    /// All subsets of `self`, in increasing order of their bit patterns.
    pub fn subsets(self) -> impl Iterator<Item = IndSet> {
        let full = self.0;
        let mut cur: Option<u64> = Some(0);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full { None } else { Some((c.wrapping_sub(full)) & full) };
            Some(IndSet(c))
        })
    }
}

impl FromIterator<IndId> for IndSet {
    fn from_iter<I: IntoIterator<Item = IndId>>(iter: I) -> Self {
        iter.into_iter().fold(IndSet::EMPTY, IndSet::with)
    }
}

/// An indecomposable support τ-rigid object: a module `X` or a shifted projective `P[1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IndecObject {
    Module(IndId),
    Shifted(IndId),
}

impl IndecObject {
    pub fn id(self) -> IndId {
        match self {
            IndecObject::Module(i) | IndecObject::Shifted(i) => i,
        }
    }

    pub fn is_shifted(self) -> bool {
        matches!(self, IndecObject::Shifted(_))
    }

    /// `|U|`: the underlying module.
    pub fn unshift(self) -> IndecObject {
        IndecObject::Module(self.id())
    }
}

/// A basic support τ-rigid object `M ⊕ P[1]`, stored as two sets of indecomposables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrObject {
    pub modules: IndSet,
    pub shifted: IndSet,
}

impl StrObject {
    pub const ZERO: StrObject = StrObject { modules: IndSet::EMPTY, shifted: IndSet::EMPTY };

    pub fn new(modules: IndSet, shifted: IndSet) -> StrObject {
        StrObject { modules, shifted }
    }

    pub fn module(m: IndSet) -> StrObject {
        StrObject { modules: m, shifted: IndSet::EMPTY }
    }

    pub fn of(x: IndecObject) -> StrObject {
        StrObject::ZERO.with(x)
    }

    pub fn with(self, x: IndecObject) -> StrObject {
        match x {
            IndecObject::Module(i) => StrObject { modules: self.modules.with(i), ..self },
            IndecObject::Shifted(i) => StrObject { shifted: self.shifted.with(i), ..self },
        }
    }

    pub fn contains(self, x: IndecObject) -> bool {
        match x {
            IndecObject::Module(i) => self.modules.contains(i),
            IndecObject::Shifted(i) => self.shifted.contains(i),
        }
    }

    pub fn union(self, other: StrObject) -> StrObject {
        StrObject { modules: self.modules.union(other.modules), shifted: self.shifted.union(other.shifted) }
    }

    pub fn summand_count(self) -> usize {
        self.modules.len() + self.shifted.len()
    }

    pub fn is_zero(self) -> bool {
        self.modules.is_empty() && self.shifted.is_empty()
    }

    pub fn summands(self) -> impl Iterator<Item = IndecObject> {
        self.modules.iter().map(IndecObject::Module).chain(self.shifted.iter().map(IndecObject::Shifted))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitset_basics() {
        let s: IndSet = [IndId(0), IndId(3), IndId(5)].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert!(s.contains(IndId(3)) && !s.contains(IndId(2)));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![IndId(0), IndId(3), IndId(5)]);
        assert_eq!(s.without(IndId(3)).len(), 2);
        assert!(IndSet::single(IndId(5)).is_subset(s));
        assert_eq!(IndSet::full(64).len(), 64);
        assert_eq!(s.first(), Some(IndId(0)));
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = IndSet(0b1011);
        let subs: Vec<IndSet> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(IndSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn str_object_summands() {
        let t = StrObject::of(IndecObject::Module(IndId(1))).with(IndecObject::Shifted(IndId(0)));
        assert_eq!(t.summand_count(), 2);
        assert!(t.contains(IndecObject::Shifted(IndId(0))));
        assert!(!t.contains(IndecObject::Module(IndId(0))));
        assert_eq!(IndecObject::Shifted(IndId(2)).unshift(), IndecObject::Module(IndId(2)));
    }
}
