use std::fmt;

use fixedbitset::FixedBitSet;

use crate::algebra::{Algebra, Elem};

/// A subset of an algebra's carrier, sized to that carrier.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(FixedBitSet);

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElemSet(bits)
    }

    pub fn singleton(universe: usize, e: Elem) -> Self {
        let mut s = Self::empty(universe);
        s.insert(e);
        s
    }

    pub fn from_elems(universe: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(universe);
        for e in elems {
            s.insert(e);
        }
        s
    }

    /// Set whose members are the one bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe.min(64) {
            if mask >> i & 1 == 1 {
                s.0.insert(i);
            }
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, e: Elem) {
        self.0.insert(e.index());
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.0.contains(e.index())
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.0.ones().map(Elem::from_index)
    }

    /// Renders as `{a,b}` using the element names of `algebra`.
    pub fn display<'a>(&'a self, algebra: &'a Algebra) -> impl fmt::Display + 'a {
        NamedSet { set: self, algebra }
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.ones()).finish()
    }
}

struct NamedSet<'a> {
    set: &'a ElemSet,
    algebra: &'a Algebra,
}

impl fmt::Display for NamedSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.set.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(self.algebra.name_of(e))?;
        }
        f.write_str("}")
    }
}
