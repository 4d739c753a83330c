//! Fixed-universe bitsets over element indices.

use std::cmp::Ordering;
use std::fmt;

use crate::lattice::Element;

/// A subset of `0..universe` stored as a bitset.
///
/// Sets compare first by cardinality and then by their sorted member lists,
/// which is the (size, lexicographic) order used for witness reporting.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for e in 0..universe {
            s.insert(e);
        }
        s
    }

    pub fn from_elements(universe: usize, elems: impl IntoIterator<Item = Element>) -> Self {
        let mut s = Self::empty(universe);
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, e: Element) -> bool {
        e < self.universe && self.words[e / 64] & (1 << (e % 64)) != 0
    }

    /// Inserts `e`, returning true if it was not already present.
    #[inline]
    pub fn insert(&mut self, e: Element) -> bool {
        assert!(
            e < self.universe,
            "element {e} outside universe {}",
            self.universe
        );
        let (w, b) = (e / 64, 1u64 << (e % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    pub fn remove(&mut self, e: Element) {
        if e < self.universe {
            self.words[e / 64] &= !(1 << (e % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    pub fn first(&self) -> Option<Element> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
            .then_with(|| self.universe.cmp(&other.universe))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_membership() {
        let mut s = ElementSet::empty(130);
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert_eq!(s.to_vec(), vec![0, 129]);
        assert_eq!(s.len(), 2);
        s.remove(0);
        assert_eq!(s.first(), Some(129));
        assert!(!s.contains(500));
    }

    #[test]
    fn order_is_size_then_lex() {
        let a = ElementSet::from_elements(8, [3]);
        let b = ElementSet::from_elements(8, [0, 1]);
        let c = ElementSet::from_elements(8, [0, 2]);
        assert!(a < b);
        assert!(b < c);
    }

    proptest! {
        #[test]
        fn matches_sorted_dedup(v in proptest::collection::vec(0usize..200, 0..50)) {
            let s = ElementSet::from_elements(200, v.iter().copied());
            let mut expect = v.clone();
            expect.sort_unstable();
            expect.dedup();
            prop_assert_eq!(s.to_vec(), expect);
        }
    }
}
