//! Fixed-domain bitset over positive-root indices.

use std::fmt;

use smallvec::SmallVec;

type Block = u64;
const BITS: usize = Block::BITS as usize;

/// A set of positive roots, stored as a bitset over their indices.
///
/// Used both for `N(w)` of a single element and for unions `N(X)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InversionSet {
    domain: usize,
    blocks: SmallVec<[Block; 4]>,
}

impl InversionSet {
    pub fn empty(domain: usize) -> Self {
        InversionSet { domain, blocks: SmallVec::from_elem(0, domain.div_ceil(BITS)) }
    }

    pub fn full(domain: usize) -> Self {
        let mut s = Self::empty(domain);
        for i in 0..domain {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(domain: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(domain);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Number of positive roots in the ambient system.
    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.domain, "root index {i} out of range {}", self.domain);
        self.blocks[i / BITS] |= 1 << (i % BITS);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.domain, "root index {i} out of range {}", self.domain);
        self.blocks[i / BITS] &= !(1 << (i % BITS));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.domain && self.blocks[i / BITS] & (1 << (i % BITS)) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.domain
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_domain(other);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_domain(other);
        let mut s = self.clone();
        for (a, b) in s.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_domain(other);
        let mut s = self.clone();
        for (a, b) in s.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
        s
    }

    /// `|self ∩ other|` without allocating.
    pub fn intersection_len(&self, other: &Self) -> usize {
        self.check_domain(other);
        self.blocks.iter().zip(&other.blocks).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_domain(other);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(k, &block)| {
            let mut b = block;
            std::iter::from_fn(move || {
                if b == 0 {
                    return None;
                }
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(k * BITS + t)
            })
        })
    }

    fn check_domain(&self, other: &Self) {
        assert_eq!(self.domain, other.domain, "inversion sets over different root systems");
    }
}

impl fmt::Debug for InversionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn crosses_block_boundary() {
        let mut s = InversionSet::empty(132);
        s.insert(0);
        s.insert(63);
        s.insert(64);
        s.insert(131);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 131]);
        assert_eq!(s.len(), 4);
        s.remove(63);
        assert!(!s.contains(63));
        assert!(!s.contains(500));
    }

    #[test]
    fn full_and_empty() {
        assert!(InversionSet::full(70).is_full());
        assert!(InversionSet::empty(70).is_empty());
        assert_eq!(InversionSet::full(70).len(), 70);
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(
            a in proptest::collection::btree_set(0usize..150, 0..40),
            b in proptest::collection::btree_set(0usize..150, 0..40),
        ) {
            let sa = InversionSet::from_indices(150, a.iter().copied());
            let sb = InversionSet::from_indices(150, b.iter().copied());
            prop_assert_eq!(sa.union(&sb).iter().collect::<Vec<_>>(), a.union(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.intersection(&sb).iter().collect::<Vec<_>>(), a.intersection(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.difference(&sb).iter().collect::<Vec<_>>(), a.difference(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.intersection_len(&sb), a.intersection(&b).count());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
        }
    }
}
