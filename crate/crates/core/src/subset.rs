//! Bitmask subsets of a carrier with at most 64 elements.

use std::fmt;
use std::ops::{BitAnd, BitOr};

/// Width of the machine word backing [`Subset`]; the hard upper bound on
/// carrier size.
pub const MAX_WIDTH: usize = 64;

/// A set of element indices, bit `i` set iff element `i` is a member.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// All indices `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_WIDTH);
        if n == MAX_WIDTH {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn single(i: usize) -> Self {
        debug_assert!(i < MAX_WIDTH);
        Subset(1u64 << i)
    }

    pub fn of(items: &[usize]) -> Self {
        items.iter().copied().collect()
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_WIDTH && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1u64 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1u64 << i))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Least member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        self.union(rhs)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        self.intersection(rhs)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Subset::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Ascending iterator over member indices.
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
