use std::cmp::Ordering;
use std::fmt;

/// Maximum number of markings representable by a [`LabelSet`].
pub const MAX_LABELS: usize = 32;

/// A subset of the marking set, stored as a bitset over the ground-set order.
///
/// Ordering is lexicographic on the sorted element lists, so `{0,1} < {0,1,2}
/// < {0,2} < {1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LabelSet(pub u32);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_LABELS);
        if n == 32 {
            LabelSet(u32::MAX)
        } else {
            LabelSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        LabelSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        LabelSet(it.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn is_subset(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: LabelSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: LabelSet) -> Self {
        LabelSet(self.0 | other.0)
    }

    pub fn intersection(self, other: LabelSet) -> Self {
        LabelSet(self.0 & other.0)
    }

    pub fn difference(self, other: LabelSet) -> Self {
        LabelSet(self.0 & !other.0)
    }

    /// Complement inside a universe.
    pub fn complement(self, universe: LabelSet) -> Self {
        universe.difference(self)
    }

    pub fn with(self, i: usize) -> Self {
        LabelSet(self.0 | 1 << i)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = LabelSet> {
        let full = self.0;
        let mut cur = Some(0u32);
        std::iter::from_fn(move || {
            let out = cur?;
            cur = if out == full {
                None
            } else {
                Some((out.wrapping_sub(full)) & full)
            };
            Some(LabelSet(out))
        })
    }
}

impl Ord for LabelSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for LabelSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
