//! Dense bit sets over a fixed finite universe `{0, .., n-1}`.

use std::cmp::Ordering;
use std::fmt;

/// Subset of a fixed finite universe, stored as packed bits.
///
/// The universe size is part of the value; binary operations require equal
/// universes. `Ord` is the canonical subset order used everywhere in this
/// crate: smaller sets first, ties broken lexicographically on the sorted
/// list of member indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    universe: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn empty(universe: usize) -> Self {
        BitSet {
            universe,
            words: vec![0u64; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut words = vec![!0u64; universe.div_ceil(64)];
        if let Some(last) = words.last_mut() {
            let rem = universe % 64;
            if rem != 0 {
                *last &= (1u64 << rem) - 1;
            }
        }
        BitSet { universe, words }
    }

    pub fn singleton(universe: usize, i: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Builds a set from the low bits of `mask`; requires `universe <= 64`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64, "mask constructor limited to 64 elements");
        let mut s = Self::empty(universe);
        if universe > 0 {
            let keep = if universe == 64 {
                !0u64
            } else {
                (1u64 << universe) - 1
            };
            s.words[0] = mask & keep;
        }
        s
    }

    /// The low 64 bits as a mask; requires `universe <= 64`.
    pub fn as_mask(&self) -> u64 {
        assert!(self.universe <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "index {i} outside universe {}", self.universe);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.universe);
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn intersect_with(&mut self, other: &Self) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn complement(&self) -> Self {
        let mut out = Self::full(self.universe);
        for (a, b) in out.words.iter_mut().zip(&self.words) {
            *a &= !b;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&i| self.contains(i))
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical order: cardinality first, then lexicographic on the sorted
    /// member list (the set owning the smallest differing index comes first).
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match self.universe.cmp(&other.universe) {
            Ordering::Equal => {}
            c => return c,
        }
        match self.count().cmp(&other.count()) {
            Ordering::Equal => {}
            c => return c,
        }
        for (a, b) in self.words.iter().zip(&other.words) {
            let d = a ^ b;
            if d != 0 {
                let t = d.trailing_zeros();
                return if (a >> t) & 1 == 1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// All subsets of `{0, .., universe-1}` in mask order. Intended for the small
/// carriers this crate works with.
pub fn subsets(universe: usize) -> impl Iterator<Item = BitSet> {
    assert!(
        universe <= 24,
        "subset enumeration is limited to universes of at most 24 elements"
    );
    (0u64..(1u64 << universe)).map(move |m| BitSet::from_mask(universe, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = BitSet::empty(70);
        s.insert(0);
        s.insert(69);
        assert!(s.contains(0) && s.contains(69) && !s.contains(1));
        assert_eq!(s.count(), 2);
        assert_eq!(s.indices(), vec![0, 69]);
        let t = BitSet::from_indices(70, [0, 3]);
        assert_eq!(s.union(&t).count(), 3);
        assert_eq!(s.intersect(&t), BitSet::singleton(70, 0));
        assert!(BitSet::singleton(70, 0).is_subset(&s));
        assert!(!t.is_subset(&s));
        assert_eq!(BitSet::full(70).count(), 70);
        assert_eq!(s.complement().count(), 68);
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let u = 4;
        let a = BitSet::from_indices(u, [0, 3]);
        let b = BitSet::from_indices(u, [1, 2]);
        let c = BitSet::from_indices(u, [1]);
        assert!(c < a, "smaller sets first");
        assert!(a < b, "ties broken on smallest differing member");
        let mut all: Vec<BitSet> = subsets(2).collect();
        all.sort();
        let expected = vec![
            BitSet::empty(2),
            BitSet::singleton(2, 0),
            BitSet::singleton(2, 1),
            BitSet::full(2),
        ];
        assert_eq!(all, expected);
    }

    #[test]
    fn empty_universe() {
        let s = BitSet::empty(0);
        assert!(s.is_empty());
        assert_eq!(s, BitSet::full(0));
        assert_eq!(subsets(0).count(), 1);
    }
}
