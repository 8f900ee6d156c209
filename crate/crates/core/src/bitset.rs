//! Fixed-capacity bit sets over dense argument or claim indices.

use smallvec::{smallvec, SmallVec};
use std::cmp::Ordering;
use std::fmt;

/// A set of indices `0..capacity`. Two sets are only meaningfully compared
/// when they share a capacity, which is always the case inside one framework.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitSet {
    words: SmallVec<[u64; 2]>,
    cap: usize,
}

impl BitSet {
    pub fn new(cap: usize) -> Self {
        BitSet {
            words: smallvec![0; cap.div_ceil(64)],
            cap,
        }
    }

    pub fn full(cap: usize) -> Self {
        let mut s = BitSet::new(cap);
        for i in 0..cap {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(cap: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = BitSet::new(cap);
        for i in idx {
            s.insert(i);
        }
        s
    }

    /// Builds a set from the low `cap` bits of `mask`.
    pub fn from_mask(cap: usize, mask: u64) -> Self {
        debug_assert!(cap <= 64);
        let mut s = BitSet::new(cap);
        if cap > 0 {
            s.words[0] = if cap == 64 { mask } else { mask & ((1u64 << cap) - 1) };
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.cap
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        debug_assert!(i < self.cap);
        let (w, b) = (i / 64, i % 64);
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !had
    }

    #[inline]
    pub fn remove(&mut self, i: usize) -> bool {
        debug_assert!(i < self.cap);
        let (w, b) = (i / 64, i % 64);
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        had
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.cap && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Strict inclusion.
    pub fn is_proper_subset(&self, other: &BitSet) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Lexicographic comparison of the ascending element sequences,
    /// so that `{0} < {0,1} < {1}`.
    pub fn cmp_lex(&self, other: &BitSet) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// The low 64 bits, for small sets used as masks.
    pub fn low_word(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}
