//! Fixed-capacity bit vectors over dense vertex ids.
//!
//! Every set built for a graph on `n` vertices carries `max(1, ceil(n / 64))`
//! words, so sets created for the same graph always compare and hash
//! consistently. Graphs with at most 64 vertices keep their sets inline.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: SmallVec<[u64; 1]>,
}

#[inline]
fn word_count(n: usize) -> usize {
    n.div_ceil(WORD_BITS).max(1)
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            words: SmallVec::from_elem(0, word_count(n)),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * WORD_BITS;
            if n >= lo + WORD_BITS {
                *w = u64::MAX;
            } else if n > lo {
                *w = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    pub fn singleton(n: usize, v: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(v);
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Self {
        let mut s = Self::empty(n);
        for v in it {
            debug_assert!(v < n, "vertex {v} out of range for n = {n}");
            s.insert(v);
        }
        s
    }

    /// Builds a set from raw words; bits at or beyond `n` are cleared.
    pub fn from_words(n: usize, words: &[u64]) -> Self {
        let mut s = Self::empty(n);
        for (dst, src) in s.words.iter_mut().zip(words) {
            *dst = *src;
        }
        s.intersect_with(&Self::full(n));
        s
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / WORD_BITS] &= !(1u64 << (v % WORD_BITS));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / WORD_BITS)
            .is_some_and(|w| w >> (v % WORD_BITS) & 1 == 1)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn without(&self, v: usize) -> VertexSet {
        let mut s = self.clone();
        s.remove(v);
        s
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        !self.is_disjoint(other)
    }

    /// Smallest vertex in the set.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words[0],
        }
    }
}

/// Calls `f` on every `k`-subset of `0..n`, in lexicographic order of the
/// sorted index tuples.
pub fn for_each_subset_of_size<F: FnMut(&VertexSet)>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut set = VertexSet::from_vertices(n, idx.iter().copied());
    loop {
        f(&set);
        // rightmost index that can still move
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        for &v in &idx[i..] {
            set.remove(v);
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
        for &v in &idx[i..] {
            set.insert(v);
        }
    }
}

/// `C(n, k)` as `u128`, saturating.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

impl Ord for VertexSet {
    /// Orders sets by their characteristic vector read as an unsigned
    /// integer, highest vertex most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD_BITS + bit);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_masks_tail_bits() {
        let s = VertexSet::full(5);
        assert_eq!(s.words(), &[0b11111]);
        assert_eq!(VertexSet::full(64).words(), &[u64::MAX]);
        let big = VertexSet::full(70);
        assert_eq!(big.words(), &[u64::MAX, 0b111111]);
        assert_eq!(big.len(), 70);
    }

    #[test]
    fn from_words_clears_out_of_range_bits() {
        let s = VertexSet::from_words(3, &[0xff]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn ordering_is_numeric() {
        let a = VertexSet::from_vertices(70, [0, 1, 2]);
        let b = VertexSet::from_vertices(70, [65]);
        assert!(a < b);
        let c = VertexSet::from_vertices(8, [3]);
        let d = VertexSet::from_vertices(8, [0, 1]);
        assert!(d < c);
    }

    #[test]
    fn multi_word_iteration() {
        let s = VertexSet::from_vertices(130, [0, 63, 64, 129]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.without(0).first(), Some(63));
        assert!(VertexSet::empty(130).first().is_none());
    }

    #[test]
    fn subsets_of_size_are_lexicographic_and_complete() {
        let mut seen = Vec::new();
        for_each_subset_of_size(5, 2, |s| seen.push(s.iter().collect::<Vec<_>>()));
        assert_eq!(seen.len(), 10);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[1], vec![0, 2]);
        assert_eq!(seen[9], vec![3, 4]);
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);

        let mut empty = 0;
        for_each_subset_of_size(4, 0, |s| {
            assert!(s.is_empty());
            empty += 1;
        });
        assert_eq!(empty, 1);
        for_each_subset_of_size(3, 4, |_| panic!("no 4-subsets of 3 elements"));

        for n in 0..10 {
            for k in 0..=n {
                let mut c = 0u128;
                for_each_subset_of_size(n, k, |s| {
                    assert_eq!(s.len(), k);
                    c += 1;
                });
                assert_eq!(c, binomial(n, k));
            }
        }
        assert_eq!(binomial(20, 8), 125_970);
    }

    fn arb_set(n: usize) -> impl Strategy<Value = VertexSet> {
        proptest::collection::vec(0..n, 0..n).prop_map(move |vs| VertexSet::from_vertices(n, vs))
    }

    proptest! {
        #[test]
        fn algebra_matches_btreeset(a in arb_set(100), b in arb_set(100)) {
            use std::collections::BTreeSet;
            let sa: BTreeSet<usize> = a.iter().collect();
            let sb: BTreeSet<usize> = b.iter().collect();
            prop_assert_eq!(a.union(&b).iter().collect::<BTreeSet<_>>(), &sa | &sb);
            prop_assert_eq!(a.intersection(&b).iter().collect::<BTreeSet<_>>(), &sa & &sb);
            prop_assert_eq!(a.difference(&b).iter().collect::<BTreeSet<_>>(), &sa - &sb);
            prop_assert_eq!(a.is_subset(&b), sa.is_subset(&sb));
            prop_assert_eq!(a.len(), sa.len());
            prop_assert!(a.union(&b).is_subset(&VertexSet::full(100)));
        }
    }
}
