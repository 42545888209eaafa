//! Fixed-width sets of atom indices.

use std::fmt;

use smallvec::SmallVec;

const WORD: usize = 64;

/// A set of atom indices stored as a little-endian bit vector.
///
/// All sets belonging to one structure share the same word count, so the
/// boolean operations never need to resize.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomSet {
    words: SmallVec<[u64; 4]>,
}

impl AtomSet {
    pub fn words_for(atoms: usize) -> usize {
        atoms.div_ceil(WORD).max(1)
    }

    pub fn empty(atoms: usize) -> Self {
        AtomSet {
            words: SmallVec::from_elem(0, Self::words_for(atoms)),
        }
    }

    pub fn full(atoms: usize) -> Self {
        let mut s = Self::empty(atoms);
        for i in 0..atoms {
            s.insert(i);
        }
        s
    }

    pub fn singleton(atoms: usize, a: usize) -> Self {
        let mut s = Self::empty(atoms);
        s.insert(a);
        s
    }

    pub fn from_indices(atoms: usize, it: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(atoms);
        for a in it {
            s.insert(a);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, a: usize) {
        self.words[a / WORD] |= 1 << (a % WORD);
    }

    #[inline]
    pub fn remove(&mut self, a: usize) {
        self.words[a / WORD] &= !(1 << (a % WORD));
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.words
            .get(a / WORD)
            .is_some_and(|w| w & (1 << (a % WORD)) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The only member, if there is exactly one.
    pub fn single(&self) -> Option<usize> {
        let mut it = self.iter();
        match (it.next(), it.next()) {
            (Some(a), None) => Some(a),
            _ => None,
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn union_with(&mut self, other: &AtomSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersect_with(&mut self, other: &AtomSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    pub fn difference_with(&mut self, other: &AtomSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn intersects(&self, other: &AtomSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
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
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + bit);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
