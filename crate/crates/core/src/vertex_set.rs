use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest vertex count any hypergraph in this crate may have.
pub const MAX_VERTICES: usize = 512;
const WORDS: usize = MAX_VERTICES / 64;

/// A set of vertex ids below a fixed capacity, stored as a dense bit mask.
///
/// Set algebra between two sets assumes they share a host; the result keeps
/// the larger capacity.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: [u64; WORDS],
    capacity: u16,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity <= MAX_VERTICES, "capacity {capacity} exceeds {MAX_VERTICES}");
        VertexSet { words: [0; WORDS], capacity: capacity as u16 }
    }

    /// All vertices `0..capacity`.
    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for w in 0..capacity / 64 {
            s.words[w] = u64::MAX;
        }
        if !capacity.is_multiple_of(64) {
            s.words[capacity / 64] = (1u64 << (capacity % 64)) - 1;
        }
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(capacity: usize, vertices: I) -> Result<Self> {
        if capacity > MAX_VERTICES {
            return Err(Error::TooLarge(format!("capacity {capacity} exceeds {MAX_VERTICES}")));
        }
        let mut s = Self::new(capacity);
        for v in vertices {
            if v >= capacity {
                return Err(Error::InvalidSet(format!("vertex {v} out of range 0..{capacity}")));
            }
            if !s.insert(v) {
                return Err(Error::InvalidSet(format!("duplicate vertex {v}")));
            }
        }
        Ok(s)
    }

    /// Like [`from_vertices`](Self::from_vertices) but panics on bad input.
    /// Meant for ids that are already known to be valid.
    pub fn of(capacity: usize, vertices: &[usize]) -> Self {
        let mut s = Self::new(capacity);
        for &v in vertices {
            assert!(v < capacity);
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.capacity as usize
    }

    /// Returns true if `v` was not already present.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        debug_assert!(v < self.capacity());
        let (w, b) = (v / 64, v % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.capacity() {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity() && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn zip_with(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        let mut out = VertexSet::new(self.capacity().max(other.capacity()));
        for i in 0..WORDS {
            out.words[i] = f(self.words[i], other.words[i]);
        }
        out
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for i in 0..WORDS {
            self.words[i] |= other.words[i];
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for i in 0..WORDS {
            self.words[i] &= !other.words[i];
        }
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter { set: self, word: 0, bits: self.words[0] }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The `count` smallest members, or `None` if there are fewer.
    pub fn smallest(&self, count: usize) -> Option<Vec<usize>> {
        let v: Vec<usize> = self.iter().take(count).collect();
        (v.len() == count).then_some(v)
    }
}

pub struct Iter<'a> {
    set: &'a VertexSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let b = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * 64 + b);
            }
            self.word += 1;
            if self.word >= WORDS {
                return None;
            }
            self.bits = self.set.words[self.word];
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

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        let cap = v.iter().max().map_or(0, |m| m + 1);
        VertexSet::from_vertices(cap, v).map_err(serde::de::Error::custom)
    }
}
