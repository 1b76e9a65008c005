use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A set of vertex indices, stored as a little-endian multi-word bitset.
///
/// Trailing zero words are always trimmed, so two faces with the same
/// members compare and hash equal regardless of how they were built.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Face {
    words: SmallVec<[u64; 1]>,
}

impl Face {
    /// The empty face.
    pub fn empty() -> Self {
        Face::default()
    }

    pub fn singleton(v: usize) -> Self {
        let mut f = Face::empty();
        f.insert(v);
        f
    }

    /// Face with exactly the bits of `mask` set (vertices 0..64).
    pub fn from_mask(mask: u64) -> Self {
        let mut words = SmallVec::new();
        if mask != 0 {
            words.push(mask);
        }
        Face { words }
    }

    /// Low 64 bits as a mask, or `None` if any member is >= 64.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: usize) {
        let (w, b) = (v / 64, v % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, v: usize) {
        let (w, b) = (v / 64, v % 64);
        if w < self.words.len() {
            self.words[w] &= !(1 << b);
            self.trim();
        }
    }

    pub fn with(&self, v: usize) -> Self {
        let mut f = self.clone();
        f.insert(v);
        f
    }

    pub fn without(&self, v: usize) -> Self {
        let mut f = self.clone();
        f.remove(v);
        f
    }

    pub fn contains(&self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        self.words.get(w).is_some_and(|x| x & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `|F| - 1`; the empty face has dimension -1.
    pub fn dim(&self) -> isize {
        self.len() as isize - 1
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        self.words.iter().enumerate().all(|(i, &w)| {
            let o = other.words.get(i).copied().unwrap_or(0);
            w & !o == 0
        })
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &Face) -> Face {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| {
                self.words.get(i).copied().unwrap_or(0) | other.words.get(i).copied().unwrap_or(0)
            })
            .collect();
        Face { words }
    }

    pub fn intersection(&self, other: &Face) -> Face {
        let mut f = Face {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        };
        f.trim();
        f
    }

    pub fn difference(&self, other: &Face) -> Face {
        let mut f = Face {
            words: self
                .words
                .iter()
                .enumerate()
                .map(|(i, &w)| w & !other.words.get(i).copied().unwrap_or(0))
                .collect(),
        };
        f.trim();
        f
    }

    /// Members in increasing order.
    pub fn iter(&self) -> FaceIter<'_> {
        FaceIter {
            words: &self.words,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn max_vertex(&self) -> Option<usize> {
        let (i, w) = self.words.iter().enumerate().rev().find(|(_, w)| **w != 0)?;
        Some(i * 64 + 63 - w.leading_zeros() as usize)
    }
}

impl FromIterator<usize> for Face {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut f = Face::empty();
        for v in iter {
            f.insert(v);
        }
        f
    }
}

pub struct FaceIter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for FaceIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let b = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + b);
            }
            self.word += 1;
            self.current = *self.words.get(self.word)?;
        }
    }
}

/// Faces order first by cardinality, then lexicographically by their sorted
/// member lists. This is the column/row order used for boundary matrices.
impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiword_members_round_trip() {
        let f: Face = [0, 5, 63, 64, 130].into_iter().collect();
        assert_eq!(f.iter().collect::<Vec<_>>(), vec![0, 5, 63, 64, 130]);
        assert_eq!(f.len(), 5);
        assert_eq!(f.max_vertex(), Some(130));
        assert_eq!(f.to_mask(), None);
        assert_eq!(f.without(130).without(64).to_mask(), Some((1 << 63) | (1 << 5) | 1));
    }

    #[test]
    fn trimming_keeps_equality_canonical() {
        let a = Face::singleton(100).without(100);
        assert_eq!(a, Face::empty());
        assert!(a.is_empty());
        assert_eq!(a.dim(), -1);
    }

    #[test]
    fn subset_and_disjoint() {
        let a: Face = [1, 70].into_iter().collect();
        let b: Face = [1, 2, 70].into_iter().collect();
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert!(Face::empty().is_subset(&a));
        assert!(a.is_disjoint(&Face::singleton(3)));
        assert!(!a.is_disjoint(&b));
        assert_eq!(b.difference(&a), Face::singleton(2));
        assert_eq!(a.union(&Face::singleton(2)), b);
        assert_eq!(b.intersection(&Face::singleton(70)), Face::singleton(70));
    }

    #[test]
    fn order_is_by_size_then_lex() {
        let mut v: Vec<Face> = vec![
            [1, 2].into_iter().collect(),
            [0].into_iter().collect(),
            [0, 3].into_iter().collect(),
            Face::empty(),
        ];
        v.sort();
        let rendered: Vec<Vec<usize>> = v.iter().map(|f| f.iter().collect()).collect();
        assert_eq!(rendered, vec![vec![], vec![0], vec![0, 3], vec![1, 2]]);
    }
}
