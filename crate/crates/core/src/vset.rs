//! Fixed-capacity vertex bitset.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet { words: vec![0; capacity.div_ceil(64)] }
    }

    pub fn from_slice(capacity: usize, items: &[usize]) -> Self {
        let mut s = Self::new(capacity);
        for &v in items {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words.get(v / 64).is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn behaves_like_a_sorted_set(items in proptest::collection::vec(0usize..200, 0..60)) {
            let s = VertexSet::from_slice(200, &items);
            let mut expected = items.clone();
            expected.sort();
            expected.dedup();
            prop_assert_eq!(s.to_vec(), expected.clone());
            prop_assert_eq!(s.len(), expected.len());
            for v in 0..200 {
                prop_assert_eq!(s.contains(v), expected.binary_search(&v).is_ok());
            }
        }
    }

    #[test]
    fn set_algebra() {
        let mut a = VertexSet::from_slice(130, &[1, 64, 129]);
        let b = VertexSet::from_slice(130, &[64, 2]);
        assert!(!a.is_disjoint(&b));
        a.difference_with(&b);
        assert_eq!(a.to_vec(), vec![1, 129]);
        a.union_with(&b);
        assert_eq!(a.to_vec(), vec![1, 2, 64, 129]);
        a.remove(1);
        assert!(!a.contains(1));
    }
}
