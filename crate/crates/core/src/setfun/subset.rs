use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A subset of a group of order `n`, stored as a bitset.
///
/// Doubles as the 0/1 characteristic function of the set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    order: usize,
    words: Vec<u64>,
    len: usize,
}

impl Subset {
    pub fn empty(order: usize) -> Self {
        Subset {
            order,
            words: vec![0; order.div_ceil(64)],
            len: 0,
        }
    }

    pub fn full(order: usize) -> Self {
        let mut s = Self::empty(order);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        if order % 64 != 0 {
            if let Some(last) = s.words.last_mut() {
                *last = (1u64 << (order % 64)) - 1;
            }
        }
        s.len = order;
        s
    }

    pub fn from_indices(order: usize, indices: &[usize]) -> Result<Self> {
        let mut s = Self::empty(order);
        for &i in indices {
            if i >= order {
                return Err(Error::OutOfRange { index: i, order });
            }
            s.insert(i);
        }
        Ok(s)
    }

    pub fn from_fn(order: usize, mut keep: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(order);
        for i in 0..order {
            if keep(i) {
                s.insert(i);
            }
        }
        s
    }

    /// Order of the ambient group.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn density(&self) -> f64 {
        if self.order == 0 {
            0.0
        } else {
            self.len as f64 / self.order as f64
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.order && self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    /// Returns whether the element was newly inserted.
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.order, "index {i} out of range {}", self.order);
        let (w, b) = (i >> 6, 1u64 << (i & 63));
        let fresh = self.words[w] & b == 0;
        if fresh {
            self.words[w] |= b;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, i: usize) -> bool {
        if i >= self.order {
            return false;
        }
        let (w, b) = (i >> 6, 1u64 << (i & 63));
        let present = self.words[w] & b != 0;
        if present {
            self.words[w] &= !b;
            self.len -= 1;
        }
        present
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection_len(&self, other: &Subset) -> usize {
        assert_eq!(self.order, other.order);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn complement(&self) -> Subset {
        Subset::full(self.order).zip_words(self, |a, b| a & !b)
    }

    fn zip_words(&self, other: &Subset, f: impl Fn(u64, u64) -> u64) -> Subset {
        assert_eq!(self.order, other.order, "subsets of different groups");
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        Subset {
            order: self.order,
            words,
            len,
        }
    }

    /// `{s⁻¹ : s ∈ self}`
    pub fn inverse(&self, g: &FiniteGroup) -> Subset {
        self.map(g, |s| g.inv(s))
    }

    /// `xS = {x·s : s ∈ S}`
    pub fn left_translate(&self, g: &FiniteGroup, x: usize) -> Subset {
        self.map(g, |s| g.mult(x, s))
    }

    /// `Sx = {s·x : s ∈ S}`
    pub fn right_translate(&self, g: &FiniteGroup, x: usize) -> Subset {
        self.map(g, |s| g.mult(s, x))
    }

    /// Image of the set under a bijection of the group.
    fn map(&self, g: &FiniteGroup, f: impl Fn(usize) -> usize) -> Subset {
        assert_eq!(self.order, g.order());
        let mut out = Subset::empty(self.order);
        for s in self.iter() {
            out.insert(f(s));
        }
        out
    }
}

/// On-disk subset: `{"group": descriptor, "elements": [sorted indices]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetFile {
    pub group: String,
    pub elements: Vec<usize>,
}

impl SubsetFile {
    pub fn new(group: &FiniteGroup, set: &Subset) -> Self {
        SubsetFile {
            group: group.descriptor().to_string(),
            elements: set.to_indices(),
        }
    }

    pub fn to_subset(&self, group: &FiniteGroup) -> Result<Subset> {
        Subset::from_indices(group.order(), &self.elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_empty() {
        for n in [1, 63, 64, 65, 130] {
            let f = Subset::full(n);
            assert_eq!(f.len(), n);
            assert_eq!(f.iter().count(), n);
            assert!(!f.contains(n));
            assert_eq!(f.complement(), Subset::empty(n));
            assert_eq!(f.density(), 1.0);
        }
    }

    #[test]
    fn translates_in_cyclic_group() {
        let g = FiniteGroup::from_descriptor("cyclic:6").unwrap();
        let s = Subset::from_indices(6, &[0, 1]).unwrap();
        assert_eq!(s.left_translate(&g, 5).to_indices(), vec![0, 5]);
        assert_eq!(s.inverse(&g).to_indices(), vec![0, 5]);
        assert!(Subset::from_indices(6, &[6]).is_err());
    }

    #[test]
    fn file_roundtrip() {
        let g = FiniteGroup::from_descriptor("sym:3").unwrap();
        let s = Subset::from_indices(6, &[4, 1]).unwrap();
        let file = SubsetFile::new(&g, &s);
        let text = serde_json::to_string(&file).unwrap();
        assert_eq!(text, r#"{"group":"sym:3","elements":[1,4]}"#);
        let back: SubsetFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_subset(&g).unwrap(), s);
    }

    proptest! {
        #[test]
        fn cardinality_tracks_bits(n in 1usize..200, ops in proptest::collection::vec((any::<bool>(), 0usize..200), 0..100)) {
            let mut s = Subset::empty(n);
            let mut reference = std::collections::BTreeSet::new();
            for (add, i) in ops {
                let i = i % n;
                if add {
                    s.insert(i);
                    reference.insert(i);
                } else {
                    s.remove(i);
                    reference.remove(&i);
                }
            }
            prop_assert_eq!(s.len(), reference.len());
            prop_assert_eq!(s.to_indices(), reference.iter().copied().collect::<Vec<_>>());
            let c = s.complement();
            prop_assert_eq!(c.len() + s.len(), n);
            prop_assert_eq!(c.intersection_len(&s), 0);
            prop_assert_eq!(c.union(&s).len(), n);
        }
    }
}
