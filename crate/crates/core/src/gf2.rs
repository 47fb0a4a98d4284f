//! Dense bit vectors over GF(2) and an incremental xor basis.

use alloc::vec;
use alloc::vec::Vec;

/// Fixed-length bit vector; addition is xor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    /// Restrict to the given coordinates, in the given order.
    pub fn select(&self, coords: &[usize]) -> BitVec {
        BitVec::from_indices(
            coords.len(),
            coords.iter().enumerate().filter(|(_, &c)| self.get(c)).map(|(i, _)| i),
        )
    }
}

/// Row-reduce `rows` in place to reduced row echelon form and drop zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<BitVec>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Incrementally built basis of a subspace, kept in echelon form keyed by
/// leading bit.
#[derive(Clone, Debug, Default)]
pub struct XorBasis {
    vectors: Vec<(usize, BitVec)>,
}

impl XorBasis {
    pub fn new() -> Self {
        XorBasis { vectors: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Reduce `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (lead, b) in &self.vectors {
            if v.get(*lead) {
                v.xor_assign(b);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let v = self.reduce(v);
        let Some(lead) = v.first_one() else {
            return false;
        };
        for (_, b) in self.vectors.iter_mut() {
            if b.get(lead) {
                b.xor_assign(&v);
            }
        }
        self.vectors.push((lead, v));
        true
    }

    pub fn vectors(&self) -> impl Iterator<Item = &BitVec> {
        self.vectors.iter().map(|(_, v)| v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_of_dependent_rows() {
        let mut rows = vec![
            BitVec::from_bits(&[true, true, false]),
            BitVec::from_bits(&[false, true, true]),
            BitVec::from_bits(&[true, false, true]),
        ];
        let pivots = rref(&mut rows);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rows[0], BitVec::from_bits(&[true, false, true]));
        assert_eq!(rows[1], BitVec::from_bits(&[false, true, true]));
    }

    #[test]
    fn ones_iterates_across_words() {
        let v = BitVec::from_indices(130, [0, 63, 64, 129]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(v.count_ones(), 4);
    }

    #[test]
    fn basis_membership() {
        let mut b = XorBasis::new();
        assert!(b.insert(&BitVec::from_bits(&[true, true, false])));
        assert!(b.insert(&BitVec::from_bits(&[false, true, true])));
        assert!(!b.insert(&BitVec::from_bits(&[true, false, true])));
        assert_eq!(b.rank(), 2);
    }
}
