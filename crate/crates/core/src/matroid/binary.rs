use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{is_valid_name, MatroidError};
use crate::gf2::{rref, BitVec, XorBasis};

/// A binary matroid given by the row space of a 0/1 matrix.
///
/// Rows are kept in reduced row echelon form with full row rank, so the
/// number of rows is the rank. Columns are cached as vectors in the row
/// coordinates, which makes subset rank an xor-basis computation.
#[derive(Clone, Debug)]
pub struct BinaryMatroid {
    elements: Vec<String>,
    index: BTreeMap<String, usize>,
    rows: Vec<BitVec>,
    columns: Vec<BitVec>,
}

/// Result of taking a minor. `dropped` lists contracted elements that were
/// spanned by the rest of the contraction set and were deleted instead.
#[derive(Clone, Debug)]
pub struct Minor {
    pub matroid: BinaryMatroid,
    pub dropped: Vec<String>,
}

impl BinaryMatroid {
    /// Build from element names and matrix rows (each of length `elements.len()`).
    pub fn from_rows(elements: Vec<String>, rows: Vec<BitVec>) -> Result<Self, MatroidError> {
        let mut index = BTreeMap::new();
        for (i, e) in elements.iter().enumerate() {
            if !is_valid_name(e) {
                return Err(MatroidError::InvalidName(e.clone()));
            }
            if index.insert(e.clone(), i).is_some() {
                return Err(MatroidError::DuplicateElement(e.clone()));
            }
        }
        for r in &rows {
            if r.len() != elements.len() {
                return Err(MatroidError::DimensionMismatch { expected: elements.len(), found: r.len() });
            }
        }
        let mut rows = rows;
        rref(&mut rows);
        let columns = (0..elements.len())
            .map(|c| BitVec::from_indices(rows.len(), (0..rows.len()).filter(|&r| rows[r].get(c))))
            .collect();
        Ok(BinaryMatroid { elements, index, rows, columns })
    }

    /// Convenience constructor from 0/1 rows given as strings such as `"1101"`.
    pub fn from_strings(elements: &[&str], rows: &[&str]) -> Result<Self, MatroidError> {
        let names: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
        let mut bits = Vec::new();
        for r in rows {
            let v: Vec<bool> = r.chars().filter(|c| !c.is_whitespace()).map(|c| c == '1').collect();
            if v.len() != names.len() {
                return Err(MatroidError::DimensionMismatch { expected: names.len(), found: v.len() });
            }
            bits.push(BitVec::from_bits(&v));
        }
        Self::from_rows(names, bits)
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, MatroidError> {
        self.index.get(name).copied().ok_or_else(|| MatroidError::UnknownElement(name.to_string()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>, MatroidError> {
        names.iter().map(|n| self.index_of(n.as_ref())).collect()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Reduced row echelon representation; the row count equals the rank.
    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn column(&self, i: usize) -> &BitVec {
        &self.columns[i]
    }

    pub fn full_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self, set: &[usize]) -> usize {
        let mut b = XorBasis::new();
        for &i in set {
            b.insert(&self.columns[i]);
        }
        b.rank()
    }

    pub fn rank_mask(&self, mask: u64) -> usize {
        let mut b = XorBasis::new();
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            if b.insert(&self.columns[i]) && b.rank() == self.rows.len() {
                break;
            }
        }
        b.rank()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.rank(set) == set.len()
    }

    pub fn is_independent_mask(&self, mask: u64) -> bool {
        let mut b = XorBasis::new();
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            if !b.insert(&self.columns[i]) {
                return false;
            }
        }
        true
    }

    /// All elements whose column lies in the span of `set`.
    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        let mut b = XorBasis::new();
        for &i in set {
            b.insert(&self.columns[i]);
        }
        (0..self.len()).filter(|&e| b.contains(&self.columns[e])).collect()
    }

    pub fn closure_mask(&self, mask: u64) -> u64 {
        let mut b = XorBasis::new();
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            b.insert(&self.columns[i]);
        }
        let mut out = 0u64;
        for e in 0..self.len() {
            if b.contains(&self.columns[e]) {
                out |= 1 << e;
            }
        }
        out
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.columns[e].is_zero()
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        let rest: Vec<usize> = (0..self.len()).filter(|&i| i != e).collect();
        self.rank(&rest) < self.full_rank()
    }

    /// A set is a cycle (disjoint union of circuits) iff it is orthogonal to
    /// every row.
    pub fn is_cycle(&self, set: &BitVec) -> bool {
        self.rows.iter().all(|r| {
            let mut parity = 0u32;
            for i in set.ones() {
                if r.get(i) {
                    parity ^= 1;
                }
            }
            parity == 0
        })
    }

    pub fn is_circuit(&self, set: &[usize]) -> bool {
        !set.is_empty() && self.rank(set) + 1 == set.len() && {
            let bits = BitVec::from_indices(self.len(), set.iter().copied());
            self.is_cycle(&bits)
                && set.iter().all(|&x| {
                    let rest: Vec<usize> = set.iter().copied().filter(|&y| y != x).collect();
                    self.is_independent(&rest)
                })
        }
    }

    /// The orthogonal complement of the row space: rows of `[D^T | I]` when
    /// the representation is `[I | D]`. The result has the same element order.
    pub fn dual(&self) -> BinaryMatroid {
        let n = self.len();
        let pivots: Vec<usize> = self.rows.iter().map(|r| r.first_one().expect("rref rows are nonzero")).collect();
        let is_pivot = {
            let mut v = alloc::vec![false; n];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut rows = Vec::new();
        for j in 0..n {
            if is_pivot[j] {
                continue;
            }
            let mut r = BitVec::zeros(n);
            r.set(j, true);
            for (k, row) in self.rows.iter().enumerate() {
                if row.get(j) {
                    r.set(pivots[k], true);
                }
            }
            rows.push(r);
        }
        BinaryMatroid::from_rows(self.elements.clone(), rows).expect("dual keeps valid names")
    }

    /// Basis of the cycle space (the dual row space), as element bit vectors.
    pub fn cycle_basis(&self) -> Vec<BitVec> {
        self.dual().rows
    }

    /// Restriction to `keep`, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> BinaryMatroid {
        let names = keep.iter().map(|&i| self.elements[i].clone()).collect();
        let rows = self.rows.iter().map(|r| r.select(keep)).collect();
        BinaryMatroid::from_rows(names, rows).expect("restriction keeps valid names")
    }

    pub fn delete(&self, del: &[usize]) -> BinaryMatroid {
        let keep: Vec<usize> = (0..self.len()).filter(|i| !del.contains(i)).collect();
        self.restrict(&keep)
    }

    /// Contract an independent set.
    fn contract_independent(&self, con: &[usize]) -> BinaryMatroid {
        let d = self.dual();
        d.delete(con).dual()
    }

    /// `M / contract \ delete`. A dependent contraction set contracts a maximal
    /// independent subset (greedy in the given order) and deletes the rest.
    pub fn minor(&self, contract: &[usize], delete: &[usize]) -> Result<Minor, MatroidError> {
        if let Some(&x) = contract.iter().find(|x| delete.contains(x)) {
            return Err(MatroidError::OverlappingMinor(self.elements[x].clone()));
        }
        let mut basis = XorBasis::new();
        let mut indep = Vec::new();
        let mut dropped = Vec::new();
        for &c in contract {
            if basis.insert(&self.columns[c]) {
                indep.push(c);
            } else {
                dropped.push(c);
            }
        }
        let contracted = self.contract_independent(&indep);
        let gone: Vec<&str> = delete.iter().chain(dropped.iter()).map(|&i| self.name(i)).collect();
        let del: Vec<usize> = gone.iter().map(|n| contracted.index_of(n).expect("still present")).collect();
        Ok(Minor {
            matroid: contracted.delete(&del),
            dropped: dropped.into_iter().map(|i| self.elements[i].clone()).collect(),
        })
    }

    pub fn minor_by_name<S: AsRef<str>>(&self, contract: &[S], delete: &[S]) -> Result<Minor, MatroidError> {
        let c = self.indices_of(contract)?;
        let d = self.indices_of(delete)?;
        self.minor(&c, &d)
    }

    /// Connected components via fundamental circuits of a greedy basis.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        let mut basis = Vec::new();
        let mut xb = XorBasis::new();
        for e in 0..n {
            if xb.insert(&self.columns[e]) {
                basis.push(e);
            }
        }
        for e in 0..n {
            if basis.contains(&e) || self.is_loop(e) {
                continue;
            }
            for f in self.fundamental_circuit(&basis, e) {
                let (a, b) = (find(&mut parent, e), find(&mut parent, f));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in 0..n {
            let r = find(&mut parent, e);
            groups.entry(r).or_default().push(e);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Unique circuit in `basis + e`, where `basis` is a basis of the matroid
    /// (or of any flat containing `e`).
    pub fn fundamental_circuit(&self, basis: &[usize], e: usize) -> Vec<usize> {
        // Solve sum of basis columns = column e over GF(2) by elimination with
        // coefficient tracking.
        let k = basis.len();
        let mut rows: Vec<(BitVec, BitVec)> = Vec::new();
        for (j, &b) in basis.iter().enumerate() {
            let mut v = self.columns[b].clone();
            let mut coef = BitVec::from_indices(k, [j]);
            for (lead_v, lead_c) in rows.iter() {
                let lead = lead_v.first_one().unwrap();
                if v.get(lead) {
                    v.xor_assign(lead_v);
                    coef.xor_assign(lead_c);
                }
            }
            rows.push((v, coef));
        }
        let mut target = self.columns[e].clone();
        let mut coef = BitVec::zeros(k);
        for (lead_v, lead_c) in rows.iter() {
            let lead = lead_v.first_one().unwrap();
            if target.get(lead) {
                target.xor_assign(lead_v);
                coef.xor_assign(lead_c);
            }
        }
        debug_assert!(target.is_zero(), "element must be spanned by the basis");
        let mut out: Vec<usize> = coef.ones().map(|j| basis[j]).collect();
        out.push(e);
        out.sort_unstable();
        out
    }

    /// Non-trivial parallel classes (size at least two) and the simple
    /// matroid keeping the first element of each class and no loops.
    pub fn simplify(&self) -> (BinaryMatroid, Vec<Vec<String>>) {
        let mut classes: BTreeMap<&BitVec, Vec<usize>> = BTreeMap::new();
        for e in 0..self.len() {
            if !self.is_loop(e) {
                classes.entry(&self.columns[e]).or_default().push(e);
            }
        }
        let mut keep: Vec<usize> = classes.values().map(|c| c[0]).collect();
        keep.sort_unstable();
        let mut nontrivial: Vec<Vec<String>> = classes
            .values()
            .filter(|c| c.len() > 1)
            .map(|c| c.iter().map(|&i| self.elements[i].clone()).collect())
            .collect();
        nontrivial.sort();
        (self.restrict(&keep), nontrivial)
    }

    /// Rename one element; the representation is unchanged.
    pub fn rename(&mut self, old: &str, new: &str) -> Result<(), MatroidError> {
        if !is_valid_name(new) {
            return Err(MatroidError::InvalidName(new.to_string()));
        }
        let i = self.index_of(old)?;
        if old == new {
            return Ok(());
        }
        if self.index.contains_key(new) {
            return Err(MatroidError::DuplicateElement(new.to_string()));
        }
        self.index.remove(old);
        self.index.insert(new.to_string(), i);
        self.elements[i] = new.to_string();
        Ok(())
    }

    /// Row space with columns sorted by element name, in reduced echelon form.
    /// Two matroids on the same names represent the same matroid iff their
    /// canonical forms agree (binary matroids are uniquely representable).
    pub fn canonical(&self) -> (Vec<String>, Vec<BitVec>) {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.elements[a].cmp(&self.elements[b]));
        let mut rows: Vec<BitVec> = self.rows.iter().map(|r| r.select(&order)).collect();
        rref(&mut rows);
        (order.iter().map(|&i| self.elements[i].clone()).collect(), rows)
    }

    pub fn same_matroid(&self, other: &BinaryMatroid) -> bool {
        self.canonical() == other.canonical()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Graph;

    fn triangle() -> BinaryMatroid {
        Graph::from_edges(&[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")]).unwrap().cycle_matroid()
    }

    #[test]
    fn triangle_ranks() {
        let m = triangle();
        assert_eq!(m.full_rank(), 2);
        assert_eq!(m.rank(&[0, 1, 2]), 2);
        assert!(m.is_independent(&[0, 2]));
        assert!(m.is_circuit(&[0, 1, 2]));
        assert_eq!(m.closure(&[0, 1]), vec![0, 1, 2]);
    }

    #[test]
    fn dual_of_triangle_is_rank_one() {
        let d = triangle().dual();
        assert_eq!(d.full_rank(), 1);
        assert_eq!(d.rank(&[0]), 1);
        assert!(d.is_circuit(&[0, 1]));
    }

    #[test]
    fn contracting_a_dependent_set_drops_the_spanned_element() {
        let m = triangle();
        let minor = m.minor(&[0, 1, 2], &[]).unwrap();
        assert_eq!(minor.matroid.len(), 0);
        assert_eq!(minor.dropped, vec!["c".to_string()]);
    }

    #[test]
    fn fundamental_circuit_in_triangle() {
        assert_eq!(triangle().fundamental_circuit(&[0, 1], 2), vec![0, 1, 2]);
    }

    #[test]
    fn simplify_reports_parallel_class() {
        let m = BinaryMatroid::from_strings(&["a", "b", "c", "z"], &["1100", "0010"]).unwrap();
        let (s, classes) = m.simplify();
        assert_eq!(classes, vec![vec!["a".to_string(), "b".to_string()]]);
        assert_eq!(s.elements(), &["a".to_string(), "c".to_string()]);
    }

    #[test]
    fn rejects_bad_names() {
        assert!(matches!(
            BinaryMatroid::from_strings(&["a", "a"], &["11"]),
            Err(MatroidError::DuplicateElement(_))
        ));
        assert!(matches!(BinaryMatroid::from_strings(&["a b"], &["1"]), Err(MatroidError::InvalidName(_))));
    }
}
