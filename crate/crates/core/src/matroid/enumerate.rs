//! Exhaustive queries over subsets, encoded as `u64` masks on element indices.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::{check_cap, BinaryMatroid, MatroidError};

pub fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

pub fn mask_indices(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

fn bits_to_mask(v: &crate::gf2::BitVec) -> u64 {
    v.ones().fold(0u64, |m, i| m | (1u64 << i))
}

/// All nonempty cycles (elements of the cycle space), sorted.
pub fn cycles(m: &BinaryMatroid, cap: usize) -> Result<Vec<u64>, MatroidError> {
    check_cap("cycle enumeration", m.len(), cap)?;
    let basis: Vec<u64> = m.cycle_basis().iter().map(bits_to_mask).collect();
    let mut out = Vec::with_capacity((1usize << basis.len()) - 1);
    let mut cur = 0u64;
    // Gray-code walk over all combinations of the basis.
    for step in 1u64..(1u64 << basis.len()) {
        cur ^= basis[step.trailing_zeros() as usize];
        out.push(cur);
    }
    out.sort_unstable();
    Ok(out)
}

/// Minimal nonempty cycles.
pub fn circuits(m: &BinaryMatroid, cap: usize) -> Result<Vec<u64>, MatroidError> {
    Ok(cycles(m, cap)?
        .into_iter()
        .filter(|&c| m.rank_mask(c) + 1 == c.count_ones() as usize)
        .collect())
}

/// All independent sets, in increasing mask order.
pub fn independent_sets(m: &BinaryMatroid, cap: usize) -> Result<Vec<u64>, MatroidError> {
    check_cap("independent set enumeration", m.len(), cap)?;
    let mut out = Vec::new();
    fn grow(m: &BinaryMatroid, set: u64, next: usize, out: &mut Vec<u64>) {
        out.push(set);
        for e in next..m.len() {
            let s = set | (1u64 << e);
            if m.is_independent_mask(s) {
                grow(m, s, e + 1, out);
            }
        }
    }
    grow(m, 0, 0, &mut out);
    out.sort_unstable();
    Ok(out)
}

pub fn bases(m: &BinaryMatroid, cap: usize) -> Result<Vec<u64>, MatroidError> {
    let r = m.full_rank();
    Ok(independent_sets(m, cap)?.into_iter().filter(|s| s.count_ones() as usize == r).collect())
}

/// All flats, found by closing upward from the closure of the empty set.
pub fn flats(m: &BinaryMatroid, cap: usize) -> Result<Vec<u64>, MatroidError> {
    check_cap("flat enumeration", m.len(), cap)?;
    let all = if m.is_empty() { 0 } else { u64::MAX >> (64 - m.len()) };
    let start = m.closure_mask(0);
    let mut seen = BTreeSet::new();
    seen.insert(start);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        let mut rest = all & !f;
        while rest != 0 {
            let e = rest.trailing_zeros();
            rest &= rest - 1;
            let g = m.closure_mask(f | (1u64 << e));
            if seen.insert(g) {
                queue.push_back(g);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Nonempty flats `F` with `M|F` connected.
pub fn connected_flats(m: &BinaryMatroid, cap: usize) -> Result<Vec<u64>, MatroidError> {
    Ok(flats(m, cap)?
        .into_iter()
        .filter(|&f| f != 0 && m.restrict(&mask_indices(f)).is_connected())
        .collect())
}

/// A partition `(A, B)` of the ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Separation {
    pub a: u64,
    pub b: u64,
}

/// First exact `k`-separation: `|A|, |B| >= k` and
/// `r(A) + r(B) - r(E) = k - 1`. Element 0 is always placed in `A` and
/// candidates are scanned in increasing mask order.
pub fn find_separation(m: &BinaryMatroid, k: usize, cap: usize) -> Result<Option<Separation>, MatroidError> {
    check_cap("separation search", m.len(), cap)?;
    let n = m.len();
    if n < 2 * k || k == 0 {
        return Ok(None);
    }
    let all = u64::MAX >> (64 - n);
    let r = m.full_rank();
    // Masks over elements 1..n; element 0 joins A.
    for rest in 0u64..(1u64 << (n - 1)) {
        let a = 1 | (rest << 1);
        let b = all & !a;
        if (a.count_ones() as usize) < k || (b.count_ones() as usize) < k {
            continue;
        }
        if m.rank_mask(a) + m.rank_mask(b) == r + k - 1 {
            return Ok(Some(Separation { a, b }));
        }
    }
    Ok(None)
}

/// No exact 1- or 2-separation.
pub fn is_three_connected(m: &BinaryMatroid, cap: usize) -> Result<bool, MatroidError> {
    Ok(find_separation(m, 1, cap)?.is_none() && find_separation(m, 2, cap)?.is_none())
}

/// Bijection `p` from elements of `a` to elements of `b` mapping circuits
/// onto circuits, if one exists.
pub fn find_isomorphism(a: &BinaryMatroid, b: &BinaryMatroid, cap: usize) -> Result<Option<Vec<usize>>, MatroidError> {
    if a.len() != b.len() || a.full_rank() != b.full_rank() {
        return Ok(None);
    }
    let ca = circuits(a, cap)?;
    let cb = circuits(b, cap)?;
    if ca.len() != cb.len() {
        return Ok(None);
    }
    let cb_set: BTreeSet<u64> = cb.iter().copied().collect();
    let n = a.len();
    // Circuits of `a` grouped by their largest element, so each is checked
    // exactly when it becomes fully assigned.
    let mut by_last: Vec<Vec<u64>> = vec![Vec::new(); n];
    for &c in &ca {
        by_last[63 - c.leading_zeros() as usize].push(c);
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn image(c: u64, perm: &[usize]) -> u64 {
        mask_indices(c).iter().fold(0u64, |m, &i| m | (1u64 << perm[i]))
    }
    fn go(i: usize, n: usize, perm: &mut [usize], used: &mut [bool], by_last: &[Vec<u64>], cb: &BTreeSet<u64>) -> bool {
        if i == n {
            return true;
        }
        for j in 0..n {
            if used[j] {
                continue;
            }
            perm[i] = j;
            if by_last[i].iter().all(|&c| cb.contains(&image(c, perm))) {
                used[j] = true;
                if go(i + 1, n, perm, used, by_last, cb) {
                    return true;
                }
                used[j] = false;
            }
        }
        perm[i] = usize::MAX;
        false
    }
    // Equal circuit counts plus an injective circuit map make it a bijection.
    Ok(if go(0, n, &mut perm, &mut used, &by_last, &cb_set) { Some(perm) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{Graph, DEFAULT_CAP};

    #[test]
    fn k4_counts() {
        // Frozen counts for M(K4): 7 circuits (4 triangles, 3 squares),
        // 16 spanning trees, 15 flats, 38 independent sets.
        let m = Graph::complete(4).cycle_matroid();
        assert_eq!(circuits(&m, DEFAULT_CAP).unwrap().len(), 7);
        assert_eq!(bases(&m, DEFAULT_CAP).unwrap().len(), 16);
        assert_eq!(flats(&m, DEFAULT_CAP).unwrap().len(), 15);
        assert_eq!(independent_sets(&m, DEFAULT_CAP).unwrap().len(), 38);
        // Connected flats of a graphic matroid of a complete graph are the
        // edge sets of complete subgraphs on at least two vertices: 6 + 4 + 1.
        assert_eq!(connected_flats(&m, DEFAULT_CAP).unwrap().len(), 11);
    }

    #[test]
    fn k5_connected_flats() {
        let m = Graph::complete(5).cycle_matroid();
        assert_eq!(connected_flats(&m, DEFAULT_CAP).unwrap().len(), 10 + 10 + 5 + 1);
        assert_eq!(bases(&m, DEFAULT_CAP).unwrap().len(), 125);
    }

    #[test]
    fn separations_of_k4() {
        let m = Graph::complete(4).cycle_matroid();
        assert!(find_separation(&m, 1, DEFAULT_CAP).unwrap().is_none());
        assert!(find_separation(&m, 2, DEFAULT_CAP).unwrap().is_none());
        assert!(is_three_connected(&m, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn two_triangles_sharing_an_edge_have_a_two_separation() {
        let g = Graph::from_edges(&[
            ("a", "1", "2"),
            ("b", "2", "3"),
            ("c", "1", "3"),
            ("d", "2", "4"),
            ("e", "3", "4"),
        ])
        .unwrap();
        let sep = find_separation(&g.cycle_matroid(), 2, DEFAULT_CAP).unwrap().unwrap();
        let m = g.cycle_matroid();
        assert_eq!(m.rank_mask(sep.a) + m.rank_mask(sep.b), m.full_rank() + 1);
    }

    #[test]
    fn k4_is_self_dual() {
        let m = Graph::complete(4).cycle_matroid();
        assert!(find_isomorphism(&m, &m.dual(), DEFAULT_CAP).unwrap().is_some());
        let k5 = Graph::complete(5).cycle_matroid();
        assert!(find_isomorphism(&k5, &k5.dual(), DEFAULT_CAP).unwrap().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let m = Graph::complete(8).cycle_matroid();
        assert!(matches!(circuits(&m, 24), Err(MatroidError::TooLarge { .. })));
    }
}
