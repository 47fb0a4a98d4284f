use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::DecompositionError;
use crate::gf2::{rref, BitVec};
use crate::matroid::BinaryMatroid;

/// Kind of sum determined by the size of the shared set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumKind {
    One,
    Two,
    Three,
}

impl SumKind {
    pub fn from_overlap(size: usize) -> Result<Self, DecompositionError> {
        match size {
            0 => Ok(SumKind::One),
            1 => Ok(SumKind::Two),
            3 => Ok(SumKind::Three),
            n => Err(DecompositionError::InvalidOverlap(n)),
        }
    }
}

/// `T` is a triangle (3-element circuit) of `m` containing no cocircuit,
/// i.e. deleting `T` keeps the full rank.
pub fn is_valid_triangle(m: &BinaryMatroid, t: &[usize; 3]) -> bool {
    if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
        return false;
    }
    if !m.is_circuit(t) {
        return false;
    }
    let rest: Vec<usize> = (0..m.len()).filter(|i| !t.contains(i)).collect();
    m.rank(&rest) == m.full_rank()
}

/// Check the side conditions of a 1-, 2- or 3-sum for one operand.
pub fn check_sum_operand(m: &BinaryMatroid, shared: &[String]) -> Result<SumKind, DecompositionError> {
    let kind = SumKind::from_overlap(shared.len())?;
    let idx = m.indices_of(shared)?;
    match kind {
        SumKind::One => {
            if m.is_empty() {
                return Err(DecompositionError::InvalidSum("1-sum operands must be nonempty".to_string()));
            }
        }
        SumKind::Two => {
            let s = idx[0];
            if m.len() < 3 {
                return Err(DecompositionError::PartTooSmall { needed: 3, found: m.len() });
            }
            if m.is_loop(s) || m.is_coloop(s) {
                return Err(DecompositionError::InvalidSum(alloc::format!(
                    "shared element `{}` is a loop or coloop",
                    shared[0]
                )));
            }
        }
        SumKind::Three => {
            if m.len() < 7 {
                return Err(DecompositionError::PartTooSmall { needed: 7, found: m.len() });
            }
            if !is_valid_triangle(m, &[idx[0], idx[1], idx[2]]) {
                return Err(DecompositionError::InvalidTriangle(shared.join(",")));
            }
        }
    }
    Ok(kind)
}

/// Delta-sum `M1 ⊕ M2` over the shared set `S = E1 ∩ E2` (0, 1 or 3
/// elements). The cycle space of the result is
/// `{x restricted to E1 Δ E2 : x ∈ Z1 + Z2, x_S = 0}`.
///
/// The result lists `E1 \ S` in `m1` order followed by `E2 \ S` in `m2` order.
pub fn delta_sum(m1: &BinaryMatroid, m2: &BinaryMatroid) -> Result<BinaryMatroid, DecompositionError> {
    let names2: BTreeSet<&str> = m2.elements().iter().map(|s| s.as_str()).collect();
    let shared: Vec<String> = m1.elements().iter().filter(|e| names2.contains(e.as_str())).cloned().collect();
    check_sum_operand(m1, &shared)?;
    check_sum_operand(m2, &shared)?;
    Ok(delta_sum_unchecked(m1, m2, &shared))
}

pub(crate) fn delta_sum_unchecked(m1: &BinaryMatroid, m2: &BinaryMatroid, shared: &[String]) -> BinaryMatroid {
    // Coordinates: shared first, then E1 \ S, then E2 \ S. With the shared
    // coordinates leading, echelon rows whose pivot lies past them are zero
    // on S and span the slice {x_S = 0}.
    let s = shared.len();
    let only1: Vec<usize> = (0..m1.len()).filter(|&i| !shared.iter().any(|x| x == m1.name(i))).collect();
    let only2: Vec<usize> = (0..m2.len()).filter(|&i| !shared.iter().any(|x| x == m2.name(i))).collect();
    let width = s + only1.len() + only2.len();
    let mut coord1 = alloc::vec![0usize; m1.len()];
    let mut coord2 = alloc::vec![0usize; m2.len()];
    for (k, name) in shared.iter().enumerate() {
        coord1[m1.index_of(name).unwrap()] = k;
        coord2[m2.index_of(name).unwrap()] = k;
    }
    for (k, &i) in only1.iter().enumerate() {
        coord1[i] = s + k;
    }
    for (k, &i) in only2.iter().enumerate() {
        coord2[i] = s + only1.len() + k;
    }
    let mut rows: Vec<BitVec> = Vec::new();
    for c in m1.cycle_basis() {
        rows.push(BitVec::from_indices(width, c.ones().map(|i| coord1[i])));
    }
    for c in m2.cycle_basis() {
        rows.push(BitVec::from_indices(width, c.ones().map(|i| coord2[i])));
    }
    let pivots = rref(&mut rows);
    let keep: Vec<usize> = (s..width).collect();
    let cycles: Vec<BitVec> = rows
        .iter()
        .zip(&pivots)
        .filter(|(_, &p)| p >= s)
        .map(|(r, _)| r.select(&keep))
        .collect();
    let names: Vec<String> = only1
        .iter()
        .map(|&i| m1.name(i).to_string())
        .chain(only2.iter().map(|&i| m2.name(i).to_string()))
        .collect();
    BinaryMatroid::from_rows(names, cycles).expect("names are distinct").dual()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Graph;

    #[test]
    fn two_sum_of_triangles_is_a_four_cycle() {
        let a = Graph::from_edges(&[("s", "1", "2"), ("a", "2", "3"), ("b", "1", "3")]).unwrap().cycle_matroid();
        let b = Graph::from_edges(&[("s", "1", "2"), ("c", "2", "3"), ("d", "1", "3")]).unwrap().cycle_matroid();
        let sum = delta_sum(&a, &b).unwrap();
        let square =
            Graph::from_edges(&[("a", "2", "3"), ("b", "1", "3"), ("c", "2", "4"), ("d", "1", "4")]).unwrap();
        assert!(sum.same_matroid(&square.cycle_matroid()));
    }

    #[test]
    fn one_sum_is_direct_sum() {
        let a = Graph::from_edges(&[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")]).unwrap().cycle_matroid();
        let b = Graph::from_edges(&[("d", "1", "2")]).unwrap().cycle_matroid();
        let sum = delta_sum(&a, &b).unwrap();
        assert_eq!(sum.full_rank(), 3);
        assert_eq!(sum.components().len(), 2);
    }

    #[test]
    fn three_sum_of_k5s_is_the_clique_sum() {
        // Two K5 glued along a triangle with the triangle removed.
        let k5a = Graph::complete(5);
        let mut k5b = Graph::new();
        for (n, u, v) in [
            ("e12", "1", "2"),
            ("e13", "1", "3"),
            ("e23", "2", "3"),
            ("f16", "1", "6"),
            ("f17", "1", "7"),
            ("f26", "2", "6"),
            ("f27", "2", "7"),
            ("f36", "3", "6"),
            ("f37", "3", "7"),
            ("f67", "6", "7"),
        ] {
            k5b.add_edge(n, u, v).unwrap();
        }
        let sum = delta_sum(&k5a.cycle_matroid(), &k5b.cycle_matroid()).unwrap();
        assert_eq!(sum.len(), 14);
        let mut glued = Graph::new();
        for e in k5a.edges().iter().chain(k5b.edges()) {
            if !["e12", "e13", "e23"].contains(&e.name.as_str()) && !glued.edge_names().contains(&e.name) {
                let g = if k5a.edge(&e.name).is_ok() { &k5a } else { &k5b };
                glued.add_edge(&e.name, &g.vertices()[e.u], &g.vertices()[e.v]).unwrap();
            }
        }
        assert!(sum.same_matroid(&glued.cycle_matroid()));
    }

    #[test]
    fn rejects_bad_triangle() {
        // In K4 every triangle is a valid triangle; in a 5-wheel-free small
        // graph a triangle containing a bond is not.
        let g = Graph::from_edges(&[
            ("a", "1", "2"),
            ("b", "2", "3"),
            ("c", "1", "3"),
            ("d", "3", "4"),
            ("e", "4", "5"),
            ("f", "5", "3"),
            ("g", "4", "6"),
        ])
        .unwrap();
        let m = g.cycle_matroid();
        assert!(!is_valid_triangle(&m, &[0, 1, 2]));
        let k4 = Graph::complete(4).cycle_matroid();
        let t = [k4.index_of("e12").unwrap(), k4.index_of("e13").unwrap(), k4.index_of("e23").unwrap()];
        assert!(is_valid_triangle(&k4, &t));
    }

    #[test]
    fn overlap_of_two_is_rejected() {
        let a = Graph::complete(4).cycle_matroid();
        let b = Graph::from_edges(&[("e12", "1", "2"), ("e13", "1", "3"), ("x", "2", "3")]).unwrap().cycle_matroid();
        assert!(matches!(delta_sum(&a, &b), Err(DecompositionError::InvalidOverlap(2))));
    }
}
