use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{circuits, find_isomorphism, is_three_connected, BinaryMatroid, MatroidError};
use crate::gf2::BitVec;

/// The ten-element regular matroid that is neither graphic nor cographic,
/// represented as `[I5 | D]` where row `i` of `D` has ones in columns
/// `i`, `i+1` and `i+4` (mod 5). Elements are named `r1..r10`.
pub fn r10() -> BinaryMatroid {
    let names: Vec<String> = (1..=10).map(|i| format!("r{i}")).collect();
    let rows = (0..5)
        .map(|i| BitVec::from_indices(10, [i, 5 + i, 5 + (i + 1) % 5, 5 + (i + 4) % 5]))
        .collect();
    BinaryMatroid::from_rows(names, rows).expect("static names")
}

/// Facts that together certify the structure of [`r10`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R10Certificate {
    pub elements: usize,
    pub rank: usize,
    pub three_connected: bool,
    /// Element map `M -> M*` preserving circuits.
    pub self_dual: Option<Vec<usize>>,
    pub shortest_circuit: usize,
    /// A connected graph realizing the matroid would have `rank + 1`
    /// vertices and no cycles shorter than `shortest_circuit`; with no
    /// triangles it can have at most `floor((rank + 1)^2 / 4)` edges.
    pub triangle_free_edge_bound: usize,
}

impl R10Certificate {
    /// Not graphic (too many edges for a triangle-free graph on `rank + 1`
    /// vertices) and, being self-dual, not cographic either.
    pub fn neither_graphic_nor_cographic(&self) -> bool {
        self.three_connected
            && self.self_dual.is_some()
            && self.shortest_circuit > 3
            && self.elements > self.triangle_free_edge_bound
    }
}

pub fn r10_certificate(m: &BinaryMatroid) -> Result<R10Certificate, MatroidError> {
    let cap = m.len().max(1);
    let shortest = circuits(m, cap)?.iter().map(|c| c.count_ones() as usize).min().unwrap_or(0);
    let v = m.full_rank() + 1;
    Ok(R10Certificate {
        elements: m.len(),
        rank: m.full_rank(),
        three_connected: is_three_connected(m, cap)?,
        self_dual: find_isomorphism(m, &m.dual(), cap)?,
        shortest_circuit: shortest,
        triangle_free_edge_bound: v * v / 4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r10_is_certified() {
        let m = r10();
        let cert = r10_certificate(&m).unwrap();
        assert_eq!(cert.elements, 10);
        assert_eq!(cert.rank, 5);
        assert!(cert.three_connected);
        assert!(cert.self_dual.is_some());
        assert_eq!(cert.shortest_circuit, 4);
        assert!(cert.neither_graphic_nor_cographic());
    }

    #[test]
    fn r10_circuit_count() {
        // Frozen from the row space of [I | D]: sums of one row, two adjacent
        // rows or three rows around a gap have weight 4 (15 vectors); the
        // other sums of two, three or four rows have weight 6 (15 vectors);
        // the sum of all rows is the whole ground set. The cycle space is
        // isomorphic to the row space, and weight-6 cycles cannot split into
        // two disjoint 4-cycles, so there are 15 + 15 circuits.
        let cs = circuits(&r10(), 24).unwrap();
        let fours = cs.iter().filter(|c| c.count_ones() == 4).count();
        let sixes = cs.iter().filter(|c| c.count_ones() == 6).count();
        assert_eq!((cs.len(), fours, sixes), (30, 15, 15));
    }
}
