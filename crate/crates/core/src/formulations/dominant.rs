//! Totally unimodular signings of regular matroids and a formulation of the
//! dominant of the circuit polytope built from them.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::FormulationError;
use crate::decomposition::{Part, PartKind};
use crate::gf2::{rref, BitVec};
use crate::lp::{balas_union, ExtendedFormulation, LinearProgram, Rational, Sense, Simplex, UnionMode, VarId};
use crate::matroid::{BinaryMatroid, Graph};

/// A real matrix with entries in `{-1, 0, 1}` whose columns are named by
/// matroid elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedMatrix {
    pub elements: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

impl SignedMatrix {
    /// The binary matroid of the support pattern.
    pub fn binary(&self) -> Result<BinaryMatroid, FormulationError> {
        let rows = self
            .rows
            .iter()
            .map(|r| BitVec::from_indices(r.len(), r.iter().enumerate().filter(|(_, &a)| a % 2 != 0).map(|(i, _)| i)))
            .collect();
        Ok(BinaryMatroid::from_rows(self.elements.clone(), rows)?)
    }
}

/// Vertex-edge incidence matrix, `+1` at the first endpoint and `-1` at the
/// second; loops give zero columns.
pub fn graphic_signing(g: &Graph) -> SignedMatrix {
    let mut rows = vec![vec![0; g.edge_count()]; g.vertex_count()];
    for (k, e) in g.edges().iter().enumerate() {
        if e.u != e.v {
            rows[e.u][k] = 1;
            rows[e.v][k] = -1;
        }
    }
    SignedMatrix { elements: g.edge_names(), rows }
}

/// Signed fundamental cycles of a spanning forest: the rows span the cycle
/// space of `g`, which represents the bond matroid.
pub fn cographic_signing(g: &Graph) -> SignedMatrix {
    let n = g.vertex_count();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; g.edge_count()];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for k in g.incident(v) {
                let w = g.other_end(k, v);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(k);
                    depth[w] = depth[v] + 1;
                    in_tree[k] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut rows = Vec::new();
    for (f, e) in g.edges().iter().enumerate() {
        if in_tree[f] {
            continue;
        }
        let mut row = vec![0; g.edge_count()];
        row[f] = 1;
        // Walk from `e.v` back to `e.u` through the forest.
        let (mut a, mut b) = (e.v, e.u);
        let mut tail = Vec::new();
        while a != b {
            if depth[a] >= depth[b] {
                let k = parent[a].expect("non-root");
                let next = g.other_end(k, a);
                row[k] = if g.edges()[k].u == a { 1 } else { -1 };
                a = next;
            } else {
                let k = parent[b].expect("non-root");
                let next = g.other_end(k, b);
                // Traversed from `next` to `b` on the way back.
                tail.push((k, if g.edges()[k].u == next { 1 } else { -1 }));
                b = next;
            }
        }
        for (k, s) in tail {
            row[k] = s;
        }
        rows.push(row);
    }
    SignedMatrix { elements: g.edge_names(), rows }
}

/// The signing of `[I5 | D]` for R10 with elements `r1..r10`.
pub fn r10_signing() -> SignedMatrix {
    let d = [[-1, 1, 0, 0, 1], [1, -1, 1, 0, 0], [0, 1, -1, 1, 0], [0, 0, 1, -1, 1], [1, 0, 0, 1, -1]];
    let rows = (0..5)
        .map(|i| {
            let mut r = vec![0; 10];
            r[i] = 1;
            r[5..].copy_from_slice(&d[i]);
            r
        })
        .collect();
    SignedMatrix { elements: (1..=10).map(|i| format!("r{i}")).collect(), rows }
}

/// Sign the reduced row echelon form of `m` so that every cycle of the
/// row/column support graph sums to `0 mod 4`. A spanning forest of the
/// support graph is signed `+1`; every other entry closes a shortest (hence
/// chordless) cycle with the entries already signed, which forces its
/// sign. The result is totally unimodular whenever `m` is regular.
pub fn camion_signing(m: &BinaryMatroid) -> SignedMatrix {
    let mut red: Vec<BitVec> = m.rows().to_vec();
    let pivots = rref(&mut red);
    let cols = m.len();
    let k = red.len();
    let mut rows = vec![vec![0i64; cols]; k];
    for (i, &p) in pivots.iter().enumerate() {
        rows[i][p] = 1;
    }
    // Support graph: rows are nodes 0..k, columns are nodes k..k+cols.
    let entries: Vec<(usize, usize)> =
        (0..k).flat_map(|i| red[i].ones().filter(|c| !pivots.contains(c)).map(move |c| (i, c)).collect::<Vec<_>>()).collect();
    let nodes = k + cols;
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); nodes];
    let mut signed = vec![false; entries.len()];
    let mut seen = vec![false; nodes];
    // Forest first, in BFS order.
    let mut full_adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for (q, &(i, c)) in entries.iter().enumerate() {
        full_adj[i].push(q);
        full_adj[k + c].push(q);
    }
    let mut order = Vec::new();
    let mut queued = vec![false; entries.len()];
    for s in 0..nodes {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &q in &full_adj[v] {
                let (i, c) = entries[q];
                let w = if v == i { k + c } else { i };
                if !seen[w] {
                    seen[w] = true;
                    signed[q] = true;
                    adj[i].push((k + c, 1));
                    adj[k + c].push((i, 1));
                    rows[i][c] = 1;
                } else if !signed[q] && !queued[q] {
                    queued[q] = true;
                    order.push(q);
                }
            }
        }
    }
    for q in order {
        let (i, c) = entries[q];
        // Shortest path from column node to row node among signed entries.
        let mut prev: Vec<Option<(usize, i64)>> = vec![None; nodes];
        let mut visited = vec![false; nodes];
        visited[k + c] = true;
        let mut queue = VecDeque::from([k + c]);
        while let Some(v) = queue.pop_front() {
            if v == i {
                break;
            }
            for &(w, s) in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    prev[w] = Some((v, s));
                    queue.push_back(w);
                }
            }
        }
        let mut sum = 0i64;
        let mut v = i;
        while let Some((u, s)) = prev[v] {
            sum += s;
            v = u;
        }
        // The path has odd length, so exactly one sign makes the cycle
        // sum divisible by four.
        let s = if (sum + 1).rem_euclid(4) == 0 { 1 } else { -1 };
        rows[i][c] = s;
        adj[i].push((k + c, s));
        adj[k + c].push((i, s));
    }
    SignedMatrix { elements: m.elements().to_vec(), rows }
}

/// A signing suited to the part: incidence matrices for graphic parts,
/// fundamental cycles for cographic parts and a row-reduced signing
/// otherwise.
pub fn signed_representation(part: &Part) -> SignedMatrix {
    match part.kind() {
        PartKind::Graphic => graphic_signing(part.graph().expect("graphic part")),
        PartKind::Cographic => cographic_signing(part.graph().expect("cographic part")),
        _ => camion_signing(part.matroid()),
    }
}

/// Determinant by fraction-free elimination.
fn bareiss(mut a: Vec<Vec<i64>>) -> i64 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i64;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every square submatrix of order at most `max_order` has determinant in
/// `{-1, 0, 1}`. The first offending submatrix is reported.
pub fn verify_tu(m: &SignedMatrix, max_order: usize) -> Result<(), FormulationError> {
    let r = m.rows.len();
    let c = m.elements.len();
    for k in 1..=max_order.min(r).min(c) {
        let mut rs: Vec<usize> = (0..k).collect();
        loop {
            let mut cs: Vec<usize> = (0..k).collect();
            loop {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m.rows[i][j]).collect()).collect();
                let det = bareiss(sub);
                if det.abs() > 1 {
                    return Err(FormulationError::NotTotallyUnimodular { rows: rs, cols: cs, det });
                }
                if !next_combination(&mut cs, c) {
                    break;
                }
            }
            if !next_combination(&mut rs, r) {
                break;
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct CircuitDominant {
    pub ef: ExtendedFormulation,
    /// Element pinned in each union piece.
    pub pieces: Vec<String>,
    pub matrix: SignedMatrix,
}

fn kernel_rows(lp: &mut LinearProgram, m: &SignedMatrix, y: &[(usize, VarId)]) -> Result<(), FormulationError> {
    for (i, row) in m.rows.iter().enumerate() {
        let terms: Vec<(VarId, Rational)> =
            y.iter().filter(|(j, _)| row[*j] != 0).map(|&(j, v)| (v, Rational::from_integer(row[j]))).collect();
        if !terms.is_empty() {
            lp.add_row(&format!("kernel:{i}"), terms, Sense::Eq, Rational::zero())?;
        }
    }
    Ok(())
}

/// The dominant of the convex hull of circuit incidence vectors, as the
/// union over elements `e` of
/// `{x : exists y, A y = 0, -1 <= y <= 1, y_e = 1, |y| <= x}`.
/// Signed circuits are the vertices of each piece because `A` is totally
/// unimodular, and every point of a piece dominates a convex combination
/// of circuits through `e`. Coloops lie in no circuit and get no piece.
pub fn circuit_dominant_ef(m: &SignedMatrix) -> Result<CircuitDominant, FormulationError> {
    let binary = m.binary()?;
    let mut pieces = Vec::new();
    let mut names = Vec::new();
    for (e, name) in m.elements.iter().enumerate() {
        if binary.is_coloop(e) {
            continue;
        }
        pieces.push(circuit_dominant_piece(m, e)?);
        names.push(name.clone());
    }
    if pieces.is_empty() {
        return Err(FormulationError::NoCircuit);
    }
    let ef = balas_union(&pieces, UnionMode::CommonRecession)?;
    Ok(CircuitDominant { ef, pieces: names, matrix: m.clone() })
}

/// The union piece pinning element `e`: the dominant of the circuits
/// through `e` (empty when `e` is a coloop).
pub fn circuit_dominant_piece(m: &SignedMatrix, e: usize) -> Result<ExtendedFormulation, FormulationError> {
    let mut lp = LinearProgram::new();
    let mut coords = Vec::new();
    let mut y = Vec::new();
    for (j, f) in m.elements.iter().enumerate() {
        let x = lp.add_free(&format!("x:{f}"))?;
        let bound = if j == e { Rational::one() } else { -Rational::one() };
        let yv = lp.add_var(&format!("y:{f}"), Some(bound), Some(Rational::one()))?;
        lp.add_row(&format!("pos:{f}"), [(yv, Rational::one()), (x, -Rational::one())], Sense::Le, Rational::zero())?;
        lp.add_row(&format!("neg:{f}"), [(yv, -Rational::one()), (x, -Rational::one())], Sense::Le, Rational::zero())?;
        coords.push((f.clone(), x));
        y.push((j, yv));
    }
    kernel_rows(&mut lp, m, &y)?;
    Ok(ExtendedFormulation::from_vars(lp, &coords)?)
}

/// Split a cycle (given by its support) into circuits and sign each one as
/// a kernel vector of `m` with entries in `{-1, 0, 1}` and exactly that
/// support. Fails if the support is not a cycle or the signing is not
/// totally unimodular on some circuit.
pub fn cycle_signing(m: &SignedMatrix, support: &[bool]) -> Result<Vec<Vec<i64>>, FormulationError> {
    let binary = m.binary()?;
    let bits = BitVec::from_bits(support);
    if !binary.is_cycle(&bits) {
        return Err(FormulationError::NotACycle);
    }
    let mut rest: Vec<usize> = bits.ones().collect();
    let mut out = Vec::new();
    while !rest.is_empty() {
        // Shrink to a minimal dependent subset.
        let mut c = rest.clone();
        let mut i = 0;
        while i < c.len() {
            let mut smaller = c.clone();
            smaller.remove(i);
            if binary.rank(&smaller) < smaller.len() {
                c = smaller;
            } else {
                i += 1;
            }
        }
        out.push(sign_circuit(m, &c)?);
        rest.retain(|j| !c.contains(j));
    }
    Ok(out)
}

fn sign_circuit(m: &SignedMatrix, c: &[usize]) -> Result<Vec<i64>, FormulationError> {
    let mut lp = LinearProgram::new();
    let mut y = Vec::new();
    for (q, &j) in c.iter().enumerate() {
        let lb = if q == 0 { Rational::one() } else { -Rational::one() };
        y.push((j, lp.add_var(&format!("y:{}", m.elements[j]), Some(lb), Some(Rational::one()))?));
    }
    kernel_rows(&mut lp, m, &y)?;
    let mut s = Simplex::new(&lp);
    if !s.feasible() {
        return Err(FormulationError::NoRepresentation);
    }
    let point = s.point();
    let mut out = vec![0i64; m.elements.len()];
    for (q, &(j, _)) in y.iter().enumerate() {
        let v = &point[q];
        out[j] = if *v == Rational::one() {
            1
        } else if *v == -Rational::one() {
            -1
        } else {
            return Err(FormulationError::NoRepresentation);
        };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{circuits, mask_indices, r10};

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn signings_are_unimodular_on_small_orders() {
        let k4 = Graph::complete(4);
        verify_tu(&graphic_signing(&k4), 4).unwrap();
        verify_tu(&cographic_signing(&k4), 3).unwrap();
        verify_tu(&r10_signing(), 5).unwrap();
        verify_tu(&camion_signing(&r10()), 5).unwrap();
        verify_tu(&camion_signing(&Graph::complete(5).bond_matroid()), 5).unwrap();
    }

    #[test]
    fn unsigned_r10_is_caught() {
        let mut m = r10_signing();
        for row in &mut m.rows {
            for a in row.iter_mut() {
                *a = a.abs();
            }
        }
        assert!(matches!(verify_tu(&m, 5), Err(FormulationError::NotTotallyUnimodular { .. })));
    }

    #[test]
    fn fundamental_cycles_are_kernel_vectors() {
        let g = Graph::complete(4);
        let inc = graphic_signing(&g);
        for row in cographic_signing(&g).rows {
            for v in &inc.rows {
                assert_eq!(v.iter().zip(&row).map(|(a, b)| a * b).sum::<i64>(), 0);
            }
        }
    }

    #[test]
    fn every_r10_circuit_is_signed() {
        let m = r10_signing();
        for c in circuits(&r10(), 24).unwrap() {
            let mut support = vec![false; 10];
            for j in mask_indices(c) {
                support[j] = true;
            }
            let signed = cycle_signing(&m, &support).unwrap();
            assert_eq!(signed.len(), 1);
        }
        // The whole ground set is a cycle of size 10 and circuits have size
        // 4 or 6, so it splits into two with disjoint supports.
        let parts = cycle_signing(&m, &[true; 10]).unwrap();
        assert_eq!(parts.len(), 2);
        for j in 0..10 {
            assert_eq!(parts.iter().filter(|p| p[j] != 0).count(), 1);
        }
        let mut bad = vec![false; 10];
        bad[0] = true;
        assert!(matches!(cycle_signing(&m, &bad), Err(FormulationError::NotACycle)));
    }

    #[test]
    fn triangle_dominant() {
        let g = Graph::complete(3);
        let d = circuit_dominant_ef(&graphic_signing(&g)).unwrap();
        assert_eq!(d.pieces.len(), 3);
        assert_eq!(d.ef.session().minimize(&[r(1), r(1), r(1)]), Some(r(3)));
        assert_eq!(d.ef.session().minimize(&[r(1), r(0), r(0)]), Some(r(1)));
        assert_eq!(d.ef.session().minimize(&[r(-1), r(0), r(0)]), None);
        let path = Graph::from_edges(&[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        assert!(matches!(circuit_dominant_ef(&graphic_signing(&path)), Err(FormulationError::NoCircuit)));
    }
}
