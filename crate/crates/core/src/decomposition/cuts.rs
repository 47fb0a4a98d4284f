//! Three-edge cuts of the graph behind a cographic part: uncrossing them by
//! exchanging parallel elements, and rewriting bad cuts (cuts that are not
//! the star of a degree-3 vertex) so that every cut becomes a vertex star.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::tree::{DecompositionTree, Part, PartKind};
use super::DecompositionError;
use crate::matroid::Graph;

/// Pairwise disjoint 3-edge bonds, by edge name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutFamily {
    pub cuts: Vec<[String; 3]>,
}

/// Exchange of `e ∈ T_i` and `f ∈ T_j`, where `{e, f}` is a 2-edge bond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSwap {
    pub i: usize,
    pub j: usize,
    pub e: String,
    pub f: String,
}

#[derive(Clone, Debug)]
pub struct Uncrossing {
    pub cuts: CutFamily,
    pub swaps: Vec<CutSwap>,
    /// Crossing-pair count before the first swap and after each swap.
    pub counts: Vec<usize>,
}

fn cut_indices(g: &Graph, cut: &[String; 3]) -> Result<[usize; 3], DecompositionError> {
    Ok([g.edge(&cut[0])?, g.edge(&cut[1])?, g.edge(&cut[2])?])
}

/// The two vertex sides of a bond, or `None` if `cut` is not a bond.
pub fn bond_sides(g: &Graph, cut: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    if !g.is_bond(cut) {
        return None;
    }
    let mut comps = g.components_without_edges(cut);
    let b = comps.pop()?;
    let a = comps.pop()?;
    Some((a, b))
}

/// A cut is good if one side is a single vertex.
pub fn is_good_cut(g: &Graph, cut: &[usize]) -> bool {
    bond_sides(g, cut).is_some_and(|(a, b)| a.len() == 1 || b.len() == 1)
}

/// `tj` has edges inside both sides of `ti`.
pub fn crosses(g: &Graph, ti: &[usize], tj: &[usize]) -> bool {
    let Some((side, _)) = bond_sides(g, ti) else {
        return false;
    };
    let m = g.side_map(&side);
    let inside = |e: usize| m[g.edges()[e].u] && m[g.edges()[e].v];
    let outside = |e: usize| !m[g.edges()[e].u] && !m[g.edges()[e].v];
    tj.iter().any(|&e| inside(e)) && tj.iter().any(|&e| outside(e))
}

fn count_crossings(g: &Graph, cuts: &[[usize; 3]]) -> usize {
    let mut n = 0;
    for i in 0..cuts.len() {
        for j in (i + 1)..cuts.len() {
            if crosses(g, &cuts[i], &cuts[j]) || crosses(g, &cuts[j], &cuts[i]) {
                n += 1;
            }
        }
    }
    n
}

pub fn crossing_count(g: &Graph, family: &CutFamily) -> Result<usize, DecompositionError> {
    let cuts: Vec<[usize; 3]> = family.cuts.iter().map(|c| cut_indices(g, c)).collect::<Result<_, _>>()?;
    Ok(count_crossings(g, &cuts))
}

fn validate_family(g: &Graph, family: &CutFamily) -> Result<Vec<[usize; 3]>, DecompositionError> {
    if !g.is_two_connected() {
        return Err(DecompositionError::NotTwoConnected);
    }
    let cuts: Vec<[usize; 3]> = family.cuts.iter().map(|c| cut_indices(g, c)).collect::<Result<_, _>>()?;
    let mut seen = BTreeSet::new();
    for (k, c) in cuts.iter().enumerate() {
        if !g.is_bond(c) || c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
            return Err(DecompositionError::InvalidCut(family.cuts[k].join(",")));
        }
        for &e in c {
            if !seen.insert(e) {
                return Err(DecompositionError::InvalidCut(family.cuts[k].join(",")));
            }
        }
    }
    Ok(cuts)
}

fn to_names(g: &Graph, cuts: &[[usize; 3]]) -> CutFamily {
    CutFamily {
        cuts: cuts
            .iter()
            .map(|c| [g.edges()[c[0]].name.clone(), g.edges()[c[1]].name.clone(), g.edges()[c[2]].name.clone()])
            .collect(),
    }
}

/// Repeatedly pick the first crossing pair and exchange an element of each
/// with a parallel element of the other, until no two cuts cross. Every
/// exchange strictly lowers the number of crossing pairs.
pub fn uncross_cuts(g: &Graph, family: &CutFamily) -> Result<Uncrossing, DecompositionError> {
    let mut cuts = validate_family(g, family)?;
    let mut count = count_crossings(g, &cuts);
    let mut counts = alloc::vec![count];
    let mut swaps = Vec::new();
    while count > 0 {
        let mut applied = false;
        'pairs: for i in 0..cuts.len() {
            for j in 0..cuts.len() {
                if i == j || !crosses(g, &cuts[i], &cuts[j]) {
                    continue;
                }
                for a in 0..3 {
                    for b in 0..3 {
                        let (e, f) = (cuts[i][a], cuts[j][b]);
                        if !g.is_bond(&[e, f]) {
                            continue;
                        }
                        let mut next = cuts.clone();
                        next[i][a] = f;
                        next[j][b] = e;
                        if !g.is_bond(&next[i]) || !g.is_bond(&next[j]) {
                            continue;
                        }
                        let c = count_crossings(g, &next);
                        if c < count {
                            swaps.push(CutSwap { i, j, e: g.edges()[e].name.clone(), f: g.edges()[f].name.clone() });
                            cuts = next;
                            count = c;
                            counts.push(c);
                            applied = true;
                            break 'pairs;
                        }
                    }
                }
            }
        }
        if !applied {
            return Err(DecompositionError::UncrossingStuck);
        }
    }
    Ok(Uncrossing { cuts: to_names(g, &cuts), swaps, counts })
}

/// A piece produced by splitting along bad cuts.
#[derive(Clone, Debug)]
pub struct CutPiece {
    pub kind: PartKind,
    pub graph: Graph,
}

/// Result of rewriting a cographic part so that its cuts are vertex stars.
#[derive(Clone, Debug)]
pub struct CutRepair {
    /// `(alpha, alpha_prime)`: cut element replaced by a parallel element.
    pub parallel_swaps: Vec<(String, String)>,
    pub uncrossing: Vec<CutSwap>,
    /// Family after swaps and uncrossing.
    pub cuts: CutFamily,
    pub pieces: Vec<CutPiece>,
    /// 3-sum edges among `pieces`, by position, with ordered triangles.
    pub links: Vec<(usize, usize, [String; 3])>,
    /// Cuts that are still not vertex stars; each lives in a small planar
    /// remainder piece.
    pub residual: Vec<[String; 3]>,
}

struct Namer {
    used: BTreeSet<String>,
    next: usize,
}

impl Namer {
    fn fresh(&mut self, stem: &str) -> String {
        loop {
            self.next += 1;
            let n = format!("{stem}{}", self.next);
            if self.used.insert(n.clone()) {
                return n;
            }
        }
    }
}

/// Endpoint of `e` on the side marked in `m`.
fn end_in(g: &Graph, e: usize, m: &[bool]) -> usize {
    let ed = &g.edges()[e];
    if m[ed.u] {
        ed.u
    } else {
        ed.v
    }
}

/// Make every cut of `family` the star of a degree-3 vertex:
/// a bad cut with only two endpoints on one side is fixed by exchanging
/// one of its edges with a parallel edge; remaining crossing cuts are
/// uncrossed; every remaining bad cut (three pairwise non-incident edges)
/// is split off into a middle part that is graphic.
pub fn detect_and_fix_bad_cuts(
    g: &Graph,
    family: &CutFamily,
    reserved: &BTreeSet<String>,
) -> Result<CutRepair, DecompositionError> {
    let mut cuts = validate_family(g, family)?;
    let mut parallel_swaps = Vec::new();
    let in_other_cut = |cuts: &[[usize; 3]], k: usize, e: usize| cuts.iter().enumerate().any(|(j, c)| j != k && c.contains(&e));
    for k in 0..cuts.len() {
        let cut = cuts[k];
        if is_good_cut(g, &cut) {
            continue;
        }
        let (s1, s2) = bond_sides(g, &cut).expect("validated bond");
        for side in [s1, s2] {
            let m = g.side_map(&side);
            let ends: Vec<usize> = cut.iter().map(|&e| end_in(g, e, &m)).collect();
            let distinct: BTreeSet<usize> = ends.iter().copied().collect();
            if distinct.len() != 2 {
                continue;
            }
            // `v` carries two cut edges, `alpha` is the edge ending elsewhere.
            let v = *distinct.iter().find(|&&x| ends.iter().filter(|&&y| y == x).count() == 2).unwrap();
            let a_pos = (0..3).find(|&p| ends[p] != v).unwrap();
            let alpha = cut[a_pos];
            let inner: Vec<usize> = g
                .incident(v)
                .into_iter()
                .filter(|&e| !cut.contains(&e) && m[g.other_end(e, v)])
                .collect();
            if inner.len() != 1 {
                continue;
            }
            let alpha_prime = inner[0];
            if !g.is_bond(&[alpha, alpha_prime]) || in_other_cut(&cuts, k, alpha_prime) {
                continue;
            }
            cuts[k][a_pos] = alpha_prime;
            parallel_swaps.push((g.edges()[alpha].name.clone(), g.edges()[alpha_prime].name.clone()));
            break;
        }
    }
    let un = uncross_cuts(g, &to_names(g, &cuts))?;
    let mut namer = Namer {
        used: reserved.iter().cloned().chain(g.edge_names()).collect(),
        next: 0,
    };
    let mut pieces: Vec<CutPiece> = Vec::new();
    let mut links: Vec<(usize, usize, [String; 3])> = Vec::new();
    let mut residual = Vec::new();
    // Work list of cographic pieces still to inspect: (graph, its cuts).
    let mut work: Vec<(usize, Vec<[String; 3]>)> = alloc::vec![(0, un.cuts.cuts.clone())];
    pieces.push(CutPiece { kind: PartKind::Cographic, graph: g.clone() });
    while let Some((p, piece_cuts)) = work.pop() {
        let pg = pieces[p].graph.clone();
        let idx: Vec<[usize; 3]> = piece_cuts.iter().map(|c| cut_indices(&pg, c)).collect::<Result<_, _>>()?;
        let Some(bad) = (0..idx.len()).find(|&k| !is_good_cut(&pg, &idx[k]) && !residual.contains(&piece_cuts[k]))
        else {
            continue;
        };
        let cut = idx[bad];
        let (a, b) = bond_sides(&pg, &cut).expect("cuts stay bonds");
        let (ea, eb) = (pg.induced_edges(&a), pg.induced_edges(&b));
        let (big, small) = if ea.len() >= eb.len() { (a, b) } else { (b, a) };
        let (mb, ms) = (pg.side_map(&big), pg.side_map(&small));
        let big_ends: Vec<usize> = cut.iter().map(|&e| end_in(&pg, e, &mb)).collect();
        let small_ends: Vec<usize> = cut.iter().map(|&e| end_in(&pg, e, &ms)).collect();
        let distinct = |v: &[usize]| v.iter().collect::<BTreeSet<_>>().len() == 3;
        if !distinct(&big_ends) || !distinct(&small_ends) {
            return Err(DecompositionError::CannotRepair(format!(
                "cut {} has a side with repeated endpoints",
                piece_cuts[bad].join(",")
            )));
        }
        let names = |i: usize| pg.edges()[cut[i]].name.clone();
        let cut_names = [names(0), names(1), names(2)];
        let (e_big, e_small) = (pg.induced_edges(&big), pg.induced_edges(&small));
        // Outer piece: the big side plus a new vertex joined to the cut ends.
        let t1: [String; 3] = [namer.fresh("s"), namer.fresh("s"), namer.fresh("s")];
        let hub1 = fresh_vertex(&pg, "hub");
        let mut outer = pg.edge_subgraph(&e_big);
        for i in 0..3 {
            outer.add_edge(&t1[i], &hub1, &pg.vertices()[big_ends[i]])?;
        }
        let owner = |edges: &[usize], c: &[String; 3]| {
            c.iter().all(|n| edges.iter().any(|&e| pg.edges()[e].name == *n))
        };
        let mut outer_cuts: Vec<[String; 3]> = piece_cuts.iter().filter(|c| owner(&e_big, c)).cloned().collect();
        let inner_cuts: Vec<[String; 3]> = piece_cuts.iter().filter(|c| owner(&e_small, c)).cloned().collect();
        pieces[p] = CutPiece { kind: PartKind::Cographic, graph: outer };
        outer_cuts.push(t1.clone());
        work.push((p, outer_cuts));
        if e_small.len() >= 4 {
            let t2: [String; 3] = [namer.fresh("s"), namer.fresh("s"), namer.fresh("s")];
            // Middle piece: three vertices, each pair joined by one new edge
            // of each triangle and one cut edge.
            let mut middle = Graph::new();
            let pairs = [("x", "y"), ("y", "z"), ("z", "x")];
            for i in 0..3 {
                middle.add_edge(&t1[i], pairs[i].0, pairs[i].1)?;
                middle.add_edge(&cut_names[i], pairs[i].0, pairs[i].1)?;
                middle.add_edge(&t2[i], pairs[i].0, pairs[i].1)?;
            }
            let hub2 = fresh_vertex(&pg, "hub");
            let mut inner = pg.edge_subgraph(&e_small);
            for i in 0..3 {
                inner.add_edge(&t2[i], &hub2, &pg.vertices()[small_ends[i]])?;
            }
            let m = pieces.len();
            pieces.push(CutPiece { kind: PartKind::Graphic, graph: middle });
            let q = pieces.len();
            pieces.push(CutPiece { kind: PartKind::Cographic, graph: inner });
            links.push((p, m, t1.clone()));
            links.push((m, q, t2.clone()));
            fix_links(&mut links, p, q, &inner_cuts);
            let mut inner_cuts = inner_cuts;
            inner_cuts.push(t2);
            work.push((q, inner_cuts));
        } else {
            // The small side is too small to split off; keep it with the cut
            // as one cographic remainder (planar, at most nine edges).
            let mut rest = pg.edge_subgraph(&e_small);
            let hub2 = fresh_vertex(&pg, "hub");
            for i in 0..3 {
                let mid = fresh_vertex(&pg, &format!("mid{i}_"));
                rest.add_edge(&cut_names[i], &mid, &pg.vertices()[small_ends[i]])?;
                rest.add_edge(&t1[i], &hub2, &mid)?;
            }
            let q = pieces.len();
            pieces.push(CutPiece { kind: PartKind::Cographic, graph: rest });
            links.push((p, q, t1.clone()));
            fix_links(&mut links, p, q, &inner_cuts);
            residual.push(cut_names.clone());
            let mut rest_cuts = inner_cuts;
            rest_cuts.push(cut_names);
            rest_cuts.push(t1.clone());
            work.push((q, rest_cuts));
        }
    }
    Ok(CutRepair { parallel_swaps, uncrossing: un.swaps, cuts: un.cuts, pieces, links, residual })
}

/// Links recorded against piece `p` whose triangle moved into piece `q`.
fn fix_links(links: &mut [(usize, usize, [String; 3])], p: usize, q: usize, moved: &[[String; 3]]) {
    for l in links.iter_mut() {
        if moved.contains(&l.2) {
            if l.0 == p {
                l.0 = q;
            }
            if l.1 == p {
                l.1 = q;
            }
        }
    }
}

fn fresh_vertex(g: &Graph, stem: &str) -> String {
    let mut k = 0;
    loop {
        let n = format!("{stem}{k}");
        if g.vertex(&n).is_err() {
            return n;
        }
        k += 1;
    }
}

/// Rewrite a cographic node so that every 3-sum triangle it carries is the
/// star of a degree-3 vertex, replacing it by the pieces of
/// [`detect_and_fix_bad_cuts`]. The composed matroid is unchanged except
/// for the renamings of the parallel swaps.
pub fn repair_cographic_node(tree: &mut DecompositionTree, node: &str) -> Result<CutRepair, DecompositionError> {
    let v = tree.node_index(node)?;
    let part = &tree.node(v).part;
    if part.kind() != PartKind::Cographic {
        return Err(DecompositionError::CannotRepair(format!("node `{node}` is not cographic")));
    }
    let g = part.graph().expect("cographic parts carry a graph").clone();
    let family = CutFamily {
        cuts: tree
            .incident_edges(v)
            .into_iter()
            .filter(|&k| tree.edges()[k].shared.len() == 3)
            .map(|k| {
                let s = &tree.edges()[k].shared;
                [s[0].clone(), s[1].clone(), s[2].clone()]
            })
            .collect(),
    };
    let reserved: BTreeSet<String> =
        tree.nodes().iter().flat_map(|n| n.part.matroid().elements().iter().cloned()).collect();
    let repair = detect_and_fix_bad_cuts(&g, &family, &reserved)?;
    for (alpha, alpha_prime) in &repair.parallel_swaps {
        tree.swap_parallel(node, alpha, alpha_prime)?;
    }
    for s in &repair.uncrossing {
        tree.exchange_shared(node, &s.e, &s.f)?;
    }
    if repair.pieces.len() > 1 {
        let pieces = repair
            .pieces
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let part = match p.kind {
                    PartKind::Graphic => Part::graphic(p.graph.clone()),
                    _ => Part::cographic(p.graph.clone()),
                };
                (format!("{node}.{}", i + 1), part)
            })
            .collect();
        let internal = repair.links.iter().map(|(a, b, t)| (*a, *b, t.to_vec())).collect();
        tree.replace_node(v, pieces, internal)?;
    }
    Ok(repair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    pub(crate) fn crossing_ladder() -> (Graph, CutFamily) {
        // Quadrants {1,2}, {3,4}, {5,6}, {7,8}; the cuts around {1,2,3,4} and
        // {1,2,5,6} cross, and {1-5, 6-8} is a 2-edge bond.
        let g = Graph::from_edges(&[
            ("a12", "1", "2"),
            ("a34", "3", "4"),
            ("a56", "5", "6"),
            ("a78", "7", "8"),
            ("a13", "1", "3"),
            ("a24", "2", "4"),
            ("a68", "6", "8"),
            ("a15", "1", "5"),
            ("a37", "3", "7"),
            ("a48", "4", "8"),
        ])
        .unwrap();
        let fam = CutFamily {
            cuts: alloc::vec![
                ["a15".into(), "a37".into(), "a48".into()],
                ["a13".into(), "a24".into(), "a68".into()],
            ],
        };
        (g, fam)
    }

    #[test]
    fn ladder_cuts_cross_and_uncross() {
        let (g, fam) = crossing_ladder();
        assert_eq!(crossing_count(&g, &fam).unwrap(), 1);
        let un = uncross_cuts(&g, &fam).unwrap();
        assert_eq!(un.counts, alloc::vec![1, 0]);
        assert_eq!(un.swaps.len(), 1);
        let s = &un.swaps[0];
        let m = g.bond_matroid();
        let (e, f) = (m.index_of(&s.e).unwrap(), m.index_of(&s.f).unwrap());
        assert_eq!(m.rank(&[e, f]), 1);
        assert_eq!(crossing_count(&g, &un.cuts).unwrap(), 0);
    }

    #[test]
    fn vertex_star_is_good() {
        let g = Graph::complete_bipartite(3, 3);
        let star: Vec<usize> = g.incident(g.vertex("a1").unwrap());
        assert!(is_good_cut(&g, &star));
    }

    #[test]
    fn k33_has_no_bad_three_cut() {
        let g = Graph::complete_bipartite(3, 3);
        let n = g.edge_count();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    if g.is_bond(&[a, b, c]) {
                        assert!(is_good_cut(&g, &[a, b, c]));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_graph_with_cut_vertex() {
        let g = Graph::from_edges(&[
            ("a", "1", "2"),
            ("b", "2", "3"),
            ("c", "3", "1"),
            ("d", "3", "4"),
            ("e", "4", "5"),
            ("f", "5", "3"),
        ])
        .unwrap();
        let fam = CutFamily { cuts: Vec::new() };
        assert!(matches!(uncross_cuts(&g, &fam), Err(DecompositionError::NotTwoConnected)));
    }

    fn two_k4_joined() -> Graph {
        let mut g = Graph::new();
        for (base, tag) in [(1, "l"), (5, "r")] {
            for a in 0..4 {
                for b in (a + 1)..4 {
                    let (u, v) = (base + a, base + b);
                    g.add_edge(&format!("{tag}{u}{v}"), &u.to_string(), &v.to_string()).unwrap();
                }
            }
        }
        for (u, v) in [(1, 5), (2, 6), (3, 7)] {
            g.add_edge(&format!("x{u}{v}"), &u.to_string(), &v.to_string()).unwrap();
        }
        g
    }

    fn compose_pieces(repair: &CutRepair) -> crate::matroid::BinaryMatroid {
        let mut t = DecompositionTree::new();
        for (i, p) in repair.pieces.iter().enumerate() {
            let part = match p.kind {
                PartKind::Graphic => Part::graphic(p.graph.clone()),
                _ => Part::cographic(p.graph.clone()),
            };
            t.add_node(&format!("p{i}"), part).unwrap();
        }
        for (a, b, tri) in &repair.links {
            let refs: Vec<&str> = tri.iter().map(|s| s.as_str()).collect();
            t.add_edge(&format!("p{a}"), &format!("p{b}"), &refs).unwrap();
        }
        t.compose().unwrap()
    }

    #[test]
    fn bad_cut_between_two_k4_splits_into_three_parts() {
        let g = two_k4_joined();
        let fam = CutFamily { cuts: alloc::vec![["x15".into(), "x26".into(), "x37".into()]] };
        let repair = detect_and_fix_bad_cuts(&g, &fam, &BTreeSet::new()).unwrap();
        assert_eq!(repair.pieces.len(), 3);
        assert!(repair.residual.is_empty());
        assert_eq!(repair.pieces.iter().filter(|p| p.kind == PartKind::Graphic).count(), 1);
        assert!(compose_pieces(&repair).same_matroid(&g.bond_matroid()));
    }

    #[test]
    fn two_endpoint_bad_cut_is_fixed_by_a_parallel_swap() {
        let mut g = Graph::complete(4);
        g.add_edge("p15", "1", "5").unwrap();
        g.add_edge("p56", "5", "6").unwrap();
        g.add_edge("p62", "6", "2").unwrap();
        g.add_edge("p63", "6", "3").unwrap();
        let fam = CutFamily { cuts: alloc::vec![["p15".into(), "p62".into(), "p63".into()]] };
        let idx = cut_indices(&g, &fam.cuts[0]).unwrap();
        assert!(!is_good_cut(&g, &idx));
        let repair = detect_and_fix_bad_cuts(&g, &fam, &BTreeSet::new()).unwrap();
        assert_eq!(repair.parallel_swaps, alloc::vec![("p15".to_string(), "p56".to_string())]);
        let fixed = cut_indices(&g, &repair.cuts.cuts[0]).unwrap();
        assert!(is_good_cut(&g, &fixed));
        assert_eq!(repair.pieces.len(), 1);
    }

    #[test]
    fn repairing_a_tree_node_keeps_the_composed_matroid() {
        let g = two_k4_joined();
        let mut k5 = Graph::complete(5);
        k5.rename_edge("e12", "x15").unwrap();
        k5.rename_edge("e13", "x26").unwrap();
        k5.rename_edge("e23", "x37").unwrap();
        let mut t = DecompositionTree::new();
        t.add_node("co", Part::cographic(g)).unwrap();
        t.add_node("k5", Part::graphic(k5)).unwrap();
        t.add_edge("co", "k5", &["x15", "x26", "x37"]).unwrap();
        let before = t.compose().unwrap();
        let repair = repair_cographic_node(&mut t, "co").unwrap();
        assert_eq!(repair.pieces.len(), 3);
        assert_eq!(t.nodes().len(), 4);
        t.validate().unwrap();
        assert!(t.compose().unwrap().same_matroid(&before));
        for k in t.incident_edges(t.node_index("k5").unwrap()) {
            let other = t.edges()[k].other(t.node_index("k5").unwrap());
            assert_eq!(t.node(other).part.kind(), PartKind::Graphic);
        }
    }
}
