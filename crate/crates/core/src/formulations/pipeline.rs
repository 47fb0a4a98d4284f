//! Recursive construction of an extended formulation of `P(M)` from a
//! decomposition tree of a regular matroid.

use alloc::string::String;
use alloc::vec::Vec;

use super::flats::explicit_flat_ef;
use super::pair::{pair_formulation_cographic, pair_formulation_graphic, PairFormulation};
use super::star::{asymmetric_pair, compose_2sum, glue_star, p_prime_ef, Variant};
use super::wong::{cographic_independence_ef, graphic_independence_ef};
use super::FormulationError;
use crate::decomposition::{repair_cographic_node, star_decompose, DecompositionTree, Part, PartKind, SumKind};
use crate::lp::{product, ExtendedFormulation, SizeReport};
use crate::matroid::DEFAULT_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Largest single-node leaf written out by its connected flats.
    pub cap: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { cap: DEFAULT_CAP }
    }
}

/// One formulation built during the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub level: usize,
    /// Node ids of the subtree, joined by `+`.
    pub part: String,
    pub case: &'static str,
    pub size: SizeReport,
}

/// Sizes measured at one star gluing.
#[derive(Clone, Debug, PartialEq)]
pub struct StarRecord {
    pub level: usize,
    pub center: String,
    pub kind: &'static str,
    pub center_elements: usize,
    pub e0: usize,
    /// Inequalities of the center pair formulation.
    pub r_count: usize,
    pub leaf_counts: Vec<usize>,
    /// Inequalities of `P'` plus `P''` per leaf.
    pub prime_counts: Vec<usize>,
    pub total: usize,
    /// `r_count / |E0|^2`; zero when `E0` is empty.
    pub c1: f64,
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub ef: ExtendedFormulation,
    pub ledger: Vec<LedgerEntry>,
    pub stars: Vec<StarRecord>,
}

/// Formulation of `P(M)` for the matroid composed by `tree`, with ground in
/// the element order of [`DecompositionTree::compose`].
pub fn regular_pipeline(tree: &DecompositionTree, opts: &PipelineOptions) -> Result<PipelineOutput, FormulationError> {
    let order: Vec<String> = tree.compose()?.elements().to_vec();
    let mut ledger = Ledger::default();
    let ef = build(tree, 0, opts, &mut ledger, true)?;
    Ok(PipelineOutput { ef: ef.reorder(&order)?, ledger: ledger.entries, stars: ledger.stars })
}

#[derive(Default)]
struct Ledger {
    entries: Vec<LedgerEntry>,
    stars: Vec<StarRecord>,
}

fn part_label(tree: &DecompositionTree) -> String {
    tree.nodes().iter().map(|n| n.id.as_str()).collect::<Vec<_>>().join("+")
}

/// The subtree induced by `nodes` (which must be connected).
fn subtree(tree: &DecompositionTree, nodes: &[usize]) -> Result<DecompositionTree, FormulationError> {
    let mut sub = DecompositionTree::new();
    for &v in nodes {
        let n = tree.node(v);
        sub.add_node(&n.id, n.part.clone())?;
    }
    for e in tree.edges() {
        if nodes.contains(&e.a) && nodes.contains(&e.b) {
            let shared: Vec<&str> = e.shared.iter().map(|s| s.as_str()).collect();
            sub.add_edge(&tree.node(e.a).id, &tree.node(e.b).id, &shared)?;
        }
    }
    Ok(sub)
}

fn record(out: &mut Ledger, level: usize, tree: &DecompositionTree, case: &'static str, ef: &ExtendedFormulation) {
    out.entries.push(LedgerEntry { level, part: part_label(tree), case, size: ef.size() });
}

/// A single part: flow formulations for graphic and cographic parts, the
/// connected flats otherwise (and for cographic parts with bridges).
fn node_ef(part: &Part, cap: usize) -> Result<(ExtendedFormulation, &'static str), FormulationError> {
    match part.kind() {
        PartKind::Graphic => Ok((graphic_independence_ef(part.graph().expect("graphic part"))?, "graphic")),
        PartKind::Cographic => match cographic_independence_ef(part.graph().expect("cographic part")) {
            Ok(ef) => Ok((ef, "cographic")),
            Err(FormulationError::BridgePresent(_)) => Ok((explicit_flat_ef(part.matroid(), cap)?, "flats")),
            Err(e) => Err(e),
        },
        _ => Ok((explicit_flat_ef(part.matroid(), cap)?, "flats")),
    }
}

fn build(
    tree: &DecompositionTree,
    level: usize,
    opts: &PipelineOptions,
    out: &mut Ledger,
    may_repair: bool,
) -> Result<ExtendedFormulation, FormulationError> {
    tree.validate()?;
    if tree.nodes().len() == 1 {
        let (ef, case) = node_ef(&tree.node(0).part, opts.cap)?;
        record(out, level, tree, case, &ef);
        return Ok(ef);
    }
    // 1- and 2-sum edges split the tree before any star is taken.
    for (k, e) in tree.edges().iter().enumerate() {
        let kind = e.kind()?;
        if kind == SumKind::Three {
            continue;
        }
        let left = subtree(tree, &tree.component_of(e.a, Some(k)))?;
        let right = subtree(tree, &tree.component_of(e.b, Some(k)))?;
        let a = build(&left, level, opts, out, may_repair)?;
        let b = build(&right, level, opts, out, may_repair)?;
        let (ef, case) = match kind {
            SumKind::One => (product(&a, &b)?, "sum1"),
            _ => (compose_2sum(&a, &b, &e.shared[0])?, "sum2"),
        };
        record(out, level, tree, case, &ef);
        return Ok(ef);
    }
    let star = star_decompose(tree)?;
    let center = tree.node(star.center);
    let triangles: Vec<[String; 3]> = star.leaves.iter().map(|l| l.triangle.clone()).collect();
    let asymmetric = |part: &Part| -> Result<PairFormulation, FormulationError> {
        asymmetric_pair(&node_ef(part, opts.cap)?.0, &triangles)
    };
    let (r, kind) = match center.part.kind() {
        PartKind::Graphic => (pair_formulation_graphic(center.part.graph().expect("graphic part"), &triangles)?, "graphic"),
        PartKind::Cographic => match pair_formulation_cographic(center.part.graph().expect("cographic part"), &triangles) {
            Ok(r) => (r, "cographic"),
            Err(FormulationError::NotVertexStar(_) | FormulationError::NotStable(..)) => {
                if may_repair {
                    let mut fixed = tree.clone();
                    if let Ok(rep) = repair_cographic_node(&mut fixed, &center.id) {
                        if rep.residual.is_empty() {
                            // A parallel swap leaves `alpha` where `alpha_prime` was.
                            let ef = build(&fixed, level, opts, out, false)?.rename_ground(|g| {
                                rep.parallel_swaps
                                    .iter()
                                    .find(|(a, _)| a == g)
                                    .map_or_else(|| g.into(), |(_, b)| b.clone())
                            })?;
                            record(out, level, &fixed, "repaired", &ef);
                            return Ok(ef);
                        }
                    }
                }
                (asymmetric(&center.part)?, "asymmetric")
            }
            Err(e) => return Err(e),
        },
        _ => (asymmetric(&center.part)?, "asymmetric"),
    };
    let mut leaves = Vec::with_capacity(star.leaves.len());
    let mut leaf_counts = Vec::new();
    let mut prime_counts = Vec::new();
    for leaf in &star.leaves {
        let sub = subtree(tree, &leaf.nodes)?;
        let leaf_ef = if sub.nodes().len() == 1 && leaf.matroid.len() <= opts.cap {
            let ef = explicit_flat_ef(&leaf.matroid, opts.cap)?;
            record(out, level + 1, &sub, "flats", &ef);
            ef
        } else {
            build(&sub, level + 1, opts, out, true)?
        };
        let p1 = p_prime_ef(&leaf_ef, &leaf.triangle, Variant::Prime)?;
        let p2 = p_prime_ef(&leaf_ef, &leaf.triangle, Variant::DoublePrime)?;
        leaf_counts.push(leaf_ef.inequality_count());
        prime_counts.push(p1.inequality_count() + p2.inequality_count());
        leaves.push((p1, p2));
    }
    let ef = glue_star(&r, &leaves)?;
    let r_count = r.ef.inequality_count();
    let e0 = r.e0.len();
    out.stars.push(StarRecord {
        level,
        center: center.id.clone(),
        kind,
        center_elements: center.part.matroid().len(),
        e0,
        r_count,
        leaf_counts,
        prime_counts,
        total: ef.inequality_count(),
        c1: if e0 == 0 { 0.0 } else { r_count as f64 / (e0 * e0) as f64 },
    });
    record(out, level, tree, kind_case(kind), &ef);
    Ok(ef)
}

fn kind_case(kind: &'static str) -> &'static str {
    match kind {
        "graphic" => "star-graphic",
        "cographic" => "star-cographic",
        _ => "star-asymmetric",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::tree::tests::k5_pair;
    use crate::matroid::{BinaryMatroid, Graph};

    /// A 0/1 point is in the projection exactly when it is independent,
    /// checked on every `stride`-th subset (in Gray code order, which keeps
    /// warm starts short).
    fn assert_exact(ef: &ExtendedFormulation, m: &BinaryMatroid, stride: usize) {
        assert_eq!(ef.ground, m.elements());
        let n = m.len();
        let mut s = ef.session();
        for k in (0u64..1 << n).step_by(stride) {
            let mask = k ^ (k >> 1);
            let x: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            assert_eq!(s.contains_01(&x), m.is_independent_mask(mask), "mask {mask:b}");
        }
    }

    #[test]
    fn k5_pair_is_exact_and_counts_add_up() {
        let t = k5_pair();
        let out = regular_pipeline(&t, &PipelineOptions::default()).unwrap();
        assert_exact(&out.ef, &t.compose().unwrap(), 61);
        assert_eq!(out.stars.len(), 1);
        let s = &out.stars[0];
        assert_eq!(s.kind, "graphic");
        assert_eq!(s.total, s.r_count + s.prime_counts.iter().sum::<usize>());
        assert_eq!(s.prime_counts[0], 16 * s.leaf_counts[0]);
    }

    fn k34_with_k5() -> DecompositionTree {
        // The bigger part is the centroid; `b1` has degree 3.
        let k34 = Graph::complete_bipartite(3, 4);
        let b1 = k34.vertices().iter().position(|v| v == "b1").unwrap();
        let star: Vec<String> = k34.incident(b1).into_iter().map(|k| k34.edges()[k].name.clone()).collect();
        let mut k5 = Graph::complete(5);
        for (old, new) in ["e12", "e13", "e23"].iter().zip(&star) {
            k5.rename_edge(old, new).unwrap();
        }
        let mut t = DecompositionTree::new();
        t.add_node("a", Part::cographic(k34)).unwrap();
        t.add_node("b", Part::graphic(k5)).unwrap();
        let shared: Vec<&str> = star.iter().map(|s| s.as_str()).collect();
        t.add_edge("a", "b", &shared).unwrap();
        t
    }

    #[test]
    fn cographic_center_is_exact() {
        let t = k34_with_k5();
        let out = regular_pipeline(&t, &PipelineOptions::default()).unwrap();
        assert_exact(&out.ef, &t.compose().unwrap(), 509);
        assert_eq!(out.stars[0].kind, "cographic");
    }

    #[test]
    fn binary_center_falls_back_to_copies() {
        let mut t = k5_pair();
        let left = t.node(0).part.matroid().clone();
        let mut u = DecompositionTree::new();
        u.add_node("left", Part::binary(left)).unwrap();
        u.add_node("right", t.node(1).part.clone()).unwrap();
        u.add_edge("left", "right", &["e12", "e13", "e23"]).unwrap();
        t = u;
        let out = regular_pipeline(&t, &PipelineOptions::default()).unwrap();
        assert_exact(&out.ef, &t.compose().unwrap(), 61);
        assert_eq!(out.stars[0].kind, "asymmetric");
    }

    #[test]
    fn lower_sums_split_first() {
        let tri = |a: &str, b: &str, p: &str| Graph::from_edges(&[(a, "1", "2"), (b, "2", "3"), (p, "1", "3")]).unwrap();
        let mut t = DecompositionTree::new();
        t.add_node("x", Part::graphic(tri("a", "b", "p"))).unwrap();
        t.add_node("y", Part::graphic(tri("c", "d", "p"))).unwrap();
        t.add_node("z", Part::graphic(tri("f", "g", "h"))).unwrap();
        t.add_edge("x", "y", &["p"]).unwrap();
        t.add_edge("y", "z", &[]).unwrap();
        let out = regular_pipeline(&t, &PipelineOptions::default()).unwrap();
        assert_exact(&out.ef, &t.compose().unwrap(), 1);
        let cases: Vec<&str> = out.ledger.iter().map(|e| e.case).collect();
        assert!(cases.contains(&"sum1") && cases.contains(&"sum2"));
    }
}
