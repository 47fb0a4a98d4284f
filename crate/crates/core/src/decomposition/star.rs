use alloc::string::String;
use alloc::vec::Vec;

use super::sum::SumKind;
use super::tree::DecompositionTree;
use super::DecompositionError;
use crate::matroid::BinaryMatroid;

/// One branch hanging off the center: the composed matroid of a component
/// of `tree - center`, which still contains the connecting triangle.
#[derive(Clone, Debug)]
pub struct StarLeaf {
    pub edge: usize,
    pub nodes: Vec<usize>,
    pub triangle: [String; 3],
    pub matroid: BinaryMatroid,
}

#[derive(Clone, Debug)]
pub struct StarDecomposition {
    pub center: usize,
    pub leaves: Vec<StarLeaf>,
    /// `|E(M_v)| - 3 deg(v)` per node.
    pub weights: Vec<i64>,
    /// Size of the composed matroid.
    pub total: usize,
}

impl StarDecomposition {
    /// The size bounds every centroid star satisfies:
    /// `|E(M0)| <= n`, `|E(Mi)| <= n/2 + 3` and `k <= n/4`.
    pub fn check_invariants(&self, tree: &DecompositionTree) -> Result<(), DecompositionError> {
        let n = self.total;
        let center = tree.node(self.center).part.matroid().len();
        if center > n {
            return Err(DecompositionError::StarInvariant("center larger than the composed matroid"));
        }
        for leaf in &self.leaves {
            if 2 * leaf.matroid.len() > n + 6 {
                return Err(DecompositionError::StarInvariant("leaf larger than n/2 + 3"));
            }
        }
        if 4 * self.leaves.len() > n {
            return Err(DecompositionError::StarInvariant("more than n/4 leaves"));
        }
        Ok(())
    }
}

/// Centroid star of a tree of 3-sums. The center is the node (least id
/// among ties) such that every component of `tree - center` carries at
/// most half the total weight.
pub fn star_decompose(tree: &DecompositionTree) -> Result<StarDecomposition, DecompositionError> {
    tree.validate()?;
    for e in tree.edges() {
        if e.kind()? != SumKind::Three {
            return Err(DecompositionError::StarNeedsThreeSums);
        }
    }
    let weights: Vec<i64> = (0..tree.nodes().len())
        .map(|v| tree.node(v).part.matroid().len() as i64 - 3 * tree.incident_edges(v).len() as i64)
        .collect();
    let total_weight: i64 = weights.iter().sum();
    let mut order: Vec<usize> = (0..tree.nodes().len()).collect();
    order.sort_by(|&a, &b| tree.node(a).id.cmp(&tree.node(b).id));
    let center = order
        .into_iter()
        .find(|&v| {
            tree.incident_edges(v).into_iter().all(|k| {
                let w = tree.edges()[k].other(v);
                let comp = tree.component_of(w, Some(k));
                2 * comp.iter().map(|&u| weights[u]).sum::<i64>() <= total_weight
            })
        })
        .expect("every tree has a weight centroid");
    let mut leaves = Vec::new();
    for k in tree.incident_edges(center) {
        let edge = &tree.edges()[k];
        let w = edge.other(center);
        let nodes = tree.component_of(w, Some(k));
        let order: Vec<usize> = (0..tree.edges().len()).collect();
        let matroid = tree.compose_nodes(&nodes, &order)?;
        leaves.push(StarLeaf {
            edge: k,
            nodes,
            triangle: [edge.shared[0].clone(), edge.shared[1].clone(), edge.shared[2].clone()],
            matroid,
        });
    }
    let total = (total_weight) as usize;
    Ok(StarDecomposition { center, leaves, weights, total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::tree::{DecompositionTree, Part};
    use crate::matroid::Graph;

    /// K5 parts glued along vertex-disjoint triangles of a central K5-like
    /// part, forming a path of `n` nodes.
    fn k5_chain(n: usize) -> DecompositionTree {
        let mut t = DecompositionTree::new();
        for i in 0..n {
            // Node i uses vertices {a,b,c} shared with the previous node and
            // {d,e,f'} shared with the next one through K6 minus nothing.
            let mut g = Graph::new();
            let v: Vec<String> = (0..6).map(|k| alloc::format!("n{i}v{k}")).collect();
            let prev: Vec<String> = (0..3).map(|k| alloc::format!("n{}v{}", i.wrapping_sub(1), k + 3)).collect();
            let verts: Vec<String> =
                if i == 0 { v.clone() } else { prev.iter().cloned().chain(v[3..].iter().cloned()).collect() };
            for a in 0..6 {
                for b in (a + 1)..6 {
                    let name = alloc::format!("{}-{}", verts[a], verts[b]);
                    g.add_edge(&name, &verts[a], &verts[b]).unwrap();
                }
            }
            t.add_node(&alloc::format!("p{i}"), Part::graphic(g)).unwrap();
            if i > 0 {
                let s: Vec<String> = [(0, 1), (0, 2), (1, 2)]
                    .iter()
                    .map(|&(a, b)| alloc::format!("{}-{}", verts[a], verts[b]))
                    .collect();
                let refs: Vec<&str> = s.iter().map(|x| x.as_str()).collect();
                t.add_edge(&alloc::format!("p{}", i - 1), &alloc::format!("p{i}"), &refs).unwrap();
            }
        }
        t
    }

    #[test]
    fn chain_center_is_the_middle() {
        let t = k5_chain(5);
        let sd = star_decompose(&t).unwrap();
        assert_eq!(t.node(sd.center).id, "p2");
        assert_eq!(sd.leaves.len(), 2);
        sd.check_invariants(&t).unwrap();
        assert_eq!(sd.total, t.compose().unwrap().len());
    }

    #[test]
    fn single_node_is_its_own_center() {
        let t = DecompositionTree::single("only", Part::graphic(Graph::complete(4)));
        let sd = star_decompose(&t).unwrap();
        assert_eq!(sd.center, 0);
        assert!(sd.leaves.is_empty());
    }
}
