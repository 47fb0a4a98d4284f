use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::sum::{check_sum_operand, delta_sum_unchecked, SumKind};
use super::DecompositionError;
use crate::matroid::{r10, BinaryMatroid, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PartKind {
    Graphic,
    Cographic,
    R10,
    Binary,
}

impl PartKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PartKind::Graphic => "graphic",
            PartKind::Cographic => "cographic",
            PartKind::R10 => "r10",
            PartKind::Binary => "binary",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "graphic" => Some(PartKind::Graphic),
            "cographic" => Some(PartKind::Cographic),
            "r10" => Some(PartKind::R10),
            "binary" => Some(PartKind::Binary),
            _ => None,
        }
    }
}

/// A node payload: a graph read as its cycle or bond matroid, a copy of R10,
/// or an explicit binary matrix.
#[derive(Clone, Debug)]
pub struct Part {
    kind: PartKind,
    graph: Option<Graph>,
    matroid: BinaryMatroid,
}

impl Part {
    pub fn graphic(g: Graph) -> Self {
        Part { kind: PartKind::Graphic, matroid: g.cycle_matroid(), graph: Some(g) }
    }

    pub fn cographic(g: Graph) -> Self {
        Part { kind: PartKind::Cographic, matroid: g.bond_matroid(), graph: Some(g) }
    }

    pub fn binary(m: BinaryMatroid) -> Self {
        Part { kind: PartKind::Binary, graph: None, matroid: m }
    }

    /// A copy of R10, possibly with renamed elements. Rejects matroids not
    /// isomorphic to R10.
    pub fn r10(m: BinaryMatroid) -> Result<Self, DecompositionError> {
        let cap = m.len().max(1);
        if crate::matroid::find_isomorphism(&m, &r10(), cap)?.is_none() {
            return Err(DecompositionError::NotR10);
        }
        Ok(Part { kind: PartKind::R10, graph: None, matroid: m })
    }

    pub fn kind(&self) -> PartKind {
        self.kind
    }

    pub fn graph(&self) -> Option<&Graph> {
        self.graph.as_ref()
    }

    pub fn matroid(&self) -> &BinaryMatroid {
        &self.matroid
    }

    pub fn rename(&mut self, old: &str, new: &str) -> Result<(), DecompositionError> {
        if let Some(g) = self.graph.as_mut() {
            g.rename_edge(old, new)?;
        }
        self.matroid.rename(old, new)?;
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct TreeNode {
    pub id: String,
    pub part: Part,
}

/// An edge of a decomposition tree, labelled by the shared elements of its
/// two parts: none (1-sum), one (2-sum) or an ordered triangle (3-sum).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub shared: Vec<String>,
}

impl TreeEdge {
    pub fn kind(&self) -> Result<SumKind, DecompositionError> {
        SumKind::from_overlap(self.shared.len())
    }

    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct DecompositionTree {
    nodes: Vec<TreeNode>,
    edges: Vec<TreeEdge>,
}

impl DecompositionTree {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(id: &str, part: Part) -> Self {
        let mut t = Self::new();
        t.add_node(id, part).expect("first node");
        t
    }

    pub fn add_node(&mut self, id: &str, part: Part) -> Result<usize, DecompositionError> {
        if self.nodes.iter().any(|n| n.id == id) {
            return Err(DecompositionError::DuplicateNode(id.to_string()));
        }
        self.nodes.push(TreeNode { id: id.to_string(), part });
        Ok(self.nodes.len() - 1)
    }

    pub fn add_edge(&mut self, a: &str, b: &str, shared: &[&str]) -> Result<usize, DecompositionError> {
        let a = self.node_index(a)?;
        let b = self.node_index(b)?;
        SumKind::from_overlap(shared.len())?;
        self.edges.push(TreeEdge { a, b, shared: shared.iter().map(|s| s.to_string()).collect() });
        Ok(self.edges.len() - 1)
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn node_index(&self, id: &str) -> Result<usize, DecompositionError> {
        self.nodes.iter().position(|n| n.id == id).ok_or_else(|| DecompositionError::UnknownNode(id.to_string()))
    }

    pub fn node(&self, i: usize) -> &TreeNode {
        &self.nodes[i]
    }

    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].a == v || self.edges[e].b == v).collect()
    }

    /// Structural and matroidal validity: a tree; every shared element lies
    /// in exactly the two adjacent parts; every other element in exactly
    /// one part; each edge satisfies the side conditions of its sum.
    pub fn validate(&self) -> Result<(), DecompositionError> {
        if self.nodes.is_empty() {
            return Err(DecompositionError::NotATree("no nodes".to_string()));
        }
        if self.edges.len() + 1 != self.nodes.len() || self.component_of(0, None).len() != self.nodes.len() {
            return Err(DecompositionError::NotATree("must be connected and acyclic".to_string()));
        }
        let mut owners: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (i, n) in self.nodes.iter().enumerate() {
            for e in n.part.matroid().elements() {
                owners.entry(e.as_str()).or_default().push(i);
            }
        }
        let mut shared_by_edge: BTreeMap<&str, usize> = BTreeMap::new();
        for (k, edge) in self.edges.iter().enumerate() {
            if edge.a == edge.b {
                return Err(DecompositionError::NotATree("self-loop edge".to_string()));
            }
            for s in &edge.shared {
                if shared_by_edge.insert(s.as_str(), k).is_some() {
                    return Err(DecompositionError::SharedElement(s.clone()));
                }
                let mut own = owners.get(s.as_str()).cloned().unwrap_or_default();
                own.sort_unstable();
                let mut want = vec![edge.a, edge.b];
                want.sort_unstable();
                if own != want {
                    return Err(DecompositionError::SharedElement(s.clone()));
                }
            }
            check_sum_operand(self.nodes[edge.a].part.matroid(), &edge.shared)?;
            check_sum_operand(self.nodes[edge.b].part.matroid(), &edge.shared)?;
        }
        for (e, own) in &owners {
            if own.len() > 1 && !shared_by_edge.contains_key(e) {
                return Err(DecompositionError::SharedElement(e.to_string()));
            }
        }
        Ok(())
    }

    /// Nodes reachable from `start` without using edge `skip`.
    pub fn component_of(&self, start: usize, skip: Option<usize>) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = vec![start];
        while let Some(v) = stack.pop() {
            for e in self.incident_edges(v) {
                if Some(e) == skip {
                    continue;
                }
                let w = self.edges[e].other(v);
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Matroid of the subtree induced by `nodes`, summing along the internal
    /// edges in the given edge order.
    pub fn compose_nodes(&self, nodes: &[usize], edge_order: &[usize]) -> Result<BinaryMatroid, DecompositionError> {
        let inside: BTreeSet<usize> = nodes.iter().copied().collect();
        let mut group: Vec<usize> = (0..self.nodes.len()).collect();
        let mut matroid: BTreeMap<usize, BinaryMatroid> =
            nodes.iter().map(|&v| (v, self.nodes[v].part.matroid().clone())).collect();
        fn find(g: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while g[r] != r {
                r = g[r];
            }
            g[x] = r;
            r
        }
        for &k in edge_order {
            let edge = &self.edges[k];
            if !inside.contains(&edge.a) || !inside.contains(&edge.b) {
                continue;
            }
            let (ga, gb) = (find(&mut group, edge.a), find(&mut group, edge.b));
            let m1 = matroid.remove(&ga).expect("group root");
            let m2 = matroid.remove(&gb).expect("group root");
            check_sum_operand(&m1, &edge.shared)?;
            check_sum_operand(&m2, &edge.shared)?;
            let sum = delta_sum_unchecked(&m1, &m2, &edge.shared);
            group[gb] = ga;
            matroid.insert(ga, sum);
        }
        if matroid.len() != 1 {
            return Err(DecompositionError::NotATree("node set is not connected".to_string()));
        }
        Ok(matroid.into_values().next().unwrap())
    }

    /// The represented matroid, summing edges in file order.
    pub fn compose(&self) -> Result<BinaryMatroid, DecompositionError> {
        self.validate()?;
        let all: Vec<usize> = (0..self.nodes.len()).collect();
        let order: Vec<usize> = (0..self.edges.len()).collect();
        self.compose_nodes(&all, &order)
    }

    /// Rename `alpha` to `alpha_prime` across the 3-sum edge of `node` that
    /// carries `alpha`, where `alpha_prime` is a non-shared element of
    /// `node` parallel to `alpha`. The composed matroid changes only by
    /// renaming `alpha_prime` to `alpha`.
    pub fn swap_parallel(&mut self, node: &str, alpha: &str, alpha_prime: &str) -> Result<(), DecompositionError> {
        let v = self.node_index(node)?;
        let m = self.nodes[v].part.matroid();
        let (a, ap) = (m.index_of(alpha)?, m.index_of(alpha_prime)?);
        if a == ap || m.is_loop(a) || m.rank(&[a, ap]) != 1 {
            return Err(DecompositionError::NotParallel(alpha.to_string(), alpha_prime.to_string()));
        }
        let edge = self
            .incident_edges(v)
            .into_iter()
            .find(|&k| self.edges[k].shared.iter().any(|s| s == alpha))
            .ok_or_else(|| DecompositionError::NotShared(alpha.to_string()))?;
        if self.edges.iter().any(|e| e.shared.iter().any(|s| s == alpha_prime)) {
            return Err(DecompositionError::SharedElement(alpha_prime.to_string()));
        }
        let w = self.edges[edge].other(v);
        self.nodes[w].part.rename(alpha, alpha_prime)?;
        for s in self.edges[edge].shared.iter_mut() {
            if s == alpha {
                *s = alpha_prime.to_string();
            }
        }
        Ok(())
    }

    /// Apply a simultaneous exchange of two shared elements `e` and `f` of
    /// `node` that are parallel in it: the neighbour holding `e` gets `f`
    /// and vice versa. The composed matroid is unchanged.
    pub fn exchange_shared(&mut self, node: &str, e: &str, f: &str) -> Result<(), DecompositionError> {
        let v = self.node_index(node)?;
        let m = self.nodes[v].part.matroid();
        let (ie, jf) = (m.index_of(e)?, m.index_of(f)?);
        if ie == jf || m.is_loop(ie) || m.rank(&[ie, jf]) != 1 {
            return Err(DecompositionError::NotParallel(e.to_string(), f.to_string()));
        }
        let find = |x: &str| {
            self.incident_edges(v)
                .into_iter()
                .find(|&k| self.edges[k].shared.iter().any(|s| s == x))
                .ok_or_else(|| DecompositionError::NotShared(x.to_string()))
        };
        let (ke, kf) = (find(e)?, find(f)?);
        let (we, wf) = (self.edges[ke].other(v), self.edges[kf].other(v));
        let tmp = alloc::format!("{e}~swap");
        self.nodes[we].part.rename(e, &tmp)?;
        self.nodes[wf].part.rename(f, e)?;
        self.nodes[we].part.rename(&tmp, f)?;
        for s in self.edges[ke].shared.iter_mut() {
            if s == e {
                *s = f.to_string();
            }
        }
        for s in self.edges[kf].shared.iter_mut() {
            if s == f {
                *s = e.to_string();
            }
        }
        Ok(())
    }

    /// Replace node `v` by a subtree. `pieces` become new nodes (ids given),
    /// `internal` lists edges among the pieces by position, and every old
    /// edge of `v` is reattached to the piece containing its shared elements.
    pub fn replace_node(
        &mut self,
        v: usize,
        pieces: Vec<(String, Part)>,
        internal: Vec<(usize, usize, Vec<String>)>,
    ) -> Result<(), DecompositionError> {
        let old_id = self.nodes[v].id.clone();
        let mut new_nodes: Vec<TreeNode> = Vec::new();
        let mut map = vec![usize::MAX; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            if i != v {
                map[i] = new_nodes.len();
                new_nodes.push(n.clone());
            }
        }
        let base = new_nodes.len();
        for (id, part) in pieces {
            if new_nodes.iter().any(|n| n.id == id) {
                return Err(DecompositionError::DuplicateNode(id));
            }
            new_nodes.push(TreeNode { id, part });
        }
        let mut new_edges = Vec::new();
        for edge in &self.edges {
            let (a, b) = (edge.a, edge.b);
            let remap = |x: usize| -> Result<usize, DecompositionError> {
                if x != v {
                    return Ok(map[x]);
                }
                (base..new_nodes.len())
                    .find(|&p| edge.shared.iter().all(|s| new_nodes[p].part.matroid().contains(s)))
                    .ok_or_else(|| DecompositionError::CannotRepair(alloc::format!("edge of `{old_id}` lost its part")))
            };
            new_edges.push(TreeEdge { a: remap(a)?, b: remap(b)?, shared: edge.shared.clone() });
        }
        for (a, b, shared) in internal {
            new_edges.push(TreeEdge { a: base + a, b: base + b, shared });
        }
        self.nodes = new_nodes;
        self.edges = new_edges;
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn k5_pair() -> DecompositionTree {
        let a = Graph::complete(5);
        let mut b = Graph::new();
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
            b.add_edge(n, u, v).unwrap();
        }
        let mut t = DecompositionTree::new();
        t.add_node("left", Part::graphic(a)).unwrap();
        t.add_node("right", Part::graphic(b)).unwrap();
        t.add_edge("left", "right", &["e12", "e13", "e23"]).unwrap();
        t
    }

    #[test]
    fn composes_two_k5() {
        let t = k5_pair();
        let m = t.compose().unwrap();
        assert_eq!(m.len(), 14);
        assert_eq!(m.full_rank(), 6);
    }

    #[test]
    fn validation_catches_unshared_duplicates() {
        let mut t = k5_pair();
        t.edges[0].shared = vec!["e12".into(), "e13".into(), "e14".into()];
        assert!(t.validate().is_err());
    }

    #[test]
    fn r10_part_requires_isomorphism() {
        assert!(Part::r10(crate::matroid::r10()).is_ok());
        assert!(matches!(Part::r10(Graph::complete(5).cycle_matroid()), Err(DecompositionError::NotR10)));
    }
}
