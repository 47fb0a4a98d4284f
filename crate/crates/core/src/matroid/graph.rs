use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{is_valid_name, BinaryMatroid, MatroidError};
use crate::gf2::BitVec;

/// An edge with a unique name between two distinct vertices (by index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub u: usize,
    pub v: usize,
}

/// Undirected multigraph without self-loops. Vertices are named and kept in
/// insertion order; parallel edges are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    vertex_index: BTreeMap<String, usize>,
    edges: Vec<Edge>,
    edge_index: BTreeMap<String, usize>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(edges: &[(&str, &str, &str)]) -> Result<Self, MatroidError> {
        let mut g = Graph::new();
        for (name, u, v) in edges {
            g.add_edge(name, u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, MatroidError> {
        if let Some(&i) = self.vertex_index.get(name) {
            return Ok(i);
        }
        if !is_valid_name(name) {
            return Err(MatroidError::InvalidName(name.to_string()));
        }
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), self.vertices.len() - 1);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_edge(&mut self, name: &str, u: &str, v: &str) -> Result<usize, MatroidError> {
        if !is_valid_name(name) {
            return Err(MatroidError::InvalidName(name.to_string()));
        }
        if self.edge_index.contains_key(name) {
            return Err(MatroidError::DuplicateElement(name.to_string()));
        }
        if u == v {
            return Err(MatroidError::SelfLoop(name.to_string()));
        }
        let u = self.add_vertex(u)?;
        let v = self.add_vertex(v)?;
        self.edges.push(Edge { name: name.to_string(), u, v });
        self.edge_index.insert(name.to_string(), self.edges.len() - 1);
        Ok(self.edges.len() - 1)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, name: &str) -> Result<usize, MatroidError> {
        self.vertex_index.get(name).copied().ok_or_else(|| MatroidError::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, name: &str) -> Result<usize, MatroidError> {
        self.edge_index.get(name).copied().ok_or_else(|| MatroidError::UnknownElement(name.to_string()))
    }

    pub fn edge_names(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.name.clone()).collect()
    }

    /// Edge indices incident to `v`, in edge order.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].u == v || self.edges[e].v == v).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident(v).len()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let ed = &self.edges[e];
        if ed.u == v {
            ed.v
        } else {
            ed.u
        }
    }

    /// Vertex with the lexicographically least name.
    pub fn least_vertex(&self) -> Option<usize> {
        self.vertex_index.values().next().copied()
    }

    /// Vertex indices sorted by name.
    pub fn vertices_by_name(&self) -> Vec<usize> {
        self.vertex_index.values().copied().collect()
    }

    /// Vertex sets of connected components using only edges with
    /// `allowed[e]` and vertices with `present[v]`.
    fn components_filtered(&self, allowed: &[bool], present: &[bool]) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            if allowed[i] && present[e.u] && present[e.v] {
                adj[e.u].push(e.v);
                adj[e.v].push(e.u);
            }
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || !present[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_filtered(&vec![true; self.edges.len()], &vec![true; self.vertices.len()])
    }

    /// Components after removing the given edges (all vertices kept).
    pub fn components_without_edges(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let mut allowed = vec![true; self.edges.len()];
        for &e in removed {
            allowed[e] = false;
        }
        self.components_filtered(&allowed, &vec![true; self.vertices.len()])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected with at least two vertices and no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        if self.vertices.len() < 2 || !self.is_connected() {
            return false;
        }
        if self.vertices.len() == 2 {
            return true;
        }
        let all = vec![true; self.edges.len()];
        (0..self.vertices.len()).all(|v| {
            let mut present = vec![true; self.vertices.len()];
            present[v] = false;
            self.components_filtered(&all, &present).len() == 1
        })
    }

    /// Edges whose removal disconnects their component.
    pub fn bridges(&self) -> Vec<usize> {
        let base = self.components().len();
        (0..self.edges.len()).filter(|&e| self.components_without_edges(&[e]).len() > base).collect()
    }

    /// A set of edges is a bond iff removing it splits a connected graph into
    /// exactly two components and every edge joins the two sides.
    pub fn is_bond(&self, set: &[usize]) -> bool {
        if set.is_empty() || !self.is_connected() {
            return false;
        }
        let comps = self.components_without_edges(set);
        if comps.len() != 2 {
            return false;
        }
        let side = self.side_map(&comps[0]);
        set.iter().all(|&e| side[self.edges[e].u] != side[self.edges[e].v])
    }

    /// Indicator vector of a vertex set.
    pub fn side_map(&self, side: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.vertices.len()];
        for &v in side {
            m[v] = true;
        }
        m
    }

    /// Edges with exactly one end in `side`.
    pub fn cut(&self, side: &[usize]) -> Vec<usize> {
        let m = self.side_map(side);
        (0..self.edges.len()).filter(|&e| m[self.edges[e].u] != m[self.edges[e].v]).collect()
    }

    /// Edges with both ends in `side`.
    pub fn induced_edges(&self, side: &[usize]) -> Vec<usize> {
        let m = self.side_map(side);
        (0..self.edges.len()).filter(|&e| m[self.edges[e].u] && m[self.edges[e].v]).collect()
    }

    /// Cycle matroid M(G): rows are vertex incidence vectors mod 2.
    pub fn cycle_matroid(&self) -> BinaryMatroid {
        let n = self.edges.len();
        let rows = (0..self.vertices.len())
            .map(|v| {
                BitVec::from_indices(n, (0..n).filter(|&e| self.edges[e].u == v || self.edges[e].v == v))
            })
            .collect();
        BinaryMatroid::from_rows(self.edge_names(), rows).expect("edge names are validated")
    }

    /// Bond matroid M*(G).
    pub fn bond_matroid(&self) -> BinaryMatroid {
        self.cycle_matroid().dual()
    }

    /// Rename an edge.
    pub fn rename_edge(&mut self, old: &str, new: &str) -> Result<(), MatroidError> {
        let e = self.edge(old)?;
        if old == new {
            return Ok(());
        }
        if !is_valid_name(new) {
            return Err(MatroidError::InvalidName(new.to_string()));
        }
        if self.edge_index.contains_key(new) {
            return Err(MatroidError::DuplicateElement(new.to_string()));
        }
        self.edge_index.remove(old);
        self.edge_index.insert(new.to_string(), e);
        self.edges[e].name = new.to_string();
        Ok(())
    }

    /// Subgraph on the given edges, keeping only the vertices they touch.
    pub fn edge_subgraph(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::new();
        for &e in keep {
            let ed = &self.edges[e];
            g.add_edge(&ed.name, &self.vertices[ed.u], &self.vertices[ed.v]).expect("names already valid");
        }
        g
    }

    /// Complete graph on vertices `1..=n`, edges named `e<i><j>` with `i < j`
    /// (indices joined with `_` when `n >= 10`).
    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new();
        for i in 1..=n {
            g.add_vertex(&i.to_string()).unwrap();
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                let name = if n >= 10 { alloc::format!("e{i}_{j}") } else { alloc::format!("e{i}{j}") };
                g.add_edge(&name, &i.to_string(), &j.to_string()).unwrap();
            }
        }
        g
    }

    /// Complete bipartite graph with sides `a1..` and `b1..`, edges `a<i>b<j>`.
    pub fn complete_bipartite(p: usize, q: usize) -> Graph {
        let mut g = Graph::new();
        for i in 1..=p {
            for j in 1..=q {
                g.add_edge(&alloc::format!("a{i}b{j}"), &alloc::format!("a{i}"), &alloc::format!("b{j}")).unwrap();
            }
        }
        g
    }

    /// The Petersen graph: outer 5-cycle `o0..o4`, inner pentagram `i0..i4`.
    pub fn petersen() -> Graph {
        let mut g = Graph::new();
        for k in 0..5 {
            let o = alloc::format!("o{k}");
            let o2 = alloc::format!("o{}", (k + 1) % 5);
            let i = alloc::format!("i{k}");
            let i2 = alloc::format!("i{}", (k + 2) % 5);
            g.add_edge(&alloc::format!("s{k}"), &o, &i).unwrap();
            g.add_edge(&alloc::format!("o{k}o{}", (k + 1) % 5), &o, &o2).unwrap();
            g.add_edge(&alloc::format!("i{k}i{}", (k + 2) % 5), &i, &i2).unwrap();
        }
        g
    }

    /// Distinct vertex names used by the edges in `set`.
    pub fn touched_vertices(&self, set: &[usize]) -> BTreeSet<usize> {
        set.iter().flat_map(|&e| [self.edges[e].u, self.edges[e].v]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_cycle_matroid_rank() {
        let g = Graph::complete(4);
        assert_eq!(g.edge_count(), 6);
        let m = g.cycle_matroid();
        assert_eq!(m.full_rank(), 3);
        assert_eq!(g.bond_matroid().full_rank(), 3);
    }

    #[test]
    fn petersen_shape() {
        let g = Graph::petersen();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert!(g.is_two_connected());
    }

    #[test]
    fn bridges_and_bonds() {
        let g = Graph::from_edges(&[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"), ("d", "3", "4")]).unwrap();
        assert_eq!(g.bridges(), vec![3]);
        assert!(g.is_bond(&[0, 2]));
        assert!(!g.is_bond(&[0]));
        assert!(!g.is_two_connected());
    }

    #[test]
    fn rejects_self_loop() {
        assert!(matches!(Graph::from_edges(&[("a", "1", "1")]), Err(MatroidError::SelfLoop(_))));
    }
}
