//! Flow formulations of the r-arborescence dominant, the spanning tree
//! polytope and the independence polytopes of graphic and cographic
//! matroids.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::FormulationError;
use crate::lp::{product, AffineExpr, ExtendedFormulation, LinearProgram, Rational, Sense, VarId};
use crate::matroid::Graph;

/// One direction of an edge: `+` runs from the edge's first endpoint to its
/// second, `-` the other way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub edge: usize,
    pub tail: usize,
    pub head: usize,
    pub name: String,
}

/// Both arcs of every edge, in edge order (`+` before `-`).
pub fn arcs(g: &Graph) -> Vec<Arc> {
    g.edges()
        .iter()
        .enumerate()
        .flat_map(|(k, e)| {
            [
                Arc { edge: k, tail: e.u, head: e.v, name: format!("{}+", e.name) },
                Arc { edge: k, tail: e.v, head: e.u, name: format!("{}-", e.name) },
            ]
        })
        .collect()
}

/// Unit flow from `root` to `target`: nonnegative arc variables
/// `phi:<target>:<arc>` and one conservation row per vertex other than
/// `target`.
pub(crate) fn add_unit_flow(
    lp: &mut LinearProgram,
    g: &Graph,
    arcs: &[Arc],
    root: usize,
    target: usize,
) -> Result<Vec<VarId>, FormulationError> {
    let tname = &g.vertices()[target];
    let phi: Vec<VarId> = arcs
        .iter()
        .map(|a| lp.add_nonneg(&format!("phi:{tname}:{}", a.name)))
        .collect::<Result<_, _>>()?;
    for u in 0..g.vertex_count() {
        if u == target {
            continue;
        }
        let mut terms = Vec::new();
        for (a, &p) in arcs.iter().zip(&phi) {
            if a.tail == u {
                terms.push((p, Rational::one()));
            } else if a.head == u {
                terms.push((p, -Rational::one()));
            }
        }
        let rhs = if u == root { Rational::one() } else { Rational::zero() };
        lp.add_row(&format!("flow:{tname}:{}", g.vertices()[u]), terms, Sense::Eq, rhs)?;
    }
    Ok(phi)
}

fn require_connected(g: &Graph) -> Result<(), FormulationError> {
    if g.edge_count() == 0 {
        return Err(FormulationError::NoEdges);
    }
    if !g.is_connected() {
        return Err(FormulationError::Disconnected);
    }
    Ok(())
}

/// Capacities `c:<arc>` (free; `0 <= phi <= c` bounds them below) and a
/// unit flow to every non-root vertex. Returns the capacity variables.
fn wong_core(lp: &mut LinearProgram, g: &Graph, root: usize) -> Result<Vec<VarId>, FormulationError> {
    let arcs = arcs(g);
    let caps: Vec<VarId> = arcs.iter().map(|a| lp.add_free(&format!("c:{}", a.name))).collect::<Result<_, _>>()?;
    for v in g.vertices_by_name() {
        if v == root {
            continue;
        }
        let phi = add_unit_flow(lp, g, &arcs, root, v)?;
        let vname = &g.vertices()[v];
        for ((a, &p), &c) in arcs.iter().zip(&phi).zip(&caps) {
            lp.add_row(&format!("cap:{vname}:{}", a.name), [(p, Rational::one()), (c, -Rational::one())], Sense::Le, Rational::zero())?;
        }
    }
    Ok(caps)
}

/// The dominant of the r-arborescence polytope of the bidirected graph,
/// projected onto arc capacities (ground: arc names). The root is the
/// lexicographically least vertex.
pub fn wong_arborescence_dominant(g: &Graph) -> Result<ExtendedFormulation, FormulationError> {
    require_connected(g)?;
    let mut lp = LinearProgram::new();
    let root = g.least_vertex().expect("nonempty");
    let caps = wong_core(&mut lp, g, root)?;
    let coords: Vec<(String, VarId)> = arcs(g).into_iter().zip(caps).map(|(a, c)| (a.name, c)).collect();
    Ok(ExtendedFormulation::from_vars(lp, &coords)?)
}

fn arborescence_face(lp: &mut LinearProgram, g: &Graph) -> Result<Vec<VarId>, FormulationError> {
    let root = g.least_vertex().expect("nonempty");
    let caps = wong_core(lp, g, root)?;
    lp.add_row("arb", caps.iter().map(|&c| (c, Rational::one())), Sense::Eq, Rational::from(g.vertex_count() - 1))?;
    Ok(caps)
}

/// Spanning tree polytope: `x_uv = c_(u,v) + c_(v,u)` on the face
/// `c(A) = |V| - 1` of the arborescence dominant.
pub fn spanning_tree_ef(g: &Graph) -> Result<ExtendedFormulation, FormulationError> {
    require_connected(g)?;
    let mut lp = LinearProgram::new();
    let caps = arborescence_face(&mut lp, g)?;
    let ground = g.edge_names();
    let projection = (0..g.edge_count())
        .map(|k| AffineExpr::new([(caps[2 * k], Rational::one()), (caps[2 * k + 1], Rational::one())], Rational::zero()))
        .collect();
    Ok(ExtendedFormulation::new(lp, ground, projection)?)
}

fn per_component(
    g: &Graph,
    build: impl Fn(&Graph) -> Result<ExtendedFormulation, FormulationError>,
) -> Result<ExtendedFormulation, FormulationError> {
    if g.edge_count() == 0 {
        return Err(FormulationError::NoEdges);
    }
    let mut parts = Vec::new();
    for comp in g.components() {
        let edges = g.induced_edges(&comp);
        if !edges.is_empty() {
            parts.push(build(&g.edge_subgraph(&edges))?);
        }
    }
    if parts.len() == 1 {
        return Ok(parts.pop().unwrap());
    }
    let mut acc = parts[0].namespaced("k0");
    for (i, p) in parts.iter().enumerate().skip(1) {
        acc = product(&acc, &p.namespaced(&format!("k{i}")))?;
    }
    let order = g.edge_names();
    Ok(acc.reorder(&order)?)
}

/// `P(M(G))`: `0 <= x_uv <= c_(u,v) + c_(v,u)` over the arborescence face,
/// built per connected component.
pub fn graphic_independence_ef(g: &Graph) -> Result<ExtendedFormulation, FormulationError> {
    per_component(g, |g| {
        let mut lp = LinearProgram::new();
        let caps = arborescence_face(&mut lp, g)?;
        let mut coords = Vec::new();
        for (k, e) in g.edges().iter().enumerate() {
            let x = lp.add_nonneg(&format!("x:{}", e.name))?;
            lp.add_row(
                &format!("ub:{}", e.name),
                [(x, Rational::one()), (caps[2 * k], -Rational::one()), (caps[2 * k + 1], -Rational::one())],
                Sense::Le,
                Rational::zero(),
            )?;
            coords.push((e.name.clone(), x));
        }
        Ok(ExtendedFormulation::from_vars(lp, &coords)?)
    })
}

/// `P(M*(G))`: bases of `M*(G)` are complements of spanning trees, so
/// `0 <= x_uv <= 1 - c_(u,v) - c_(v,u)`. Bridges would be loops and are
/// rejected.
pub fn cographic_independence_ef(g: &Graph) -> Result<ExtendedFormulation, FormulationError> {
    if let Some(&b) = g.bridges().first() {
        return Err(FormulationError::BridgePresent(g.edges()[b].name.clone()));
    }
    per_component(g, |g| {
        let mut lp = LinearProgram::new();
        let caps = arborescence_face(&mut lp, g)?;
        let mut coords = Vec::new();
        for (k, e) in g.edges().iter().enumerate() {
            let x = lp.add_nonneg(&format!("x:{}", e.name))?;
            lp.add_row(
                &format!("ub:{}", e.name),
                [(x, Rational::one()), (caps[2 * k], Rational::one()), (caps[2 * k + 1], Rational::one())],
                Sense::Le,
                Rational::one(),
            )?;
            coords.push((e.name.clone(), x));
        }
        Ok(ExtendedFormulation::from_vars(lp, &coords)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(n: usize) -> Vec<Rational> {
        alloc::vec![Rational::one(); n]
    }

    #[test]
    fn single_arc_dominant() {
        let g = Graph::from_edges(&[("e", "r", "v")]).unwrap();
        let ef = wong_arborescence_dominant(&g).unwrap();
        // Ground is (e+, e-); root r, so only r->v matters.
        let mut s = ef.session();
        assert_eq!(s.minimize(&[Rational::one(), Rational::zero()]), Some(Rational::one()));
        assert_eq!(s.minimize(&[Rational::zero(), Rational::one()]), Some(Rational::zero()));
    }

    #[test]
    fn triangle_counts_and_optima() {
        let g = Graph::complete(3);
        let ef = wong_arborescence_dominant(&g).unwrap();
        assert_eq!(ef.lp.vars().len(), 2 * 6 + 6);
        assert_eq!(ef.session().minimize(&ones(6)), Some(Rational::from_integer(2)));
        let st = spanning_tree_ef(&g).unwrap();
        assert_eq!(st.maximize_over_projection(&ones(3)), Some(Rational::from_integer(2)));
        let gi = graphic_independence_ef(&g).unwrap();
        assert_eq!(gi.maximize_over_projection(&ones(3)), Some(Rational::from_integer(2)));
        let neg = alloc::vec![-Rational::one(); 3];
        assert_eq!(gi.maximize_over_projection(&neg), Some(Rational::zero()));
        let co = cographic_independence_ef(&g).unwrap();
        assert_eq!(co.maximize_over_projection(&ones(3)), Some(Rational::one()));
    }

    #[test]
    fn disconnected_graph_is_a_product() {
        let g = Graph::from_edges(&[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3"), ("d", "4", "5")]).unwrap();
        let ef = graphic_independence_ef(&g).unwrap();
        assert_eq!(ef.ground, g.edge_names());
        assert_eq!(ef.maximize_over_projection(&ones(4)), Some(Rational::from_integer(3)));
        assert!(matches!(cographic_independence_ef(&g), Err(FormulationError::BridgePresent(_))));
    }
}
