//! Formulations sandwiched between `P_T(M0)` and `Q_T(M0)` for a graphic or
//! cographic star center carrying triangles `T_1..T_k`.
//!
//! The ground is `E0` (center elements outside every triangle) followed, per
//! triangle `(alpha, beta, gamma)`, by the primed copies `alpha'`, `beta'`,
//! `gamma'` and the double-primed copies `alpha''`, `beta''`, `gamma''`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::wong::{add_unit_flow, arcs, Arc};
use super::FormulationError;
use crate::lp::{ExtendedFormulation, LinearProgram, Rational, Sense, VarId};
use crate::matroid::Graph;

#[derive(Clone, Debug)]
pub struct PairFormulation {
    pub ef: ExtendedFormulation,
    pub e0: Vec<String>,
    pub triangles: Vec<[String; 3]>,
}

/// `e'` for `copy == 1`, `e''` for `copy == 2`.
pub fn primed(e: &str, copy: usize) -> String {
    match copy {
        1 => format!("{e}'"),
        _ => format!("{e}''"),
    }
}

impl PairFormulation {
    /// Coordinates of `(x^0, x^{T*_1}, ..)` for one choice of copies
    /// (`choice[i]` is 1 or 2), in ground order.
    pub fn choice_coords(&self, choice: &[usize]) -> Vec<String> {
        let mut out = self.e0.clone();
        for (t, &c) in self.triangles.iter().zip(choice) {
            out.extend(t.iter().map(|e| primed(e, c)));
        }
        out
    }
}

/// Triangle slot of each edge: `None` for `E0`, else `(triangle, position)`.
fn triangle_slots(g: &Graph, triangles: &[[String; 3]]) -> Result<Vec<Option<(usize, usize)>>, FormulationError> {
    let mut slot = alloc::vec![None; g.edge_count()];
    for (i, t) in triangles.iter().enumerate() {
        for (p, e) in t.iter().enumerate() {
            let k = g.edge(e)?;
            if slot[k].is_some() {
                return Err(FormulationError::NotEdgeDisjoint(e.clone()));
            }
            slot[k] = Some((i, p));
        }
    }
    Ok(slot)
}

struct Blocks {
    arcs: Vec<Arc>,
    slot: Vec<Option<(usize, usize)>>,
    /// Capacity for `E0` arcs or the primed copy.
    c1: Vec<VarId>,
    /// Double-primed capacity for triangle arcs (equal to `c1` on `E0`).
    c2: Vec<VarId>,
    e0: Vec<String>,
    coords: Vec<(String, VarId)>,
}

/// x- and c-variables, the x-to-capacity coupling, `c(A) = |V| - 1` and the
/// per-triangle consistency equations shared by both pair formulations.
fn common_blocks(
    lp: &mut LinearProgram,
    g: &Graph,
    triangles: &[[String; 3]],
    complemented: bool,
    cap_lb: Option<Rational>,
) -> Result<Blocks, FormulationError> {
    let slot = triangle_slots(g, triangles)?;
    let arcs = arcs(g);
    let mut c1 = Vec::with_capacity(arcs.len());
    let mut c2 = Vec::with_capacity(arcs.len());
    for a in &arcs {
        let e = &g.edges()[a.edge].name;
        let dir = &a.name[e.len()..];
        match slot[a.edge] {
            None => {
                let c = lp.add_var(&format!("c:{}", a.name), cap_lb.clone(), None)?;
                c1.push(c);
                c2.push(c);
            }
            Some(_) => {
                c1.push(lp.add_var(&format!("c:{}{dir}", primed(e, 1)), cap_lb.clone(), None)?);
                c2.push(lp.add_var(&format!("c:{}{dir}", primed(e, 2)), cap_lb.clone(), None)?);
            }
        }
    }
    let mut e0 = Vec::new();
    let mut x0 = Vec::new();
    let mut xt: Vec<[[Option<VarId>; 3]; 2]> = alloc::vec![[[None; 3]; 2]; triangles.len()];
    let coupling = |lp: &mut LinearProgram, name: &str, x: VarId, ca: VarId, cb: VarId| {
        let (s, rhs) = if complemented { (Rational::one(), Rational::one()) } else { (-Rational::one(), Rational::zero()) };
        lp.add_row(&format!("ub:{name}"), [(x, Rational::one()), (ca, s.clone()), (cb, s)], Sense::Le, rhs)
    };
    for (k, e) in g.edges().iter().enumerate() {
        match slot[k] {
            None => {
                let x = lp.add_nonneg(&format!("x:{}", e.name))?;
                coupling(lp, &e.name, x, c1[2 * k], c1[2 * k + 1])?;
                e0.push(e.name.clone());
                x0.push(x);
            }
            Some((i, p)) => {
                for (copy, caps) in [(1, &c1), (2, &c2)] {
                    let name = primed(&e.name, copy);
                    let x = lp.add_nonneg(&format!("x:{name}"))?;
                    coupling(lp, &name, x, caps[2 * k], caps[2 * k + 1])?;
                    xt[i][copy - 1][p] = Some(x);
                }
            }
        }
    }
    let mut coords: Vec<(String, VarId)> = e0.iter().cloned().zip(x0).collect();
    for (t, blocks) in triangles.iter().zip(&xt) {
        for (copy, vars) in blocks.iter().enumerate() {
            for (e, v) in t.iter().zip(vars) {
                coords.push((primed(e, copy + 1), v.expect("every triangle element seen")));
            }
        }
    }
    // c^0(A0) + sum_i c^{T'_i}(B_i) = |V| - 1.
    lp.add_row("arb", c1.iter().map(|&c| (c, Rational::one())), Sense::Eq, Rational::from(g.vertex_count() - 1))?;
    for i in 0..triangles.len() {
        let terms = arcs
            .iter()
            .enumerate()
            .filter(|(_, a)| slot[a.edge].is_some_and(|(j, _)| j == i))
            .flat_map(|(q, _)| [(c1[q], Rational::one()), (c2[q], -Rational::one())]);
        lp.add_row(&format!("cons:{i}"), terms, Sense::Eq, Rational::zero())?;
    }
    Ok(Blocks { arcs, slot, c1, c2, e0, coords })
}

fn le(lp: &mut LinearProgram, name: String, terms: &[(VarId, i64)], rhs: i64) -> Result<(), FormulationError> {
    lp.add_row(&name, terms.iter().map(|&(v, c)| (v, Rational::from_integer(c))), Sense::Le, Rational::from_integer(rhs))?;
    Ok(())
}

/// Vertex triples of each triangle, checking it is a 3-clique.
fn triangle_vertices(g: &Graph, triangles: &[[String; 3]]) -> Result<Vec<[usize; 3]>, FormulationError> {
    triangles
        .iter()
        .map(|t| {
            let mut vs = BTreeSet::new();
            let mut pairs = BTreeSet::new();
            for e in t {
                let ed = &g.edges()[g.edge(e)?];
                vs.insert(ed.u);
                vs.insert(ed.v);
                pairs.insert((ed.u.min(ed.v), ed.u.max(ed.v)));
            }
            if vs.len() != 3 || pairs.len() != 3 {
                return Err(FormulationError::NotTriangleClique(t.join(",")));
            }
            let v: Vec<usize> = vs.into_iter().collect();
            Ok([v[0], v[1], v[2]])
        })
        .collect()
}

/// Pair formulation for a graphic center `M(G)`: Wong's formulation with a
/// second capacity copy per triangle and, for every non-root vertex and
/// triangle, a circulation rerouting the flow inside the triangle.
pub fn pair_formulation_graphic(g: &Graph, triangles: &[[String; 3]]) -> Result<PairFormulation, FormulationError> {
    if g.edge_count() == 0 {
        return Err(FormulationError::NoEdges);
    }
    if !g.is_connected() {
        return Err(FormulationError::Disconnected);
    }
    let tverts = triangle_vertices(g, triangles)?;
    let mut lp = LinearProgram::new();
    let b = common_blocks(&mut lp, g, triangles, false, None)?;
    let root = g.least_vertex().expect("nonempty");
    for v in g.vertices_by_name() {
        if v == root {
            continue;
        }
        let vname = g.vertices()[v].clone();
        let phi = add_unit_flow(&mut lp, g, &b.arcs, root, v)?;
        let mut delta: Vec<Option<VarId>> = alloc::vec![None; b.arcs.len()];
        for (q, a) in b.arcs.iter().enumerate() {
            if b.slot[a.edge].is_some() {
                delta[q] = Some(lp.add_free(&format!("delta:{vname}:{}", a.name))?);
            }
        }
        for (i, tv) in tverts.iter().enumerate() {
            for &u in tv {
                let terms: Vec<(VarId, Rational)> = b
                    .arcs
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| b.slot[a.edge].is_some_and(|(j, _)| j == i))
                    .filter_map(|(q, a)| {
                        let d = delta[q].unwrap();
                        if a.tail == u {
                            Some((d, Rational::one()))
                        } else if a.head == u {
                            Some((d, -Rational::one()))
                        } else {
                            None
                        }
                    })
                    .collect();
                lp.add_row(&format!("circ:{vname}:{i}:{}", g.vertices()[u]), terms, Sense::Eq, Rational::zero())?;
            }
        }
        for (q, a) in b.arcs.iter().enumerate() {
            le(&mut lp, format!("cap:{vname}:{}", a.name), &[(phi[q], 1), (b.c1[q], -1)], 0)?;
            if let Some(d) = delta[q] {
                le(&mut lp, format!("alt0:{vname}:{}", a.name), &[(phi[q], -1), (d, -1)], 0)?;
                le(&mut lp, format!("alt:{vname}:{}", a.name), &[(phi[q], 1), (d, 1), (b.c2[q], -1)], 0)?;
            }
        }
    }
    let ef = ExtendedFormulation::from_vars(lp, &b.coords)?;
    Ok(PairFormulation { ef, e0: b.e0, triangles: triangles.to_vec() })
}

/// Pair formulation for a cographic center `M*(G)` whose triangles are the
/// edge stars of pairwise non-adjacent degree-3 vertices. Flows are only
/// needed for vertices outside the stars and the root; each star vertex
/// instead gets `c(delta_in(v_i)) >= 1` for both capacity copies.
pub fn pair_formulation_cographic(g: &Graph, triangles: &[[String; 3]]) -> Result<PairFormulation, FormulationError> {
    if g.edge_count() == 0 {
        return Err(FormulationError::NoEdges);
    }
    if !g.is_connected() {
        return Err(FormulationError::Disconnected);
    }
    let mut stars = Vec::with_capacity(triangles.len());
    for t in triangles {
        let ks: Vec<usize> = t.iter().map(|e| g.edge(e)).collect::<Result<_, _>>()?;
        let ends = |k: usize| [g.edges()[k].u, g.edges()[k].v];
        let center = ends(ks[0])
            .into_iter()
            .find(|&v| ks.iter().all(|&k| ends(k).contains(&v)) && g.degree(v) == 3)
            .ok_or_else(|| FormulationError::NotVertexStar(t.join(",")))?;
        stars.push(center);
    }
    for (i, &a) in stars.iter().enumerate() {
        for &b in &stars[i + 1..] {
            if a == b || g.incident(a).iter().any(|&k| g.other_end(k, a) == b) {
                return Err(FormulationError::NotStable(g.vertices()[a].clone(), g.vertices()[b].clone()));
            }
        }
    }
    let root = g.vertices_by_name().into_iter().find(|v| !stars.contains(v)).ok_or(FormulationError::NoValidRoot)?;
    let targets: Vec<usize> = g.vertices_by_name().into_iter().filter(|&v| v != root && !stars.contains(&v)).collect();
    let mut lp = LinearProgram::new();
    // Capacities are bounded below by the flows; without any flow they
    // need explicit nonnegativity.
    let cap_lb = targets.is_empty().then(Rational::zero);
    let b = common_blocks(&mut lp, g, triangles, true, cap_lb)?;
    for &v in &targets {
        let vname = g.vertices()[v].clone();
        let phi = add_unit_flow(&mut lp, g, &b.arcs, root, v)?;
        for (q, a) in b.arcs.iter().enumerate() {
            le(&mut lp, format!("cap:{vname}:{}", a.name), &[(phi[q], 1), (b.c1[q], -1)], 0)?;
            if b.slot[a.edge].is_some() {
                le(&mut lp, format!("cap2:{vname}:{}", a.name), &[(phi[q], 1), (b.c2[q], -1)], 0)?;
            }
        }
    }
    for (i, &s) in stars.iter().enumerate() {
        for (copy, caps) in [(1, &b.c1), (2, &b.c2)] {
            let terms = b.arcs.iter().enumerate().filter(|(_, a)| a.head == s).map(|(q, _)| (caps[q], Rational::one()));
            lp.add_row(&format!("in{copy}:{i}"), terms, Sense::Ge, Rational::one())?;
        }
    }
    let ef = ExtendedFormulation::from_vars(lp, &b.coords)?;
    Ok(PairFormulation { ef, e0: b.e0, triangles: triangles.to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri() -> [String; 3] {
        ["e12".into(), "e13".into(), "e23".into()]
    }

    #[test]
    fn graphic_variable_counts() {
        let g = Graph::complete(4);
        let p = pair_formulation_graphic(&g, &[tri()]).unwrap();
        let (v, e, k) = (4, 6, 1);
        let e0 = e - 3 * k;
        let count = |prefix: &str| p.ef.lp.vars().iter().filter(|x| x.name.starts_with(prefix)).count();
        assert_eq!(count("x:"), e0 + 6 * k);
        assert_eq!(count("c:"), 2 * e0 + 12 * k);
        assert_eq!(count("phi:"), (v - 1) * 2 * e);
        assert_eq!(count("delta:"), (v - 1) * 6 * k);
        assert_eq!(p.ef.dim(), e0 + 6 * k);
    }

    #[test]
    fn rejects_bad_triangles() {
        let g = Graph::complete(4);
        let bad: [String; 3] = ["e12".into(), "e13".into(), "e14".into()];
        assert!(matches!(pair_formulation_graphic(&g, &[bad]), Err(FormulationError::NotTriangleClique(_))));
        assert!(matches!(pair_formulation_cographic(&g, &[tri()]), Err(FormulationError::NotVertexStar(_))));
    }

    #[test]
    fn cographic_star_root_and_rows() {
        let g = Graph::complete(4);
        let star: [String; 3] = ["e14".into(), "e24".into(), "e34".into()];
        let p = pair_formulation_cographic(&g, &[star]).unwrap();
        // Root is vertex 1; flows only for vertices 2 and 3.
        let flows = p.ef.lp.vars().iter().filter(|x| x.name.starts_with("phi:")).count();
        assert_eq!(flows, 2 * 12);
        assert!(p.ef.lp.rows().iter().any(|r| r.name == "in2:0"));
    }
}
