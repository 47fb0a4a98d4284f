//! Gluing formulations along 2-sums and 3-sums.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::pair::{primed, PairFormulation};
use super::FormulationError;
use crate::lp::{balas_union, intersect, join, ExtendedFormulation, LinearProgram, Rational, Sense, UnionMode};

/// Which copy of the triangle block a leaf formulation serves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Full-triangle piece at `e_alpha + e_beta`.
    Prime,
    /// Full-triangle piece at `e_beta + e_gamma`.
    DoublePrime,
}

fn fix(leaf: &ExtendedFormulation, t: &[String; 3], vals: [i64; 3]) -> Result<ExtendedFormulation, FormulationError> {
    let fixes: Vec<(&str, Rational)> = t.iter().map(|s| s.as_str()).zip(vals.map(Rational::from_integer)).collect();
    Ok(leaf.fix_coordinates(&fixes)?)
}

/// `P(M2 \ T, X)`: independent sets of `M2 \ T` whose span meets `T`
/// inside `X`, obtained from a formulation of `P(M2)` by fixing the
/// triangle coordinates (faces of `P(M2)`):
/// `X = {}` is `P(M2 / T)` (fix `alpha = beta = 1`, `gamma = 0`), `X = T` is
/// `P(M2 \ T)` (fix all to 0), and a singleton `{t}` is the intersection of
/// the two minors contracting one other triangle element and deleting the
/// rest. `x_subset` lists positions in `t`.
pub fn minor_polytope_ef(
    leaf: &ExtendedFormulation,
    t: &[String; 3],
    x_subset: &[usize],
) -> Result<ExtendedFormulation, FormulationError> {
    match x_subset {
        [] => fix(leaf, t, [1, 1, 0]),
        [p] if *p < 3 => {
            let others: Vec<usize> = (0..3).filter(|q| q != p).collect();
            let mut a = [0; 3];
            a[others[0]] = 1;
            let mut b = [0; 3];
            b[others[1]] = 1;
            Ok(intersect(&fix(leaf, t, a)?, &fix(leaf, t, b)?)?)
        }
        [0, 1, 2] => fix(leaf, t, [0, 0, 0]),
        _ => Err(FormulationError::BlockMismatch(format!("unsupported span pattern {x_subset:?}"))),
    }
}

/// `P'(M2)` (or `P''(M2)`): convex hull of `P(M2\T, {}) x {0}`,
/// `P(M2\T, {t}) x {e_t}` for each `t` and `P(M2\T, T) x {e_alpha + e_beta}`
/// (`e_beta + e_gamma` for the double-primed variant). The ground is
/// `E(M2) \ T` followed by the triangle coordinates under their own names.
pub fn p_prime_ef(
    leaf: &ExtendedFormulation,
    t: &[String; 3],
    variant: Variant,
) -> Result<ExtendedFormulation, FormulationError> {
    let with_t = |ef: ExtendedFormulation, vals: [i64; 3]| -> Result<ExtendedFormulation, FormulationError> {
        let coords: Vec<(&str, Rational)> = t.iter().map(|s| s.as_str()).zip(vals.map(Rational::from_integer)).collect();
        Ok(ef.with_constant_coords(&coords)?)
    };
    let full = match variant {
        Variant::Prime => [1, 1, 0],
        Variant::DoublePrime => [0, 1, 1],
    };
    let pieces = [
        with_t(minor_polytope_ef(leaf, t, &[])?, [0, 0, 0])?,
        with_t(minor_polytope_ef(leaf, t, &[0])?, [1, 0, 0])?,
        with_t(minor_polytope_ef(leaf, t, &[1])?, [0, 1, 0])?,
        with_t(minor_polytope_ef(leaf, t, &[2])?, [0, 0, 1])?,
        with_t(minor_polytope_ef(leaf, t, &[0, 1, 2])?, full)?,
    ];
    Ok(balas_union(&pieces, UnionMode::Bounded)?)
}

/// Glue a center pair formulation to the leaves: for leaf `i` with
/// triangle `T_i`, `(x^i, x^{T'_i})` must lie in `P'(M_i)` and
/// `(x^i, x^{T''_i})` in `P''(M_i)`. The primed blocks are then projected
/// away, leaving `E0` followed by each leaf's `E(M_i) \ T_i`.
pub fn glue_star(
    r: &PairFormulation,
    leaves: &[(ExtendedFormulation, ExtendedFormulation)],
) -> Result<ExtendedFormulation, FormulationError> {
    if leaves.len() != r.triangles.len() {
        return Err(FormulationError::BlockMismatch(format!(
            "{} triangles but {} leaves",
            r.triangles.len(),
            leaves.len()
        )));
    }
    let mut parts = alloc::vec![r.ef.clone()];
    let mut ground = r.ef.ground.clone();
    let mut hidden = Vec::new();
    for (t, (p1, p2)) in r.triangles.iter().zip(leaves) {
        for e in t {
            if p1.ground_index(e).is_none() || p2.ground_index(e).is_none() {
                return Err(FormulationError::BlockMismatch(format!("leaf lacks triangle element `{e}`")));
            }
            hidden.push(primed(e, 1));
            hidden.push(primed(e, 2));
        }
        for g in &p1.ground {
            if !t.contains(g) {
                if ground.contains(g) {
                    return Err(FormulationError::BlockMismatch(format!("element `{g}` in two blocks")));
                }
                ground.push(g.clone());
            }
        }
        let rename = |copy: usize| move |g: &str| if t.iter().any(|e| e == g) { primed(g, copy) } else { g.into() };
        parts.push(p1.rename_ground(rename(1))?);
        parts.push(p2.rename_ground(rename(2))?);
    }
    Ok(join(&parts, &ground)?.forget(&hidden)?)
}

/// `P(M1 (+)_2 M2)` from formulations of `P(M1)` and `P(M2)` sharing the
/// element `shared`: `(x1, s1) in P(M1)`, `(x2, s2) in P(M2)`, `s1 + s2 = 1`.
/// Requiring `s1 = s2` instead would admit the union of two circuits that
/// each become dependent only through `shared`.
pub fn compose_2sum(
    ef1: &ExtendedFormulation,
    ef2: &ExtendedFormulation,
    shared: &str,
) -> Result<ExtendedFormulation, FormulationError> {
    let common: Vec<&String> = ef1.ground.iter().filter(|g| ef2.ground_index(g).is_some()).collect();
    if common.len() != 1 || common[0] != shared {
        return Err(FormulationError::WrongOverlap(shared.into()));
    }
    let (i1, i2) = (ef1.ground_index(shared).unwrap(), ef2.ground_index(shared).unwrap());
    let mut lp = LinearProgram::new();
    let m1 = lp.append(&ef1.lp.namespaced("l"))?;
    let m2 = lp.append(&ef2.lp.namespaced("r"))?;
    let (s1, s2) = (&ef1.projection[i1], &ef2.projection[i2]);
    let terms = s1.terms.iter().map(|(v, c)| (m1[*v], c.clone())).chain(s2.terms.iter().map(|(v, c)| (m2[*v], c.clone())));
    lp.add_row(&format!("glue:{shared}"), terms, Sense::Eq, &(&Rational::one() - &s1.constant) - &s2.constant)?;
    let mut ground = Vec::new();
    let mut projection = Vec::new();
    for (ef, map, skip) in [(ef1, &m1, i1), (ef2, &m2, i2)] {
        for (k, (g, p)) in ef.ground.iter().zip(&ef.projection).enumerate() {
            if k != skip {
                ground.push(g.clone());
                projection.push(crate::lp::AffineExpr::new(
                    p.terms.iter().map(|(v, c)| (map[*v], c.clone())),
                    p.constant.clone(),
                ));
            }
        }
    }
    Ok(ExtendedFormulation::new(lp, ground, projection)?)
}

/// `Q_T(M0)` itself as the sandwiched polytope: one copy of a formulation
/// of `P(M0)` per choice of primed/double-primed triangle blocks, glued on
/// `E0`. Exponential in the number of triangles; used for centers without
/// a flow formulation.
pub fn asymmetric_pair(
    center: &ExtendedFormulation,
    triangles: &[[String; 3]],
) -> Result<PairFormulation, FormulationError> {
    let k = triangles.len();
    let in_triangle = |g: &str| triangles.iter().position(|t| t.iter().any(|e| e == g));
    let e0: Vec<String> = center.ground.iter().filter(|g| in_triangle(g).is_none()).cloned().collect();
    let mut ground = e0.clone();
    for t in triangles {
        for copy in [1, 2] {
            ground.extend(t.iter().map(|e| primed(e, copy)));
        }
    }
    let mut parts = Vec::with_capacity(1 << k);
    for mask in 0..(1usize << k) {
        let choice = |i: usize| if mask >> i & 1 == 1 { 2 } else { 1 };
        parts.push(center.rename_ground(|g| match in_triangle(g) {
            Some(i) => primed(g, choice(i)),
            None => g.into(),
        })?);
    }
    let ef = join(&parts, &ground)?;
    Ok(PairFormulation { ef, e0, triangles: triangles.to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulations::explicit_flat_ef;
    use crate::matroid::{Graph, DEFAULT_CAP};

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn two_sum_of_triangles_is_a_square() {
        let a = Graph::from_edges(&[("a", "1", "2"), ("b", "2", "3"), ("p", "1", "3")]).unwrap();
        let b = Graph::from_edges(&[("c", "4", "5"), ("d", "5", "6"), ("p", "4", "6")]).unwrap();
        let ea = explicit_flat_ef(&a.cycle_matroid(), DEFAULT_CAP).unwrap();
        let eb = explicit_flat_ef(&b.cycle_matroid(), DEFAULT_CAP).unwrap();
        let s = compose_2sum(&ea, &eb, "p").unwrap();
        assert_eq!(s.ground, ["a", "b", "c", "d"].map(String::from).to_vec());
        assert_eq!(s.maximize_over_projection(&[r(1), r(1), r(1), r(1)]), Some(r(3)));
        assert_eq!(s.inequality_count(), ea.inequality_count() + eb.inequality_count());
        assert!(matches!(compose_2sum(&ea, &ea, "p"), Err(FormulationError::WrongOverlap(_))));
    }

    #[test]
    fn prime_pieces_count_eight_leaves() {
        let k5 = Graph::complete(5).cycle_matroid();
        let leaf = explicit_flat_ef(&k5, DEFAULT_CAP).unwrap();
        let t: [String; 3] = ["e12".into(), "e13".into(), "e23".into()];
        let p = p_prime_ef(&leaf, &t, Variant::Prime).unwrap();
        assert_eq!(p.inequality_count(), 8 * leaf.inequality_count());
        // Triangle coordinates of any point sum to at most 2.
        let mut w = alloc::vec![r(0); p.dim()];
        for e in &t {
            w[p.ground_index(e).unwrap()] = r(1);
        }
        assert_eq!(p.maximize_over_projection(&w), Some(r(2)));
    }
}
