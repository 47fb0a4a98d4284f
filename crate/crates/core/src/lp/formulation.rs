//! Extended formulations: a linear system plus an affine map onto named
//! ground coordinates.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::program::{normalize_terms, LinearProgram, Sense, SizeReport, VarId};
use super::simplex::{LpSolution, Simplex, Status};
use super::{LpError, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffineExpr {
    pub terms: Vec<(VarId, Rational)>,
    pub constant: Rational,
}

impl AffineExpr {
    pub fn var(v: VarId) -> Self {
        AffineExpr { terms: alloc::vec![(v, Rational::one())], constant: Rational::zero() }
    }

    pub fn constant(c: Rational) -> Self {
        AffineExpr { terms: Vec::new(), constant: c }
    }

    pub fn new(terms: impl IntoIterator<Item = (VarId, Rational)>, constant: Rational) -> Self {
        AffineExpr { terms: normalize_terms(terms), constant }
    }

    pub fn eval(&self, y: &[Rational]) -> Rational {
        self.terms.iter().fold(self.constant.clone(), |acc, (v, c)| &acc + &(c * &y[*v]))
    }

    fn remap(&self, map: &[VarId]) -> AffineExpr {
        AffineExpr { terms: self.terms.iter().map(|(v, c)| (map[*v], c.clone())).collect(), constant: self.constant.clone() }
    }

    fn scaled(&self, s: &Rational) -> AffineExpr {
        AffineExpr {
            terms: self.terms.iter().map(|(v, c)| (*v, c * s)).filter(|(_, c)| !c.is_zero()).collect(),
            constant: &self.constant * s,
        }
    }
}

/// `x = projection(y)` for `y` feasible in `lp`; `x` is indexed by `ground`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedFormulation {
    pub lp: LinearProgram,
    pub ground: Vec<String>,
    pub projection: Vec<AffineExpr>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnionMode {
    /// Every piece is a nonempty polytope.
    Bounded,
    /// Pieces are nonempty polyhedra sharing one recession cone.
    CommonRecession,
}

impl ExtendedFormulation {
    pub fn new(lp: LinearProgram, ground: Vec<String>, projection: Vec<AffineExpr>) -> Result<Self, LpError> {
        if ground.len() != projection.len() {
            return Err(LpError::DimensionMismatch { expected: ground.len(), found: projection.len() });
        }
        let mut seen = BTreeSet::new();
        for g in &ground {
            if !crate::matroid::is_valid_name(g) {
                return Err(LpError::InvalidName(g.clone()));
            }
            if !seen.insert(g.as_str()) {
                return Err(LpError::DuplicateName(g.clone()));
            }
        }
        let n = lp.vars().len();
        for p in &projection {
            if let Some((v, _)) = p.terms.iter().find(|(v, _)| *v >= n) {
                return Err(LpError::UnknownVariable(format!("#{v}")));
            }
        }
        Ok(ExtendedFormulation { lp, ground, projection })
    }

    /// Projection where each ground coordinate is one variable.
    pub fn from_vars(lp: LinearProgram, coords: &[(String, VarId)]) -> Result<Self, LpError> {
        let ground = coords.iter().map(|(g, _)| g.clone()).collect();
        let projection = coords.iter().map(|(_, v)| AffineExpr::var(*v)).collect();
        Self::new(lp, ground, projection)
    }

    pub fn dim(&self) -> usize {
        self.ground.len()
    }

    pub fn ground_index(&self, name: &str) -> Option<usize> {
        self.ground.iter().position(|g| g == name)
    }

    pub fn size(&self) -> SizeReport {
        self.lp.size()
    }

    /// Inequality count (rows other than equations plus finite bounds).
    pub fn inequality_count(&self) -> usize {
        self.lp.size().inequalities
    }

    pub fn project(&self, y: &[Rational]) -> Vec<Rational> {
        self.projection.iter().map(|p| p.eval(y)).collect()
    }

    /// Prefix every variable and row name; ground and projection unchanged.
    pub fn namespaced(&self, prefix: &str) -> Self {
        ExtendedFormulation { lp: self.lp.namespaced(prefix), ground: self.ground.clone(), projection: self.projection.clone() }
    }

    /// Copy this formulation's system into `lp` under `prefix`, returning
    /// the projection in terms of `lp`'s variables.
    fn embed(&self, lp: &mut LinearProgram, prefix: &str) -> Result<Vec<AffineExpr>, LpError> {
        let map = lp.append(&self.lp.namespaced(prefix))?;
        Ok(self.projection.iter().map(|p| p.remap(&map)).collect())
    }

    pub fn rename_ground(&self, f: impl Fn(&str) -> String) -> Result<Self, LpError> {
        let ground = self.ground.iter().map(|g| f(g)).collect();
        Self::new(self.lp.clone(), ground, self.projection.clone())
    }

    /// Same polytope with the ground listed in `order` (a permutation).
    pub fn reorder(&self, order: &[String]) -> Result<Self, LpError> {
        if order.len() != self.ground.len() {
            return Err(LpError::GroundMismatch);
        }
        let mut projection = Vec::with_capacity(order.len());
        for g in order {
            let i = self.ground_index(g).ok_or(LpError::GroundMismatch)?;
            projection.push(self.projection[i].clone());
        }
        Self::new(self.lp.clone(), order.to_vec(), projection)
    }

    /// Append coordinates that are constant on the whole polytope.
    pub fn with_constant_coords(&self, coords: &[(&str, Rational)]) -> Result<Self, LpError> {
        let mut out = self.clone();
        for (g, c) in coords {
            if out.ground_index(g).is_some() {
                return Err(LpError::GroundOverlap(g.to_string()));
            }
            out.ground.push(g.to_string());
            out.projection.push(AffineExpr::constant(c.clone()));
        }
        Self::new(out.lp, out.ground, out.projection)
    }

    /// Intersect with `x_g = value` for each listed coordinate and drop
    /// those coordinates from the ground.
    pub fn fix_coordinates(&self, fixes: &[(&str, Rational)]) -> Result<Self, LpError> {
        let mut lp = self.lp.clone();
        let mut drop = BTreeSet::new();
        for (g, value) in fixes {
            let i = self.ground_index(g).ok_or_else(|| LpError::UnknownGround(g.to_string()))?;
            let p = &self.projection[i];
            lp.add_row(&format!("fix:{g}"), p.terms.iter().cloned(), Sense::Eq, value - &p.constant)?;
            drop.insert(i);
        }
        let keep: Vec<usize> = (0..self.ground.len()).filter(|i| !drop.contains(i)).collect();
        Self::new(
            lp,
            keep.iter().map(|&i| self.ground[i].clone()).collect(),
            keep.iter().map(|&i| self.projection[i].clone()).collect(),
        )
    }

    /// Project away the listed coordinates.
    pub fn forget(&self, names: &[String]) -> Result<Self, LpError> {
        for n in names {
            if self.ground_index(n).is_none() {
                return Err(LpError::UnknownGround(n.clone()));
            }
        }
        let keep: Vec<usize> = (0..self.ground.len()).filter(|&i| !names.contains(&self.ground[i])).collect();
        Self::new(
            self.lp.clone(),
            keep.iter().map(|&i| self.ground[i].clone()).collect(),
            keep.iter().map(|&i| self.projection[i].clone()).collect(),
        )
    }

    pub fn session(&self) -> ProjectionSession<'_> {
        ProjectionSession { ef: self, simplex: Simplex::new(&self.lp), member: None, pivots: 0 }
    }

    /// Objective on the lifted variables equal to `w · projection(y)`,
    /// plus the constant offset.
    pub fn pull_back(&self, w: &[Rational]) -> (Vec<(VarId, Rational)>, Rational) {
        let mut terms = Vec::new();
        let mut constant = Rational::zero();
        for (p, c) in self.projection.iter().zip(w) {
            if c.is_zero() {
                continue;
            }
            constant = &constant + &(c * &p.constant);
            terms.extend(p.terms.iter().map(|(v, a)| (*v, a * c)));
        }
        (normalize_terms(terms), constant)
    }

    /// Max of `w · x` over the projection (`None` if empty or unbounded).
    pub fn maximize_over_projection(&self, w: &[Rational]) -> Option<Rational> {
        let s = self.session().optimize(w, true);
        (s.status == Status::Optimal).then(|| s.value.unwrap())
    }

    /// A lifted point projecting to `x`, if one exists.
    pub fn lift_feasible(&self, x: &[Rational]) -> Result<Option<Vec<Rational>>, LpError> {
        if x.len() != self.ground.len() {
            return Err(LpError::DimensionMismatch { expected: self.ground.len(), found: x.len() });
        }
        let mut lp = self.lp.clone();
        for (i, (p, v)) in self.projection.iter().zip(x).enumerate() {
            let rhs = v - &p.constant;
            if p.terms.is_empty() {
                if !rhs.is_zero() {
                    return Ok(None);
                }
                continue;
            }
            lp.add_row(&format!("lift:{i}"), p.terms.iter().cloned(), Sense::Eq, rhs)?;
        }
        let mut s = Simplex::new(&lp);
        Ok(s.feasible().then(|| s.point()))
    }
}

/// Repeated optimization over one formulation. Phase one runs once; each
/// objective warm-starts from the previous optimum.
#[derive(Clone)]
pub struct ProjectionSession<'a> {
    ef: &'a ExtendedFormulation,
    simplex: Simplex,
    /// Membership tableau: the program plus one free variable per ground
    /// coordinate, pinned to the queried point.
    member: Option<Member>,
    pivots: usize,
}

/// Dual pivots allowed per membership query before falling back to a
/// fresh solve.
const MEMBER_PIVOT_LIMIT: usize = 20_000;

#[derive(Clone)]
struct Member {
    simplex: Simplex,
    z: Vec<VarId>,
    nonempty: bool,
}

fn membership_simplex(ef: &ExtendedFormulation) -> Member {
    let mut lp = ef.lp.clone();
    let mut z = Vec::with_capacity(ef.ground.len());
    for (i, p) in ef.projection.iter().enumerate() {
        let v = lp.add_free(&format!("member:{i}")).expect("fresh name");
        let terms = core::iter::once((v, Rational::one())).chain(p.terms.iter().map(|(t, c)| (*t, -c)));
        lp.add_row(&format!("member:{i}"), terms, Sense::Eq, p.constant.clone()).expect("fresh name");
        z.push(v);
    }
    let mut simplex = Simplex::new(&lp);
    let nonempty = simplex.feasible();
    Member { simplex, z, nonempty }
}

impl ProjectionSession<'_> {
    /// Simplex pivots performed so far, phase one included.
    pub fn pivots(&self) -> usize {
        self.simplex.pivots() + self.pivots
    }

    pub fn is_nonempty(&mut self) -> bool {
        self.simplex.feasible()
    }

    /// Optimize `w · x` over the projection; `value` includes the constant part.
    pub fn optimize(&mut self, w: &[Rational], maximize: bool) -> LpSolution {
        self.optimize_to(w, maximize, None)
    }

    /// Optimize, stopping early with [`Status::Reached`] once `w · x` is at
    /// least as good as `target`.
    pub fn optimize_to(&mut self, w: &[Rational], maximize: bool, target: Option<&Rational>) -> LpSolution {
        let (obj, constant) = self.ef.pull_back(w);
        let target = target.map(|t| t - &constant);
        let mut s = self.simplex.optimize_to(&obj, maximize, target.as_ref());
        if let Some(v) = s.value.take() {
            s.value = Some(&v + &constant);
        }
        s
    }

    pub fn maximize(&mut self, w: &[Rational]) -> Option<Rational> {
        let s = self.optimize(w, true);
        (s.status == Status::Optimal).then(|| s.value.unwrap())
    }

    pub fn minimize(&mut self, w: &[Rational]) -> Option<Rational> {
        let s = self.optimize(w, false);
        (s.status == Status::Optimal).then(|| s.value.unwrap())
    }

    /// Whether the 0/1 point `x` lies in the projection.
    ///
    /// The coordinates are pinned as bounds on a persistent tableau and
    /// feasibility is restored by dual pivots from the previous query's
    /// basis, so queries that differ in few coordinates are cheap.
    pub fn contains_01(&mut self, x: &[bool]) -> bool {
        assert_eq!(x.len(), self.ef.ground.len(), "one value per ground coordinate");
        let xr: Vec<Rational> = x.iter().map(|&b| Rational::from_integer(b as i64)).collect();
        let ef = self.ef;
        let member = self.member.get_or_insert_with(|| membership_simplex(ef));
        if !member.nonempty {
            return false;
        }
        let simplex = &mut member.simplex;
        for (&v, t) in member.z.iter().zip(&xr) {
            simplex.set_bounds(v, Some(t.clone()), Some(t.clone()));
        }
        let before = simplex.pivots();
        let outcome = simplex.restore_feasibility(MEMBER_PIVOT_LIMIT);
        self.pivots += simplex.pivots() - before;
        match outcome {
            Some(f) => f,
            None => {
                self.member = None;
                self.ef.lift_feasible(&xr).expect("dimension checked").is_some()
            }
        }
    }
}

fn check_nonempty_ground(ef: &ExtendedFormulation) -> Result<(), LpError> {
    if ef.ground.is_empty() {
        Err(LpError::EmptyGround)
    } else {
        Ok(())
    }
}

/// Cartesian product over disjoint ground sets.
pub fn product(a: &ExtendedFormulation, b: &ExtendedFormulation) -> Result<ExtendedFormulation, LpError> {
    check_nonempty_ground(a)?;
    check_nonempty_ground(b)?;
    if let Some(g) = b.ground.iter().find(|g| a.ground_index(g).is_some()) {
        return Err(LpError::GroundOverlap(g.clone()));
    }
    let mut lp = LinearProgram::new();
    let mut projection = a.embed(&mut lp, "l")?;
    projection.extend(b.embed(&mut lp, "r")?);
    let ground = a.ground.iter().chain(&b.ground).cloned().collect();
    ExtendedFormulation::new(lp, ground, projection)
}

/// Intersection over a common ground (order taken from `a`).
pub fn intersect(a: &ExtendedFormulation, b: &ExtendedFormulation) -> Result<ExtendedFormulation, LpError> {
    check_nonempty_ground(a)?;
    let b = b.reorder(&a.ground)?;
    let mut lp = LinearProgram::new();
    let pa = a.embed(&mut lp, "a")?;
    let pb = b.embed(&mut lp, "b")?;
    for (g, (p, q)) in a.ground.iter().zip(pa.iter().zip(&pb)) {
        let terms = p.terms.iter().cloned().chain(q.terms.iter().map(|(v, c)| (*v, -c)));
        lp.add_row(&format!("meet:{g}"), terms, Sense::Eq, &q.constant - &p.constant)?;
    }
    ExtendedFormulation::new(lp, a.ground.clone(), pa)
}

/// Glue formulations along equally named coordinates: the result lives on
/// `ground`, every part's ground must be a subset of it, and each coordinate
/// shared by several parts gets one equation per extra part. Every ground
/// coordinate must be covered by some part.
pub fn join(parts: &[ExtendedFormulation], ground: &[String]) -> Result<ExtendedFormulation, LpError> {
    let mut lp = LinearProgram::new();
    let index: BTreeMap<&str, usize> = ground.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
    let mut out: Vec<Option<AffineExpr>> = alloc::vec![None; ground.len()];
    for (j, part) in parts.iter().enumerate() {
        let proj = part.embed(&mut lp, &format!("j{j}"))?;
        for (g, p) in part.ground.iter().zip(proj) {
            let &i = index.get(g.as_str()).ok_or_else(|| LpError::UnknownGround(g.clone()))?;
            match &out[i] {
                None => out[i] = Some(p),
                Some(first) => {
                    let terms = first.terms.iter().cloned().chain(p.terms.iter().map(|(v, c)| (*v, -c)));
                    lp.add_row(&format!("tie:{g}:{j}"), terms, Sense::Eq, &p.constant - &first.constant)?;
                }
            }
        }
    }
    let projection = out
        .into_iter()
        .zip(ground)
        .map(|(p, g)| p.ok_or_else(|| LpError::UnknownGround(g.clone())))
        .collect::<Result<_, _>>()?;
    ExtendedFormulation::new(lp, ground.to_vec(), projection)
}

/// Disjunctive (Balas) formulation of the convex hull of the union.
///
/// Each piece is homogenized with its own multiplier `lambda`, finite
/// bounds become rows scaled by `lambda`, and the multipliers sum to one.
/// For a bounded piece `lambda >= 0` is implied unless the piece is a single
/// point with every inequality tight, so the row is only added in that case
/// (and always in [`UnionMode::CommonRecession`]).
pub fn balas_union(pieces: &[ExtendedFormulation], mode: UnionMode) -> Result<ExtendedFormulation, LpError> {
    let first = pieces.first().ok_or(LpError::EmptyGround)?;
    check_nonempty_ground(first)?;
    let ground = first.ground.clone();
    let mut lp = LinearProgram::new();
    let mut total: Vec<Vec<(VarId, Rational)>> = alloc::vec![Vec::new(); ground.len()];
    let mut lambdas = Vec::new();
    for (i, piece) in pieces.iter().enumerate() {
        let piece = piece.reorder(&ground)?;
        let mut simplex = Simplex::new(&piece.lp);
        if !simplex.feasible() {
            return Err(LpError::EmptyPiece(i));
        }
        let needs_sign = match mode {
            UnionMode::CommonRecession => true,
            UnionMode::Bounded => !has_slack_inequality(&piece.lp, &simplex.point()),
        };
        let lambda = lp.add_var(&format!("lambda{i}"), if needs_sign { Some(Rational::zero()) } else { None }, None)?;
        lambdas.push(lambda);
        let prefix = format!("u{i}");
        let mut map = Vec::with_capacity(piece.lp.vars().len());
        for v in piece.lp.vars() {
            let name = format!("{prefix}/{}", v.name);
            // Zero bounds survive homogenization as plain variable bounds.
            let keep = |b: &Option<Rational>| b.as_ref().filter(|x| x.is_zero()).cloned();
            let (lb, ub) = if v.is_fixed() { (None, None) } else { (keep(&v.lb), keep(&v.ub)) };
            let id = lp.add_var(&name, lb, ub)?;
            map.push(id);
            if v.is_fixed() {
                let c = v.lb.clone().unwrap();
                lp.add_row(&format!("{name}:fix"), [(id, Rational::one()), (lambda, -&c)], Sense::Eq, Rational::zero())?;
                continue;
            }
            if let Some(l) = v.lb.as_ref().filter(|x| !x.is_zero()) {
                lp.add_row(&format!("{name}:lb"), [(id, Rational::one()), (lambda, -l)], Sense::Ge, Rational::zero())?;
            }
            if let Some(u) = v.ub.as_ref().filter(|x| !x.is_zero()) {
                lp.add_row(&format!("{name}:ub"), [(id, Rational::one()), (lambda, -u)], Sense::Le, Rational::zero())?;
            }
        }
        for row in piece.lp.rows() {
            let terms = row.terms.iter().map(|(v, c)| (map[*v], c.clone())).chain([(lambda, -&row.rhs)]);
            lp.add_row(&format!("{prefix}/{}", row.name), terms, row.sense, Rational::zero())?;
        }
        for (k, p) in piece.projection.iter().enumerate() {
            total[k].extend(p.remap(&map).terms);
            if !p.constant.is_zero() {
                total[k].push((lambda, p.constant.clone()));
            }
        }
    }
    lp.add_row("convex", lambdas.iter().map(|&l| (l, Rational::one())), Sense::Eq, Rational::one())?;
    let projection = total.into_iter().map(|t| AffineExpr::new(t, Rational::zero())).collect();
    ExtendedFormulation::new(lp, ground, projection)
}

/// Whether some inequality (row or finite bound) is strict at `y`.
fn has_slack_inequality(lp: &LinearProgram, y: &[Rational]) -> bool {
    for (v, val) in lp.vars().iter().zip(y) {
        if v.is_fixed() {
            continue;
        }
        if v.lb.as_ref().is_some_and(|l| val != l) || v.ub.as_ref().is_some_and(|u| val != u) {
            return true;
        }
    }
    lp.rows().iter().any(|r| {
        r.sense != Sense::Eq && {
            let lhs = r.terms.iter().fold(Rational::zero(), |a, (v, c)| &a + &(c * &y[*v]));
            lhs != r.rhs
        }
    })
}

/// Scale every coordinate of the projection (used to express `1 - x` and
/// similar reflections without touching the lifted system).
pub fn affine_image(ef: &ExtendedFormulation, scale: &Rational, shift: &Rational) -> ExtendedFormulation {
    let projection = ef
        .projection
        .iter()
        .map(|p| {
            let mut q = p.scaled(scale);
            q.constant = &q.constant + shift;
            q
        })
        .collect();
    ExtendedFormulation { lp: ef.lp.clone(), ground: ef.ground.clone(), projection }
}

/// Map from ground name to coordinate index.
pub fn ground_map(ef: &ExtendedFormulation) -> BTreeMap<&str, usize> {
    ef.ground.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect()
}
