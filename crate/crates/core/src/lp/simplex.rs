//! Exact revised simplex with implicit variable bounds.
//!
//! Every row gets a slack (`a·x + s = b`, with the slack's bounds encoding
//! the row sense), so the slacks form the starting basis. Rows whose
//! starting slack would violate its bounds are negated and get an
//! artificial variable, and phase one drives the artificials to zero.
//!
//! The basis inverse is kept in product form, one eta column per pivot,
//! and rebuilt from scratch every [`REFACTOR_EVERY`] pivots. Primal pricing
//! is Dantzig's rule; after a run of degenerate pivots it switches to
//! Bland's smallest-index rule until the objective moves again, which
//! rules out cycling.
//!
//! A [`Simplex`] keeps its basis between objectives, so repeated
//! optimization over the same feasible region only pays for phase one once.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::program::{LinearProgram, Sense, VarId};
use super::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    /// The objective reached the requested target; the point is feasible
    /// but not proven optimal.
    Reached,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: Status,
    /// Objective value at the optimum.
    pub value: Option<Rational>,
    /// Values of the program's variables (empty unless feasible).
    pub primal: Vec<Rational>,
    /// Names of the basic columns, row by row (`slack:<row>` for slacks).
    pub basis: Vec<String>,
}

const DEGENERATE_RUN: usize = 25;

/// Pivots between refactorizations of the basis inverse.
pub const REFACTOR_EVERY: usize = 64;

/// `E = I` with column `row` replaced so that `E alpha = e_row`.
#[derive(Clone, Debug)]
struct Eta {
    row: usize,
    pivot: Rational,
    others: Vec<(usize, Rational)>,
}

/// The constraint matrix `[A | I | artificials]`, rows negated where an
/// artificial was needed, in both orientations.
#[derive(Debug)]
struct Matrix {
    cols: Vec<Vec<(usize, Rational)>>,
    rows: Vec<Vec<(usize, Rational)>>,
}

#[derive(Clone, Debug)]
pub struct Simplex {
    n: usize,
    m: usize,
    ncols: usize,
    lb: Vec<Option<Rational>>,
    ub: Vec<Option<Rational>>,
    excluded: Vec<bool>,
    a: Arc<Matrix>,
    etas: Vec<Eta>,
    /// Length of the eta file right after the last refactorization.
    fresh: usize,
    basis: Vec<usize>,
    row_of: Vec<Option<usize>>,
    val: Vec<Rational>,
    names: Arc<Vec<String>>,
    feasible: Option<bool>,
    pivots: usize,
}

enum Leave {
    Flip,
    Row(usize),
}

impl Simplex {
    pub fn new(lp: &LinearProgram) -> Self {
        let n = lp.vars().len();
        let m = lp.rows().len();
        let mut infeasible = false;
        let mut lb: Vec<Option<Rational>> = Vec::with_capacity(n + m);
        let mut ub: Vec<Option<Rational>> = Vec::with_capacity(n + m);
        let mut val: Vec<Rational> = Vec::with_capacity(n + m);
        let mut names: Vec<String> = Vec::with_capacity(n + m);
        for v in lp.vars() {
            if let (Some(a), Some(b)) = (&v.lb, &v.ub) {
                if a > b {
                    infeasible = true;
                }
            }
            val.push(v.lb.clone().or_else(|| v.ub.clone()).unwrap_or_default());
            lb.push(v.lb.clone());
            ub.push(v.ub.clone());
            names.push(v.name.clone());
        }
        // Residual of each row at the starting point decides slack or artificial.
        let mut resid = Vec::with_capacity(m);
        for row in lp.rows() {
            let lhs = row.terms.iter().fold(Rational::zero(), |acc, (j, c)| &acc + &(c * &val[*j]));
            resid.push(&row.rhs - &lhs);
            let (l, u) = match row.sense {
                Sense::Le => (Some(Rational::zero()), None),
                Sense::Ge => (None, Some(Rational::zero())),
                Sense::Eq => (Some(Rational::zero()), Some(Rational::zero())),
            };
            lb.push(l);
            ub.push(u);
            names.push(alloc::format!("slack:{}", row.name));
        }
        let slack_ok = |i: usize, r: &Rational| {
            lb[n + i].as_ref().is_none_or(|l| r >= l) && ub[n + i].as_ref().is_none_or(|u| r <= u)
        };
        let art_rows: Vec<usize> = (0..m).filter(|&i| !slack_ok(i, &resid[i])).collect();
        let ncols = n + m + art_rows.len();
        let mut basis = vec![0; m];
        let mut row_of = vec![None; ncols];
        let mut rows: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(m);
        for (i, row) in lp.rows().iter().enumerate() {
            let mut r: Vec<(usize, Rational)> = row.terms.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
            r.sort_by_key(|(j, _)| *j);
            r.push((n + i, Rational::one()));
            rows.push(r);
        }
        val.resize(n + m, Rational::zero());
        for (k, &i) in art_rows.iter().enumerate() {
            let col = n + m + k;
            if resid[i].is_negative() {
                for (_, x) in rows[i].iter_mut() {
                    *x = -&*x;
                }
            }
            rows[i].push((col, Rational::one()));
            lb.push(Some(Rational::zero()));
            ub.push(None);
            val.push(resid[i].abs());
            names.push(alloc::format!("artificial:{}", lp.rows()[i].name));
            basis[i] = col;
            row_of[col] = Some(i);
        }
        let has_art: Vec<bool> = (0..m).map(|i| art_rows.binary_search(&i).is_ok()).collect();
        for i in 0..m {
            if !has_art[i] {
                basis[i] = n + i;
                row_of[n + i] = Some(i);
                val[n + i] = resid[i].clone();
            }
        }
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); ncols];
        for (i, r) in rows.iter().enumerate() {
            for (j, c) in r {
                cols[*j].push((i, c.clone()));
            }
        }
        let excluded = vec![false; ncols];
        Simplex {
            n,
            m,
            ncols,
            lb,
            ub,
            excluded,
            a: Arc::new(Matrix { cols, rows }),
            etas: Vec::new(),
            fresh: 0,
            basis,
            row_of,
            val,
            names: Arc::new(names),
            feasible: if infeasible { Some(false) } else { None },
            pivots: 0,
        }
    }

    /// Nonzero entries of the product-form basis inverse.
    pub fn factor_nonzeros(&self) -> usize {
        self.etas.iter().map(|e| e.others.len() + 1).sum()
    }

    /// Number of pivots performed so far.
    pub fn pivots(&self) -> usize {
        self.pivots
    }

    /// Run phase one if needed; true iff the system is feasible.
    pub fn feasible(&mut self) -> bool {
        if let Some(f) = self.feasible {
            return f;
        }
        let art_start = self.n + self.m;
        let mut cost = vec![Rational::zero(); self.ncols];
        for c in cost.iter_mut().skip(art_start) {
            *c = Rational::one();
        }
        let ok = self.run(&cost, Some(&Rational::zero())).is_ok();
        debug_assert!(ok, "phase one is bounded below");
        let infeasibility = self.val[art_start..].iter().fold(Rational::zero(), |a, v| &a + v);
        let feasible = infeasibility.is_zero();
        if feasible {
            for j in art_start..self.ncols {
                self.excluded[j] = true;
                self.ub[j] = Some(Rational::zero());
            }
        }
        self.feasible = Some(feasible);
        feasible
    }

    /// Current values of the program's variables (a feasible point after a
    /// successful [`Simplex::feasible`]).
    pub fn point(&self) -> Vec<Rational> {
        self.val[..self.n].to_vec()
    }

    /// Optimize a linear objective over the feasible region, starting from
    /// the current basis.
    pub fn optimize(&mut self, objective: &[(VarId, Rational)], maximize: bool) -> LpSolution {
        self.optimize_to(objective, maximize, None)
    }

    /// Like [`Simplex::optimize`], but stop with [`Status::Reached`] as soon
    /// as the objective is at least as good as `target`.
    pub fn optimize_to(&mut self, objective: &[(VarId, Rational)], maximize: bool, target: Option<&Rational>) -> LpSolution {
        if !self.feasible() {
            return LpSolution { status: Status::Infeasible, value: None, primal: Vec::new(), basis: Vec::new() };
        }
        let mut cost = vec![Rational::zero(); self.ncols];
        for (j, c) in objective {
            let c = if maximize { -c } else { c.clone() };
            cost[*j] = &cost[*j] + &c;
        }
        let target = target.map(|t| if maximize { -t } else { t.clone() });
        let outcome = self.run(&cost, target.as_ref());
        let primal = self.point();
        let basis = self.basis.iter().map(|&b| self.names[b].clone()).collect();
        let status = match outcome {
            Err(()) => return LpSolution { status: Status::Unbounded, value: None, primal, basis },
            Ok(true) => Status::Reached,
            Ok(false) => Status::Optimal,
        };
        let value = objective.iter().fold(Rational::zero(), |a, (j, c)| &a + &(c * &primal[*j]));
        LpSolution { status, value: Some(value), primal, basis }
    }

    /// Replace the bounds of program variable `j`. A nonbasic variable that
    /// falls outside them is moved to the nearest one; basic variables are
    /// left for [`Simplex::restore_feasibility`] to repair.
    pub fn set_bounds(&mut self, j: VarId, lb: Option<Rational>, ub: Option<Rational>) {
        assert!(j < self.n, "only program variables can be rebounded");
        self.lb[j] = lb;
        self.ub[j] = ub;
        if self.row_of[j].is_some() {
            return;
        }
        let target = match (&self.lb[j], &self.ub[j]) {
            (Some(l), _) if self.val[j] < *l => l.clone(),
            (_, Some(u)) if self.val[j] > *u => u.clone(),
            _ => return,
        };
        let step = &target - &self.val[j];
        let alpha = self.ftran(j);
        self.shift_nonbasic(j, &step, &alpha);
    }

    /// Move nonbasic `j` by `step`; `alpha` is its column in the current basis.
    fn shift_nonbasic(&mut self, j: usize, step: &Rational, alpha: &[Rational]) {
        self.val[j] = &self.val[j] + step;
        for (i, a) in alpha.iter().enumerate() {
            if !a.is_zero() {
                let b = self.basis[i];
                self.val[b] = self.val[b].sub_mul(a, step);
            }
        }
    }

    /// After a successful phase one and any number of [`Simplex::set_bounds`]
    /// calls, restore a feasible basis by the dual simplex method.
    ///
    /// The cost is chosen to make the current basis optimal: reduced cost
    /// `+1` on nonbasic variables at a lower bound, `-1` at an upper bound,
    /// zero elsewhere, so the method prefers keeping nonbasic variables in
    /// place. Leaving rows go by largest violation, switching to the
    /// smallest-index rule after a run of dual-degenerate pivots.
    /// `Some(false)` certifies infeasibility; `None` means `max_pivots` ran
    /// out first.
    pub fn restore_feasibility(&mut self, max_pivots: usize) -> Option<bool> {
        if self.feasible != Some(true) {
            return Some(self.feasible());
        }
        let mut d = vec![Rational::zero(); self.ncols];
        for j in 0..self.ncols {
            if self.row_of[j].is_some() || self.excluded[j] {
                continue;
            }
            if self.lb[j].as_ref() == Some(&self.val[j]) {
                d[j] = Rational::one();
            } else if self.ub[j].as_ref() == Some(&self.val[j]) {
                d[j] = -Rational::one();
            }
        }
        let mut degenerate = 0usize;
        let mut row_alpha = vec![Rational::zero(); self.ncols];
        let mut touched: Vec<usize> = Vec::new();
        for _ in 0..max_pivots {
            self.maybe_refactor();
            let bland = degenerate >= DEGENERATE_RUN;
            let mut leave: Option<(usize, usize, Rational, Rational)> = None;
            for (r, &b) in self.basis.iter().enumerate() {
                let (target, gap) = match (&self.lb[b], &self.ub[b]) {
                    (Some(l), _) if self.val[b] < *l => (l.clone(), l - &self.val[b]),
                    (_, Some(u)) if self.val[b] > *u => (u.clone(), &self.val[b] - u),
                    _ => continue,
                };
                let better = match &leave {
                    None => true,
                    Some((lb, _, _, g)) => {
                        if bland {
                            b < *lb
                        } else {
                            gap > *g || (gap == *g && b < *lb)
                        }
                    }
                };
                if better {
                    leave = Some((b, r, target, gap));
                }
            }
            let Some((b, r, target, _)) = leave else {
                return Some(true);
            };
            let raise = target > self.val[b];
            // Row r of B^-1 A.
            let mut unit = vec![Rational::zero(); self.m];
            unit[r] = Rational::one();
            let rho = self.btran(unit);
            for &j in &touched {
                row_alpha[j] = Rational::zero();
            }
            touched.clear();
            for (i, p) in rho.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                for (j, a) in &self.a.rows[i] {
                    if row_alpha[*j].is_zero() {
                        touched.push(*j);
                    }
                    row_alpha[*j] = &row_alpha[*j] + &(p * a);
                }
            }
            touched.sort_unstable();
            touched.dedup();
            // Entering: among columns that move `b` toward its bound, the
            // smallest ratio |d_j / a_rj|, ties by index.
            let mut entering: Option<(usize, Rational)> = None;
            for &j in &touched {
                let a = &row_alpha[j];
                if a.is_zero() || j == b || self.excluded[j] || self.row_of[j].is_some() {
                    continue;
                }
                // x_b moves by -a per unit increase of x_j.
                let up = a.is_negative() == raise;
                let free_to_move = if up {
                    self.ub[j].as_ref().is_none_or(|u| self.val[j] < *u)
                } else {
                    self.lb[j].as_ref().is_none_or(|l| self.val[j] > *l)
                };
                if !free_to_move {
                    continue;
                }
                let ratio = &d[j].abs() / &a.abs();
                if entering.as_ref().is_none_or(|(_, best)| ratio < *best) {
                    entering = Some((j, ratio));
                }
            }
            let Some((q, ratio)) = entering else {
                return Some(false);
            };
            if ratio.is_zero() {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            let arq = row_alpha[q].clone();
            let alpha = self.ftran(q);
            let step = &(&self.val[b] - &target) / &arq;
            self.shift_nonbasic(q, &step, &alpha);
            self.val[b] = target;
            let f = &d[q] / &arq;
            if !f.is_zero() {
                for &j in &touched {
                    d[j] = d[j].sub_mul(&f, &row_alpha[j]);
                }
            }
            self.pivot(r, q, alpha);
        }
        None
    }

    /// `B^-1 A_j` as a dense vector over rows.
    fn ftran(&self, j: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.m];
        for (i, c) in &self.a.cols[j] {
            v[*i] = c.clone();
        }
        self.apply_etas(&mut v);
        v
    }

    fn apply_etas(&self, v: &mut [Rational]) {
        for e in &self.etas {
            if v[e.row].is_zero() {
                continue;
            }
            let t = &v[e.row] / &e.pivot;
            for (i, a) in &e.others {
                v[*i] = v[*i].sub_mul(a, &t);
            }
            v[e.row] = t;
        }
    }

    /// `u^T B^-1`.
    fn btran(&self, mut u: Vec<Rational>) -> Vec<Rational> {
        for e in self.etas.iter().rev() {
            let mut s = u[e.row].clone();
            for (i, a) in &e.others {
                if !u[*i].is_zero() {
                    s = s.sub_mul(&u[*i], a);
                }
            }
            u[e.row] = &s / &e.pivot;
        }
        u
    }

    /// Reduced costs `d_j = c_j - c_B B^-1 A_j` for every column.
    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let cb: Vec<Rational> = self.basis.iter().map(|&b| cost[b].clone()).collect();
        let y = if cb.iter().all(Rational::is_zero) { cb } else { self.btran(cb) };
        let mut d = cost.to_vec();
        for (i, yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (j, a) in &self.a.rows[i] {
                d[*j] = d[*j].sub_mul(yi, a);
            }
        }
        d
    }

    fn maybe_refactor(&mut self) {
        if self.etas.len() >= self.fresh + REFACTOR_EVERY {
            self.refactor();
        }
    }

    /// Rebuild the eta file for the current basis. Unit columns keep their
    /// rows and need no eta. The rest are ordered by peeling row singletons
    /// to the front and column singletons to the back, which leaves those
    /// etas without fill; what remains is eliminated sparsest first.
    fn refactor(&mut self) {
        self.etas.clear();
        let m = self.m;
        let mut assigned: Vec<Option<usize>> = vec![None; m];
        let mut pending = Vec::new();
        for &c in &self.basis {
            match self.a.cols[c].as_slice() {
                [(i, v)] if *v == Rational::one() && assigned[*i].is_none() => assigned[*i] = Some(c),
                _ => pending.push(c),
            }
        }
        let mut row_live: Vec<bool> = assigned.iter().map(Option::is_none).collect();
        let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut col_count = vec![0usize; pending.len()];
        for (k, &c) in pending.iter().enumerate() {
            for (i, _) in &self.a.cols[c] {
                if row_live[*i] {
                    row_cols[*i].push(k);
                    col_count[k] += 1;
                }
            }
        }
        let mut row_count: Vec<usize> = row_cols.iter().map(Vec::len).collect();
        let mut col_live = vec![true; pending.len()];
        let mut front = Vec::new();
        let mut back = Vec::new();
        let mut progress = true;
        while progress {
            progress = false;
            for r in 0..m {
                if !row_live[r] || row_count[r] != 1 {
                    continue;
                }
                let k = *row_cols[r].iter().find(|&&k| col_live[k]).expect("counted column");
                front.push((k, r));
                self.drop_active(k, r, &pending, &mut col_live, &mut row_live, &mut col_count, &mut row_count, &row_cols);
                progress = true;
            }
            for k in 0..pending.len() {
                if !col_live[k] || col_count[k] != 1 {
                    continue;
                }
                let r = self.a.cols[pending[k]].iter().map(|(i, _)| *i).find(|&i| row_live[i]).expect("counted row");
                back.push((k, r));
                self.drop_active(k, r, &pending, &mut col_live, &mut row_live, &mut col_count, &mut row_count, &row_cols);
                progress = true;
            }
        }
        let mut bump: Vec<usize> = (0..pending.len()).filter(|&k| col_live[k]).collect();
        bump.sort_by_key(|&k| (col_count[k], pending[k]));
        let order = front
            .into_iter()
            .map(|(k, r)| (k, Some(r)))
            .chain(bump.into_iter().map(|k| (k, None)))
            .chain(back.into_iter().rev().map(|(k, r)| (k, Some(r))));
        for (k, preferred) in order {
            let c = pending[k];
            let alpha = self.ftran(c);
            let r = match preferred {
                Some(r) if assigned[r].is_none() && !alpha[r].is_zero() => r,
                _ => (0..m)
                    .filter(|&i| assigned[i].is_none() && !alpha[i].is_zero())
                    .min_by_key(|&i| (row_count[i], i))
                    .expect("basis is nonsingular"),
            };
            self.push_eta(r, alpha);
            assigned[r] = Some(c);
        }
        for (r, c) in assigned.into_iter().enumerate() {
            let c = c.expect("every row has a basic column");
            self.basis[r] = c;
            self.row_of[c] = Some(r);
        }
        self.fresh = self.etas.len();
    }

    /// Remove pending column `k` and row `r` from the active submatrix.
    #[allow(clippy::too_many_arguments)]
    fn drop_active(
        &self,
        k: usize,
        r: usize,
        pending: &[usize],
        col_live: &mut [bool],
        row_live: &mut [bool],
        col_count: &mut [usize],
        row_count: &mut [usize],
        row_cols: &[Vec<usize>],
    ) {
        col_live[k] = false;
        for (i, _) in &self.a.cols[pending[k]] {
            if row_live[*i] {
                row_count[*i] -= 1;
            }
        }
        row_live[r] = false;
        for &j in &row_cols[r] {
            if col_live[j] {
                col_count[j] -= 1;
            }
        }
    }

    fn push_eta(&mut self, r: usize, alpha: Vec<Rational>) {
        let mut pivot = Rational::zero();
        let mut others = Vec::new();
        for (i, a) in alpha.into_iter().enumerate() {
            if i == r {
                pivot = a;
            } else if !a.is_zero() {
                others.push((i, a));
            }
        }
        self.etas.push(Eta { row: r, pivot, others });
    }

    /// Minimize `cost` (over all columns); `Err` on unboundedness, `Ok(true)`
    /// if the cost dropped to `target` before optimality was proven.
    fn run(&mut self, cost: &[Rational], target: Option<&Rational>) -> Result<bool, ()> {
        let support: Vec<usize> = (0..self.ncols).filter(|&j| !cost[j].is_zero()).collect();
        let reached = |s: &Self| {
            target.is_some_and(|t| support.iter().fold(Rational::zero(), |a, &j| &a + &(&cost[j] * &s.val[j])) <= *t)
        };
        if reached(self) {
            return Ok(true);
        }
        let mut degenerate = 0usize;
        loop {
            self.maybe_refactor();
            let d = self.reduced_costs(cost);
            let bland = degenerate >= DEGENERATE_RUN;
            let mut entering: Option<(usize, i32)> = None;
            for j in 0..self.ncols {
                if self.row_of[j].is_some() || self.excluded[j] || d[j].is_zero() {
                    continue;
                }
                let dir = if d[j].is_negative() {
                    if self.ub[j].as_ref() == Some(&self.val[j]) {
                        continue;
                    }
                    1
                } else {
                    if self.lb[j].as_ref() == Some(&self.val[j]) {
                        continue;
                    }
                    -1
                };
                match entering {
                    None => entering = Some((j, dir)),
                    Some((k, _)) if !bland && d[j].abs() > d[k].abs() => entering = Some((j, dir)),
                    _ => {}
                }
                if bland {
                    break;
                }
            }
            let Some((q, dir)) = entering else {
                return Ok(false);
            };
            let alpha = self.ftran(q);
            let (theta, leave) = self.ratio_test(q, dir, &alpha).ok_or(())?;
            if theta.is_zero() {
                degenerate += 1;
            } else {
                degenerate = 0;
                let step = if dir > 0 { theta.clone() } else { -&theta };
                self.shift_nonbasic(q, &step, &alpha);
            }
            match leave {
                Leave::Flip => {
                    let bound = if dir > 0 { self.ub[q].clone() } else { self.lb[q].clone() };
                    self.val[q] = bound.expect("flip needs a bound");
                }
                Leave::Row(r) => {
                    let b = self.basis[r];
                    let a = &alpha[r];
                    let decreasing = (a.is_positive() && dir > 0) || (a.is_negative() && dir < 0);
                    let bound = if decreasing { self.lb[b].clone() } else { self.ub[b].clone() };
                    self.val[b] = bound.expect("leaving variable hits a bound");
                    self.pivot(r, q, alpha);
                }
            }
            if degenerate == 0 && reached(self) {
                return Ok(true);
            }
        }
    }

    fn ratio_test(&self, q: usize, dir: i32, alpha: &[Rational]) -> Option<(Rational, Leave)> {
        let mut best: Option<(Rational, usize, Leave)> = None;
        let own = if dir > 0 {
            self.ub[q].as_ref().map(|u| u - &self.val[q])
        } else {
            self.lb[q].as_ref().map(|l| &self.val[q] - l)
        };
        if let Some(t) = own {
            best = Some((t, q, Leave::Flip));
        }
        for (i, a) in alpha.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let b = self.basis[i];
            let decreasing = (a.is_positive() && dir > 0) || (a.is_negative() && dir < 0);
            let t = if decreasing {
                match &self.lb[b] {
                    Some(l) => &(&self.val[b] - l) / &a.abs(),
                    None => continue,
                }
            } else {
                match &self.ub[b] {
                    Some(u) => &(u - &self.val[b]) / &a.abs(),
                    None => continue,
                }
            };
            let better = match &best {
                None => true,
                Some((bt, bi, _)) => t < *bt || (t == *bt && b < *bi),
            };
            if better {
                best = Some((t, b, Leave::Row(i)));
            }
        }
        best.map(|(t, _, l)| (t, l))
    }

    /// Make column `q` basic in row `r`; `alpha` is `B^-1 A_q`.
    fn pivot(&mut self, r: usize, q: usize, alpha: Vec<Rational>) {
        self.pivots += 1;
        self.push_eta(r, alpha);
        let old = self.basis[r];
        self.row_of[old] = None;
        self.basis[r] = q;
        self.row_of[q] = Some(r);
    }
}

/// One-shot solve.
pub fn solve(lp: &LinearProgram, objective: &[(VarId, Rational)], maximize: bool) -> LpSolution {
    Simplex::new(lp).optimize(objective, maximize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn small_max() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0 -> (8/5, 6/5), 14/5
        let mut lp = LinearProgram::new();
        let x = lp.add_nonneg("x").unwrap();
        let y = lp.add_nonneg("y").unwrap();
        lp.add_row("a", [(x, r(1)), (y, r(2))], Sense::Le, r(4)).unwrap();
        lp.add_row("b", [(x, r(3)), (y, r(1))], Sense::Le, r(6)).unwrap();
        let s = solve(&lp, &[(x, r(1)), (y, r(1))], true);
        assert_eq!(s.status, Status::Optimal);
        assert_eq!(s.value, Some(Rational::new(14, 5)));
        assert_eq!(s.primal, vec![Rational::new(8, 5), Rational::new(6, 5)]);
    }

    #[test]
    fn equality_and_ge_rows_need_phase_one() {
        // min x + y s.t. x + y >= 2, x - y = 1 -> x = 3/2, y = 1/2
        let mut lp = LinearProgram::new();
        let x = lp.add_free("x").unwrap();
        let y = lp.add_nonneg("y").unwrap();
        lp.add_row("a", [(x, r(1)), (y, r(1))], Sense::Ge, r(2)).unwrap();
        lp.add_row("b", [(x, r(1)), (y, r(-1))], Sense::Eq, r(1)).unwrap();
        let s = solve(&lp, &[(x, r(1)), (y, r(1))], false);
        assert_eq!(s.value, Some(r(2)));
        assert!(lp.is_feasible_point(&s.primal));
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let mut lp = LinearProgram::new();
        let x = lp.add_nonneg("x").unwrap();
        lp.add_row("a", [(x, r(1))], Sense::Le, r(-1)).unwrap();
        assert_eq!(solve(&lp, &[(x, r(1))], true).status, Status::Infeasible);
        let mut lp = LinearProgram::new();
        let x = lp.add_nonneg("x").unwrap();
        lp.add_row("a", [(x, r(1))], Sense::Ge, r(1)).unwrap();
        assert_eq!(solve(&lp, &[(x, r(1))], true).status, Status::Unbounded);
        let mut lp = LinearProgram::new();
        lp.add_var("x", Some(r(2)), Some(r(1))).unwrap();
        assert_eq!(solve(&lp, &[], true).status, Status::Infeasible);
    }

    #[test]
    fn warm_start_matches_cold() {
        let mut lp = LinearProgram::new();
        let v: Vec<VarId> = (0..4).map(|i| lp.add_var(&alloc::format!("x{i}"), Some(r(0)), Some(r(1))).unwrap()).collect();
        lp.add_row("s", v.iter().map(|&j| (j, r(1))), Sense::Le, r(2)).unwrap();
        lp.add_row("p", [(v[0], r(1)), (v[1], r(1))], Sense::Le, r(1)).unwrap();
        let mut warm = Simplex::new(&lp);
        for w in [[3, 1, -2, 5], [1, 1, 1, 1], [-1, 4, 2, 0], [2, 2, 2, -3]] {
            let obj: Vec<(VarId, Rational)> = v.iter().zip(w).map(|(&j, c)| (j, r(c))).collect();
            assert_eq!(warm.optimize(&obj, true).value, solve(&lp, &obj, true).value);
        }
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, which cycles under naive Dantzig pricing.
        let mut lp = LinearProgram::new();
        let x: Vec<VarId> = (0..4).map(|i| lp.add_nonneg(&alloc::format!("x{i}")).unwrap()).collect();
        let q = |n: i64, d: i64| Rational::new(n, d);
        lp.add_row("a", [(x[0], q(1, 4)), (x[1], q(-8, 1)), (x[2], q(-1, 1)), (x[3], q(9, 1))], Sense::Le, r(0))
            .unwrap();
        lp.add_row("b", [(x[0], q(1, 2)), (x[1], q(-12, 1)), (x[2], q(-1, 2)), (x[3], q(3, 1))], Sense::Le, r(0))
            .unwrap();
        lp.add_row("c", [(x[2], r(1))], Sense::Le, r(1)).unwrap();
        let obj = [(x[0], q(3, 4)), (x[1], q(-20, 1)), (x[2], q(1, 2)), (x[3], q(-6, 1))];
        let s = solve(&lp, &obj, true);
        assert_eq!(s.value, Some(Rational::new(5, 4)));
    }
}
