//! The exact simplex against brute-force vertex enumeration on small
//! random polytopes inside the unit cube.

use alloc::format;
use alloc::vec::Vec;

use super::{random_weights, seeded_rng, uniform, vec_string, Rng, VerificationReport};
use crate::lp::{solve, LinearProgram, Rational, Sense, Status, VarId};

/// A random LP over a polytope in `[0, 1]^n` with its vertex oracle.
#[derive(Clone, Debug)]
pub enum CubeLp {
    /// `conv(points)` for 0/1 points, written with convex multipliers.
    Hull { n: usize, points: Vec<Vec<i64>> },
    /// `{x in [0,1]^n : A x <= b}`.
    Cut { n: usize, rows: Vec<(Vec<i64>, i64)> },
}

pub fn random_cube_lp(rng: &mut Rng, hull: bool) -> CubeLp {
    if hull {
        let n = uniform(rng, 2, 10) as usize;
        let count = uniform(rng, 1, 12) as usize;
        CubeLp::Hull { n, points: (0..count).map(|_| random_weights(rng, n, 0, 1)).collect() }
    } else {
        let n = uniform(rng, 2, 6) as usize;
        let m = uniform(rng, 1, 4) as usize;
        let rows = (0..m).map(|_| (random_weights(rng, n, -3, 3), uniform(rng, -1, 4))).collect();
        CubeLp::Cut { n, rows }
    }
}

impl CubeLp {
    pub fn dim(&self) -> usize {
        match self {
            CubeLp::Hull { n, .. } | CubeLp::Cut { n, .. } => *n,
        }
    }

    /// The program; the first `dim()` variables are `x`.
    pub fn program(&self) -> LinearProgram {
        let mut lp = LinearProgram::new();
        let n = self.dim();
        let one = || Some(Rational::one());
        let x: Vec<VarId> = (0..n).map(|j| lp.add_var(&format!("x{j}"), Some(Rational::zero()), one()).unwrap()).collect();
        match self {
            CubeLp::Hull { points, .. } => {
                let lam: Vec<VarId> = (0..points.len()).map(|k| lp.add_nonneg(&format!("l{k}")).unwrap()).collect();
                for j in 0..n {
                    let terms = core::iter::once((x[j], Rational::one()))
                        .chain(points.iter().zip(&lam).filter(|(p, _)| p[j] == 1).map(|(_, &l)| (l, -Rational::one())));
                    lp.add_row(&format!("hull{j}"), terms, Sense::Eq, Rational::zero()).unwrap();
                }
                lp.add_row("convex", lam.iter().map(|&l| (l, Rational::one())), Sense::Eq, Rational::one()).unwrap();
            }
            CubeLp::Cut { rows, .. } => {
                for (i, (a, b)) in rows.iter().enumerate() {
                    let terms = x.iter().zip(a).map(|(&v, &c)| (v, Rational::from_integer(c)));
                    lp.add_row(&format!("cut{i}"), terms, Sense::Le, Rational::from_integer(*b)).unwrap();
                }
            }
        }
        lp
    }

    /// Every vertex: the points themselves, or every feasible point where
    /// `n` linearly independent constraints are tight.
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        match self {
            CubeLp::Hull { points, .. } => {
                points.iter().map(|p| p.iter().map(|&v| Rational::from_integer(v)).collect()).collect()
            }
            CubeLp::Cut { n, rows } => {
                let n = *n;
                let mut cons: Vec<(Vec<i64>, i64)> = rows.clone();
                for j in 0..n {
                    let unit = |s: i64| (0..n).map(|k| if k == j { s } else { 0 }).collect::<Vec<i64>>();
                    cons.push((unit(-1), 0));
                    cons.push((unit(1), 1));
                }
                let mut out: Vec<Vec<Rational>> = Vec::new();
                let mut pick: Vec<usize> = (0..n).collect();
                loop {
                    if let Some(x) = solve_square(&pick.iter().map(|&i| cons[i].clone()).collect::<Vec<_>>()) {
                        let feasible = cons.iter().all(|(a, b)| dot(a, &x) <= Rational::from_integer(*b));
                        if feasible && !out.contains(&x) {
                            out.push(x);
                        }
                    }
                    if !next_combination(&mut pick, cons.len()) {
                        break;
                    }
                }
                out
            }
        }
    }
}

fn dot(a: &[i64], x: &[Rational]) -> Rational {
    a.iter().zip(x).fold(Rational::zero(), |s, (&c, v)| &s + &(&Rational::from_integer(c) * v))
}

fn next_combination(pick: &mut [usize], total: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < total - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Unique solution of the square system `a x = b`, by exact elimination.
fn solve_square(eqs: &[(Vec<i64>, i64)]) -> Option<Vec<Rational>> {
    let n = eqs.len();
    let mut m: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|(a, b)| a.iter().chain(core::iter::once(b)).map(|&v| Rational::from_integer(v)).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    m[r][c] = m[r][c].sub_mul(&f, &m[col][c]);
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Solves `instances` random cube LPs (alternating hull and cut
/// descriptions) with random objectives in `[-5, 5]`, in both senses, and
/// compares with the best vertex.
pub fn check_solver(instances: usize, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new("cube-lps", instances, seed);
    let mut rng = seeded_rng(seed);
    let mut bad = None;
    let mut vertices = 0;
    'outer: for k in 0..instances {
        let inst = random_cube_lp(&mut rng, k % 2 == 0);
        let w = random_weights(&mut rng, inst.dim(), -5, 5);
        let lp = inst.program();
        let verts = inst.vertices();
        vertices += verts.len();
        let obj: Vec<(VarId, Rational)> = w.iter().enumerate().map(|(j, &c)| (j, Rational::from_integer(c))).collect();
        for maximize in [true, false] {
            let best = verts.iter().map(|v| dot(&w, v)).reduce(|a, b| if (b > a) == maximize { b } else { a });
            let s = solve(&lp, &obj, maximize);
            let ok = match (&best, s.status) {
                (None, Status::Infeasible) => true,
                (Some(b), Status::Optimal) => {
                    let point_ok = lp.is_feasible_point(&s.primal);
                    let value_ok = dot(&w, &s.primal[..inst.dim()]) == *b;
                    point_ok && value_ok && s.value.as_ref() == Some(b)
                }
                _ => false,
            };
            if !ok {
                let sense = if maximize { "max" } else { "min" };
                bad = Some(format!(
                    "instance {k} ({inst:?}) {sense} {} solver={:?} {:?} vertices={best:?}",
                    vec_string(&w),
                    s.status,
                    s.value
                ));
                break 'outer;
            }
        }
    }
    report.outcome("solver-vs-vertices", bad, format!("{instances} programs, {vertices} vertices, both senses"));
    report
}
