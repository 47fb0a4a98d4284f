//! `P(M) = proj(Q)` checks: lifting of independent sets, objective
//! agreement with the greedy oracle, and non-lifting of circuits.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::oracle::{greedy_basis, greedy_max_independent};
use super::{gray_rank, mask_bits, random_weights, seeded_rng, set_string, to_rationals, vec_string, VerificationReport};
use crate::formulations::{primed, PairFormulation};
use crate::lp::{ExtendedFormulation, ProjectionSession, Rational, Sense};
use crate::matroid::{circuits, independent_sets, BinaryMatroid, DEFAULT_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectionOptions {
    pub trials: usize,
    pub seed: u64,
    /// Enumeration cap for circuits.
    pub cap: usize,
    /// Up to this many elements every subset is tested both ways.
    pub all_subsets_limit: usize,
    /// Up to this many elements every independent set is lifted.
    pub exhaustive_limit: usize,
    /// Above the exhaustive limit: greedy rounds used to collect bases.
    pub greedy_rounds: usize,
    /// Above the exhaustive limit: random subsets tested both ways.
    pub subset_samples: usize,
}

impl ProjectionOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        ProjectionOptions {
            trials,
            seed,
            cap: DEFAULT_CAP,
            all_subsets_limit: 10,
            exhaustive_limit: 16,
            greedy_rounds: 200,
            subset_samples: 1000,
        }
    }
}

/// Checks that `ef` projects exactly onto `P(m)`, with the default lifting
/// thresholds.
pub fn check_projection_equality(ef: &ExtendedFormulation, m: &BinaryMatroid, trials: usize, seed: u64) -> VerificationReport {
    check_projection_equality_with(ef, m, &ProjectionOptions::new(trials, seed))
}

/// Tests membership of each set against independence in `m`; stops at the
/// first disagreement.
fn membership(
    session: &mut ProjectionSession<'_>,
    m: &BinaryMatroid,
    sets: impl IntoIterator<Item = Vec<bool>>,
) -> Result<usize, String> {
    let mut count = 0;
    for bits in sets {
        let idx: Vec<usize> = (0..bits.len()).filter(|&i| bits[i]).collect();
        let independent = m.is_independent(&idx);
        if session.contains_01(&bits) != independent {
            let what = if independent { "independent set does not lift" } else { "dependent set lifts" };
            return Err(format!("{what}: {}", set_string(m.elements(), &bits)));
        }
        count += 1;
    }
    Ok(count)
}

/// Whether lowering any ground coordinate of a lifted point towards zero
/// keeps it lifted: each coordinate is its own variable (coefficient one,
/// no constant) with lower bound at most zero, used by no other coordinate,
/// and occurring only in `<=` rows with positive coefficient or `>=` rows
/// with negative coefficient. Then the projection is down-closed in the
/// nonnegative orthant, so lifting every basis lifts every independent set.
pub fn has_monotone_coordinates(ef: &ExtendedFormulation) -> bool {
    let mut vars = Vec::with_capacity(ef.dim());
    for p in &ef.projection {
        match p.terms.as_slice() {
            [(v, c)] if *c == Rational::one() && p.constant.is_zero() => vars.push(*v),
            _ => return false,
        }
    }
    let distinct: BTreeSet<usize> = vars.iter().copied().collect();
    if distinct.len() != vars.len() {
        return false;
    }
    if vars.iter().any(|&v| ef.lp.vars()[v].lb.as_ref().is_none_or(|l| l.is_positive())) {
        return false;
    }
    ef.lp.rows().iter().all(|row| {
        row.terms.iter().filter(|(v, _)| distinct.contains(v)).all(|(_, c)| match row.sense {
            Sense::Le => c.is_positive(),
            Sense::Ge => c.is_negative(),
            Sense::Eq => false,
        })
    })
}

fn gray_sorted(mut masks: Vec<u64>, n: usize) -> impl Iterator<Item = Vec<bool>> {
    masks.sort_by_key(|&s| gray_rank(s));
    masks.into_iter().map(move |s| mask_bits(s, n))
}

pub fn check_projection_equality_with(
    ef: &ExtendedFormulation,
    m: &BinaryMatroid,
    opts: &ProjectionOptions,
) -> VerificationReport {
    let mut report = VerificationReport::new("", opts.trials, opts.seed);
    if ef.ground != m.elements() {
        report.fail("ground", format!("formulation ground {:?} differs from matroid elements", ef.ground));
        return report;
    }
    let n = m.len();
    let mut rng = seeded_rng(opts.seed);
    let mut session = ef.session();
    let mut sampled_bases = Vec::new();

    if n <= opts.all_subsets_limit {
        let sets = (0u64..1 << n).map(|k| mask_bits(k ^ (k >> 1), n));
        match membership(&mut session, m, sets) {
            Ok(c) => report.pass("lift-all-subsets", format!("{c} subsets")),
            Err(e) => report.fail("lift-all-subsets", e),
        }
    } else if n <= opts.exhaustive_limit {
        let monotone = has_monotone_coordinates(ef);
        match independent_sets(m, opts.cap) {
            Ok(ind) => {
                let total = ind.len();
                let rank = m.full_rank() as u32;
                let probe: Vec<u64> = if monotone { ind.into_iter().filter(|s| s.count_ones() == rank).collect() } else { ind };
                match membership(&mut session, m, gray_sorted(probe, n)) {
                    Ok(c) if monotone => report.pass(
                        "lift-independent",
                        format!("{c} bases lift and coordinates are monotone, so all {total} independent sets lift"),
                    ),
                    Ok(c) => report.pass("lift-independent", format!("{c} independent sets")),
                    Err(e) => report.fail("lift-independent", e),
                }
            }
            Err(e) => report.fail("lift-independent", format!("{e}")),
        }
    } else {
        let mut seen = BTreeSet::new();
        for _ in 0..opts.greedy_rounds {
            let w = random_weights(&mut rng, n, -1000, 1000);
            let b = greedy_basis(m, &w);
            if seen.insert(b.clone()) {
                sampled_bases.push(b);
            }
        }
        let sets = sampled_bases.iter().map(|b| (0..n).map(|i| b.contains(&i)).collect());
        match membership(&mut session, m, sets) {
            Ok(c) => report.pass("lift-bases", format!("{c} distinct greedy bases")),
            Err(e) => report.fail("lift-bases", e),
        }
        let subsets: Vec<Vec<bool>> =
            (0..opts.subset_samples).map(|_| random_weights(&mut rng, n, 0, 1).into_iter().map(|b| b == 1).collect()).collect();
        match membership(&mut session, m, subsets) {
            Ok(c) => report.pass("lift-random-subsets", format!("{c} subsets")),
            Err(e) => report.fail("lift-random-subsets", e),
        }
    }

    if opts.trials > 0 {
        let mut bad = None;
        for _ in 0..opts.trials {
            let w = random_weights(&mut rng, n, -5, 5);
            let want = greedy_max_independent(m, &w);
            let got = session.maximize(&to_rationals(&w));
            if got.as_ref() != Some(&want) {
                let got = got.map_or_else(|| String::from("none"), |v| format!("{v}"));
                bad = Some(format!("objective {} lp={got} greedy={want}", vec_string(&w)));
                break;
            }
        }
        report.outcome("objectives", bad, format!("{} objectives", opts.trials));
    }

    // The exhaustive subset scan already covered circuits.
    if n > opts.all_subsets_limit {
        let probes: Result<Vec<Vec<bool>>, String> = if n <= opts.cap {
            circuits(m, opts.cap).map(|c| gray_sorted(c, n).collect()).map_err(|e| format!("{e}"))
        } else {
            let mut fundamental = BTreeSet::new();
            for b in &sampled_bases {
                for e in (0..n).filter(|e| !b.contains(e)) {
                    fundamental.insert(m.fundamental_circuit(b, e));
                }
            }
            Ok(fundamental.into_iter().map(|c| (0..n).map(|i| c.contains(&i)).collect()).collect())
        };
        match probes.and_then(|p| membership(&mut session, m, p)) {
            Ok(c) => report.pass("circuits-excluded", format!("{c} circuits")),
            Err(e) => report.fail("circuits-excluded", e),
        }
    }
    report
}

/// The 0/1 points generating `P_T(M0)`: `J0 ⊆ E0` and per triangle a pair
/// `(J', J'')` with `J' = J''` or `J' = {alpha, beta}`, `J'' = {beta, gamma}`,
/// such that `J0` plus any choice of one set per triangle is independent.
/// Each point is indexed by the pair formulation's ground.
fn pair_points(pair: &PairFormulation, m0: &BinaryMatroid) -> Result<Vec<Vec<bool>>, String> {
    let idx = |e: &str| m0.index_of(e).map_err(|e| format!("{e}"));
    let e0: Vec<usize> = pair.e0.iter().map(|e| idx(e)).collect::<Result<_, _>>()?;
    let tri: Vec<[usize; 3]> =
        pair.triangles.iter().map(|t| Ok([idx(&t[0])?, idx(&t[1])?, idx(&t[2])?])).collect::<Result<_, String>>()?;
    let pos = |e: &str| pair.ef.ground_index(e).ok_or_else(|| format!("pair formulation lacks `{e}`"));
    let e0_pos: Vec<usize> = pair.e0.iter().map(|e| pos(e)).collect::<Result<_, _>>()?;
    let mut tri_pos = Vec::new();
    for t in &pair.triangles {
        let mut copies = [[0usize; 3]; 2];
        for copy in 0..2 {
            for p in 0..3 {
                copies[copy][p] = pos(&primed(&t[p], copy + 1))?;
            }
        }
        tri_pos.push(copies);
    }
    // Per triangle: eight symmetric choices then the asymmetric one.
    let options: Vec<(u8, u8)> = (0..8u8).map(|s| (s, s)).chain([(0b011, 0b110)]).collect();
    let k = pair.triangles.len();
    let restricted = m0.restrict(&e0);
    let j0s = independent_sets(&restricted, 64).map_err(|e| format!("{e}"))?;
    let mut points = Vec::new();
    for j0 in j0s {
        let base: Vec<usize> = (0..e0.len()).filter(|&i| j0 >> i & 1 == 1).map(|i| e0[i]).collect();
        let mut pick = alloc::vec![0usize; k];
        'combos: loop {
            let ok = (0..1usize << k).all(|choice| {
                let mut set = base.clone();
                for i in 0..k {
                    let (a, b) = options[pick[i]];
                    let s = if choice >> i & 1 == 0 { a } else { b };
                    set.extend((0..3).filter(|p| s >> p & 1 == 1).map(|p| tri[i][p]));
                }
                m0.is_independent(&set)
            });
            if ok {
                let mut bits = alloc::vec![false; pair.ef.dim()];
                for (i, &p) in e0_pos.iter().enumerate() {
                    bits[p] = j0 >> i & 1 == 1;
                }
                for i in 0..k {
                    let (a, b) = options[pick[i]];
                    for p in 0..3 {
                        bits[tri_pos[i][0][p]] = a >> p & 1 == 1;
                        bits[tri_pos[i][1][p]] = b >> p & 1 == 1;
                    }
                }
                points.push(bits);
            }
            for i in 0..k {
                pick[i] += 1;
                if pick[i] < options.len() {
                    continue 'combos;
                }
                pick[i] = 0;
            }
            break;
        }
    }
    Ok(points)
}

/// `P_T(M0) ⊆ proj(R)`: every generating point lifts. `proj(R) ⊆ Q_T(M0)`:
/// for each of the `2^k` choices of primed or double-primed triangle
/// copies, the maximum of a random objective over `R` is at most the
/// greedy optimum over `P(M0)`.
pub fn check_pair_sandwich(pair: &PairFormulation, m0: &BinaryMatroid, trials: usize, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new("", trials, seed);
    let mut session = pair.ef.session();
    match pair_points(pair, m0) {
        Ok(mut points) => {
            if pair.ef.dim() <= 64 {
                points.sort_by_key(|b| gray_rank(b.iter().rev().fold(0u64, |m, &x| m << 1 | x as u64)));
            }
            let total = points.len();
            let bad = points
                .into_iter()
                .find(|p| !session.contains_01(p))
                .map(|p| format!("point does not lift: {}", set_string(&pair.ef.ground, &p)));
            report.outcome("pair-lower", bad, format!("{total} points"));
        }
        Err(e) => report.fail("pair-lower", e),
    }

    let k = pair.triangles.len();
    let mut rng = seeded_rng(seed);
    let mut bad = None;
    'trials: for _ in 0..trials {
        let w = random_weights(&mut rng, m0.len(), -5, 5);
        let bound = greedy_max_independent(m0, &w);
        for choice in 0..1usize << k {
            let copies: Vec<usize> = (0..k).map(|i| 1 + (choice >> i & 1)).collect();
            let mut obj = alloc::vec![Rational::zero(); pair.ef.dim()];
            let mut place = |name: &str, elem: &str| -> bool {
                match (pair.ef.ground_index(name), m0.index_of(elem)) {
                    (Some(p), Ok(e)) => {
                        obj[p] = Rational::from_integer(w[e]);
                        true
                    }
                    _ => false,
                }
            };
            let mut ok = pair.e0.iter().all(|e| place(e, e));
            for (t, &c) in pair.triangles.iter().zip(&copies) {
                ok &= t.iter().all(|e| place(&primed(e, c), e));
            }
            if !ok {
                bad = Some(String::from("pair formulation and center disagree on element names"));
                break 'trials;
            }
            let got = session.maximize(&obj);
            if got.as_ref().is_none_or(|v| *v > bound) {
                let got = got.map_or_else(|| String::from("none"), |v| format!("{v}"));
                bad = Some(format!("choice {} objective {} lp={got} bound={bound}", vec_string(&copies), vec_string(&w)));
                break 'trials;
            }
        }
    }
    report.outcome("pair-upper", bad, format!("{trials} objectives x {} choices", 1usize << k));
    report
}
