//! Exhaustive checks of the basis and connected-flat structure of a 3-sum.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{mask_bits, set_string, VerificationReport, VerifyError};
use crate::decomposition::delta_sum;
use crate::matroid::{bases, connected_flats, BinaryMatroid, MatroidError};

/// One side of the sum: where each element lands in the sum (`None` on
/// the triangle) and the triangle's positions.
struct Side<'a> {
    m: &'a BinaryMatroid,
    to_sum: Vec<Option<usize>>,
    t: [usize; 3],
}

impl<'a> Side<'a> {
    fn new(m: &'a BinaryMatroid, sum: &BinaryMatroid, shared: &[String]) -> Result<Self, MatroidError> {
        let to_sum = m.elements().iter().map(|e| if shared.contains(e) { None } else { sum.index_of(e).ok() }).collect();
        let t = [m.index_of(&shared[0])?, m.index_of(&shared[1])?, m.index_of(&shared[2])?];
        Ok(Side { m, to_sum, t })
    }

    fn t_mask(&self) -> u64 {
        self.t.iter().fold(0, |a, &i| a | 1 << i)
    }

    /// The part of `mask` outside the triangle, in sum coordinates.
    fn outside(&self, mask: u64) -> u64 {
        (0..self.m.len()).filter(|&i| mask >> i & 1 == 1).filter_map(|i| self.to_sum[i]).fold(0, |a, j| a | 1 << j)
    }

    /// Inverse of `outside` plus the triangle elements in `tri`.
    fn pull(&self, sum_mask: u64, tri: u64) -> u64 {
        let mut out = tri;
        for (i, s) in self.to_sum.iter().enumerate() {
            if s.is_some_and(|j| sum_mask >> j & 1 == 1) {
                out |= 1 << i;
            }
        }
        out
    }

    /// Elements of the sum that come from this side.
    fn own(&self) -> u64 {
        self.to_sum.iter().flatten().fold(0, |a, &j| a | 1 << j)
    }
}

/// Bases of the sum predicted from bases of the parts: (i)
/// `B_i ∪ (B_j - t1 - t2)` with `B_i ∩ T = {}` and `B_j ⊇ {t1, t2}`, and
/// (ii) `(B_i - t1) ∪ (B_j - t2)` with `B_i ∩ T = {t1}`, `B_j ∩ T = {t2}`,
/// `t1 != t2`, and `B_i - t1 + t3`, `B_j - t2 + t3` bases.
fn predicted_bases(s1: &Side, b1: &BTreeSet<u64>, s2: &Side, b2: &BTreeSet<u64>) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for (si, bi, sj, bj) in [(s1, b1, s2, b2), (s2, b2, s1, b1)] {
        let (ti, tj) = (si.t_mask(), sj.t_mask());
        for &x in bi.iter().filter(|&&x| x & ti == 0) {
            for &y in bj.iter().filter(|&&y| (y & tj).count_ones() == 2) {
                out.insert(si.outside(x) | sj.outside(y));
            }
        }
    }
    let (t1m, t2m) = (s1.t_mask(), s2.t_mask());
    for &x in b1.iter().filter(|&&x| (x & t1m).count_ones() == 1) {
        let p = (0..3).find(|&p| x >> s1.t[p] & 1 == 1).unwrap();
        for &y in b2.iter().filter(|&&y| (y & t2m).count_ones() == 1) {
            let q = (0..3).find(|&q| y >> s2.t[q] & 1 == 1).unwrap();
            if p == q {
                continue;
            }
            let r = 3 - p - q;
            let x3 = (x & !(1 << s1.t[p])) | 1 << s1.t[r];
            let y3 = (y & !(1 << s2.t[q])) | 1 << s2.t[r];
            if b1.contains(&x3) && b2.contains(&y3) {
                out.insert(s1.outside(x) | s2.outside(y));
            }
        }
    }
    out
}

/// Exhaustive 3-sum structure checks on `M1 ⊕3 M2`: the rank identity,
/// the basis description in both directions, and the three cases for
/// connected flats with their rank arithmetic.
pub fn check_3sum_bases(m1: &BinaryMatroid, m2: &BinaryMatroid, cap: usize) -> Result<VerificationReport, VerifyError> {
    let sum = delta_sum(m1, m2)?;
    let shared: Vec<String> = m1.elements().iter().filter(|e| m2.contains(e)).cloned().collect();
    let mut report = VerificationReport::new("", 0, 0);
    if shared.len() != 3 {
        report.fail("rank-identity", format!("parts share {} elements, not a triangle", shared.len()));
        return Ok(report);
    }
    let s1 = Side::new(m1, &sum, &shared)?;
    let s2 = Side::new(m2, &sum, &shared)?;
    let (r, r1, r2) = (sum.full_rank(), m1.full_rank(), m2.full_rank());
    let rank_bad = (r + 2 != r1 + r2).then(|| format!("rk(M)={r} rk(M1)={r1} rk(M2)={r2}"));
    report.outcome("rank-identity", rank_bad, format!("rk(M)={r} = {r1} + {r2} - 2"));

    let b1: BTreeSet<u64> = bases(m1, cap)?.into_iter().collect();
    let b2: BTreeSet<u64> = bases(m2, cap)?.into_iter().collect();
    let actual: BTreeSet<u64> = bases(&sum, cap)?.into_iter().collect();
    let predicted = predicted_bases(&s1, &b1, &s2, &b2);
    let show = |mask: u64| set_string(sum.elements(), &mask_bits(mask, sum.len()));
    let missing = actual.iter().find(|b| !predicted.contains(b)).map(|&b| format!("basis {} matches neither case", show(b)));
    report.outcome("bases-covered", missing, format!("{} bases of the sum", actual.len()));
    let extra = predicted.iter().find(|b| !actual.contains(b)).map(|&b| format!("{} built from the parts is not a basis", show(b)));
    report.outcome("bases-sound", extra, format!("{} predicted sets", predicted.len()));

    let f1: BTreeSet<u64> = connected_flats(m1, cap)?.into_iter().collect();
    let f2: BTreeSet<u64> = connected_flats(m2, cap)?.into_iter().collect();
    let flats = connected_flats(&sum, cap)?;
    let mut counts = BTreeMap::new();
    let mut bad = None;
    for &f in &flats {
        let case = flat_case(&sum, f, &s1, &f1, &s2, &f2);
        match case {
            Some(c) => *counts.entry(c).or_insert(0usize) += 1,
            None => {
                bad = Some(format!("connected flat {} matches no case", show(f)));
                break;
            }
        }
    }
    let covered = format!(
        "{} connected flats: {} inside a part, {} singleton gluing, {} triangle gluing",
        flats.len(),
        counts.get(&1).unwrap_or(&0),
        counts.get(&2).unwrap_or(&0),
        counts.get(&3).unwrap_or(&0)
    );
    report.outcome("connected-flats", bad, covered);
    Ok(report)
}

/// Which case a connected flat of the sum falls in: 1 if it is a connected
/// flat of one part, 2 if it glues flats meeting `T` in one element
/// (rank drops by 1), 3 if they contain `T` (rank drops by 2).
fn flat_case(sum: &BinaryMatroid, f: u64, s1: &Side, f1: &BTreeSet<u64>, s2: &Side, f2: &BTreeSet<u64>) -> Option<u8> {
    for (s, fl) in [(s1, f1), (s2, f2)] {
        if f & !s.own() == 0 && fl.contains(&s.pull(f, 0)) {
            return Some(1);
        }
    }
    let rk = sum.rank_mask(f);
    for (tri, drop) in [(0b001u8, 1), (0b010, 1), (0b100, 1), (0b111, 2)] {
        let t1 = (0..3).filter(|p| tri >> p & 1 == 1).fold(0u64, |a, p| a | 1 << s1.t[p]);
        let t2 = (0..3).filter(|p| tri >> p & 1 == 1).fold(0u64, |a, p| a | 1 << s2.t[p]);
        let (a, b) = (s1.pull(f, t1), s2.pull(f, t2));
        if f1.contains(&a) && f2.contains(&b) && rk + drop == s1.m.rank_mask(a) + s2.m.rank_mask(b) {
            return Some(if drop == 1 { 2 } else { 3 });
        }
    }
    None
}
