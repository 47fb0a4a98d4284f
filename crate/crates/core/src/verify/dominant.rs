use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{gray_rank, mask_bits, random_weights, seeded_rng, set_string, to_rationals, vec_string, VerificationReport, VerifyError};
use crate::formulations::{circuit_dominant_piece, CircuitDominant};
use crate::lp::Rational;
use crate::matroid::circuits;

fn weight(w: &[i64], c: u64) -> i64 {
    (0..w.len()).filter(|&i| c >> i & 1 == 1).map(|i| w[i]).sum()
}

/// Checks a circuit-dominant formulation against circuit enumeration:
/// per piece, the minimum of each objective equals the lightest circuit
/// through the pinned element; for the union, the lightest circuit
/// overall; and every circuit lifts. The zero objective is always tried
/// first.
pub fn check_circuit_dominant(
    cd: &CircuitDominant,
    trials: usize,
    seed: u64,
    cap: usize,
) -> Result<VerificationReport, VerifyError> {
    let m = cd.matrix.binary()?;
    let n = m.len();
    let mut report = VerificationReport::new("", trials, seed);
    if cd.ef.ground != m.elements() {
        report.fail("ground", format!("formulation ground {:?} differs from matroid elements", cd.ef.ground));
        return Ok(report);
    }
    let mut all = circuits(&m, cap)?;
    all.sort_by_key(|&c| gray_rank(c));
    let mut rng = seeded_rng(seed);
    let objectives: Vec<Vec<i64>> =
        core::iter::once(alloc::vec![0; n]).chain((0..trials).map(|_| random_weights(&mut rng, n, 0, 10))).collect();

    let mut bad = None;
    'pieces: for name in &cd.pieces {
        let e = m.index_of(name)?;
        let piece = circuit_dominant_piece(&cd.matrix, e)?;
        let mut session = piece.session();
        for w in &objectives {
            let want = all.iter().filter(|&&c| c >> e & 1 == 1).map(|&c| weight(w, c)).min();
            let got = session.minimize(&to_rationals(w));
            if got != want.map(Rational::from_integer) {
                bad = Some(format!("piece {name} objective {} lp={got:?} enumeration={want:?}", vec_string(w)));
                break 'pieces;
            }
        }
    }
    report.outcome("pieces", bad, format!("{} pieces x {} objectives", cd.pieces.len(), objectives.len()));

    let mut session = cd.ef.session();
    let mut bad = None;
    for w in &objectives {
        let want = all.iter().map(|&c| weight(w, c)).min();
        let got = session.minimize(&to_rationals(w));
        if got != want.map(Rational::from_integer) {
            bad = Some(format!("objective {} lp={got:?} enumeration={want:?}", vec_string(w)));
            break;
        }
    }
    report.outcome("union", bad, format!("{} objectives", objectives.len()));

    let mut bad: Option<String> = None;
    for &c in &all {
        let x: Vec<Rational> = (0..n).map(|i| Rational::from_integer((c >> i & 1) as i64)).collect();
        if cd.ef.lift_feasible(&x)?.is_none() {
            bad = Some(format!("circuit does not lift: {}", set_string(m.elements(), &mask_bits(c, n))));
            break;
        }
    }
    report.outcome("circuits-lift", bad, format!("{} circuits", all.len()));
    Ok(report)
}
