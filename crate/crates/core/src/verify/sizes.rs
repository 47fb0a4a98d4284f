//! Size arithmetic on built formulations.

use alloc::format;

use super::VerificationReport;
use crate::formulations::{CircuitDominant, PairFormulation, PipelineOutput};
use crate::lp::Rational;

/// Bound on `inequalities / (|V| |E|)` for the pair formulations. The flow
/// blocks alone carry two bounded variables per arc and non-root vertex,
/// and the measured ratio stays under 5 on the test instances.
pub const PAIR_SIZE_CONSTANT: i64 = 8;

/// Bound on `inequalities / |E|^2` for the circuit dominant: each of the
/// `|E|` pieces has two sign rows and two bounds per element.
pub const DOMINANT_SIZE_CONSTANT: i64 = 4;

/// What the size check is run on.
#[derive(Clone, Copy, Debug)]
pub enum SizeLedger<'a> {
    Pipeline(&'a PipelineOutput),
    /// A pair formulation of a center graph with the given order and size.
    Pair { pair: &'a PairFormulation, vertices: usize, edges: usize },
    Dominant(&'a CircuitDominant),
}

fn ratio(num: usize, den: usize) -> Rational {
    Rational::new(num as i64, den.max(1) as i64)
}

/// Arithmetic size checks. Each implied constant is reported in the detail.
pub fn check_size_bounds(ledger: SizeLedger<'_>, instance: &str) -> VerificationReport {
    let mut report = VerificationReport::new(instance, 0, 0);
    match ledger {
        SizeLedger::Pipeline(out) => {
            let top = out.ledger.iter().rev().find(|e| e.level == 0);
            let total = out.ef.inequality_count();
            let bad = top
                .filter(|e| e.size.inequalities != total)
                .map(|e| format!("ledger says {} inequalities, formulation has {total}", e.size.inequalities));
            report.outcome("ledger-total", bad, format!("{total} inequalities"));
            for s in &out.stars {
                let name = format!("star:{}", s.center);
                let prime: usize = s.prime_counts.iter().sum();
                let leaves: usize = s.leaf_counts.iter().sum();
                let additive = s.r_count + prime;
                let bad = (s.total != additive).then(|| format!("total {} != R {} + primes {prime}", s.total, s.r_count));
                report.outcome(&format!("{name}:additive"), bad, format!("{} = {} + {prime}", s.total, s.r_count));
                // Each of P' and P'' is a union of five faces, one of them an
                // intersection of two: eight copies of the leaf each.
                let bad = s
                    .prime_counts
                    .iter()
                    .zip(&s.leaf_counts)
                    .find(|(p, l)| **p != 16 * **l)
                    .map(|(p, l)| format!("P' + P'' has {p} inequalities for a leaf with {l}"));
                report.outcome(&format!("{name}:leaf-factor"), bad, format!("16 x {leaves}"));
                let e0sq = (s.e0 * s.e0).max(1);
                let c1 = ratio(s.r_count, e0sq);
                let bound = &(&c1 * &Rational::from(e0sq)) + &Rational::from(16 * leaves);
                let bad = (Rational::from(s.total) > bound).then(|| format!("total {} exceeds {bound}", s.total));
                report.outcome(
                    &format!("{name}:bound"),
                    bad,
                    format!("total {} <= c1*|E0|^2 + 16*{leaves} with c1={c1} |E0|={}", s.total, s.e0),
                );
            }
        }
        SizeLedger::Pair { pair, vertices, edges } => {
            let count = pair.ef.inequality_count();
            let c = ratio(count, vertices * edges);
            let bad = (c > Rational::from_integer(PAIR_SIZE_CONSTANT))
                .then(|| format!("{count} inequalities, C={c} above {PAIR_SIZE_CONSTANT}"));
            report.outcome("pair-size", bad, format!("{count} <= C*{vertices}*{edges} with C={c}"));
        }
        SizeLedger::Dominant(cd) => {
            let m = cd.matrix.binary();
            let n = cd.matrix.elements.len();
            let expected = m.map(|m| (0..n).filter(|&e| !m.is_coloop(e)).count()).unwrap_or(n);
            let bad = (cd.pieces.len() != expected).then(|| format!("{} pieces, expected {expected}", cd.pieces.len()));
            report.outcome("dominant-pieces", bad, format!("{} pieces over {n} elements", cd.pieces.len()));
            let count = cd.ef.inequality_count();
            let c = ratio(count, n * n);
            let bad = (c > Rational::from_integer(DOMINANT_SIZE_CONSTANT))
                .then(|| format!("{count} inequalities, C={c} above {DOMINANT_SIZE_CONSTANT}"));
            report.outcome("dominant-size", bad, format!("{count} <= C*{n}^2 with C={c}"));
        }
    }
    report
}
