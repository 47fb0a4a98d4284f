//! Exact combinatorial oracles the LP answers are compared against.

use alloc::vec::Vec;

use super::VerifyError;
use crate::gf2::XorBasis;
use crate::lp::Rational;
use crate::matroid::{circuits, independent_sets, BinaryMatroid, MatroidError};

fn check_len(m: &BinaryMatroid, w: &[i64]) {
    assert_eq!(w.len(), m.len(), "one weight per element");
}

/// Elements by weight, heaviest first; ties by index.
fn greedy_order(w: &[i64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..w.len()).collect();
    order.sort_by(|&a, &b| w[b].cmp(&w[a]).then(a.cmp(&b)));
    order
}

/// Greedy maximum-weight independent set (positive weights only).
pub fn greedy_max_set(m: &BinaryMatroid, w: &[i64]) -> Vec<usize> {
    check_len(m, w);
    let mut basis = XorBasis::new();
    let mut out = Vec::new();
    for e in greedy_order(w) {
        if w[e] <= 0 {
            break;
        }
        if basis.insert(m.column(e)) {
            out.push(e);
        }
    }
    out.sort_unstable();
    out
}

/// `max w · χ^I` over independent sets `I`.
pub fn greedy_max_independent(m: &BinaryMatroid, w: &[i64]) -> Rational {
    Rational::from_integer(greedy_max_set(m, w).iter().map(|&e| w[e]).sum())
}

/// Maximum-weight basis (every weight taken, whatever its sign).
pub fn greedy_basis(m: &BinaryMatroid, w: &[i64]) -> Vec<usize> {
    check_len(m, w);
    let mut basis = XorBasis::new();
    let mut out: Vec<usize> = greedy_order(w).into_iter().filter(|&e| basis.insert(m.column(e))).collect();
    out.sort_unstable();
    out
}

fn mask_weight(w: &[i64], mask: u64) -> i64 {
    (0..w.len()).filter(|&i| mask >> i & 1 == 1).map(|i| w[i]).sum()
}

/// `max w · χ^I` by listing every independent set.
pub fn exhaustive_max_independent(m: &BinaryMatroid, w: &[i64], cap: usize) -> Result<Rational, MatroidError> {
    check_len(m, w);
    let best = independent_sets(m, cap)?.into_iter().map(|s| mask_weight(w, s)).max().unwrap_or(0);
    Ok(Rational::from_integer(best))
}

fn check_weights(m: &BinaryMatroid, w: &[i64]) -> Result<(), VerifyError> {
    check_len(m, w);
    match w.iter().position(|&x| x < 0) {
        Some(e) => Err(VerifyError::NegativeWeight(m.name(e).into())),
        None => Ok(()),
    }
}

/// Minimum weight of a circuit under nonnegative weights, by enumeration.
pub fn min_weight_circuit(m: &BinaryMatroid, w: &[i64], cap: usize) -> Result<Rational, VerifyError> {
    check_weights(m, w)?;
    circuits(m, cap)?
        .into_iter()
        .map(|c| mask_weight(w, c))
        .min()
        .map(Rational::from_integer)
        .ok_or(VerifyError::NoCircuit)
}

/// Minimum weight of a circuit through `e`; `None` if `e` is a coloop.
pub fn min_weight_circuit_through(
    m: &BinaryMatroid,
    w: &[i64],
    e: usize,
    cap: usize,
) -> Result<Option<Rational>, VerifyError> {
    check_weights(m, w)?;
    Ok(circuits(m, cap)?
        .into_iter()
        .filter(|c| c >> e & 1 == 1)
        .map(|c| mask_weight(w, c))
        .min()
        .map(Rational::from_integer))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{r10, Graph, DEFAULT_CAP};

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn greedy_basics() {
        let k4 = Graph::complete(4).cycle_matroid();
        assert_eq!(greedy_max_independent(&k4, &[-1; 6]), r(0));
        assert_eq!(greedy_max_independent(&k4, &[1; 6]), r(3));
        assert_eq!(greedy_basis(&k4, &[-1; 6]).len(), 3);
    }

    #[test]
    fn circuit_minimums() {
        let k4 = Graph::complete(4).cycle_matroid();
        assert_eq!(min_weight_circuit(&k4, &[1; 6], DEFAULT_CAP), Ok(r(3)));
        assert_eq!(min_weight_circuit(&k4, &[0; 6], DEFAULT_CAP), Ok(r(0)));
        // Minimum cut of K5.
        let k5d = Graph::complete(5).bond_matroid();
        assert_eq!(min_weight_circuit(&k5d, &[1; 10], DEFAULT_CAP), Ok(r(4)));
        assert!(matches!(min_weight_circuit(&k4, &[1, 1, 1, 1, 1, -1], DEFAULT_CAP), Err(VerifyError::NegativeWeight(_))));
        let free = BinaryMatroid::from_strings(&["a", "b"], &["10", "01"]).unwrap();
        assert_eq!(min_weight_circuit(&free, &[1, 1], DEFAULT_CAP), Err(VerifyError::NoCircuit));
        assert_eq!(min_weight_circuit_through(&free, &[1, 1], 0, DEFAULT_CAP), Ok(None));
        let r10 = r10();
        assert_eq!(min_weight_circuit(&r10, &[1; 10], DEFAULT_CAP), Ok(r(4)));
    }
}
