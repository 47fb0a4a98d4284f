//! Brute-force oracles and the checks that certify compiled formulations
//! and the structural facts they rely on, at desk scale.
//!
//! Every randomized check draws from a Xoshiro256** generator seeded with
//! `seed_from_u64(seed)`; objectives are integer vectors, uniform on
//! `[-5, 5]` for independence polytopes and `[0, 10]` for dominants.

mod dominant;
mod oracle;
mod projection;
mod report;
mod sizes;
mod solver;
mod sums;

pub use dominant::check_circuit_dominant;
pub use oracle::{
    exhaustive_max_independent, greedy_basis, greedy_max_independent, greedy_max_set, min_weight_circuit,
    min_weight_circuit_through,
};
pub use projection::{check_pair_sandwich, has_monotone_coordinates, check_projection_equality, check_projection_equality_with, ProjectionOptions};
pub use report::{Check, CheckStatus, VerificationReport};
pub use sizes::{check_size_bounds, SizeLedger, DOMINANT_SIZE_CONSTANT, PAIR_SIZE_CONSTANT};
pub use solver::{check_solver, random_cube_lp, CubeLp};
pub use sums::check_3sum_bases;

use alloc::string::String;
use alloc::vec::Vec;

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::decomposition::DecompositionError;
use crate::formulations::FormulationError;
use crate::lp::{LpError, Rational};
use crate::matroid::MatroidError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Formulation(#[from] FormulationError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error("matroid has no circuit")]
    NoCircuit,
    #[error("weight of `{0}` is negative")]
    NegativeWeight(String),
}

pub type Rng = Xoshiro256StarStar;

pub fn seeded_rng(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Uniform integer in `[lo, hi]`.
pub fn uniform(rng: &mut Rng, lo: i64, hi: i64) -> i64 {
    let span = (hi - lo + 1) as u64;
    lo + (rng.next_u64() % span) as i64
}

pub fn random_weights(rng: &mut Rng, n: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..n).map(|_| uniform(rng, lo, hi)).collect()
}

pub(crate) fn to_rationals(w: &[i64]) -> Vec<Rational> {
    w.iter().map(|&v| Rational::from_integer(v)).collect()
}

/// Position of `mask` in the reflected Gray code, so that sorting by it
/// makes consecutive sets differ in few elements (cheap warm starts).
pub(crate) fn gray_rank(mask: u64) -> u64 {
    let mut b = mask;
    let mut g = mask >> 1;
    while g != 0 {
        b ^= g;
        g >>= 1;
    }
    b
}

pub(crate) fn mask_bits(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// `{a,b,c}` for the selected elements.
pub(crate) fn set_string<S: AsRef<str>>(names: &[S], bits: &[bool]) -> String {
    let picked: Vec<&str> = names.iter().zip(bits).filter(|(_, &b)| b).map(|(n, _)| n.as_ref()).collect();
    alloc::format!("{{{}}}", picked.join(","))
}

pub(crate) fn vec_string<T: core::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| alloc::format!("{x}")).collect();
    alloc::format!("[{}]", parts.join(","))
}
