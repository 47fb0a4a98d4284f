//! Exact rational linear programming and extended formulations.

mod formulation;
mod program;
mod rational;
mod simplex;

pub use formulation::{affine_image, balas_union, ground_map, intersect, join, product, AffineExpr, ExtendedFormulation, ProjectionSession, UnionMode};
pub use program::{is_valid_lp_name, normalize_terms, LinearProgram, Row, Sense, SizeReport, VarId, Variable};
pub use rational::{ParseRationalError, Rational};
pub use simplex::{solve, LpSolution, Simplex, Status};

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown row `{0}`")]
    UnknownRow(String),
    #[error("unknown ground element `{0}`")]
    UnknownGround(String),
    #[error("formulation has an empty ground set")]
    EmptyGround,
    #[error("ground sets overlap at `{0}`")]
    GroundOverlap(String),
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("piece {0} of the union is empty")]
    EmptyPiece(usize),
    #[error("point has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}
