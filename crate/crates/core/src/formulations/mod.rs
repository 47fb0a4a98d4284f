//! Extended formulations of independence polytopes and circuit dominants.

mod dominant;
mod flats;
mod pair;
mod pipeline;
mod star;
mod wong;

pub use dominant::{
    camion_signing, circuit_dominant_ef, circuit_dominant_piece, cographic_signing, cycle_signing, graphic_signing, r10_signing,
    signed_representation, verify_tu, CircuitDominant, SignedMatrix,
};
pub use flats::explicit_flat_ef;
pub use pair::{pair_formulation_cographic, pair_formulation_graphic, primed, PairFormulation};
pub use pipeline::{regular_pipeline, LedgerEntry, PipelineOptions, PipelineOutput, StarRecord};
pub use star::{asymmetric_pair, compose_2sum, glue_star, minor_polytope_ef, p_prime_ef, Variant};
pub use wong::{
    arcs, cographic_independence_ef, graphic_independence_ef, spanning_tree_ef, wong_arborescence_dominant, Arc,
};

use alloc::string::String;

use crate::decomposition::DecompositionError;
use crate::lp::LpError;
use crate::matroid::MatroidError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulationError {
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("edge `{0}` is a bridge")]
    BridgePresent(String),
    #[error("`{0}` is not a triangle of the graph")]
    NotTriangleClique(String),
    #[error("element `{0}` lies in two triangles")]
    NotEdgeDisjoint(String),
    #[error("`{0}` is not the edge set of a degree-3 vertex")]
    NotVertexStar(String),
    #[error("star vertices `{0}` and `{1}` are adjacent")]
    NotStable(String, String),
    #[error("no root outside the star vertices")]
    NoValidRoot,
    #[error("`{0}` is not a valid triangle of the part")]
    InvalidTriangle(String),
    #[error("operands must share exactly the element `{0}`")]
    WrongOverlap(String),
    #[error("formulation blocks do not match: {0}")]
    BlockMismatch(String),
    #[error("submatrix on rows {rows:?} and columns {cols:?} has determinant {det}")]
    NotTotallyUnimodular { rows: alloc::vec::Vec<usize>, cols: alloc::vec::Vec<usize>, det: i64 },
    #[error("no totally unimodular signing found")]
    NoRepresentation,
    #[error("support is not a cycle")]
    NotACycle,
    #[error("matroid has no circuit")]
    NoCircuit,
}
