//! 1-, 2- and 3-sums of binary matroids, decomposition trees, centroid star
//! decompositions and the cut rewriting used for cographic parts.

mod cuts;
mod star;
mod sum;
pub(crate) mod tree;

pub use cuts::{
    bond_sides, crosses, crossing_count, detect_and_fix_bad_cuts, is_good_cut, repair_cographic_node, uncross_cuts,
    CutFamily, CutPiece, CutRepair, CutSwap, Uncrossing,
};
pub use star::{star_decompose, StarDecomposition, StarLeaf};
pub use sum::{check_sum_operand, delta_sum, is_valid_triangle, SumKind};
pub use tree::{DecompositionTree, Part, PartKind, TreeEdge, TreeNode};

use alloc::string::String;

use crate::matroid::MatroidError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompositionError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("operands share {0} elements; sums need 0, 1 or 3")]
    InvalidOverlap(usize),
    #[error("invalid sum: {0}")]
    InvalidSum(String),
    #[error("`{0}` is not a triangle free of cocircuits")]
    InvalidTriangle(String),
    #[error("part has {found} elements, the sum needs at least {needed}")]
    PartTooSmall { needed: usize, found: usize },
    #[error("not a decomposition tree: {0}")]
    NotATree(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("element `{0}` is shared inconsistently")]
    SharedElement(String),
    #[error("`{0}` and `{1}` are not parallel")]
    NotParallel(String, String),
    #[error("`{0}` is not shared along an edge of the node")]
    NotShared(String),
    #[error("payload is not isomorphic to R10")]
    NotR10,
    #[error("star decomposition needs a tree of 3-sums")]
    StarNeedsThreeSums,
    #[error("star invariant violated: {0}")]
    StarInvariant(&'static str),
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("`{0}` is not a 3-edge bond disjoint from the other cuts")]
    InvalidCut(String),
    #[error("no exchange lowers the number of crossing cuts")]
    UncrossingStuck,
    #[error("cannot repair: {0}")]
    CannotRepair(String),
}
