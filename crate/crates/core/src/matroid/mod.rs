//! Binary matroids over GF(2), graphs and the combinatorial queries the
//! formulations are built from.

mod binary;
mod enumerate;
mod graph;
mod r10;

pub use binary::{BinaryMatroid, Minor};
pub use enumerate::{
    bases, circuits, connected_flats, cycles, find_isomorphism, find_separation, flats,
    independent_sets, is_three_connected, mask_indices, mask_of, Separation,
};
pub use graph::{Edge, Graph};
pub use r10::{r10, r10_certificate, R10Certificate};

use alloc::string::String;

/// Default ceiling on the ground-set size of exhaustive enumerations.
pub const DEFAULT_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatroidError {
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("invalid element name `{0}`")]
    InvalidName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("row has {found} entries, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("edge `{0}` is a self-loop")]
    SelfLoop(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("element `{0}` is both contracted and deleted")]
    OverlappingMinor(String),
    #[error("{what} is limited to {cap} elements, got {size}")]
    TooLarge { what: &'static str, size: usize, cap: usize },
}

/// Element names travel through file formats, so they must be single tokens.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || c == '*' || c == '#')
}

pub(crate) fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<(), MatroidError> {
    if size > cap || size > 64 {
        return Err(MatroidError::TooLarge { what, size, cap: cap.min(64) });
    }
    Ok(())
}
