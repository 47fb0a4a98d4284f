//! Compact extended formulations for independence polytopes of regular
//! matroids, together with the matroid, decomposition and exact linear
//! programming machinery they are built from.
#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod gf2;
pub mod matroid;
pub mod decomposition;
pub mod lp;
pub mod formulations;
pub mod verify;
