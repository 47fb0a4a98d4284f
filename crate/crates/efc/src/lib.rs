//! File formats and the command-line front end for `efc`.

pub mod cli;
pub mod formats;
pub mod lp_text;

pub use cli::run;
