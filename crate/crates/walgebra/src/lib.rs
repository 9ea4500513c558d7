//! Command line front end and file formats for `walgebra-core`.
//!
//! Data goes to stdout (or `--out`), progress lines to stderr. JSON schemas
//! for every record live in `docs/schemas`.

pub mod cli;
pub mod format;

pub use cli::run;
