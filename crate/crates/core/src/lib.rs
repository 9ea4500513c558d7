//! Exact-arithmetic numerology for principal W-algebras `W_k(g)`.
//!
//! The crate covers finite and affine root data, non-degenerate principal
//! admissible weights, q-series characters of W-algebra modules, the
//! free-field BRST complex of the quantized Drinfeld-Sokolov reduction with
//! scalars in `Q(k)`, and exact cohomology verifiers built on fraction-free
//! elimination.
//!
//! Everything here is `no_std` + `alloc`; IO, file formats and the command
//! line live in the companion `walgebra` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod admissible;
pub mod affine;
pub mod cohom;
pub mod error;
pub mod freefield;
pub mod poly;
pub mod qseries;
pub mod rational;
pub mod rootsys;
pub mod wchar;

pub use error::{Error, Result};
pub use poly::{Poly, RatFunc};
pub use rational::Q;
