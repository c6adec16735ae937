//! Exact symbolic and geometric computations for a `(×m, ×n)`-invariant set
//! built from a coded subshift whose lower and upper box dimensions differ.
//!
//! The crate is organised bottom-up:
//!
//! * [`shift_model`] – the alphabet, legal words, run structure and the
//!   minimal forced distance of a word.
//! * [`combinatorics`] – exact big-integer word counts, ordered power sums
//!   and growth-rate series.
//! * [`boxdim`] – column counts, the forced-distance histogram, the covering
//!   estimate `n_hat(k)` and the dimension-ratio series.
//! * [`geometry`] – cylinder rectangles, an independent grid box-count oracle,
//!   rasterisation and PBM/CSV output.
//! * [`cli`] – the `boxgap` command line front end.
//!
//! Every count is an exact [`num_bigint::BigUint`]; floating point only
//! appears when a logarithm is reported.

pub mod boxdim;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod format;
pub mod geometry;
pub mod shift_model;

pub use error::{Error, Result};
pub use shift_model::{GridConfig, Role, Symbol, Word};
