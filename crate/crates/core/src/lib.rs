//! Noncommutative Gröbner–Shirshov rewriting over finitely presented
//! associative algebras, the two Minsky-machine presentations whose
//! nilpotency and zero-divisor problems are undecidable, and the Pell-equation
//! variety systems used for undecidable embeddability.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: symbols, words, monomial orders, exact scalars and sparse
//!   noncommutative polynomials.
//! * [`rewrite`]: oriented presentations, reduction to normal form,
//!   composition analysis, bounded completion and ideal membership.
//! * [`minsky`]: the 7-state, 4-colour universal machine, its algebra
//!   encodings and the halting/witness cross-checks.
//! * [`diophantine`]: commutative polynomials, Pell pairs and variety systems.
//! * [`io`]: the presentation file format, configuration and trace text.

pub mod algebra;
pub mod diophantine;
mod error;
pub mod io;
pub mod minsky;
pub mod rewrite;

pub use error::{Error, Result};
