//! Linear balancing sets over GF(2).
//!
//! A set `C` of length-`n` words is balancing when every word can be moved to
//! weight `n/2` by adding some element of `C`. This crate computes the exact
//! uncovered fraction `Q(C)` of a linear code, builds the known explicit and
//! greedy balancing sets, runs random-ensemble experiments, implements a
//! balanced error-correcting codec on top of a direct sum, and checks the
//! reduction from three-dimensional matching on small instances.

pub mod balancing;
pub mod codec;
pub mod constructions;
pub mod ensemble;
pub mod error;
pub mod gf2;
pub mod reduction;

pub use error::{Error, Result};
pub use gf2::{LinearCode, Word};
