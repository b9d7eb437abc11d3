//! Effective-capacity analysis for delay-constrained machine-type links that
//! send short packets over Rayleigh block-fading channels and share the medium
//! with interfering nodes.

// Input validation deliberately uses `!(x > 0.0)` rather than `x <= 0.0`:
// the negated form also rejects NaN, which must never pass a domain check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod compensation;
pub mod effective_capacity;
pub mod error;
pub mod montecarlo;
pub mod numerics;

pub use error::{Error, Result};
