//! Exact computation in the noncommutative planes A(ℝ²ⁿ_Θ).
//!
//! Pairs of self-adjoint generators `x_{2m−1}, x_{2m}` obey
//! `x_{2m} x_{2m−1} = x_{2m−1} x_{2m} + iθ_m`; generators from different pairs
//! commute. Elements are kept in normal order `x₁^{p₁} x₂^{p₂} … x₂ₙ^{p₂ₙ}`.

pub mod algebra;
pub mod arith;
pub mod error;
pub mod projector;
pub mod random;
pub mod selfadjoint;
pub mod sequences;

pub use error::{Error, Result};
