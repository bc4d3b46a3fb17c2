//! The exact scalar tower and the numeric float used by the branch solvers.

pub mod bigfloat;
pub mod combinat;
pub mod gaussian;
pub mod rational;
pub mod scalar;

pub use bigfloat::{BigFloat, DEFAULT_PRECISION};
pub use combinat::{bernoulli, bernoulli_numbers, binomial, binomial_int, factorial, falling};
pub use gaussian::GaussianRational;
pub use rational::{exact_sqrt, format_rational, int, parse_rational, rat, Rational};
pub use scalar::{scalar_arith, NCScalar, ScalarOp};
