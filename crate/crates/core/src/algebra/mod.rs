//! Normal-ordered polynomials, products, adjoints and matrices over A(ℝ²ⁿ_Θ).

pub mod matrix;
pub mod ordering;
pub mod poly;
pub mod theta;

pub use matrix::{AlgebraMatrix, ProjectorReport, ScalarProjectorReport};
pub use ordering::{normal_order_pow, pair_product, parse_word, rewrite_normalize, Word};
pub use poly::{GammaDirection, NCPolynomial};
pub use theta::{MultiIndex, ThetaParams};

use crate::error::Result;

pub fn nc_multiply(t: &NCPolynomial, s: &NCPolynomial) -> Result<NCPolynomial> {
    t.nc_multiply(s)
}

pub fn nc_adjoint(t: &NCPolynomial) -> NCPolynomial {
    t.adjoint()
}

pub fn degree_and_symbol(t: &NCPolynomial) -> Result<(u32, NCPolynomial)> {
    t.degree_and_symbol()
}

pub fn gamma_convert(t: &NCPolynomial, dir: GammaDirection) -> Result<NCPolynomial> {
    t.gamma_convert(dir)
}
