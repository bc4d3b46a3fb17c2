use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::seq::RationalSeq;
use crate::arith::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformMode {
    /// `t_n = Σ_q C(n,q)·s_q`
    Plain,
    /// `t_n = Σ_q (−1)^{n−q}·C(n,q)·s_q`
    Inverse,
    /// Same sum as `Inverse`, under the name used for the decay experiments.
    Alternating,
}

/// Binomial transform of `s`, indexed from `s.offset`.
pub fn binomial_transform(s: &RationalSeq, mode: TransformMode) -> RationalSeq {
    let signed = !matches!(mode, TransformMode::Plain);
    let mut row: Vec<BigInt> = Vec::with_capacity(s.len());
    let mut out = Vec::with_capacity(s.len());
    for n in 0..s.len() {
        // Pascal row n in place.
        row.push(BigInt::one());
        for k in (1..n).rev() {
            let prev = row[k - 1].clone();
            row[k] += prev;
        }
        let mut acc = Rational::zero();
        for (q, c) in row.iter().enumerate() {
            let v = &s.values[q];
            if v.is_zero() {
                continue;
            }
            let term = v * Rational::from_integer(c.clone());
            if signed && (n - q) % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        out.push(acc);
    }
    RationalSeq::new(s.offset, out)
}
