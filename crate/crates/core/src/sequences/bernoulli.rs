//! Bernoulli-derived weights and the auxiliary `b_k(p)` system.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::seq::RationalSeq;
use crate::arith::{bernoulli_numbers, binomial, factorial, int, Rational};

fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn pow2(e: u32) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

/// `a_n = (−1)ⁿ(2^{2n+2} − 1)·B_{2n+2}/(n+1)` for `n = 0..=N`.
pub fn bernoulli_a_seq(n_max: usize) -> RationalSeq {
    let b = bernoulli_numbers(2 * n_max + 2);
    let values = (0..=n_max)
        .map(|n| sign(n as i64) * (pow2(2 * n as u32 + 2) - int(1)) * &b[2 * n + 2] / int(n as i64 + 1))
        .collect();
    RationalSeq::from_zero(values)
}

/// `a_m − Σ_{k=0}^{m} (−1)^{k+1}·C(2m+1, 2k)·a_{m−k} − (−1)^m` for each `m`; all zero for the true weights.
pub fn ac_residuals(a: &RationalSeq) -> Vec<Rational> {
    (0..a.len() as i64)
        .map(|m| {
            let s: Rational = (0..=m)
                .map(|k| sign(k + 1) * binomial(2 * m + 1, 2 * k) * a.get(m - k).expect("in range"))
                .sum();
            a.get(m).expect("in range") - s - sign(m)
        })
        .collect()
}

/// `(2^{2n+2}−1)B_{2n+2} + Σ_{k=1}^{n+1} C(2n+2,2k)(2^{2k}−1)B_{2k} − (n+1)` for `n = 0..=N`.
pub fn aaa_residuals(n_max: usize) -> Vec<Rational> {
    let b = bernoulli_numbers(2 * n_max + 2);
    (0..=n_max)
        .map(|n| {
            let head = (pow2(2 * n as u32 + 2) - int(1)) * &b[2 * n + 2];
            let tail: Rational = (1..=n + 1)
                .map(|k| binomial(2 * n as i64 + 2, 2 * k as i64) * (pow2(2 * k as u32) - int(1)) * &b[2 * k])
                .sum();
            head + tail - int(n as i64 + 1)
        })
        .collect()
}

/// Solves `Σ_{k=1}^{n} (−1)^{k−1}·b_k·C(p+2n+1, 2n+1−2k) = C(p+2n+1, 2n+1)` for `b_1..=b_N`.
///
/// The system is triangular; the coefficient of `b_n` in row `n` is `(−1)^{n−1}(p+2n+1)`.
pub fn solve_b_of_p(p: u32, n_max: usize) -> RationalSeq {
    let p = p as i64;
    let mut b: Vec<Rational> = Vec::with_capacity(n_max);
    for n in 1..=n_max as i64 {
        let rhs = binomial(p + 2 * n + 1, 2 * n + 1);
        let known: Rational = (1..n)
            .map(|k| sign(k - 1) * &b[(k - 1) as usize] * binomial(p + 2 * n + 1, 2 * n + 1 - 2 * k))
            .sum();
        b.push(sign(n - 1) * (rhs - known) / int(p + 2 * n + 1));
    }
    RationalSeq::new(1, b)
}

/// Left side minus right side of the defining identity, for `n = 1..=len`.
pub fn b_identity_residuals(p: u32, b: &RationalSeq) -> Vec<Rational> {
    let p = p as i64;
    (1..=b.len() as i64)
        .map(|n| {
            let lhs: Rational = (1..=n)
                .map(|k| sign(k - 1) * b.get(k).expect("in range") * binomial(p + 2 * n + 1, 2 * n + 1 - 2 * k))
                .sum();
            lhs - binomial(p + 2 * n + 1, 2 * n + 1)
        })
        .collect()
}

/// Both equalities of the aggregate identity for `n = 1..=len`:
///
/// `2(4ⁿ−n−1)·C(p+2n+2, p) = Σ_{m=1}^{n} C(p+2n+2, 2n+1−2m)·C(p+2m+1, 2m+1)
///  = Σ_{k=1}^{n} (−1)^{k−1}·2^{2n−2k+1}·(p+2n+2)!·b_k / ((2n−2k+2)!·(p+2k)!)`.
///
/// Returns `(lhs − middle, lhs − right)` per `n`.
pub fn aggregate_identity_residuals(p: u32, b: &RationalSeq) -> Vec<(Rational, Rational)> {
    let pi = p as i64;
    (1..=b.len() as i64)
        .map(|n| {
            let lhs = int(2) * (pow2(2 * n as u32) - int(n + 1)) * binomial(pi + 2 * n + 2, pi);
            let middle: Rational = (1..=n)
                .map(|m| binomial(pi + 2 * n + 2, 2 * n + 1 - 2 * m) * binomial(pi + 2 * m + 1, 2 * m + 1))
                .sum();
            let top = Rational::from_integer(factorial((pi + 2 * n + 2) as u64));
            let right: Rational = (1..=n)
                .map(|k| {
                    let den = Rational::from_integer(factorial((2 * n - 2 * k + 2) as u64) * factorial((pi + 2 * k) as u64));
                    sign(k - 1) * pow2((2 * n - 2 * k + 1) as u32) * &top * b.get(k).expect("in range") / den
                })
                .sum();
            (&lhs - middle, lhs - right)
        })
        .collect()
}

pub fn all_zero(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}
