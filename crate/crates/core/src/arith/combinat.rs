//! Factorials, binomials and Bernoulli numbers.
//!
//! Every function follows the convention that a term containing `n!` with
//! `n < 0` (in numerator or denominator) is zero.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n!/(n−k)!`, zero when `n < 0`, `k < 0` or `k > n`.
pub fn falling(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    ((n - k + 1)..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// `C(n, k)` as an integer, zero outside `0 ≤ k ≤ n`.
pub fn binomial_int(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

pub fn binomial(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial_int(n, k))
}

/// `B_0..=B_n` from `Σ_{k=0}^{n} C(n+1,k)·B_k = 0`, so `B_1 = −1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        if m > 1 && m % 2 == 1 {
            b.push(Rational::zero());
            continue;
        }
        let s: Rational = (0..m).map(|k| binomial(m as i64 + 1, k as i64) * &b[k]).sum();
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_numbers(n).pop().expect("nonempty")
}
