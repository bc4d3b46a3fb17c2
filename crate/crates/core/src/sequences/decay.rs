//! Periodic sign patterns damped by a geometric factor, and the decay of their alternating transform.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::seq::RationalSeq;
use super::transform::{binomial_transform, TransformMode};
use crate::arith::{int, Rational};
use crate::error::{Error, Result};

pub const MAX_DECAY_N: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayReport {
    pub b: RationalSeq,
    pub a: RationalSeq,
    /// `b_n·b_{n+gap} = 0` for every `n + gap ≤ N`.
    pub gap_ok: bool,
    /// `b_n = 0` whenever `gap` divides `n`, the weaker constraint met by the Elkies pattern.
    pub divisor_zero_ok: bool,
    /// Largest `|a_n|^{1/n}` over `N/2 ≤ n ≤ N`; zero when `a` vanishes there.
    pub rate: f64,
}

fn ln_abs_int(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_string().parse::<f64>().map(f64::ln).unwrap_or(f64::NEG_INFINITY);
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_string().parse::<f64>().map(f64::ln).unwrap_or(f64::NEG_INFINITY) + shift as f64 * std::f64::consts::LN_2
}

/// `ln|r|` for nonzero `r`, without overflowing `f64` on large numerators or denominators.
fn ln_abs(r: &Rational) -> f64 {
    ln_abs_int(r.numer()) - ln_abs_int(r.denom())
}

/// `b_n = pattern[n mod L]·base^{−n}` for `n = 0..=N`, its alternating transform, and the decay rate.
pub fn decay_probe(pattern: &[i8], base: &Rational, n_max: usize, gap: usize) -> Result<DecayReport> {
    if pattern.is_empty() {
        return Err(Error::InvalidArgument("pattern must be nonempty".into()));
    }
    if pattern.iter().any(|v| !(-1..=1).contains(v)) {
        return Err(Error::InvalidArgument("pattern entries must be -1, 0 or 1".into()));
    }
    if *base <= int(1) {
        return Err(Error::InvalidArgument("base must exceed 1".into()));
    }
    if n_max > MAX_DECAY_N {
        return Err(Error::InvalidArgument(format!("N must be at most {MAX_DECAY_N}")));
    }
    let inv = base.recip();
    let mut w = int(1);
    let mut vals = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        vals.push(&w * int(pattern[n % pattern.len()] as i64));
        w *= &inv;
    }
    let b = RationalSeq::from_zero(vals);
    let a = binomial_transform(&b, TransformMode::Alternating);
    let gap_ok = (0..=n_max.saturating_sub(gap))
        .take_while(|n| n + gap <= n_max)
        .all(|n| (&b.values[n] * &b.values[n + gap]).is_zero());
    let divisor_zero_ok = gap > 0 && (0..=n_max).step_by(gap).all(|n| b.values[n].is_zero());
    let rate = (n_max.div_ceil(2).max(1)..=n_max)
        .filter(|&n| !a.values[n].is_zero())
        .map(|n| (ln_abs(&a.values[n]) / n as f64).exp())
        .fold(0.0, f64::max);
    Ok(DecayReport { b, a, gap_ok, divisor_zero_ok, rate })
}

/// The sign pattern of `sin(nπ/3)` used with base 2.
pub const ELKIES_PATTERN: [i8; 6] = [0, 1, 1, 0, -1, -1];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elkies() {
        let r = decay_probe(&ELKIES_PATTERN, &int(2), 300, 3).unwrap();
        assert!(r.divisor_zero_ok);
        // b_1·b_4 = −1/32, so the stronger product constraint fails.
        assert!(!r.gap_ok);
        assert!(r.rate < 0.8672 && r.rate > 0.8, "{}", r.rate);
    }

    #[test]
    fn geometric() {
        let r = decay_probe(&[1], &int(2), 40, 1).unwrap();
        assert!(!r.gap_ok);
        assert!((r.rate - 0.5).abs() < 1e-12);
        let z = decay_probe(&[0, 0], &int(3), 20, 1).unwrap();
        assert!(z.gap_ok && z.rate == 0.0 && z.a.values.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn large_magnitudes() {
        let r = decay_probe(&[1], &int(1000), 300, 1).unwrap();
        // a_n = (1/1000 − 1)^n
        assert!((r.rate - 0.999).abs() < 1e-9);
    }
}
