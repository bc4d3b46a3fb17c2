//! Diagonal projector candidates `S = Σ b_p γ^{−2p} x^p y^p`.
//!
//! With `𝔟_m = m!·b_m` the idempotency equations collapse to
//! `Σ_{p≤m} C(m,p)·𝔟_p ∈ {0, 1}` for every `m`, so each `𝔟_m` is fixed by one
//! binary choice. A genuine projector has finitely many nonzero `𝔟_m`;
//! [`enumerate_p0`] searches for choice strings whose last `tail_window` terms vanish.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{binomial, binomial_int, falling, Rational};
use crate::error::{Error, Result};

/// Largest depth for which every partial sum fits in `i128`.
pub const MAX_P0_DEPTH: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchPath {
    /// The partial sum chosen at each step, as `0`/`1` characters.
    pub choices: String,
    /// `𝔟_0, 𝔟_1, …` along the path.
    pub values: Vec<i128>,
    pub nonnegative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchTree {
    pub depth: usize,
    pub tail_window: usize,
    /// Paths whose last `tail_window` values are zero.
    pub flagged: Vec<BranchPath>,
    /// Tree nodes visited; prefixes that cannot end in a zero tail are cut early.
    pub nodes_visited: u64,
}

fn check_depth(depth: usize) -> Result<()> {
    if depth > MAX_P0_DEPTH {
        return Err(Error::InvalidArgument(format!("depth must be at most {MAX_P0_DEPTH}")));
    }
    Ok(())
}

/// Pascal rows `0..depth` as `i128`.
fn pascal(depth: usize) -> Vec<Vec<i128>> {
    let mut rows: Vec<Vec<i128>> = Vec::with_capacity(depth);
    for m in 0..depth {
        let mut row = vec![1i128; m + 1];
        for p in 1..m {
            row[p] = rows[m - 1][p - 1] + rows[m - 1][p];
        }
        rows.push(row);
    }
    rows
}

fn lower_sum(rows: &[Vec<i128>], b: &[i128]) -> i128 {
    let m = b.len();
    b.iter().enumerate().map(|(p, v)| rows[m][p] * v).sum()
}

/// Regenerates `𝔟` from a choice string of `0`/`1` characters.
pub fn p0_path(choices: &str) -> Result<BranchPath> {
    check_depth(choices.len())?;
    let rows = pascal(choices.len());
    let mut values = Vec::with_capacity(choices.len());
    for ch in choices.chars() {
        let s = match ch {
            '0' => 0,
            '1' => 1,
            _ => return Err(Error::Parse(format!("choice must be 0 or 1, got {ch:?}"))),
        };
        let v = s - lower_sum(&rows, &values);
        values.push(v);
    }
    let nonnegative = values.iter().all(|v| *v >= 0);
    Ok(BranchPath { choices: choices.to_string(), values, nonnegative })
}

/// Walks every choice string of length `depth`, keeping those whose last `tail_window` values vanish.
pub fn enumerate_p0(depth: usize, tail_window: usize) -> Result<BranchTree> {
    if tail_window == 0 || depth < tail_window {
        return Err(Error::InvalidArgument("need depth >= tail_window >= 1".into()));
    }
    check_depth(depth)?;
    let rows = pascal(depth);
    let mut tree = BranchTree { depth, tail_window, flagged: Vec::new(), nodes_visited: 0 };
    let mut values = Vec::with_capacity(depth);
    let mut choices = String::with_capacity(depth);
    walk(&rows, &mut values, &mut choices, &mut tree);
    Ok(tree)
}

fn walk(rows: &[Vec<i128>], values: &mut Vec<i128>, choices: &mut String, tree: &mut BranchTree) {
    tree.nodes_visited += 1;
    let m = values.len();
    if m == tree.depth {
        let nonnegative = values.iter().all(|v| *v >= 0);
        tree.flagged.push(BranchPath { choices: choices.clone(), values: values.clone(), nonnegative });
        return;
    }
    let t = lower_sum(rows, values);
    let in_tail = m >= tree.depth - tree.tail_window;
    for s in [0i128, 1] {
        let v = s - t;
        if in_tail && v != 0 {
            continue;
        }
        values.push(v);
        choices.push(if s == 0 { '0' } else { '1' });
        walk(rows, values, choices, tree);
        values.pop();
        choices.pop();
    }
}

/// `b_m − Σ_{r≤m} Σ_{h≤r} C(r,h)·(m+h−r)!/(m−r)!·b_{m+h−r}·b_r` for each stored `m`.
pub fn prob_residuals(b: &[Rational]) -> Vec<Rational> {
    (0..b.len() as i64)
        .map(|m| {
            let mut s = Rational::zero();
            for r in 0..=m {
                if b[r as usize].is_zero() {
                    continue;
                }
                for h in 0..=r {
                    let w = Rational::from_integer(binomial_int(r, h) * falling(m + h - r, h));
                    s += w * &b[(m + h - r) as usize] * &b[r as usize];
                }
            }
            &b[m as usize] - s
        })
        .collect()
}

/// Truncated residual of `𝔟_m = (−1)^m Σ_h (−1)^h C(m+h,m)·𝔟_{m+h}` with the weight of the first omitted term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedResidual {
    pub m: usize,
    #[serde(with = "crate::arith::rational::serde_rational")]
    pub residual: Rational,
    #[serde(with = "crate::arith::rational::serde_rational")]
    pub next_weight: Rational,
}

pub fn bm_residuals(bfrak: &[Rational]) -> Vec<TruncatedResidual> {
    let len = bfrak.len() as i64;
    (0..len)
        .map(|m| {
            let mut s = Rational::zero();
            for h in 0..len - m {
                let t = binomial(m + h, m) * &bfrak[(m + h) as usize];
                if (m + h) % 2 == 0 {
                    s += t;
                } else {
                    s -= t;
                }
            }
            TruncatedResidual { m: m as usize, residual: &bfrak[m as usize] - s, next_weight: binomial(len, m) }
        })
        .collect()
}

/// `b_m = 𝔟_m / m!`.
pub fn bfrak_to_b(values: &[i128]) -> Vec<Rational> {
    let mut f = Rational::one();
    values
        .iter()
        .enumerate()
        .map(|(m, v)| {
            if m > 0 {
                f *= Rational::from_integer((m as i64).into());
            }
            Rational::from_integer((*v).into()) / &f
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn forced_values() {
        let p = p0_path("01").unwrap();
        assert_eq!(p.values, vec![0, 1]);
        let a = p0_path("010").unwrap();
        let b = p0_path("011").unwrap();
        assert_eq!((a.values[2], b.values[2]), (-2, -1));
        assert!(!a.nonnegative);
    }

    #[test]
    fn small_tree() {
        let t = enumerate_p0(12, 4).unwrap();
        let vals: Vec<_> = t.flagged.iter().map(|p| p.values[..3].to_vec()).collect();
        assert_eq!(vals, vec![vec![0, 0, 0], vec![1, 0, 0]]);
        assert!(t.flagged.iter().all(|p| p.nonnegative));
        assert!(enumerate_p0(3, 4).is_err());
    }

    #[test]
    fn flagged_paths_solve_both_equations() {
        let t = enumerate_p0(10, 4).unwrap();
        for p in &t.flagged {
            let b = bfrak_to_b(&p.values);
            assert!(prob_residuals(&b).iter().all(|r| r.is_zero()));
            let bf: Vec<Rational> = p.values.iter().map(|v| int(*v as i64)).collect();
            assert!(bm_residuals(&bf).iter().all(|r| r.residual.is_zero()));
        }
    }
}
