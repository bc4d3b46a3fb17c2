//! Normal ordering: the closed formula for `yⁿxᵐ` and a brute-force word rewriter.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::poly::NCPolynomial;
use super::theta::{MultiIndex, ThetaParams};
use crate::arith::{binomial_int, falling, GaussianRational, NCScalar, Rational};
use crate::error::{Error, Result};

/// Normal form of `x^p y^q · x^r y^s` inside one pair with commutator constant `a`.
///
/// Each of the `k ≤ min(q, r)` contractions trades one `y x` for `a`:
/// `Σ_k q!/(q−k)!·C(r,k)·a^k · x^{p+r−k} y^{q+s−k}`.
pub fn pair_product(p: u32, q: u32, r: u32, s: u32, a: &GaussianRational) -> Vec<((u32, u32), GaussianRational)> {
    let kmax = q.min(r);
    let mut out = Vec::with_capacity(kmax as usize + 1);
    let mut ak = GaussianRational::one();
    for k in 0..=kmax {
        if k > 0 {
            ak = &ak * a;
            if ak.is_zero() {
                break;
            }
        }
        let w = falling(q as i64, k as i64) * binomial_int(r as i64, k as i64);
        out.push(((p + r - k, q + s - k), ak.scale_int(&w)));
    }
    out
}

/// `yⁿ xᵐ` in normal order for a single pair.
pub fn normal_order_pow(n: u32, m: u32, theta: &Rational) -> Result<NCPolynomial> {
    let params = ThetaParams::single(theta.clone())?;
    let terms = pair_product(0, n, m, 0, &params.a(0))
        .into_iter()
        .map(|((x, y), c)| (MultiIndex(vec![x, y]), NCScalar::from_gaussian(c, theta)));
    Ok(NCPolynomial::from_terms(params, terms))
}

/// A product of generators, stored as zero-based generator indices.
pub type Word = Vec<usize>;

/// Parses `"y y x"`, `"yyx"` or `"x4 x2 x3 x1"`.
///
/// With one pair, `x` and `y` name the two generators; `x<k>` is the `k`-th generator (1-based).
pub fn parse_word(s: &str, generators: usize) -> Result<Word> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != ',' && *c != '*' && *c != '·').collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        i += 1;
        let mut digits = String::new();
        while i < chars.len() && chars[i].is_ascii_digit() {
            digits.push(chars[i]);
            i += 1;
        }
        let idx = match (c, digits.is_empty()) {
            ('x', true) => 0,
            ('y', true) => 1,
            ('x', false) => {
                let k: usize = digits.parse().map_err(|_| Error::Parse(format!("bad generator x{digits}")))?;
                if k == 0 {
                    return Err(Error::Parse("generators are numbered from 1".into()));
                }
                k - 1
            }
            _ => return Err(Error::Parse(format!("unknown generator symbol {c:?}"))),
        };
        if idx >= generators {
            return Err(Error::Parse(format!("generator index {} exceeds {generators}", idx + 1)));
        }
        out.push(idx);
    }
    Ok(out)
}

/// Normal form of a word by exhaustive single-step rewriting.
///
/// Applies `x_{2m} x_{2m−1} → x_{2m−1} x_{2m} + a_m` and swaps generators of different
/// pairs until every word is sorted. Slow but independent of [`pair_product`].
pub fn rewrite_normalize(word: &[usize], theta: &ThetaParams) -> Result<NCPolynomial> {
    let ngen = theta.generators();
    if let Some(&bad) = word.iter().find(|&&g| g >= ngen) {
        return Err(Error::InvalidArgument(format!("generator index {bad} out of range")));
    }
    let mut pending: BTreeMap<Word, GaussianRational> = BTreeMap::new();
    let mut done: BTreeMap<MultiIndex, GaussianRational> = BTreeMap::new();
    pending.insert(word.to_vec(), GaussianRational::one());
    while let Some((w, c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        match w.windows(2).position(|p| p[0] > p[1]) {
            None => {
                let mut e = vec![0u32; ngen];
                for &g in &w {
                    e[g] += 1;
                }
                *done.entry(MultiIndex(e)).or_insert_with(GaussianRational::zero) += &c;
            }
            Some(i) => {
                let (hi, lo) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                *pending.entry(swapped).or_insert_with(GaussianRational::zero) += &c;
                if hi / 2 == lo / 2 {
                    let a = theta.a(hi / 2);
                    if !a.is_zero() {
                        let mut shorter = w[..i].to_vec();
                        shorter.extend_from_slice(&w[i + 2..]);
                        *pending.entry(shorter).or_insert_with(GaussianRational::zero) += &(&c * &a);
                    }
                }
            }
        }
    }
    let ct = theta.coeff_theta().clone();
    Ok(NCPolynomial::from_terms(
        theta.clone(),
        done.into_iter().map(|(e, c)| (e, NCScalar::from_gaussian(c, &ct))),
    ))
}
