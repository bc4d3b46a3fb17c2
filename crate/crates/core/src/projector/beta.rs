//! The β-sequences `b_n = Σ_{q≤n} n!/(n−q)!·a_{q,q+k}` and their gap-k orthogonality.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::grid::{CoeffGrid2D, CoeffGrid4D};
use super::residual::Banded;
use crate::algebra::{GammaDirection, MultiIndex, NCPolynomial, ThetaParams};
use crate::arith::{falling, GaussianRational, NCScalar, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaReport2D {
    pub b: Vec<GaussianRational>,
    /// `b_n·b_{n+k}` for every `n` with `n + k ≤ N`.
    pub products: Vec<GaussianRational>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaReport4D {
    /// `β_n` with γ₂-normalized coefficients in `x₃, x₄`.
    pub b: Vec<NCPolynomial>,
    /// `β_n·β_{n+k}`, normalized the same way.
    pub products: Vec<NCPolynomial>,
    pub ok: bool,
}

pub(crate) fn check_band<G: Banded>(grid: &G, k: u32) -> Result<()> {
    match grid.band_violations(k).into_iter().next() {
        Some(idx) => Err(Error::BandViolation(idx)),
        None => Ok(()),
    }
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("the gap identity needs k >= 1".into()));
    }
    Ok(())
}

/// `b_0..=b_N` for a 2D grid and band width `k`.
pub fn beta_sequence(grid: &CoeffGrid2D, k: u32, n_max: u32) -> Vec<GaussianRational> {
    (0..=n_max as i64)
        .map(|n| {
            let mut s = GaussianRational::zero();
            for q in 0..=n {
                let a = grid.at(q, q + k as i64);
                if !a.is_zero() {
                    s += &a.scale_int(&falling(n, q));
                }
            }
            s
        })
        .collect()
}

/// Checks `b_n·b_{n+k} = 0` for `n + k ≤ N`.
pub fn beta_orthogonality(grid: &CoeffGrid2D, k: u32, n_max: u32) -> Result<BetaReport2D> {
    check_k(k)?;
    check_band(grid, k)?;
    let b = beta_sequence(grid, k, n_max);
    let k = k as usize;
    let products: Vec<GaussianRational> = (0..b.len().saturating_sub(k)).map(|n| &b[n] * &b[n + k]).collect();
    let ok = products.iter().all(|p| p.is_zero());
    Ok(BetaReport2D { b, products, ok })
}

/// Second-pair algebra used for the `x₃x₄`-valued coefficients.
pub(crate) fn second_pair(theta2: &Rational) -> Result<ThetaParams> {
    if theta2.is_zero() {
        return Err(Error::ThetaZero);
    }
    ThetaParams::single(theta2.clone())
}

/// Normalized polynomial in one pair from `(u, v) → coefficient` data.
pub(crate) fn normalized_poly<'a>(
    tp: &ThetaParams,
    terms: impl IntoIterator<Item = ((u32, u32), &'a GaussianRational)>,
) -> NCPolynomial {
    let th = tp.coeff_theta().clone();
    NCPolynomial::from_terms(
        tp.clone(),
        terms.into_iter().map(|((u, v), c)| (MultiIndex(vec![u, v]), NCScalar::from_gaussian(c.clone(), &th))),
    )
}

/// Product of two normalized elements, computed on raw coefficients and normalized again.
pub(crate) fn normalized_product(a: &NCPolynomial, b: &NCPolynomial) -> Result<NCPolynomial> {
    let ra = a.gamma_convert(GammaDirection::Denormalize)?;
    let rb = b.gamma_convert(GammaDirection::Denormalize)?;
    ra.nc_multiply(&rb)?.gamma_convert(GammaDirection::Normalize)
}

/// Upper-edge data `p → {(u, v) → a_{p,p+k,u,v}}`.
pub(crate) type Edge = BTreeMap<u32, BTreeMap<(u32, u32), GaussianRational>>;

pub(crate) fn upper_edge(grid: &CoeffGrid4D, k: u32) -> Edge {
    let mut edge = Edge::new();
    for (idx, c) in grid.entries() {
        if idx[1] == idx[0] + k {
            edge.entry(idx[0]).or_default().insert((idx[2], idx[3]), c.clone());
        }
    }
    edge
}

/// `β_0..=β_N` from edge data, as normalized polynomials.
pub(crate) fn beta_polys(edge: &Edge, tp: &ThetaParams, n_max: u32) -> Vec<NCPolynomial> {
    let alphas: Vec<(u32, NCPolynomial)> = edge.iter().map(|(&p, m)| (p, normalized_poly(tp, m.iter().map(|(k, v)| (*k, v))))).collect();
    (0..=n_max)
        .map(|n| {
            let mut acc = NCPolynomial::zero(tp.clone());
            for (q, alpha) in &alphas {
                if *q <= n {
                    let w = GaussianRational::from_bigint(falling(n as i64, *q as i64));
                    acc = acc.try_add(&alpha.scale(&w)).expect("same theta");
                }
            }
            acc
        })
        .collect()
}

/// Operator-valued version on a two-pair grid: `β_n` lives in the `x₃x₄` plane.
pub fn beta_orthogonality_4d(grid: &CoeffGrid4D, k: u32, n_max: u32) -> Result<BetaReport4D> {
    check_k(k)?;
    check_band(grid, k)?;
    let tp = second_pair(&grid.thetas().1)?;
    let b = beta_polys(&upper_edge(grid, k), &tp, n_max);
    let k = k as usize;
    let products = (0..b.len().saturating_sub(k))
        .map(|n| normalized_product(&b[n], &b[n + k]))
        .collect::<Result<Vec<_>>>()?;
    let ok = products.iter().all(|p| p.is_zero());
    Ok(BetaReport4D { b, products, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, GaussianRational as G};

    #[test]
    fn zero_and_unit_edge() {
        let z = CoeffGrid2D::empty(rat(1, 1));
        let r = beta_orthogonality(&z, 1, 6).unwrap();
        assert!(r.ok && r.b.iter().all(|x| x.is_zero()));
        let e = CoeffGrid2D::new(rat(1, 1), [((0, 2), G::from_int(1))]);
        let r = beta_orthogonality(&e, 2, 6).unwrap();
        assert!(r.b.iter().all(|x| *x == G::from_int(1)));
        assert!(!r.ok);
    }

    #[test]
    fn guards() {
        let e = CoeffGrid2D::new(rat(1, 1), [((0, 3), G::from_int(1))]);
        assert_eq!(beta_orthogonality(&e, 1, 4), Err(Error::BandViolation(vec![0, 3])));
        assert!(beta_orthogonality(&e, 0, 4).is_err());
    }

    #[test]
    fn four_dim_constant_edge() {
        let g = CoeffGrid4D::new((rat(1, 1), rat(1, 2)), [([0, 1, 0, 1], G::from_int(1))]);
        let r = beta_orthogonality_4d(&g, 1, 4).unwrap();
        assert!(!r.ok);
        // β_n = x₄ for every n, so each product is x₄².
        assert!(r.products.iter().all(|p| p.len() == 1 && p.coeff(&[0, 2]).unwrap().is_one()));
    }
}
