use num_traits::Zero;
use serde::Serialize;

use super::grid::{CoeffGrid2D, CoeffGrid4D};
use crate::arith::{binomial_int, falling, GaussianRational};
use crate::error::Result;

/// Residuals of the projector equations on normalized coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    /// Normalized coefficients of `T − T²`.
    pub idem: CoeffGrid2D,
    /// Normalized coefficients of `T − T*`.
    pub adj: CoeffGrid2D,
    pub ok: bool,
}

/// Evaluates both coefficient identities of `T = T² = T*` over the finite support.
///
/// `idem[m,n] = a_{m,n} − Σ_{r,h≤r,s≤n} C(r,h)·(n+h−s)!/(n−s)!·a_{m+h−r,n+h−s}·a_{r,s}` and
/// `adj[m,n] = a_{m,n} − i^{m+n}·Σ_h (−1)^h·C(m+h,m)·(n+h)!/n!·conj(a_{m+h,n+h})`.
pub fn projector_residual(grid: &CoeffGrid2D) -> ResidualReport {
    let (pm, qm) = grid.max_indices();
    let theta = grid.theta().clone();
    let mut idem = CoeffGrid2D::empty(theta.clone());
    let mut adj = CoeffGrid2D::empty(theta);
    if grid.is_zero() {
        return ResidualReport { idem, adj, ok: true };
    }
    for m in 0..=2 * pm as i64 {
        for n in 0..=2 * qm as i64 {
            let mut sum = GaussianRational::zero();
            for (&(r, s), ars) in grid.entries() {
                let (r, s) = (r as i64, s as i64);
                if s > n {
                    continue;
                }
                for h in 0..=r {
                    let left = grid.at(m + h - r, n + h - s);
                    if left.is_zero() {
                        continue;
                    }
                    let w = binomial_int(r, h) * falling(n + h - s, h);
                    sum += &(&left * ars).scale_int(&w);
                }
            }
            idem.set(m as u32, n as u32, grid.at(m, n) - sum);
        }
    }
    for m in 0..=pm as i64 {
        for n in 0..=qm as i64 {
            let mut sum = GaussianRational::zero();
            for h in 0..=(pm as i64 - m).min(qm as i64 - n) {
                let c = grid.at(m + h, n + h);
                if c.is_zero() {
                    continue;
                }
                let mut w = binomial_int(m + h, m) * falling(n + h, h);
                if h % 2 == 1 {
                    w = -w;
                }
                sum += &c.conj().scale_int(&w);
            }
            let rhs = &GaussianRational::i_pow(m + n) * &sum;
            adj.set(m as u32, n as u32, grid.at(m, n) - rhs);
        }
    }
    let ok = idem.is_zero() && adj.is_zero();
    ResidualReport { idem, adj, ok }
}

/// Formula residuals next to the same quantities computed by the algebra engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualPathReport {
    pub formula: ResidualReport,
    /// Normalized `T − T²` from products of the denormalized element.
    pub algebra_idem: CoeffGrid2D,
    /// Normalized `T − T*` from the engine adjoint.
    pub algebra_adj: CoeffGrid2D,
    pub idem_match: bool,
    pub adj_match: bool,
}

pub fn dual_path_report(grid: &CoeffGrid2D) -> Result<DualPathReport> {
    let formula = projector_residual(grid);
    let t = grid.to_polynomial()?;
    let algebra_idem = CoeffGrid2D::from_polynomial(&t.try_sub(&t.nc_multiply(&t)?)?)?;
    let algebra_adj = CoeffGrid2D::from_polynomial(&t.try_sub(&t.adjoint())?)?;
    let idem_match = algebra_idem == formula.idem;
    let adj_match = algebra_adj == formula.adj;
    Ok(DualPathReport { formula, algebra_idem, algebra_adj, idem_match, adj_match })
}

/// True iff the formula idempotency residual equals the engine's `T − T²`, normalized.
pub fn dual_path_check(grid: &CoeffGrid2D) -> Result<bool> {
    Ok(dual_path_report(grid)?.idem_match)
}

/// Grids that can be tested against a band width.
pub trait Banded {
    /// Supported indices whose largest pairwise gap exceeds `k`.
    fn band_violations(&self, k: u32) -> Vec<Vec<u32>>;
}

fn spread(idx: &[u32]) -> u32 {
    idx.iter().max().unwrap_or(&0) - idx.iter().min().unwrap_or(&0)
}

impl Banded for CoeffGrid2D {
    fn band_violations(&self, k: u32) -> Vec<Vec<u32>> {
        self.entries().keys().filter(|(p, q)| p.abs_diff(*q) > k).map(|&(p, q)| vec![p, q]).collect()
    }
}

impl Banded for CoeffGrid4D {
    fn band_violations(&self, k: u32) -> Vec<Vec<u32>> {
        self.entries().keys().filter(|i| spread(&i[..]) > k).map(|i| i.to_vec()).collect()
    }
}

pub fn band_membership<G: Banded + ?Sized>(grid: &G, k: u32) -> bool {
    grid.band_violations(k).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, GaussianRational as G};

    #[test]
    fn trivial_projectors() {
        assert!(projector_residual(&CoeffGrid2D::empty(rat(1, 1))).ok);
        let one = CoeffGrid2D::new(rat(1, 1), [((0, 0), G::from_int(1))]);
        assert!(projector_residual(&one).ok);
    }

    #[test]
    fn half_is_not_idempotent() {
        let half = CoeffGrid2D::new(rat(1, 1), [((0, 0), G::real(rat(1, 2)))]);
        let r = projector_residual(&half);
        assert!(!r.ok);
        assert_eq!(r.idem.get(0, 0), G::real(rat(1, 4)));
        assert!(r.adj.is_zero());
    }

    #[test]
    fn single_entry_dual_path() {
        let g = CoeffGrid2D::new(rat(3, 2), [((1, 1), G::from_int(1))]);
        let rep = dual_path_report(&g).unwrap();
        assert!(rep.idem_match && rep.adj_match);
        assert!(!rep.formula.idem.is_zero());
    }

    #[test]
    fn bands() {
        let diag = CoeffGrid2D::new(rat(1, 1), [((0, 0), G::from_int(1)), ((3, 3), G::from_int(2))]);
        assert!(band_membership(&diag, 0));
        let off = CoeffGrid2D::new(rat(1, 1), [((0, 2), G::from_int(1))]);
        assert!(!band_membership(&off, 1));
        assert!(band_membership(&off, 2));
        let g4 = CoeffGrid4D::new((rat(1, 1), rat(1, 1)), [([3, 4, 3, 5], G::from_int(1))]);
        assert!(band_membership(&g4, 2));
        assert!(!band_membership(&g4, 1));
    }
}
