//! Forced zeros on the edges of a two-pair band grid.
//!
//! The products `β_n·β_{n+k}` are built with the generic engine. Upper-edge entries
//! `a_{p,p+k,u,v}` are grouped by `(u, d = v − u)`. Groups are peeled in order of
//! decreasing `d`, then decreasing `u`: once every group above has been removed, the
//! coefficient of `x₃^{2u} x₄^{2u+2d}` in `β_n·β_{n+k}` is `b_n·b_{n+k}` for the scalar
//! sequence of that group alone, so it must vanish for every `n`. With finite support
//! `b_n` is a polynomial in `n`, hence the group must be empty. A group whose top
//! coefficient is nonzero at some sampled `n` is flagged and then treated as zero.
//! The lower edge `a_{p+k,p,u,v}` is moved onto the upper edge by the
//! *-automorphism `x₁ ↦ x₂, x₂ ↦ −x₁`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::beta::{beta_polys, check_band, normalized_poly, normalized_product, second_pair, upper_edge, Edge};
use super::grid::CoeffGrid4D;
use crate::algebra::{GammaDirection, ThetaParams};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcedZero {
    pub index: [u32; 4],
    pub constraint: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Band4Report {
    /// Nonzero entries that the edge constraints force to vanish, in peeling order.
    pub violations: Vec<ForcedZero>,
    /// Edge entries left unexplained after peeling; empty unless the engine disagrees with the argument above.
    pub unresolved: Vec<[u32; 4]>,
}

impl Band4Report {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.unresolved.is_empty()
    }
}

/// Label for the constraint family that removes group `(u, d)`.
pub fn constraint_id(k: u32, d: i64, lower: bool) -> String {
    let level = k as i64 - d.abs();
    let mut id = match (k, level) {
        (1, 0) => "mm2".to_string(),
        (1, 1) => "mm0111".to_string(),
        (_, 0) => "mm2k".to_string(),
        (_, 1) => "mkppk".to_string(),
        (_, l) => format!("mkppk{l}"),
    };
    if d < 0 {
        id.push_str("-mirror");
    }
    if lower {
        id.push_str("-lower");
    }
    id
}

/// Peels edge groups; returns the flagged `(u, d)` in order and what is left.
fn peel(edge: &Edge, k: u32, tp: &ThetaParams) -> Result<(Vec<(u32, i64)>, Edge)> {
    let mut cur = edge.clone();
    let mut flagged = Vec::new();
    let max_p = cur.keys().max().copied().unwrap_or(0);
    let n_max = 2 * (max_p + k) + 2;
    let k_i = k as i64;
    for d in (-k_i..=k_i).rev() {
        let max_u = cur.values().flat_map(|m| m.keys().map(|(u, _)| *u)).max();
        let Some(max_u) = max_u else { break };
        for u in (0..=max_u).rev() {
            let v = u as i64 + d;
            if v < 0 {
                continue;
            }
            let target = [2 * u, 2 * v as u32];
            let betas = beta_polys(&cur, tp, n_max);
            let mut hit = false;
            for n in 0..=(n_max - k) as usize {
                let prod = normalized_product(&betas[n], &betas[n + k as usize])?;
                if prod.coeff(&target).is_some_and(|c| !c.is_zero()) {
                    hit = true;
                    break;
                }
            }
            if hit {
                flagged.push((u, d));
                for m in cur.values_mut() {
                    m.remove(&(u, v as u32));
                }
                cur.retain(|_, m| !m.is_empty());
            }
        }
    }
    Ok((flagged, cur))
}

/// Moves the lower edge of `grid` onto the upper edge of its image under the pair rotation.
fn rotated_upper_edge(grid: &CoeffGrid4D, k: u32) -> Result<Edge> {
    let th1 = &grid.thetas().0;
    if th1.is_zero() {
        return Err(Error::ThetaZero);
    }
    let tp1 = ThetaParams::single(th1.clone())?;
    let mut slices: BTreeMap<(u32, u32), BTreeMap<(u32, u32), _>> = BTreeMap::new();
    for (idx, c) in grid.entries() {
        if idx[0] == idx[1] + k {
            slices.entry((idx[2], idx[3])).or_default().insert((idx[0], idx[1]), c);
        }
    }
    let mut edge = Edge::new();
    for ((u, v), slice) in slices {
        let s = normalized_poly(&tp1, slice.into_iter().map(|(k, c)| (k, c)));
        let rotated = s
            .gamma_convert(GammaDirection::Denormalize)?
            .pair_rotation(0)
            .gamma_convert(GammaDirection::Normalize)?;
        for (e, c) in rotated.terms() {
            if e.0[1] == e.0[0] + k {
                let c = c.as_gaussian().cloned().ok_or_else(|| Error::InvalidArgument("gamma part after rotation".into()))?;
                edge.entry(e.0[0]).or_default().insert((u, v), c);
            }
        }
    }
    Ok(edge)
}

/// Reports every nonzero edge entry that the `β_n·β_{n+k} = 0` constraints force to zero.
pub fn band4_forced_zeros(grid: &CoeffGrid4D, k: u32) -> Result<Band4Report> {
    if k == 0 {
        return Err(Error::InvalidArgument("edge constraints need k >= 1".into()));
    }
    check_band(grid, k)?;
    let tp2 = second_pair(&grid.thetas().1)?;
    let mut violations = Vec::new();
    let mut unresolved = Vec::new();

    let (flagged, rest) = peel(&upper_edge(grid, k), k, &tp2)?;
    for (u, d) in flagged {
        let v = (u as i64 + d) as u32;
        for (idx, _) in grid.entries().iter().filter(|(i, _)| i[1] == i[0] + k && i[2] == u && i[3] == v) {
            violations.push(ForcedZero { index: *idx, constraint: constraint_id(k, d, false) });
        }
    }
    for (p, m) in rest {
        unresolved.extend(m.keys().map(|&(u, v)| [p, p + k, u, v]));
    }

    let has_lower = grid.entries().keys().any(|i| i[0] == i[1] + k);
    if has_lower {
        let (flagged, rest) = peel(&rotated_upper_edge(grid, k)?, k, &tp2)?;
        let mut seen = std::collections::BTreeSet::new();
        for (u, d) in flagged {
            let v = (u as i64 + d) as u32;
            for (idx, _) in grid.entries().iter().filter(|(i, _)| i[0] == i[1] + k && i[2] == u && i[3] == v) {
                if seen.insert(*idx) {
                    violations.push(ForcedZero { index: *idx, constraint: constraint_id(k, d, true) });
                }
            }
        }
        for m in rest.values() {
            for &(u, v) in m.keys() {
                for idx in grid.entries().keys().filter(|i| i[0] == i[1] + k && i[2] == u && i[3] == v) {
                    if !seen.contains(idx) && !unresolved.contains(idx) {
                        unresolved.push(*idx);
                    }
                }
            }
        }
    }
    Ok(Band4Report { violations, unresolved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, GaussianRational as G};

    fn single(idx: [u32; 4]) -> CoeffGrid4D {
        CoeffGrid4D::new((rat(1, 1), rat(2, 3)), [(idx, G::from_int(1))])
    }

    #[test]
    fn clean_grids() {
        assert!(band4_forced_zeros(&CoeffGrid4D::new((rat(1, 1), rat(1, 1)), []), 1).unwrap().is_clean());
        assert!(band4_forced_zeros(&single([0, 0, 0, 0]), 1).unwrap().is_clean());
    }

    #[test]
    fn first_links_of_the_chain() {
        let r = band4_forced_zeros(&single([0, 1, 0, 1]), 1).unwrap();
        assert_eq!(r.violations, vec![ForcedZero { index: [0, 1, 0, 1], constraint: "mm2".into() }]);
        let r = band4_forced_zeros(&single([2, 3, 3, 3]), 1).unwrap();
        assert_eq!(r.violations[0].constraint, "mm0111");
        let r = band4_forced_zeros(&single([1, 0, 1, 0]), 1).unwrap();
        assert_eq!(r.violations[0].constraint, "mm2-mirror-lower");
        assert!(r.unresolved.is_empty());
    }

    #[test]
    fn ids() {
        assert_eq!(constraint_id(2, 2, false), "mm2k");
        assert_eq!(constraint_id(2, -1, false), "mkppk-mirror");
        assert_eq!(constraint_id(3, 0, true), "mkppk3-lower");
    }

    #[test]
    fn band_is_enforced() {
        assert!(matches!(band4_forced_zeros(&single([0, 2, 0, 1]), 1), Err(Error::BandViolation(_))));
    }
}
