use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{GammaDirection, MultiIndex, NCPolynomial, ThetaParams};
use crate::arith::rational::{format_rational, parse_rational, serde_rational, Rational};
use crate::arith::{GaussianRational, NCScalar};
use crate::error::{Error, Result};

/// γ-normalized coefficients `a_{p,q}` of `Σ a_{p,q} γ^{−p−q} x^p y^q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Grid2Json", into = "Grid2Json")]
pub struct CoeffGrid2D {
    theta: Rational,
    entries: BTreeMap<(u32, u32), GaussianRational>,
}

/// γ-normalized coefficients `a_{p₁,p₂,p₃,p₄}` over two pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Grid4Json", into = "Grid4Json")]
pub struct CoeffGrid4D {
    thetas: (Rational, Rational),
    entries: BTreeMap<[u32; 4], GaussianRational>,
}

fn insert_nonzero<K: Ord>(map: &mut BTreeMap<K, GaussianRational>, k: K, v: GaussianRational) {
    if v.is_zero() {
        map.remove(&k);
    } else {
        map.insert(k, v);
    }
}

fn gaussian_of(c: &NCScalar) -> Result<GaussianRational> {
    c.as_gaussian()
        .cloned()
        .ok_or_else(|| Error::InvalidArgument("normalized coefficient has a gamma part".into()))
}

impl CoeffGrid2D {
    pub fn new(theta: Rational, entries: impl IntoIterator<Item = ((u32, u32), GaussianRational)>) -> Self {
        let mut g = Self { theta, entries: BTreeMap::new() };
        for (k, v) in entries {
            let s = g.get(k.0, k.1) + v;
            insert_nonzero(&mut g.entries, k, s);
        }
        g
    }

    pub fn empty(theta: Rational) -> Self {
        Self { theta, entries: BTreeMap::new() }
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    pub fn entries(&self) -> &BTreeMap<(u32, u32), GaussianRational> {
        &self.entries
    }

    pub fn get(&self, p: u32, q: u32) -> GaussianRational {
        self.entries.get(&(p, q)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Lookup that accepts negative indices, which are always zero.
    pub fn at(&self, p: i64, q: i64) -> GaussianRational {
        if p < 0 || q < 0 {
            GaussianRational::zero()
        } else {
            self.get(p as u32, q as u32)
        }
    }

    pub fn set(&mut self, p: u32, q: u32, v: GaussianRational) {
        insert_nonzero(&mut self.entries, (p, q), v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest first and second index in the support.
    pub fn max_indices(&self) -> (u32, u32) {
        self.entries.keys().fold((0, 0), |(a, b), &(p, q)| (a.max(p), b.max(q)))
    }

    /// The element itself, in raw coefficients.
    pub fn to_polynomial(&self) -> Result<NCPolynomial> {
        let tp = ThetaParams::single(self.theta.clone())?;
        let terms = self
            .entries
            .iter()
            .map(|(&(p, q), c)| (MultiIndex(vec![p, q]), NCScalar::from_gaussian(c.clone(), &self.theta)));
        NCPolynomial::from_terms(tp, terms).gamma_convert(GammaDirection::Denormalize)
    }

    /// Normalized coefficients of a single-pair element. Fails if any has a `g` part.
    pub fn from_polynomial(t: &NCPolynomial) -> Result<Self> {
        if t.theta().pairs() != 1 {
            return Err(Error::DimensionMismatch("expected a single generator pair".into()));
        }
        let n = t.gamma_convert(GammaDirection::Normalize)?;
        let mut g = Self::empty(t.theta().theta(0).clone());
        for (e, c) in n.terms() {
            g.set(e.0[0], e.0[1], gaussian_of(c)?);
        }
        Ok(g)
    }
}

impl CoeffGrid4D {
    pub fn new(thetas: (Rational, Rational), entries: impl IntoIterator<Item = ([u32; 4], GaussianRational)>) -> Self {
        let mut g = Self { thetas, entries: BTreeMap::new() };
        for (k, v) in entries {
            let s = g.get(k) + v;
            insert_nonzero(&mut g.entries, k, s);
        }
        g
    }

    pub fn thetas(&self) -> &(Rational, Rational) {
        &self.thetas
    }

    pub fn entries(&self) -> &BTreeMap<[u32; 4], GaussianRational> {
        &self.entries
    }

    pub fn get(&self, idx: [u32; 4]) -> GaussianRational {
        self.entries.get(&idx).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct Grid2Json {
    #[serde(with = "serde_rational")]
    theta: Rational,
    entries: Vec<Entry2>,
}

#[derive(Serialize, Deserialize)]
struct Entry2 {
    idx: [u32; 2],
    coeff: GaussianRational,
}

#[derive(Serialize, Deserialize)]
struct Grid4Json {
    thetas: [String; 2],
    entries: Vec<Entry4>,
}

#[derive(Serialize, Deserialize)]
struct Entry4 {
    idx: [u32; 4],
    coeff: GaussianRational,
}

impl TryFrom<Grid2Json> for CoeffGrid2D {
    type Error = Error;
    fn try_from(j: Grid2Json) -> Result<Self> {
        if j.theta < Rational::zero() {
            return Err(Error::InvalidArgument("theta must be nonnegative".into()));
        }
        Ok(Self::new(j.theta, j.entries.into_iter().map(|e| ((e.idx[0], e.idx[1]), e.coeff))))
    }
}

impl From<CoeffGrid2D> for Grid2Json {
    fn from(g: CoeffGrid2D) -> Self {
        let entries = g.entries.into_iter().map(|((p, q), coeff)| Entry2 { idx: [p, q], coeff }).collect();
        Grid2Json { theta: g.theta, entries }
    }
}

impl TryFrom<Grid4Json> for CoeffGrid4D {
    type Error = Error;
    fn try_from(j: Grid4Json) -> Result<Self> {
        let t = (parse_rational(&j.thetas[0])?, parse_rational(&j.thetas[1])?);
        if t.0 < Rational::zero() || t.1 < Rational::zero() {
            return Err(Error::InvalidArgument("theta must be nonnegative".into()));
        }
        Ok(Self::new(t, j.entries.into_iter().map(|e| (e.idx, e.coeff))))
    }
}

impl From<CoeffGrid4D> for Grid4Json {
    fn from(g: CoeffGrid4D) -> Self {
        let thetas = [format_rational(&g.thetas.0), format_rational(&g.thetas.1)];
        let entries = g.entries.into_iter().map(|(idx, coeff)| Entry4 { idx, coeff }).collect();
        Grid4Json { thetas, entries }
    }
}
