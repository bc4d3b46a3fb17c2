use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::{display_rational, format_rational, parse_rational, Rational};
use crate::arith::GaussianRational;
use crate::error::{Error, Result};

/// Per-pair deformation parameters `θ_{2m−1,2m}`. A zero entry makes that pair commutative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct ThetaParams {
    pair_thetas: Vec<Rational>,
}

impl TryFrom<Vec<String>> for ThetaParams {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        ThetaParams::new(v.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?)
    }
}

impl From<ThetaParams> for Vec<String> {
    fn from(t: ThetaParams) -> Self {
        t.pair_thetas.iter().map(format_rational).collect()
    }
}

impl ThetaParams {
    pub fn new(pair_thetas: Vec<Rational>) -> Result<Self> {
        if pair_thetas.is_empty() {
            return Err(Error::InvalidArgument("at least one generator pair is required".into()));
        }
        if pair_thetas.iter().any(|t| t.is_negative()) {
            return Err(Error::InvalidArgument("theta must be nonnegative".into()));
        }
        Ok(Self { pair_thetas })
    }

    /// One pair with parameter `theta`.
    pub fn single(theta: Rational) -> Result<Self> {
        Self::new(vec![theta])
    }

    pub fn pairs(&self) -> usize {
        self.pair_thetas.len()
    }

    pub fn generators(&self) -> usize {
        2 * self.pair_thetas.len()
    }

    pub fn theta(&self, pair: usize) -> &Rational {
        &self.pair_thetas[pair]
    }

    pub fn thetas(&self) -> &[Rational] {
        &self.pair_thetas
    }

    /// `a_m = iθ_m` for pair `m` (zero-based).
    pub fn a(&self, pair: usize) -> GaussianRational {
        GaussianRational::imag(self.pair_thetas[pair].clone())
    }

    /// The θ carried by polynomial coefficients: that of the first pair.
    pub fn coeff_theta(&self) -> &Rational {
        &self.pair_thetas[0]
    }

    pub fn is_commutative(&self) -> bool {
        self.pair_thetas.iter().all(|t| t.is_zero())
    }
}

impl fmt::Display for ThetaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pair_thetas.iter().map(display_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Exponent vector `(p₁, …, p₂ₙ)` of a normal-ordered monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `≤`.
    pub fn divides(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}
