use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::rational::{display_rational, serde_rational, Rational};
use crate::error::{Error, Result};

/// `c0 + c1·g` in ℚ(i)[g]/(g² − iθ).
///
/// With `theta = 0` the ring degenerates to ℚ(i) and `c1` is always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawScalar")]
pub struct NCScalar {
    pub(crate) c0: GaussianRational,
    pub(crate) c1: GaussianRational,
    #[serde(with = "serde_rational")]
    pub(crate) theta: Rational,
}

#[derive(Deserialize)]
struct RawScalar {
    c0: GaussianRational,
    #[serde(default = "GaussianRational::zero")]
    c1: GaussianRational,
    #[serde(with = "serde_rational")]
    theta: Rational,
}

impl TryFrom<RawScalar> for NCScalar {
    type Error = Error;
    fn try_from(r: RawScalar) -> Result<Self> {
        NCScalar::new(r.c0, r.c1, r.theta)
    }
}

/// Binary and unary operations accepted by [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Conj,
    Neg,
    Inv,
}

impl NCScalar {
    pub fn new(c0: GaussianRational, c1: GaussianRational, theta: Rational) -> Result<Self> {
        if theta < Rational::zero() {
            return Err(Error::InvalidArgument("theta must be nonnegative".into()));
        }
        if theta.is_zero() && !c1.is_zero() {
            return Err(Error::ThetaZero);
        }
        Ok(Self { c0, c1, theta })
    }

    /// An element of the ℚ(i) subring.
    pub fn from_gaussian(c0: GaussianRational, theta: &Rational) -> Self {
        Self { c0, c1: GaussianRational::zero(), theta: theta.clone() }
    }

    pub fn from_rational(r: Rational, theta: &Rational) -> Self {
        Self::from_gaussian(GaussianRational::real(r), theta)
    }

    pub fn zero(theta: &Rational) -> Self {
        Self::from_gaussian(GaussianRational::zero(), theta)
    }

    pub fn one(theta: &Rational) -> Self {
        Self::from_gaussian(GaussianRational::one(), theta)
    }

    /// The commutator constant `a = iθ`.
    pub fn a(theta: &Rational) -> Self {
        Self::from_gaussian(GaussianRational::imag(theta.clone()), theta)
    }

    /// The adjoined square root `g` of `iθ`.
    pub fn g(theta: &Rational) -> Result<Self> {
        Self::new(GaussianRational::zero(), GaussianRational::one(), theta.clone())
    }

    /// `g^k` for any integer `k`; negative powers need `θ > 0`.
    pub fn gamma_pow(k: i64, theta: &Rational) -> Result<Self> {
        if k == 0 {
            return Ok(Self::one(theta));
        }
        if theta.is_zero() {
            return Err(Error::ThetaZero);
        }
        let a = GaussianRational::imag(theta.clone());
        let j = k.div_euclid(2);
        let r = k.rem_euclid(2);
        let base = if j >= 0 { a.pow(j as u32) } else { a.inv().expect("theta > 0").pow((-j) as u32) };
        Ok(if r == 0 {
            Self::from_gaussian(base, theta)
        } else {
            Self { c0: GaussianRational::zero(), c1: base, theta: theta.clone() }
        })
    }

    pub fn c0(&self) -> &GaussianRational {
        &self.c0
    }

    pub fn c1(&self) -> &GaussianRational {
        &self.c1
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c0.is_one() && self.c1.is_zero()
    }

    /// The ℚ(i) value when the `g` part vanishes.
    pub fn as_gaussian(&self) -> Option<&GaussianRational> {
        self.c1.is_zero().then_some(&self.c0)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.theta == o.theta {
            Ok(())
        } else {
            Err(Error::ThetaMismatch)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add_unchecked(o))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add_unchecked(&o.neg_ref()))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    fn add_unchecked(&self, o: &Self) -> Self {
        Self { c0: &self.c0 + &o.c0, c1: &self.c1 + &o.c1, theta: self.theta.clone() }
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        let a = GaussianRational::imag(self.theta.clone());
        let c0 = &self.c0 * &o.c0 + &(&self.c1 * &o.c1) * &a;
        let c1 = &self.c0 * &o.c1 + &self.c1 * &o.c0;
        Self { c0, c1, theta: self.theta.clone() }
    }

    fn neg_ref(&self) -> Self {
        Self { c0: -&self.c0, c1: -&self.c1, theta: self.theta.clone() }
    }

    /// Complex conjugation, using `conj(g) = −i·g`.
    pub fn conj(&self) -> Self {
        Self {
            c0: self.c0.conj(),
            c1: &-GaussianRational::i() * &self.c1.conj(),
            theta: self.theta.clone(),
        }
    }

    /// `(c0 + c1 g)⁻¹ = (c0 − c1 g) / (c0² − iθ·c1²)`.
    pub fn inv(&self) -> Result<Self> {
        let a = GaussianRational::imag(self.theta.clone());
        let norm = &self.c0 * &self.c0 - &(&self.c1 * &self.c1) * &a;
        let ninv = norm.inv().ok_or(Error::NotInvertible)?;
        Ok(Self { c0: &self.c0 * &ninv, c1: -(&self.c1 * &ninv), theta: self.theta.clone() })
    }

    pub fn scale(&self, z: &GaussianRational) -> Self {
        Self { c0: &self.c0 * z, c1: &self.c1 * z, theta: self.theta.clone() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self { c0: self.c0.scale(r), c1: self.c1.scale(r), theta: self.theta.clone() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.theta);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }
}

/// Dispatches one ring operation. `b` is required for the binary ops and ignored otherwise.
pub fn scalar_arith(a: &NCScalar, b: Option<&NCScalar>, op: ScalarOp) -> Result<NCScalar> {
    let need = || b.ok_or_else(|| Error::InvalidArgument("binary op needs two operands".into()));
    match op {
        ScalarOp::Add => a.try_add(need()?),
        ScalarOp::Sub => a.try_sub(need()?),
        ScalarOp::Mul => a.try_mul(need()?),
        ScalarOp::Conj => Ok(a.conj()),
        ScalarOp::Neg => Ok(-a),
        ScalarOp::Inv => a.inv(),
    }
}

// Operator forms assume matching theta and panic otherwise; the algebra layer checks up front.

impl Add for &NCScalar {
    type Output = NCScalar;
    fn add(self, o: &NCScalar) -> NCScalar {
        assert_eq!(self.theta, o.theta, "theta mismatch");
        self.add_unchecked(o)
    }
}

impl Sub for &NCScalar {
    type Output = NCScalar;
    fn sub(self, o: &NCScalar) -> NCScalar {
        assert_eq!(self.theta, o.theta, "theta mismatch");
        self.add_unchecked(&o.neg_ref())
    }
}

impl Mul for &NCScalar {
    type Output = NCScalar;
    fn mul(self, o: &NCScalar) -> NCScalar {
        assert_eq!(self.theta, o.theta, "theta mismatch");
        self.mul_unchecked(o)
    }
}

impl Neg for &NCScalar {
    type Output = NCScalar;
    fn neg(self) -> NCScalar {
        self.neg_ref()
    }
}

impl fmt::Display for NCScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0.is_zero(), self.c1.is_zero()) {
            (_, true) => write!(f, "{}", self.c0),
            (true, false) => write!(f, "{}·g", self.c1),
            (false, false) => write!(f, "({} + {}·g)", self.c0, self.c1),
        }
    }
}

/// Text for θ in messages and echoed configs.
pub fn theta_label(theta: &Rational) -> String {
    display_rational(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn g_squared_is_a() {
        let th = rat(2, 3);
        let g = NCScalar::g(&th).unwrap();
        assert_eq!(&g * &g, NCScalar::a(&th));
    }

    #[test]
    fn conj_of_g() {
        let th = rat(1, 1);
        let g = NCScalar::g(&th).unwrap();
        let c = g.conj();
        assert!(c.c0().is_zero());
        assert_eq!(c.c1(), &-GaussianRational::i());
        assert_eq!(c.conj(), g);
    }

    #[test]
    fn inverses_and_powers() {
        let th = rat(5, 2);
        let x = NCScalar::new(GaussianRational::from_int(3), GaussianRational::new(rat(1, 2), rat(1, 1)), th.clone()).unwrap();
        assert!((&x * &x.inv().unwrap()).is_one());
        for k in -5..6 {
            let p = NCScalar::gamma_pow(k, &th).unwrap();
            let q = NCScalar::gamma_pow(-k, &th).unwrap();
            assert!((&p * &q).is_one(), "k={k}");
        }
        assert_eq!(NCScalar::gamma_pow(3, &th).unwrap(), NCScalar::g(&th).unwrap().pow(3));
    }

    #[test]
    fn zero_norm_is_not_invertible() {
        // θ = 2: (1 + i) is a square root of 2i = iθ, so 1 + i − g has zero norm.
        let th = rat(2, 1);
        let x = NCScalar::new(GaussianRational::new(rat(1, 1), rat(1, 1)), GaussianRational::from_int(-1), th).unwrap();
        assert_eq!(x.inv(), Err(Error::NotInvertible));
    }

    #[test]
    fn theta_checks() {
        let a = NCScalar::one(&rat(1, 1));
        let b = NCScalar::one(&rat(1, 2));
        assert_eq!(a.try_add(&b), Err(Error::ThetaMismatch));
        assert_eq!(NCScalar::g(&Rational::zero()), Err(Error::ThetaZero));
        let x = scalar_arith(&a, None, ScalarOp::Neg).unwrap();
        assert!(scalar_arith(&a, Some(&x), ScalarOp::Add).unwrap().is_zero());
    }
}
