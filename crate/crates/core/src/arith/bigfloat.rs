//! Fixed-precision decimal floats for the numeric branch solvers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::DBig;
use dashu_int::IBig;
use num_bigint::BigInt;

use super::rational::Rational;

pub const DEFAULT_PRECISION: usize = 128;

/// A decimal float carrying `precision` significant digits.
#[derive(Clone, Debug)]
pub struct BigFloat {
    value: DBig,
    precision: usize,
}

fn to_ibig(n: &BigInt) -> IBig {
    n.to_string().parse().expect("decimal integer")
}

impl BigFloat {
    pub fn from_rational(r: &Rational, precision: usize) -> Self {
        let n = DBig::from(to_ibig(r.numer())).with_precision(precision).value();
        let d = DBig::from(to_ibig(r.denom())).with_precision(precision).value();
        Self { value: n / d, precision }
    }

    pub fn from_int(n: i64, precision: usize) -> Self {
        Self { value: DBig::from(n).with_precision(precision).value(), precision }
    }

    pub fn zero(precision: usize) -> Self {
        Self::from_int(0, precision)
    }

    /// `10^e`, exact for any integer `e` at this precision.
    pub fn pow10(e: i64, precision: usize) -> Self {
        let value = DBig::from_parts(IBig::from(1u8), e as isize).with_precision(precision).value();
        Self { value, precision }
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn sqrt(&self) -> Self {
        Self { value: self.value.sqrt(), precision: self.precision }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn is_negative(&self) -> bool {
        self.value < DBig::ZERO
    }

    pub fn is_zero(&self) -> bool {
        self.value == DBig::ZERO
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().value()
    }

    /// Decimal text with at most `digits` significant digits.
    pub fn to_string_digits(&self, digits: usize) -> String {
        self.value.clone().with_precision(digits.max(1)).value().to_string()
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &Self) -> bool {
        self.value == o.value
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&o.value)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for &BigFloat {
            type Output = BigFloat;
            fn $m(self, o: &BigFloat) -> BigFloat {
                BigFloat { value: (&self.value).$m(&o.value), precision: self.precision.max(o.precision) }
            }
        }
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $m(self, o: BigFloat) -> BigFloat {
                (&self).$m(&o)
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { value: -self.value.clone(), precision: self.precision }
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn sqrt_two_to_many_digits() {
        let two = BigFloat::from_int(2, 80);
        let s = two.sqrt();
        let err = (&(&s * &s) - &two).abs();
        assert!(err < BigFloat::pow10(-75, 80));
        assert!(s.to_string_digits(20).starts_with("1.414213562373095048"));
    }

    #[test]
    fn rational_conversion() {
        let x = BigFloat::from_rational(&rat(-1, 3), 50);
        assert!(x.is_negative());
        assert!((x.to_f64() + 1.0 / 3.0).abs() < 1e-15);
        assert!(BigFloat::zero(10).is_zero());
    }
}
