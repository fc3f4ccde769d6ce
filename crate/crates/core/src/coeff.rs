//! Coefficient domains shared by series arithmetic and divisor sums.
//!
//! Exact big integers, plus two floating domains for weight sequences with
//! irrational values (von Mangoldt): plain `f64`, and the double-double
//! [`Real`] used by the identity checkers, whose alternating sums cancel
//! coefficients far larger than the result.

use std::fmt;
use std::ops::{AddAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use twofloat::TwoFloat;

/// Double-double real (about 106 significand bits).
pub type Real = TwoFloat;

/// A commutative ring element usable as a power-series coefficient.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    /// `true` for the exact domain.
    const EXACT: bool;

    fn mul_ref(&self, rhs: &Self) -> Self;

    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += &a.mul_ref(b);
    }

    fn from_i64(v: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// Lossless conversion from a float, when the domain admits one.
    fn from_f64(v: f64) -> Option<Self>;

    /// Multiplicative inverse of a unit.
    fn unit_inverse(&self) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// Sign test; used by the inequality checks.
    fn signum_i8(&self) -> i8;

    fn to_number(&self) -> Number;
}

/// A reported value: exact integers serialize as decimal strings.
#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Int(BigInt),
    Float(f64),
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Int(v) => write!(f, "{v}"),
            Number::Float(x) => write!(f, "{x:e}"),
        }
    }
}

impl Serialize for Number {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Number::Int(v) => serializer.collect_str(v),
            Number::Float(x) => serializer.serialize_f64(*x),
        }
    }
}

impl Coefficient for BigInt {
    const EXACT: bool = true;

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self += a * b;
        }
    }

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }

    fn from_f64(_: f64) -> Option<Self> {
        None
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_one() || (-self).is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn signum_i8(&self) -> i8 {
        match self.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    fn to_number(&self) -> Number {
        Number::Int(self.clone())
    }
}

impl Coefficient for f64 {
    const EXACT: bool = false;

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_bigint(v: &BigInt) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }

    fn from_f64(v: f64) -> Option<Self> {
        Some(v)
    }

    fn unit_inverse(&self) -> Option<Self> {
        if *self != 0.0 && self.is_finite() {
            Some(1.0 / self)
        } else {
            None
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn signum_i8(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }

    fn to_number(&self) -> Number {
        Number::Float(*self)
    }
}

impl Coefficient for TwoFloat {
    const EXACT: bool = false;

    fn mul_ref(&self, rhs: &Self) -> Self {
        *self * *rhs
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += *a * *b;
    }

    fn from_i64(v: i64) -> Self {
        let hi = v as f64;
        TwoFloat::new_add(hi, (v as i128 - hi as i128) as f64)
    }

    fn from_bigint(v: &BigInt) -> Self {
        let hi = ToPrimitive::to_f64(v).unwrap_or(f64::NAN);
        match <BigInt as FromPrimitive>::from_f64(hi) {
            Some(h) => TwoFloat::new_add(hi, ToPrimitive::to_f64(&(v - h)).unwrap_or(f64::NAN)),
            None => TwoFloat::from(hi),
        }
    }

    fn from_f64(v: f64) -> Option<Self> {
        Some(TwoFloat::from(v))
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.hi() != 0.0 && self.is_valid() {
            Some(self.recip())
        } else {
            None
        }
    }

    fn to_f64(&self) -> f64 {
        self.hi() + self.lo()
    }

    fn signum_i8(&self) -> i8 {
        self.hi().signum_i8()
    }

    fn to_number(&self) -> Number {
        Number::Float(Coefficient::to_f64(self))
    }
}

/// Relative comparison with an absolute floor, for float-domain checks.
pub fn close_enough(lhs: f64, rhs: f64, rel: f64, abs_floor: f64) -> bool {
    let diff = (lhs - rhs).abs();
    diff <= abs_floor || diff <= rel * lhs.abs().max(rhs.abs())
}
