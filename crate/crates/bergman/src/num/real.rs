//! The scalar abstraction shared by the fast (`f64`) and exact-ish
//! (`rug::Float`) evaluation paths.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::Float;

/// A family of types indexed by the scalar type, used to store the same
/// table at both precisions and select the right copy generically.
pub trait Family {
    type Of<T: Real>;
}

/// A value stored once per working scalar type.
#[derive(Clone, Debug)]
pub struct Dual<F: Family> {
    pub mp: F::Of<Float>,
    pub lo: F::Of<f64>,
}

impl<F: Family> Dual<F> {
    /// Borrow the copy matching the scalar type `T`.
    pub fn get<T: Real>(&self) -> &F::Of<T> {
        T::pick(self)
    }
}

/// Real scalar used by every evaluator.
///
/// Constants are always created "like" an existing value so that the
/// precision of multiprecision numbers propagates without a global context.
pub trait Real:
    Clone
    + Debug
    + Send
    + Sync
    + 'static
    + PartialOrd
    + PartialOrd<f64>
    + PartialEq<f64>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
    + AddAssign<f64>
    + SubAssign<f64>
    + MulAssign<f64>
    + DivAssign<f64>
{
    /// Significand width in bits.
    fn prec(&self) -> u32;
    /// A constant with the precision of `self`.
    fn lit(&self, x: f64) -> Self;
    /// Convert a multiprecision value to the type (and precision) of `self`.
    fn conv(&self, x: &Float) -> Self;
    /// Parse a decimal string at the precision of `self`.
    fn parse_like(&self, s: &str) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// Exact widening to a multiprecision value of precision `prec`.
    fn to_mp(&self, prec: u32) -> Float;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin_cos(&self) -> (Self, Self);
    fn atan2(&self, x: &Self) -> Self;
    fn hypot(&self, other: &Self) -> Self;
    fn abs(&self) -> Self;
    fn pi(&self) -> Self;
    fn gamma(&self) -> Self;
    fn is_finite(&self) -> bool;
    /// Multiply by 2^k exactly.
    fn mul_pow2(&self, k: i32) -> Self;
    /// Select this type's copy of a [`Dual`].
    fn pick<F: Family>(d: &Dual<F>) -> &F::Of<Self>;

    fn zero(&self) -> Self {
        self.lit(0.0)
    }
    fn one(&self) -> Self {
        self.lit(1.0)
    }
    /// Unit roundoff 2^(1-prec).
    fn eps(&self) -> Self {
        self.one().mul_pow2(1 - self.prec() as i32)
    }
    fn powr(&self, e: &Self) -> Self {
        (self.ln() * e).exp()
    }
    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    fn prec(&self) -> u32 {
        53
    }
    fn lit(&self, x: f64) -> Self {
        x
    }
    fn conv(&self, x: &Float) -> Self {
        x.to_f64()
    }
    fn parse_like(&self, s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_mp(&self, prec: u32) -> Float {
        Float::with_val(prec, *self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin_cos(&self) -> (Self, Self) {
        f64::sin_cos(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn hypot(&self, other: &Self) -> Self {
        f64::hypot(*self, *other)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn pi(&self) -> Self {
        std::f64::consts::PI
    }
    fn gamma(&self) -> Self {
        Float::with_val(64, *self).gamma().to_f64()
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn mul_pow2(&self, k: i32) -> Self {
        self * 2f64.powi(k)
    }
    fn pick<F: Family>(d: &Dual<F>) -> &F::Of<Self> {
        &d.lo
    }
    fn powr(&self, e: &Self) -> Self {
        self.powf(*e)
    }
}

impl Real for Float {
    fn prec(&self) -> u32 {
        Float::prec(self)
    }
    fn lit(&self, x: f64) -> Self {
        Float::with_val(Float::prec(self), x)
    }
    fn conv(&self, x: &Float) -> Self {
        Float::with_val(Float::prec(self), x)
    }
    fn parse_like(&self, s: &str) -> Option<Self> {
        Float::parse(s.trim())
            .ok()
            .map(|p| Float::with_val(Float::prec(self), p))
    }
    fn to_f64(&self) -> f64 {
        Float::to_f64(self)
    }
    fn to_mp(&self, prec: u32) -> Float {
        Float::with_val(prec, self)
    }
    fn sqrt(&self) -> Self {
        self.clone().sqrt()
    }
    fn exp(&self) -> Self {
        self.clone().exp()
    }
    fn ln(&self) -> Self {
        self.clone().ln()
    }
    fn sin_cos(&self) -> (Self, Self) {
        self.clone().sin_cos(Float::new(Float::prec(self)))
    }
    fn atan2(&self, x: &Self) -> Self {
        self.clone().atan2(x)
    }
    fn hypot(&self, other: &Self) -> Self {
        self.clone().hypot(other)
    }
    fn abs(&self) -> Self {
        self.clone().abs()
    }
    fn pi(&self) -> Self {
        Float::with_val(Float::prec(self), Constant::Pi)
    }
    fn gamma(&self) -> Self {
        self.clone().gamma()
    }
    fn is_finite(&self) -> bool {
        Float::is_finite(self)
    }
    fn mul_pow2(&self, k: i32) -> Self {
        self.clone() << k
    }
    fn pick<F: Family>(d: &Dual<F>) -> &F::Of<Self> {
        &d.mp
    }
}

/// A multiprecision zero of the given precision.
pub fn mpf(prec: u32, x: f64) -> Float {
    Float::with_val(prec, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_matches_precision() {
        assert_eq!(1.0f64.eps(), f64::EPSILON);
        let x = mpf(256, 1.0);
        assert_eq!(x.eps(), Float::with_val(256, 1) >> 255);
    }

    #[test]
    fn parse_keeps_precision() {
        let like = mpf(200, 0.0);
        let v = like.parse_like("0.1").unwrap();
        assert_eq!(Real::prec(&v), 200);
        let d: Float = v * 10.0 - 1.0;
        assert!(d.abs() < mpf(200, 1e-59));
    }
}
