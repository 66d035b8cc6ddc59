//! Complex numbers over any [`Real`].

use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::Float;

use super::Real;

/// A complex number `re + i·im`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx<T> {
    pub re: T,
    pub im: T,
}

/// Machine-precision complex number.
pub type C64 = Cx<f64>;
/// Multiprecision complex number.
pub type Cmp = Cx<Float>;

impl<T: Real> Cx<T> {
    pub fn new(re: T, im: T) -> Self {
        Cx { re, im }
    }

    /// The real number `x` viewed as a complex number.
    pub fn real(x: T) -> Self {
        let im = x.zero();
        Cx { re: x, im }
    }

    /// `re + i·im` at the precision of `like`.
    pub fn lit(like: &T, re: f64, im: f64) -> Self {
        Cx::new(like.lit(re), like.lit(im))
    }

    /// Convert any complex number into the type and precision of `like`.
    pub fn conv_from<S: Real>(like: &T, z: &Cx<S>) -> Self {
        let p = like.prec().max(z.re.prec());
        Cx::new(like.conv(&z.re.to_mp(p)), like.conv(&z.im.to_mp(p)))
    }

    pub fn zero_like(&self) -> Self {
        Cx::new(self.re.zero(), self.re.zero())
    }

    pub fn one_like(&self) -> Self {
        Cx::new(self.re.one(), self.re.zero())
    }

    /// A complex constant at the precision of `self`.
    pub fn c(&self, re: f64, im: f64) -> Self {
        Cx::lit(&self.re, re, im)
    }

    pub fn conj(&self) -> Self {
        Cx::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> T {
        self.re.clone() * &self.re + self.im.clone() * &self.im
    }

    pub fn abs(&self) -> T {
        self.re.hypot(&self.im)
    }

    pub fn arg(&self) -> T {
        self.im.atan2(&self.re)
    }

    pub fn scale(&self, s: &T) -> Self {
        Cx::new(self.re.clone() * s, self.im.clone() * s)
    }

    pub fn scale_f(&self, s: f64) -> Self {
        Cx::new(self.re.clone() * s, self.im.clone() * s)
    }

    /// Multiply by the imaginary unit.
    pub fn mul_i(&self) -> Self {
        Cx::new(-self.im.clone(), self.re.clone())
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Cx::new(self.re.clone() / &d, -(self.im.clone() / &d))
    }

    /// `exp(i·θ)`.
    pub fn cis(theta: &T) -> Self {
        let (s, c) = theta.sin_cos();
        Cx::new(c, s)
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Cx::new(c * &m, s * &m)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        Cx::new(self.abs().ln(), self.arg())
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let r = self.abs();
        if r == 0.0 {
            return self.zero_like();
        }
        if self.re >= 0.0 {
            let t = ((r + &self.re) * 0.5).sqrt();
            let im = self.im.clone() / (t.clone() * 2.0);
            Cx::new(t, im)
        } else {
            let t = ((r - &self.re) * 0.5).sqrt();
            let re = self.im.abs() / (t.clone() * 2.0);
            let im = if self.im < 0.0 { -t } else { t };
            Cx::new(re, im)
        }
    }

    /// Principal power `self^e` for real `e`.
    pub fn powr(&self, e: &T) -> Self {
        if self.re == 0.0 && self.im == 0.0 {
            return self.zero_like();
        }
        let r = self.abs().ln() * e;
        let th = self.arg() * e;
        Cx::cis(&th).scale(&r.exp())
    }

    /// Integer power by binary exponentiation (negative powers via the
    /// reciprocal).
    pub fn powi(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.one_like();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_c64(&self) -> C64 {
        Cx::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn to_mp(&self, prec: u32) -> Cmp {
        Cx::new(self.re.to_mp(prec), self.im.to_mp(prec))
    }

    /// `self·a + b` without intermediate temporaries beyond the product.
    pub fn mul_add(&self, a: &Self, b: &Self) -> Self {
        let mut p = self * a;
        p += b;
        p
    }
}

impl C64 {
    pub const fn c64(re: f64, im: f64) -> Self {
        Cx { re, im }
    }
}

impl<T: Real> Add for Cx<T> {
    type Output = Cx<T>;
    fn add(self, o: Cx<T>) -> Cx<T> {
        Cx::new(self.re + o.re, self.im + o.im)
    }
}
impl<'a, T: Real> Add<&'a Cx<T>> for Cx<T> {
    type Output = Cx<T>;
    fn add(self, o: &Cx<T>) -> Cx<T> {
        Cx::new(self.re + &o.re, self.im + &o.im)
    }
}
impl<'a, 'b, T: Real> Add<&'b Cx<T>> for &'a Cx<T> {
    type Output = Cx<T>;
    fn add(self, o: &Cx<T>) -> Cx<T> {
        Cx::new(self.re.clone() + &o.re, self.im.clone() + &o.im)
    }
}
impl<T: Real> Sub for Cx<T> {
    type Output = Cx<T>;
    fn sub(self, o: Cx<T>) -> Cx<T> {
        Cx::new(self.re - o.re, self.im - o.im)
    }
}
impl<'a, T: Real> Sub<&'a Cx<T>> for Cx<T> {
    type Output = Cx<T>;
    fn sub(self, o: &Cx<T>) -> Cx<T> {
        Cx::new(self.re - &o.re, self.im - &o.im)
    }
}
impl<'a, 'b, T: Real> Sub<&'b Cx<T>> for &'a Cx<T> {
    type Output = Cx<T>;
    fn sub(self, o: &Cx<T>) -> Cx<T> {
        Cx::new(self.re.clone() - &o.re, self.im.clone() - &o.im)
    }
}
impl<'a, 'b, T: Real> Mul<&'b Cx<T>> for &'a Cx<T> {
    type Output = Cx<T>;
    fn mul(self, o: &Cx<T>) -> Cx<T> {
        let re = self.re.clone() * &o.re - self.im.clone() * &o.im;
        let im = self.re.clone() * &o.im + self.im.clone() * &o.re;
        Cx::new(re, im)
    }
}
impl<'a, T: Real> Mul<&'a Cx<T>> for Cx<T> {
    type Output = Cx<T>;
    fn mul(self, o: &Cx<T>) -> Cx<T> {
        &self * o
    }
}
impl<T: Real> Mul for Cx<T> {
    type Output = Cx<T>;
    fn mul(self, o: Cx<T>) -> Cx<T> {
        &self * &o
    }
}
impl<'a, 'b, T: Real> Div<&'b Cx<T>> for &'a Cx<T> {
    type Output = Cx<T>;
    fn div(self, o: &Cx<T>) -> Cx<T> {
        // Smith's algorithm keeps f64 divisions free of spurious overflow.
        if o.re.abs() >= o.im.abs() {
            let r = o.im.clone() / &o.re;
            let d = o.re.clone() + r.clone() * &o.im;
            Cx::new(
                (self.re.clone() + self.im.clone() * &r) / &d,
                (self.im.clone() - self.re.clone() * &r) / &d,
            )
        } else {
            let r = o.re.clone() / &o.im;
            let d = o.im.clone() + r.clone() * &o.re;
            Cx::new(
                (self.re.clone() * &r + &self.im) / &d,
                (self.im.clone() * &r - &self.re) / &d,
            )
        }
    }
}
impl<'a, T: Real> Div<&'a Cx<T>> for Cx<T> {
    type Output = Cx<T>;
    fn div(self, o: &Cx<T>) -> Cx<T> {
        &self / o
    }
}
impl<T: Real> Div for Cx<T> {
    type Output = Cx<T>;
    fn div(self, o: Cx<T>) -> Cx<T> {
        &self / &o
    }
}
impl<T: Real> Neg for Cx<T> {
    type Output = Cx<T>;
    fn neg(self) -> Cx<T> {
        Cx::new(-self.re, -self.im)
    }
}
impl<'a, T: Real> AddAssign<&'a Cx<T>> for Cx<T> {
    fn add_assign(&mut self, o: &Cx<T>) {
        self.re += &o.re;
        self.im += &o.im;
    }
}
impl<T: Real> AddAssign for Cx<T> {
    fn add_assign(&mut self, o: Cx<T>) {
        self.re += o.re;
        self.im += o.im;
    }
}
impl<'a, T: Real> SubAssign<&'a Cx<T>> for Cx<T> {
    fn sub_assign(&mut self, o: &Cx<T>) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}
impl<T: Real> SubAssign for Cx<T> {
    fn sub_assign(&mut self, o: Cx<T>) {
        self.re -= o.re;
        self.im -= o.im;
    }
}
impl<'a, T: Real> MulAssign<&'a Cx<T>> for Cx<T> {
    fn mul_assign(&mut self, o: &Cx<T>) {
        *self = &*self * o;
    }
}

impl serde::Serialize for Cx<f64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.re, self.im].serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Cx<f64> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Cx { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: &C64, b: &C64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    proptest! {
        #[test]
        fn sqrt_squares_back(re in -50.0f64..50.0, im in -50.0f64..50.0) {
            let z = C64::c64(re, im);
            let s = z.sqrt();
            prop_assert!(close(&(&s * &s), &z, 1e-13));
            prop_assert!(s.re >= 0.0);
        }

        #[test]
        fn exp_inverts_ln(re in -20.0f64..20.0, im in -20.0f64..20.0) {
            prop_assume!(re.abs() + im.abs() > 1e-3);
            let z = C64::c64(re, im);
            prop_assert!(close(&z.ln().exp(), &z, 1e-13));
        }

        #[test]
        fn division_inverts_product(a in -9.0f64..9.0, b in -9.0f64..9.0, c in 0.1f64..9.0, d in -9.0f64..9.0) {
            let x = C64::c64(a, b);
            let y = C64::c64(c, d);
            prop_assert!(close(&(&(&x * &y) / &y), &x, 1e-13));
        }

        #[test]
        fn powi_matches_repeated_product(a in -1.5f64..1.5, b in -1.5f64..1.5, n in 0i64..20) {
            let z = C64::c64(a, b);
            let mut acc = C64::c64(1.0, 0.0);
            for _ in 0..n { acc = &acc * &z; }
            prop_assert!(close(&z.powi(n), &acc, 1e-12));
        }
    }

    #[test]
    fn multiprecision_sqrt_is_accurate() {
        let z = Cx::new(Float::with_val(256, -3), Float::with_val(256, 4));
        let s = z.sqrt();
        let expect = Cx::new(Float::with_val(256, 1), Float::with_val(256, 2));
        assert!((s - &expect).abs() < Float::with_val(256, 1e-70));
    }
}
