//! Scalar and complex arithmetic, quadrature rules, power-series helpers and
//! the reproducible pseudo-random generator.

mod aberth;
mod complex;
mod real;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

pub use aberth::{aberth, circle_start, AberthRun};
pub use complex::{Cmp, Cx, C64};
pub use real::{mpf, Dual, Family, Real};

/// `Vec<T>` per scalar type.
#[derive(Clone, Debug)]
pub struct VecOf;
impl Family for VecOf {
    type Of<T: Real> = Vec<T>;
}

/// `Vec<Cx<T>>` per scalar type.
#[derive(Clone, Debug)]
pub struct CxVecOf;
impl Family for CxVecOf {
    type Of<T: Real> = Vec<Cx<T>>;
}

/// A single scalar per scalar type.
#[derive(Clone, Debug)]
pub struct ScalarOf;
impl Family for ScalarOf {
    type Of<T: Real> = T;
}

/// A single complex number per scalar type.
#[derive(Clone, Debug)]
pub struct CxOf;
impl Family for CxOf {
    type Of<T: Real> = Cx<T>;
}

impl Dual<ScalarOf> {
    pub fn from_mp(x: Float) -> Self {
        let lo = x.to_f64();
        Dual { mp: x, lo }
    }
}

impl Dual<CxOf> {
    pub fn from_mp(z: Cmp) -> Self {
        let lo = z.to_c64();
        Dual { mp: z, lo }
    }
}

impl Dual<VecOf> {
    pub fn from_mp(v: Vec<Float>) -> Self {
        let lo = v.iter().map(|x| x.to_f64()).collect();
        Dual { mp: v, lo }
    }
}

impl Dual<CxVecOf> {
    pub fn from_mp(v: Vec<Cmp>) -> Self {
        let lo = v.iter().map(|x| x.to_c64()).collect();
        Dual { mp: v, lo }
    }
}

/// Gauss–Legendre rule on [-1, 1] held at both precisions.
#[derive(Debug)]
pub struct GaussRule {
    pub nodes: Dual<VecOf>,
    pub weights: Dual<VecOf>,
}

/// The `n`-point Gauss–Legendre rule at `prec` bits (cached per process).
pub fn gauss_legendre(n: usize, prec: u32) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&(n, prec)) {
        return r.clone();
    }
    let rule = Arc::new(build_gauss_legendre(n, prec));
    cache.lock().unwrap().insert((n, prec), rule.clone());
    rule
}

fn build_gauss_legendre(n: usize, prec: u32) -> GaussRule {
    assert!(n >= 1);
    let work = prec + 32;
    let mut xs = vec![Float::new(prec); n];
    let mut ws = vec![Float::new(prec); n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(work, guess);
        let mut dp = Float::new(work);
        for _ in 0..200 {
            let (p, d) = legendre(n, &x);
            let dx = Float::with_val(work, &p / &d);
            x -= &dx;
            dp = d;
            if dx.is_zero() || dx.clone().abs().get_exp().unwrap_or(i32::MIN) < -(work as i32) + 4 {
                let (_, d) = legendre(n, &x);
                dp = d;
                break;
            }
        }
        let one = Float::with_val(work, 1);
        let w = Float::with_val(work, 2) / ((one - Float::with_val(work, &x * &x)) * Float::with_val(work, &dp * &dp));
        xs[i] = Float::with_val(prec, &x);
        xs[n - 1 - i] = Float::with_val(prec, -x);
        ws[i] = Float::with_val(prec, &w);
        ws[n - 1 - i] = Float::with_val(prec, &w);
    }
    if n % 2 == 1 {
        xs[n / 2] = Float::new(prec);
    }
    // Order nodes ascending so sums run left to right.
    xs.reverse();
    ws.reverse();
    GaussRule {
        nodes: Dual::<VecOf>::from_mp(xs),
        weights: Dual::<VecOf>::from_mp(ws),
    }
}

/// Legendre polynomial P_n and its derivative at `x`.
fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for k in 2..=n {
        let kf = k as u32;
        let p2 = (Float::with_val(prec, x * &p1) * (2 * kf - 1) - Float::with_val(prec, &p0 * (kf - 1))) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (Float::with_val(prec, 1), Float::new(prec));
    }
    let x2m1 = Float::with_val(prec, x * x) - 1u32;
    let d = (Float::with_val(prec, x * &p1) - &p0) * (n as u32) / x2m1;
    (p1, d)
}

/// Truncated power-series product.
pub fn series_mul<T: Real>(a: &[Cx<T>], b: &[Cx<T>], len: usize) -> Vec<Cx<T>> {
    let zero = a[0].zero_like();
    (0..len)
        .map(|k| {
            let mut s = zero.clone();
            for j in 0..=k {
                if j < a.len() && k - j < b.len() {
                    s += &a[j] * &b[k - j];
                }
            }
            s
        })
        .collect()
}

/// Truncated power-series power `a^alpha` (principal branch at the constant
/// term, which must be nonzero), by the J. C. P. Miller recurrence.
pub fn series_pow<T: Real>(a: &[Cx<T>], alpha: &T, len: usize) -> Vec<Cx<T>> {
    let a0 = &a[0];
    let mut b = Vec::with_capacity(len);
    b.push(a0.powr(alpha));
    let inv_a0 = a0.recip();
    let ap1: T = alpha.clone() + 1.0;
    for k in 1..len {
        let mut s = a0.zero_like();
        for j in 1..=k.min(a.len() - 1) {
            let coef = ap1.clone() * (j as f64) - (k as f64);
            s += (&a[j] * &b[k - j]).scale(&coef);
        }
        b.push((&s * &inv_a0).scale(&(alpha.one() / k as f64)));
    }
    b
}

/// Evaluate a polynomial with complex coefficients (ascending order).
pub fn horner<T: Real>(coeffs: &[Cx<T>], z: &Cx<T>) -> Cx<T> {
    let mut acc = z.zero_like();
    for c in coeffs.iter().rev() {
        acc = acc.mul_add(z, c);
    }
    acc
}

/// Evaluate a polynomial with real coefficients (ascending order) at a
/// complex point.
pub fn horner_real<T: Real>(coeffs: &[T], z: &Cx<T>) -> Cx<T> {
    let mut acc = z.zero_like();
    for c in coeffs.iter().rev() {
        acc = &acc * z;
        acc.re += c;
    }
    acc
}

/// 64-bit linear congruential generator used for every pseudo-random sample.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        self.state
    }

    /// Uniform in [0, 1) from the top 53 bits of the next state.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Integrate `f` over the segment [a, b] with `panels` equal Gauss–Legendre
/// panels of the given rule.
pub fn integrate_segment<T: Real, F: FnMut(&Cx<T>) -> Cx<T>>(
    rule: &GaussRule,
    a: &Cx<T>,
    b: &Cx<T>,
    panels: usize,
    mut f: F,
) -> Cx<T> {
    let xs = rule.nodes.get::<T>();
    let ws = rule.weights.get::<T>();
    let like = &a.re;
    let mut total = a.zero_like();
    let step = (b - a).scale(&(like.one() / panels as f64));
    let half = step.scale_f(0.5);
    for p in 0..panels {
        let left = a + &step.scale(&like.lit(p as f64));
        let mid = &left + &half;
        let mut s = a.zero_like();
        for (x, w) in xs.iter().zip(ws) {
            let z = &mid + &half.scale(x);
            s += f(&z).scale(w);
        }
        total += &s * &half;
    }
    total
}

/// The `s` points e^(2πi j/s), j = 0..s, at the precision of `like`.
pub fn roots_of_unity<T: Real>(like: &T, s: usize) -> Vec<Cx<T>> {
    let two_pi = like.pi() * 2.0;
    (0..s)
        .map(|j| Cx::cis(&(two_pi.clone() * (j as f64) / (s as f64))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_rule_integrates_polynomials_exactly() {
        use rug::ops::Pow;
        let rule = gauss_legendre(12, 256);
        let xs = rule.nodes.get::<Float>();
        let ws = rule.weights.get::<Float>();
        // ∫_{-1}^{1} x^22 dx = 2/23
        let mut s = Float::with_val(256, 0);
        for (x, w) in xs.iter().zip(ws) {
            s += Float::with_val(256, x.clone().pow(22u32) * w);
        }
        let exact = Float::with_val(256, 2) / 23u32;
        assert!((s - exact).abs() < 1e-70);
        assert!(xs.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn lcg_first_values_are_pinned() {
        let mut g = Lcg::new(0);
        assert_eq!(g.next_u64(), Lcg::INCREMENT);
        assert_eq!(
            g.next_u64(),
            Lcg::INCREMENT.wrapping_mul(Lcg::MULTIPLIER).wrapping_add(Lcg::INCREMENT)
        );
        let u = Lcg::new(7).next_f64();
        assert!((0.0..1.0).contains(&u));
    }

    #[test]
    fn series_pow_recovers_binomial() {
        // (1 + x)^(1/2) = 1 + x/2 - x^2/8 + x^3/16 - ...
        let one = C64::c64(1.0, 0.0);
        let a = vec![one.clone(), one];
        let b = series_pow(&a, &0.5, 4);
        let expect = [1.0, 0.5, -0.125, 0.0625];
        for (x, e) in b.iter().zip(expect) {
            assert!((x.re - e).abs() < 1e-15 && x.im.abs() < 1e-15);
        }
    }

    #[test]
    fn segment_quadrature_integrates_analytic_function() {
        let rule = gauss_legendre(20, 53);
        let a = C64::c64(0.0, 0.0);
        let b = C64::c64(1.0, 1.0);
        let v = integrate_segment(&rule, &a, &b, 2, |z| z.exp());
        let exact = &b.exp() - &C64::c64(1.0, 0.0);
        assert!((&v - &exact).abs() < 1e-14);
    }
}

