//! Analytic boundary arcs parameterized over [0, 1].

use rug::Float;

use crate::num::{Cmp, Cx, Real, C64};

/// Shape of a boundary arc.
#[derive(Clone, Debug)]
pub enum ArcShape {
    /// Straight segment from `a` to `b`.
    Segment { a: Cmp, b: Cmp },
    /// Circular arc `center + radius·e^{iθ}` for θ from `theta0` to `theta1`.
    Circle { center: Cmp, radius: Float, theta0: Float, theta1: Float },
    /// The full ellipse (ρe^{iθ} + e^{-iθ}/ρ)/2, θ ∈ [0, 2π].
    Joukowski { rho: Float },
}

/// One analytic piece of the boundary curve.
#[derive(Clone, Debug)]
pub struct AnalyticArc {
    pub shape: ArcShape,
}

impl AnalyticArc {
    pub fn segment(a: Cmp, b: Cmp) -> Self {
        AnalyticArc { shape: ArcShape::Segment { a, b } }
    }

    pub fn circle(center: Cmp, radius: Float, theta0: Float, theta1: Float) -> Self {
        AnalyticArc { shape: ArcShape::Circle { center, radius, theta0, theta1 } }
    }

    pub fn joukowski(rho: Float) -> Self {
        AnalyticArc { shape: ArcShape::Joukowski { rho } }
    }

    /// Point and derivative with respect to the parameter t ∈ [0, 1].
    pub fn eval<T: Real>(&self, t: &T) -> (Cx<T>, Cx<T>) {
        match &self.shape {
            ArcShape::Segment { a, b } => {
                let a = Cx::conv_from(t, a);
                let b = Cx::conv_from(t, b);
                let d = &b - &a;
                (&a + &d.scale(t), d)
            }
            ArcShape::Circle { center, radius, theta0, theta1 } => {
                let c = Cx::conv_from(t, center);
                let r = t.conv(radius);
                let t0 = t.conv(theta0);
                let span = t.conv(theta1) - &t0;
                let e = Cx::cis(&(t0 + span.clone() * t)).scale(&r);
                let d = e.mul_i().scale(&span);
                (&c + &e, d)
            }
            ArcShape::Joukowski { rho } => {
                let rho = t.conv(rho);
                let two_pi = t.pi() * 2.0;
                let u = Cx::cis(&(two_pi.clone() * t)).scale(&rho);
                let ui = u.recip();
                let z = (&u + &ui).scale_f(0.5);
                let d = (&u - &ui).mul_i().scale(&(two_pi * 0.5));
                (z, d)
            }
        }
    }

    /// Endpoints (equal for closed arcs).
    pub fn endpoints(&self) -> (C64, C64) {
        (self.eval(&0.0).0, self.eval(&1.0).0)
    }

    /// Approximate Euclidean distance from `z` by dense sampling followed by
    /// golden-section refinement around the best sample.
    pub fn distance_f64(&self, z: &C64, samples: usize) -> f64 {
        if let ArcShape::Segment { a, b } = &self.shape {
            return segment_distance(z, &a.to_c64(), &b.to_c64());
        }
        let f = |t: f64| (&self.eval(&t).0 - z).abs();
        let mut best = (0.0, f(0.0));
        for i in 1..=samples {
            let t = i as f64 / samples as f64;
            let v = f(t);
            if v < best.1 {
                best = (t, v);
            }
        }
        let h = 1.0 / samples as f64;
        let (mut lo, mut hi) = ((best.0 - h).max(0.0), (best.0 + h).min(1.0));
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..60 {
            let m1 = hi - g * (hi - lo);
            let m2 = lo + g * (hi - lo);
            if f(m1) < f(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        best.1.min(f(0.5 * (lo + hi)))
    }
}

/// Exact distance from `z` to the segment [a, b].
pub fn segment_distance(z: &C64, a: &C64, b: &C64) -> f64 {
    let d = b - a;
    let l2 = d.norm_sqr();
    if l2 == 0.0 {
        return (z - a).abs();
    }
    let w = z - a;
    let t = ((w.re * d.re + w.im * d.im) / l2).clamp(0.0, 1.0);
    (z - &(a + &d.scale(&t))).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_arc_endpoints_and_derivative() {
        let p = 128;
        let one = Float::with_val(p, 1);
        let q: Float = Real::pi(&one) / 4.0;
        let arc = AnalyticArc::circle(Cx::lit(&one, -1.0, 0.0), one.clone() * 2.0f64.sqrt(), -q.clone(), q);
        let (a, b) = arc.endpoints();
        assert!((&a - &C64::c64(0.0, -1.0)).abs() < 1e-15);
        assert!((&b - &C64::c64(0.0, 1.0)).abs() < 1e-15);
        let h = 1e-6;
        let (_, d) = arc.eval(&0.3);
        let fd = (&arc.eval(&(0.3 + h)).0 - &arc.eval(&(0.3 - h)).0).scale(&(0.5 / h));
        assert!((&fd - &d).abs() < 1e-8);
    }

    #[test]
    fn segment_distance_cases() {
        let a = C64::c64(0.0, 0.0);
        let b = C64::c64(1.0, 0.0);
        assert_eq!(segment_distance(&C64::c64(0.5, 2.0), &a, &b), 2.0);
        assert_eq!(segment_distance(&C64::c64(-3.0, 4.0), &a, &b), 5.0);
    }
}
