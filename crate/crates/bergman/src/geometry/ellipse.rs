//! The ellipse as the Joukowski image of |u| = ρ.

use rug::Float;

use super::AnalyticArc;
use crate::num::{Cx, Dual, Real, ScalarOf, C64};

#[derive(Debug)]
pub(crate) struct Ellipse {
    rho: Dual<ScalarOf>,
}

impl Ellipse {
    pub fn new(rho: Float) -> Self {
        Ellipse { rho: Dual::<ScalarOf>::from_mp(rho) }
    }

    pub fn rho(&self) -> &Float {
        &self.rho.mp
    }

    pub fn boundary_arc(&self) -> AnalyticArc {
        AnalyticArc::joukowski(self.rho.mp.clone())
    }

    /// ψ(w) = (ρw + 1/(ρw))/2.
    pub fn psi<T: Real>(&self, w: &Cx<T>) -> (Cx<T>, Cx<T>) {
        let rho: &T = self.rho.get::<T>();
        let u = w.scale(rho);
        let ui = u.recip();
        let value = (&u + &ui).scale_f(0.5);
        let deriv = (&w.c(1.0, 0.0) - &(&ui * &ui)).scale(rho).scale_f(0.5);
        (value, deriv)
    }

    /// φ(z) = (z + √(z−1)√(z+1))/ρ, the branch with |φ| > 1 off the focal
    /// segment.
    pub fn phi<T: Real>(&self, z: &Cx<T>) -> (Cx<T>, Cx<T>) {
        let rho: &T = self.rho.get::<T>();
        let one = z.one_like();
        let s = &(z - &one).sqrt() * &(z + &one).sqrt();
        let value = (z + &s).scale(&rho.clone().recip_like());
        let deriv = (&one + &(z / &s)).scale(&rho.clone().recip_like());
        (value, deriv)
    }

    /// Normalized level-set distance: exact on the boundary, first order
    /// away from it.
    pub fn signed_distance(&self, z: &C64) -> f64 {
        let r = self.rho.lo;
        let a = 0.5 * (r + 1.0 / r);
        let b = 0.5 * (r - 1.0 / r);
        let f = ((z.re / a).powi(2) + (z.im / b).powi(2)).sqrt();
        if f == 0.0 {
            return -b;
        }
        let gx = z.re / (a * a * f);
        let gy = z.im / (b * b * f);
        (f - 1.0) / gx.hypot(gy)
    }
}

trait RecipLike {
    fn recip_like(self) -> Self;
}

impl<T: Real> RecipLike for T {
    fn recip_like(self) -> Self {
        self.one() / self
    }
}
