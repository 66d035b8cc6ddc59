//! The contour functional
//! Q_n(z) = (n+1)·varphi'(z)/(2πi) ∮_{|w|=1} w^n/(h(w) − varphi(z)) dw.

use rug::Float;

use crate::error::{Error, Result};
use crate::geometry::{DomainModel, MVal};
use crate::moments::acc_mul;
use crate::num::{roots_of_unity, Cmp, Cx};

/// Largest number of trapezoid samples on the unit circle.
const MAX_SAMPLES: usize = 1 << 14;

/// Evaluates Q_n at interior points. h is independent of z, so its values
/// on the unit circle are cached and reused across points and degrees; the
/// cache is refined dyadically (nested grids) when a point needs more
/// samples.
pub struct QnEvaluator<'a> {
    d: &'a DomainModel,
    units: Vec<Cmp>,
    hvals: Vec<Cmp>,
}

impl<'a> QnEvaluator<'a> {
    pub fn new(d: &'a DomainModel) -> Result<Self> {
        if !d.has_interior_map() || !d.has_continuation() {
            return Err(Error::Unavailable("the continued interior map"));
        }
        Ok(QnEvaluator { d, units: vec![], hvals: vec![] })
    }

    /// Number of cached samples.
    pub fn samples(&self) -> usize {
        self.units.len()
    }

    fn ensure(&mut self, m: usize) -> Result<()> {
        let prec = self.d.precision();
        if self.units.is_empty() {
            self.units = roots_of_unity(&Float::new(prec), m);
            self.hvals = self.units.iter().map(|u| self.h_on_circle(u)).collect::<Result<_>>()?;
            return Ok(());
        }
        while self.units.len() < m {
            let next = roots_of_unity(&Float::new(prec), 2 * self.units.len());
            let mut h = Vec::with_capacity(next.len());
            for (i, u) in next.iter().enumerate() {
                if i % 2 == 0 {
                    h.push(self.hvals[i / 2].clone());
                } else {
                    h.push(self.h_on_circle(u)?);
                }
            }
            self.units = next;
            self.hvals = h;
        }
        Ok(())
    }

    fn h_on_circle(&self, u: &Cmp) -> Result<Cmp> {
        match self.d.h(u)? {
            MVal::Finite { value, .. } => Ok(value),
            MVal::Pole => Err(Error::Quadrature("h has a pole on the unit circle".into())),
        }
    }

    /// Q_n(z) for every n in `ns`, sharing the samples 1/(h(w_i) − varphi(z)).
    /// The trapezoid rule converges geometrically (the integrand is analytic
    /// near |w| = 1); the sample count is doubled until two successive
    /// estimates agree to 2^(24−P) relative.
    pub fn q_many(&mut self, z: &Cmp, ns: &[usize]) -> Result<Vec<Cmp>> {
        let z64 = z.to_c64();
        if !self.d.contains(&z64) {
            return Err(Error::Domain(format!("Q_n needs an interior point, got {z64:?}")));
        }
        let distance = self.d.distance_to_boundary(&z64);
        let (v, vp) = match self.d.varphi(z)? {
            MVal::Finite { value, deriv } => (value, deriv),
            MVal::Pole => return Err(Error::Domain("varphi has a pole at the point".into())),
        };
        let prec = self.d.precision();
        let tol = Float::with_val(prec, 1) << (24 - prec as i32);
        let mut m = 256;
        let mut prev = self.trapezoid(&v, ns, m)?;
        loop {
            m *= 2;
            if m > MAX_SAMPLES {
                return Err(Error::NearBoundary { distance });
            }
            let cur = self.trapezoid(&v, ns, m)?;
            let done = cur.iter().zip(&prev).all(|(a, b)| {
                let scale = a.abs().max(&Float::with_val(prec, 1));
                (a - b).abs() <= Float::with_val(prec, &tol * &scale)
            });
            if done {
                return Ok(cur
                    .into_iter()
                    .zip(ns)
                    .map(|(s, &n)| (&s * &vp).scale_f((n + 1) as f64))
                    .collect());
            }
            prev = cur;
        }
    }

    /// Q_n(z) for one degree.
    pub fn q(&mut self, n: usize, z: &Cmp) -> Result<Cmp> {
        Ok(self.q_many(z, &[n])?.remove(0))
    }

    /// (1/m) Σ_i w_i^(n+1)/(h(w_i) − v) on the m-point grid.
    fn trapezoid(&mut self, v: &Cmp, ns: &[usize], m: usize) -> Result<Vec<Cmp>> {
        self.ensure(m)?;
        let stride = self.units.len() / m;
        let prec = self.d.precision();
        let like = Float::new(prec);
        let mut tmp = Float::new(prec);
        let mut sums = vec![Cx::lit(&like, 0.0, 0.0); ns.len()];
        for i in 0..m {
            let den = &self.hvals[i * stride] - v;
            if den.abs() == 0.0 {
                return Err(Error::Quadrature("h(w) = varphi(z) on the unit circle".into()));
            }
            let inv = den.recip();
            for (s, &n) in sums.iter_mut().zip(ns) {
                let u = &self.units[((i * (n + 1)) % m) * stride];
                acc_mul(s, u, &inv, &mut tmp);
            }
        }
        Ok(sums.into_iter().map(|s| s.scale(&Float::with_val(prec, m as u32).recip())).collect())
    }
}
