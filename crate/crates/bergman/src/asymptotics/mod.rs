//! Strong asymptotics of p_n and the zeros of p_n.
//!
//! The deviation A_n(z) = p_n(z) / (√(n+1) Φ'(z) Φ(z)^n) − 1 is evaluated in
//! three regimes: outside the closed domain (Φ = φ), on the boundary away
//! from corners, and inside on the stratum D₁ (Φ = φ₁ from the continuation
//! module). Every quotient is assembled from complex logarithms, so no power
//! Φ(z)^n is ever formed.

mod zeros;

use std::fmt;

use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::continuation::{AnnulusConfig, Continuation, ContinuationResult};
use crate::error::{Error, Result};
use crate::faber::QnEvaluator;
use crate::geometry::{DomainModel, MVal};
use crate::moments::OrthonormalSystem;
use crate::num::{Cmp, Cx, C64};

pub use zeros::{poly_zeros, zero_diagnostics, HistogramBin, ZeroDiagnostics, ZeroRow, ZeroSet};

/// Points within this distance of the boundary are treated as boundary
/// points (Φ = φ on the closed exterior).
const BOUNDARY_BAND: f64 = 1e-14;

/// Which representation of Φ a point uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Outside the closed domain: Φ = φ.
    Exterior,
    /// Inside, on the stratum D₁: Φ = φ₁.
    Interior,
    /// On the boundary away from corners, where both sides meet.
    OmegaStar,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Exterior => "exterior",
            Regime::Interior => "interior",
            Regime::OmegaStar => "omega-star",
        })
    }
}

/// Φ and Φ' at one point, with the regime that produced them.
#[derive(Clone, Debug)]
pub struct PhiPoint {
    pub z: C64,
    pub regime: Regime,
    pub phi: Cmp,
    pub dphi: Cmp,
}

/// One value of A_n.
#[derive(Clone, Debug, Serialize)]
pub struct DeviationRecord {
    pub n: usize,
    pub z: C64,
    pub a_n: C64,
    pub regime: Regime,
    /// |Φ(z)|.
    pub aux: f64,
}

/// Evaluates Φ and the deviations at points of Ω*, sharing one continuation
/// solver (and its cached circles) across points.
pub struct Asymptotics<'a> {
    d: &'a DomainModel,
    cont: Option<Continuation<'a>>,
}

impl<'a> Asymptotics<'a> {
    /// Interior points are supported when the domain has a continuation.
    pub fn new(d: &'a DomainModel, cfg: AnnulusConfig) -> Result<Self> {
        let cont = if d.has_interior_map() && d.has_continuation() { Some(Continuation::new(d, cfg)?) } else { None };
        Ok(Asymptotics { d, cont })
    }

    pub fn domain(&self) -> &'a DomainModel {
        self.d
    }

    /// The continuation solver, when the domain has one.
    pub fn continuation(&mut self) -> Option<&mut Continuation<'a>> {
        self.cont.as_mut()
    }

    /// Classify an interior point.
    pub fn classify(&mut self, z: &C64) -> Result<ContinuationResult> {
        match self.cont.as_mut() {
            Some(c) => c.classify(z),
            None => Err(Error::Unavailable("analytic continuation for this domain")),
        }
    }

    /// Φ(z), Φ'(z) and the regime of z.
    pub fn phi_point(&mut self, z: &C64) -> Result<PhiPoint> {
        let sd = self.d.signed_distance(z);
        if sd >= -BOUNDARY_BAND {
            if self.d.distance_to_corners(z) < 1e-12 {
                return Err(Error::NotInOmegaStar);
            }
            let regime = if sd > BOUNDARY_BAND { Regime::Exterior } else { Regime::OmegaStar };
            let (phi, dphi) = self.d.phi(&self.d.cmp(z.re, z.im))?;
            return Ok(PhiPoint { z: z.clone(), regime, phi, dphi });
        }
        let c = self.classify(z)?;
        match (c.phi1, c.phi1_prime) {
            (Some(phi), Some(dphi)) => Ok(PhiPoint { z: z.clone(), regime: Regime::Interior, phi, dphi }),
            _ => Err(Error::NotInOmegaStar),
        }
    }

    /// Φ at z + dz, continuing the branch of `at` (exterior map outside,
    /// Newton on h(w) = varphi(z + dz) from φ₁(z) inside).
    pub fn phi_near(&self, at: &PhiPoint, dz: &Cmp) -> Result<Cmp> {
        let z = &self.d.cmp(at.z.re, at.z.im) + dz;
        if at.regime != Regime::Interior {
            return Ok(self.d.phi(&z)?.0);
        }
        let v = match self.d.varphi(&z)? {
            MVal::Finite { value, .. } => value,
            MVal::Pole => return Err(Error::Domain("varphi has a pole next to the point".into())),
        };
        let prec = self.d.precision();
        let tol = Float::with_val(prec, 1) << (16 - prec as i32);
        let mut w = at.phi.clone();
        for _ in 0..60 {
            let (h, dh) = match self.d.h(&w)? {
                MVal::Finite { value, deriv } => (value, deriv),
                MVal::Pole => return Err(Error::ClassificationFailure("Newton hit a pole of h".into())),
            };
            let step = &(&h - &v) / &dh;
            w -= &step;
            if step.abs() < tol {
                return Ok(w);
            }
        }
        Err(Error::RootFailure { worst: f64::NAN })
    }

    /// Relative gap between the analytic Φ' and the central difference
    /// (Φ(z+η) − Φ(z−η))/(2η) with η = 2^(−P/3).
    pub fn derivative_check(&self, at: &PhiPoint) -> Result<f64> {
        let prec = self.d.precision();
        let eta = Float::with_val(prec, 1) << (-(prec as i32) / 3);
        let step = Cx::new(eta.clone(), Float::new(prec));
        let plus = self.phi_near(at, &step)?;
        let minus = self.phi_near(at, &(-step))?;
        let fd = (&plus - &minus).scale(&(Float::with_val(prec, 1) / (eta * 2u32)));
        Ok(((&fd - &at.dphi).abs() / at.dphi.abs()).to_f64())
    }

    /// A_n at a point whose Φ is known.
    pub fn deviation_at(&self, sys: &OrthonormalSystem, n: usize, at: &PhiPoint) -> Result<DeviationRecord> {
        let a_n = deviation_value(sys, n, &self.d.cmp(at.z.re, at.z.im), &at.phi, &at.dphi)?;
        Ok(DeviationRecord { n, z: at.z.clone(), a_n, regime: at.regime, aux: at.phi.abs().to_f64() })
    }

    /// A_n at z for every n in `ns`.
    pub fn deviations(&mut self, sys: &OrthonormalSystem, z: &C64, ns: &[usize]) -> Result<Vec<DeviationRecord>> {
        let at = self.phi_point(z)?;
        ns.iter().map(|&n| self.deviation_at(sys, n, &at)).collect()
    }

    /// |p_n(z)|^(1/n) over `ns`, its trailing running maximum, and r(z)
    /// when z is an interior point that can be classified.
    pub fn profile(
        &mut self,
        sys: &OrthonormalSystem,
        z: &C64,
        ns: &[usize],
        window: usize,
    ) -> Result<NthRootProfile> {
        let mut prof = nth_root_profile(sys, &self.d.cmp(z.re, z.im), ns, window)?;
        if self.d.contains(z) && self.cont.is_some() {
            prof.r = Some(self.classify(z)?.r.to_f64());
        }
        Ok(prof)
    }
}

/// A_n(z) from Φ(z) and Φ'(z), assembled in log space:
/// exp(log p_n(z) − ½log(n+1) − log Φ'(z) − n·log Φ(z)) − 1.
pub fn deviation_value(sys: &OrthonormalSystem, n: usize, z: &Cmp, phi: &Cmp, dphi: &Cmp) -> Result<C64> {
    let p = sys.eval_p(n, z)?;
    if p.re == 0.0 && p.im == 0.0 {
        return Ok(C64::c64(-1.0, 0.0));
    }
    let prec = sys.precision();
    let half_log = Float::with_val(prec, n + 1).ln() / 2u32;
    let mut log = &p.ln() - &dphi.ln();
    log -= &phi.ln().scale(&Float::with_val(prec, n));
    log.re -= &half_log;
    let a = &log.exp() - &log.one_like();
    let out = a.to_c64();
    if !out.is_finite() {
        return Err(Error::Scaling(format!("A_{n} is not representable")));
    }
    Ok(out)
}

/// A_n at one point with a fresh solver.
pub fn deviation(
    d: &DomainModel,
    sys: &OrthonormalSystem,
    n: usize,
    z: &C64,
    cfg: &AnnulusConfig,
) -> Result<DeviationRecord> {
    let mut a = Asymptotics::new(d, cfg.clone())?;
    let at = a.phi_point(z)?;
    a.deviation_at(sys, n, &at)
}

/// The sequence |p_n(z)|^(1/n) with its running maximum.
#[derive(Clone, Debug, Serialize)]
pub struct NthRootProfile {
    pub z: C64,
    /// (n, |p_n(z)|^(1/n)).
    pub samples: Vec<(usize, f64)>,
    /// Maximum over the trailing `window` samples ending at each n: the
    /// empirical stand-in for lim sup over a finite range.
    pub running_max: Vec<f64>,
    pub window: usize,
    /// r(z) from the continuation module, for classified interior points.
    pub r: Option<f64>,
}

impl NthRootProfile {
    /// The running maximum at the last sample.
    pub fn last_running_max(&self) -> f64 {
        self.running_max.last().copied().unwrap_or(f64::NAN)
    }
}

/// |p_n(z)|^(1/n) for n in `ns` (ascending, n ≥ 1), through log|p_n(z)|.
pub fn nth_root_profile(sys: &OrthonormalSystem, z: &Cmp, ns: &[usize], window: usize) -> Result<NthRootProfile> {
    if window == 0 || ns.iter().any(|&n| n == 0) {
        return Err(Error::InvalidParameter("the profile needs n ≥ 1 and a positive window".into()));
    }
    let mut samples = Vec::with_capacity(ns.len());
    for &n in ns {
        let p = sys.eval_p(n, z)?;
        let root = if p.re == 0.0 && p.im == 0.0 { 0.0 } else { (p.abs().ln() / n as u32).exp().to_f64() };
        samples.push((n, root));
    }
    let running_max = (0..samples.len())
        .map(|i| samples[i.saturating_sub(window - 1)..=i].iter().map(|s| s.1).fold(0.0, f64::max))
        .collect();
    Ok(NthRootProfile { z: z.to_c64(), samples, running_max, window, r: None })
}

/// How raw values are scaled before the sup statistic is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RateModel {
    /// value · n, for an O(1/n) rate.
    N,
    /// value · n / log n, for an O(log n / n) rate.
    NOverLogN,
}

/// Trailing window of the n-th root running maximum.
pub const PROFILE_WINDOW: usize = 8;

/// Width of the trailing window whose maximum forms the trend envelope.
pub const TREND_WINDOW: usize = 8;

/// Empirical rate constant: the scaled samples and their extremes.
#[derive(Clone, Debug, Serialize)]
pub struct RateFit {
    pub quantity: String,
    pub model: RateModel,
    /// (n, raw value).
    pub samples: Vec<(usize, f64)>,
    /// (n, scaled value).
    pub scaled: Vec<(usize, f64)>,
    /// Largest scaled value: the fitted constant.
    pub sup: f64,
    pub min: f64,
    pub last: f64,
    /// Trailing maximum of the scaled values over `TREND_WINDOW` samples;
    /// isolated cancellation dips of an oscillating A_n do not show in it.
    pub envelope: Vec<(usize, f64)>,
}

impl RateFit {
    pub fn new(quantity: &str, model: RateModel, samples: Vec<(usize, f64)>) -> Self {
        let scaled: Vec<(usize, f64)> = samples
            .iter()
            .map(|&(n, v)| {
                let nf = n as f64;
                (n, match model {
                    RateModel::N => v * nf,
                    RateModel::NOverLogN => v * nf / nf.ln(),
                })
            })
            .collect();
        let sup = scaled.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
        let min = scaled.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
        let last = scaled.last().map_or(f64::NAN, |s| s.1);
        let envelope = (0..scaled.len())
            .map(|i| {
                let lo = i.saturating_sub(TREND_WINDOW - 1);
                (scaled[i].0, scaled[lo..=i].iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max))
            })
            .collect();
        RateFit { quantity: quantity.to_string(), model, samples, scaled, sup, min, last, envelope }
    }

    /// Smallest and last value of the trend envelope.
    pub fn envelope_min_last(&self) -> (f64, f64) {
        let min = self.envelope.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
        (min, self.envelope.last().map_or(f64::NAN, |s| s.1))
    }

    /// Bounded with no upward trend: every value finite and the last value of
    /// the envelope at most `factor` times its smallest.
    pub fn bounded_without_growth(&self, factor: f64) -> bool {
        let (min, last) = self.envelope_min_last();
        self.scaled.iter().all(|s| s.1.is_finite()) && last <= factor * min
    }

    /// The same test on the raw scaled samples, dips included.
    pub fn raw_bounded_without_growth(&self, factor: f64) -> bool {
        self.scaled.iter().all(|s| s.1.is_finite()) && self.last <= factor * self.min
    }
}

/// Remainder of the residue formula at a classified D₁ point:
/// K_n = |Q_n(z) − (n+1)φ₁'(z)φ₁(z)^n| / ((n+1)·ρ^n).
#[derive(Clone, Debug, Serialize)]
pub struct ResidueCheck {
    pub z: C64,
    /// Radius of the inner contour, between the second-largest zero modulus
    /// and r(z).
    pub rho_mid: f64,
    /// (n, K_n).
    pub k: Vec<(usize, f64)>,
}

impl ResidueCheck {
    /// Largest K_n: the fitted constant.
    pub fn constant(&self) -> f64 {
        self.k.iter().map(|x| x.1).fold(0.0, f64::max)
    }

    /// Largest K_n over the lower and the upper half of the range.
    pub fn halves(&self) -> (f64, f64) {
        let mid = self.k.len() / 2;
        let lo = self.k[..mid].iter().map(|x| x.1).fold(0.0, f64::max);
        let hi = self.k[mid..].iter().map(|x| x.1).fold(0.0, f64::max);
        (lo, hi)
    }

    /// K_n does not grow: the largest value over the upper half of the
    /// range is at most `factor` times the largest over the lower half.
    pub fn stable(&self, factor: f64) -> bool {
        let (lo, hi) = self.halves();
        self.k.iter().all(|x| x.1.is_finite()) && hi <= factor * lo
    }
}

/// K_n over `ns` at an interior point with p = 1. The inner radius is the
/// midpoint between r(z) and the largest modulus among the other zeros (or
/// rho_in when there are none).
pub fn residue_check(a: &mut Asymptotics, qn: &mut QnEvaluator, z: &C64, ns: &[usize]) -> Result<ResidueCheck> {
    let d = a.domain();
    let prec = d.precision();
    let zm = d.cmp(z.re, z.im);
    let cont = a.continuation().ok_or(Error::Unavailable("analytic continuation for this domain"))?;
    let rho_in = cont.config().rho_in;
    let c = cont.classify(z)?;
    let (phi1, dphi1) = match (c.phi1, c.phi1_prime) {
        (Some(w), Some(dw)) => (w, dw),
        _ => return Err(Error::NotInOmegaStar),
    };
    let r = c.r.to_f64();
    let second = cont
        .zeros(z)?
        .iter()
        .map(|x| x.w.abs().to_f64())
        .filter(|&m| m < r * (1.0 - 1e-12))
        .fold(rho_in, f64::max);
    let rho_mid = 0.5 * (r + second);
    let q = qn.q_many(&zm, ns)?;
    let log_phi = phi1.ln();
    let mut k = Vec::with_capacity(ns.len());
    for (&n, qv) in ns.iter().zip(&q) {
        let main = (&log_phi.scale(&Float::with_val(prec, n))).exp();
        let main = (&main * &dphi1).scale(&Float::with_val(prec, n + 1));
        let rem = (qv - &main).abs();
        let scale = Float::with_val(prec, n + 1) * Float::with_val(prec, rho_mid).pow(n as u32);
        k.push((n, (rem / scale).to_f64()));
    }
    Ok(ResidueCheck { z: z.clone(), rho_mid, k })
}

#[cfg(test)]
mod tests;
