//! Zeros of p_n by simultaneous iteration, and where they lie.

use rug::Float;
use serde::Serialize;

use crate::continuation::Continuation;
use crate::error::{Error, Result};
use crate::geometry::DomainModel;
use crate::moments::OrthonormalSystem;
use crate::num::{aberth, circle_start, Cmp, Cx, Real};

/// Sweep budget for one polynomial.
const MAX_SWEEPS: usize = 500;

/// The n zeros of p_n, listed with repetition.
#[derive(Clone, Debug)]
pub struct ZeroSet {
    pub n: usize,
    pub zeros: Vec<Cmp>,
    /// max over zeros of |p_n(ζ)| / (max_k |c_k| · max(1, |ζ|)^n).
    pub max_residual: f64,
    pub sweeps: usize,
}

/// Scaled residual of one root: |p(ζ)| / (max_k |c_k| · max(1, |ζ|)^n).
fn scaled_residual(c: &[Cmp], cmax: &Float, x: &Cmp) -> Float {
    let n = c.len() - 1;
    let p = crate::num::horner(c, x);
    let r = x.abs().max_of(x.re.one());
    let mut den = cmax.clone();
    for _ in 0..n {
        den *= &r;
    }
    p.abs() / den
}

/// All zeros of p_n at `prec` bits by Aberth–Ehrlich iteration (no
/// deflation), started on a circle whose radius (√(n+1)/λ_n)^(1/n) tends to
/// the capacity of the domain. Converged when every scaled residual is below
/// 2^(64−prec).
pub fn poly_zeros(sys: &OrthonormalSystem, n: usize, prec: u32) -> Result<ZeroSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("p_0 has no zeros".into()));
    }
    let c: Vec<Cmp> = sys.coeffs(n)?.iter().map(|x| x.to_mp(prec)).collect();
    let like = Float::new(prec);
    let cmax = c.iter().map(|x| x.abs()).fold(like.zero(), |a, b| a.max_of(b));
    let lead = c[n].abs().to_f64();
    let radius = ((n as f64 + 1.0).sqrt() / lead).powf(1.0 / n as f64);
    let target = Float::with_val(prec, 1) << (64 - prec as i32);
    let step_tol = Float::with_val(prec, 1) << (8 - prec as i32);
    let mut roots = circle_start(&like, n, radius);
    let mut sweeps = 0;
    let worst = |roots: &[Cmp]| roots.iter().map(|x| scaled_residual(&c, &cmax, x)).fold(like.zero(), |a, b| a.max_of(b));
    loop {
        let run = aberth(&c, roots, &step_tol, 4);
        sweeps += run.sweeps;
        roots = run.roots;
        let res = worst(&roots);
        if res < target {
            return Ok(ZeroSet { n, zeros: roots, max_residual: res.to_f64(), sweeps });
        }
        if sweeps >= MAX_SWEEPS {
            return Err(Error::RootFailure { worst: res.to_f64() });
        }
    }
}

/// One zero with its distances.
#[derive(Clone, Debug, Serialize)]
pub struct ZeroRow {
    pub n: usize,
    pub re: f64,
    pub im: f64,
    /// Distance to the skeleton (Γ_N, [−i, i], the focal segment, the centre).
    pub dist_gamma: f64,
    /// Distance to the boundary curve L.
    pub dist_l: f64,
    /// Distance to the nearest corner (∞ without corners).
    pub dist_corners: f64,
    /// |φ(ζ)| outside the domain, r(ζ) inside (equal to |Φ(ζ)| on D₁);
    /// absent when no classification is available.
    pub phi_abs: Option<f64>,
}

/// Count of |φ| or r values in [lo, hi).
#[derive(Clone, Debug, Serialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

/// Per-zero distances and their extremes.
#[derive(Clone, Debug, Serialize)]
pub struct ZeroDiagnostics {
    pub n: usize,
    pub rows: Vec<ZeroRow>,
    pub max_dist_gamma: f64,
    pub max_abs_re: f64,
    pub min_dist_corners: f64,
    pub histogram: Vec<HistogramBin>,
}

/// Distances of every zero to the skeleton, to L and to the corners. With a
/// continuation solver, interior zeros are also classified and the
/// histogram of |Φ|-type values (16 bins over [0.2, 1.8)) is filled.
pub fn zero_diagnostics(zs: &ZeroSet, d: &DomainModel, mut cont: Option<&mut Continuation>) -> Result<ZeroDiagnostics> {
    let mut rows = Vec::with_capacity(zs.zeros.len());
    for z in &zs.zeros {
        let zf = z.to_c64();
        let phi_abs = if d.contains(&zf) {
            match cont.as_deref_mut() {
                Some(c) => match c.classify(&zf) {
                    Ok(res) => Some(res.r.to_f64()),
                    Err(Error::NearBoundaryInconclusive) | Err(Error::ClassificationFailure(_)) => None,
                    Err(e) => return Err(e),
                },
                None => None,
            }
        } else if d.distance_to_corners(&zf) > 0.0 {
            Some(d.phi64(zf.clone())?.abs())
        } else {
            None
        };
        rows.push(ZeroRow {
            n: zs.n,
            re: zf.re,
            im: zf.im,
            dist_gamma: d.distance_to_skeleton(&zf),
            dist_l: d.distance_to_boundary(&zf),
            dist_corners: d.distance_to_corners(&zf),
            phi_abs,
        });
    }
    let (lo, width, bins) = (0.2, 0.1, 16);
    let mut histogram: Vec<HistogramBin> = (0..bins)
        .map(|i| HistogramBin { lo: lo + width * i as f64, hi: lo + width * (i + 1) as f64, count: 0 })
        .collect();
    for v in rows.iter().filter_map(|r| r.phi_abs) {
        let i = ((v - lo) / width).floor();
        if i >= 0.0 && (i as usize) < bins {
            histogram[i as usize].count += 1;
        }
    }
    Ok(ZeroDiagnostics {
        n: zs.n,
        max_dist_gamma: rows.iter().map(|r| r.dist_gamma).fold(0.0, f64::max),
        max_abs_re: rows.iter().map(|r| r.re.abs()).fold(0.0, f64::max),
        min_dist_corners: rows.iter().map(|r| r.dist_corners).fold(f64::INFINITY, f64::min),
        rows,
        histogram,
    })
}

impl ZeroSet {
    /// The zeros in f64, for reporting.
    pub fn zeros_f64(&self) -> Vec<crate::num::C64> {
        self.zeros.iter().map(Cx::to_c64).collect()
    }
}
