//! Zeros of f_z(w) = h(w) − varphi(z) in the working annulus, and what they
//! determine: the strata D_p, the radius r(z), the continued map φ₁ and the
//! glued map Φ.

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{DomainModel, MVal};
use crate::num::{Cmp, C64};

mod roots;

use roots::{newton_identities, poly_roots_f64};

/// Working annulus and tolerances.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnulusConfig {
    /// Inner working radius; stands in for the (uncomputable) inner radius
    /// of the maximal annulus of meromorphy of h.
    pub rho_in: f64,
    /// Trapezoid samples per contour before adaptive refinement.
    pub circle_samples: usize,
    /// Root residual bound |h(w*) − varphi(z)|, as a power of two.
    pub newton_tol_bits: i32,
    /// Outer contour sits at 1 − delta_edge.
    pub delta_edge: f64,
    /// Relative modulus window within which zeros count as tied.
    pub tie_window: f64,
    /// Number of rings the working annulus is cut into.
    pub rings: usize,
}

impl Default for AnnulusConfig {
    fn default() -> Self {
        AnnulusConfig {
            rho_in: 0.3,
            circle_samples: 1024,
            newton_tol_bits: 100,
            delta_edge: 1e-6,
            tie_window: 1e-20,
            rings: 64,
        }
    }
}

impl AnnulusConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho_in > 0.0 && self.rho_in < 1.0) {
            return Err(Error::InvalidParameter(format!("rho_in = {} must lie in (0, 1)", self.rho_in)));
        }
        if self.circle_samples < 64 || !self.circle_samples.is_power_of_two() {
            return Err(Error::InvalidParameter("circle_samples must be a power of two ≥ 64".into()));
        }
        if !(self.delta_edge > 0.0 && self.delta_edge < 1.0 - self.rho_in) {
            return Err(Error::InvalidParameter("delta_edge must lie in (0, 1 − rho_in)".into()));
        }
        if self.rings == 0 {
            return Err(Error::InvalidParameter("rings must be positive".into()));
        }
        Ok(())
    }

    /// The residual bound 2^(newton_tol_bits − P).
    pub fn newton_tol(&self, prec: u32) -> Float {
        Float::with_val(prec, 1) << (self.newton_tol_bits - prec as i32)
    }
}

/// h(w) on the working annulus rho_in < |w| < 1/rho_in.
pub fn h_eval(d: &DomainModel, w: &Cmp, cfg: &AnnulusConfig) -> Result<MVal<Float>> {
    let r = w.abs().to_f64();
    if !(r > cfg.rho_in && r < 1.0 / cfg.rho_in) {
        return Err(Error::Domain(format!("|w| = {r} outside the working annulus")));
    }
    d.h(w)
}

/// A zero of f_z with its multiplicity.
#[derive(Clone, Debug)]
pub struct AnnulusZero {
    pub w: Cmp,
    pub multiplicity: usize,
}

/// Classification of one interior point.
#[derive(Clone, Debug)]
pub struct ContinuationResult {
    pub z: C64,
    /// Number (with multiplicity) of zeros of largest modulus; 0 if none.
    pub p: usize,
    /// Largest zero modulus, or rho_in if there is no zero.
    pub r: Float,
    /// The simple largest zero, present iff p = 1.
    pub phi1: Option<Cmp>,
    /// φ₁'(z) = varphi'(z)/h'(φ₁), present with `phi1`.
    pub phi1_prime: Option<Cmp>,
    pub in_omega_star: bool,
    /// Every zero found in the working annulus, largest modulus first.
    pub zeros: Vec<AnnulusZero>,
}

impl ContinuationResult {
    /// Largest modulus among zeros not tied with the largest, or rho_in.
    pub fn second_radius(&self, rho_in: f64) -> f64 {
        let rmax = self.r.to_f64();
        self.zeros
            .iter()
            .map(|z| z.w.abs().to_f64())
            .filter(|&m| m < rmax * (1.0 - 1e-12))
            .fold(rho_in, f64::max)
    }
}

/// h and h' sampled on one circle, refined dyadically on demand.
struct Circle {
    r: f64,
    w: Vec<C64>,
    h: Vec<C64>,
    dh: Vec<C64>,
    /// h is (numerically) singular somewhere on this circle.
    singular: bool,
}

const MAX_CIRCLE_SAMPLES: usize = 1 << 17;

/// Number of inward/outward radius perturbations tried for the inner
/// bounding circle before giving up.
const MAX_JITTERS: usize = 4;

impl Circle {
    fn new(d: &DomainModel, r: f64, m: usize) -> Result<Self> {
        let mut c = Circle { r, w: vec![], h: vec![], dh: vec![], singular: false };
        for j in 0..m {
            c.push_sample(d, j, m)?;
        }
        Ok(c)
    }

    fn push_sample(&mut self, d: &DomainModel, j: usize, m: usize) -> Result<()> {
        let th = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
        let w = C64::c64(self.r * th.cos(), self.r * th.sin());
        let (h, dh) = match d.h(&w)? {
            MVal::Finite { value, deriv } if value.is_finite() && deriv.is_finite() => (value, deriv),
            _ => {
                self.singular = true;
                (C64::c64(f64::INFINITY, 0.0), C64::c64(0.0, 0.0))
            }
        };
        self.w.push(w);
        self.h.push(h);
        self.dh.push(dh);
        Ok(())
    }

    fn refine(&mut self, d: &DomainModel) -> Result<()> {
        let m = self.w.len();
        let old = std::mem::take(self);
        self.r = old.r;
        self.singular = old.singular;
        for j in 0..2 * m {
            if j % 2 == 0 {
                self.w.push(old.w[j / 2].clone());
                self.h.push(old.h[j / 2].clone());
                self.dh.push(old.dh[j / 2].clone());
            } else {
                self.push_sample(d, j, 2 * m)?;
            }
        }
        Ok(())
    }

    /// (1/2πi)∮ w^q h'/(h − v) dw for q = 0..=qmax using every `stride`-th
    /// sample, together with min |h − v|.
    fn moments(&self, v: &C64, qmax: usize, stride: usize) -> (Vec<C64>, f64) {
        let m = self.w.len() / stride;
        let mut out = vec![C64::c64(0.0, 0.0); qmax + 1];
        let mut min = f64::INFINITY;
        for i in (0..self.w.len()).step_by(stride) {
            let den = &self.h[i] - v;
            let a = den.abs();
            min = min.min(a);
            // dw = i w dθ, so (1/2πi)∮ g dw = mean(g·w)
            let mut term = &(&self.dh[i] / &den) * &self.w[i];
            for o in out.iter_mut() {
                *o += &term;
                term = &term * &self.w[i];
            }
        }
        for o in out.iter_mut() {
            *o = o.scale_f(1.0 / m as f64);
        }
        (out, min)
    }
}

/// A usable contour: a cached lattice circle, or a private refined or
/// jittered replacement for it.
struct Contour {
    index: usize,
    own: Option<Circle>,
    winding: i64,
}

impl Default for Circle {
    fn default() -> Self {
        Circle { r: 0.0, w: vec![], h: vec![], dh: vec![], singular: false }
    }
}

/// Winding number of f_z around one circle if the trapezoid estimate has
/// settled: within 10⁻⁶ of an integer on the full grid and within 0.25 of
/// the same integer on the half grid, with f_z bounded away from zero.
fn settled_winding(c: &Circle, v: &C64) -> Option<i64> {
    if c.singular {
        return None;
    }
    let (fine, min) = c.moments(v, 0, 1);
    let (coarse, _) = c.moments(v, 0, 2);
    if min < 1e-13 * (1.0 + v.abs()) {
        return None;
    }
    let n = fine[0].re.round();
    let ok = |x: &C64| (x.re - n).abs() < 0.25 && x.im.abs() < 0.25;
    (ok(&fine[0]) && ok(&coarse[0]) && (fine[0].re - n).abs() < 1e-6 && fine[0].im.abs() < 1e-6).then_some(n as i64)
}

/// Winding number, refining the circle (in place) until it settles.
fn circle_winding(d: &DomainModel, c: &mut Circle, v: &C64) -> Result<i64> {
    loop {
        if let Some(n) = settled_winding(c, v) {
            return Ok(n);
        }
        if c.w.len() >= MAX_CIRCLE_SAMPLES || c.singular {
            return Err(Error::ContourDegenerate { radius: c.r });
        }
        c.refine(d)?;
    }
}

/// Number of zeros (with multiplicity) of f_z in r1 ≤ |w| ≤ r2, from the
/// argument principle corrected by the known poles of h in the ring.
pub fn annulus_zero_count(d: &DomainModel, z: &C64, r1: f64, r2: f64, cfg: &AnnulusConfig) -> Result<usize> {
    let solver = Continuation::new(d, cfg.clone())?;
    let v = solver.varphi64(z)?;
    let mut a = Circle::new(d, r1, cfg.circle_samples)?;
    let mut b = Circle::new(d, r2, cfg.circle_samples)?;
    let wa = circle_winding(d, &mut a, &v)?;
    let wb = circle_winding(d, &mut b, &v)?;
    let poles = solver.poles.iter().filter(|p| (r1..r2).contains(&p.abs())).count() as i64;
    let n = wb - wa + poles;
    if n < 0 {
        return Err(Error::ClassificationFailure(format!("negative zero count {n} in [{r1}, {r2}]")));
    }
    Ok(n as usize)
}

/// Classifies interior points. Holds the cached circles (h does not depend
/// on z, so they are shared by every point).
pub struct Continuation<'a> {
    d: &'a DomainModel,
    cfg: AnnulusConfig,
    circles: Vec<Circle>,
    poles: Vec<C64>,
    poles_mp: Vec<Cmp>,
}

impl<'a> Continuation<'a> {
    /// Checks that h is available and finite on |w| = rho_in.
    pub fn new(d: &'a DomainModel, cfg: AnnulusConfig) -> Result<Self> {
        cfg.validate()?;
        if !d.has_interior_map() || !d.has_continuation() {
            return Err(Error::Unavailable("meromorphic continuation of h"));
        }
        let inner = Circle::new(d, cfg.rho_in, 256)?;
        if inner.singular {
            return Err(Error::InvalidParameter(format!(
                "h is not finite on |w| = rho_in = {}; choose another rho_in",
                cfg.rho_in
            )));
        }
        let poles_mp = d.h_poles_inside(cfg.rho_in)?;
        let poles = poles_mp.iter().map(|p| p.to_c64()).collect();
        Ok(Continuation { d, cfg, circles: vec![], poles, poles_mp })
    }

    pub fn config(&self) -> &AnnulusConfig {
        &self.cfg
    }

    fn radii(&self) -> Vec<f64> {
        let (a, b) = (self.cfg.rho_in, 1.0 - self.cfg.delta_edge);
        let k = self.cfg.rings;
        (0..=k).map(|i| a + (b - a) * i as f64 / k as f64).collect()
    }

    fn ensure_circles(&mut self) -> Result<()> {
        if self.circles.is_empty() {
            for r in self.radii() {
                // keep lattice circles off the poles of h
                let near_pole = self.poles.iter().any(|p| (p.abs() - r).abs() < 1e-9);
                let r = if near_pole { r * (1.0 + 1e-4) } else { r };
                self.circles.push(Circle::new(self.d, r, self.cfg.circle_samples)?);
            }
        }
        Ok(())
    }

    fn varphi64(&self, z: &C64) -> Result<C64> {
        match self.d.varphi(z)? {
            MVal::Finite { value, .. } => Ok(value),
            MVal::Pole => Err(Error::Domain("varphi has a pole at the point".into())),
        }
    }

    /// Winding numbers of f_z around the usable lattice circles. An interior
    /// circle on which the estimate has not settled (a zero on or next to
    /// the contour) is dropped, merging the rings on either side. The two
    /// bounding circles are refined on private copies instead, so the shared
    /// cache keeps its size; the inner one is additionally jittered outwards
    /// when refinement alone does not settle it. A zero on the outer circle
    /// means the largest zero sits at the edge of the working ring.
    fn windings(&mut self, v: &C64) -> Result<Vec<Contour>> {
        self.ensure_circles()?;
        let mut out = Vec::new();
        let last = self.circles.len() - 1;
        for (i, c) in self.circles.iter().enumerate() {
            if let Some(n) = settled_winding(c, v) {
                out.push(Contour { index: i, own: None, winding: n });
                continue;
            }
            if i != 0 && i != last {
                continue;
            }
            let mut copy = Circle { r: c.r, w: c.w.clone(), h: c.h.clone(), dh: c.dh.clone(), singular: c.singular };
            match circle_winding(self.d, &mut copy, v) {
                Ok(n) => {
                    out.push(Contour { index: i, own: Some(copy), winding: n });
                    continue;
                }
                Err(Error::ContourDegenerate { .. }) if i == last => return Err(Error::NearBoundaryInconclusive),
                Err(Error::ContourDegenerate { .. }) => {}
                Err(e) => return Err(e),
            }
            let step = (self.circles[1].r - c.r) / (2 * MAX_JITTERS) as f64;
            let mut settled = None;
            for j in 1..=MAX_JITTERS {
                let mut jit = Circle::new(self.d, c.r + step * j as f64, self.cfg.circle_samples)?;
                match circle_winding(self.d, &mut jit, v) {
                    Ok(n) => {
                        settled = Some(Contour { index: i, own: Some(jit), winding: n });
                        break;
                    }
                    Err(Error::ContourDegenerate { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            match settled {
                Some(c) => out.push(c),
                None => {
                    return Err(Error::ClassificationFailure(format!(
                        "zero of f_z on the inner contour |w| = {} after {MAX_JITTERS} jitters",
                        c.r
                    )))
                }
            }
        }
        Ok(out)
    }

    fn circle<'s>(&'s self, c: &'s Contour) -> &'s Circle {
        c.own.as_ref().unwrap_or(&self.circles[c.index])
    }

    fn poles_between(&self, r1: f64, r2: f64) -> Vec<C64> {
        self.poles.iter().filter(|p| (r1..r2).contains(&p.abs())).cloned().collect()
    }

    /// Count of zeros in the whole working ring by a single application of
    /// the argument principle.
    pub fn total_count(&mut self, z: &C64) -> Result<usize> {
        let v = self.varphi64(z)?;
        let w = self.windings(&v)?;
        let (first, last) = (&w[0], &w[w.len() - 1]);
        let (r1, r2) = (self.circle(first).r, self.circle(last).r);
        Ok((last.winding - first.winding + self.poles_between(r1, r2).len() as i64) as usize)
    }

    /// All zeros of f_z in the working ring: per-ring counts, Delves–Lyness
    /// power sums within each nonempty ring, then multiprecision Newton.
    pub fn zeros(&mut self, z: &C64) -> Result<Vec<AnnulusZero>> {
        self.zeros_from(z, false)
    }

    fn zeros_from(&mut self, z: &C64, outer_only: bool) -> Result<Vec<AnnulusZero>> {
        let v = self.varphi64(z)?;
        let zm = self.d.cmp(z.re, z.im);
        let vm = match self.d.varphi(&zm)? {
            MVal::Finite { value, .. } => value,
            MVal::Pole => return Err(Error::Domain("varphi has a pole at the point".into())),
        };
        let w = self.windings(&v)?;
        let mut found = Vec::new();
        for pair in w.windows(2).rev() {
            let (ca, cb) = (self.circle(&pair[0]), self.circle(&pair[1]));
            let (na, nb) = (pair[0].winding, pair[1].winding);
            let (ra, rb) = (ca.r, cb.r);
            let poles = self.poles_between(ra, rb);
            let count = nb - na + poles.len() as i64;
            if count < 0 {
                return Err(Error::ClassificationFailure(format!("negative count in ring [{ra}, {rb}]")));
            }
            if count == 0 {
                continue;
            }
            let k = count as usize;
            let roots = Self::ring_roots(ca, cb, &v, &poles, k);
            let mut ring = Vec::new();
            for r0 in roots {
                let w = self.polish(&r0, &vm)?;
                let m = w.abs().to_f64();
                if m < ra * (1.0 - 1e-9) || m > rb * (1.0 + 1e-9) {
                    return Err(Error::ClassificationFailure(format!(
                        "Newton left the ring [{ra}, {rb}] (|w| = {m})"
                    )));
                }
                merge_root(&mut ring, w);
            }
            for i in 0..ring.len() {
                if ring[i].multiplicity > 1 {
                    let rad = Self::isolation_radius(&ring, i);
                    let wind = self.local_winding(&ring[i].w.to_c64(), &v, rad)?;
                    if wind != ring[i].multiplicity as i64 {
                        return Err(Error::ClassificationFailure(format!(
                            "Newton merged distinct zeros near |w| = {:.6}",
                            ring[i].w.abs().to_f64()
                        )));
                    }
                }
            }
            let total: usize = ring.iter().map(|z: &AnnulusZero| z.multiplicity).sum();
            if total != k {
                return Err(Error::ClassificationFailure(format!(
                    "ring [{ra}, {rb}] holds {k} zeros but {total} were polished"
                )));
            }
            found.extend(ring);
            if outer_only {
                break;
            }
        }
        found.sort_by(|a, b| b.w.abs().partial_cmp(&a.w.abs()).unwrap());
        Ok(found)
    }

    /// The k zeros inside ring (a, b) from the power sums
    /// s_q = Σ zeros w^q = ∮_b − ∮_a w^q f'/f/(2πi) + Σ_poles p^q.
    /// The f64 roots only seed the multiprecision Newton polish.
    fn ring_roots(a: &Circle, b: &Circle, v: &C64, poles: &[C64], k: usize) -> Vec<C64> {
        let (sb, _) = b.moments(v, k, 1);
        let (sa, _) = a.moments(v, k, 1);
        let mut s: Vec<C64> = sb.iter().zip(&sa).map(|(x, y)| x - y).collect();
        for (q, sq) in s.iter_mut().enumerate() {
            for p in poles {
                *sq += &p.powi(q as i64);
            }
        }
        poly_roots_f64(&newton_identities(&s[1..], k))
    }

    /// Newton on h(w) − v in multiprecision from an f64 start.
    fn polish(&self, w0: &C64, v: &Cmp) -> Result<Cmp> {
        let prec = self.d.precision();
        let mut w = w0.to_mp(prec);
        let tol = self.cfg.newton_tol(prec);
        let quad = Float::with_val(prec, 1) << (-(prec as i32) / 2 - 12);
        let mut converged = false;
        for _ in 0..60 {
            let (h, dh) = match self.d.h(&w)? {
                MVal::Finite { value, deriv } => (value, deriv),
                MVal::Pole => return Err(Error::ClassificationFailure("Newton hit a pole of h".into())),
            };
            let f = &h - v;
            if dh.abs() == 0.0 {
                break;
            }
            let step = &f / &dh;
            w -= &step;
            if converged {
                break;
            }
            if step.abs() < quad {
                // one more step after quadratic convergence sets in
                converged = true;
            }
        }
        let res = match self.d.h(&w)? {
            MVal::Finite { value, .. } => (&value - v).abs(),
            MVal::Pole => return Err(Error::ClassificationFailure("Newton ended on a pole of h".into())),
        };
        if res >= tol {
            // slow (multiple-root) convergence: accept if the f64 count says so
            return Err(Error::RootFailure { worst: res.to_f64() });
        }
        Ok(w)
    }

    /// Winding number of f_z around a small circle centred at `w`, from the
    /// accumulated argument increments over 64 samples.
    fn local_winding(&self, w: &C64, v: &C64, radius: f64) -> Result<i64> {
        let m = 64;
        let f = |j: usize| -> Result<C64> {
            let th = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            let p = w + &C64::c64(radius * th.cos(), radius * th.sin());
            match self.d.h(&p)? {
                MVal::Finite { value, .. } => Ok(&value - v),
                MVal::Pole => Err(Error::ClassificationFailure("pole of h next to a zero".into())),
            }
        };
        let first = f(0)?;
        let mut prev = first.clone();
        let mut total = 0.0;
        for j in 1..=m {
            let cur = if j == m { first.clone() } else { f(j)? };
            total += (&cur / &prev).arg();
            prev = cur;
        }
        Ok((total / (2.0 * std::f64::consts::PI)).round() as i64)
    }

    /// Radius for the simplicity test around zero `i`: a quarter of the gap
    /// to the nearest other zero, at most 10⁻⁴.
    fn isolation_radius(zeros: &[AnnulusZero], i: usize) -> f64 {
        let wi = zeros[i].w.to_c64();
        zeros
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, z)| (&z.w.to_c64() - &wi).abs() / 4.0)
            .fold(1e-4, f64::min)
    }

    /// Stratum, r(z), φ₁ and Ω* membership of an interior point.
    pub fn classify(&mut self, z: &C64) -> Result<ContinuationResult> {
        if !self.d.contains(z) {
            return Err(Error::Domain(format!("classification needs an interior point, got {z:?}")));
        }
        let prec = self.d.precision();
        let zeros = self.zeros_from(z, true)?;
        let rho_in = Float::with_val(prec, self.cfg.rho_in);
        if zeros.is_empty() {
            return Ok(ContinuationResult {
                z: z.clone(),
                p: 0,
                r: rho_in,
                phi1: None,
                phi1_prime: None,
                in_omega_star: false,
                zeros,
            });
        }
        let rmax = zeros[0].w.abs();
        let edge = 1.0 - self.cfg.delta_edge;
        if (rmax.to_f64() - edge).abs() <= self.cfg.tie_window.max(1e-15) * edge {
            return Err(Error::NearBoundaryInconclusive);
        }
        let window = Float::with_val(prec, &rmax * self.cfg.tie_window);
        let top: Vec<&AnnulusZero> =
            zeros.iter().filter(|x| Float::with_val(prec, &rmax - x.w.abs()) <= window).collect();
        let p: usize = top.iter().map(|x| x.multiplicity).sum();
        let simple = p == 1 && {
            let v = self.varphi64(z)?;
            self.local_winding(&zeros[0].w.to_c64(), &v, Self::isolation_radius(&zeros, 0))? == 1
        };
        if p == 1 && !simple {
            return Err(Error::ClassificationFailure("the largest zero failed the simplicity test".into()));
        }
        let (phi1, phi1_prime) = if p == 1 {
            let w = top[0].w.clone();
            let zm = self.d.cmp(z.re, z.im);
            let vp = match self.d.varphi(&zm)? {
                MVal::Finite { deriv, .. } => deriv,
                MVal::Pole => unreachable!("varphi was finite above"),
            };
            let dh = match self.d.h(&w)? {
                MVal::Finite { deriv, .. } => deriv,
                MVal::Pole => return Err(Error::ClassificationFailure("h has a pole at φ₁".into())),
            };
            (Some(w), Some(&vp / &dh))
        } else {
            (None, None)
        };
        Ok(ContinuationResult {
            z: z.clone(),
            p,
            r: rmax,
            in_omega_star: p == 1,
            phi1,
            phi1_prime,
            zeros,
        })
    }

    /// Φ(z) and Φ'(z): φ on the closed exterior minus corners, φ₁ on D₁.
    pub fn phi_eval(&mut self, z: &C64) -> Result<(Cmp, Cmp)> {
        if !self.d.contains(z) {
            if self.d.distance_to_corners(z) < 1e-12 {
                return Err(Error::NotInOmegaStar);
            }
            return self.d.phi(&self.d.cmp(z.re, z.im));
        }
        let c = self.classify(z)?;
        match (c.phi1, c.phi1_prime) {
            (Some(w), Some(dw)) => Ok((w, dw)),
            _ => Err(Error::NotInOmegaStar),
        }
    }

    /// The known poles of h in the working ring.
    pub fn poles(&self) -> &[Cmp] {
        &self.poles_mp
    }
}

/// Add a polished root, merging it with an existing one when they coincide
/// (a multiple zero reached from two starts).
fn merge_root(ring: &mut Vec<AnnulusZero>, w: Cmp) {
    for z in ring.iter_mut() {
        let gap = (&z.w - &w).abs();
        if gap < 1e-30 {
            z.multiplicity += 1;
            return;
        }
    }
    ring.push(AnnulusZero { w, multiplicity: 1 });
}

/// One raster pixel.
#[derive(Clone, Debug, Serialize)]
pub struct RasterCell {
    pub x: f64,
    pub y: f64,
    pub inside: bool,
    pub p: usize,
    pub r: f64,
    pub in_omega_star: bool,
}

/// Classify every node of an nx × ny grid over the bounding box of D
/// (enlarged by 10%). Exterior nodes belong to Ω* except at corners; their
/// `r` is |φ(z)|.
pub fn raster(d: &DomainModel, cfg: &AnnulusConfig, nx: usize, ny: usize) -> Result<Vec<RasterCell>> {
    let mut solver = Continuation::new(d, cfg.clone())?;
    let (x0, x1, y0, y1) = d.bounding_box();
    let (mx, my) = (0.1 * (x1 - x0), 0.1 * (y1 - y0));
    let (x0, x1, y0, y1) = (x0 - mx, x1 + mx, y0 - my, y1 + my);
    let mut out = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        let y = y0 + (y1 - y0) * (j as f64 + 0.5) / ny as f64;
        for i in 0..nx {
            let x = x0 + (x1 - x0) * (i as f64 + 0.5) / nx as f64;
            let z = C64::c64(x, y);
            let cell = if d.contains(&z) {
                match solver.classify(&z) {
                    Ok(c) => RasterCell { x, y, inside: true, p: c.p, r: c.r.to_f64(), in_omega_star: c.in_omega_star },
                    Err(Error::NearBoundaryInconclusive) | Err(Error::ClassificationFailure(_)) => {
                        RasterCell { x, y, inside: true, p: 0, r: f64::NAN, in_omega_star: false }
                    }
                    Err(e) => return Err(e),
                }
            } else {
                let w = d.phi64(z.clone())?;
                RasterCell { x, y, inside: false, p: 0, r: w.abs(), in_omega_star: d.distance_to_corners(&z) > 0.0 }
            };
            out.push(cell);
        }
    }
    Ok(out)
}

/// Convenience wrapper: classify one point with a fresh solver.
pub fn classify_point(d: &DomainModel, z: &C64, cfg: &AnnulusConfig) -> Result<ContinuationResult> {
    Continuation::new(d, cfg.clone())?.classify(z)
}

/// Convenience wrapper: Φ(z) and Φ'(z) with a fresh solver.
pub fn phi_eval(d: &DomainModel, z: &C64, cfg: &AnnulusConfig) -> Result<(Cmp, Cmp)> {
    Continuation::new(d, cfg.clone())?.phi_eval(z)
}
