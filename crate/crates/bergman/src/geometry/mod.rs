//! Catalogue of test domains: boundary arcs, corners, the exterior map pair
//! φ/ψ, the interior map `varphi`, and the circle map h = varphi∘ψ.
//!
//! All evaluators are generic over the scalar type, so the same code runs in
//! `f64` (for searching) and at the configured multiprecision width (for
//! everything that is reported).

mod arcs;
mod ellipse;
mod lens;
mod newton;
mod ngon;

use std::fmt;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{Cmp, Cx, Dual, Real, ScalarOf, C64};

pub use arcs::{segment_distance, AnalyticArc, ArcShape};
pub use ngon::Ngon;

/// Regularity class of the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainClass {
    /// Analytic Jordan curve.
    Analytic,
    /// Piecewise analytic with corners of interior angle π/m; the interior
    /// map continues across the boundary.
    Corner,
    /// Corners whose interior angle is not of the form π/m.
    Singular,
}

impl fmt::Display for DomainClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DomainClass::Analytic => "analytic",
            DomainClass::Corner => "corner",
            DomainClass::Singular => "singular",
        };
        f.write_str(s)
    }
}

/// A corner of the boundary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CornerSpec {
    /// Location z_j.
    pub location: C64,
    /// Interior angle in radians.
    pub interior_angle: f64,
    /// `m` when the interior angle is exactly π/m.
    pub order_m: Option<u32>,
}

/// A value of a meromorphic function: either finite (with derivative) or a
/// pole.
#[derive(Clone, Debug, PartialEq)]
pub enum MVal<T> {
    Finite { value: Cx<T>, deriv: Cx<T> },
    Pole,
}

impl<T: Real> MVal<T> {
    pub fn finite(self) -> Option<(Cx<T>, Cx<T>)> {
        match self {
            MVal::Finite { value, deriv } => Some((value, deriv)),
            MVal::Pole => None,
        }
    }
}

/// A parsed domain name such as `"ngon:N=4"`.
#[derive(Clone, Debug, PartialEq)]
pub enum DomainSpec {
    Disk,
    Ellipse { rho: String },
    Ngon { n: u32 },
    Lens,
}

impl DomainSpec {
    /// Parse `disk`, `ellipse:rho=<decimal>`, `ngon:N=<int>` or `lens`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let param = |key: &str| -> Result<String> {
            let t = tail.ok_or_else(|| Error::UnknownDomain(s.to_string()))?;
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| Error::UnknownDomain(s.to_string()))?;
            if k.trim() != key {
                return Err(Error::UnknownDomain(s.to_string()));
            }
            Ok(v.trim().to_string())
        };
        match head {
            "disk" if tail.is_none() => Ok(DomainSpec::Disk),
            "lens" if tail.is_none() => Ok(DomainSpec::Lens),
            "ellipse" => Ok(DomainSpec::Ellipse { rho: param("rho")? }),
            "ngon" => {
                let n = param("N")?
                    .parse()
                    .map_err(|_| Error::UnknownDomain(s.to_string()))?;
                Ok(DomainSpec::Ngon { n })
            }
            _ => Err(Error::UnknownDomain(s.to_string())),
        }
    }

    /// Build the domain at `prec` bits.
    pub fn build(&self, prec: u32) -> Result<DomainModel> {
        match self {
            DomainSpec::Disk => Ok(DomainModel::disk(prec)),
            DomainSpec::Lens => Ok(DomainModel::lens(prec)),
            DomainSpec::Ngon { n } => DomainModel::regular_ngon(*n, prec),
            DomainSpec::Ellipse { rho } => {
                let r = mpf0(prec)
                    .parse_like(rho)
                    .ok_or_else(|| Error::InvalidParameter(format!("rho = {rho}")))?;
                DomainModel::ellipse(&r)
            }
        }
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainSpec::Disk => write!(f, "disk"),
            DomainSpec::Lens => write!(f, "lens"),
            DomainSpec::Ngon { n } => write!(f, "ngon:N={n}"),
            DomainSpec::Ellipse { rho } => write!(f, "ellipse:rho={rho}"),
        }
    }
}

fn mpf0(prec: u32) -> Float {
    Float::new(prec)
}

#[derive(Debug)]
pub(crate) enum Shape {
    Disk,
    Ellipse(ellipse::Ellipse),
    Ngon(Box<Ngon>),
    Lens,
}

/// A Jordan domain D with its conformal maps.
///
/// Immutable after construction; every evaluator is a pure function.
#[derive(Debug)]
pub struct DomainModel {
    name: String,
    shape: Shape,
    arcs: Vec<AnalyticArc>,
    corners: Vec<CornerSpec>,
    capacity: Dual<ScalarOf>,
    class: DomainClass,
    prec: u32,
}

impl DomainModel {
    /// The unit disk.
    pub fn disk(prec: u32) -> Self {
        let one = Float::with_val(prec, 1);
        DomainModel {
            name: "disk".into(),
            shape: Shape::Disk,
            arcs: vec![AnalyticArc::circle(
                Cx::lit(&one, 0.0, 0.0),
                one.clone(),
                one.zero(),
                one.pi() * 2.0,
            )],
            corners: vec![],
            capacity: Dual::<ScalarOf>::from_mp(one),
            class: DomainClass::Analytic,
            prec,
        }
    }

    /// The ellipse bounded by the image of |u| = rho under the Joukowski map.
    pub fn ellipse(rho: &Float) -> Result<Self> {
        let prec = rho.prec();
        if *rho <= 1.0 {
            return Err(Error::InvalidParameter(format!("ellipse rho = {rho} must exceed 1")));
        }
        let e = ellipse::Ellipse::new(rho.clone());
        let arc = e.boundary_arc();
        let shape = Shape::Ellipse(e);
        let mut d = DomainModel {
            name: format!("ellipse:rho={}", rho.to_f64()),
            shape,
            arcs: vec![arc],
            corners: vec![],
            capacity: Dual::<ScalarOf>::from_mp(Float::with_val(prec, 1)),
            class: DomainClass::Analytic,
            prec,
        };
        let gamma = d.capacity_from_exterior_map()?;
        d.capacity = Dual::<ScalarOf>::from_mp(gamma);
        Ok(d)
    }

    /// The regular N-gon with vertices at the N-th roots of unity.
    pub fn regular_ngon(n: u32, prec: u32) -> Result<Self> {
        if !(3..=12).contains(&n) {
            return Err(Error::InvalidParameter(format!(
                "regular polygon order N = {n} outside the supported range 3..=12"
            )));
        }
        let g = Ngon::new(n, prec);
        let arcs = g.boundary_arcs();
        let corners = g.corners();
        let capacity = g.capacity();
        let class = if n <= 4 { DomainClass::Corner } else { DomainClass::Singular };
        Ok(DomainModel {
            name: format!("ngon:N={n}"),
            shape: Shape::Ngon(Box::new(g)),
            arcs,
            corners,
            capacity: Dual::<ScalarOf>::from_mp(capacity),
            class,
            prec,
        })
    }

    /// The lens bounded by two circular arcs meeting at ±i at right angles.
    pub fn lens(prec: u32) -> Self {
        let one = Float::with_val(prec, 1);
        let s2 = Float::with_val(prec, 2).sqrt();
        let q: Float = one.pi() / 4.0;
        let arcs = vec![
            AnalyticArc::circle(Cx::lit(&one, -1.0, 0.0), s2.clone(), -q.clone(), q.clone()),
            AnalyticArc::circle(Cx::lit(&one, 1.0, 0.0), s2, q.clone() * 3.0, q * 5.0),
        ];
        let corner = |im: f64| CornerSpec {
            location: C64::c64(0.0, im),
            interior_angle: std::f64::consts::FRAC_PI_2,
            order_m: Some(2),
        };
        DomainModel {
            name: "lens".into(),
            shape: Shape::Lens,
            arcs,
            corners: vec![corner(1.0), corner(-1.0)],
            capacity: Dual::<ScalarOf>::from_mp(Float::with_val(prec, 3) / 2u32),
            class: DomainClass::Corner,
            prec,
        }
    }

    /// Canonical spec string.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn arcs(&self) -> &[AnalyticArc] {
        &self.arcs
    }

    pub fn corners(&self) -> &[CornerSpec] {
        &self.corners
    }

    pub fn class_tag(&self) -> DomainClass {
        self.class
    }

    /// The polygon data when the domain is a regular N-gon.
    pub fn as_ngon(&self) -> Option<&Ngon> {
        match &self.shape {
            Shape::Ngon(g) => Some(g),
            _ => None,
        }
    }

    /// The Joukowski parameter when the domain is an ellipse.
    pub fn ellipse_rho(&self) -> Option<&Float> {
        match &self.shape {
            Shape::Ellipse(e) => Some(e.rho()),
            _ => None,
        }
    }

    pub fn is_disk(&self) -> bool {
        matches!(self.shape, Shape::Disk)
    }

    pub fn is_lens(&self) -> bool {
        matches!(self.shape, Shape::Lens)
    }

    /// γ = φ'(∞) at the working precision.
    pub fn capacity(&self) -> Float {
        self.capacity.mp.clone()
    }

    /// γ in the scalar type `T` (at the working precision for `Float`).
    pub fn capacity_t<T: Real>(&self) -> T {
        self.capacity.get::<T>().clone()
    }

    /// Base point where the interior map vanishes (the centroid).
    pub fn base_point(&self) -> C64 {
        C64::c64(0.0, 0.0)
    }

    /// ψ(w) and ψ'(w) for |w| ≥ 1.
    pub fn psi<T: Real>(&self, w: &Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
        match &self.shape {
            Shape::Disk => Ok((w.clone(), w.one_like())),
            Shape::Ellipse(e) => Ok(e.psi(w)),
            Shape::Lens => Ok(lens::psi(w)),
            Shape::Ngon(g) => g.psi(w, false),
        }
    }

    /// ψ continued analytically a little inside the unit circle, where the
    /// continuation is single valued (away from prevertices).
    pub fn psi_continued<T: Real>(&self, w: &Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
        match &self.shape {
            Shape::Ngon(g) => g.psi(w, true),
            _ => self.psi(w),
        }
    }

    /// φ(z) and φ'(z) for z in the closure of the exterior domain.
    pub fn phi<T: Real>(&self, z: &Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
        match &self.shape {
            Shape::Disk => Ok((z.clone(), z.one_like())),
            Shape::Ellipse(e) => Ok(e.phi(z)),
            Shape::Lens => Ok(lens::phi(z)),
            Shape::Ngon(g) => g.phi(z),
        }
    }

    /// The interior map varphi: D → unit disk with its derivative, continued
    /// meromorphically wherever the domain allows it.
    pub fn varphi<T: Real>(&self, z: &Cx<T>) -> Result<MVal<T>> {
        match &self.shape {
            Shape::Disk => Ok(MVal::Finite { value: z.clone(), deriv: z.one_like() }),
            Shape::Ellipse(_) => Err(Error::Unavailable("interior conformal map")),
            Shape::Lens => Ok(lens::varphi(z)),
            Shape::Ngon(g) => g.varphi(z),
        }
    }

    /// Whether an interior map is implemented.
    pub fn has_interior_map(&self) -> bool {
        !matches!(self.shape, Shape::Ellipse(_))
    }

    /// Whether varphi continues meromorphically to the whole plane (so h is
    /// available off the unit circle).
    pub fn has_continuation(&self) -> bool {
        match &self.shape {
            Shape::Disk | Shape::Lens => true,
            Shape::Ellipse(_) => false,
            Shape::Ngon(g) => g.n() <= 4,
        }
    }

    /// h(w) = varphi(ψ(w)) on |w| ≥ 1 and its reflection
    /// 1/conj(h(1/conj w)) inside the unit circle, with h'(w).
    pub fn h<T: Real>(&self, w: &Cx<T>) -> Result<MVal<T>> {
        if let Shape::Lens = self.shape {
            return Ok(lens::h(w));
        }
        if let Shape::Disk = self.shape {
            return Ok(MVal::Finite { value: w.clone(), deriv: w.one_like() });
        }
        let r2 = w.norm_sqr();
        if r2 >= 1.0 {
            self.h_outer(w)
        } else {
            let wp = w.recip().conj();
            match self.h_outer(&wp)? {
                MVal::Pole => Ok(MVal::Finite { value: w.zero_like(), deriv: w.zero_like() }),
                MVal::Finite { value: g, deriv: gp } => {
                    if g.re == 0.0 && g.im == 0.0 {
                        return Ok(MVal::Pole);
                    }
                    let gc = g.conj();
                    let value = gc.recip();
                    // h'(w) = conj(g'(w')) / (w^2 conj(g(w'))^2)
                    let den = &(w * w) * &(&gc * &gc);
                    let deriv = &gp.conj() / &den;
                    Ok(MVal::Finite { value, deriv })
                }
            }
        }
    }

    /// varphi(ψ(w)) evaluated directly, using ψ continued inside the unit
    /// circle when |w| < 1. Used to cross-check the reflection formula.
    pub fn h_direct<T: Real>(&self, w: &Cx<T>) -> Result<MVal<T>> {
        match self.shape {
            Shape::Lens | Shape::Disk => self.h(w),
            _ => {
                let (z, dz) = self.psi_continued(w)?;
                Ok(match self.varphi(&z)? {
                    MVal::Finite { value, deriv } => MVal::Finite { value, deriv: &deriv * &dz },
                    MVal::Pole => MVal::Pole,
                })
            }
        }
    }

    fn h_outer<T: Real>(&self, w: &Cx<T>) -> Result<MVal<T>> {
        let (z, dz) = self.psi(w)?;
        Ok(match self.varphi(&z)? {
            MVal::Finite { value, deriv } => MVal::Finite { value, deriv: &deriv * &dz },
            MVal::Pole => MVal::Pole,
        })
    }

    /// Points w with 0 < |w| < 1 and |w| > `floor` where h has a pole: the
    /// reflections 1/conj(φ(ζ)) of zeros ζ of varphi lying outside D.
    pub fn h_poles_inside(&self, floor: f64) -> Result<Vec<Cmp>> {
        let zeros = match &self.shape {
            Shape::Ngon(g) if g.n() <= 4 => {
                let gamma = self.capacity.lo;
                g.exterior_zeros_of_varphi(1.5 / (floor * gamma) + 1.0)
            }
            _ => vec![],
        };
        let mut out = Vec::new();
        for z in zeros {
            let (w, _) = self.phi(&z)?;
            let p = w.recip().conj();
            if p.abs() > floor {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Whether z lies in the open domain D.
    pub fn contains(&self, z: &C64) -> bool {
        self.signed_distance(z) < 0.0
    }

    /// Signed distance-like function: negative inside D, positive outside,
    /// zero on the boundary. For polygons and the lens this is the exact
    /// Euclidean distance; for the ellipse a first-order approximation.
    pub fn signed_distance(&self, z: &C64) -> f64 {
        match &self.shape {
            Shape::Disk => z.abs() - 1.0,
            Shape::Ellipse(e) => e.signed_distance(z),
            Shape::Lens => lens::signed_distance(z),
            Shape::Ngon(g) => g.signed_distance(z),
        }
    }

    /// Euclidean distance from z to the boundary curve.
    pub fn distance_to_boundary(&self, z: &C64) -> f64 {
        match &self.shape {
            Shape::Ellipse(_) => self
                .arcs
                .iter()
                .map(|a| a.distance_f64(z, 2048))
                .fold(f64::INFINITY, f64::min),
            _ => self.signed_distance(z).abs(),
        }
    }

    /// Distance from z to the nearest corner (∞ without corners).
    pub fn distance_to_corners(&self, z: &C64) -> f64 {
        self.corners
            .iter()
            .map(|c| (z - &c.location).abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// Segments to which zero distances are measured: the centre of the
    /// disk, the focal segment [−1, 1] of the ellipse, the segment [−i, i]
    /// of the lens, and the spokes Γ_N of a regular N-gon.
    pub fn skeleton(&self) -> Vec<(C64, C64)> {
        let o = C64::c64(0.0, 0.0);
        match &self.shape {
            Shape::Disk => vec![(o.clone(), o)],
            Shape::Ellipse(_) => vec![(C64::c64(-1.0, 0.0), C64::c64(1.0, 0.0))],
            Shape::Lens => vec![(C64::c64(0.0, -1.0), C64::c64(0.0, 1.0))],
            Shape::Ngon(g) => g.spokes(),
        }
    }

    /// Distance from z to [`skeleton`](Self::skeleton).
    pub fn distance_to_skeleton(&self, z: &C64) -> f64 {
        self.skeleton()
            .iter()
            .map(|(a, b)| segment_distance(z, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Axis-aligned bounding box (xmin, xmax, ymin, ymax) of the closure of D.
    pub fn bounding_box(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for a in &self.arcs {
            for i in 0..=512 {
                let (z, _) = a.eval(&(i as f64 / 512.0));
                b.0 = b.0.min(z.re);
                b.1 = b.1.max(z.re);
                b.2 = b.2.min(z.im);
                b.3 = b.3.max(z.im);
            }
        }
        b
    }

    /// γ recovered from the Laurent coefficient of φ at infinity,
    /// (1/2πi)∮ φ(z) z^(-2) dz on a large circle.
    pub fn capacity_from_exterior_map(&self) -> Result<Float> {
        let like = Float::with_val(self.prec + 16, 0);
        let (_, xmax, ymin, ymax) = self.bounding_box();
        let radius = 4.0 * xmax.abs().max(ymin.abs()).max(ymax.abs()).max(1.0);
        let m = 512;
        let mut acc = Cx::lit(&like, 0.0, 0.0);
        let two_pi: Float = like.pi() * 2.0;
        for i in 0..m {
            let th = two_pi.clone() * (i as f64) / (m as f64);
            let w = Cx::cis(&th).scale(&like.lit(radius));
            let (f, _) = self.phi(&w)?;
            acc += &f / &w;
        }
        Ok(Float::with_val(self.prec, &acc.re / m as u32))
    }
}

impl DomainModel {
    /// Convenience: φ in `f64`.
    pub fn phi64(&self, z: C64) -> Result<C64> {
        Ok(self.phi(&z)?.0)
    }

    /// Convenience: ψ in `f64`.
    pub fn psi64(&self, w: C64) -> Result<C64> {
        Ok(self.psi(&w)?.0)
    }

    /// Complex constant at the working precision.
    pub fn cmp(&self, re: f64, im: f64) -> Cmp {
        Cx::lit(&Float::new(self.prec), re, im)
    }
}

#[cfg(test)]
mod tests;
