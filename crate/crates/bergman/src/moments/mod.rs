//! Area moments of a domain, the monomial Gram matrix, and the orthonormal
//! Bergman polynomials obtained from it by Cholesky factorization.
//!
//! Every moment ∫_D z^j conj(z)^k dA/π is reduced by the complex Green
//! identity to the boundary integral
//! (1/(2πi(k+1))) ∮_L z^j conj(z)^(k+1) dz, evaluated arc by arc with
//! Gauss–Legendre panels.

mod oracle;
mod ortho;

use rug::{Assign, Float};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AnalyticArc, ArcShape, DomainModel};
use crate::num::{gauss_legendre, Cmp, Cx, Real};

pub use oracle::area_moment_oracle;
pub use ortho::{orthonormalize, OrthonormalSystem};

/// Panel layout for the boundary integrals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureScheme {
    /// Gauss–Legendre nodes per panel (at least 8).
    pub nodes_per_panel: usize,
    /// Dyadic subdivisions of the panels adjacent to each corner.
    pub grading_levels: u32,
}

impl Default for QuadratureScheme {
    fn default() -> Self {
        QuadratureScheme { nodes_per_panel: 48, grading_levels: 0 }
    }
}

impl QuadratureScheme {
    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_panel < 8 {
            return Err(Error::InvalidParameter(format!(
                "nodes_per_panel = {} must be at least 8",
                self.nodes_per_panel
            )));
        }
        Ok(())
    }
}

/// Hermitian matrix of area moments M[j][k] = ∫_D z^j conj(z)^k dA/π.
#[derive(Clone, Debug)]
pub struct MomentMatrix {
    entries: Vec<Vec<Cmp>>,
    prec: u32,
}

impl MomentMatrix {
    /// Wrap a square table of moments (used for tests and reloads).
    pub fn from_entries(entries: Vec<Vec<Cmp>>, prec: u32) -> Self {
        MomentMatrix { entries, prec }
    }

    /// Largest degree N (the matrix is (N+1)×(N+1)).
    pub fn degree(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn get(&self, j: usize, k: usize) -> &Cmp {
        &self.entries[j][k]
    }

    /// max |M[j][k] − conj(M[k][j])|.
    pub fn hermitian_residual(&self) -> Float {
        let n = self.entries.len();
        let mut worst = Float::new(self.prec);
        for j in 0..n {
            for k in 0..n {
                let d = (&self.entries[j][k] - &self.entries[k][j].conj()).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// ⟨a, b⟩ = Σ a_j conj(b_k) M[j][k] for coefficient vectors in the
    /// monomial basis (trailing entries beyond the matrix size must vanish).
    pub fn inner(&self, a: &[Cmp], b: &[Cmp]) -> Cmp {
        let mut acc = Cx::lit(&Float::new(self.prec), 0.0, 0.0);
        let mut tmp = Float::new(self.prec);
        for (j, aj) in a.iter().enumerate() {
            let mut row = Cx::lit(&Float::new(self.prec), 0.0, 0.0);
            for (k, bk) in b.iter().enumerate() {
                acc_mul(&mut row, &self.entries[j][k], &bk.conj(), &mut tmp);
            }
            acc_mul(&mut acc, aj, &row, &mut tmp);
        }
        acc
    }

    /// ‖a‖² = ⟨a, a⟩ (real part; the imaginary part is rounding noise).
    pub fn norm_sqr(&self, a: &[Cmp]) -> Float {
        self.inner(a, a).re
    }
}

/// acc += a·b without temporaries beyond `tmp`.
pub(crate) fn acc_mul(acc: &mut Cmp, a: &Cmp, b: &Cmp, tmp: &mut Float) {
    tmp.assign(&a.re * &b.re);
    acc.re += &*tmp;
    tmp.assign(&a.im * &b.im);
    acc.re -= &*tmp;
    tmp.assign(&a.re * &b.im);
    acc.im += &*tmp;
    tmp.assign(&a.im * &b.re);
    acc.im += &*tmp;
}

/// out = a·b without temporaries beyond `tmp`.
fn set_mul(out: &mut Cmp, a: &Cmp, b: &Cmp, tmp: &mut Float) {
    out.re.assign(&a.re * &b.re);
    tmp.assign(&a.im * &b.im);
    out.re -= &*tmp;
    out.im.assign(&a.re * &b.im);
    tmp.assign(&a.im * &b.re);
    out.im += &*tmp;
}

/// Parameter intervals of the panels on one arc.
fn arc_panels(arc: &AnalyticArc, corners: &[crate::num::C64], panels: usize, levels: u32, prec: u32) -> Vec<(Float, Float)> {
    let (za, zb) = arc.endpoints();
    let near = |z: &crate::num::C64| corners.iter().any(|c| (c - z).abs() < 1e-12);
    let (grade_a, grade_b) = (levels > 0 && near(&za), levels > 0 && near(&zb));
    let mut out = Vec::new();
    for p in 0..panels {
        let t0 = Float::with_val(prec, p) / panels as u32;
        let t1 = Float::with_val(prec, p + 1) / panels as u32;
        let first = p == 0 && grade_a;
        let last = p + 1 == panels && grade_b;
        if !first && !last {
            out.push((t0, t1));
            continue;
        }
        // Split dyadically toward the graded end(s).
        let mut pieces = vec![(t0, t1)];
        for _ in 0..levels {
            let mut next = Vec::new();
            let n = pieces.len();
            for (i, (a, b)) in pieces.into_iter().enumerate() {
                let mid = Float::with_val(prec, &a + &b) / 2u32;
                let split = (first && i == 0) || (last && i + 1 == n);
                if split {
                    next.push((a, mid.clone()));
                    next.push((mid, b));
                } else {
                    next.push((a, b));
                }
            }
            pieces = next;
        }
        out.extend(pieces);
    }
    out
}

/// Panels per arc at which the refinement loop starts.
fn initial_panels(arc: &AnalyticArc, degree: usize, nodes: usize) -> usize {
    let span = match &arc.shape {
        ArcShape::Segment { .. } => return 1,
        ArcShape::Circle { theta0, theta1, .. } => (theta1.to_f64() - theta0.to_f64()).abs(),
        ArcShape::Joukowski { .. } => 2.0 * std::f64::consts::PI,
    };
    // bandwidth of the integrand in the angle variable over the arc
    let band = (2 * degree + 2) as f64 * span / 2.0;
    ((band / nodes as f64).ceil() as usize).max(1)
}

/// All moments 0 ≤ j, k ≤ `degree` with the given rule size and panels.
fn raw_moments(
    d: &DomainModel,
    degree: usize,
    nodes: usize,
    panels: &[usize],
    levels: u32,
) -> Result<Vec<Vec<Cmp>>> {
    let prec = d.precision();
    let like = Float::new(prec);
    let rule = gauss_legendre(nodes, prec);
    let xs = rule.nodes.get::<Float>();
    let ws = rule.weights.get::<Float>();
    let corners: Vec<_> = d.corners().iter().map(|c| c.location.clone()).collect();
    let zero = Cx::lit(&like, 0.0, 0.0);
    let mut acc = vec![vec![zero.clone(); degree + 1]; degree + 1];
    let mut zj = vec![zero.clone(); degree + 1];
    let mut u = vec![zero.clone(); degree + 1];
    let mut tmp = Float::new(prec);
    let mut scratch = zero.clone();
    for (arc, &np) in d.arcs().iter().zip(panels) {
        for (t0, t1) in arc_panels(arc, &corners, np, levels, prec) {
            let half = Float::with_val(prec, &t1 - &t0) / 2u32;
            let mid = Float::with_val(prec, &t1 + &t0) / 2u32;
            for (x, w) in xs.iter().zip(ws) {
                let t = Float::with_val(prec, x * &half) + &mid;
                let (z, dz) = arc.eval(&t);
                let wt = Float::with_val(prec, w * &half);
                let wdz = dz.scale(&wt);
                // zj[j] = z^j ; u[k] = conj(z)^(k+1)/(k+1) · w dz
                zj[0] = z.one_like();
                for j in 1..=degree {
                    set_mul(&mut scratch, &zj[j - 1], &z, &mut tmp);
                    std::mem::swap(&mut zj[j], &mut scratch);
                }
                let zb = z.conj();
                let mut pw = zb.clone();
                for k in 0..=degree {
                    set_mul(&mut u[k], &pw, &wdz, &mut tmp);
                    u[k].re /= (k + 1) as u32;
                    u[k].im /= (k + 1) as u32;
                    set_mul(&mut scratch, &pw, &zb, &mut tmp);
                    std::mem::swap(&mut pw, &mut scratch);
                }
                for j in 0..=degree {
                    for k in 0..=degree {
                        acc_mul(&mut acc[j][k], &zj[j], &u[k], &mut tmp);
                    }
                }
            }
        }
    }
    // divide by 2πi: x/(2πi) = −i·x/(2π)
    let two_pi: Float = like.pi() * 2.0;
    for row in acc.iter_mut() {
        for m in row.iter_mut() {
            let v = m.mul_i().scale_f(-1.0);
            *m = Cx::new(v.re / &two_pi, v.im / &two_pi);
            if !m.is_finite() {
                return Err(Error::Quadrature("non-finite moment".into()));
            }
        }
    }
    Ok(acc)
}

/// Largest relative gap between two moment tables.
fn table_gap(a: &[Vec<Cmp>], b: &[Vec<Cmp>]) -> Float {
    let mut worst = Float::new(a[0][0].re.prec());
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            let scale = y.abs().max_of(x.re.one());
            let g = (x - y).abs() / scale;
            if g > worst {
                worst = g;
            }
        }
    }
    worst
}

/// Moments up to `degree`, self-validated: each table is computed with the
/// configured rule and with twice as many nodes per panel; panels are
/// doubled until the two agree to 2^(32−P), else a quadrature error.
fn validated_moments(d: &DomainModel, degree: usize, q: &QuadratureScheme) -> Result<Vec<Vec<Cmp>>> {
    q.validate()?;
    let prec = d.precision() as i32;
    let tol = Float::with_val(d.precision(), 1) << (32 - prec);
    let mut panels: Vec<usize> = d
        .arcs()
        .iter()
        .map(|a| initial_panels(a, degree, q.nodes_per_panel))
        .collect();
    let mut last_gap = Float::new(53);
    for _ in 0..8 {
        let coarse = raw_moments(d, degree, q.nodes_per_panel, &panels, q.grading_levels)?;
        let fine = raw_moments(d, degree, 2 * q.nodes_per_panel, &panels, q.grading_levels)?;
        let gap = table_gap(&coarse, &fine);
        if gap <= tol {
            return Ok(fine);
        }
        last_gap = gap;
        panels.iter_mut().for_each(|p| *p *= 2);
    }
    Err(Error::Quadrature(format!(
        "moment self-validation gap {:e} above 2^(32-P) after refinement",
        last_gap.to_f64()
    )))
}

/// ∫_D z^j conj(z)^k dA/π from the boundary integral.
pub fn boundary_moment(d: &DomainModel, j: usize, k: usize, q: &QuadratureScheme) -> Result<Cmp> {
    let m = validated_moments(d, j.max(k), q)?;
    Ok(m[j][k].clone())
}

/// The Gram matrix of 1, z, …, z^N with Hermitian symmetry enforced by
/// averaging M[j][k] with conj(M[k][j]).
pub fn gram(d: &DomainModel, degree: usize, q: &QuadratureScheme) -> Result<MomentMatrix> {
    let raw = validated_moments(d, degree, q)?;
    let mut entries = raw.clone();
    for j in 0..=degree {
        for k in 0..=degree {
            let s = &raw[j][k] + &raw[k][j].conj();
            entries[j][k] = s.scale_f(0.5);
        }
    }
    Ok(MomentMatrix { entries, prec: d.precision() })
}

#[cfg(test)]
mod tests;
