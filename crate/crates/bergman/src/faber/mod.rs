//! Faber polynomials F_n, the second-kind polynomials G_n, and the
//! quantities that tie them to the Bergman polynomials: ε_{n,n}, β_{n,n},
//! the coefficients α_{n,k}, the h/g recursion tables and the contour
//! functional Q_n.

mod alpha;
mod qn;

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::geometry::DomainModel;
use crate::moments::{acc_mul, MomentMatrix, OrthonormalSystem};
use crate::num::{roots_of_unity, Cmp, Cx, Real};

pub use alpha::{alpha, hg_tables, AlphaTable, CoefficientTables, HgRow};
pub use qn::QnEvaluator;

/// Laurent data of the exterior map at infinity:
/// ψ(w) = w/γ + c_0 + Σ_{k≥1} c_k w^(−k).
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    /// γ = φ'(∞).
    pub capacity: Float,
    /// The leading coefficient 1/γ of ψ.
    pub lead: Float,
    /// c_0, …, c_M.
    pub coeffs: Vec<Cmp>,
    /// Radius of the sampling circle.
    pub radius: Float,
    /// Largest worst-case reconstruction error found by the tail test.
    pub tail_error: Float,
}

impl LaurentSeries {
    /// Number of stored coefficients beyond c_0.
    pub fn count(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The truncated series at w.
    pub fn eval(&self, w: &Cmp) -> Cmp {
        let inv = w.recip();
        let mut acc = w.zero_like();
        for c in self.coeffs.iter().skip(1).rev() {
            acc = acc.mul_add(&inv, c);
        }
        acc = &acc * &inv;
        acc += &self.coeffs[0];
        acc + w.scale(&self.lead)
    }
}

/// Coefficients c_0..c_M of ψ from 2^⌈log₂(8M)⌉ trapezoid samples on
/// |w| = R, followed by a tail test at the interleaved (off-grid) points.
pub fn psi_laurent(d: &DomainModel, radius: &Float, m: usize) -> Result<LaurentSeries> {
    if *radius <= 1.0 || m == 0 {
        return Err(Error::InvalidParameter("psi_laurent needs R > 1 and M ≥ 1".into()));
    }
    let prec = d.precision();
    let s = (8 * m).next_power_of_two();
    let units = roots_of_unity(radius, s);
    let samples = units
        .iter()
        .map(|u| d.psi(&u.scale(radius)).map(|(z, _)| z))
        .collect::<Result<Vec<Cmp>>>()?;
    let mut tmp = Float::new(prec);
    let mut coeffs = Vec::with_capacity(m + 1);
    let mut rk = Float::with_val(prec, 1);
    for k in 0..=m {
        let mut acc = Cx::lit(radius, 0.0, 0.0);
        for (j, v) in samples.iter().enumerate() {
            acc_mul(&mut acc, v, &units[(j * k) % s], &mut tmp);
        }
        coeffs.push(acc.scale(&(rk.clone() / s as u32)));
        rk *= radius;
    }
    let gamma = d.capacity();
    let lead = gamma.clone().recip();
    let series = LaurentSeries { capacity: gamma, lead, coeffs, radius: radius.clone(), tail_error: Float::new(prec) };
    // Off-grid check points: e^(iπ(2j+1)/S) for every (S/64)-th j.
    let check = roots_of_unity(radius, 2 * s);
    let stride = (s / 64).max(1);
    let mut worst = Float::new(prec);
    for j in (0..s).step_by(stride) {
        let w = check[2 * j + 1].scale(radius);
        let (z, _) = d.psi(&w)?;
        let e = (&z - &series.eval(&w)).abs();
        if e > worst {
            worst = e;
        }
    }
    let tol = Float::with_val(prec, 1) << (32 - prec as i32);
    if worst >= tol {
        return Err(Error::LaurentTail { err: worst.to_f64(), radius: radius.to_f64() });
    }
    Ok(LaurentSeries { tail_error: worst, ..series })
}

/// [`psi_laurent`] on |w| = 2 with M doubled from 64 until the tail test
/// passes (at most M = 2048).
pub fn psi_laurent_auto(d: &DomainModel) -> Result<LaurentSeries> {
    let radius = Float::with_val(d.precision(), 2);
    let mut m = 64;
    loop {
        match psi_laurent(d, &radius, m) {
            Err(Error::LaurentTail { .. }) if m < 2048 => m *= 2,
            other => return other,
        }
    }
}

/// F_0..F_{N+1} and G_0..G_N in the monomial basis.
#[derive(Clone, Debug)]
pub struct FaberSystem {
    pub capacity: Float,
    /// F[n][k] is the coefficient of z^k in F_n.
    pub f: Vec<Vec<Cmp>>,
    /// G[n][k] is the coefficient of z^k in G_n = F'_{n+1}/(n+1).
    pub g: Vec<Vec<Cmp>>,
    /// Largest coefficient gap between the two construction routes,
    /// relative to the largest coefficient of each F_n.
    pub route_gap: Float,
}

impl FaberSystem {
    pub fn degree_max(&self) -> usize {
        self.g.len() - 1
    }

    pub fn eval_f<T: Real>(&self, n: usize, z: &Cx<T>) -> Cx<T> {
        eval_conv(&self.f[n], z)
    }

    pub fn eval_g<T: Real>(&self, n: usize, z: &Cx<T>) -> Cx<T> {
        eval_conv(&self.g[n], z)
    }
}

fn eval_conv<T: Real>(c: &[Cmp], z: &Cx<T>) -> Cx<T> {
    let mut acc = z.zero_like();
    for a in c.iter().rev() {
        acc = acc.mul_add(z, &Cx::conv_from(&z.re, a));
    }
    acc
}

/// F_0..F_{N+1} by two independent routes, which must agree to 2^(48−P):
/// (a) the recursion from the generating function
///     ψ'(w)/(ψ(w) − z) = Σ F_n(z) w^(−n−1), i.e.
///     F_m/γ = (z − c_0)F_{m−1} − Σ_{k=1}^{m−1} c_k F_{m−1−k} − (m−1)c_{m−1};
/// (b) the projection of φ(z)^n onto nonnegative powers of z by trapezoid
///     sampling on a circle enclosing D.
pub fn faber_polys(d: &DomainModel, l: &LaurentSeries, n_max: usize) -> Result<FaberSystem> {
    if l.coeffs.len() < n_max + 1 {
        return Err(Error::InvalidParameter(format!(
            "Laurent series with {} coefficients cannot drive Faber polynomials up to degree {}",
            l.coeffs.len(),
            n_max + 1
        )));
    }
    let prec = d.precision();
    let like = Float::new(prec);
    let zero = Cx::lit(&like, 0.0, 0.0);
    let top = n_max + 1;
    let gamma = l.capacity.clone();
    let c = &l.coeffs;

    let mut fa: Vec<Vec<Cmp>> = vec![vec![Cx::lit(&like, 1.0, 0.0)]];
    for m in 1..=top {
        let prev = &fa[m - 1];
        let mut next = vec![zero.clone(); m + 1];
        for (k, a) in prev.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= &(&c[0] * a);
        }
        for k in 1..m {
            for (i, a) in fa[m - 1 - k].iter().enumerate() {
                next[i] -= &(&c[k] * a);
            }
        }
        if m >= 2 {
            next[0] -= &c[m - 1].scale_f((m - 1) as f64);
        }
        for v in next.iter_mut() {
            *v = v.scale(&gamma);
        }
        fa.push(next);
    }

    let fb = faber_by_projection(d, top)?;
    let mut gap = Float::new(prec);
    for (ra, rb) in fa.iter().zip(&fb) {
        let scale = ra.iter().map(|x| x.abs()).fold(Float::with_val(prec, 1), |a, b| a.max(&b));
        for (x, y) in ra.iter().zip(rb) {
            let e = (x - y).abs() / &scale;
            if e > gap {
                gap = e;
            }
        }
    }
    let tol = Float::with_val(prec, 1) << (48 - prec as i32);
    if gap >= tol {
        return Err(Error::FaberInconsistency { gap: gap.to_f64() });
    }

    let g = (0..=n_max)
        .map(|n| {
            let f1 = &fa[n + 1];
            (0..=n)
                .map(|k| f1[k + 1].scale(&(Float::with_val(prec, k as u32 + 1) / (n as u32 + 1))))
                .collect()
        })
        .collect();
    Ok(FaberSystem { capacity: gamma, f: fa, g, route_gap: gap })
}

/// Nonnegative-power part of φ(z)^n, n = 0..=top, from S equispaced
/// samples on |z| = 1.5·max_{ζ∈L}|ζ|.
fn faber_by_projection(d: &DomainModel, top: usize) -> Result<Vec<Vec<Cmp>>> {
    let prec = d.precision();
    let like = Float::new(prec);
    let s = (prec as usize + 2 * top + 64).next_power_of_two();
    let reach = d
        .arcs()
        .iter()
        .flat_map(|a| (0..=64).map(move |i| a.eval(&(i as f64 / 64.0)).0.abs()))
        .fold(0.0f64, f64::max);
    let rz = Float::with_val(prec, 1.5 * reach);
    let units = roots_of_unity(&like, s);
    let phis = units
        .iter()
        .map(|u| d.phi(&u.scale(&rz)).map(|(w, _)| w))
        .collect::<Result<Vec<Cmp>>>()?;
    let mut pow: Vec<Cmp> = vec![Cx::lit(&like, 1.0, 0.0); s];
    let mut tmp = Float::new(prec);
    let mut out = Vec::with_capacity(top + 1);
    for n in 0..=top {
        if n > 0 {
            for (p, f) in pow.iter_mut().zip(&phis) {
                *p *= f;
            }
        }
        let mut row = Vec::with_capacity(n + 1);
        let mut rk = Float::with_val(prec, s as u32);
        for k in 0..=n {
            let mut acc = Cx::lit(&like, 0.0, 0.0);
            for (j, p) in pow.iter().enumerate() {
                acc_mul(&mut acc, p, &units[(s - (j * k) % s) % s], &mut tmp);
            }
            row.push(acc.scale(&rk.clone().recip()));
            rk *= &rz;
        }
        out.push(row);
    }
    Ok(out)
}

fn check_degree(n: usize, fab: &FaberSystem, m: &MomentMatrix) -> Result<()> {
    let max = fab.degree_max().min(m.degree());
    if n > max {
        return Err(Error::DegreeOutOfRange { n, max });
    }
    Ok(())
}

/// ε_{n,n} = 1 − (n+1)‖G_n‖² with the norm taken from the moment matrix.
pub fn epsilon_nn(m: &MomentMatrix, fab: &FaberSystem, n: usize) -> Result<Float> {
    check_degree(n, fab, m)?;
    let prec = m.precision();
    let eps = Float::with_val(prec, 1) - m.norm_sqr(&fab.g[n]) * (n as u32 + 1);
    let tol = -(Float::with_val(prec, 1) << (64 - prec as i32));
    if eps < tol {
        return Err(Error::PrecisionExhausted(format!("ε_{{{n},{n}}} = {:e} is negative", eps.to_f64())));
    }
    Ok(eps)
}

/// q_{n−1} = G_n − (γ^(n+1)/λ_n)·p_n, a polynomial of degree below n.
pub fn q_minus(sys: &OrthonormalSystem, fab: &FaberSystem, n: usize) -> Result<Vec<Cmp>> {
    let p = sys.coeffs(n)?;
    let lam = sys.leading(n)?;
    let prec = lam.prec();
    let ratio = Float::with_val(prec, fab.capacity.clone().pow(n as u32 + 1)) / &lam;
    Ok(fab.g[n].iter().zip(p).map(|(g, pk)| g - &pk.scale(&ratio)).collect())
}

/// β_{n,n} = (n+1)‖q_{n−1}‖².
pub fn beta_nn(sys: &OrthonormalSystem, fab: &FaberSystem, m: &MomentMatrix, n: usize) -> Result<Float> {
    check_degree(n, fab, m)?;
    let q = q_minus(sys, fab, n)?;
    Ok(m.norm_sqr(&q) * (n as u32 + 1))
}

/// (n+1)γ^(2(n+1))/λ_n² − 1 + β_{n,n} + ε_{n,n}, which vanishes identically.
pub fn identity_residual(sys: &OrthonormalSystem, fab: &FaberSystem, m: &MomentMatrix, n: usize) -> Result<Float> {
    let eps = epsilon_nn(m, fab, n)?;
    let beta = beta_nn(sys, fab, m, n)?;
    let lam = sys.leading(n)?;
    let lead = Float::with_val(lam.prec(), fab.capacity.clone().pow(2 * (n as u32 + 1))) / (lam.clone() * &lam)
        * (n as u32 + 1);
    Ok(lead - 1u32 + beta + eps)
}

impl CoefficientTables {
    /// Every table up to degree n_max: α_{n,k} for k ≤ n_max, the diagonal
    /// quantities, and the h rows with J_n = min(2n, n_max − n).
    pub fn build(
        d: &DomainModel,
        sys: &OrthonormalSystem,
        m: &MomentMatrix,
        fab: &FaberSystem,
        n_max: usize,
    ) -> Result<Self> {
        let alpha = AlphaTable::build(d, sys, n_max)?;
        let mut eps = Vec::with_capacity(n_max + 1);
        let mut beta = Vec::with_capacity(n_max + 1);
        let mut residual = Vec::with_capacity(n_max + 1);
        let mut h = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            eps.push(epsilon_nn(m, fab, n)?);
            beta.push(beta_nn(sys, fab, m, n)?);
            residual.push(identity_residual(sys, fab, m, n)?);
            h.push(hg_tables(&alpha, n, (2 * n).min(n_max - n))?);
        }
        Ok(CoefficientTables { alpha, eps, beta, residual, h })
    }
}

#[cfg(test)]
mod tests;
