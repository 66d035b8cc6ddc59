//! Regular N-gon R_N with vertices at the N-th roots of unity.
//!
//! Both conformal maps are Schwarz–Christoffel integrals with prevertices at
//! the N-th roots of unity (forced by symmetry):
//!
//! * exterior: ψ'(w) = C (1 − w^{−N})^{2/N}, ψ(1) = 1;
//! * interior: f'(u) = K (1 − u^N)^{−2/N}, f(0) = 0, f(1) = 1, and
//!   varphi = f^{−1}.
//!
//! After reducing the argument to the fundamental sector 0 ≤ arg ≤ π/N by
//! rotation and conjugation symmetry, each integral is evaluated by one of a
//! few convergent expansions: the Laurent series at infinity, the algebraic
//! series at the prevertex 1 (which absorbs the endpoint singularity
//! exactly), and the Taylor series about the symmetric prevertex e^{iπ/N}
//! (or about 0 for the interior map). The expansion with the smallest
//! convergence ratio is used, truncated adaptively to the working precision.

use std::f64::consts::PI;

use rug::Float;

use super::arcs::segment_distance;
use super::newton;
use super::{AnalyticArc, CornerSpec, MVal};
use crate::error::{Error, Result};
use crate::num::{series_pow, Cmp, Cx, CxVecOf, Dual, Family, Real, C64};

/// Largest convergence ratio at which an expansion is used.
const MAX_RATIO: f64 = 0.75;

#[derive(Clone, Debug)]
pub(crate) struct Tabs<T> {
    /// ψ leading coefficient C = 1/γ.
    c: T,
    /// Interior scale K.
    k: T,
    /// 2/N.
    two_n: T,
    /// ψ' = C Σ a_j w^{-Nj}; ψ = C w Σ a_j/(1−Nj) w^{-Nj}.
    inf_a: Vec<T>,
    inf_d: Vec<T>,
    /// ψ' = C x^{2/N} Σ e_k x^k, ψ = 1 + C x^{1+2/N} Σ e_k x^k/(k+1+2/N), x = w−1.
    loc_e: Vec<T>,
    loc_ei: Vec<T>,
    /// ψ' = C Σ t_k x^k, ψ = z_m + C Σ t_k x^{k+1}/(k+1), x = w − w_m.
    mid_t: Vec<Cx<T>>,
    mid_ti: Vec<Cx<T>>,
    wm: Cx<T>,
    zm: Cx<T>,
    /// f' = K Σ b_j u^{Nj}; f = K u Σ b_j/(Nj+1) u^{Nj}.
    int0_b: Vec<T>,
    int0_bi: Vec<T>,
    /// f' = K s^{-2/N} Σ g_k s^k, f = 1 − K s^{1−2/N} Σ g_k s^k/(k+1−2/N), s = 1−u.
    intl_g: Vec<T>,
    intl_gi: Vec<T>,
}

#[derive(Clone, Debug)]
pub(crate) struct TabsOf;
impl Family for TabsOf {
    type Of<T: Real> = Tabs<T>;
}

fn lower(t: &Tabs<Float>) -> Tabs<f64> {
    let v = |x: &Vec<Float>| x.iter().map(|y| y.to_f64()).collect::<Vec<f64>>();
    let vc = |x: &Vec<Cmp>| x.iter().map(|y| y.to_c64()).collect::<Vec<C64>>();
    Tabs {
        c: t.c.to_f64(),
        k: t.k.to_f64(),
        two_n: t.two_n.to_f64(),
        inf_a: v(&t.inf_a),
        inf_d: v(&t.inf_d),
        loc_e: v(&t.loc_e),
        loc_ei: v(&t.loc_ei),
        mid_t: vc(&t.mid_t),
        mid_ti: vc(&t.mid_ti),
        wm: t.wm.to_c64(),
        zm: t.zm.to_c64(),
        int0_b: v(&t.int0_b),
        int0_bi: v(&t.int0_bi),
        intl_g: v(&t.intl_g),
        intl_gi: v(&t.intl_gi),
    }
}

/// Power of a real power series with positive constant term.
fn real_series_pow(a: &[Float], alpha: &Float, len: usize) -> Vec<Float> {
    let prec = alpha.prec();
    let mut b: Vec<Float> = Vec::with_capacity(len);
    b.push(a[0].clone().powr(alpha));
    let ap1: Float = alpha.clone() + 1.0;
    for k in 1..len {
        let mut s = Float::new(prec);
        for j in 1..=k.min(a.len() - 1) {
            let coef = ap1.clone() * (j as f64) - (k as f64);
            s += coef * &a[j] * &b[k - j];
        }
        b.push(s / (&a[0] * Float::with_val(prec, k)));
    }
    b
}

fn binom(n: u32, k: u32, prec: u32) -> Float {
    let mut r = Float::with_val(prec, 1);
    for i in 0..k {
        r *= n - i;
        r /= i + 1;
    }
    r
}

/// Number of series terms needed for `bits` bits at convergence ratio `q`.
fn terms(q: f64, bits: u32, cap: usize) -> usize {
    if q <= 0.0 {
        return 1;
    }
    let t = (bits as f64 * std::f64::consts::LN_2 / -q.ln()).ceil() as usize + 6;
    t.min(cap)
}

fn horner_r<T: Real>(c: &[T], x: &Cx<T>) -> Cx<T> {
    crate::num::horner_real(c, x)
}

/// Result of reducing a point to the fundamental sector.
struct Reduced<T> {
    k: usize,
    conj: bool,
    p: Cx<T>,
}

/// A regular polygon with its Schwarz–Christoffel machinery.
#[derive(Debug)]
pub struct Ngon {
    n: u32,
    prec: u32,
    tabs: Dual<TabsOf>,
    roots: Dual<CxVecOf>,
    gamma: Float,
    r_le: f64,
    r_me: f64,
    r_il: f64,
    ext_grid: Vec<(C64, C64)>,
    int_grid: Vec<(C64, C64)>,
}

impl Ngon {
    pub(crate) fn new(n: u32, prec: u32) -> Self {
        let pw = prec + 32;
        let nf = n as f64;
        let len = terms(MAX_RATIO, prec + 16, usize::MAX) + 8;
        let one = Float::with_val(pw, 1);
        let two_n = Float::with_val(pw, 2) / n;
        let inv_n = Float::with_val(pw, 1) / n;
        // γ = Γ(1−1/N)Γ(1+2/N)/Γ(1+1/N), C = 1/γ
        let gamma = (one.clone() - &inv_n).gamma() * (one.clone() + &two_n).gamma()
            / (one.clone() + &inv_n).gamma();
        let c = one.clone() / &gamma;
        // K = N Γ(1−1/N) / (Γ(1/N) Γ(1−2/N))
        let k = (one.clone() - &inv_n).gamma() * n
            / (inv_n.clone().gamma() * (one.clone() - &two_n).gamma());

        let mut inf_a = vec![one.clone()];
        for j in 1..len {
            let prev = inf_a[j - 1].clone();
            inf_a.push(prev * (Float::with_val(pw, j - 1) - &two_n) / (j as u32));
        }
        let inf_d: Vec<Float> = inf_a
            .iter()
            .enumerate()
            .map(|(j, a)| a.clone() / (1.0 - nf * j as f64))
            .collect();

        // P(1+x) = Σ_{j<N} (1+x)^j = Σ_k C(N, k+1) x^k
        let p1: Vec<Float> = (0..n).map(|k| binom(n, k + 1, pw)).collect();
        let e_pow = real_series_pow(&p1, &two_n, len);
        let loc_e: Vec<Float> = (0..len)
            .map(|k| {
                let mut s = Float::new(pw);
                for j in 0..=k {
                    // (1+x)^{-2} = Σ (−1)^j (j+1) x^j
                    let sgn = if j % 2 == 0 { 1.0 } else { -1.0 };
                    s += e_pow[k - j].clone() * (sgn * (j + 1) as f64);
                }
                s
            })
            .collect();
        let loc_ei: Vec<Float> = loc_e
            .iter()
            .enumerate()
            .map(|(k, e)| e.clone() / (two_n.clone() + (k + 1) as f64))
            .collect();

        let like = Float::new(pw);
        let wm = Cx::cis(&(like.pi() / n));
        let zm = (&Cx::cis(&(like.pi() * 2.0 / n)) + &Cx::lit(&like, 1.0, 0.0)).scale_f(0.5);
        // 1 − w^{−N} = 1 + (1 + x/w_m)^{−N} about w_m
        let wmi = wm.recip();
        let mut a = Vec::with_capacity(len);
        let mut coef = Float::with_val(pw, 1);
        let mut pw_wmi = Cx::lit(&like, 1.0, 0.0);
        for kk in 0..len {
            if kk > 0 {
                // C(−N, k) = C(−N, k−1)·(−N−k+1)/k
                coef *= -(nf + kk as f64 - 1.0);
                coef /= kk as u32;
                pw_wmi = &pw_wmi * &wmi;
            }
            let mut term = pw_wmi.scale(&coef);
            if kk == 0 {
                term.re += 1.0;
            }
            a.push(term);
        }
        let mid_t = series_pow(&a, &two_n, len);
        let mid_ti: Vec<Cmp> = mid_t
            .iter()
            .enumerate()
            .map(|(k, t)| t.scale(&(Float::with_val(pw, 1) / (k as u32 + 1))))
            .collect();

        let mut int0_b = vec![one.clone()];
        for j in 1..len {
            let prev = int0_b[j - 1].clone();
            int0_b.push(prev * (Float::with_val(pw, j - 1) + &two_n) / (j as u32));
        }
        let int0_bi: Vec<Float> = int0_b
            .iter()
            .enumerate()
            .map(|(j, b)| b.clone() / (nf * j as f64 + 1.0))
            .collect();
        // P(u) about u = 1, in s = 1 − u: P(1−s) = Σ_k C(N,k+1)(−s)^k
        let p1s: Vec<Float> = p1
            .iter()
            .enumerate()
            .map(|(k, x)| if k % 2 == 0 { x.clone() } else { -x.clone() })
            .collect();
        let intl_g = real_series_pow(&p1s, &(-two_n.clone()), len);
        let intl_gi: Vec<Float> = intl_g
            .iter()
            .enumerate()
            .map(|(kk, g)| g.clone() / (Float::with_val(pw, kk + 1) - &two_n))
            .collect();

        let round = |x: Float| Float::with_val(prec, x);
        let rv = |v: Vec<Float>| v.into_iter().map(round).collect::<Vec<_>>();
        let rc = |v: Vec<Cmp>| v.into_iter().map(|z| z.to_mp(prec)).collect::<Vec<_>>();
        let mp = Tabs {
            c: round(c),
            k: round(k),
            two_n: round(two_n),
            inf_a: rv(inf_a),
            inf_d: rv(inf_d),
            loc_e: rv(loc_e),
            loc_ei: rv(loc_ei),
            mid_t: rc(mid_t),
            mid_ti: rc(mid_ti),
            wm: wm.to_mp(prec),
            zm: zm.to_mp(prec),
            int0_b: rv(int0_b),
            int0_bi: rv(int0_bi),
            intl_g: rv(intl_g),
            intl_gi: rv(intl_gi),
        };
        let lo = lower(&mp);
        let lp = Float::new(prec);
        let roots: Vec<Cmp> = (0..n)
            .map(|j| Cx::cis(&(lp.pi() * 2.0 * (j as f64) / nf)))
            .collect();
        let mut g = Ngon {
            n,
            prec,
            tabs: Dual { mp, lo },
            roots: Dual::<CxVecOf>::from_mp(roots),
            gamma: Float::with_val(prec, gamma),
            r_le: (2.0 * (PI / nf).sin()).min(1.0),
            r_me: (2.0 * (PI / (2.0 * nf)).sin()).min(1.0),
            r_il: 2.0 * (PI / nf).sin(),
            ext_grid: vec![],
            int_grid: vec![],
        };
        g.build_grids();
        g
    }

    fn build_grids(&mut self) {
        let nf = self.n as f64;
        let mut ext = Vec::new();
        let mut int = Vec::new();
        for i in 0..=24 {
            let r = 3f64.powf(i as f64 / 24.0);
            let s = i as f64 / 24.0;
            for j in 0..=12 {
                let th = PI / nf * j as f64 / 12.0;
                let w = Cx::cis(&th).scale(&r);
                if let Ok((z, _)) = self.psi_sector(&w, false) {
                    ext.push((w, z));
                }
                let u = Cx::cis(&th).scale(&(s * 0.999));
                if let Ok((z, _)) = self.f_sector(&u) {
                    int.push((u, z));
                }
            }
        }
        self.ext_grid = ext;
        self.int_grid = int;
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub(crate) fn capacity(&self) -> Float {
        self.gamma.clone()
    }

    /// Vertices e^{2πik/N}.
    pub fn vertices(&self) -> Vec<C64> {
        self.roots.lo.clone()
    }

    /// Vertices at the working precision.
    pub fn vertices_mp(&self) -> &[Cmp] {
        &self.roots.mp
    }

    /// The spokes Γ_N: segments from the centre to each vertex.
    pub fn spokes(&self) -> Vec<(C64, C64)> {
        self.vertices()
            .into_iter()
            .map(|v| (C64::c64(0.0, 0.0), v))
            .collect()
    }

    /// Distance from z to Γ_N.
    pub fn distance_to_spokes(&self, z: &C64) -> f64 {
        self.spokes()
            .iter()
            .map(|(a, b)| segment_distance(z, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    pub(crate) fn boundary_arcs(&self) -> Vec<AnalyticArc> {
        let r = &self.roots.mp;
        (0..self.n as usize)
            .map(|k| AnalyticArc::segment(r[k].clone(), r[(k + 1) % self.n as usize].clone()))
            .collect()
    }

    pub(crate) fn corners(&self) -> Vec<CornerSpec> {
        let n = self.n;
        let order = if n == 3 || n == 4 { Some(n / (n - 2)) } else { None };
        self.vertices()
            .into_iter()
            .map(|v| CornerSpec {
                location: v,
                interior_angle: PI * (n as f64 - 2.0) / n as f64,
                order_m: order,
            })
            .collect()
    }

    /// Outward unit normals of the edges and the inradius cos(π/N).
    fn edge_normals<T: Real>(&self, like: &T) -> (Vec<Cx<T>>, T) {
        let nf = self.n as f64;
        let pi = like.pi();
        let normals = (0..self.n)
            .map(|k| Cx::cis(&(pi.clone() * ((2 * k + 1) as f64) / nf)))
            .collect();
        let c = (pi / nf).sin_cos().1;
        (normals, c)
    }

    pub(crate) fn signed_distance(&self, z: &C64) -> f64 {
        let (normals, c) = self.edge_normals(&0.0f64);
        let inside = normals.iter().all(|nk| z.re * nk.re + z.im * nk.im < c);
        let v = self.vertices();
        let n = v.len();
        let d = (0..n)
            .map(|k| segment_distance(z, &v[k], &v[(k + 1) % n]))
            .fold(f64::INFINITY, f64::min);
        if inside {
            -d
        } else {
            d
        }
    }

    fn reduce<T: Real>(&self, z: &Cx<T>) -> Reduced<T> {
        let n = self.n as usize;
        let zf = z.to_c64();
        let th = zf.im.atan2(zf.re);
        let k = ((th * self.n as f64 / (2.0 * PI)).round() as i64).rem_euclid(n as i64) as usize;
        let rot = &T::pick(&self.roots)[k];
        let mut p = z * &rot.conj();
        let conj = p.im < 0.0;
        if conj {
            p = p.conj();
        }
        p.im = p.im.abs();
        Reduced { k, conj, p }
    }

    fn unreduce<T: Real>(&self, r: &Reduced<T>, v: Cx<T>) -> Cx<T> {
        let v = if r.conj { v.conj() } else { v };
        &v * &T::pick(&self.roots)[r.k]
    }

    /// ψ and ψ' for a point of the fundamental sector.
    fn psi_sector<T: Real>(&self, w: &Cx<T>, allow_inside: bool) -> Result<(Cx<T>, Cx<T>)> {
        let t: &Tabs<T> = self.tabs.get::<T>();
        let wf = w.to_c64();
        let r = wf.abs();
        if !allow_inside && r < 1.0 - 1e-12 {
            return Err(Error::Domain(format!("ψ needs |w| ≥ 1, got {r}")));
        }
        let q_inf = if r > 1.0 { r.powi(-(self.n as i32)) } else { f64::INFINITY };
        let q_loc = (&wf - &C64::c64(1.0, 0.0)).abs() / self.r_le;
        let q_mid = (&wf - &t.wm.to_c64()).abs() / self.r_me;
        let bits = w.re.prec() + 8;
        let q = q_inf.min(q_loc).min(q_mid);
        if q > MAX_RATIO {
            return Err(Error::Domain(format!("no convergent expansion of ψ at w = {wf:?}")));
        }
        let cap = t.inf_a.len();
        if q == q_inf {
            let m = terms(q, bits, cap);
            let y = w.powi(-(self.n as i64));
            let s = horner_r(&t.inf_d[..m], &y);
            let d = horner_r(&t.inf_a[..m], &y);
            Ok(((w * &s).scale(&t.c), d.scale(&t.c)))
        } else if q == q_loc {
            let m = terms(q, bits, cap);
            let x = w - &w.one_like();
            let xp = x.powr(&t.two_n);
            let e = horner_r(&t.loc_e[..m], &x);
            let ei = horner_r(&t.loc_ei[..m], &x);
            let mut z = (&(&x * &xp) * &ei).scale(&t.c);
            z.re += 1.0;
            Ok((z, (&xp * &e).scale(&t.c)))
        } else {
            let m = terms(q, bits, cap);
            let x = w - &t.wm;
            let s = crate::num::horner(&t.mid_ti[..m], &x);
            let d = crate::num::horner(&t.mid_t[..m], &x);
            Ok((&t.zm + &(&x * &s).scale(&t.c), d.scale(&t.c)))
        }
    }

    /// f and f' (the forward interior map) for a sector point |u| ≤ 1.
    fn f_sector<T: Real>(&self, u: &Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
        let t: &Tabs<T> = self.tabs.get::<T>();
        let uf = u.to_c64();
        let q0 = uf.abs().powi(self.n as i32);
        let s = &u.one_like() - u;
        let q1 = s.to_c64().abs() / self.r_il;
        let q = q0.min(q1);
        if q > MAX_RATIO {
            return Err(Error::Domain(format!("no convergent expansion of the interior map at u = {uf:?}")));
        }
        let bits = u.re.prec() + 8;
        let cap = t.int0_b.len();
        let m = terms(q, bits, cap);
        if q == q0 {
            let v = u.powi(self.n as i64);
            let fi = horner_r(&t.int0_bi[..m], &v);
            let fd = horner_r(&t.int0_b[..m], &v);
            Ok(((u * &fi).scale(&t.k), fd.scale(&t.k)))
        } else {
            if s.re == 0.0 && s.im == 0.0 {
                // At the prevertex itself f' is infinite; report the value only.
                let inf = u.c(f64::INFINITY, 0.0);
                return Ok((u.one_like(), inf));
            }
            let sp = s.powr(&(-t.two_n.clone()));
            let gi = horner_r(&t.intl_gi[..m], &s);
            let g = horner_r(&t.intl_g[..m], &s);
            let z = &u.one_like() - &(&(&s * &sp) * &gi).scale(&t.k);
            Ok((z, (&sp * &g).scale(&t.k)))
        }
    }

    /// ψ(w), ψ'(w); with `allow_inside` the analytic continuation slightly
    /// inside the unit circle is returned where an expansion converges.
    pub(crate) fn psi<T: Real>(&self, w: &Cx<T>, allow_inside: bool) -> Result<(Cx<T>, Cx<T>)> {
        let r = self.reduce(w);
        let (z, dz) = self.psi_sector(&r.p, allow_inside)?;
        let dz = if r.conj { dz.conj() } else { dz };
        Ok((self.unreduce(&r, z), dz))
    }

    /// φ(z), φ'(z) for z in the closed exterior.
    pub(crate) fn phi<T: Real>(&self, z: &Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
        let zf = z.to_c64();
        if self.signed_distance(&zf) < -1e-12 {
            return Err(Error::Domain(format!("φ needs z outside the polygon, got {zf:?}")));
        }
        let r = self.reduce(z);
        let fail = || Error::MapInversionFailure { re: zf.re, im: zf.im };
        let z1 = r.p.to_c64();
        let t = &self.tabs.lo;
        let w0 = if (&z1 - &C64::c64(1.0, 0.0)).abs() < 0.25 {
            // ψ − 1 ≈ C e_0 x^{1+2/N}/(1+2/N)
            let base = (&z1 - &C64::c64(1.0, 0.0)).scale(&((1.0 + t.two_n) / (t.c * t.loc_e[0])));
            let mut w = base.powr(&(1.0 / (1.0 + t.two_n)));
            w.re += 1.0;
            w
        } else if z1.abs() > 3.0 {
            z1.scale(&(1.0 / t.c))
        } else {
            nearest(&self.ext_grid, &z1)
        };
        let f64fun = |w: &C64| self.psi_sector(w, true).ok();
        let w1 = newton::solve(f64fun, &z1, w0).ok_or_else(fail)?;
        let w = if z.re.prec() <= 53 {
            Cx::conv_from(&z.re, &w1)
        } else {
            let w0 = Cx::conv_from(&z.re, &w1);
            let fun = |w: &Cx<T>| self.psi_sector(w, true).ok();
            newton::solve(fun, &r.p, w0).ok_or_else(fail)?
        };
        let (_, dpsi) = self.psi_sector(&w, true)?;
        let dphi = dpsi.recip();
        let dphi = if r.conj { dphi.conj() } else { dphi };
        Ok((self.unreduce(&r, w), dphi))
    }

    /// Inverse of the interior map for z in the closed polygon.
    fn varphi_closure<T: Real>(&self, z: &Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
        let zf = z.to_c64();
        let r = self.reduce(z);
        let z1 = r.p.to_c64();
        let t = &self.tabs.lo;
        let fail = || Error::MapInversionFailure { re: zf.re, im: zf.im };
        if (&z1 - &C64::c64(1.0, 0.0)).abs() == 0.0 {
            // The vertex itself: varphi' vanishes there.
            return Ok((self.unreduce(&r, z.one_like()), z.zero_like()));
        }
        let u0 = if (&z1 - &C64::c64(1.0, 0.0)).abs() < 0.25 {
            // 1 − f ≈ K g_0 s^{1−2/N}/(1−2/N)
            let g0 = t.intl_g[0];
            let base = (&C64::c64(1.0, 0.0) - &z1).scale(&((1.0 - t.two_n) / (t.k * g0)));
            let s = base.powr(&(1.0 / (1.0 - t.two_n)));
            &C64::c64(1.0, 0.0) - &s
        } else if z1.abs() < 0.2 {
            z1.scale(&(1.0 / t.k))
        } else {
            nearest(&self.int_grid, &z1)
        };
        let f64fun = |u: &C64| self.f_sector(u).ok();
        let u1 = newton::solve(f64fun, &z1, u0).ok_or_else(fail)?;
        let u = if z.re.prec() <= 53 {
            Cx::conv_from(&z.re, &u1)
        } else {
            let u0 = Cx::conv_from(&z.re, &u1);
            let fun = |u: &Cx<T>| self.f_sector(u).ok();
            newton::solve(fun, &r.p, u0).ok_or_else(fail)?
        };
        let (_, df) = self.f_sector(&u)?;
        let dv = df.recip();
        let dv = if r.conj { dv.conj() } else { dv };
        Ok((self.unreduce(&r, u), dv))
    }

    /// varphi continued by Schwarz reflection across the edges (N ≤ 4, where
    /// reflections tile the plane); for N ≥ 5 only on the closed polygon.
    pub(crate) fn varphi<T: Real>(&self, z: &Cx<T>) -> Result<MVal<T>> {
        let (normals, c) = self.edge_normals(&z.re);
        let mut cur = z.clone();
        let mut a = z.one_like();
        let mut odd = false;
        for _ in 0..400 {
            // most violated edge line
            let mut worst: Option<(usize, T)> = None;
            for (k, nk) in normals.iter().enumerate() {
                let proj = cur.re.clone() * &nk.re + cur.im.clone() * &nk.im - &c;
                if proj > 0.0 && worst.as_ref().map_or(true, |(_, p)| proj > *p) {
                    worst = Some((k, proj));
                }
            }
            let Some((k, proj)) = worst else { break };
            if self.n > 4 {
                if proj.to_f64() > 1e-10 {
                    return Err(Error::Unavailable("interior map outside the polygon"));
                }
                break;
            }
            // reflection ζ ↦ 2c n − n² conj(ζ)
            let nk = &normals[k];
            let n2 = -(nk * nk);
            cur = &(&n2 * &cur.conj()) + &nk.scale(&(c.clone() * 2.0));
            a = &n2 * &a.conj();
            odd = !odd;
        }
        let (g, gp) = self.varphi_closure(&cur)?;
        if !odd {
            return Ok(MVal::Finite { value: g, deriv: &gp * &a });
        }
        if g.re == 0.0 && g.im == 0.0 {
            return Ok(MVal::Pole);
        }
        let gc = g.conj();
        let value = gc.recip();
        let deriv = -(&(&gp * &a).conj() / &(&gc * &gc));
        Ok(MVal::Finite { value, deriv })
    }

    /// Zeros of the continued interior map outside the polygon with
    /// |ζ| < `radius`: the centres of even-parity reflected tiles.
    pub(crate) fn exterior_zeros_of_varphi(&self, radius: f64) -> Vec<Cmp> {
        self.tile_centres(radius)
            .into_iter()
            .filter(|(c, odd)| !odd && c.to_c64().abs() > 1e-9)
            .map(|(c, _)| c)
            .collect()
    }

    /// Centres of the reflected copies of the polygon within `radius`,
    /// with their parity (odd copies carry poles of varphi, even ones zeros).
    pub(crate) fn tile_centres(&self, radius: f64) -> Vec<(Cmp, bool)> {
        let like = Float::new(self.prec);
        let (normals, c) = self.edge_normals(&like);
        // a tile is described by its centre, parity and the map sending the
        // base tile onto it: ζ ↦ A ζ + B (even) or A conj(ζ) + B (odd)
        let mut seen: Vec<C64> = vec![C64::c64(0.0, 0.0)];
        let zero = Cx::lit(&like, 0.0, 0.0);
        let mut queue = vec![(zero.clone(), zero.one_like(), zero.clone(), false)];
        let mut out = Vec::new();
        while let Some((centre, a, b, odd)) = queue.pop() {
            out.push((centre.clone(), odd));
            for nk in &normals {
                // reflect the tile across the image of the base edge line
                let base_ref_b = nk.scale(&(c.clone() * 2.0));
                let n2 = -(nk * nk);
                // new map: T ∘ R where R(ζ) = n2 conj(ζ) + base_ref_b
                let (na, nb, nodd) = if odd {
                    // T(ζ) = A conj(ζ) + B
                    (&a * &n2.conj(), &(&a * &base_ref_b.conj()) + &b, false)
                } else {
                    (&a * &n2, &(&a * &base_ref_b) + &b, true)
                };
                let nc = nb.clone();
                let ncf = nc.to_c64();
                if ncf.abs() > radius {
                    continue;
                }
                if seen.iter().any(|s| (s - &ncf).abs() < 1e-6) {
                    continue;
                }
                seen.push(ncf);
                queue.push((nc, na, nb, nodd));
            }
        }
        out.sort_by(|x, y| {
            let (a, b) = (x.0.to_c64(), y.0.to_c64());
            (a.abs(), a.arg()).partial_cmp(&(b.abs(), b.arg())).unwrap()
        });
        out
    }
}

fn nearest(grid: &[(C64, C64)], target: &C64) -> C64 {
    grid.iter()
        .min_by(|a, b| {
            (&a.1 - target)
                .abs()
                .partial_cmp(&(&b.1 - target).abs())
                .unwrap()
        })
        .map(|p| p.0.clone())
        .unwrap_or_else(|| target.clone())
}

