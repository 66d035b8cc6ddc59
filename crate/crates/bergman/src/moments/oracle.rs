//! Independent two-dimensional tensor-product quadrature of area moments,
//! used to cross-check the boundary-integral route.

use rug::Float;

use crate::error::{Error, Result};
use crate::geometry::DomainModel;
use crate::num::{gauss_legendre, Cmp, Cx, Real};

/// ∫_D z^j conj(z)^k dA/π by a tensor rule over the interior:
/// polar coordinates (trapezoid in angle, Gauss–Legendre in radius) for the
/// disk and ellipse, and a fan of triangles from the centre for polygons.
/// Every rule used is exact for the polynomial integrands involved.
pub fn area_moment_oracle(d: &DomainModel, j: usize, k: usize) -> Result<Cmp> {
    let prec = d.precision();
    let like = Float::new(prec);
    let deg = j + k + 2;
    let rule = gauss_legendre(deg / 2 + 2, prec);
    let xs = rule.nodes.get::<Float>();
    let ws = rule.weights.get::<Float>();
    // map [-1, 1] → [0, 1]
    let unit = |x: &Float| (x.clone() + 1.0) / 2.0;
    let mut acc = Cx::lit(&like, 0.0, 0.0);
    let pi = like.pi();
    let (a, b) = if d.is_disk() {
        (like.one(), like.one())
    } else if let Some(rho) = d.ellipse_rho() {
        let r = Float::with_val(prec, rho);
        let ri = r.clone().recip();
        (
            Float::with_val(prec, &r + &ri) / 2u32,
            Float::with_val(prec, &r - &ri) / 2u32,
        )
    } else if let Some(g) = d.as_ngon() {
        let verts = g.vertices_mp();
        let n = verts.len();
        for e in 0..n {
            let va = &verts[e];
            let vb = &verts[(e + 1) % n];
            let edge = vb - va;
            // |Im(conj(a)·(b − a))| is twice the triangle area
            let jac = (&va.conj() * &edge).im.abs();
            for (xs_, wsn) in xs.iter().zip(ws) {
                let s = unit(xs_);
                for (xt, wt) in xs.iter().zip(ws) {
                    let t = unit(xt);
                    let z = (va + &edge.scale(&t)).scale(&s);
                    let f = &z.powi(j as i64) * &z.conj().powi(k as i64);
                    let w = wsn.clone() * wt * &s * &jac / 4.0;
                    acc += f.scale(&w);
                }
            }
        }
        return Ok(acc.scale(&pi.recip()));
    } else {
        return Err(Error::Unavailable("tensor-product area quadrature"));
    };
    // z = r (a cos θ + i b sin θ), dA = a b r dr dθ; trapezoid in θ is exact
    // for trigonometric polynomials of degree below the sample count.
    let m = deg + 2;
    for i in 0..m {
        let th = pi.clone() * 2.0 * (i as f64) / (m as f64);
        let (s, c) = Real::sin_cos(&th);
        let dir = Cx::new(c * &a, s * &b);
        for (x, w) in xs.iter().zip(ws) {
            let r = unit(x);
            let z = dir.scale(&r);
            let f = &z.powi(j as i64) * &z.conj().powi(k as i64);
            acc += f.scale(&(w.clone() * &r / 2.0));
        }
    }
    // (2π/m)·a·b/π
    let scale = Float::with_val(prec, &a * &b) * 2u32 / (m as u32);
    Ok(acc.scale(&scale))
}
