//! The lens {|z+1| < √2} ∩ {|z−1| < √2}: all maps are closed form.
//!
//! With m = (z−i)/(z+i) the lens is the sector |arg m − π| < π/4 and the
//! exterior its complement of opening 3π/2; t = m^{2/3} opens the exterior
//! to the right half-plane, which a Möbius map sends to |w| > 1.

use super::MVal;
use crate::num::{Cx, Real, C64};

pub(crate) fn psi<T: Real>(w: &Cx<T>) -> (Cx<T>, Cx<T>) {
    let i = w.c(0.0, 1.0);
    let wp = w + &i;
    let t = &(w - &i) / &wp;
    let st = t.sqrt();
    // m = t^{3/2} on the principal branch
    let m = &t * &st;
    let one = w.one_like();
    let om = &one - &m;
    let z = &(&one + &m).mul_i() / &om;
    // dz/dm = 2i/(1−m)², dm/dt = (3/2)√t, dt/dw = 2i/(w+i)²
    let dzdm = &w.c(0.0, 2.0) / &(&om * &om);
    let dmdt = st.scale_f(1.5);
    let dtdw = &w.c(0.0, 2.0) / &(&wp * &wp);
    (z, &(&dzdm * &dmdt) * &dtdw)
}

pub(crate) fn phi<T: Real>(z: &Cx<T>) -> (Cx<T>, Cx<T>) {
    let i = z.c(0.0, 1.0);
    let zp = z + &i;
    let m = &(z - &i) / &zp;
    let two_thirds = z.re.lit(2.0) / 3.0;
    let t = m.powr(&two_thirds);
    let one = z.one_like();
    let tm = &t - &one;
    let w = (&(&t + &one) / &tm).mul_i().scale_f(-1.0);
    // dφ/dt = 2i/(t−1)², dt/dm = (2/3)t/m, dm/dz = 2i/(z+i)²
    let dwdt = &z.c(0.0, 2.0) / &(&tm * &tm);
    let dtdm = (&t / &m).scale(&two_thirds);
    let dmdz = &z.c(0.0, 2.0) / &(&zp * &zp);
    (w, &(&dwdt * &dtdm) * &dmdz)
}

/// varphi(z) = 2z/(1 − z²), meromorphic in the plane with poles at ±1.
pub(crate) fn varphi<T: Real>(z: &Cx<T>) -> MVal<T> {
    let one = z.one_like();
    let z2 = z * z;
    let den = &one - &z2;
    if den.re == 0.0 && den.im == 0.0 {
        return MVal::Pole;
    }
    let value = &z.scale_f(2.0) / &den;
    let deriv = &(&one + &z2).scale_f(2.0) / &(&den * &den);
    MVal::Finite { value, deriv }
}

/// h(w) = varphi(ψ(w)) = i(1 − t³)/(1 + t³) with t = (w−i)/(w+i); rational,
/// hence valid on the whole plane.
pub(crate) fn h<T: Real>(w: &Cx<T>) -> MVal<T> {
    let i = w.c(0.0, 1.0);
    let wp = w + &i;
    let t = &(w - &i) / &wp;
    let t2 = &t * &t;
    let t3 = &t2 * &t;
    let one = w.one_like();
    let den = &one + &t3;
    if den.re == 0.0 && den.im == 0.0 {
        return MVal::Pole;
    }
    let value = &(&one - &t3).mul_i() / &den;
    let dtdw = &w.c(0.0, 2.0) / &(&wp * &wp);
    let deriv = &(&t2.mul_i().scale_f(-6.0) / &(&den * &den)) * &dtdw;
    MVal::Finite { value, deriv }
}

fn arc_distance(z: &C64, center: f64, th0: f64, th1: f64) -> f64 {
    let r = std::f64::consts::SQRT_2;
    let d = C64::c64(z.re - center, z.im);
    let mut th = d.arg();
    if th < th0 {
        th += 2.0 * std::f64::consts::PI;
    }
    if th <= th1 {
        return (d.abs() - r).abs();
    }
    let e0 = C64::c64(center + r * th0.cos(), r * th0.sin());
    let e1 = C64::c64(center + r * th1.cos(), r * th1.sin());
    (z - &e0).abs().min((z - &e1).abs())
}

pub(crate) fn signed_distance(z: &C64) -> f64 {
    use std::f64::consts::FRAC_PI_4 as Q;
    let d = arc_distance(z, -1.0, -Q, Q).min(arc_distance(z, 1.0, 3.0 * Q, 5.0 * Q));
    let r = std::f64::consts::SQRT_2;
    let inside = C64::c64(z.re + 1.0, z.im).abs() < r && C64::c64(z.re - 1.0, z.im).abs() < r;
    if inside {
        -d
    } else {
        d
    }
}
