use rug::Float;

use super::*;
use crate::num::{Lcg, C64};

const P: u32 = 256;

fn tol(bits: i32) -> Float {
    Float::with_val(P, 1) << bits
}

fn catalog() -> Vec<DomainModel> {
    let mut v = vec![
        DomainModel::disk(P),
        DomainModel::ellipse(&Float::with_val(P, 1.5)).unwrap(),
        DomainModel::lens(P),
    ];
    for n in [3, 4, 5] {
        v.push(DomainModel::regular_ngon(n, P).unwrap());
    }
    v
}

#[test]
fn disk_is_the_identity() {
    let d = DomainModel::disk(P);
    assert_eq!(d.phi64(C64::c64(2.0, 0.0)).unwrap(), C64::c64(2.0, 0.0));
    assert_eq!(d.capacity(), 1.0);
    assert!(d.corners().is_empty());
    assert_eq!(d.class_tag(), DomainClass::Analytic);
}

#[test]
fn spec_strings_round_trip() {
    for s in ["disk", "ellipse:rho=1.5", "ngon:N=4", "lens"] {
        let spec = DomainSpec::parse(s).unwrap();
        assert_eq!(spec.to_string(), s);
    }
    assert!(DomainSpec::parse("ellipse:rho=0.5").unwrap().build(P).is_err());
    assert!(DomainSpec::parse("blob").is_err());
    assert!(DomainModel::regular_ngon(2, P).is_err());
}

#[test]
fn ellipse_inverse_pair_and_axes() {
    let d = DomainModel::ellipse(&Float::with_val(P, 1.5)).unwrap();
    let z = d.cmp(3.0, 0.5);
    let (w, _) = d.phi(&z).unwrap();
    let (back, _) = d.psi(&w).unwrap();
    assert!((&back - &z).abs() < tol(-200));
    // parameter 0 lands on the end of the major semiaxis (rho + 1/rho)/2
    let (b0, _) = d.arcs()[0].eval(&0.0);
    assert!((b0.re - 0.5 * (1.5 + 1.0 / 1.5)).abs() < 1e-15 && b0.im.abs() < 1e-15);
    assert!(matches!(d.varphi(&z), Err(Error::Unavailable(_))));
}

#[test]
fn ellipse_capacity_matches_extrapolated_limit() {
    let rho = Float::with_val(P, 1.5);
    let d = DomainModel::ellipse(&rho).unwrap();
    let gamma = d.capacity();
    let exact = Float::with_val(P, 2) / &rho;
    assert!((gamma.clone() - &exact).abs() < tol(-200));
    // φ(z)/z = γ + O(z^-2): Richardson on R and 2R removes the z^-2 term.
    let ratio = |r: f64| {
        let z = d.cmp(r, 0.0);
        let (f, _) = d.phi(&z).unwrap();
        (&f / &z).re
    };
    let (a, b) = (ratio(1e6), ratio(2e6));
    let rich: Float = (b * 4.0 - a) / 3.0;
    assert!((rich - &gamma).abs() < 1e-20);
}

#[test]
fn polygon_corner_metadata() {
    let sq = DomainModel::regular_ngon(4, P).unwrap();
    let locs: Vec<C64> = sq.corners().iter().map(|c| c.location.clone()).collect();
    for (got, want) in locs.iter().zip([(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]) {
        assert!((got - &C64::c64(want.0, want.1)).abs() < 1e-15);
    }
    assert!(sq.corners().iter().all(|c| c.order_m == Some(2)));
    assert!((sq.corners()[0].interior_angle - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    let tri = DomainModel::regular_ngon(3, P).unwrap();
    assert_eq!(tri.corners()[0].order_m, Some(3));
    assert!((tri.corners()[0].interior_angle - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
    assert_eq!(tri.class_tag(), DomainClass::Corner);
    assert_eq!(DomainModel::regular_ngon(5, P).unwrap().class_tag(), DomainClass::Singular);
}

#[test]
fn lens_metadata_and_maps() {
    let d = DomainModel::lens(P);
    assert_eq!(d.corners().len(), 2);
    assert!(d.corners().iter().all(|c| c.order_m == Some(2)));
    let zero = d.cmp(0.0, 0.0);
    let (v, _) = d.varphi(&zero).unwrap().finite().unwrap();
    assert!(v.abs() < tol(-250));
    let z = d.cmp(2.0, 0.0);
    let (w, _) = d.phi(&z).unwrap();
    let (back, _) = d.psi(&w).unwrap();
    assert!((&back - &z).abs() < tol(-200));
    assert!((d.capacity() - 1.5f64).abs() < tol(-250));
}

#[test]
fn inverse_pair_on_random_exterior_points() {
    for d in catalog() {
        let mut rng = Lcg::new(11);
        let mut worst = Float::with_val(P, 0);
        for _ in 0..100 {
            let r = rng.uniform(1.05, 3.0);
            let th = rng.uniform(0.0, 2.0 * std::f64::consts::PI);
            let w = Cx::cis(&d.cmp(th, 0.0).re).scale(&d.cmp(r, 0.0).re);
            let (z, _) = d.psi(&w).unwrap();
            let (w2, _) = d.phi(&z).unwrap();
            let (z2, _) = d.psi(&w2).unwrap();
            worst = worst.max(&(&z2 - &z).abs());
        }
        assert!(worst < tol(8 - P as i32), "{}: residual {}", d.name(), worst.to_f64());
    }
}

#[test]
fn boundary_maps_to_the_unit_circle() {
    for d in catalog() {
        let mut worst = Float::with_val(P, 0);
        for arc in d.arcs() {
            for i in 1..16 {
                let t = Float::with_val(P, i) / 16u32;
                let (z, dz) = arc.eval(&t);
                assert!(dz.abs() > 0.0);
                let (w, _) = d.phi(&z).unwrap();
                worst = worst.max(&(w.abs() - 1.0f64).abs());
            }
        }
        assert!(worst < tol(16 - P as i32), "{}: {}", d.name(), worst.to_f64());
    }
}

#[test]
fn interior_map_is_normalized() {
    for d in catalog().into_iter().filter(|d| d.has_interior_map()) {
        let b = d.base_point();
        let z = d.cmp(b.re, b.im);
        let (v, dv) = d.varphi(&z).unwrap().finite().unwrap();
        assert!(v.abs() < tol(16 - P as i32), "{}", d.name());
        assert!(dv.re > 0.0 && dv.im.clone().abs() < tol(16 - P as i32), "{}", d.name());
    }
}

#[test]
fn square_psi_derivative_vanishes_like_square_root_at_prevertices() {
    let d = DomainModel::regular_ngon(4, P).unwrap();
    for k in 0..4 {
        let wk = Cx::cis(&(d.cmp(0.0, 0.0).re.pi() * (k as f64) / 2.0));
        let at = |delta: f64| {
            // approach radially from outside
            let w = wk.scale(&d.cmp(1.0 + delta, 0.0).re);
            let (_, dpsi) = d.psi(&w).unwrap();
            dpsi.abs().to_f64().ln()
        };
        let slope = (at(1e-3) - at(1e-6)) / (1e-3f64.ln() - 1e-6f64.ln());
        assert!((slope - 0.5).abs() < 0.05, "prevertex {k}: slope {slope}");
    }
}

#[test]
fn polygon_series_cover_the_exterior_and_interior() {
    for n in 3..=12 {
        let d = DomainModel::regular_ngon(n, 64).unwrap();
        for i in 0..=40 {
            let th = 2.0 * std::f64::consts::PI * i as f64 / 40.0;
            for r in [1.0, 1.001, 1.3, 2.0, 10.0] {
                let w = C64::c64(r * th.cos(), r * th.sin());
                assert!(d.psi(&w).is_ok(), "N={n} psi at {w:?}");
            }
            for s in [0.0, 0.3, 0.7, 0.99, 1.0] {
                let z = C64::c64(s * th.cos(), s * th.sin());
                let z = z.scale(&(std::f64::consts::PI / n as f64).cos());
                assert!(d.varphi(&z).is_ok(), "N={n} varphi at {z:?}");
            }
        }
    }
}

#[test]
fn h_is_unimodular_on_the_circle_and_reflection_agrees_with_direct() {
    let d = DomainModel::regular_ngon(4, P).unwrap();
    let mut rng = Lcg::new(3);
    for _ in 0..12 {
        // stay away from the prevertices, where the continuation branches
        let th = std::f64::consts::FRAC_PI_2 * rng.uniform(0.15, 0.85) + rng.uniform(0.0, 4.0).floor() * std::f64::consts::FRAC_PI_2;
        let on = Cx::cis(&d.cmp(th, 0.0).re);
        let (v, _) = d.h(&on).unwrap().finite().unwrap();
        assert!((v.abs() - 1.0f64).abs() < tol(32 - P as i32));
        let r = rng.uniform(0.98, 0.999);
        let w = on.scale(&d.cmp(r, 0.0).re);
        let (a, da) = d.h(&w).unwrap().finite().unwrap();
        let (b, db) = d.h_direct(&w).unwrap().finite().unwrap();
        assert!((&a - &b).abs() < tol(48 - P as i32), "value gap {}", (&a - &b).abs().to_f64());
        assert!((&da - &db).abs() < tol(48 - P as i32));
    }
}

#[test]
fn h_derivative_matches_finite_difference() {
    let d = DomainModel::regular_ngon(3, P).unwrap();
    for w in [C64::c64(1.2, 0.4), C64::c64(0.5, 0.6), C64::c64(-0.7, 0.2)] {
        let (_, dh) = d.h(&w).unwrap().finite().unwrap();
        let e = 1e-6;
        let hp = d.h(&(&w + &C64::c64(e, 0.0))).unwrap().finite().unwrap().0;
        let hm = d.h(&(&w - &C64::c64(e, 0.0))).unwrap().finite().unwrap().0;
        let fd = (&hp - &hm).scale(&(0.5 / e));
        assert!((&fd - &dh).abs() < 1e-6 * dh.abs().max(1.0), "w={w:?}");
    }
}

#[test]
fn varphi_continuation_has_zeros_at_even_tiles() {
    let sq = d_square();
    let g = sq.as_ngon().unwrap();
    let zeros = g.exterior_zeros_of_varphi(3.0);
    assert!(!zeros.is_empty());
    for z in &zeros {
        // the centre of an even reflected tile
        let v = sq.varphi(z).unwrap();
        let (val, _) = v.finite().unwrap();
        assert!(val.abs() < tol(16 - P as i32), "at {:?}", z.to_c64());
    }
    for (c, odd) in g.tile_centres(3.0) {
        if odd {
            // reflection lands within rounding of the base zero, so the pole
            // shows up either exactly or as a value near the overflow scale
            match sq.varphi(&c).unwrap() {
                MVal::Pole => {}
                MVal::Finite { value, .. } => assert!(value.abs() > tol(P as i32 - 40)),
            }
        }
    }
    // poles of h inside the unit circle are genuine: |h| blows up nearby
    for p in sq.h_poles_inside(0.3).unwrap() {
        let near = &p + &sq.cmp(1e-8, 0.0);
        let (v, _) = sq.h(&near).unwrap().finite().unwrap();
        assert!(v.abs() > 1e3);
    }
}

fn d_square() -> DomainModel {
    DomainModel::regular_ngon(4, P).unwrap()
}

#[test]
fn signed_distance_signs() {
    for d in catalog() {
        assert!(d.contains(&C64::c64(0.0, 0.0)), "{}", d.name());
        assert!(!d.contains(&C64::c64(5.0, 0.0)), "{}", d.name());
    }
    let sq = d_square();
    assert!((sq.signed_distance(&C64::c64(0.0, 0.0)) + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
}
