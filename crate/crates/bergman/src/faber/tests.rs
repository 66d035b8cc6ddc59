use proptest::prelude::*;
use rug::ops::Pow;
use rug::Float;

use super::*;
use crate::moments::{gram, orthonormalize, QuadratureScheme};
use crate::num::C64;

const P: u32 = 256;

fn tol(bits: i32) -> Float {
    Float::with_val(P, 1) << bits
}

fn square() -> DomainModel {
    DomainModel::regular_ngon(4, P).unwrap()
}

struct Setup {
    d: DomainModel,
    m: MomentMatrix,
    sys: OrthonormalSystem,
    fab: FaberSystem,
}

fn setup(d: DomainModel, n: usize) -> Setup {
    let l = psi_laurent_auto(&d).unwrap();
    let fab = faber_polys(&d, &l, n).unwrap();
    let m = gram(&d, n, &QuadratureScheme::default()).unwrap();
    let sys = orthonormalize(&m).unwrap();
    Setup { d, m, sys, fab }
}

#[test]
fn laurent_coefficients_of_closed_form_maps() {
    let disk = DomainModel::disk(P);
    let l = psi_laurent(&disk, &Float::with_val(P, 2), 16).unwrap();
    assert_eq!(l.lead, 1.0);
    assert!(l.coeffs.iter().all(|c| c.abs() < tol(-200)));

    let rho = Float::with_val(P, 1.5);
    let e = DomainModel::ellipse(&rho).unwrap();
    let l = psi_laurent(&e, &Float::with_val(P, 2), 16).unwrap();
    assert!((l.lead.clone() - Float::with_val(P, &rho / 2u32)).abs() < tol(-250));
    let c1 = Float::with_val(P, 1) / (rho * 2u32);
    for (k, c) in l.coeffs.iter().enumerate() {
        let want = if k == 1 { c1.clone() } else { Float::with_val(P, 0) };
        assert!((c.re.clone() - &want).abs() < tol(-200) && c.im.clone().abs() < tol(-200), "c_{k}");
    }
}

#[test]
fn square_laurent_passes_the_tail_test_on_the_default_circle_only() {
    let d = square();
    let l = psi_laurent_auto(&d).unwrap();
    assert!(l.tail_error < tol(32 - P as i32));
    assert!(l.count() <= 512);
    // close to the unit circle the coefficients decay too slowly for M = 64
    let near = psi_laurent(&d, &(Float::with_val(P, 13) / 10u32), 64);
    assert!(matches!(near, Err(Error::LaurentTail { .. })));
    assert!(psi_laurent(&d, &Float::with_val(P, 1), 8).is_err());
}

#[test]
fn disk_faber_polynomials_are_monomials() {
    let s = setup(DomainModel::disk(P), 12);
    for n in 0..=12 {
        for (k, c) in s.fab.f[n].iter().enumerate() {
            let want: f64 = if k == n { 1.0 } else { 0.0 };
            assert!((c.re.clone() - want).abs() < tol(-240) && c.im.clone().abs() < tol(-240));
        }
        assert_eq!(s.fab.g[n].len(), n + 1);
        assert!((s.fab.g[n][n].re.clone() - 1.0f64).abs() < tol(-240));
        assert!(epsilon_nn(&s.m, &s.fab, n).unwrap().abs() < tol(-240));
        assert!(beta_nn(&s.sys, &s.fab, &s.m, n).unwrap().abs() < tol(-240));
    }
}

#[test]
fn faber_routes_agree_and_leading_coefficients_are_capacity_powers() {
    for d in [
        DomainModel::ellipse(&Float::with_val(P, 1.5)).unwrap(),
        DomainModel::lens(P),
        DomainModel::regular_ngon(3, P).unwrap(),
    ] {
        let l = psi_laurent_auto(&d).unwrap();
        let fab = faber_polys(&d, &l, 48).unwrap();
        assert!(fab.route_gap < tol(48 - P as i32), "{}", d.name());
        let gamma = d.capacity();
        for n in [1usize, 10, 48] {
            let want = Float::with_val(P, gamma.clone().pow(n as u32));
            assert!((fab.f[n][n].re.clone() - &want).abs() < want.clone() * tol(32 - P as i32));
            let want = Float::with_val(P, gamma.clone().pow(n as u32 + 1));
            assert!((fab.g[n][n].re.clone() - &want).abs() < want.clone() * tol(32 - P as i32));
        }
    }
}

#[test]
fn faber_needs_enough_laurent_coefficients() {
    let d = square();
    let l = psi_laurent(&d, &Float::with_val(P, 2), 8);
    if let Ok(l) = l {
        assert!(matches!(faber_polys(&d, &l, 20), Err(Error::InvalidParameter(_))));
    }
}

#[test]
fn faber_remainder_decays_outside_the_domain() {
    // |φ(z)^n − F_n(z)| → 0 at a fixed exterior point with |φ(z)| = 1.5
    let d = square();
    let l = psi_laurent_auto(&d).unwrap();
    let fab = faber_polys(&d, &l, 32).unwrap();
    let w = Cx::cis(&Float::with_val(P, 0.4)).scale(&Float::with_val(P, 1.5));
    let (z, _) = d.psi(&w).unwrap();
    let rem = |n: usize| (&w.powi(n as i64) - &fab.eval_f(n, &z)).abs().to_f64();
    let (r8, r16, r32) = (rem(8), rem(16), rem(32));
    assert!(r16 < r8 && r32 < r16, "{r8} {r16} {r32}");
}

#[test]
fn square_tables_satisfy_the_identities() {
    let s = setup(square(), 32);
    let gamma = s.d.capacity();
    for n in 0..=32 {
        let eps = epsilon_nn(&s.m, &s.fab, n).unwrap();
        let beta = beta_nn(&s.sys, &s.fab, &s.m, n).unwrap();
        assert!(eps >= 0.0 && eps < 1.0 && beta >= 0.0);
        assert!(identity_residual(&s.sys, &s.fab, &s.m, n).unwrap().abs() < 1e-20);
        // (n+1)·ε_{n,n} stays bounded
        let scaled = Float::with_val(P, &eps * (n as u32 + 1));
        assert!(scaled < 1.0);
    }
    let a = AlphaTable::build(&s.d, &s.sys, 32).unwrap();
    assert!(a.max_below_diagonal(24) < 1e-18);
    for n in [0usize, 5, 17, 32] {
        let want = s.sys.leading(n).unwrap() / Float::with_val(P, gamma.clone().pow(n as u32 + 1));
        assert!((a.get(n, n).re.clone() - &want).abs() < tol(-200) && a.get(n, n).im.clone().abs() < tol(-200));
    }
}

#[test]
fn disk_alpha_and_recursion_rows_are_trivial() {
    let s = setup(DomainModel::disk(P), 16);
    let a = AlphaTable::build(&s.d, &s.sys, 16).unwrap();
    for n in 0..=16 {
        for k in n..=16 {
            let want = if k == n { Float::with_val(P, n as u32 + 1).sqrt() } else { Float::with_val(P, 0) };
            assert!((a.get(n, k).re.clone() - &want).abs() < tol(-240) && a.get(n, k).im.clone().abs() < tol(-240));
        }
    }
    let row = hg_tables(&a, 4, 12).unwrap();
    assert_eq!(row.h[0].re, 1.0);
    assert!(row.h[1..].iter().all(|h| h.abs() < tol(-240)));
    assert!(matches!(hg_tables(&a, 10, 12), Err(Error::DegreeOutOfRange { .. })));
    let single = alpha(&s.d, &s.sys, 3, 3).unwrap();
    assert!((single.re - Float::with_val(P, 2)).abs() < tol(-240));
}

#[test]
fn coefficient_tables_collect_every_row() {
    let s = setup(DomainModel::lens(P), 12);
    let t = CoefficientTables::build(&s.d, &s.sys, &s.m, &s.fab, 12).unwrap();
    assert_eq!((t.eps.len(), t.beta.len(), t.residual.len(), t.h.len()), (13, 13, 13, 13));
    assert!(t.residual.iter().all(|r| r.clone().abs() < 1e-20));
    // J_n = min(2n, 12 − n)
    assert_eq!(t.h.iter().map(|r| r.h.len() - 1).collect::<Vec<_>>(), vec![0, 2, 4, 6, 8, 7, 6, 5, 4, 3, 2, 1, 0]);
}

#[test]
fn disk_contour_functional_is_a_scaled_power() {
    let d = DomainModel::disk(P);
    let mut q = QnEvaluator::new(&d).unwrap();
    for z in [C64::c64(0.3, 0.2), C64::c64(-0.5, 0.1), C64::c64(0.0, -0.7)] {
        let zm = z.to_mp(P);
        let got = q.q_many(&zm, &[0, 3, 9]).unwrap();
        for (g, n) in got.iter().zip([0usize, 3, 9]) {
            let want = zm.powi(n as i64).scale_f((n + 1) as f64);
            assert!((g - &want).abs() < tol(-200), "n={n}");
        }
    }
    assert!(matches!(q.q(2, &d.cmp(1.5, 0.0)), Err(Error::Domain(_))));
    let e = DomainModel::ellipse(&Float::with_val(P, 1.5)).unwrap();
    assert!(QnEvaluator::new(&e).is_err());
}

#[test]
fn square_series_representation_converges_in_the_truncation() {
    let s = setup(square(), 48);
    let a = AlphaTable::build(&s.d, &s.sys, 48).unwrap();
    let mut q = QnEvaluator::new(&s.d).unwrap();
    let z = s.d.cmp(0.3, 0.0);
    let n = 16;
    let row = hg_tables(&a, n, 32).unwrap();
    let qs = q.q_many(&z, &(n..=n + 32).collect::<Vec<_>>()).unwrap();
    let lhs = a.get(n, n) * &s.sys.eval_p(n, &z).unwrap();
    let err = |jj: usize| {
        let mut acc = Cx::lit(&Float::new(P), 0.0, 0.0);
        for j in 0..=jj {
            acc += &(&row.h[j] * &qs[j]);
        }
        (&acc - &lhs).abs().to_f64()
    };
    let (e8, e16, e32) = (err(8), err(16), err(32));
    assert!(e16 * 2.0 <= e8 && e32 * 2.0 <= e16, "{e8} {e16} {e32}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// The Laurent truncation reproduces ψ anywhere outside the sampling
    /// circle (the tail only shrinks there).
    #[test]
    fn laurent_reconstruction_holds_outside_the_sample_circle(r in 2.0f64..6.0, th in 0.0f64..6.283) {
        let d = DomainModel::lens(P);
        let l = psi_laurent_auto(&d).unwrap();
        let w = Cx::cis(&Float::with_val(P, th)).scale(&Float::with_val(P, r));
        let (z, _) = d.psi(&w).unwrap();
        prop_assert!((&z - &l.eval(&w)).abs() < tol(40 - P as i32));
    }
}
