use proptest::prelude::*;
use rug::Float;

use super::*;
use crate::num::{Lcg, C64};

const P: u32 = 256;

fn tol(bits: i32) -> Float {
    Float::with_val(P, 1) << bits
}

fn q() -> QuadratureScheme {
    QuadratureScheme::default()
}

fn square() -> DomainModel {
    DomainModel::regular_ngon(4, P).unwrap()
}

fn ellipse() -> DomainModel {
    DomainModel::ellipse(&Float::with_val(P, 1.5)).unwrap()
}

#[test]
fn disk_moments_are_diagonal_with_reciprocal_entries() {
    let d = DomainModel::disk(P);
    let m = boundary_moment(&d, 2, 2, &q()).unwrap();
    let third = Float::with_val(P, 1) / 3u32;
    assert!((&m - &Cx::real(third)).abs() < tol(-240));
    let g = gram(&d, 6, &q()).unwrap();
    for j in 0..=6 {
        for k in 0..=6 {
            let want = if j == k { Float::with_val(P, 1) / (j as u32 + 1) } else { Float::with_val(P, 0) };
            assert!((g.get(j, k) - &Cx::real(want)).abs() < tol(-240), "({j},{k})");
        }
    }
    assert!(g.hermitian_residual() < tol(-250));
}

#[test]
fn square_low_moments_match_closed_forms() {
    // the square with vertices ±1, ±i has area 2
    let d = square();
    let pi = Float::with_val(P, rug::float::Constant::Pi);
    let m00 = boundary_moment(&d, 0, 0, &q()).unwrap();
    assert!((&m00 - &Cx::real(Float::with_val(P, 2) / &pi)).abs() < tol(-240));
    // ∫|z|² dA = 2/3 on this square
    let m11 = boundary_moment(&d, 1, 1, &q()).unwrap();
    let want = Float::with_val(P, 2) / (Float::with_val(P, 3) * &pi);
    assert!((&m11 - &Cx::real(want)).abs() < tol(-240));
}

#[test]
fn boundary_route_agrees_with_area_quadrature() {
    for d in [DomainModel::disk(P), ellipse(), square(), DomainModel::regular_ngon(3, P).unwrap()] {
        let g = gram(&d, 8, &q()).unwrap();
        for j in 0..=8 {
            for k in 0..=8 {
                let o = area_moment_oracle(&d, j, k).unwrap();
                assert!((g.get(j, k) - &o).abs() < 1e-25, "{} ({j},{k})", d.name());
            }
        }
    }
    assert!(matches!(area_moment_oracle(&DomainModel::lens(P), 0, 0), Err(Error::Unavailable(_))));
}

#[test]
fn disk_polynomials_are_scaled_monomials() {
    let d = DomainModel::disk(P);
    let sys = orthonormalize(&gram(&d, 5, &q()).unwrap()).unwrap();
    for n in 0..=5 {
        let lam = sys.leading(n).unwrap();
        let want = Float::with_val(P, n as u32 + 1).sqrt();
        assert!((lam - &want).abs() < tol(-240), "λ_{n}");
        for c in &sys.coeffs(n).unwrap()[..n] {
            assert!(c.abs() < tol(-240));
        }
    }
    // p_3 = 2 z³
    let z = C64::c64(0.3, -0.2);
    let p3 = sys.eval_p(3, &z).unwrap();
    let want = z.powi(3).scale_f(2.0);
    assert!((&p3 - &want).abs() < 1e-15);
    let p2 = sys.eval_p(2, &d.cmp(0.5, 0.0)).unwrap();
    let want = Float::with_val(P, 3).sqrt() / 4u32;
    assert!((p2.re - &want).abs() < tol(-240) && p2.im.abs() < tol(-240));
}

#[test]
fn derivative_matches_finite_difference() {
    let sys = orthonormalize(&gram(&square(), 6, &q()).unwrap()).unwrap();
    let z = C64::c64(0.2, 0.1);
    let e = 1e-6;
    let hp = sys.eval_p(6, &(&z + &C64::c64(e, 0.0))).unwrap();
    let hm = sys.eval_p(6, &(&z - &C64::c64(e, 0.0))).unwrap();
    let fd = (&hp - &hm).scale(&(0.5 / e));
    let dp = sys.eval_p_prime(6, &z).unwrap();
    assert!((&fd - &dp).abs() < 1e-7 * dp.abs().max(1.0));
}

#[test]
fn ellipse_polynomials_are_chebyshev_of_the_second_kind() {
    // For the ellipse with foci ±1, p_n is a multiple of U_n.
    let d = ellipse();
    let sys = orthonormalize(&gram(&d, 6, &q()).unwrap()).unwrap();
    let mut u = vec![vec![1.0], vec![0.0, 2.0]];
    for n in 2..=6 {
        let mut next = vec![0.0; n + 1];
        for (k, c) in u[n - 1].iter().enumerate() {
            next[k + 1] += 2.0 * c;
        }
        for (k, c) in u[n - 2].iter().enumerate() {
            next[k] -= c;
        }
        u.push(next);
    }
    for n in 0..=6 {
        let c = sys.coeffs_t::<f64>(n).unwrap();
        let ratio = c[n].re / u[n][n];
        for k in 0..=n {
            assert!((c[k].re - ratio * u[n][k]).abs() < 1e-12 * ratio.abs(), "n={n} k={k}");
            assert!(c[k].im.abs() < 1e-12 * ratio.abs());
        }
    }
}

#[test]
fn orthonormality_and_json_round_trip() {
    let g = gram(&DomainModel::lens(P), 10, &q()).unwrap();
    let sys = orthonormalize(&g).unwrap();
    assert!(sys.orthonormality_residual(&g) < tol(-200));
    let back = OrthonormalSystem::from_json(&sys.to_json()).unwrap();
    assert_eq!(back.degree_max(), 10);
    for n in 0..=10 {
        assert_eq!(back.coeffs(n).unwrap(), sys.coeffs(n).unwrap());
    }
    assert!(matches!(sys.eval_p(11, &C64::c64(0.0, 0.0)), Err(Error::DegreeOutOfRange { .. })));
}

#[test]
fn indefinite_gram_is_reported() {
    let like = Float::new(64);
    let one = Cx::lit(&like, 1.0, 0.0);
    let m = MomentMatrix::from_entries(vec![vec![one.clone(), one.clone()], vec![one.clone(), one]], 64);
    assert!(matches!(orthonormalize(&m), Err(Error::PrecisionExhausted(_))));
    assert!(QuadratureScheme { nodes_per_panel: 4, grading_levels: 0 }.validate().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Any polynomial expanded in the orthonormal basis has norm equal to
    /// the Euclidean norm of its coefficients.
    #[test]
    fn parseval_holds_in_the_orthonormal_basis(seed in 0u64..1000) {
        let d = square();
        let g = gram(&d, 5, &q()).unwrap();
        let sys = orthonormalize(&g).unwrap();
        let mut rng = Lcg::new(seed);
        let like = Float::new(P);
        let b: Vec<Cmp> = (0..=5).map(|_| Cx::lit(&like, rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))).collect();
        let mut poly = vec![Cx::lit(&like, 0.0, 0.0); 6];
        let mut want = Float::with_val(P, 0);
        for (n, bn) in b.iter().enumerate() {
            want += bn.norm_sqr();
            for (k, c) in sys.coeffs(n).unwrap().iter().enumerate() {
                poly[k] += &(bn * c);
            }
        }
        let got = g.norm_sqr(&poly);
        prop_assert!((got - &want).abs() < tol(-200));
    }
}
