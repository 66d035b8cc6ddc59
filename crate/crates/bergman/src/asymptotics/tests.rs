use std::sync::OnceLock;

use proptest::prelude::*;
use rug::Float;

use super::*;
use crate::moments::{gram, orthonormalize, QuadratureScheme};

const P: u32 = 256;

fn system(d: &DomainModel, n: usize) -> OrthonormalSystem {
    orthonormalize(&gram(d, n, &QuadratureScheme::default()).unwrap()).unwrap()
}

fn square() -> &'static (DomainModel, OrthonormalSystem) {
    static S: OnceLock<(DomainModel, OrthonormalSystem)> = OnceLock::new();
    S.get_or_init(|| {
        let d = DomainModel::regular_ngon(4, P).unwrap();
        let s = system(&d, 48);
        (d, s)
    })
}

fn cfg() -> AnnulusConfig {
    AnnulusConfig::default()
}

#[test]
fn disk_exterior_deviation_vanishes() {
    let d = DomainModel::disk(P);
    let sys = system(&d, 32);
    let mut a = Asymptotics::new(&d, cfg()).unwrap();
    for z in [C64::c64(2.0, 0.0), C64::c64(-1.5, 0.7), C64::c64(0.0, 1.25)] {
        for rec in a.deviations(&sys, &z, &(0..=32).collect::<Vec<_>>()).unwrap() {
            assert_eq!(rec.regime, Regime::Exterior);
            assert!(rec.a_n.abs() < 1e-60, "n = {} A = {:?}", rec.n, rec.a_n);
        }
    }
    // on D₁ of the disk Φ = z as well
    let rec = deviation(&d, &sys, 20, &C64::c64(0.4, 0.3), &cfg()).unwrap();
    assert_eq!(rec.regime, Regime::Interior);
    assert!(rec.a_n.abs() < 1e-60);
}

#[test]
fn disk_profile_matches_closed_form() {
    let d = DomainModel::disk(P);
    let sys = system(&d, 32);
    let z = d.cmp(0.5, 0.0);
    let prof = nth_root_profile(&sys, &z, &(1..=32).collect::<Vec<_>>(), 8).unwrap();
    for &(n, v) in &prof.samples {
        let want = ((n + 1) as f64).sqrt().powf(1.0 / n as f64) * 0.5;
        assert!((v - want).abs() < 1e-14);
    }
    // the sequence decreases, so the trailing maximum is the value 7 back
    assert_eq!(prof.last_running_max(), prof.samples[prof.samples.len() - 8].1);
    assert!(nth_root_profile(&sys, &z, &[0, 1], 8).is_err());
}

#[test]
fn disk_zeros_sit_at_the_centre() {
    let d = DomainModel::disk(P);
    let sys = system(&d, 16);
    for n in [1, 5, 16] {
        let zs = poly_zeros(&sys, n, P).unwrap();
        assert_eq!(zs.zeros.len(), n);
        assert!(zs.max_residual < 2f64.powi(64 - P as i32));
        // √(n+1)|ζ|^n / √(n+1) below the residual target bounds |ζ|
        let bound = 2f64.powf((64.0 - P as f64) / n as f64);
        for z in &zs.zeros {
            assert!(z.abs().to_f64() <= bound * 1.01);
        }
    }
    assert!(poly_zeros(&sys, 0, P).is_err());
}

#[test]
fn zeros_of_a_known_polynomial() {
    // ellipse p_n ∝ U_n: zeros cos(kπ/(n+1)) on the focal segment
    let d = DomainModel::ellipse(&Float::with_val(P, 1.5)).unwrap();
    let sys = system(&d, 12);
    let zs = poly_zeros(&sys, 12, P).unwrap();
    let mut re: Vec<f64> = zs.zeros_f64().iter().map(|z| z.re).collect();
    re.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (k, x) in re.iter().enumerate() {
        let want = -((k + 1) as f64 * std::f64::consts::PI / 13.0).cos();
        assert!((x - want).abs() < 1e-12, "{x} vs {want}");
    }
    let diag = zero_diagnostics(&zs, &d, None).unwrap();
    assert!(diag.max_dist_gamma < 1e-12);
    assert_eq!(diag.min_dist_corners, f64::INFINITY);
}

#[test]
fn square_zeros_lie_on_the_spokes() {
    let (d, sys) = square();
    let mut cont = Continuation::new(d, cfg()).unwrap();
    for n in [5, 12, 24] {
        let zs = poly_zeros(sys, n, P).unwrap();
        assert_eq!(zs.zeros.len(), n);
        let diag = zero_diagnostics(&zs, d, Some(&mut cont)).unwrap();
        assert!(diag.max_dist_gamma < 1e-6, "n = {n}: {}", diag.max_dist_gamma);
        assert!(diag.rows.iter().all(|r| r.dist_l > 0.0 && r.phi_abs.map_or(true, |v| v < 1.0)));
    }
}

#[test]
fn lens_zeros_lie_on_the_segment() {
    let d = DomainModel::lens(P);
    let sys = system(&d, 20);
    let zs = poly_zeros(&sys, 20, P).unwrap();
    let diag = zero_diagnostics(&zs, &d, None).unwrap();
    assert!(diag.max_abs_re < 1e-8);
    assert!(diag.rows.iter().all(|r| r.im.abs() < 1.0));
}

#[test]
fn analytic_derivative_agrees_with_central_difference() {
    let (d, _) = square();
    let mut a = Asymptotics::new(d, cfg()).unwrap();
    for z in [C64::c64(1.2, 0.3), C64::c64(0.2, 0.1), C64::c64(0.5, 0.5)] {
        let at = a.phi_point(&z).unwrap();
        assert!(a.derivative_check(&at).unwrap() < 1e-40, "{z:?}");
    }
    assert!(matches!(a.phi_point(&C64::c64(0.0, 1.0)), Err(Error::NotInOmegaStar)));
    assert!(matches!(a.phi_point(&C64::c64(0.3, 0.0)), Err(Error::NotInOmegaStar)));
}

#[test]
fn ellipse_exterior_rate_is_at_least_one_over_n() {
    let d = DomainModel::ellipse(&Float::with_val(P, 1.5)).unwrap();
    let sys = system(&d, 32);
    let mut a = Asymptotics::new(&d, cfg()).unwrap();
    assert!(matches!(a.classify(&C64::c64(0.1, 0.0)), Err(Error::Unavailable(_))));
    // |φ(z)| = 1.4 on the real axis: z = (1.4ρ + 1/(1.4ρ))/2
    let x = (2.1 + 1.0 / 2.1) / 2.0;
    let ns: Vec<usize> = (8..=32).collect();
    let recs = a.deviations(&sys, &C64::c64(x, 0.0), &ns).unwrap();
    assert!((recs[0].aux - 1.4).abs() < 1e-12);
    let fit = RateFit::new("|A_n|", RateModel::N, recs.iter().map(|r| (r.n, r.a_n.abs())).collect());
    assert!(fit.bounded_without_growth(2.0));
    assert!(fit.sup < 1.0);
}

#[test]
fn square_deviation_is_small_on_both_sides_of_an_edge() {
    let (d, sys) = square();
    let mut a = Asymptotics::new(d, cfg()).unwrap();
    let h = 1e-3 * std::f64::consts::FRAC_1_SQRT_2;
    for (z, regime) in [(C64::c64(0.5 + h, 0.5 + h), Regime::Exterior), (C64::c64(0.5 - h, 0.5 - h), Regime::Interior)] {
        let recs = a.deviations(sys, &z, &[16, 32, 48]).unwrap();
        for r in &recs {
            assert_eq!(r.regime, regime);
            let nf = r.n as f64;
            assert!(r.a_n.abs() * nf / nf.ln() < 1.0, "{z:?} n = {}: {:?}", r.n, r.a_n);
        }
    }
    let on = a.phi_point(&C64::c64(0.5, 0.5)).unwrap();
    assert_eq!(on.regime, Regime::OmegaStar);
}

#[test]
fn residue_remainder_is_zero_on_the_disk() {
    let d = DomainModel::disk(P);
    let mut a = Asymptotics::new(&d, cfg()).unwrap();
    let mut q = QnEvaluator::new(&d).unwrap();
    let chk = residue_check(&mut a, &mut q, &C64::c64(0.5, 0.2), &[4, 8, 12]).unwrap();
    assert!(chk.constant() < 1e-60);
    assert!((chk.rho_mid - 0.5 * (0.3 + C64::c64(0.5, 0.2).abs())).abs() < 1e-15);
}

#[test]
fn rate_fit_scaling() {
    let fit = RateFit::new("x", RateModel::NOverLogN, vec![(8, 0.5), (16, 0.25)]);
    assert!((fit.scaled[0].1 - 4.0 / 8f64.ln()).abs() < 1e-15);
    assert_eq!(fit.last, fit.scaled[1].1);
    let grow = RateFit::new("x", RateModel::N, (1..=20).map(|n| (n, 0.1 * n as f64)).collect());
    assert!(!grow.bounded_without_growth(2.0));
    // one deep dip inside a flat sequence is not growth
    let dip = RateFit::new("x", RateModel::N, (1..=20).map(|n| (n, if n == 5 { 1e-3 } else { 1.0 } / n as f64)).collect());
    assert!(dip.bounded_without_growth(2.0));
    assert!(!dip.raw_bounded_without_growth(2.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn running_max_dominates_the_window(vals in proptest::collection::vec(0.0f64..2.0, 1..40), w in 1usize..10) {
        let n = vals.len();
        let samples: Vec<(usize, f64)> = vals.iter().enumerate().map(|(i, v)| (i + 1, *v)).collect();
        let prof = NthRootProfile {
            z: C64::c64(0.0, 0.0),
            running_max: (0..n)
                .map(|i| samples[i.saturating_sub(w - 1)..=i].iter().map(|s| s.1).fold(0.0, f64::max))
                .collect(),
            samples,
            window: w,
            r: None,
        };
        for i in 0..n {
            prop_assert!(prof.running_max[i] >= prof.samples[i].1);
        }
    }

    #[test]
    fn disk_exterior_deviation_is_zero_anywhere(r in 1.05f64..3.0, t in 0.0f64..6.28, n in 1usize..12) {
        let d = DomainModel::disk(P);
        static SYS: OnceLock<OrthonormalSystem> = OnceLock::new();
        let sys = SYS.get_or_init(|| system(&DomainModel::disk(P), 12));
        let z = C64::c64(r * t.cos(), r * t.sin());
        let rec = deviation(&d, sys, n, &z, &cfg()).unwrap();
        prop_assert!(rec.a_n.abs() < 1e-60);
    }
}

