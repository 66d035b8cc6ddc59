//! The experiment runs behind the command-line subcommands.
//!
//! Each run is a pure function from a configuration to a list of output
//! files in a fixed order; writing them is left to the caller.

use serde::Serialize;

use crate::asymptotics::{nth_root_profile, poly_zeros, zero_diagnostics, Asymptotics, PROFILE_WINDOW};
use crate::config::ExperimentConfig;
use crate::continuation::{raster, Continuation};
use crate::error::Result;
use crate::faber::{faber_polys, psi_laurent_auto, CoefficientTables};
use crate::geometry::DomainModel;
use crate::moments::{gram, orthonormalize, MomentMatrix, OrthonormalSystem};
use crate::report::{json_file, num, opt_num, OutputFile, Table};

/// Domain, moment matrix and orthonormal system for one configuration.
pub struct Prepared {
    pub d: DomainModel,
    pub m: MomentMatrix,
    pub sys: OrthonormalSystem,
}

impl Prepared {
    pub fn new(cfg: &ExperimentConfig) -> Result<Self> {
        let d = cfg.build_domain()?;
        let m = gram(&d, cfg.degree_max, &cfg.quadrature())?;
        let sys = orthonormalize(&m)?;
        Ok(Prepared { d, m, sys })
    }
}

#[derive(Serialize)]
struct OrthoSummary<'a> {
    domain: &'a str,
    precision_bits: u32,
    degree_max: usize,
    capacity: f64,
    orthonormality_residual: f64,
    hermitian_residual: f64,
}

/// `ortho`: the system as JSON (exact decimals), the λ_n table and a summary.
pub fn ortho(cfg: &ExperimentConfig) -> Result<Vec<OutputFile>> {
    let p = Prepared::new(cfg)?;
    let mut lam = Table::new(&["n", "lambda_n"]);
    for n in 0..=cfg.degree_max {
        lam.push(vec![n.to_string(), num(p.sys.leading(n)?.to_f64())]);
    }
    let mut system = p.sys.to_json();
    system.push('\n');
    let summary = OrthoSummary {
        domain: &cfg.domain,
        precision_bits: cfg.precision_bits,
        degree_max: cfg.degree_max,
        capacity: p.d.capacity().to_f64(),
        orthonormality_residual: p.sys.orthonormality_residual(&p.m).to_f64(),
        hermitian_residual: p.m.hermitian_residual().to_f64(),
    };
    Ok(vec![
        OutputFile { name: "system.json".into(), contents: system },
        lam.into_file("lambda.csv"),
        json_file("ortho_summary.json", &summary)?,
    ])
}

/// `tables`: α_{n,k} (k ≥ n), the diagonal quantities with the identity
/// residual, and the h recursion rows.
pub fn tables(cfg: &ExperimentConfig) -> Result<Vec<OutputFile>> {
    let p = Prepared::new(cfg)?;
    let fab = faber_polys(&p.d, &psi_laurent_auto(&p.d)?, cfg.degree_max)?;
    let t = CoefficientTables::build(&p.d, &p.sys, &p.m, &fab, cfg.degree_max)?;
    let mut alpha = Table::new(&["n", "k", "re", "im"]);
    for n in 0..=cfg.degree_max {
        for k in 0..=cfg.degree_max {
            let a = t.alpha.get(n, k).to_c64();
            alpha.push(vec![n.to_string(), k.to_string(), num(a.re), num(a.im)]);
        }
    }
    let mut diag = Table::new(&["n", "lambda_n", "eps_nn", "beta_nn", "identity_residual"]);
    for n in 0..=cfg.degree_max {
        diag.push(vec![
            n.to_string(),
            num(p.sys.leading(n)?.to_f64()),
            num(t.eps[n].to_f64()),
            num(t.beta[n].to_f64()),
            num(t.residual[n].to_f64()),
        ]);
    }
    let mut h = Table::new(&["n", "j", "re", "im"]);
    for row in &t.h {
        for (j, v) in row.h.iter().enumerate() {
            let v = v.to_c64();
            h.push(vec![row.n.to_string(), j.to_string(), num(v.re), num(v.im)]);
        }
    }
    Ok(vec![alpha.into_file("alpha.csv"), diag.into_file("diagonal.csv"), h.into_file("h.csv")])
}

/// `zeros`: every zero of p_1 … p_N with its distances, per-degree
/// diagnostics, and the histogram of |φ| (outside) or r (inside) at zeros.
pub fn zeros(cfg: &ExperimentConfig) -> Result<Vec<OutputFile>> {
    let p = Prepared::new(cfg)?;
    let mut cont = if p.d.has_continuation() { Some(Continuation::new(&p.d, cfg.annulus()?)?) } else { None };
    let mut rows = Table::new(&["n", "re", "im", "dist_gamma", "dist_L", "dist_corners"]);
    let mut summary =
        Table::new(&["n", "max_dist_gamma", "max_abs_re", "min_dist_corners", "max_residual", "sweeps"]);
    let mut hist = Table::new(&["n", "lo", "hi", "count"]);
    for n in 1..=cfg.degree_max {
        let zs = poly_zeros(&p.sys, n, cfg.precision_bits)?;
        let diag = zero_diagnostics(&zs, &p.d, cont.as_mut())?;
        for r in &diag.rows {
            rows.push(vec![n.to_string(), num(r.re), num(r.im), num(r.dist_gamma), num(r.dist_l), num(r.dist_corners)]);
        }
        summary.push(vec![
            n.to_string(),
            num(diag.max_dist_gamma),
            num(diag.max_abs_re),
            num(diag.min_dist_corners),
            num(zs.max_residual),
            zs.sweeps.to_string(),
        ]);
        for b in &diag.histogram {
            hist.push(vec![n.to_string(), num(b.lo), num(b.hi), b.count.to_string()]);
        }
    }
    Ok(vec![rows.into_file("zeros.csv"), summary.into_file("zero_diagnostics.csv"), hist.into_file("zero_histogram.csv")])
}

/// `asymptotics`: A_n for n = 0..=N at every sample point where Φ is
/// available, and the n-th root profile with r(z) at interior points.
/// `points.csv` records the regime of each point, or why it was skipped.
pub fn asymptotics(cfg: &ExperimentConfig) -> Result<Vec<OutputFile>> {
    let p = Prepared::new(cfg)?;
    let mut a = Asymptotics::new(&p.d, cfg.annulus()?)?;
    let interior = cfg.interior_points(&p.d)?;
    let exterior = cfg.exterior_points()?;
    let ns: Vec<usize> = (0..=cfg.degree_max).collect();
    let mut points = Table::new(&["re_z", "im_z", "status"]);
    let mut dev = Table::new(&["n", "re_z", "im_z", "regime", "abs_a_n"]);
    let mut prof = Table::new(&["n", "re_z", "im_z", "nth_root", "running_max", "r_z"]);
    for z in interior.iter().chain(&exterior) {
        match a.deviations(&p.sys, z, &ns) {
            Ok(recs) => {
                points.push(vec![num(z.re), num(z.im), recs[0].regime.to_string()]);
                for r in recs {
                    dev.push(vec![r.n.to_string(), num(z.re), num(z.im), r.regime.to_string(), num(r.a_n.abs())]);
                }
            }
            Err(e) if recoverable(&e) => points.push(vec![num(z.re), num(z.im), e.kind().into()]),
            Err(e) => return Err(e),
        }
    }
    for z in interior.iter().filter(|z| p.d.contains(z)) {
        let pr = match a.profile(&p.sys, z, &ns[1..], PROFILE_WINDOW) {
            Ok(pr) => pr,
            // r(z) unavailable: keep the profile without it
            Err(e) if recoverable(&e) => nth_root_profile(&p.sys, &p.d.cmp(z.re, z.im), &ns[1..], PROFILE_WINDOW)?,
            Err(e) => return Err(e),
        };
        for ((n, v), m) in pr.samples.iter().zip(&pr.running_max) {
            prof.push(vec![n.to_string(), num(z.re), num(z.im), num(*v), num(*m), opt_num(pr.r)]);
        }
    }
    Ok(vec![points.into_file("points.csv"), dev.into_file("deviations.csv"), prof.into_file("profile.csv")])
}

/// Errors that disqualify one sample point without stopping the run.
fn recoverable(e: &crate::Error) -> bool {
    use crate::Error::*;
    matches!(
        e,
        NotInOmegaStar
            | NearBoundaryInconclusive
            | ClassificationFailure(_)
            | NearBoundary { .. }
            | Unavailable(_)
            | Domain(_)
            | ContourDegenerate { .. }
    )
}

/// `continuation`: the Ω* raster over the enlarged bounding box.
pub fn continuation(cfg: &ExperimentConfig) -> Result<Vec<OutputFile>> {
    let d = cfg.build_domain()?;
    let k = cfg.samples.raster.max(1);
    let cells = raster(&d, &cfg.annulus()?, k, k)?;
    let mut t = Table::new(&["x", "y", "inside", "p", "r", "in_omega_star"]);
    for c in cells {
        t.push(vec![num(c.x), num(c.y), c.inside.to_string(), c.p.to_string(), num(c.r), c.in_omega_star.to_string()]);
    }
    Ok(vec![t.into_file("raster.csv")])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(doc: &str) -> ExperimentConfig {
        ExperimentConfig::from_json(doc).unwrap()
    }

    #[test]
    fn zeros_table_has_one_row_per_zero() {
        let c = cfg(r#"{"domain": "ngon:N=4", "degree_max": 12}"#);
        let out = zeros(&c).unwrap();
        assert_eq!(out[0].name, "zeros.csv");
        assert_eq!(out[0].contents.lines().count(), 1 + 12 * 13 / 2);
        assert!(out[0].contents.starts_with("n,re,im,dist_gamma,dist_L,dist_corners\n"));
    }

    #[test]
    fn disk_runs_give_the_closed_forms() {
        let c = cfg(r#"{"domain": "disk", "degree_max": 6,
            "samples": {"interior": [["0.5", "0.1"]], "exterior": [["2", "0"], ["0.1", "0.1"]]}}"#);
        let out = ortho(&c).unwrap();
        let lam: Vec<f64> = out[1].contents.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
        for (n, l) in lam.iter().enumerate() {
            assert!((l - ((n + 1) as f64).sqrt()).abs() < 1e-14);
        }
        let out = asymptotics(&c).unwrap();
        let pts = &out[0].contents;
        assert!(pts.contains("interior") && pts.contains("exterior") && pts.contains("not-in-omega-star"), "{pts}");
        for line in out[1].contents.lines().skip(1) {
            let a: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
            assert!(a < 1e-60);
        }
        assert_eq!(out[2].contents.lines().count(), 1 + 6);
        let again = asymptotics(&c).unwrap();
        assert_eq!(out, again);
    }

    #[test]
    fn lens_identity_residuals_are_small() {
        let c = cfg(r#"{"domain": "lens", "degree_max": 10}"#);
        let out = tables(&c).unwrap();
        let names: Vec<&str> = out.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, ["alpha.csv", "diagonal.csv", "h.csv"]);
        for line in out[1].contents.lines().skip(1) {
            let r: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
            assert!(r.abs() < 1e-20);
        }
    }

    #[test]
    fn raster_has_the_requested_size() {
        let c = cfg(r#"{"domain": "disk", "samples": {"raster": 4}}"#);
        let out = continuation(&c).unwrap();
        assert_eq!(out[0].contents.lines().count(), 17);
    }
}
