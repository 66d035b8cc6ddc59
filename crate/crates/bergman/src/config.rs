//! Experiment configuration: one JSON document per run.
//!
//! Every real-valued entry is a decimal string, so a configuration means the
//! same thing to every reader regardless of its binary float parser. Missing
//! entries take the defaults below; [`ExperimentConfig::resolved_json`]
//! writes the configuration back with every default filled in.

use serde::{Deserialize, Serialize};

use crate::continuation::AnnulusConfig;
use crate::error::{Error, Result};
use crate::geometry::{DomainModel, DomainSpec};
use crate::moments::QuadratureScheme;
use crate::num::{Lcg, C64};

/// Quadrature panel layout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSection {
    pub nodes_per_panel: usize,
    pub grading_levels: u32,
}

impl Default for QuadratureSection {
    fn default() -> Self {
        let q = QuadratureScheme::default();
        QuadratureSection { nodes_per_panel: q.nodes_per_panel, grading_levels: q.grading_levels }
    }
}

/// Working annulus of the continuation solver.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnnulusSection {
    /// Inner working radius, in (0, 1).
    pub rho_in: String,
    /// Root residual bound, as a decimal; converted to the nearest power of
    /// two not above it.
    pub newton_tol: String,
}

impl Default for AnnulusSection {
    fn default() -> Self {
        AnnulusSection { rho_in: "0.3".into(), newton_tol: "1e-47".into() }
    }
}

/// Evaluation points, each a `[re, im]` pair of decimal strings.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SampleSection {
    pub interior: Vec<[String; 2]>,
    pub exterior: Vec<[String; 2]>,
    /// Additional interior points drawn from the seeded generator.
    pub random_interior: usize,
    /// Raster resolution of the `continuation` run (cells per side).
    pub raster: usize,
}

/// A full experiment description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Domain spec: `disk`, `ellipse:rho=<decimal>`, `ngon:N=<int>`, `lens`.
    pub domain: String,
    pub precision_bits: u32,
    pub degree_max: usize,
    pub quadrature: QuadratureSection,
    pub annulus: AnnulusSection,
    pub samples: SampleSection,
    pub output_dir: String,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            domain: "disk".into(),
            precision_bits: 256,
            degree_max: 32,
            quadrature: QuadratureSection::default(),
            annulus: AnnulusSection::default(),
            samples: SampleSection { raster: 32, ..SampleSection::default() },
            output_dir: "out".into(),
            seed: 1,
        }
    }
}

fn decimal(field: &str, s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("{field} = `{s}` is not a decimal number")))?;
    if !v.is_finite() {
        return Err(Error::InvalidParameter(format!("{field} = `{s}` is not finite")));
    }
    Ok(v)
}

fn point(field: &str, p: &[String; 2]) -> Result<C64> {
    Ok(C64::c64(decimal(field, &p[0])?, decimal(field, &p[1])?))
}

impl ExperimentConfig {
    /// Parse and validate a JSON document.
    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(s).map_err(|e| Error::InvalidParameter(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Read, parse and validate a configuration file.
    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        self.domain_spec()?;
        if self.precision_bits < 128 {
            return Err(Error::InvalidParameter(format!("precision_bits = {} must be at least 128", self.precision_bits)));
        }
        if self.degree_max < 1 {
            return Err(Error::InvalidParameter("degree_max must be at least 1".into()));
        }
        self.quadrature().validate()?;
        self.annulus()?.validate()?;
        for p in &self.samples.interior {
            point("samples.interior", p)?;
        }
        for p in &self.samples.exterior {
            point("samples.exterior", p)?;
        }
        Ok(())
    }

    pub fn domain_spec(&self) -> Result<DomainSpec> {
        DomainSpec::parse(&self.domain)
    }

    pub fn build_domain(&self) -> Result<DomainModel> {
        self.domain_spec()?.build(self.precision_bits)
    }

    pub fn quadrature(&self) -> QuadratureScheme {
        QuadratureScheme {
            nodes_per_panel: self.quadrature.nodes_per_panel,
            grading_levels: self.quadrature.grading_levels,
        }
    }

    /// The annulus settings in solver form; `newton_tol` becomes
    /// 2^(newton_tol_bits − P).
    pub fn annulus(&self) -> Result<AnnulusConfig> {
        let rho_in = decimal("annulus.rho_in", &self.annulus.rho_in)?;
        let tol = decimal("annulus.newton_tol", &self.annulus.newton_tol)?;
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter("annulus.newton_tol must be positive".into()));
        }
        let newton_tol_bits = tol.log2().floor() as i32 + self.precision_bits as i32;
        Ok(AnnulusConfig { rho_in, newton_tol_bits, ..AnnulusConfig::default() })
    }

    /// Configured interior points followed by `random_interior` points drawn
    /// uniformly from the bounding box, kept when at least 0.05 inside D.
    pub fn interior_points(&self, d: &DomainModel) -> Result<Vec<C64>> {
        let mut pts: Vec<C64> =
            self.samples.interior.iter().map(|p| point("samples.interior", p)).collect::<Result<_>>()?;
        let (x0, x1, y0, y1) = d.bounding_box();
        let mut rng = Lcg::new(self.seed);
        let mut drawn = 0;
        let mut tries = 0;
        while drawn < self.samples.random_interior {
            tries += 1;
            if tries > 1000 * (self.samples.random_interior + 1) {
                return Err(Error::InvalidParameter("could not draw interior sample points".into()));
            }
            let z = C64::c64(rng.uniform(x0, x1), rng.uniform(y0, y1));
            if d.contains(&z) && d.distance_to_boundary(&z) >= 0.05 {
                pts.push(z);
                drawn += 1;
            }
        }
        Ok(pts)
    }

    pub fn exterior_points(&self) -> Result<Vec<C64>> {
        self.samples.exterior.iter().map(|p| point("samples.exterior", p)).collect()
    }

    /// The configuration with every default filled in, as pretty JSON with
    /// a trailing newline.
    pub fn resolved_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_fill_a_minimal_document() {
        let cfg = ExperimentConfig::from_json(r#"{"domain": "ngon:N=4"}"#).unwrap();
        assert_eq!(cfg.precision_bits, 256);
        let ann = cfg.annulus().unwrap();
        assert_eq!(ann.rho_in, 0.3);
        // 2^-157 ≤ 1e-47 < 2^-156
        assert_eq!(ann.newton_tol_bits, 256 - 157);
        let again = ExperimentConfig::from_json(&cfg.resolved_json()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn invalid_documents_are_rejected() {
        for doc in [
            r#"{"domain": "hexagon"}"#,
            r#"{"precision_bits": 64}"#,
            r#"{"degree_max": 0}"#,
            r#"{"annulus": {"rho_in": "1.5"}}"#,
            r#"{"annulus": {"rho_in": "abc"}}"#,
            r#"{"samples": {"interior": [["0.1", "x"]]}}"#,
            r#"{"unknown": 1}"#,
            "not json",
        ] {
            assert!(ExperimentConfig::from_json(doc).is_err(), "{doc}");
        }
    }

    #[test]
    fn random_points_follow_the_seed() {
        let doc = r#"{"domain": "ngon:N=4", "samples": {"random_interior": 5}, "seed": 7}"#;
        let cfg = ExperimentConfig::from_json(doc).unwrap();
        let d = cfg.build_domain().unwrap();
        let a = cfg.interior_points(&d).unwrap();
        assert_eq!(a, cfg.interior_points(&d).unwrap());
        assert_eq!(a.len(), 5);
        assert!(a.iter().all(|z| d.distance_to_boundary(z) >= 0.05 && d.contains(z)));
    }
}
