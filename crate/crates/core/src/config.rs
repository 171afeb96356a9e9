//! JSON run configuration.
//!
//! ```json
//! { "theta12_deg": 33.48, "theta13_deg": 8.5, "theta23_deg": 42.3, "delta_cp_deg": 0,
//!   "dm2_21_ev2": 7.5e-5, "dm2_31_ev2": 2.46e-3, "energy_gev": 1.0, "sigma_x_m": 2e-15 }
//! ```
//!
//! `dm2_32_ev2` is optional and derived from the other two when absent.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::params::OscillationParams;

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    theta12_deg: f64,
    theta13_deg: f64,
    theta23_deg: f64,
    delta_cp_deg: f64,
    dm2_21_ev2: f64,
    dm2_31_ev2: f64,
    dm2_32_ev2: Option<f64>,
    energy_gev: Option<f64>,
    sigma_x_m: Option<f64>,
}

/// Parsed configuration. Wave-packet fields are `None` when not given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub params: OscillationParams,
    pub energy_gev: Option<f64>,
    pub sigma_x_m: Option<f64>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let params = OscillationParams::from_degrees(
            raw.theta12_deg,
            raw.theta13_deg,
            raw.theta23_deg,
            raw.delta_cp_deg,
            raw.dm2_21_ev2,
            raw.dm2_31_ev2,
            raw.dm2_32_ev2,
        )
        .map_err(|e| Error::Config(e.to_string()))?;
        Ok(RunConfig {
            params,
            energy_gev: raw.energy_gev,
            sigma_x_m: raw.sigma_x_m,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::default_params;

    const REFERENCE: &str = r#"{"theta12_deg": 33.48, "theta13_deg": 8.5, "theta23_deg": 42.3,
        "delta_cp_deg": 0, "dm2_21_ev2": 7.5e-5, "dm2_31_ev2": 2.46e-3, "dm2_32_ev2": 2.38e-3}"#;

    #[test]
    fn reference_file_gives_default_params() {
        let c = RunConfig::from_json(REFERENCE).unwrap();
        let d = default_params();
        assert!((c.params.theta12 - d.theta12).abs() < 1e-15);
        assert!((c.params.theta23 - d.theta23).abs() < 1e-15);
        assert_eq!(c.params.dm2_32, 2.38e-3);
        assert_eq!(c.energy_gev, None);
    }

    #[test]
    fn dm2_32_is_derived() {
        let c = RunConfig::from_json(
            r#"{"theta12_deg": 33, "theta13_deg": 8, "theta23_deg": 45, "delta_cp_deg": 90,
                "dm2_21_ev2": 7e-5, "dm2_31_ev2": 2.5e-3, "energy_gev": 2, "sigma_x_m": 1e-14}"#,
        )
        .unwrap();
        assert!((c.params.dm2_32 - 2.43e-3).abs() < 1e-15);
        assert!((c.params.delta_cp - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!((c.energy_gev, c.sigma_x_m), (Some(2.0), Some(1e-14)));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "",
            "{}",
            r#"{"theta12_deg": 33}"#,
            &REFERENCE.replace("}", r#", "extra": 1}"#),
            &REFERENCE.replace("2.38e-3", "1.0e-3"),
        ] {
            assert!(matches!(RunConfig::from_json(bad), Err(Error::Config(_))), "{bad}");
        }
    }
}
