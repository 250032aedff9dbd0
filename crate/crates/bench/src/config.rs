//! Planner configuration files: a flat TOML document whose keys mirror the
//! `UppConfig` fields. Present keys override the defaults, everything else
//! keeps them.

use anyhow::{Context, Result};
use safegrid_core::UppConfig;
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UppOverrides {
    pub alpha_base: Option<f64>,
    pub beta_base: Option<f64>,
    pub r_base: Option<f64>,
    pub epsilon: Option<f64>,
    pub alpha_min: Option<f64>,
    pub alpha_max: Option<f64>,
    pub beta_min: Option<f64>,
    pub beta_max: Option<f64>,
    pub r_min: Option<u32>,
    pub r_max: Option<u32>,
    pub gamma_rec: Option<f64>,
    pub gamma_dec: Option<f64>,
    pub k_beta: Option<u32>,
    pub tau_goal: Option<f64>,
    pub eta_rec: Option<f64>,
    pub eta_dec: Option<f64>,
    pub k_alpha: Option<u32>,
    pub tau_ang: Option<f64>,
    pub theta_tar: Option<f64>,
    pub adaptive_alpha: Option<bool>,
    pub adaptive_beta: Option<bool>,
}

macro_rules! apply_fields {
    ($self:ident, $cfg:ident, $($field:ident),+ $(,)?) => {
        $(if let Some(v) = $self.$field { $cfg.$field = v; })+
    };
}

impl UppOverrides {
    pub fn apply(&self, cfg: &mut UppConfig) {
        apply_fields!(
            self, cfg, alpha_base, beta_base, r_base, epsilon, alpha_min, alpha_max, beta_min,
            beta_max, r_min, r_max, gamma_rec, gamma_dec, k_beta, tau_goal, eta_rec, eta_dec,
            k_alpha, tau_ang, theta_tar, adaptive_alpha, adaptive_beta,
        );
    }
}

/// Defaults overridden by the TOML file at `path`; the merged configuration
/// is validated before use.
pub fn load_upp_config(path: &Path) -> Result<UppConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let overrides: UppOverrides =
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
    let mut cfg = UppConfig::default();
    overrides.apply(&mut cfg);
    cfg.validate().with_context(|| format!("validating config {}", path.display()))?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_config(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn overrides_change_only_named_fields() {
        let f = write_config("beta_base = 25.0\nadaptive_alpha = false\nk_beta = 4\n");
        let cfg = load_upp_config(f.path()).unwrap();
        let defaults = UppConfig::default();
        assert_eq!(cfg.beta_base, 25.0);
        assert!(!cfg.adaptive_alpha);
        assert_eq!(cfg.k_beta, 4);
        assert_eq!(cfg.alpha_base, defaults.alpha_base);
        assert_eq!(cfg.gamma_dec, defaults.gamma_dec);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let f = write_config("beta_base = 25.0\nbogus_key = 1\n");
        assert!(load_upp_config(f.path()).is_err());
    }

    #[test]
    fn merged_config_is_validated() {
        let f = write_config("alpha_min = 0.8\nalpha_max = 0.2\n");
        assert!(load_upp_config(f.path()).is_err());
    }
}
