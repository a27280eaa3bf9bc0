//! Plain key-value run configuration.
//!
//! Files hold `key = value` lines (with `#` comments); unknown keys are
//! rejected so typos fail loudly.  Every run writes back a manifest with
//! the fully resolved configuration, defaults included.

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

/// Known keys with their default values (as text).
pub const KNOWN_KEYS: &[(&str, &str)] = &[
    ("preset", ""),
    ("ic.variant", "cosine"),
    ("ic.alpha", "1"),
    ("ic.beta", "0"),
    ("ic.eps", "0.1"),
    ("ic.mu", "50"),
    ("ic.delta", "1.2566370614359172"),
    ("solver.N", "64"),
    ("solver.rtol", "1e-10"),
    ("solver.atol", "1e-12"),
    ("solver.t_end", "1"),
    ("solver.blowup_threshold", "2.220446049250313e-15"),
    ("solver.switch_threshold", "1e3"),
    ("solver.heat_death_floor", "1e-8"),
    ("solver.snapshot_dt", "0.05"),
    ("solver.tail_flag_ratio", "1e-8"),
    ("solver.tail_stop_ratio", "1e-3"),
    ("solver.max_refine_n", "0"),
    ("solver.convolution", "auto"),
    ("solver.linear_only", "false"),
    ("tracker.k_min_floor", "4"),
    ("tracker.k_min_frac", "0.2"),
    ("tracker.floor_rel", "2.2204460492503131e-13"),
    ("tracker.floor_abs", "1e-290"),
    ("tracker.min_points", "5"),
    ("tracker.fallback_mu", "2"),
    ("tracker.curvature", "false"),
    ("tracker.reversal_tol", "1e-4"),
    ("tracker.reversal_persist", "3"),
    ("pade.time", "-1"),
    ("pade.m", "0"),
    ("pade.n", "0"),
    ("pade.l", "0"),
    ("pade.quadratic", "false"),
    ("pade.x0", "-3.141592653589793"),
    ("pade.x1", "3.141592653589793"),
    ("pade.y_max", "1"),
    ("pade.nx", "65"),
    ("pade.ny", "33"),
    ("ode.variant", "logarithmic"),
    ("ode.a", "1"),
    ("ode.anchor", "50"),
    ("ode.direction", "left"),
    ("ode.x_end", "-1"),
    ("ode.order", "16"),
    ("ode.safety", "0.5"),
    ("ode.path_file", ""),
    ("asym.regime", "sigma-small-time"),
    ("asym.channel", "sigma"),
    ("asym.t0", "0.02"),
    ("asym.t1", "0.1"),
    ("asym.steps", "5"),
    ("asym.x", "0"),
    ("asym.t_c", "nan"),
    ("asym.zeta_star", "nan"),
    ("asym.zeta_star_t", "0"),
    ("asym.C", "nan"),
    ("asym.beta1", "nan"),
    ("compare.track_csv", ""),
    ("compare.regimes", "sigma-small-time"),
    ("output.dir", "out"),
];

#[derive(Debug, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Default for Config {
    fn default() -> Self {
        let values =
            KNOWN_KEYS.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        Self { values }
    }
}

impl Config {
    pub fn from_file(path: &Path) -> Result<Self> {
        let mut cfg = Config::default();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !KNOWN_KEYS.iter().any(|(k, _)| *k == key) {
            return Err(Error::Config(format!("unknown key `{key}`")));
        }
        self.values.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> &str {
        self.values
            .get(key)
            .unwrap_or_else(|| panic!("key `{key}` missing from registry"))
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        self.get(key)
            .parse::<f64>()
            .map_err(|e| Error::Config(format!("key `{key}` = `{}`: {e}", self.get(key))))
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        self.get(key)
            .parse::<usize>()
            .map_err(|e| Error::Config(format!("key `{key}` = `{}`: {e}", self.get(key))))
    }

    pub fn bool(&self, key: &str) -> Result<bool> {
        match self.get(key) {
            "true" | "1" | "yes" => Ok(true),
            "false" | "0" | "no" => Ok(false),
            other => Err(Error::Config(format!("key `{key}`: expected bool, got `{other}`"))),
        }
    }

    /// Render every resolved key (defaults included) for the manifest.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.values {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }
}
