use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds shared by every routine in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// An entry with modulus at or below this is treated as zero.
    pub entry_eps: f64,
    /// Scale for Frobenius residual checks.
    pub residual_eps: f64,
    /// Relative pivot threshold used by the singularity and rank tests.
    pub rank_eps: f64,
    /// Upper bound on the condition proxy accepted for random instances.
    pub condition_cap: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            entry_eps: 1e-12,
            residual_eps: 1e-8,
            rank_eps: 1e-10,
            condition_cap: 1e6,
        }
    }
}

impl ToleranceConfig {
    pub fn new(entry_eps: f64, residual_eps: f64, rank_eps: f64, condition_cap: f64) -> Result<Self> {
        let cfg = Self {
            entry_eps,
            residual_eps,
            rank_eps,
            condition_cap,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("entry_eps", self.entry_eps),
            ("residual_eps", self.residual_eps),
            ("rank_eps", self.rank_eps),
            ("condition_cap", self.condition_cap),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidTolerance { name, value });
            }
        }
        Ok(())
    }
}
