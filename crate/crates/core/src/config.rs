use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances shared by every analysis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Values within `eps_value` of each other (or of zero) count as equal.
    pub eps_value: f64,
    pub eps_deriv: f64,
    pub grid_n: usize,
    /// Base finite-difference step, scaled by `max(1, |x|)` at the evaluation point.
    pub deriv_step: f64,
    pub seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            eps_value: 1e-9,
            eps_deriv: 1e-6,
            grid_n: 1024,
            deriv_step: 1e-4,
            seed: 0,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.eps_value) || !positive(self.eps_deriv) || !positive(self.deriv_step) {
            return Err(Error::Config("tolerances must be finite and positive".into()));
        }
        if self.grid_n < 8 {
            return Err(Error::Config(format!("grid_n must be >= 8, got {}", self.grid_n)));
        }
        Ok(())
    }

    pub fn with_grid(mut self, grid_n: usize) -> Self {
        self.grid_n = grid_n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let c = ToleranceConfig::default();
        c.validate().unwrap();
        assert_eq!(c.grid_n, 1024);
        assert_eq!(c.eps_value, 1e-9);
    }

    #[test]
    fn small_grid_rejected() {
        assert!(ToleranceConfig::default().with_grid(4).validate().is_err());
    }
}
