//! Evaluation settings.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    /// Weight parameter; forms have weight `4k`.
    pub k: u32,
    /// Target absolute error.
    pub eps: f64,
    /// Cap on powers `m` in local sums and on 2F1 series terms.
    pub power_cap: usize,
    /// Cap on the shift index of the `Psi^[2k-1,p]` sum.
    pub shift_cap: usize,
    /// Absolute tolerance for adaptive quadrature.
    pub quad_tol: f64,
    /// Worker threads for per-class maps; 1 means sequential.
    pub threads: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            k: 1,
            eps: 1e-12,
            power_cap: 10_000,
            shift_cap: 500,
            quad_tol: 1e-13,
            threads: 1,
        }
    }
}

impl SeriesConfig {
    pub fn with_k(k: u32) -> Self {
        SeriesConfig { k, ..Self::default() }
    }

    pub fn validate(&self) -> crate::Result<()> {
        if self.k < 1 {
            return Err(crate::Error::InvariantViolation("k must be at least 1".into()));
        }
        if !(self.eps >= 1e-14) || !self.eps.is_finite() {
            return Err(crate::Error::InvariantViolation(format!(
                "eps {} below 1e-14",
                self.eps
            )));
        }
        if self.power_cap < 1 || self.shift_cap < 1 || self.threads < 1 {
            return Err(crate::Error::InvariantViolation("caps must be at least 1".into()));
        }
        if !(self.quad_tol > 0.0) {
            return Err(crate::Error::InvariantViolation("quad_tol must be positive".into()));
        }
        Ok(())
    }
}
