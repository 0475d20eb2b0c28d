//! Special functions: Bessel J/I/K of real order, Γ, and Gauss ₂F₁.

mod bessel;
pub mod dd;
mod gamma;
mod hyp2f1;

pub use bessel::{
    bessel_i, bessel_i_with, bessel_ip, bessel_j, bessel_j_real, bessel_j_with, bessel_jp,
    bessel_jp_real, bessel_k, bessel_k_with, bessel_kp,
};
pub use gamma::{beta_fn, gamma, lgamma, rgamma};
pub use hyp2f1::{hyp2f1, hyp2f1_euler, hyp2f1_with};

use crate::error::{param, Result};

/// Truncation and regime-switch settings shared by the series evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunConfig {
    pub series_tolerance: f64,
    pub max_terms: usize,
    pub asymptotic_switch: f64,
}

impl Default for SpecFunConfig {
    fn default() -> Self {
        SpecFunConfig { series_tolerance: 1e-17, max_terms: 500, asymptotic_switch: 20.0 }
    }
}

impl SpecFunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.series_tolerance > 0.0 && self.series_tolerance <= 1e-6) {
            return param("series_tolerance must lie in (0, 1e-6]");
        }
        if self.max_terms < 50 {
            return param("max_terms must be at least 50");
        }
        if !(self.asymptotic_switch > 0.0) {
            return param("asymptotic_switch must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(SpecFunConfig::default().validate().is_ok());
        let bad = SpecFunConfig { series_tolerance: 1e-3, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = SpecFunConfig { max_terms: 10, ..Default::default() };
        assert!(bad.validate().is_err());
    }
}
