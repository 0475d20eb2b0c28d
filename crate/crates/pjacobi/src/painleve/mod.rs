//! The Schlesinger system behind the Ψ-kernel, its scalar reductions, the
//! Bäcklund transformation and the monodromy data.

mod asymptotics;
mod backlund;
pub mod jet;
mod monodromy;
pub mod ode;
mod residuals;
mod trajectory;

pub use asymptotics::{
    check_boundary_asymptotics, AsymptoticCheck, AsymptoticsReport, End, CONSISTENCY_TOL,
    LARGE_S_REACH, SMALL_S_REACH,
};
pub use backlund::{backlund, backlund_residual_profile, backlund_round_trip_error, BacklundResult, Sign};
pub use monodromy::{monodromy_constants, verify_cyclic, MonodromyBranch, MonodromyData};
pub use residuals::{
    mobius_to_p3, residual_gpv, residual_p3, residual_p3_reciprocal, residual_second_order,
    residual_u_ode,
};
pub use trajectory::{
    integrate_schlesinger, Derived, PainleveTrajectory, ResidualRow, ResidualSummary,
};

use crate::error::{param, Result};
use serde::Serialize;

/// Parameters (Θ, γ); in the kernel application Θ = −α and γ = β − 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PainleveParams {
    pub theta: f64,
    pub gamma: f64,
}

impl PainleveParams {
    pub fn new(theta: f64, gamma: f64) -> Result<Self> {
        if !(theta.is_finite() && gamma.is_finite()) {
            return param("Θ and γ must be finite");
        }
        Ok(PainleveParams { theta, gamma })
    }

    pub fn from_weight(alpha: f64, beta: f64) -> Result<Self> {
        let p = Self::new(-alpha, beta - 0.5)?;
        p.require_solvable()?;
        Ok(p)
    }

    /// γ > −3/2, needed by statements that rely on solvability.
    pub fn require_solvable(&self) -> Result<()> {
        if !(self.gamma > -1.5) {
            return param(format!("γ = {} must exceed −3/2", self.gamma));
        }
        Ok(())
    }
}
