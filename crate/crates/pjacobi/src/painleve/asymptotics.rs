//! One-sided consistency of a trajectory with the boundary behaviour of the
//! distinguished solution. This classifies trajectories; it does not solve
//! the connection problem.

use super::PainleveTrajectory;
use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum End {
    SmallS,
    LargeS,
}

/// Largest s at which a trajectory counts as reaching the small-s end.
pub const SMALL_S_REACH: f64 = 0.1;
/// Smallest s at which a trajectory counts as reaching the large-s end.
pub const LARGE_S_REACH: f64 = 20.0;
/// Allowed deviation of each observable from its target.
pub const CONSISTENCY_TOL: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticCheck {
    pub name: &'static str,
    pub target: f64,
    pub observed: f64,
    pub deviation: f64,
    /// Log–log slope of the deviation toward the end (positive means decay
    /// as s → 0 at the small end, negative means decay as s → ∞).
    pub exponent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticsReport {
    pub end: End,
    pub s_end: f64,
    pub checks: Vec<AsymptoticCheck>,
    pub consistent: bool,
}

fn slope(s: &[f64], d: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> =
        s.iter().zip(d).filter(|(_, v)| **v > 0.0).map(|(a, v)| (a.ln(), v.ln())).collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Compare the trajectory end with the leading boundary terms:
/// small s: y → 1, su → −1/2, σ → −(α+β)² − 1/4, sb → −(α+β)²;
/// large s: σ/s → −α/2 and su = O(1).
pub fn check_boundary_asymptotics(
    traj: &PainleveTrajectory,
    end: End,
    alpha: f64,
    beta: f64,
) -> Result<AsymptoticsReport> {
    let (lo, hi) = traj.s_range();
    let n = traj.len();
    let window: Vec<usize> = match end {
        End::SmallS => {
            if lo > SMALL_S_REACH || n < 4 {
                return Err(Error::InsufficientRange(format!(
                    "trajectory starts at s = {lo}; the small-s check needs s ≤ {SMALL_S_REACH}"
                )));
            }
            (0..n).filter(|&i| traj.s_grid[i] <= 10.0 * lo).collect()
        }
        End::LargeS => {
            if hi < LARGE_S_REACH || n < 4 {
                return Err(Error::InsufficientRange(format!(
                    "trajectory ends at s = {hi}; the large-s check needs s ≥ {LARGE_S_REACH}"
                )));
            }
            (0..n).filter(|&i| traj.s_grid[i] >= 0.5 * hi).collect()
        }
    };
    let ab2 = (alpha + beta).powi(2);
    let at = |i: usize| (traj.s_grid[i], traj.b[i], traj.y[i], traj.u[i], traj.sigma[i]);
    type Obs = (&'static str, f64, fn(f64, f64, f64, f64, f64) -> f64);
    let observables: Vec<Obs> = match end {
        End::SmallS => vec![
            ("y", 1.0, |_, _, y, _, _| y),
            ("s*u", -0.5, |s, _, _, u, _| s * u),
            ("sigma", -ab2 - 0.25, |_, _, _, _, sg| sg),
            ("s*b", -ab2, |s, b, _, _, _| s * b),
        ],
        End::LargeS => vec![
            ("sigma/s", -0.5 * alpha, |s, _, _, _, sg| sg / s),
            ("s*u", 0.0, |s, _, _, u, _| s * u),
        ],
    };
    let end_idx = match end {
        End::SmallS => 0,
        End::LargeS => n - 1,
    };
    let s_win: Vec<f64> = window.iter().map(|&i| traj.s_grid[i]).collect();
    let mut checks = Vec::new();
    let mut consistent = true;
    for (name, target, f) in observables {
        let eval = |i: usize| {
            let (s, b, y, u, sg) = at(i);
            f(s, b, y, u, sg)
        };
        let observed = eval(end_idx);
        let devs: Vec<f64> = window.iter().map(|&i| (eval(i) - target).abs()).collect();
        let deviation = (observed - target).abs();
        let exponent = slope(&s_win, &devs);
        let ok = match (end, name) {
            // su = O(1) only requires boundedness without growth
            (End::LargeS, "s*u") => !(exponent > 0.5) && observed.is_finite(),
            _ => deviation <= CONSISTENCY_TOL * target.abs().max(1.0),
        };
        consistent &= ok;
        checks.push(AsymptoticCheck { name, target, observed, deviation, exponent });
    }
    Ok(AsymptoticsReport { end, s_end: traj.s_grid[end_idx], checks, consistent })
}
