//! Bäcklund transformation γ → γ̃ = −γ ± 1.
//!
//! With P = b + Θ/2 and B = [[P, −Q], [R, −P]], the gauge factor
//! F₁ = κ(σ₃ ± iσ₂) maps B to B̃ = (I − 2F₁) B (I + 2F₁), from which
//! b̃ = B̃₁₁ − Θ/2, R̃ = B̃₂₁, Q̃ = −B̃₁₂ and ỹ = b̃/R̃.

use super::jet::Jet;
use super::residuals::residual_second_order;
use super::trajectory::{y_jet, PainleveTrajectory, J};
use super::PainleveParams;
use crate::error::{domain, Error, Result};
use crate::specfun::dd::Dd;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Transformed point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BacklundResult {
    pub params: PainleveParams,
    pub b: f64,
    pub y: f64,
    pub kappa: f64,
}

/// Scalar algebra shared by plain numbers and jets.
trait Num:
    Copy
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Mul<f64, Output = Self>
    + std::ops::Add<f64, Output = Self>
{
    fn val(&self) -> f64;
}

impl Num for f64 {
    fn val(&self) -> f64 {
        *self
    }
}

impl Num for Dd {
    fn val(&self) -> f64 {
        self.to_f64()
    }
}

impl<const N: usize> Num for Jet<N> {
    fn val(&self) -> f64 {
        self.value()
    }
}

/// (b̃, R̃, Q̃, κ) from (s, b, R, Q).
fn transform<T: Num>(p: &PainleveParams, sign: Sign, s: T, b: T, r: T, q: T) -> Result<(T, T, T, T)> {
    let sg = sign.value();
    let gt = -p.gamma + sg;
    let pp = b + 0.5 * p.theta;
    let den = pp * (8.0 * sg) + r * 4.0 + q * 4.0 + s * sg;
    if den.val().abs() < 1e-300 || !den.val().is_finite() {
        return Err(Error::Singularity {
            msg: "the gauge factor of the Bäcklund map is singular".into(),
            last_good_s: s.val(),
        });
    }
    let k = (den * 0.0 + (p.gamma - gt)) / den;
    // F₁ = κ[[1, sg], [−sg, −1]]; L = I − 2F₁, M = I + 2F₁
    let (l11, l12, l21, l22) = (k * -2.0 + 1.0, k * (-2.0 * sg), k * (2.0 * sg), k * 2.0 + 1.0);
    let (m11, m12, m21, m22) = (k * 2.0 + 1.0, k * (2.0 * sg), k * (-2.0 * sg), k * -2.0 + 1.0);
    let (b11, b12, b21, b22) = (pp, q * -1.0, r, pp * -1.0);
    let (t11, t12) = (l11 * b11 + l12 * b21, l11 * b12 + l12 * b22);
    let (t21, t22) = (l21 * b11 + l22 * b21, l21 * b12 + l22 * b22);
    let n11 = t11 * m11 + t12 * m21;
    let n12 = t11 * m12 + t12 * m22;
    let n21 = t21 * m11 + t22 * m21;
    let bt = n11 + (-0.5 * p.theta);
    Ok((bt, n21, n12 * -1.0, k))
}

fn tilde_params(p: &PainleveParams, sign: Sign) -> Result<PainleveParams> {
    PainleveParams::new(p.theta, -p.gamma + sign.value())
}

/// Apply the transformation at a single point s.
pub fn backlund(p: &PainleveParams, s: f64, b: f64, y: f64, sign: Sign) -> Result<BacklundResult> {
    if y == 0.0 || !y.is_finite() {
        return domain("y must be finite and non-zero");
    }
    if !(s > 0.0) {
        return domain(format!("s = {s} must be positive"));
    }
    let (bt, rt, qt, k) = transform(p, sign, s, b, b / y, (b + p.theta) * y)?;
    let yt = if rt.abs() >= (bt + p.theta).abs() { bt / rt } else { qt / (bt + p.theta) };
    Ok(BacklundResult { params: tilde_params(p, sign)?, b: bt, y: yt, kappa: k })
}

/// Transformed ỹ as a jet at s, for residual evaluation.
fn transformed_jets(traj: &PainleveTrajectory, s: f64, sign: Sign) -> Result<(J, J)> {
    let p = &traj.params;
    let [b, r, q] = traj.jets_at(s)?;
    let (bt, rt, qt, _) = transform(p, sign, J::var(s), b, r, q)?;
    let pt = tilde_params(p, sign)?;
    Ok((bt, y_jet(&pt, bt, rt, qt)))
}

/// Residual of the second-order equation with γ̃ for the transformed
/// solution, at every node and `refine − 1` interior points per step.
pub fn backlund_residual_profile(traj: &PainleveTrajectory, sign: Sign, refine: usize) -> Result<Vec<(f64, f64)>> {
    let pt = tilde_params(&traj.params, sign)?;
    traj.dense_points(refine)
        .into_iter()
        .map(|s| {
            let (_, y) = transformed_jets(traj, s, sign)?;
            Ok((s, residual_second_order(&pt, y.value(), y.deriv(1), y.deriv(2), s)?))
        })
        .collect()
}

/// max |(b, y) − T(T(b, y))| over the nodes, with the same sign applied twice
/// (γ → −γ ± 1 → γ). The composition is evaluated on the node state (b, R, Q)
/// in double-double arithmetic, since near poles of the image the second
/// gauge factor cancels to O(1) from terms of size O(κ²).
pub fn backlund_round_trip_error(traj: &PainleveTrajectory, sign: Sign) -> Result<f64> {
    let p = &traj.params;
    let pt = tilde_params(p, sign)?;
    let mut worst = 0.0f64;
    for i in 0..traj.len() {
        let s = Dd::from_f64(traj.s_grid[i]);
        let [b, r, q] = traj.node_state(i).map(Dd::from_f64);
        let (b1, r1, q1, _) = transform(p, sign, s, b, r, q)?;
        let (b2, r2, q2, _) = transform(&pt, sign, s, b1, r1, q1)?;
        let (b2, r2, q2) = (b2.val(), r2.val(), q2.val());
        let y2 = if r2.abs() >= (b2 + p.theta).abs() { b2 / r2 } else { q2 / (b2 + p.theta) };
        worst = worst.max((b2 - traj.b[i]).abs()).max((y2 - traj.y[i]).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::painleve::integrate_schlesinger;

    #[test]
    fn identity_at_gamma_half() {
        let p = PainleveParams::new(-0.7, 0.5).unwrap();
        let r = backlund(&p, 2.0, 0.3, 1.4, Sign::Plus).unwrap();
        assert_eq!(r.params.gamma, 0.5);
        assert_eq!(r.kappa, 0.0);
        assert!((r.b - 0.3).abs() < 1e-15 && (r.y - 1.4).abs() < 1e-15);
    }

    #[test]
    fn matches_explicit_relations_for_plus_sign() {
        let p = PainleveParams::new(-1.0, -0.25).unwrap();
        let (s, b, y) = (2.5, 0.3, 1.2);
        let r = backlund(&p, s, b, y, Sign::Plus).unwrap();
        let k = r.kappa;
        let pp = b + p.theta / 2.0;
        let (rr, qq) = (b / y, (b + p.theta) * y);
        let bt = (1.0 - 8.0 * k * k) * pp - 2.0 * k * (1.0 + 2.0 * k) * rr + 2.0 * k * (1.0 - 2.0 * k) * qq
            - p.theta / 2.0;
        let rt = 4.0 * k * (1.0 + 2.0 * k) * pp + (1.0 + 2.0 * k).powi(2) * rr + 4.0 * k * k * qq;
        assert!((r.b - bt).abs() < 1e-13);
        assert!((r.y - bt / rt).abs() < 1e-12);
        let kk = (p.gamma - (1.0 - p.gamma)) / (8.0 * pp + 4.0 * rr + 4.0 * qq + s);
        assert!((k - kk).abs() < 1e-15);
    }

    #[test]
    fn two_steps_from_gamma_two_reach_zero() {
        let p = PainleveParams::new(-0.4, 2.0).unwrap();
        let a = backlund(&p, 1.5, 0.2, 1.3, Sign::Plus).unwrap();
        assert_eq!(a.params.gamma, -1.0);
        let b = backlund(&a.params, 1.5, a.b, a.y, Sign::Minus).unwrap();
        assert_eq!(b.params.gamma, 0.0);
    }

    #[test]
    fn transformed_trajectory_solves_shifted_equation() {
        let p = PainleveParams::new(-1.0, -0.25).unwrap();
        let t = integrate_schlesinger(&p, 1.0, 10.0, 0.3, 1.2, 1e-10).unwrap();
        let prof = backlund_residual_profile(&t, Sign::Plus, 2).unwrap();
        let worst = prof.iter().map(|r| r.1.abs()).fold(0.0, f64::max);
        assert!(worst <= 1e-6, "{worst}");
        assert!(backlund_round_trip_error(&t, Sign::Plus).unwrap() <= 1e-8);
        assert!(backlund_round_trip_error(&t, Sign::Minus).unwrap() <= 1e-8);
    }
}
