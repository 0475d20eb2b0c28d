//! Left-hand sides of the scalar equations satisfied by y, ω = y², v and u.

use super::PainleveParams;
use crate::error::{domain, Result};

fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0) {
        return domain(format!("s = {s} must be positive"));
    }
    Ok(())
}

/// y″ − 2y y′²/(y²−1) + y′/s + y(y²+1)/(4(y²−1)) + y/(2s) − Θy/s + γ(y²+1)/(2s).
pub fn residual_second_order(p: &PainleveParams, y: f64, y1: f64, y2: f64, s: f64) -> Result<f64> {
    check_s(s)?;
    let d = y * y - 1.0;
    if d == 0.0 {
        return domain("y = ±1 is a pole of the second-order equation");
    }
    Ok(y2 - 2.0 * y * y1 * y1 / d + y1 / s + y * (y * y + 1.0) / (4.0 * d) + y / (2.0 * s)
        - p.theta * y / s
        + p.gamma * (y * y + 1.0) / (2.0 * s))
}

/// Generalized Painlevé V in ω = y²; `sign` = sign of y selects ±γ√ω.
pub fn residual_gpv(p: &PainleveParams, w: f64, w1: f64, w2: f64, s: f64, sign: f64) -> Result<f64> {
    check_s(s)?;
    if w == 0.0 || w == 1.0 || w < 0.0 {
        return domain(format!("ω = {w} is singular for the generalized PV equation"));
    }
    Ok(w2 - (1.0 / (w - 1.0) + 1.0 / (2.0 * w)) * w1 * w1 + w1 / s - (2.0 * p.theta - 1.0) * w / s
        + w * (w + 1.0) / (2.0 * (w - 1.0))
        + sign.signum() * p.gamma * w.sqrt() * (w + 1.0) / s)
}

/// v = (y+1)/(y−1).
pub fn mobius_to_p3(y: f64) -> Result<f64> {
    if y == 1.0 {
        return domain("the Möbius map has a pole at y = 1");
    }
    Ok((y + 1.0) / (y - 1.0))
}

/// Painlevé III left-hand side in v.
pub fn residual_p3(p: &PainleveParams, v: f64, v1: f64, v2: f64, s: f64) -> Result<f64> {
    check_s(s)?;
    if v == 0.0 {
        return domain("v = 0 is a pole of the Painlevé III equation");
    }
    let (a, b) = p3_coefficients(p);
    Ok(p3_lhs(a, b, v, v1, v2, s))
}

/// The same equation in the chart w = 1/v, where the two rational
/// coefficients trade places; equals −residual_p3/v² and stays regular
/// across poles of v.
pub fn residual_p3_reciprocal(p: &PainleveParams, w: f64, w1: f64, w2: f64, s: f64) -> Result<f64> {
    check_s(s)?;
    if w == 0.0 {
        return domain("w = 0 is a pole of the reciprocal Painlevé III equation");
    }
    let (a, b) = p3_coefficients(p);
    Ok(p3_lhs(b, a, w, w1, w2, s))
}

fn p3_coefficients(p: &PainleveParams) -> (f64, f64) {
    (0.5 * (p.theta - p.gamma - 0.5), 0.5 * (p.theta + p.gamma - 0.5))
}

fn p3_lhs(a: f64, b: f64, v: f64, v1: f64, v2: f64, s: f64) -> f64 {
    v2 - v1 * v1 / v + v1 / s + (a * v * v - b) / s - v * v * v / 16.0 + 1.0 / (16.0 * v)
}

/// s u‴ + u″(3 − s u′/u) − 2u′²/u − 4s u′u² − 4u³ − u/4 − γu′/(4u).
pub fn residual_u_ode(p: &PainleveParams, u: f64, u1: f64, u2: f64, u3: f64, s: f64) -> Result<f64> {
    check_s(s)?;
    if u == 0.0 {
        return domain("u = 0 is a pole of the third-order equation");
    }
    Ok(s * u3 + u2 * (3.0 - s * u1 / u) - 2.0 * u1 * u1 / u - 4.0 * s * u1 * u * u - 4.0 * u * u * u
        - u / 4.0
        - p.gamma * u1 / (4.0 * u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(theta: f64, gamma: f64) -> PainleveParams {
        PainleveParams::new(theta, gamma).unwrap()
    }

    #[test]
    fn trivial_substitutions() {
        for s in [0.5, 2.0, 7.0] {
            assert_eq!(residual_second_order(&pp(-0.3, 0.0), 0.0, 0.0, 0.0, s).unwrap(), 0.0);
            let r = residual_second_order(&pp(-0.3, 1.0), 0.0, 0.0, 0.0, s).unwrap();
            assert!((r - 1.0 / (2.0 * s)).abs() < 1e-15);
            for theta in [-1.3, 0.4] {
                assert!(residual_p3(&pp(theta, 0.0), 1.0, 0.0, 0.0, s).unwrap().abs() < 1e-15);
            }
        }
        assert_eq!(mobius_to_p3(0.0).unwrap(), -1.0);
        assert_eq!(mobius_to_p3(3.0).unwrap(), 2.0);
        assert!(residual_second_order(&pp(0.1, 0.0), 1.0, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn p3_reciprocal_chart() {
        let p = pp(-1.0, -0.25);
        let (v, v1, v2, s) = (2.7, -0.8, 0.35, 1.9);
        let rv = residual_p3(&p, v, v1, v2, s).unwrap();
        let (w, w1) = (1.0 / v, -v1 / (v * v));
        let w2 = -v2 / (v * v) + 2.0 * v1 * v1 / (v * v * v);
        let rw = residual_p3_reciprocal(&p, w, w1, w2, s).unwrap();
        assert!((rw + rv / (v * v)).abs() < 1e-13, "{rw} {rv}");
    }

    #[test]
    fn u_equation_gamma_term_and_explicit_s() {
        let (u, u1, u2, u3) = (-0.4, 0.3, -0.2, 0.1);
        let r = residual_u_ode(&pp(-1.0, 0.7), u, u1, u2, u3, 2.0).unwrap();
        let r0 = residual_u_ode(&pp(-1.0, 0.0), u, u1, u2, u3, 2.0).unwrap();
        assert!((r0 - r - 0.7 * u1 / (4.0 * u)).abs() < 1e-14);
        let shifted = residual_u_ode(&pp(-1.0, 0.7), u, u1, u2, u3, 3.0).unwrap();
        assert!((shifted - r).abs() > 1e-3);
    }
}
