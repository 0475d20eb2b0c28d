//! Universal limiting kernels.

use crate::error::{domain, param, Result};
use crate::specfun::{bessel_j_real, bessel_jp_real};
use std::f64::consts::PI;

/// sin(πδ)/(πδ), equal to 1 at δ = 0.
pub fn sine_kernel(delta: f64) -> f64 {
    let x = PI * delta;
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Relative separation below which the Bessel kernel uses its diagonal form.
const BESSEL_DIAG_GAP: f64 = 1e-7;

/// Confluent Bessel kernel 𝕁_ν(x, x) = ¼(J_ν(√x)² − J_{ν+1}(√x) J_{ν−1}(√x)).
pub fn bessel_kernel_diag(nu: f64, x: f64) -> Result<f64> {
    check_nu(nu)?;
    if !(x > 0.0) {
        return domain(format!("Bessel kernel needs positive arguments, got {x}"));
    }
    let r = x.sqrt();
    let j = bessel_j_real(nu, r)?;
    let jp1 = bessel_j_real(nu + 1.0, r)?;
    let jm1 = bessel_j_real(nu - 1.0, r)?;
    Ok(0.25 * (j * j - jp1 * jm1))
}

fn check_nu(nu: f64) -> Result<()> {
    if !(nu > -1.0) {
        return param(format!("Bessel kernel order {nu} must exceed −1"));
    }
    Ok(())
}

/// 𝕁_ν(u, v) = [J_ν(√u)√v J′_ν(√v) − J_ν(√v)√u J′_ν(√u)] / (2(u − v)).
pub fn bessel_kernel(nu: f64, u: f64, v: f64) -> Result<f64> {
    check_nu(nu)?;
    if !(u > 0.0 && v > 0.0) {
        return domain(format!("Bessel kernel needs positive arguments, got ({u}, {v})"));
    }
    if (u - v).abs() <= BESSEL_DIAG_GAP * u.max(v) {
        return bessel_kernel_diag(nu, 0.5 * (u + v));
    }
    let (su, sv) = (u.sqrt(), v.sqrt());
    let (ju, jv) = (bessel_j_real(nu, su)?, bessel_j_real(nu, sv)?);
    let (dju, djv) = (bessel_jp_real(nu, su)?, bessel_jp_real(nu, sv)?);
    Ok((ju * sv * djv - jv * su * dju) / (2.0 * (u - v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_examples() {
        assert_eq!(sine_kernel(0.0), 1.0);
        assert!(sine_kernel(1.0).abs() < 1e-15);
        assert!((sine_kernel(0.5) - 2.0 / PI).abs() < 1e-15);
        assert!((sine_kernel(0.5) - std::f64::consts::FRAC_2_PI).abs() < 1e-15);
        let d = 3e-5;
        assert!((sine_kernel(d) - (PI * d).sin() / (PI * d)).abs() < 1e-15);
    }

    #[test]
    fn bessel_examples() {
        assert_eq!(bessel_kernel(0.0, 1.0, 2.0).unwrap(), bessel_kernel(0.0, 2.0, 1.0).unwrap());
        let j0 = bessel_j_real(0.0, 1.0).unwrap();
        let j1 = bessel_j_real(1.0, 1.0).unwrap();
        let d = bessel_kernel(0.0, 1.0, 1.0).unwrap();
        assert!((d - 0.25 * (j0 * j0 + j1 * j1)).abs() < 1e-15);
        assert!((d - 0.194793).abs() < 1e-6);
        let h = 1e-5;
        let fd = bessel_kernel(0.0, 1.0 - h, 1.0 + h).unwrap();
        assert!((fd - d).abs() < 1e-6);
        assert!(matches!(bessel_kernel(0.0, -1.0, 1.0), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn half_integer_closed_form() {
        // J_{−1/2}(x) = √(2/(πx)) cos x, J′ from differentiating the closed form
        let j = |x: f64| (2.0 / (PI * x)).sqrt() * x.cos();
        let jp = |x: f64| (2.0 / PI).sqrt() * (-0.5 * x.powf(-1.5) * x.cos() - x.powf(-0.5) * x.sin());
        for (u, v) in [(0.5, 2.0), (1.0, 7.0), (3.3, 3.9)] {
            let (su, sv) = (f64::sqrt(u), f64::sqrt(v));
            let want = (j(su) * sv * jp(sv) - j(sv) * su * jp(su)) / (2.0 * (u - v));
            let got = bessel_kernel(-0.5, u, v).unwrap();
            assert!((got - want).abs() < 1e-10, "({u},{v}) got {got} want {want}");
        }
    }
}
