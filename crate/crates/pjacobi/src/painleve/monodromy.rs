//! Stokes multiplier, connection matrices and the cyclic relation.

use super::PainleveParams;
use crate::error::{param, Result};
use crate::linalg::{Mat2, C64, I};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MonodromyBranch {
    /// Θ ∉ ℤ and γ − 1/2 ∉ ℕ₀.
    Generic,
    /// γ − 1/2 ∈ ℕ₀, with a logarithmic term at the origin.
    HalfInteger,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonodromyData {
    pub s0: C64,
    pub e12: Mat2,
    pub e0: Mat2,
    /// Logarithmic coefficient; 0 on the generic branch.
    pub c: f64,
    pub branch: MonodromyBranch,
}

fn cis(x: f64) -> C64 {
    (I * x).exp()
}

fn is_int(x: f64) -> bool {
    x == x.round()
}

pub fn monodromy_constants(p: &PainleveParams) -> Result<MonodromyData> {
    let (th, g) = (p.theta, p.gamma);
    if is_int(th) {
        return param(format!("Θ = {th} is an integer"));
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let s0 = I * (-2.0 * (PI * (g - th)).sin());
    let e12 = Mat2::new(one, zero, -cis(PI * (th - g)), one);
    let shift = g - 0.5;
    let (e0, c, branch) = if is_int(shift) && shift >= 0.0 {
        let e0 = Mat2::new(cis(0.5 * PI * th), zero, -cis(PI * (0.5 * th - g)), cis(-0.5 * PI * th));
        let sign = if (shift.round() as i64 + 1) % 2 == 0 { 1.0 } else { -1.0 };
        (e0, sign / PI, MonodromyBranch::HalfInteger)
    } else if is_int(shift) {
        return param(format!("γ = {g} gives cos πγ = 0 outside the half-integer branch"));
    } else {
        let k = (cis(PI * th) / (-2.0 * (PI * g).cos())).sqrt();
        let e0 = Mat2::new(-cis(PI * g), -cis(-PI * th), -cis(-PI * g), cis(-PI * th)).scale(k);
        (e0, 0.0, MonodromyBranch::Generic)
    };
    Ok(MonodromyData { s0, e12, e0, c, branch })
}

/// Max entrywise |(J S₁ σ₁)² − E₀⁻¹ e^{−2πiγσ₃} [[1, −2cπi], [0, 1]] E₀| with
/// J = E_{1/2}⁻¹ e^{−πiΘσ₃} E_{1/2} and S₁ = [[1, 0], [s₀, 1]].
pub fn verify_cyclic(md: &MonodromyData, p: &PainleveParams) -> Result<f64> {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let j = md.e12.inv() * Mat2::diag_pow(cis(-PI * p.theta)) * md.e12;
    let s1 = Mat2::new(one, zero, md.s0, one);
    let lhs = j * s1 * Mat2::sigma1();
    let lhs = lhs * lhs;
    let log = Mat2::new(one, I * (-2.0 * md.c * PI), zero, one);
    let rhs = md.e0.inv() * Mat2::diag_pow(cis(-2.0 * PI * p.gamma)) * log * md.e0;
    Ok((lhs - rhs).max_abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stokes_multiplier_example() {
        let p = PainleveParams::new(-0.3, 0.2).unwrap();
        let md = monodromy_constants(&p).unwrap();
        assert!((md.s0 - C64::new(0.0, -2.0)).norm() < 1e-15);
        assert!((md.e0.det() - 1.0).norm() < 1e-14);
        assert!((md.e12.det() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn cyclic_relation_generic() {
        for (th, g) in [(-0.3, 0.2), (-1.2, -0.4), (0.45, 1.3), (-2.7, -1.1)] {
            let p = PainleveParams::new(th, g).unwrap();
            let md = monodromy_constants(&p).unwrap();
            let r = verify_cyclic(&md, &p).unwrap();
            assert!(r <= 1e-12, "({th},{g}): {r}");
        }
    }

    #[test]
    fn cyclic_relation_half_integer() {
        for (th, g) in [(-0.3, 0.5), (-1.7, 1.5), (0.2, 2.5)] {
            let p = PainleveParams::new(th, g).unwrap();
            let md = monodromy_constants(&p).unwrap();
            assert_eq!(md.branch, MonodromyBranch::HalfInteger);
            assert!((md.e0.det() - 1.0).norm() < 1e-14);
            let r = verify_cyclic(&md, &p).unwrap();
            assert!(r <= 1e-12, "({th},{g}): {r}");
        }
    }

    #[test]
    fn integer_theta_rejected() {
        let p = PainleveParams::new(-1.0, 0.2).unwrap();
        assert!(monodromy_constants(&p).is_err());
    }
}
