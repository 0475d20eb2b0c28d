//! Hard-edge parametrices: G, the Bessel model Φ, E₁, the ψ approximants for
//! large and small s, and the scalar function m.

use crate::error::{domain, param, Error, Result};
use crate::linalg::{Mat2, C64, I};
use crate::quadrature::gauss_jacobi;
use crate::specfun::{beta_fn, bessel_i, bessel_ip, bessel_j_real, bessel_jp_real, bessel_k, bessel_kp, hyp2f1};
use crate::weight::Side;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Sectors of the Bessel parametrix, bounded by arg ζ = ±2π/3 and π.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    I,
    II,
    III,
}

const SECTOR_EDGE: f64 = 2.0 * PI / 3.0;
const ARG_TOL: f64 = 1e-12;

/// (I − iσ₁)/√2.
fn m_minus() -> Mat2 {
    (Mat2::identity() - Mat2::sigma1().scale(I)).scale(C64::new(FRAC_1_SQRT_2, 0.0))
}

/// Modulus and argument of ζ, with the side flag fixing arg = ±π on (−∞, 0).
fn polar_with_side(zeta: C64, side: Option<Side>, cut_end: f64) -> Result<(f64, f64, Option<Side>)> {
    if !(zeta.re.is_finite() && zeta.im.is_finite()) {
        return param("ζ must be finite");
    }
    if zeta.im == 0.0 && zeta.re < cut_end {
        let side = side.ok_or_else(|| {
            Error::Branch(format!("ζ = {} lies on a cut; pass a side flag", zeta.re))
        })?;
        let arg = if zeta.re < 0.0 { side.sign() * PI } else { 0.0 };
        return Ok((zeta.re.abs(), arg, Some(side)));
    }
    Ok((zeta.norm(), zeta.arg(), None))
}

/// Exponent E(ζ) = (α/2) Log((√ζ − ½)/(√ζ + ½)), which equals
/// (α√ζ/2) ∫₀^{1/4} τ^{−1/2} (τ − ζ)^{−1} dτ.
fn g_exponent(alpha: f64, sq: C64, zeta_re: f64, side: Option<Side>) -> C64 {
    if alpha == 0.0 {
        return C64::new(0.0, 0.0);
    }
    let ratio = (sq - 0.5) / (sq + 0.5);
    let log = match side {
        Some(sd) if zeta_re > 0.0 => C64::new(ratio.re.abs().ln(), sd.sign() * PI),
        _ => ratio.ln(),
    };
    log * (0.5 * alpha)
}

/// G(ζ) = ζ^{σ₃/4} (I − iσ₁)/√2 e^{E(ζ)σ₃}. On (−∞, 1/4) a side flag selects
/// the boundary value.
pub fn g_parametrix(alpha: f64, zeta: C64, side: Option<Side>) -> Result<Mat2> {
    if zeta == C64::new(0.0, 0.0) || zeta == C64::new(0.25, 0.0) {
        return domain(format!("G is singular at ζ = {zeta}"));
    }
    let (modulus, arg, side) = polar_with_side(zeta, side, 0.25)?;
    let sq = C64::from_polar(modulus.sqrt(), 0.5 * arg);
    let q = C64::from_polar(modulus.powf(0.25), 0.25 * arg);
    let e = g_exponent(alpha, sq, zeta.re, side);
    Ok(Mat2::diag_pow(q) * m_minus() * Mat2::diag(e.exp(), (-e).exp()))
}

/// Bessel model Φ(ζ) of order ν in the given sector. Points on the negative
/// axis are accepted in sectors II (upper side) and III (lower side).
pub fn bessel_parametrix_phi(nu: f64, zeta: C64, sector: Sector) -> Result<Mat2> {
    if !nu.is_finite() {
        return param("order must be finite");
    }
    if zeta == C64::new(0.0, 0.0) || !(zeta.re.is_finite() && zeta.im.is_finite()) {
        return domain(format!("Φ is not defined at ζ = {zeta}"));
    }
    let theta = if zeta.im == 0.0 && zeta.re < 0.0 {
        match sector {
            Sector::II => PI,
            Sector::III => -PI,
            Sector::I => return domain("the negative axis is not in sector I"),
        }
    } else {
        zeta.arg()
    };
    let ok = match sector {
        Sector::I => theta.abs() <= SECTOR_EDGE + ARG_TOL,
        Sector::II => theta >= SECTOR_EDGE - ARG_TOL,
        Sector::III => theta <= -SECTOR_EDGE + ARG_TOL,
    };
    if !ok {
        return domain(format!("arg ζ = {theta} is outside sector {sector:?}"));
    }
    let root = C64::from_polar(zeta.norm().sqrt(), 0.5 * theta);
    let z = root * 2.0;
    let (iv, ivp) = (bessel_i(nu, z)?, bessel_ip(nu, z)?);
    let (kv, kvp) = (bessel_k(nu, z)?, bessel_kp(nu, z)?);
    let base = Mat2::new(iv, I / PI * kv, I * (2.0 * PI) * root * ivp, -(root * 2.0) * kvp);
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    Ok(match sector {
        Sector::I => base,
        Sector::II => base * Mat2::new(one, zero, -(I * nu * PI).exp(), one),
        Sector::III => base * Mat2::new(one, zero, (-I * nu * PI).exp(), one),
    })
}

/// E₁(ζ) = G(ζ) e^{∓πiασ₃/2} (I − iσ₁)/√2 (π²s²ζ/4)^{σ₃/4}, with the upper
/// sign for Im ζ > 0 (or side `Plus`) and the lower sign otherwise.
pub fn e1_matrix(alpha: f64, s: f64, zeta: C64, side: Option<Side>) -> Result<Mat2> {
    if !(s > 0.0 && s.is_finite()) {
        return param(format!("s = {s} must be positive"));
    }
    let (modulus, arg, side) = polar_with_side(zeta, side, f64::INFINITY)?;
    let upper = match side {
        Some(sd) => sd == Side::Plus,
        None => zeta.im > 0.0,
    };
    let g = g_parametrix(alpha, zeta, side)?;
    let sgn = if upper { -1.0 } else { 1.0 };
    let rot = Mat2::diag_pow((I * (sgn * 0.5 * PI * alpha)).exp());
    let q = C64::from_polar((PI * PI * s * s * modulus / 4.0).powf(0.25), 0.25 * arg);
    Ok(g * rot * m_minus() * Mat2::diag_pow(q))
}

/// A ψ-vector value with an optional accuracy note.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiValues {
    pub psi: [C64; 2],
    pub warning: Option<String>,
}

/// Lower limit of s for the large-s approximant.
pub const LARGE_S_MIN: f64 = 10.0;
/// Upper limit of s for the small-s approximant.
pub const SMALL_S_MAX: f64 = 0.5;

fn check_neg(zeta_neg: f64, s: f64) -> Result<()> {
    if !(s > 0.0 && s.is_finite()) {
        return param(format!("s = {s} must be positive"));
    }
    if !(zeta_neg < 0.0 && zeta_neg.is_finite()) {
        return domain(format!("ζ = {zeta_neg} must be negative"));
    }
    Ok(())
}

/// Large-s approximant ψ(ζ) ≈ E₁(ζ₊)(J_β(x), (π/2)s√ζ J′_β(x)), x = s√|ζ|/2,
/// with √ζ = i√|ζ| on the upper side.
pub fn psi_large_s_approx(alpha: f64, beta: f64, s: f64, zeta_neg: f64) -> Result<PsiValues> {
    check_neg(zeta_neg, s)?;
    if !(beta > -1.0) {
        return param(format!("beta = {beta} must exceed −1"));
    }
    let e1 = e1_matrix(alpha, s, C64::new(zeta_neg, 0.0), Some(Side::Plus))?;
    let root = (-zeta_neg).sqrt();
    let x = 0.5 * s * root;
    let v = [
        C64::new(bessel_j_real(beta, x)?, 0.0),
        I * (0.5 * PI * s * root * bessel_jp_real(beta, x)?),
    ];
    let warning = (s < LARGE_S_MIN)
        .then(|| format!("s = {s} is below {LARGE_S_MIN}; the O(1/s) error may be large"));
    Ok(PsiValues { psi: e1.apply(v), warning })
}

/// Small-s approximant ψ(ζ) ≈ (πs/2)^{−σ₃/2}(−iσ₁)(J_{α+β}(r), πi r J′_{α+β}(r)),
/// r = s√|ζ|/2.
pub fn psi_small_s_approx(alpha: f64, beta: f64, s: f64, zeta_neg: f64) -> Result<PsiValues> {
    check_neg(zeta_neg, s)?;
    let nu = alpha + beta;
    if !(nu > -1.0) {
        return param(format!("alpha + beta = {nu} must exceed −1"));
    }
    let r = 0.5 * s * (-zeta_neg).sqrt();
    let v = [C64::new(bessel_j_real(nu, r)?, 0.0), I * (PI * r * bessel_jp_real(nu, r)?)];
    let pre = Mat2::diag_pow(C64::new((0.5 * PI * s).powf(-0.5), 0.0)) * Mat2::sigma1().scale(-I);
    let warning = (s > SMALL_S_MAX)
        .then(|| format!("s = {s} exceeds {SMALL_S_MAX}; the O(s^l) error may be large"));
    Ok(PsiValues { psi: pre.apply(v), warning })
}

/// Which ψ approximant to assemble a kernel from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiApprox {
    LargeS,
    SmallS,
}

/// Kernel (ψ₁(u)ψ₂(v) − ψ₁(v)ψ₂(u))/(2πi(u − v)) with ψ evaluated at
/// ζ = −4u/s², compared in the u variable with the Bessel kernel.
pub fn psi_approx_kernel(which: PsiApprox, alpha: f64, beta: f64, s: f64, u: f64, v: f64) -> Result<f64> {
    if !(u > 0.0 && v > 0.0) {
        return domain(format!("kernel arguments ({u}, {v}) must be positive"));
    }
    let (u, v) = if (u - v).abs() <= 1e-7 * u.max(v) {
        let m = 0.5 * (u + v);
        (m * (1.0 - 1e-4), m * (1.0 + 1e-4))
    } else {
        (u, v)
    };
    let eval = |w: f64| -> Result<[C64; 2]> {
        let z = -4.0 * w / (s * s);
        Ok(match which {
            PsiApprox::LargeS => psi_large_s_approx(alpha, beta, s, z)?.psi,
            PsiApprox::SmallS => psi_small_s_approx(alpha, beta, s, z)?.psi,
        })
    };
    let (a, b) = (eval(u)?, eval(v)?);
    let k = (a[0] * b[1] - b[0] * a[1]) / (I * (2.0 * PI * (u - v)));
    Ok(k.re)
}

fn is_int(x: f64) -> bool {
    x == x.round()
}

fn check_m_zeta(zeta: C64) -> Result<()> {
    if !(zeta.re.is_finite() && zeta.im.is_finite()) {
        return param("ζ must be finite");
    }
    if zeta.im == 0.0 && (0.0..=0.25).contains(&zeta.re) {
        return domain(format!("ζ = {} lies on the support [0, 1/4]", zeta.re));
    }
    Ok(())
}

/// ∫_{−1}^{1} (1−ξ)^a (1+ξ)^b f(ξ) dξ by Gauss–Jacobi doubling.
fn jacobi_integral(a: f64, b: f64, f: impl Fn(f64) -> C64) -> Result<C64> {
    let eval = |m: usize| -> Result<C64> {
        let rule = gauss_jacobi(m, a, b)?;
        Ok(rule.nodes.iter().zip(&rule.weights).map(|(x, w)| f(*x) * *w).sum())
    };
    let mut m = 32;
    let mut prev = eval(m)?;
    while m < 4096 {
        m *= 2;
        let cur = eval(m)?;
        if (cur - prev).norm() <= 1e-13 * cur.norm().max(1e-300) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Accuracy("Plemelj integral did not converge".into()))
}

/// ∫₀^{1/4} τ^β (1/4 − τ)^α (τ − ζ)^{−1} dτ with τ = (1+ξ)/8.
fn plemelj_integral(alpha: f64, beta: f64, zeta: C64) -> Result<C64> {
    let scale = 0.125f64.powf(alpha + beta + 1.0);
    Ok(jacobi_integral(alpha, beta, |x| (C64::new((1.0 + x) / 8.0, 0.0) - zeta).inv())? * scale)
}

/// The generic branch of m by quadrature of its Plemelj integral.
pub fn m_function_quadrature(alpha: f64, beta: f64, s: f64, zeta: C64) -> Result<C64> {
    check_m_args(alpha, beta, s, zeta)?;
    let ab = alpha + beta;
    if is_int(ab) {
        return param(format!("alpha + beta = {ab} is an integer; use the logarithmic variant"));
    }
    let pre = -(alpha * PI).sin() * s.powf(2.0 * ab) / ((ab * PI).sin() * 2.0 * PI);
    Ok(plemelj_integral(alpha, beta, zeta)? * pre / I)
}

/// The generic branch of m through ₂F₁(1, β+1; α+β+2; 1/(4ζ)).
pub fn m_function_closed_form(alpha: f64, beta: f64, s: f64, zeta: C64) -> Result<C64> {
    check_m_args(alpha, beta, s, zeta)?;
    let ab = alpha + beta;
    if is_int(ab) {
        return param(format!("alpha + beta = {ab} is an integer; no closed form"));
    }
    let f = hyp2f1(1.0, beta + 1.0, ab + 2.0, (zeta * 4.0).inv())?;
    let pre = (alpha * PI).sin() * beta_fn(alpha + 1.0, beta + 1.0) * (0.5 * s).powf(2.0 * ab)
        / (8.0 * PI * (ab * PI).sin());
    Ok(f * pre / (I * zeta))
}

/// Logarithmic variant of m for integer α + β:
/// sin(απ)(−1)^{α+β} s^{2(α+β)}/(2πi) ∫ τ^β(1/4−τ)^α ln(s²τ)/(τ−ζ) dτ.
pub fn m_function_log(alpha: f64, beta: f64, s: f64, zeta: C64) -> Result<C64> {
    check_m_args(alpha, beta, s, zeta)?;
    let ab = alpha + beta;
    if !is_int(ab) {
        return param(format!("alpha + beta = {ab} is not an integer"));
    }
    let base = plemelj_integral(alpha, beta, zeta)?;
    // ∫(1+ξ)^b ln(1+ξ) f = ∂_b ∫(1+ξ)^b f, by Richardson-extrapolated central differences
    let f = |x: f64| (C64::new((1.0 + x) / 8.0, 0.0) - zeta).inv();
    let d = |h: f64| -> Result<C64> {
        let hi = jacobi_integral(alpha, beta + h, f)?;
        let lo = jacobi_integral(alpha, beta - h, f)?;
        Ok((hi - lo) / (2.0 * h))
    };
    let h = 2e-3f64.min(0.5 * (beta + 1.0));
    let deriv = (d(h)? * 4.0 - d(2.0 * h)?) / 3.0;
    let log_part = deriv * 0.125f64.powf(ab + 1.0);
    let integral = base * (s * s / 8.0).ln() + log_part;
    let sign = if (ab.round() as i64) % 2 == 0 { 1.0 } else { -1.0 };
    let pre = (alpha * PI).sin() * sign * s.powf(2.0 * ab) / (2.0 * PI);
    Ok(integral * pre / I)
}

fn check_m_args(alpha: f64, beta: f64, s: f64, zeta: C64) -> Result<()> {
    if !(alpha.is_finite() && beta > -1.0 && alpha > -1.0) {
        return param(format!("exponents ({alpha}, {beta}) must exceed −1"));
    }
    if !(s > 0.0 && s.is_finite()) {
        return param(format!("s = {s} must be positive"));
    }
    check_m_zeta(zeta)
}

/// m(ζ), routed to the logarithmic variant when α + β is an integer.
pub fn m_function(alpha: f64, beta: f64, s: f64, zeta: C64) -> Result<C64> {
    check_m_args(alpha, beta, s, zeta)?;
    if (alpha * PI).sin() == 0.0 || alpha == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    if is_int(alpha + beta) {
        m_function_log(alpha, beta, s, zeta)
    } else {
        m_function_quadrature(alpha, beta, s, zeta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::kernels::bessel_kernel;

    fn close(a: &Mat2, b: &Mat2, tol: f64) -> bool {
        (*a - *b).max_abs() <= tol * b.max_abs().max(1.0)
    }

    #[test]
    fn g_determinant_and_alpha_zero() {
        let g = g_parametrix(0.7, C64::new(2.0, 0.0), None).unwrap();
        assert!((g.det() - 1.0).norm() < 1e-12);
        let z = C64::new(-0.3, 0.8);
        let g0 = g_parametrix(0.0, z, None).unwrap();
        let want = Mat2::diag_pow(z.powf(0.25)) * m_minus();
        assert_eq!(g0, want);
    }

    #[test]
    fn g_exponent_matches_quadrature() {
        // (α√ζ/2) ∫₀^{1/4} τ^{−1/2}/(τ−ζ) dτ at ζ = −1 from above, √ζ = i
        let alpha = 0.8;
        let rule = gauss_jacobi(40, 0.0, -0.5).unwrap();
        let integral: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(x, w)| w / ((1.0 + x) / 8.0 + 1.0))
            .sum::<f64>()
            * 0.125f64.sqrt();
        let quad = I * (0.5 * alpha * integral);
        let e = g_exponent(alpha, I, -1.0, Some(Side::Plus));
        assert!((e - quad).norm() < 1e-10, "{e} vs {quad}");
    }

    #[test]
    fn g_jumps() {
        let a = 0.6;
        let p = g_parametrix(a, C64::new(-0.7, 0.0), Some(Side::Plus)).unwrap();
        let m = g_parametrix(a, C64::new(-0.7, 0.0), Some(Side::Minus)).unwrap();
        assert!(close(&p, &(m * Mat2::sigma2().scale(I)), 1e-12));
        let p = g_parametrix(a, C64::new(0.1, 0.0), Some(Side::Plus)).unwrap();
        let m = g_parametrix(a, C64::new(0.1, 0.0), Some(Side::Minus)).unwrap();
        assert!(close(&p, &(m * Mat2::diag_pow((I * PI * a).exp())), 1e-12));
        let near = g_parametrix(a, C64::new(-0.7, 1e-12), None).unwrap();
        assert!(close(&near, &p_or(a, -0.7), 1e-6));
        assert!(matches!(g_parametrix(a, C64::new(-0.7, 0.0), None), Err(Error::Branch(_))));
    }

    fn p_or(a: f64, x: f64) -> Mat2 {
        g_parametrix(a, C64::new(x, 0.0), Some(Side::Plus)).unwrap()
    }

    #[test]
    fn phi_determinant_in_all_sectors() {
        for r in [0.5, 2.0, 10.0] {
            for (sec, th) in [(Sector::I, 0.3), (Sector::II, 2.5), (Sector::III, -2.5)] {
                let z = C64::from_polar(r, th);
                let d = bessel_parametrix_phi(0.75, z, sec).unwrap().det();
                assert!((d - 1.0).norm() < 1e-10, "r={r} {sec:?}: {d}");
            }
        }
        let d = bessel_parametrix_phi(1.5, C64::new(1.0, 0.0), Sector::I).unwrap().det();
        assert!((d - 1.0).norm() < 1e-10);
        assert!(matches!(
            bessel_parametrix_phi(0.5, C64::new(1.0, 0.0), Sector::II),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn phi_jumps() {
        let nu = 0.75;
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let z = C64::new(-1.0, 0.0);
        let p = bessel_parametrix_phi(nu, z, Sector::II).unwrap();
        let m = bessel_parametrix_phi(nu, z, Sector::III).unwrap();
        let j3 = Mat2::new(zero, one, -one, zero);
        assert!(close(&p, &(m * j3), 1e-10));
        let z2 = C64::from_polar(1.3, SECTOR_EDGE);
        let p = bessel_parametrix_phi(nu, z2, Sector::I).unwrap();
        let m = bessel_parametrix_phi(nu, z2, Sector::II).unwrap();
        let j2 = Mat2::new(one, zero, (I * nu * PI).exp(), one);
        assert!(close(&p, &(m * j2), 1e-10));
        let z4 = C64::from_polar(1.3, -SECTOR_EDGE);
        let p = bessel_parametrix_phi(nu, z4, Sector::III).unwrap();
        let m = bessel_parametrix_phi(nu, z4, Sector::I).unwrap();
        let j4 = Mat2::new(one, zero, (-I * nu * PI).exp(), one);
        assert!(close(&p, &(m * j4), 1e-10));
    }

    #[test]
    fn phi_large_zeta() {
        let z = C64::new(400.0, 0.0);
        let phi = bessel_parametrix_phi(0.5, z, Sector::I).unwrap();
        let root = z.sqrt();
        let lhs = phi * Mat2::diag_pow((-root * 2.0).exp());
        let m_plus = (Mat2::identity() + Mat2::sigma1().scale(I)).scale(C64::new(FRAC_1_SQRT_2, 0.0));
        let want = Mat2::diag_pow((z * 4.0 * PI * PI).powf(-0.25)) * m_plus;
        for i in 0..2 {
            for j in 0..2 {
                let rel = (lhs.get(i, j) - want.get(i, j)).norm() / want.get(i, j).norm();
                assert!(rel < 2.0 / root.norm(), "({i},{j}) rel {rel}");
            }
        }
    }

    #[test]
    fn e1_is_analytic_across_negative_axis() {
        for a in [0.0, 0.4, 1.0] {
            let z = C64::new(-0.02, 0.0);
            let p = e1_matrix(a, 30.0, z, Some(Side::Plus)).unwrap();
            let m = e1_matrix(a, 30.0, z, Some(Side::Minus)).unwrap();
            assert!(close(&p, &m, 1e-12), "alpha={a}");
            assert!((p.det() - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn large_s_kernel_approaches_bessel() {
        let s = 30.0;
        let (alpha, beta) = (1.0, 0.5);
        let mut worst = 0.0f64;
        for &u in &[0.5, 1.5, 3.0, 5.0] {
            for &v in &[0.5, 2.0, 3.0, 5.0] {
                let k = psi_approx_kernel(PsiApprox::LargeS, alpha, beta, s, u, v).unwrap();
                let j = bessel_kernel(beta, u, v).unwrap();
                worst = worst.max((k - j).abs());
            }
        }
        assert!(worst <= 3.0 / s, "worst {worst}");
        let w = psi_large_s_approx(alpha, beta, 5.0, -0.1).unwrap();
        assert!(w.warning.is_some());
    }

    #[test]
    fn small_s_kernel_is_bessel_of_combined_order() {
        let (alpha, beta) = (1.0, 0.5);
        for &(u, v) in &[(0.5, 1.0), (2.0, 4.0), (3.0, 3.0)] {
            let k = psi_approx_kernel(PsiApprox::SmallS, alpha, beta, 0.1, u, v).unwrap();
            let j = bessel_kernel(alpha + beta, u, v).unwrap();
            assert!((k - j).abs() < 1e-7, "({u},{v}) {k} vs {j}");
        }
        assert!(matches!(psi_small_s_approx(-0.8, -0.5, 0.1, -1.0), Err(Error::Parameter(_))));
    }

    #[test]
    fn m_quadrature_matches_hypergeometric_form() {
        let z = C64::new(1.0, 0.0);
        let q = m_function_quadrature(0.5, 0.25, 1.0, z).unwrap();
        let c = m_function_closed_form(0.5, 0.25, 1.0, z).unwrap();
        assert!((q - c).norm() < 1e-9 * c.norm(), "{q} vs {c}");
        for z in [C64::new(-2.0, 0.5), C64::new(0.1, 0.3), C64::new(3.0, -1.0)] {
            let q = m_function(0.3, 1.2, 2.0, z).unwrap();
            let c = m_function_closed_form(0.3, 1.2, 2.0, z).unwrap();
            assert!((q - c).norm() < 1e-9 * c.norm(), "z={z}");
        }
    }

    #[test]
    fn m_vanishes_for_alpha_zero_and_decays() {
        assert_eq!(m_function(0.0, 0.3, 1.0, C64::new(1.0, 0.0)).unwrap(), C64::new(0.0, 0.0));
        let bounds: Vec<f64> = [1e2, 1e3, 1e4]
            .iter()
            .map(|&r| r * m_function(0.5, 0.25, 1.0, C64::new(r, 0.0)).unwrap().norm())
            .collect();
        assert!(bounds.windows(2).all(|w| (w[0] - w[1]).abs() < 0.05 * w[1]), "{bounds:?}");
        assert!(matches!(m_function(0.5, 0.25, 1.0, C64::new(0.1, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn m_log_variant_matches_direct_quadrature() {
        let (alpha, beta, s) = (0.5, 0.5, 1.5);
        let z = C64::new(-0.5, 0.2);
        let got = m_function(alpha, beta, s, z).unwrap();
        // oracle: Gauss–Legendre after τ = (1/4) y², which removes the endpoint singularities of the log
        let rule = crate::quadrature::gauss_legendre(400).unwrap();
        let mut acc = C64::new(0.0, 0.0);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let y = 0.5 * (1.0 + x);
            let tau = 0.25 * y * y;
            let dtau = 0.5 * y * 0.5;
            let f = tau.powf(beta) * (0.25 - tau).powf(alpha) * (s * s * tau).ln() * dtau;
            acc += (C64::new(tau, 0.0) - z).inv() * (f * w);
        }
        let want = acc * (-(alpha * PI).sin() * s * s / (2.0 * PI)) / I;
        assert!((got - want).norm() < 1e-7 * want.norm(), "{got} vs {want}");
    }
}
