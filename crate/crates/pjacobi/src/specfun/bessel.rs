//! Bessel functions J, I, K of real order and complex argument.
//!
//! J and I: ascending series summed in double-double below the switch,
//! Hankel expansions above it. K: Temme series for |z| ≤ 2, Steed's
//! continued fraction otherwise, analytic continuation for Re z < 0.

use super::dd::{CDd, Dd};
use super::gamma::rgamma;
use super::SpecFunConfig;
use crate::error::{Error, Result};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const EPS: f64 = 1e-16;

fn check_inputs(nu: f64, z: C64) -> Result<()> {
    if !nu.is_finite() {
        return Err(Error::Parameter(format!("order {nu} is not finite")));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain("argument is not finite".into()));
    }
    if z.im.abs() > 700.0 || z.re.abs() > 1e15 {
        return Err(Error::Range(format!("|z| = {} overflows", z.norm())));
    }
    Ok(())
}

fn negative_integer(nu: f64) -> Option<i64> {
    if nu < 0.0 && nu == nu.round() {
        Some(nu as i64)
    } else {
        None
    }
}

/// (z/2)^ν Σ_k (±z²/4)^k / (k! Γ(k+ν+1)).
fn ascending_series(cfg: &SpecFunConfig, nu: f64, z: C64, modified: bool) -> Result<C64> {
    let mut w = CDd::square_quarter(z);
    if !modified {
        w = w.neg();
    }
    let mut term = CDd::from_c64(C64::new(1.0, 0.0));
    let mut sum = term;
    let wabs = w.norm_approx();
    let mut converged = false;
    for k in 0..cfg.max_terms {
        let kp1 = (k + 1) as f64;
        let den = Dd::from_f64(kp1).mul(Dd::from_f64(kp1).add(Dd::from_f64(nu)));
        term = term.mul(w).div_real(den);
        sum = sum.add(term);
        if kp1 > wabs.sqrt() && term.norm_approx() <= cfg.series_tolerance * sum.norm_approx() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Accuracy(format!("Bessel series did not converge at |z| = {}", z.norm())));
    }
    let s = sum.to_c64();
    let pref = if z == C64::new(0.0, 0.0) {
        if nu == 0.0 {
            C64::new(1.0, 0.0)
        } else if nu > 0.0 {
            C64::new(0.0, 0.0)
        } else {
            return Err(Error::Range(format!("order {nu} is singular at z = 0")));
        }
    } else {
        ((z / 2.0).ln() * nu).exp()
    };
    Ok(pref * rgamma(nu + 1.0) * s)
}

/// Hankel expansion of J_ν for |arg z| ≤ π/2.
fn hankel_j(nu: f64, z: C64) -> C64 {
    let mu = 4.0 * nu * nu;
    let zi = z.inv();
    let mut term = C64::new(1.0, 0.0);
    let mut p = term;
    let mut q = C64::new(0.0, 0.0);
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term = term * zi * ((mu - odd * odd) / (8.0 * k as f64));
        let mag = term.norm();
        if mag > prev {
            break;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += term * sign;
        } else {
            q += term * sign;
        }
        if mag < 1e-18 * p.norm().max(q.norm()) {
            break;
        }
        prev = mag;
    }
    let chi = z - (0.5 * nu + 0.25) * PI;
    (C64::new(2.0 / PI, 0.0) / z).sqrt() * (p * chi.cos() - q * chi.sin())
}

pub fn bessel_j_with(cfg: &SpecFunConfig, nu: f64, z: C64) -> Result<C64> {
    check_inputs(nu, z)?;
    if let Some(n) = negative_integer(nu) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(bessel_j_with(cfg, -nu, z)? * sign);
    }
    if z.norm() <= cfg.asymptotic_switch {
        return ascending_series(cfg, nu, z, false);
    }
    if z.re >= 0.0 {
        Ok(hankel_j(nu, z))
    } else {
        let rot = if z.im >= 0.0 { 1.0 } else { -1.0 };
        Ok(C64::from_polar(1.0, rot * nu * PI) * hankel_j(nu, -z))
    }
}

/// J_ν(z), principal branch.
pub fn bessel_j(nu: f64, z: impl Into<C64>) -> Result<C64> {
    bessel_j_with(&SpecFunConfig::default(), nu, z.into())
}

/// J_ν(x) for real x ≥ 0.
pub fn bessel_j_real(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_j(nu, x)?.re)
}

/// J′_ν(z) = (J_{ν−1} − J_{ν+1})/2.
pub fn bessel_jp(nu: f64, z: impl Into<C64>) -> Result<C64> {
    let z = z.into();
    Ok((bessel_j(nu - 1.0, z)? - bessel_j(nu + 1.0, z)?) * 0.5)
}

pub fn bessel_jp_real(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_jp(nu, x)?.re)
}

pub fn bessel_i_with(cfg: &SpecFunConfig, nu: f64, z: C64) -> Result<C64> {
    check_inputs(nu, z)?;
    if negative_integer(nu).is_some() {
        return bessel_i_with(cfg, -nu, z);
    }
    if z.norm() <= cfg.asymptotic_switch {
        return ascending_series(cfg, nu, z, true);
    }
    let arg = z.arg();
    if arg > -PI && arg <= 0.5 * PI {
        Ok(C64::from_polar(1.0, -0.5 * nu * PI) * bessel_j_with(cfg, nu, z * C64::i())?)
    } else {
        Ok(C64::from_polar(1.0, 0.5 * nu * PI) * bessel_j_with(cfg, nu, -z * C64::i())?)
    }
}

/// I_ν(z), principal branch.
pub fn bessel_i(nu: f64, z: impl Into<C64>) -> Result<C64> {
    bessel_i_with(&SpecFunConfig::default(), nu, z.into())
}

/// I′_ν(z) = (I_{ν−1} + I_{ν+1})/2.
pub fn bessel_ip(nu: f64, z: impl Into<C64>) -> Result<C64> {
    let z = z.into();
    Ok((bessel_i(nu - 1.0, z)? + bessel_i(nu + 1.0, z)?) * 0.5)
}

/// Taylor coefficients of 1/Γ(1+x) about 0.
const RGAMMA_TAYLOR: [f64; 29] = [
    1.0,
    5.772_156_649_015_328_66e-1,
    -6.558_780_715_202_539_02e-1,
    -4.200_263_503_409_523_70e-2,
    1.665_386_113_822_914_79e-1,
    -4.219_773_455_554_433_34e-2,
    -9.621_971_527_877_973_03e-3,
    7.218_943_246_663_099_90e-3,
    -1.165_167_591_859_065_17e-3,
    -2.152_416_741_149_509_75e-4,
    1.280_502_823_881_161_96e-4,
    -2.013_485_478_078_823_87e-5,
    -1.250_493_482_142_670_63e-6,
    1.133_027_231_981_695_93e-6,
    -2.056_338_416_977_607_07e-7,
    6.116_095_104_481_416_09e-9,
    5.002_007_644_469_222_95e-9,
    -1.181_274_570_487_020_04e-9,
    1.043_426_711_691_100_54e-10,
    7.782_263_439_905_070_81e-12,
    -3.696_805_618_642_205_98e-12,
    5.100_370_287_454_475_75e-13,
    -2.058_326_053_566_506_64e-14,
    -5.348_122_539_423_017_82e-15,
    1.226_778_628_238_260_84e-15,
    -1.181_259_301_697_458_83e-16,
    1.186_692_254_751_600_37e-18,
    1.412_380_655_318_031_86e-18,
    -2.298_745_684_435_370_22e-19,
];

/// (gam1, gam2, 1/Γ(1+μ), 1/Γ(1−μ)) for |μ| ≤ 1/2.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mu2 = mu * mu;
    let (mut gam1, mut gam2) = (0.0, 0.0);
    let mut pw = 1.0;
    for pair in RGAMMA_TAYLOR.chunks(2) {
        gam2 += pair[0] * pw;
        if let Some(odd) = pair.get(1) {
            gam1 -= odd * pw;
        }
        pw *= mu2;
    }
    let odd = -gam1 * mu;
    (gam1, gam2, gam2 + odd, gam2 - odd)
}

/// (K_ν(x), K_{ν+1}(x)) for ν ≥ 0, Re x ≥ 0, x ≠ 0.
fn k_pair_right(nu: f64, x: C64) -> Result<(C64, C64)> {
    let nl = (nu + 0.5).floor();
    let xmu = nu - nl;
    let xmu2 = xmu * xmu;
    let xi = x.inv();
    let xi2 = xi * 2.0;
    let one = C64::new(1.0, 0.0);
    let (mut rkmu, mut rk1);
    if x.norm() < 2.0 {
        let x2 = x * 0.5;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = d * xmu;
        let fact2 = if e.norm() < EPS { one } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = (e.cosh() * gam1 + fact2 * d * gam2) * fact;
        let mut sum = ff;
        let ee = e.exp();
        let mut p = ee * (0.5 / gampl);
        let mut q = ee.inv() * (0.5 / gammi);
        let mut cc = one;
        let dd = x2 * x2;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..10_000 {
            let fi = i as f64;
            ff = (ff * fi + p + q) / (fi * fi - xmu2);
            cc = cc * dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = cc * ff;
            sum += del;
            let del1 = cc * (p - ff * fi);
            sum1 += del1;
            if del.norm() < sum.norm() * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Accuracy("Temme series for K did not converge".into()));
        }
        rkmu = sum;
        rk1 = sum1 * xi2;
    } else {
        let mut b = (one + x) * 2.0;
        let mut d = b.inv();
        let mut delh = d;
        let mut h = d;
        let mut q1 = C64::new(0.0, 0.0);
        let mut q2 = one;
        let a1 = 0.25 - xmu2;
        let mut q = C64::new(a1, 0.0);
        let mut c = a1;
        let mut a = -a1;
        let mut s = one + q * delh;
        let mut ok = false;
        for i in 2..100_000 {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += qnew * c;
            b += 2.0;
            d = (b + d * a).inv();
            delh = (b * d - 1.0) * delh;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).norm() < EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Accuracy("continued fraction for K did not converge".into()));
        }
        h *= a1;
        rkmu = (C64::new(PI / 2.0, 0.0) * xi).sqrt() * (-x).exp() / s;
        rk1 = rkmu * (x + xmu + 0.5 - h) * xi;
    }
    for i in 1..=(nl as i64) {
        let t = xi2 * (xmu + i as f64) * rk1 + rkmu;
        rkmu = rk1;
        rk1 = t;
    }
    Ok((rkmu, rk1))
}

fn k_pair(cfg: &SpecFunConfig, nu: f64, z: C64) -> Result<(C64, C64)> {
    check_inputs(nu, z)?;
    if z.norm() == 0.0 {
        return Err(Error::Range("K is singular at z = 0".into()));
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::Domain("K evaluated on its branch cut (−∞, 0]".into()));
    }
    let nu = nu.abs();
    if z.re >= 0.0 {
        return k_pair_right(nu, z);
    }
    let zp = -z;
    let (k0, k1) = k_pair_right(nu, zp)?;
    let i0 = bessel_i_with(cfg, nu, zp)?;
    let i1 = bessel_i_with(cfg, nu + 1.0, zp)?;
    let m = if z.im > 0.0 { 1.0 } else { -1.0 };
    let ipi = C64::new(0.0, PI);
    Ok((
        C64::from_polar(1.0, -m * nu * PI) * k0 - ipi * m * i0,
        C64::from_polar(1.0, -m * (nu + 1.0) * PI) * k1 - ipi * m * i1,
    ))
}

pub fn bessel_k_with(cfg: &SpecFunConfig, nu: f64, z: C64) -> Result<C64> {
    Ok(k_pair(cfg, nu, z)?.0)
}

/// K_ν(z), principal branch, arg z ∈ (−π, π).
pub fn bessel_k(nu: f64, z: impl Into<C64>) -> Result<C64> {
    bessel_k_with(&SpecFunConfig::default(), nu, z.into())
}

/// K′_ν(z) = −K_{ν+1}(z) + (ν/z) K_ν(z).
pub fn bessel_kp(nu: f64, z: impl Into<C64>) -> Result<C64> {
    let z = z.into();
    let (k0, k1) = k_pair(&SpecFunConfig::default(), nu.abs(), z)?;
    Ok(-k1 + k0 * nu.abs() / z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm().max(1e-300)
    }

    /// Plain double-precision series, usable as an oracle for small |z|.
    fn naive_j(nu: f64, x: f64, terms: usize) -> f64 {
        let mut s = 0.0;
        let mut t = (x / 2.0).powf(nu) / crate::specfun::gamma(nu + 1.0);
        for k in 0..terms {
            s += t;
            t *= -(x * x / 4.0) / ((k + 1) as f64 * (k as f64 + 1.0 + nu));
        }
        s
    }

    #[test]
    fn j_examples() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), C64::new(1.0, 0.0));
        let j01 = bessel_j_real(0.0, 1.0).unwrap();
        assert!((j01 - naive_j(0.0, 1.0, 40)).abs() < 1e-15);
        assert!((j01 - 0.765197686558).abs() < 1e-12);
        let jm1 = bessel_j_real(-1.0, 1.0).unwrap();
        assert!((jm1 + naive_j(1.0, 1.0, 40)).abs() < 1e-15);
        assert!((jm1 + 0.440050585745).abs() < 1e-12);
    }

    #[test]
    fn j_reference_values() {
        let cases = [
            (0.0, 10.0, -0.245935764451348335),
            (0.0, 18.0, -0.0133558057219841109),
            (0.3, 25.0, 0.0282877800840768822),
            (1.7, 45.0, -0.0884328201833917052),
            (-0.5, 3.0, -0.456048820794633179),
            (-1.5, 2.0, -0.395623281358703517),
        ];
        for (nu, x, want) in cases {
            let got = bessel_j_real(nu, x).unwrap();
            assert!((got - want).abs() < 1e-12 * want.abs().max(1e-2), "J_{nu}({x}) = {got}");
        }
        let jc = bessel_j(0.0, C64::new(5.0, 3.0)).unwrap();
        assert!(close(jc, C64::new(-0.826710665403959711, 3.24321994113595230), 1e-12));
        let jc2 = bessel_j(0.7, C64::new(-22.0, 4.0)).unwrap();
        assert!(close(jc2, C64::new(-4.20479913000560770, -1.86799845421143657), 1e-12));
    }

    #[test]
    fn half_integer_closed_forms() {
        for &x in &[0.3, 2.0, 7.5, 19.0, 23.0, 40.0] {
            let j = bessel_j_real(0.5, x).unwrap();
            let jm = bessel_j_real(-0.5, x).unwrap();
            let amp = (2.0 / (PI * x)).sqrt();
            assert!((j - amp * x.sin()).abs() < 1e-13 * amp);
            assert!((jm - amp * x.cos()).abs() < 1e-13 * amp);
            let i = bessel_i(0.5, x).unwrap().re;
            assert!((i / (amp * x.sinh()) - 1.0).abs() < 1e-12);
            let k = bessel_k(0.5, x).unwrap().re;
            assert!((k / ((PI / (2.0 * x)).sqrt() * (-x).exp()) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn k_reference_values() {
        assert!((bessel_k(0.0, 1.0).unwrap().re - 0.421024438240708333).abs() < 1e-14);
        let k = bessel_k(0.3, C64::new(5.0, 2.0)).unwrap();
        assert!(close(k, C64::new(-0.00207182027467645205, -0.00293480241117920073), 1e-12));
        let k = bessel_k(2.0, C64::new(0.5, -1.5)).unwrap();
        assert!(close(k, C64::new(-1.05812698284901945, 0.176516568263356054), 1e-12));
        let k = bessel_k(1.0, 30.0).unwrap();
        assert!(close(k, C64::new(2.16773200189154942e-14, 0.0), 1e-12));
        let k = bessel_k(0.4, C64::new(-3.0, 0.5)).unwrap();
        assert!(close(k, C64::new(-5.89694622987134816, -13.4583646293409314), 1e-11));
    }

    #[test]
    fn i_reference_values() {
        let i = bessel_i(1.5, 30.0).unwrap();
        assert!(close(i, C64::new(752420533212.431524, 0.0), 1e-12));
        let i = bessel_i(0.25, C64::new(-1.0, 2.0)).unwrap();
        assert!(close(i, C64::new(0.652407638650785321, -0.346947152876703185), 1e-12));
        assert_eq!(bessel_i(0.0, 0.0).unwrap(), C64::new(1.0, 0.0));
    }

    #[test]
    fn wronskian_example() {
        let (nu, z) = (0.5, C64::new(2.0, 0.0));
        let w = bessel_i(nu, z).unwrap() * bessel_kp(nu, z).unwrap()
            - bessel_ip(nu, z).unwrap() * bessel_k(nu, z).unwrap();
        assert!((w - C64::new(-0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn i_to_j_rotation() {
        let (nu, z) = (0.3, C64::new(1.0, 0.0));
        let lhs = C64::from_polar(1.0, -nu * PI / 2.0) * bessel_i(nu, z).unwrap();
        let rhs = bessel_j(nu, z * C64::from_polar(1.0, -PI / 2.0)).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn series_matches_asymptotic_in_overlap() {
        let series = SpecFunConfig { asymptotic_switch: 1e3, ..Default::default() };
        let asym = SpecFunConfig { asymptotic_switch: 1.0, ..Default::default() };
        for &nu in &[0.0, 0.3, 1.7] {
            for &x in &[15.0, 18.5, 22.0, 25.0] {
                let a = bessel_j_with(&series, nu, C64::new(x, 0.0)).unwrap();
                let b = bessel_j_with(&asym, nu, C64::new(x, 0.0)).unwrap();
                assert!((a - b).norm() < 1e-9, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn k_branch_cut_rejected() {
        assert!(matches!(bessel_k(0.5, C64::new(-1.0, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(f64::NAN, 1.0), Err(Error::Parameter(_))));
        assert!(matches!(bessel_j(0.0, C64::new(0.0, 800.0)), Err(Error::Range(_))));
    }
}
