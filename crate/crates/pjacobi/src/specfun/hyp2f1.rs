//! Gauss hypergeometric function ₂F₁(a, b; c; z) for real parameters.

use super::gamma::{lgamma, rgamma};
use super::SpecFunConfig;
use crate::error::{Error, Result};
use crate::quadrature::gauss_jacobi;
use num_complex::Complex64 as C64;

const SERIES_RADIUS: f64 = 0.9;

fn is_nonpos_int(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

fn is_int(x: f64) -> bool {
    x == x.round()
}

fn series(cfg: &SpecFunConfig, a: f64, b: f64, c: f64, z: C64) -> Result<C64> {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..(cfg.max_terms * 8) {
        let kf = k as f64;
        term = term * z * ((a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)));
        sum += term;
        if term.norm() <= cfg.series_tolerance * sum.norm() || term.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::Accuracy(format!("2F1 series did not converge at |z| = {}", z.norm())))
}

/// Γ(p)/(Γ(q)Γ(r)) with poles of the denominator mapped to zero.
fn gamma_ratio(p: f64, q: f64, r: f64) -> f64 {
    let rq = rgamma(q);
    let rr = rgamma(r);
    if rq == 0.0 || rr == 0.0 {
        return 0.0;
    }
    let sign = rgamma(p).signum() * rq.signum() * rr.signum();
    sign * (lgamma(p) - lgamma(q) - lgamma(r)).exp()
}

/// Γ(p)Γ(s)/(Γ(q)Γ(r)).
fn gamma_ratio2(p: f64, s: f64, q: f64, r: f64) -> f64 {
    let rq = rgamma(q);
    let rr = rgamma(r);
    if rq == 0.0 || rr == 0.0 {
        return 0.0;
    }
    let sign = rgamma(p).signum() * rgamma(s).signum() * rq.signum() * rr.signum();
    sign * (lgamma(p) + lgamma(s) - lgamma(q) - lgamma(r)).exp()
}

/// Euler integral Γ(c)/(Γ(b)Γ(c−b)) ∫₀¹ t^{b−1}(1−t)^{c−b−1}(1−zt)^{−a} dt,
/// valid for c > b > 0 and z off [1, ∞).
pub fn hyp2f1_euler(a: f64, b: f64, c: f64, z: C64) -> Result<C64> {
    if !(c > b && b > 0.0) {
        return Err(Error::Parameter("Euler integral needs c > b > 0".into()));
    }
    check_branch(z)?;
    let pref = gamma_ratio(c, b, c - b) * 2f64.powf(1.0 - c);
    let eval = |m: usize| -> Result<C64> {
        let rule = gauss_jacobi(m, c - b - 1.0, b - 1.0)?;
        let mut acc = C64::new(0.0, 0.0);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let t = 0.5 * (1.0 + x);
            acc += (C64::new(1.0, 0.0) - z * t).powf(-a) * *w;
        }
        Ok(acc * pref)
    };
    let mut m = 32;
    let mut prev = eval(m)?;
    while m < 4096 {
        m *= 2;
        let cur = eval(m)?;
        if (cur - prev).norm() <= 1e-14 * cur.norm().max(1e-300) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Accuracy("Euler-integral quadrature for 2F1 did not converge".into()))
}

fn check_branch(z: C64) -> Result<()> {
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::Branch(format!("z = {} lies on the cut [1, ∞)", z.re)));
    }
    Ok(())
}

pub fn hyp2f1_with(cfg: &SpecFunConfig, a: f64, b: f64, c: f64, z: C64) -> Result<C64> {
    if is_nonpos_int(c) {
        return Err(Error::Parameter(format!("c = {c} is a non-positive integer")));
    }
    if ![a, b, c, z.re, z.im].iter().all(|v| v.is_finite()) {
        return Err(Error::Parameter("non-finite input".into()));
    }
    check_branch(z)?;
    let one = C64::new(1.0, 0.0);
    if z.norm() <= SERIES_RADIUS {
        return series(cfg, a, b, c, z);
    }
    let zp = z / (z - one);
    if zp.norm() <= SERIES_RADIUS {
        return Ok((one - z).powf(-a) * series(cfg, a, c - b, c, zp)?);
    }
    let w = one - z;
    if w.norm() <= SERIES_RADIUS && !is_int(c - a - b) {
        let t1 = gamma_ratio2(c, c - a - b, c - a, c - b);
        let t2 = gamma_ratio2(c, a + b - c, a, b);
        let mut out = C64::new(0.0, 0.0);
        if t1 != 0.0 {
            out += series(cfg, a, b, a + b - c + 1.0, w)? * t1;
        }
        if t2 != 0.0 {
            out += w.powf(c - a - b) * series(cfg, c - a, c - b, c - a - b + 1.0, w)? * t2;
        }
        return Ok(out);
    }
    let zi = z.inv();
    if zi.norm() <= SERIES_RADIUS && !is_int(a - b) {
        let mz = -z;
        let t1 = gamma_ratio2(c, b - a, b, c - a);
        let t2 = gamma_ratio2(c, a - b, a, c - b);
        let mut out = C64::new(0.0, 0.0);
        if t1 != 0.0 {
            out += mz.powf(-a) * series(cfg, a, a - c + 1.0, a - b + 1.0, zi)? * t1;
        }
        if t2 != 0.0 {
            out += mz.powf(-b) * series(cfg, b, b - c + 1.0, b - a + 1.0, zi)? * t2;
        }
        return Ok(out);
    }
    if c > b && b > 0.0 {
        return hyp2f1_euler(a, b, c, z);
    }
    if c > a && a > 0.0 {
        return hyp2f1_euler(b, a, c, z);
    }
    Err(Error::Accuracy(format!("no convergent representation of 2F1 at z = {z}")))
}

/// ₂F₁(a, b; c; z) on the principal branch, z ∉ [1, ∞).
pub fn hyp2f1(a: f64, b: f64, c: f64, z: impl Into<C64>) -> Result<C64> {
    hyp2f1_with(&SpecFunConfig::default(), a, b, c, z.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(hyp2f1(1.0, 2.0, 3.0, 0.0).unwrap(), C64::new(1.0, 0.0));
        let v = hyp2f1(1.0, 1.0, 2.0, 0.5).unwrap();
        assert!((v.re - (-(0.5f64).ln() / 0.5)).abs() < 1e-14);
        assert!((v.re - 1.386294361).abs() < 1e-9);
        let s = hyp2f1(1.0, 1.25, 2.75, 0.2).unwrap();
        let q = hyp2f1_euler(1.0, 1.25, 2.75, C64::new(0.2, 0.0)).unwrap();
        assert!((s - q).norm() < 1e-10 * s.norm());
    }

    #[test]
    fn log_closed_form_across_regions() {
        // 2F1(1,1;2;z) = −ln(1−z)/z
        for z in [
            C64::new(-3.0, 0.0),
            C64::new(0.95, 0.1),
            C64::new(-0.5, 2.0),
            C64::new(0.5, 0.866),
            C64::new(5.0, 0.3),
        ] {
            let want = -(C64::new(1.0, 0.0) - z).ln() / z;
            let got = hyp2f1(1.0, 1.0, 2.0, z).unwrap();
            assert!((got - want).norm() < 1e-11 * want.norm(), "z={z} got={got} want={want}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(hyp2f1(1.0, 1.0, -2.0, 0.3), Err(Error::Parameter(_))));
        assert!(matches!(hyp2f1(1.0, 1.0, 2.0, 1.5), Err(Error::Branch(_))));
    }

    #[test]
    fn transformations_agree_with_quadrature() {
        let (a, b, c) = (1.0, 1.25, 2.75);
        for z in [C64::new(-4.0, 1.0), C64::new(0.6, -0.7), C64::new(-0.2, -0.97), C64::new(3.0, 2.0)] {
            let s = hyp2f1(a, b, c, z).unwrap();
            let q = hyp2f1_euler(a, b, c, z).unwrap();
            assert!((s - q).norm() < 1e-10 * q.norm(), "z={z}");
        }
    }
}
