//! The perturbed Jacobi weight (1−x²)^β (t²−x²)^α h(x), the map φ, the
//! Szegő function, the outer parametrix and the local conformal map f_t.

use crate::error::{domain, param, Error, Result};
use crate::linalg::{Mat2, C64, I};
use crate::quadrature::gauss_legendre_cached;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// Boundary side of a cut: `Plus` is the limit from the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

pub type HFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Positive analytic perturbation h(x).
#[derive(Clone)]
pub struct Perturbation {
    f: HFn,
    even: bool,
}

impl Perturbation {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static, even: bool) -> Self {
        Perturbation { f: Arc::new(f), even }
    }
}

/// Parameters of the weight. `t_minus_1` is stored separately so that
/// t − 1 keeps full relative precision in the double-scaling regime.
#[derive(Clone)]
pub struct WeightSpec {
    pub alpha: f64,
    pub beta: f64,
    pub t: f64,
    t_minus_1: f64,
    h: Option<Perturbation>,
}

impl fmt::Debug for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightSpec")
            .field("alpha", &self.alpha)
            .field("beta", &self.beta)
            .field("t", &self.t)
            .field("t_minus_1", &self.t_minus_1)
            .field("h", &self.h.as_ref().map(|_| "custom"))
            .finish()
    }
}

impl WeightSpec {
    pub fn new(alpha: f64, beta: f64, t: f64) -> Result<Self> {
        Self::with_t_minus_1(alpha, beta, t - 1.0)
    }

    /// Build from t − 1 directly (t = 1 + eps without rounding loss).
    pub fn with_t_minus_1(alpha: f64, beta: f64, eps: f64) -> Result<Self> {
        let spec = WeightSpec { alpha, beta, t: 1.0 + eps, t_minus_1: eps, h: None };
        spec.validate()?;
        Ok(spec)
    }

    /// Double-scaling parametrization t = cosh(s/(4n)).
    pub fn from_s(alpha: f64, beta: f64, s: f64, n: usize) -> Result<Self> {
        let eps = t_minus_1_from_s(s, n)?;
        Self::with_t_minus_1(alpha, beta, eps)
    }

    /// Same α, β and h with a new t − 1.
    pub fn at_t_minus_1(&self, eps: f64) -> Result<Self> {
        let spec = WeightSpec { t: 1.0 + eps, t_minus_1: eps, ..self.clone() };
        spec.validate()?;
        Ok(spec)
    }

    /// Attach a perturbation h; `even` declares h(−x) = h(x).
    pub fn with_h(mut self, h: Perturbation) -> Result<Self> {
        self.h = Some(h);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.beta.is_finite() && self.t_minus_1.is_finite()) {
            return param("weight parameters must be finite");
        }
        if self.beta <= -1.0 {
            return param(format!("beta = {} must exceed −1", self.beta));
        }
        if self.t_minus_1 < 0.0 {
            return param(format!("t = {} must be at least 1", self.t));
        }
        if self.t_minus_1 == 0.0 && self.alpha + self.beta <= -1.0 {
            return param("at t = 1 the combined exponent alpha + beta must exceed −1");
        }
        if let Some(h) = &self.h {
            for k in 0..=100 {
                let x = -1.0 + 2.0 * k as f64 / 100.0;
                let v = (h.f)(x);
                if !(v.is_finite() && v > 0.0) {
                    return param(format!("h({x}) = {v} is not positive"));
                }
            }
        }
        Ok(())
    }

    pub fn t_minus_1(&self) -> f64 {
        self.t_minus_1
    }

    /// True when t = 1 and the weight reduces to a modified Jacobi weight.
    pub fn is_merged(&self) -> bool {
        self.t_minus_1 == 0.0
    }

    /// Weight is even in x.
    pub fn is_even(&self) -> bool {
        self.h.as_ref().is_none_or(|h| h.even)
    }

    pub fn has_h(&self) -> bool {
        self.h.is_some()
    }

    pub fn h(&self, x: f64) -> f64 {
        self.h.as_ref().map_or(1.0, |h| (h.f)(x))
    }

    /// t² − x² evaluated as ((t−1)+(1−x))(t+x).
    pub fn t2_minus_x2(&self, x: f64) -> f64 {
        (self.t_minus_1 + (1.0 - x)) * (self.t + x)
    }

    /// (t²−x²)^α h(x), the factor that is smooth on [−1, 1] when t > 1.
    pub fn smooth_factor(&self, x: f64) -> f64 {
        if self.alpha == 0.0 {
            self.h(x)
        } else {
            self.t2_minus_x2(x).powf(self.alpha) * self.h(x)
        }
    }

    /// α ln(t²−x²) + ln h(x).
    pub fn log_smooth(&self, x: f64) -> f64 {
        let mut v = self.h(x).ln();
        if self.alpha != 0.0 {
            v += self.alpha * self.t2_minus_x2(x).ln();
        }
        v
    }

    /// w(x) without the domain check.
    pub fn weight_unchecked(&self, x: f64) -> f64 {
        let one_m_x2 = (1.0 - x) * (1.0 + x);
        if self.is_merged() {
            one_m_x2.powf(self.alpha + self.beta) * self.h(x)
        } else {
            one_m_x2.powf(self.beta) * self.smooth_factor(x)
        }
    }
}

/// w(x; t) for |x| < 1.
pub fn eval_weight(spec: &WeightSpec, x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return domain(format!("x = {x} lies outside (−1, 1)"));
    }
    Ok(spec.weight_unchecked(x))
}

fn on_cut(z: C64) -> bool {
    z.im == 0.0 && z.re.abs() < 1.0
}

/// √(z−1)√(z+1), asymptotic to z at infinity.
pub fn sqrt_z2m1(z: C64) -> C64 {
    (z - 1.0).sqrt() * (z + 1.0).sqrt()
}

/// φ(z) = z + √(z²−1), conformal from ℂ∖[−1,1] onto the exterior of the unit disk.
pub fn phi(z: C64) -> Result<C64> {
    if on_cut(z) {
        return Err(Error::Branch(format!("z = {} lies on (−1, 1); use phi_boundary", z.re)));
    }
    Ok(z + sqrt_z2m1(z))
}

/// One-sided boundary value φ_±(x) = x ± i√(1−x²) for |x| ≤ 1.
pub fn phi_boundary(x: f64, side: Side) -> Result<C64> {
    if x.abs() > 1.0 {
        return domain("boundary values exist only on [−1, 1]");
    }
    Ok(C64::new(x, side.sign() * ((1.0 - x) * (1.0 + x)).sqrt()))
}

/// ln φ(t) for real t = 1 + eps ≥ 1, stable as eps → 0.
pub fn ln_phi_real(eps: f64) -> f64 {
    (eps + (eps * (2.0 + eps)).sqrt()).ln_1p()
}

/// t − 1 = 2 sinh²(s/(8n)) for t = cosh(s/(4n)).
pub fn t_minus_1_from_s(s: f64, n: usize) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return param(format!("s = {s} must be positive"));
    }
    if n == 0 {
        return param("n must be positive");
    }
    let h = (s / (8.0 * n as f64)).sinh();
    Ok(2.0 * h * h)
}

/// t = cosh(s/(4n)), the inverse of s = 4n ln φ(t).
pub fn t_from_s(s: f64, n: usize) -> Result<f64> {
    Ok(1.0 + t_minus_1_from_s(s, n)?)
}

/// s = 4n ln φ(t).
pub fn s_from_t(spec: &WeightSpec, n: usize) -> f64 {
    4.0 * n as f64 * ln_phi_real(spec.t_minus_1())
}

/// ρ_t = 4 (ln φ(t))².
pub fn rho_t(spec: &WeightSpec) -> f64 {
    let l = ln_phi_real(spec.t_minus_1());
    4.0 * l * l
}

/// arccosh(1+w)² via its Taylor series, analytic for |w| < 2.
fn acosh_sq_series(w: C64) -> C64 {
    let mut sum = C64::new(0.0, 0.0);
    let mut pw = C64::new(1.0, 0.0);
    let mut binom = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        pw *= w * 2.0;
        binom *= (2.0 * kf - 1.0) * 2.0 / kf;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let term = pw * (sign * 2.0 / (kf * kf * binom));
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// (ln φ(z))², analytic across (−1, 1).
fn log_phi_sq(z: C64) -> Result<C64> {
    let w = z - 1.0;
    if z.im == 0.0 && z.re >= 1.0 {
        let l = ln_phi_real(w.re);
        return Ok(C64::new(l * l, 0.0));
    }
    if w.norm() < 0.5 {
        return Ok(acosh_sq_series(w));
    }
    if on_cut(z) {
        let a = z.re.acos();
        return Ok(C64::new(-a * a, 0.0));
    }
    let l = phi(z)?.ln();
    Ok(l * l)
}

/// Default radius of the disk around 1 on which f_t is evaluated.
pub const DEFAULT_FT_RADIUS: f64 = 0.6;

/// Local data at the hard edge z = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeMaps {
    pub rho_t: f64,
    pub s: f64,
    pub radius: f64,
    t: f64,
}

impl EdgeMaps {
    pub fn new(spec: &WeightSpec, n: usize, radius: f64) -> Result<Self> {
        if spec.is_merged() {
            return param("edge maps need t > 1");
        }
        if !(radius > 0.0 && radius < 2.0) {
            return param(format!("disk radius {radius} must lie in (0, 2)"));
        }
        if spec.t_minus_1() >= radius {
            return param(format!("disk |z−1| < {radius} does not contain t = {}", spec.t));
        }
        Ok(EdgeMaps {
            rho_t: rho_t(spec),
            s: s_from_t(spec, n),
            radius,
            t: spec.t,
        })
    }

    /// f_t(z) = (ln φ(z))²/ρ_t, with f_t(1) = 0 and f_t(t) = 1/4.
    pub fn f_t(&self, z: C64) -> Result<C64> {
        if !((z - 1.0).norm() < self.radius) {
            return domain(format!("z = {z} lies outside the disk |z−1| < {}", self.radius));
        }
        if z == C64::new(self.t, 0.0) {
            return Ok(C64::new(0.25, 0.0));
        }
        Ok(log_phi_sq(z)? / self.rho_t)
    }
}

/// f_t(z) with the default disk radius.
pub fn conformal_ft(spec: &WeightSpec, z: C64) -> Result<C64> {
    EdgeMaps::new(spec, 1, DEFAULT_FT_RADIUS.max(spec.t_minus_1() * 1.01).min(1.99))?.f_t(z)
}

fn require_t_above_1(spec: &WeightSpec) -> Result<()> {
    if spec.is_merged() {
        return param("the Szegő function is built for t > 1");
    }
    Ok(())
}

/// Integrate g(θ) over [0, π] with Gauss–Legendre doubling.
fn theta_integral(g: impl Fn(f64) -> C64, what: &str) -> Result<C64> {
    let eval = |m: usize| -> Result<C64> {
        let rule = gauss_legendre_cached(m)?;
        let mut acc = C64::new(0.0, 0.0);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            acc += g(0.5 * PI * (1.0 + x)) * *w;
        }
        Ok(acc * (0.5 * PI))
    };
    let mut m = 32;
    let mut prev = eval(m)?;
    while m < 8192 {
        m *= 2;
        let cur = eval(m)?;
        let diff = (cur - prev).norm();
        if diff <= 1e-13 * cur.norm().max(1.0) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Accuracy(format!(
        "{what}: quadrature did not converge with {m} nodes (|Δ| = {:.3e})",
        (eval(m)? - prev).norm()
    )))
}

/// D_t(∞) = 2^{−β} exp((1/2π) ∫₀^π f(cos θ) dθ).
pub fn szego_d_inf(spec: &WeightSpec) -> Result<f64> {
    require_t_above_1(spec)?;
    let v = theta_integral(|th| C64::new(spec.log_smooth(th.cos()), 0.0), "D(∞)")?;
    Ok(2f64.powf(-spec.beta) * (v.re / (2.0 * PI)).exp())
}

/// Szegő function D_t(z) for z off [−1, 1].
pub fn szego_d(spec: &WeightSpec, z: C64) -> Result<C64> {
    require_t_above_1(spec)?;
    if on_cut(z) || z == C64::new(1.0, 0.0) || z == C64::new(-1.0, 0.0) {
        return Err(Error::Branch("szego_d needs z off [−1, 1]; use szego_d_boundary".into()));
    }
    let ph = phi(z)?;
    let q = (C64::new(1.0, 0.0) - (ph * ph).inv()) * 0.5;
    let jac = if spec.beta == 0.0 { C64::new(1.0, 0.0) } else { q.powf(spec.beta) };
    let sq = sqrt_z2m1(z);
    let integral = theta_integral(|th| {
        let x = th.cos();
        spec.log_smooth(x) / (z - x)
    }, "Szegő integral")?;
    Ok(jac * (sq * integral / (2.0 * PI)).exp())
}

/// One-sided boundary values D_{t,±}(x) on (−1, 1).
pub fn szego_d_boundary(spec: &WeightSpec, x: f64, side: Side) -> Result<C64> {
    require_t_above_1(spec)?;
    if !(x.abs() < 1.0) {
        return domain("boundary value needs |x| < 1");
    }
    let ph = phi_boundary(x, side)?;
    let q = (C64::new(1.0, 0.0) - (ph * ph).inv()) * 0.5;
    let jac = if spec.beta == 0.0 { C64::new(1.0, 0.0) } else { q.powf(spec.beta) };
    let f0 = spec.log_smooth(x);
    let pv = theta_integral(|th| {
        let c = th.cos();
        let d = x - c;
        if d == 0.0 {
            C64::new(0.0, 0.0)
        } else {
            C64::new((spec.log_smooth(c) - f0) / d, 0.0)
        }
    }, "Szegő principal value")?;
    let root = ((1.0 - x) * (1.0 + x)).sqrt();
    let expo = I * (side.sign() * root / (2.0 * PI)) * pv + f0 / 2.0;
    Ok(jac * expo.exp())
}

/// a(z) = (z−1)^{1/4} (z+1)^{−1/4}.
pub fn outer_a(z: C64) -> C64 {
    (z - 1.0).powf(0.25) * (z + 1.0).powf(-0.25)
}

/// Outer parametrix N_t(z) = D∞^{σ₃} M₁⁻¹ a^{−σ₃} M₁ D(z)^{−σ₃}, M₁ = (I+iσ₁)/√2.
pub fn outer_parametrix_n(spec: &WeightSpec, z: C64) -> Result<Mat2> {
    let dinf = szego_d_inf(spec)?;
    let d = szego_d(spec, z)?;
    Ok(outer_from_parts(dinf, d, outer_a(z)))
}

pub(crate) fn outer_from_parts(dinf: f64, d: C64, a: C64) -> Mat2 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let m1 = (Mat2::identity() + Mat2::sigma1().scale(I)).scale(C64::new(h, 0.0));
    let m1inv = (Mat2::identity() - Mat2::sigma1().scale(I)).scale(C64::new(h, 0.0));
    Mat2::diag_pow(C64::new(dinf, 0.0)) * m1inv * Mat2::diag_pow(a.inv()) * m1 * Mat2::diag_pow(d.inv())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: f64, b: f64, t: f64) -> WeightSpec {
        WeightSpec::new(a, b, t).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(eval_weight(&spec(0.0, 0.0, 2.0), 0.3).unwrap(), 1.0);
        assert_eq!(eval_weight(&spec(1.0, 0.0, 2.0), 0.0).unwrap(), 4.0);
        let w = eval_weight(&spec(0.5, -0.5, 1.5), 0.5).unwrap();
        let oracle = 0.75f64.powf(-0.5) * 2.0f64.powf(0.5);
        assert!((w - oracle).abs() < 1e-15);
        assert!((w - 1.632993).abs() < 1e-6);
        assert!(matches!(eval_weight(&spec(0.0, 0.0, 2.0), 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn validation() {
        assert!(WeightSpec::new(0.0, -1.0, 2.0).is_err());
        assert!(WeightSpec::new(0.0, 0.0, 0.9).is_err());
        assert!(WeightSpec::new(-0.8, -0.5, 1.0).is_err());
        assert!(WeightSpec::new(-0.4, -0.5, 1.0).is_ok());
        let neg = Perturbation::new(|x| x, false);
        assert!(spec(0.0, 0.0, 2.0).with_h(neg).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(C64::new(1.0, 0.0)).unwrap(), C64::new(1.0, 0.0));
        assert!((phi(C64::new(1.5, 0.0)).unwrap().re - (1.5 + 1.25f64.sqrt())).abs() < 1e-15);
        assert!((phi(C64::new(1.5, 0.0)).unwrap().re - 2.618033989).abs() < 1e-9);
        for x in [-0.9, 0.0, 0.9] {
            let p = phi_boundary(x, Side::Plus).unwrap() * phi_boundary(x, Side::Minus).unwrap();
            assert!((p - 1.0).norm() < 1e-12);
        }
        assert!(matches!(phi(C64::new(0.2, 0.0)), Err(Error::Branch(_))));
        let far = phi(C64::new(-1e4, 3.0)).unwrap();
        assert!((far / C64::new(-2e4, 6.0) - 1.0).norm() < 1e-6);
    }

    #[test]
    fn t_from_s_examples() {
        let s = 40.0 * (1.5f64 + 1.25f64.sqrt()).ln();
        assert!((s - 38.49694).abs() < 1e-5);
        assert!((t_from_s(s, 10).unwrap() - 1.5).abs() < 1e-12);
        let w = WeightSpec::from_s(0.0, 0.0, 2.0, 100).unwrap();
        assert!((s_from_t(&w, 100) - 2.0).abs() < 2e-12);
        assert!(t_from_s(1e-9, 5).unwrap() - 1.0 < 1e-18);
        assert!(t_from_s(-1.0, 5).is_err());
    }

    #[test]
    fn rho_t_small_t_ratio() {
        for k in 2..=6 {
            let eps = 10f64.powi(-k);
            let w = WeightSpec::with_t_minus_1(0.0, 0.0, eps).unwrap();
            let ratio = rho_t(&w) / (8.0 * eps);
            assert!((ratio - 1.0).abs() <= 10.0 * eps, "k={k} ratio={ratio}");
        }
    }

    #[test]
    fn conformal_map_examples() {
        let w = spec(0.0, 0.0, 1.5);
        assert_eq!(conformal_ft(&w, C64::new(1.0, 0.0)).unwrap(), C64::new(0.0, 0.0));
        assert_eq!(conformal_ft(&w, C64::new(1.5, 0.0)).unwrap(), C64::new(0.25, 0.0));
        let w = spec(0.0, 0.0, 1.1);
        let v = conformal_ft(&w, C64::new(1.05, 0.0)).unwrap().re;
        assert!(v > 0.0 && v < 0.25);
        let mut prev = f64::NEG_INFINITY;
        for k in 0..50 {
            let x = 0.5 + 0.6 * k as f64 / 49.0;
            let v = conformal_ft(&w, C64::new(x, 0.0)).unwrap();
            assert!(v.im.abs() < 1e-15 && v.re > prev);
            prev = v.re;
        }
        assert!(matches!(conformal_ft(&w, C64::new(2.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn ft_series_continuous_with_log_branch() {
        let w = spec(0.0, 0.0, 1.3);
        let em = EdgeMaps::new(&w, 1, 0.9).unwrap();
        for z in [C64::new(1.49, 0.01), C64::new(0.6, 0.2), C64::new(1.0, 0.499)] {
            let a = em.f_t(z).unwrap() * em.rho_t;
            let l = phi(z).unwrap().ln();
            assert!((a - l * l).norm() < 1e-13, "z={z}");
        }
    }

    #[test]
    fn szego_at_infinity() {
        let w = spec(0.0, 0.7, 1.5);
        assert!((szego_d_inf(&w).unwrap() - 2f64.powf(-0.7)).abs() < 1e-14);
        let w = spec(1.0, 0.5, 1.5);
        let ph = 1.5 + 1.25f64.sqrt();
        let want = 2f64.powf(-0.5) * ph / 2.0;
        assert!((szego_d_inf(&w).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn szego_boundary_product_reproduces_weight() {
        let w = spec(1.0, 0.5, 1.5);
        for k in 0..21 {
            let x = -0.95 + 1.9 * k as f64 / 20.0;
            let p = szego_d_boundary(&w, x, Side::Plus).unwrap()
                * szego_d_boundary(&w, x, Side::Minus).unwrap();
            let wx = eval_weight(&w, x).unwrap();
            assert!((p - wx).norm() < 1e-8 * wx, "x={x}");
        }
    }

    #[test]
    fn szego_real_positive_right_of_t() {
        let w = spec(1.0, 0.5, 1.5);
        for x in [1.6, 3.0, 20.0] {
            let d = szego_d(&w, C64::new(x, 0.0)).unwrap();
            assert!(d.re > 0.0 && d.im.abs() < 1e-12 * d.re);
        }
    }

    #[test]
    fn outer_parametrix_properties() {
        assert!((outer_a(C64::new(3.0, 0.0)).re - 0.5f64.powf(0.25)).abs() < 1e-15);
        assert!((outer_a(C64::new(3.0, 0.0)).re - 0.840896).abs() < 1e-6);
        let w = spec(1.0, 0.5, 1.5);
        let n = outer_parametrix_n(&w, C64::new(2.0, 0.0)).unwrap();
        assert!((n.det() - 1.0).norm() < 1e-12);
        let e3 = (outer_parametrix_n(&w, C64::new(1e3, 0.0)).unwrap() - Mat2::identity()).max_abs();
        let e6 = (outer_parametrix_n(&w, C64::new(1e6, 0.0)).unwrap() - Mat2::identity()).max_abs();
        assert!(e3 < 5.0 / 1e3 && e6 < 5.0 / 1e6, "e3={e3} e6={e6}");
    }
}
