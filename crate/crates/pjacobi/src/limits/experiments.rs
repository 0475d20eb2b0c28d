//! Convergence experiments comparing scaled K_n with limiting kernels.

use super::kernels::{bessel_kernel, sine_kernel};
use super::{Grid, Regime, ScalingMeta, ScalingResult};
use crate::error::{domain, param, Result};
use crate::linalg::C64;
use crate::orthopoly::KernelEvaluator;
use crate::weight::{outer_parametrix_n, phi, s_from_t, t_minus_1_from_s, WeightSpec, DEFAULT_FT_RADIUS};
use rayon::prelude::*;
use std::f64::consts::{LN_2, PI};

/// All pairs (u, v) with u, v in {lo, lo + step, …} up to hi.
pub fn square_grid(lo: f64, hi: f64, step: f64) -> Vec<(f64, f64)> {
    let m = ((hi - lo) / step + 1e-9).floor() as usize;
    let pts: Vec<f64> = (0..=m).map(|k| lo + step * k as f64).collect();
    pts.iter().flat_map(|&u| pts.iter().map(move |&v| (u, v))).collect()
}

fn meta(ev: &KernelEvaluator) -> ScalingMeta {
    let spec = &ev.spec;
    ScalingMeta {
        n: ev.n,
        t: spec.t,
        t_minus_1: spec.t_minus_1(),
        s: s_from_t(spec, ev.n),
        alpha: spec.alpha,
        beta: spec.beta,
    }
}

fn inside(x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return domain(format!("scaled point {x} leaves (−1, 1)"));
    }
    Ok(x)
}

/// (1/n) K_n(x, x) against 1/(π√(1−x²)).
pub fn bulk_density_experiment(ev: &KernelEvaluator, x_grid: &[f64]) -> Result<ScalingResult> {
    let n = ev.n as f64;
    let computed = x_grid
        .par_iter()
        .map(|&x| Ok(ev.kernel_kn_diag(inside(x)?)? / n))
        .collect::<Result<Vec<_>>>()?;
    let reference = x_grid.iter().map(|&x| 1.0 / (PI * ((1.0 - x) * (1.0 + x)).sqrt())).collect();
    Ok(ScalingResult::new(
        Regime::BulkDensity,
        Grid::Points(x_grid.to_vec()),
        computed,
        reference,
        None,
        meta(ev),
    ))
}

/// (c/n) K_n(x0 + cu/n, x0 + cv/n), c = π√(1−x0²), against the sine kernel.
pub fn bulk_sine_experiment(ev: &KernelEvaluator, x0: f64, uv_grid: &[(f64, f64)]) -> Result<ScalingResult> {
    inside(x0)?;
    let n = ev.n as f64;
    let c = PI * ((1.0 - x0) * (1.0 + x0)).sqrt();
    let computed = uv_grid
        .par_iter()
        .map(|&(u, v)| {
            let x = inside(x0 + c * u / n)?;
            let y = inside(x0 + c * v / n)?;
            Ok(c / n * ev.kernel(x, y)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let reference = uv_grid.iter().map(|&(u, v)| sine_kernel(u - v)).collect();
    Ok(ScalingResult::new(
        Regime::BulkSine,
        Grid::Pairs(uv_grid.to_vec()),
        computed,
        reference,
        None,
        meta(ev),
    ))
}

/// Whether the edge experiment runs at fixed t > 1 or at t = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TMode {
    FixedT,
    TEqualsOne,
}

fn edge_values(ev: &KernelEvaluator, uv_grid: &[(f64, f64)]) -> Result<Vec<f64>> {
    let scale = 1.0 / (2.0 * (ev.n as f64).powi(2));
    uv_grid
        .par_iter()
        .map(|&(u, v)| {
            if !(u > 0.0 && v > 0.0) {
                return domain(format!("edge arguments ({u}, {v}) must be positive"));
            }
            let x = inside(1.0 - u * scale)?;
            let y = inside(1.0 - v * scale)?;
            Ok(scale * ev.kernel(x, y)?)
        })
        .collect()
}

fn bessel_column(nu: f64, uv_grid: &[(f64, f64)]) -> Result<Vec<f64>> {
    uv_grid.par_iter().map(|&(u, v)| bessel_kernel(nu, u, v)).collect()
}

/// (1/(2n²)) K_n(1 − u/(2n²), 1 − v/(2n²)) against 𝕁_β (t > 1) or 𝕁_{α+β} (t = 1).
pub fn edge_bessel_experiment(ev: &KernelEvaluator, mode: TMode, uv_grid: &[(f64, f64)]) -> Result<ScalingResult> {
    let spec = &ev.spec;
    let nu = match mode {
        TMode::FixedT if spec.is_merged() => return param("fixed-t mode needs t > 1"),
        TMode::TEqualsOne if !spec.is_merged() => return param("t-equals-1 mode needs t = 1"),
        TMode::FixedT => spec.beta,
        TMode::TEqualsOne => spec.alpha + spec.beta,
    };
    let computed = edge_values(ev, uv_grid)?;
    let reference = bessel_column(nu, uv_grid)?;
    Ok(ScalingResult::new(
        Regime::EdgeBessel,
        Grid::Pairs(uv_grid.to_vec()),
        computed,
        reference,
        None,
        meta(ev),
    ))
}

/// Finite-n approximant (s²/(8n²)) K_n(1 − s²u/(8n²), 1 − s²v/(8n²)) at
/// t = cosh(s/(4n)), built once and evaluated at many (u, v).
#[derive(Debug, Clone)]
pub struct PsiProxy {
    pub ev: KernelEvaluator,
    pub s: f64,
}

impl PsiProxy {
    pub fn new(spec_base: &WeightSpec, s: f64, n: usize) -> Result<Self> {
        let spec = spec_base.at_t_minus_1(t_minus_1_from_s(s, n)?)?;
        Ok(PsiProxy { ev: KernelEvaluator::new(&spec, n)?, s })
    }

    fn scale(&self) -> f64 {
        self.s * self.s / (8.0 * (self.ev.n as f64).powi(2))
    }

    fn point(&self, u: f64) -> Result<f64> {
        if !(u > 0.0) {
            return domain(format!("proxy argument {u} must be positive"));
        }
        let d = self.scale() * u;
        if !(d < DEFAULT_FT_RADIUS) {
            return domain(format!("scaled point 1 − {d} leaves the edge disk"));
        }
        Ok(1.0 - d)
    }

    pub fn eval(&self, u: f64, v: f64) -> Result<f64> {
        Ok(self.scale() * self.ev.kernel(self.point(u)?, self.point(v)?)?)
    }

    /// (4/s²) proxy(4u/s², 4v/s²) = (1/(2n²)) K_n(1 − u/(2n²), 1 − v/(2n²)).
    pub fn eval_bessel_scale(&self, u: f64, v: f64) -> Result<f64> {
        let k = 4.0 / (self.s * self.s);
        Ok(k * self.eval(k * u, k * v)?)
    }

    fn meta(&self) -> ScalingMeta {
        ScalingMeta { s: self.s, ..meta(&self.ev) }
    }
}

/// Single proxy value; prefer [`PsiProxy`] for grids.
pub fn psi_kernel_proxy(spec_base: &WeightSpec, s: f64, n: usize, u: f64, v: f64) -> Result<f64> {
    PsiProxy::new(spec_base, s, n)?.eval(u, v)
}

/// Proxy at size n against the proxy at 2n on the same grid (a Cauchy test).
pub fn double_scaling_experiment(
    spec_base: &WeightSpec,
    s: f64,
    n: usize,
    uv_grid: &[(f64, f64)],
) -> Result<ScalingResult> {
    let lo = PsiProxy::new(spec_base, s, n)?;
    let hi = PsiProxy::new(spec_base, s, 2 * n)?;
    let computed = uv_grid.par_iter().map(|&(u, v)| lo.eval(u, v)).collect::<Result<Vec<_>>>()?;
    let reference = uv_grid.par_iter().map(|&(u, v)| hi.eval(u, v)).collect::<Result<Vec<_>>>()?;
    Ok(ScalingResult::new(
        Regime::DoubleScaling,
        Grid::Pairs(uv_grid.to_vec()),
        computed,
        reference,
        None,
        lo.meta(),
    ))
}

/// For each s, the Bessel-scaled proxy against 𝕁_β (reference) and
/// 𝕁_{α+β} (reference_alt).
pub fn transition_scan(
    spec_base: &WeightSpec,
    s_list: &[f64],
    n: usize,
    uv_grid: &[(f64, f64)],
) -> Result<Vec<ScalingResult>> {
    if s_list.windows(2).any(|w| !(w[0] < w[1])) || s_list.iter().any(|s| !(*s > 0.0)) {
        return param("s values must be positive and ascending");
    }
    let j_beta = bessel_column(spec_base.beta, uv_grid)?;
    let j_sum = bessel_column(spec_base.alpha + spec_base.beta, uv_grid)?;
    s_list
        .iter()
        .map(|&s| {
            let proxy = PsiProxy::new(spec_base, s, n)?;
            let computed = uv_grid
                .par_iter()
                .map(|&(u, v)| proxy.eval_bessel_scale(u, v))
                .collect::<Result<Vec<_>>>()?;
            Ok(ScalingResult::new(
                Regime::TransitionScan,
                Grid::Pairs(uv_grid.to_vec()),
                computed,
                j_beta.clone(),
                Some(j_sum.clone()),
                proxy.meta(),
            ))
        })
        .collect()
}

/// |π_n(z) 2ⁿ φ(z)^{−n} / (N_t)₁₁(z) − 1|, with π_n accumulated in log space.
pub fn outer_poly_check(ev: &KernelEvaluator, z: C64) -> Result<f64> {
    let t = ev.spec.t;
    if z.im == 0.0 && z.re.abs() <= t {
        return domain(format!("z = {} lies on or inside the lens [−t, t]", z.re));
    }
    let tab = &ev.table;
    let n = ev.n;
    let mut log_pi = C64::new(0.0, 0.0);
    let mut ratio = C64::new(1.0, 0.0);
    for k in 0..n {
        ratio = if k == 0 { z - tab.a[0] } else { z - tab.a[k] - tab.bsq[k] / ratio };
        log_pi += ratio.ln();
    }
    let nf = n as f64;
    let n11 = outer_parametrix_n(&ev.spec, z)?.get(0, 0);
    let log_ratio = log_pi + nf * LN_2 - phi(z)?.ln() * nf - n11.ln();
    Ok((log_ratio.exp() - 1.0).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(a: f64, b: f64, t: f64, n: usize) -> KernelEvaluator {
        KernelEvaluator::new(&WeightSpec::new(a, b, t).unwrap(), n).unwrap()
    }

    #[test]
    fn density_reference_and_rate() {
        let grid: Vec<f64> = (-6..=6).map(|k| k as f64 * 0.1).collect();
        let r40 = bulk_density_experiment(&ev(1.0, 0.5, 1.5, 40), &grid).unwrap();
        let r80 = bulk_density_experiment(&ev(1.0, 0.5, 1.5, 80), &grid).unwrap();
        assert!((r40.reference[6] - 1.0 / PI).abs() < 1e-15);
        let ratio = r80.max_abs_err / r40.max_abs_err;
        assert!((0.3..=0.7).contains(&ratio), "ratio {ratio}");
        let errs: Vec<f64> = r40.computed.iter().zip(&r40.reference).map(|(c, r)| c - r).collect();
        for k in 0..errs.len() {
            assert!((errs[k] - errs[errs.len() - 1 - k]).abs() < 1e-10);
        }
    }

    #[test]
    fn sine_limit_improves_with_n() {
        let grid = square_grid(-2.0, 2.0, 0.5);
        let r100 = bulk_sine_experiment(&ev(1.0, 0.5, 1.5, 100), 0.0, &grid).unwrap();
        let r200 = bulk_sine_experiment(&ev(1.0, 0.5, 1.5, 200), 0.0, &grid).unwrap();
        assert!(r200.max_abs_err <= 0.05);
        assert!(r200.max_abs_err < r100.max_abs_err);
        for (i, &(u, v)) in grid.iter().enumerate() {
            if u == v {
                assert_eq!(r200.reference[i], 1.0);
            }
        }
    }

    #[test]
    fn edge_references() {
        let grid = square_grid(0.5, 4.0, 0.5);
        let fixed = edge_bessel_experiment(&ev(1.0, 0.5, 1.5, 60), TMode::FixedT, &grid).unwrap();
        assert_eq!(fixed.reference[3], bessel_kernel(0.5, grid[3].0, grid[3].1).unwrap());
        let merged = edge_bessel_experiment(&ev(1.0, 0.5, 1.0, 60), TMode::TEqualsOne, &grid).unwrap();
        assert_eq!(merged.reference[3], bessel_kernel(1.5, grid[3].0, grid[3].1).unwrap());
        assert!(edge_bessel_experiment(&ev(1.0, 0.5, 1.0, 60), TMode::FixedT, &grid).is_err());
    }

    #[test]
    fn alpha_zero_references_coincide() {
        let grid = square_grid(0.5, 2.0, 0.5);
        let base = WeightSpec::new(0.0, 0.5, 1.5).unwrap();
        let scan = transition_scan(&base, &[1.0], 40, &grid).unwrap();
        let r = &scan[0];
        assert!((r.max_abs_err - r.max_abs_err_alt.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn proxy_symmetric_and_checked() {
        let base = WeightSpec::new(1.0, 0.5, 1.5).unwrap();
        let p = PsiProxy::new(&base, 2.0, 40).unwrap();
        assert_eq!(p.eval(0.7, 2.5).unwrap(), p.eval(2.5, 0.7).unwrap());
        assert!(p.eval(-1.0, 1.0).is_err());
    }

    #[test]
    fn outer_check_rate() {
        let e = outer_poly_check(&ev(1.0, 0.5, 1.5, 40), C64::new(3.0, 0.0)).unwrap();
        assert!(e <= 0.05, "{e}");
        // β = 1/2 with a polynomial smooth factor is a Bernstein–Szegő weight; use β = 1/4 for the rate
        let e40 = outer_poly_check(&ev(0.5, 0.25, 1.5, 40), C64::new(3.0, 0.0)).unwrap();
        let e80 = outer_poly_check(&ev(0.5, 0.25, 1.5, 80), C64::new(3.0, 0.0)).unwrap();
        assert!(e80 < 0.75 * e40, "e40 {e40} e80 {e80}");
        let far = outer_poly_check(&ev(0.0, 0.0, 1.5, 20), C64::new(1e6, 0.0)).unwrap();
        assert!(far < 1e-6, "{far}");
    }
}
