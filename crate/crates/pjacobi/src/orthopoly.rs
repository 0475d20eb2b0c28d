//! Recurrence coefficients of the perturbed Jacobi weight and the
//! Christoffel–Darboux kernel K_n(x, y).

use crate::error::{domain, param, Error, Result};
use crate::quadrature::{gauss_jacobi, gauss_legendre_cached, KahanSum, Rule};
use crate::weight::WeightSpec;
use serde::Serialize;
use std::sync::Arc;

/// Below this value of t − 1 the smooth factor is treated as near-singular.
pub const NEAR_SINGULAR_T: f64 = 1e-3;
/// Ratio of successive panel lengths toward the endpoints.
const PANEL_RATIO: f64 = 0.15;

/// Monic three-term recurrence π_{k+1} = (x − a_k) π_k − bsq_k π_{k−1}.
#[derive(Debug, Clone, Serialize)]
pub struct RecurrenceTable {
    pub n_max: usize,
    /// a[0..=n_max]
    pub a: Vec<f64>,
    /// bsq[k] for k = 1..=n_max; bsq[0] stores the total mass μ₀.
    pub bsq: Vec<f64>,
    /// Orthonormal leading coefficients γ_k, p_k = γ_k π_k.
    pub gamma: Vec<f64>,
    pub mu0: f64,
    /// Discrete measure used by the Stieltjes procedure (nodes, masses).
    pub quad_nodes: Vec<f64>,
    pub quad_weights: Vec<f64>,
    pub quad_kind: QuadKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuadKind {
    /// Gauss–Jacobi with exponents (β, β), smooth factor folded in.
    Jacobi,
    /// t = 1: Gauss–Jacobi with exponents (α+β, α+β).
    Merged,
    /// Geometric panels clustered at ±1 for t close to 1.
    Composite,
}

/// Discretization of the weight: a rule whose masses already include w.
pub fn weight_measure(spec: &WeightSpec, n_max: usize, n_quad: usize) -> Result<(Rule, QuadKind)> {
    let (a, b) = (spec.alpha, spec.beta);
    if spec.is_merged() {
        let rule = gauss_jacobi(n_quad, a + b, a + b)?;
        let masses = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * spec.h(*x)).collect();
        return Ok((Rule { nodes: rule.nodes, weights: masses }, QuadKind::Merged));
    }
    let alpha_poly = a >= 0.0 && a == a.round();
    if spec.t_minus_1() < NEAR_SINGULAR_T && !alpha_poly {
        return Ok((composite_measure(spec, n_max + 40)?, QuadKind::Composite));
    }
    let rule = gauss_jacobi(n_quad, b, b)?;
    let masses = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(x, w)| w * spec.smooth_factor(*x))
        .collect();
    Ok((Rule { nodes: rule.nodes, weights: masses }, QuadKind::Jacobi))
}

/// Panels [1−δ_{j+1}, 1−δ_j] with δ_{j+1} = δ_j/q starting near q(t−1), mirrored at −1.
fn composite_measure(spec: &WeightSpec, m: usize) -> Result<Rule> {
    let eps = spec.t_minus_1();
    let b = spec.beta;
    let mut cuts = vec![0.0, PANEL_RATIO * eps];
    while *cuts.last().unwrap() < 0.5 * PANEL_RATIO {
        let next = cuts.last().unwrap() / PANEL_RATIO;
        cuts.push(next);
    }
    *cuts.last_mut().unwrap() = cuts.last().unwrap().min(0.5);
    cuts.push(1.0);
    let gl = gauss_legendre_cached(m)?;
    let end = gauss_jacobi(m, b, 0.0)?;
    let mut out = Rule { nodes: Vec::new(), weights: Vec::new() };
    for side in [1.0f64, -1.0] {
        // endpoint panel: (1 − x)^β absorbed by the rule
        let d1 = cuts[1];
        let scale = (0.5 * d1).powf(b + 1.0);
        for (xi, wi) in end.nodes.iter().zip(&end.weights) {
            let dist = 0.5 * d1 * (1.0 - xi);
            let x = side * (1.0 - dist);
            let rest = (2.0 - dist).powf(b) * spec.smooth_factor(x);
            out.nodes.push(x);
            out.weights.push(wi * scale * rest);
        }
        for win in cuts[1..].windows(2) {
            let (lo, hi) = (win[0], win[1]);
            for (xi, wi) in gl.nodes.iter().zip(&gl.weights) {
                let dist = lo + 0.5 * (hi - lo) * (1.0 + xi);
                let x = side * (1.0 - dist);
                out.nodes.push(x);
                out.weights.push(wi * 0.5 * (hi - lo) * spec.weight_unchecked(x));
            }
        }
    }
    Ok(out)
}

/// Discretized Stieltjes procedure in orthonormal (Lanczos) form.
pub fn build_recurrence(spec: &WeightSpec, n_max: usize, n_quad: usize) -> Result<RecurrenceTable> {
    spec.validate()?;
    if n_quad < 4 * n_max || n_quad == 0 {
        return param(format!("n_quad = {n_quad} must be at least 4 n_max = {}", 4 * n_max));
    }
    let (rule, kind) = weight_measure(spec, n_max, n_quad)?;
    let xs = &rule.nodes;
    let ms = &rule.weights;
    let mut mu = KahanSum::default();
    for m in ms {
        mu.add(*m);
    }
    let mu0 = mu.value();
    if !(mu0 > 0.0 && mu0.is_finite()) {
        return Err(Error::NumericalBreakdown(format!("total mass {mu0} is not positive")));
    }
    let mut p_prev = vec![0.0; xs.len()];
    let mut p_cur = vec![1.0 / mu0.sqrt(); xs.len()];
    let mut a = Vec::with_capacity(n_max + 1);
    let mut bsq = vec![mu0];
    let mut b_prev = 0.0;
    for k in 0..=n_max {
        let mut acc = KahanSum::default();
        for i in 0..xs.len() {
            acc.add(ms[i] * xs[i] * p_cur[i] * p_cur[i]);
        }
        let ak = acc.value();
        a.push(ak);
        if k == n_max {
            break;
        }
        let mut q: Vec<f64> =
            (0..xs.len()).map(|i| (xs[i] - ak) * p_cur[i] - b_prev * p_prev[i]).collect();
        let mut nrm = KahanSum::default();
        for i in 0..xs.len() {
            nrm.add(ms[i] * q[i] * q[i]);
        }
        let bk = nrm.value();
        if !(bk > 0.0 && bk.is_finite()) {
            return Err(Error::NumericalBreakdown(format!(
                "bsq[{}] = {bk} lost positivity; increase n_quad",
                k + 1
            )));
        }
        let b = bk.sqrt();
        for v in q.iter_mut() {
            *v /= b;
        }
        bsq.push(bk);
        p_prev = std::mem::replace(&mut p_cur, q);
        b_prev = b;
    }
    let mut gamma = Vec::with_capacity(n_max + 1);
    let mut g = 1.0 / mu0.sqrt();
    gamma.push(g);
    for b in &bsq[1..] {
        g /= b.sqrt();
        gamma.push(g);
    }
    Ok(RecurrenceTable {
        n_max,
        a,
        bsq,
        gamma,
        mu0,
        quad_nodes: rule.nodes,
        quad_weights: rule.weights,
        quad_kind: kind,
    })
}

impl RecurrenceTable {
    /// Orthonormal values p_0(x), …, p_k(x).
    pub fn orthonormal(&self, k: usize, x: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(k + 1);
        let mut prev = 0.0;
        let mut cur = 1.0 / self.mu0.sqrt();
        out.push(cur);
        for j in 0..k {
            let b_next = self.bsq[j + 1].sqrt();
            let b_j = if j == 0 { 0.0 } else { self.bsq[j].sqrt() };
            let next = ((x - self.a[j]) * cur - b_j * prev) / b_next;
            prev = cur;
            cur = next;
            out.push(cur);
        }
        out
    }

    /// (p_{k−1}, p_k, p′_{k−1}, p′_k) at x for k ≥ 1.
    pub fn pair_with_derivatives(&self, k: usize, x: f64) -> (f64, f64, f64, f64) {
        let mut prev = 0.0;
        let mut cur = 1.0 / self.mu0.sqrt();
        let mut dprev = 0.0;
        let mut dcur = 0.0;
        for j in 0..k {
            let b_next = self.bsq[j + 1].sqrt();
            let b_j = if j == 0 { 0.0 } else { self.bsq[j].sqrt() };
            let next = ((x - self.a[j]) * cur - b_j * prev) / b_next;
            let dnext = (cur + (x - self.a[j]) * dcur - b_j * dprev) / b_next;
            prev = cur;
            cur = next;
            dprev = dcur;
            dcur = dnext;
        }
        (prev, cur, dprev, dcur)
    }
}

/// (monic π_k(x), orthonormal p_k(x)).
pub fn eval_poly(table: &RecurrenceTable, k: usize, x: f64) -> Result<(f64, f64)> {
    if k > table.n_max {
        return param(format!("degree {k} exceeds n_max = {}", table.n_max));
    }
    let p = *table.orthonormal(k, x).last().unwrap();
    Ok((p / table.gamma[k], p))
}

/// max |∫ p_j p_k w − δ_jk| over j, k ≤ k_max, with a discretization twice
/// as fine as the one used to build the table.
pub fn orthonormality_residual(table: &RecurrenceTable, spec: &WeightSpec, k_max: usize) -> Result<f64> {
    if k_max > table.n_max {
        return param(format!("degree {k_max} exceeds n_max = {}", table.n_max));
    }
    let (rule, _) = weight_measure(spec, table.n_max, 2 * default_n_quad(table.n_max))?;
    let vals: Vec<Vec<f64>> = rule.nodes.iter().map(|&x| table.orthonormal(k_max, x)).collect();
    let mut worst = 0.0f64;
    for j in 0..=k_max {
        for k in 0..=j {
            let mut acc = KahanSum::default();
            for (v, m) in vals.iter().zip(&rule.weights) {
                acc.add(m * v[j] * v[k]);
            }
            let target = if j == k { 1.0 } else { 0.0 };
            worst = worst.max((acc.value() - target).abs());
        }
    }
    Ok(worst)
}

/// Default quadrature size for a table of degree n_max.
pub fn default_n_quad(n_max: usize) -> usize {
    4 * n_max + 40
}

/// Weight and recurrence bound together for kernel evaluation.
#[derive(Debug, Clone)]
pub struct KernelEvaluator {
    pub spec: WeightSpec,
    pub table: Arc<RecurrenceTable>,
    pub n: usize,
}

/// Separation below which callers are routed to the confluent form.
pub const DIAGONAL_GAP: f64 = 1e-10;

impl KernelEvaluator {
    pub fn new(spec: &WeightSpec, n: usize) -> Result<Self> {
        if n == 0 {
            return param("kernel size n must be positive");
        }
        let table = build_recurrence(spec, n, default_n_quad(n))?;
        Self::from_table(spec, Arc::new(table), n)
    }

    pub fn from_table(spec: &WeightSpec, table: Arc<RecurrenceTable>, n: usize) -> Result<Self> {
        if n == 0 || n > table.n_max {
            return param(format!("kernel size {n} must lie in 1..={}", table.n_max));
        }
        Ok(KernelEvaluator { spec: spec.clone(), table, n })
    }

    fn check(x: f64) -> Result<()> {
        if !(x.abs() < 1.0) {
            return domain(format!("x = {x} lies outside (−1, 1)"));
        }
        Ok(())
    }

    pub fn weight(&self, x: f64) -> f64 {
        self.spec.weight_unchecked(x)
    }

    /// Christoffel–Darboux form for x ≠ y.
    pub fn kernel_kn(&self, x: f64, y: f64) -> Result<f64> {
        Self::check(x)?;
        Self::check(y)?;
        if (x - y).abs() < DIAGONAL_GAP {
            return domain("|x − y| < 1e-10: use kernel_kn_diag (confluent form)");
        }
        let n = self.n;
        let (px0, px1, _, _) = self.table.pair_with_derivatives(n, x);
        let (py0, py1, _, _) = self.table.pair_with_derivatives(n, y);
        let bn = self.table.bsq[n].sqrt();
        let num = px1 * py0 - px0 * py1;
        Ok((self.weight(x) * self.weight(y)).sqrt() * bn * num / (x - y))
    }

    /// Confluent form K_n(x, x).
    pub fn kernel_kn_diag(&self, x: f64) -> Result<f64> {
        Self::check(x)?;
        let (p0, p1, d0, d1) = self.table.pair_with_derivatives(self.n, x);
        let bn = self.table.bsq[self.n].sqrt();
        Ok(self.weight(x) * bn * (d1 * p0 - d0 * p1))
    }

    /// K_n(x, y) routed to the confluent form near the diagonal.
    pub fn kernel(&self, x: f64, y: f64) -> Result<f64> {
        if (x - y).abs() < DIAGONAL_GAP {
            self.kernel_kn_diag(0.5 * (x + y))
        } else {
            self.kernel_kn(x, y)
        }
    }

    /// √(w(x)w(y)) Σ_{k<n} p_k(x) p_k(y).
    pub fn kernel_direct_sum(&self, x: f64, y: f64) -> Result<f64> {
        Self::check(x)?;
        Self::check(y)?;
        let px = self.table.orthonormal(self.n - 1, x);
        let py = self.table.orthonormal(self.n - 1, y);
        let mut acc = KahanSum::default();
        for (a, b) in px.iter().zip(&py) {
            acc.add(a * b);
        }
        Ok((self.weight(x) * self.weight(y)).sqrt() * acc.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refined_orthonormality() {
        for spec in [WeightSpec::new(1.0, 0.5, 1.5).unwrap(), WeightSpec::new(0.7, -0.3, 1.0).unwrap()] {
            let table = build_recurrence(&spec, 40, default_n_quad(40)).unwrap();
            assert!(orthonormality_residual(&table, &spec, 40).unwrap() < 1e-9);
        }
    }
    use crate::weight::Perturbation;

    fn spec(a: f64, b: f64, t: f64) -> WeightSpec {
        WeightSpec::new(a, b, t).unwrap()
    }

    #[test]
    fn legendre_type_coefficients() {
        let tab = build_recurrence(&spec(0.0, 0.0, 2.0), 10, 80).unwrap();
        assert!(tab.a.iter().all(|a| a.abs() < 1e-12));
        // moment oracle: μ₂/μ₀ = (2/3)/2
        assert!((tab.bsq[1] - 1.0 / 3.0).abs() < 1e-14);
        assert!((eval_poly(&tab, 0, 0.3).unwrap().1 - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(eval_poly(&tab, 0, 0.7).unwrap().0, 1.0);
        assert!((eval_poly(&tab, 2, 0.0).unwrap().0 + tab.bsq[1]).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_type_coefficients() {
        let tab = build_recurrence(&spec(0.0, -0.5, 2.0), 5, 40).unwrap();
        assert!((tab.bsq[1] - 0.5).abs() < 1e-13);
        assert!((tab.bsq[2] - 0.25).abs() < 1e-13);
    }

    #[test]
    fn gamma_consistent_with_bsq() {
        let tab = build_recurrence(&spec(1.0, 0.5, 1.5), 30, 160).unwrap();
        let mut prod = tab.mu0;
        for k in 0..=30 {
            if k > 0 {
                prod *= tab.bsq[k];
            }
            assert!((tab.gamma[k] * tab.gamma[k] * prod - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn n_quad_precondition() {
        assert!(matches!(build_recurrence(&spec(0.0, 0.0, 2.0), 10, 20), Err(Error::Parameter(_))));
    }

    #[test]
    fn kernel_examples() {
        let w = spec(1.0, 0.5, 1.5);
        let ev = KernelEvaluator::new(&w, 20).unwrap();
        let cd = ev.kernel_kn(0.2, 0.5).unwrap();
        let ds = ev.kernel_direct_sum(0.2, 0.5).unwrap();
        assert!((cd - ds).abs() < 1e-9 * ds.abs());
        assert_eq!(ev.kernel_kn(0.2, 0.5).unwrap(), ev.kernel_kn(0.5, 0.2).unwrap());
        assert!(matches!(ev.kernel_kn(0.3, 0.3), Err(Error::Domain(_))));
        let ev1 = KernelEvaluator::from_table(&w, ev.table.clone(), 1).unwrap();
        let k1 = ev1.kernel_direct_sum(0.1, -0.4).unwrap();
        let want = (ev.weight(0.1) * ev.weight(-0.4)).sqrt() / ev.table.mu0;
        assert!((k1 - want).abs() < 1e-14 * want);
        let cd1 = ev1.kernel_kn(0.1, -0.4).unwrap();
        assert!((cd1 - want).abs() < 1e-13 * want);
    }

    #[test]
    fn diagonal_matches_finite_difference() {
        let ev = KernelEvaluator::new(&spec(1.0, 0.5, 1.5), 20).unwrap();
        for x in [-0.7, 0.0, 0.45] {
            let h = 1e-5;
            let fd = ev.kernel_kn(x - h, x + h).unwrap();
            let d = ev.kernel_kn_diag(x).unwrap();
            assert!((fd - d).abs() < 1e-6, "x={x}");
            assert!(d >= 0.0);
        }
    }

    #[test]
    fn trace_identity() {
        let w = spec(1.0, 0.5, 1.5);
        let ev = KernelEvaluator::new(&w, 30).unwrap();
        let rule = gauss_jacobi(200, 0.5, 0.5).unwrap();
        let tr = rule.integrate(|x| ev.kernel_kn_diag(x).unwrap() / ((1.0 - x * x).powf(0.5)));
        assert!((tr - 30.0).abs() < 1e-8, "trace {tr}");
    }

    #[test]
    fn bulk_density_rate() {
        let w = spec(0.0, 0.0, 2.0);
        let err = |n: usize| {
            let ev = KernelEvaluator::new(&w, n).unwrap();
            (ev.kernel_kn_diag(0.0).unwrap() / n as f64 - 1.0 / std::f64::consts::PI).abs()
        };
        let (e40, e80) = (err(40), err(80));
        assert!(e80 < 0.7 * e40 || e80 < 1e-12, "e40={e40} e80={e80}");
    }

    #[test]
    fn asymmetric_h_breaks_parity() {
        let w = spec(0.5, 0.0, 1.5).with_h(Perturbation::new(|x| 2.0 + x, false)).unwrap();
        let tab = build_recurrence(&w, 5, 40).unwrap();
        assert!(tab.a[0].abs() > 1e-3);
    }

    #[test]
    fn composite_rule_moments() {
        // non-integer α close to t = 1 switches to geometric panels;
        // reference moments from an independent high-precision quadrature
        let w = WeightSpec::with_t_minus_1(0.5, 0.25, 2e-4).unwrap();
        let tab = build_recurrence(&w, 20, 200).unwrap();
        assert_eq!(tab.quad_kind, QuadKind::Composite);
        assert!((tab.mu0 - 1.438246834461207282).abs() < 1e-13);
        assert!((tab.bsq[1] - 0.2222810946649386113).abs() < 1e-13);
        assert!(tab.a.iter().all(|a| a.abs() < 1e-13));
    }
}
