//! Scaling limits of K_n: bulk density and sine kernel, hard-edge Bessel
//! limits, the double-scaling proxy for K_Ψ, and the explicit large-s and
//! small-s parametrix approximants.

mod experiments;
mod kernels;
mod parametrix;

pub use experiments::{
    bulk_density_experiment, bulk_sine_experiment, double_scaling_experiment,
    edge_bessel_experiment, outer_poly_check, psi_kernel_proxy, square_grid, transition_scan,
    PsiProxy, TMode,
};
pub use kernels::{bessel_kernel, bessel_kernel_diag, sine_kernel};
pub use parametrix::{
    bessel_parametrix_phi, e1_matrix, g_parametrix, m_function, m_function_closed_form,
    m_function_log, m_function_quadrature, psi_approx_kernel, psi_large_s_approx,
    psi_small_s_approx, PsiApprox, PsiValues, Sector, LARGE_S_MIN, SMALL_S_MAX,
};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    BulkDensity,
    BulkSine,
    EdgeBessel,
    DoubleScaling,
    TransitionScan,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::BulkDensity => "bulk-density",
            Regime::BulkSine => "bulk-sine",
            Regime::EdgeBessel => "edge-bessel",
            Regime::DoubleScaling => "double-scaling",
            Regime::TransitionScan => "transition-scan",
        }
    }
}

/// Evaluation points: single abscissae or (u, v) pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grid {
    Points(Vec<f64>),
    Pairs(Vec<(f64, f64)>),
}

impl Grid {
    pub fn len(&self) -> usize {
        match self {
            Grid::Points(p) => p.len(),
            Grid::Pairs(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingMeta {
    pub n: usize,
    pub t: f64,
    pub t_minus_1: f64,
    pub s: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Computed kernel values against a limiting reference on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingResult {
    pub regime: Regime,
    pub grid: Grid,
    pub computed: Vec<f64>,
    pub reference: Vec<f64>,
    /// Second reference kernel (transition scans compare with two limits).
    pub reference_alt: Option<Vec<f64>>,
    pub max_abs_err: f64,
    /// max_abs_err / max |reference|.
    pub max_rel_err: f64,
    pub max_abs_err_alt: Option<f64>,
    pub meta: ScalingMeta,
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

impl ScalingResult {
    pub(crate) fn new(
        regime: Regime,
        grid: Grid,
        computed: Vec<f64>,
        reference: Vec<f64>,
        reference_alt: Option<Vec<f64>>,
        meta: ScalingMeta,
    ) -> Self {
        debug_assert_eq!(computed.len(), reference.len());
        let max_abs_err = max_abs_diff(&computed, &reference);
        let scale = reference.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let max_rel_err = if scale > 0.0 { max_abs_err / scale } else { max_abs_err };
        let max_abs_err_alt = reference_alt.as_ref().map(|r| max_abs_diff(&computed, r));
        ScalingResult {
            regime,
            grid,
            computed,
            reference,
            reference_alt,
            max_abs_err,
            max_rel_err,
            max_abs_err_alt,
            meta,
        }
    }

    /// Column names and rows for tabular export.
    pub fn table(&self) -> (Vec<&'static str>, Vec<Vec<f64>>) {
        let mut header: Vec<&'static str> = match &self.grid {
            Grid::Points(_) => vec!["x"],
            Grid::Pairs(_) => vec!["u", "v"],
        };
        header.extend(["computed", "reference", "abs_err"]);
        if self.reference_alt.is_some() {
            header.extend(["reference_alt", "abs_err_alt"]);
        }
        let rows = (0..self.computed.len())
            .map(|i| {
                let mut row = match &self.grid {
                    Grid::Points(p) => vec![p[i]],
                    Grid::Pairs(p) => vec![p[i].0, p[i].1],
                };
                let (c, r) = (self.computed[i], self.reference[i]);
                row.extend([c, r, (c - r).abs()]);
                if let Some(alt) = &self.reference_alt {
                    row.extend([alt[i], (c - alt[i]).abs()]);
                }
                row
            })
            .collect();
        (header, rows)
    }
}
