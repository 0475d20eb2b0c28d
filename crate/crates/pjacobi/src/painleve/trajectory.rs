//! Integration of the Schlesinger system and dense evaluation of the
//! quantities derived from it.
//!
//! The state is (b, R, Q) with R = b/y and Q = (b+Θ)y, in which the system is
//! polynomial: b′ = u(R+Q), R′ = u(2b+Θ) + R/2, Q′ = u(2b+Θ) − Q/2 with
//! su = R − Q + γ. RQ = b(b+Θ) is conserved.

use super::jet::Jet;
use super::ode::{dopri5, OdeOptions, State};
use super::residuals::{
    residual_gpv, residual_p3, residual_p3_reciprocal, residual_second_order, residual_u_ode,
};
use super::PainleveParams;
use crate::error::{domain, param, Error, Result};
use serde::Serialize;

pub(crate) const JET_LEN: usize = 7;
pub(crate) type J = Jet<JET_LEN>;

/// |y| beyond which y is treated as a pole.
const POLE_BOUND: f64 = 1e6;
/// Distance of y0 to {0, ±1} treated as lying on the singular set.
const SINGULAR_GAP: f64 = 1e-6;
/// State magnitude treated as a blow-up of the Schlesinger system.
const STATE_BOUND: f64 = 1e8;

pub(crate) fn rhs(p: &PainleveParams, s: f64, x: &State) -> State {
    let [b, r, q] = *x;
    let u = (r - q + p.gamma) / s;
    let c = u * (2.0 * b + p.theta);
    [u * (r + q), c + 0.5 * r, c - 0.5 * q]
}

/// Taylor coefficients of the solution through (s, x), from the ODE.
pub(crate) fn state_jets(p: &PainleveParams, s: f64, x: &State) -> [J; 3] {
    let sj = J::var(s);
    let mut xs = x.map(J::constant);
    for k in 0..JET_LEN - 1 {
        let [b, r, q] = xs;
        let u = (r - q + p.gamma) / sj;
        let c = u * (b * 2.0 + p.theta);
        let f = [u * (r + q), c + r * 0.5, c - q * 0.5];
        for i in 0..3 {
            xs[i].0[k + 1] = f[i].0[k] / (k as f64 + 1.0);
        }
    }
    xs
}

/// y from (b, R, Q), choosing the better conditioned quotient.
pub(crate) fn y_of(p: &PainleveParams, b: f64, r: f64, q: f64) -> f64 {
    if r.abs() >= (b + p.theta).abs() {
        b / r
    } else {
        q / (b + p.theta)
    }
}

pub(crate) fn y_jet(p: &PainleveParams, b: J, r: J, q: J) -> J {
    if r.value().abs() >= (b.value() + p.theta).abs() {
        b / r
    } else {
        q / (b + p.theta)
    }
}

/// Quantities derived from the state at one s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Derived {
    pub s: f64,
    pub b: f64,
    pub y: f64,
    pub u: f64,
    pub sigma: f64,
    pub c2hat: f64,
    pub omega: f64,
    pub v: f64,
}

fn derive(p: &PainleveParams, s: f64, x: &State) -> Derived {
    let [b, r, q] = *x;
    let y = y_of(p, b, r, q);
    let su = r - q + p.gamma;
    let u = su / s;
    let sigma = (b + 0.5 * p.theta) * s - su * su;
    let c2hat = (u + u * sigma - 0.5 * (r + q)) / s;
    Derived { s, b, y, u, sigma, c2hat, omega: y * y, v: (y + 1.0) / (y - 1.0) }
}

/// Residuals of the scalar equations at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualRow {
    pub s: f64,
    pub second_order: f64,
    pub gpv: f64,
    /// In v for y ≤ 0 and in w = 1/v for y > 0.
    pub p3: f64,
    pub u_ode: f64,
    /// σ′ − (b + Θ/2) with σ′ from the dense interpolant.
    pub sigma_prime: f64,
}

/// Maxima of |residual| over a profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualSummary {
    pub second_order: f64,
    pub gpv: f64,
    pub p3: f64,
    pub u_ode: f64,
    pub sigma_prime: f64,
    pub points: usize,
}

impl ResidualSummary {
    pub fn max_ode(&self) -> f64 {
        self.second_order.max(self.gpv).max(self.p3).max(self.u_ode)
    }
}

/// Samples of a solution with quintic Hermite dense output.
#[derive(Debug, Clone, Serialize)]
pub struct PainleveTrajectory {
    pub params: PainleveParams,
    pub s_grid: Vec<f64>,
    pub b: Vec<f64>,
    pub y: Vec<f64>,
    pub u: Vec<f64>,
    pub sigma: Vec<f64>,
    pub c2hat: Vec<f64>,
    pub omega: Vec<f64>,
    pub v: Vec<f64>,
    /// Per node: state, first and second derivative.
    #[serde(skip)]
    nodes: Vec<[State; 3]>,
}

fn hermite(h: f64, t: f64, a: &[State; 3], b: &[State; 3]) -> (State, State) {
    let (t2, t3, t4, t5) = (t * t, t * t * t, t.powi(4), t.powi(5));
    let w = [
        1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5,
        t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5,
        0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5,
        10.0 * t3 - 15.0 * t4 + 6.0 * t5,
        -4.0 * t3 + 7.0 * t4 - 3.0 * t5,
        0.5 * t3 - t4 + 0.5 * t5,
    ];
    let dw = [
        -30.0 * t2 + 60.0 * t3 - 30.0 * t4,
        1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4,
        t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4,
        30.0 * t2 - 60.0 * t3 + 30.0 * t4,
        -12.0 * t2 + 28.0 * t3 - 15.0 * t4,
        1.5 * t2 - 4.0 * t3 + 2.5 * t4,
    ];
    let mut val = [0.0; 3];
    let mut der = [0.0; 3];
    for i in 0..3 {
        let data = [a[0][i], h * a[1][i], h * h * a[2][i], b[0][i], h * b[1][i], h * h * b[2][i]];
        for k in 0..6 {
            val[i] += w[k] * data[k];
            der[i] += dw[k] * data[k] / h;
        }
    }
    (val, der)
}

impl PainleveTrajectory {
    fn from_states(params: PainleveParams, pts: Vec<(f64, State)>) -> Self {
        let mut t = PainleveTrajectory {
            params,
            s_grid: Vec::with_capacity(pts.len()),
            b: vec![],
            y: vec![],
            u: vec![],
            sigma: vec![],
            c2hat: vec![],
            omega: vec![],
            v: vec![],
            nodes: vec![],
        };
        for (s, x) in pts {
            let j = state_jets(&params, s, &x);
            let d = derive(&params, s, &x);
            t.s_grid.push(s);
            t.b.push(d.b);
            t.y.push(d.y);
            t.u.push(d.u);
            t.sigma.push(d.sigma);
            t.c2hat.push(d.c2hat);
            t.omega.push(d.omega);
            t.v.push(d.v);
            t.nodes.push([x, j.map(|c| c.deriv(1)), j.map(|c| c.deriv(2))]);
        }
        t
    }

    /// Trajectory through given (s, b, y) samples; derivatives at each sample
    /// come from the ODE.
    pub fn from_samples(params: PainleveParams, s: &[f64], b: &[f64], y: &[f64]) -> Result<Self> {
        if s.len() != b.len() || s.len() != y.len() || s.len() < 2 {
            return param("samples need equal lengths of at least 2");
        }
        if s.windows(2).any(|w| !(w[0] < w[1])) || !(s[0] > 0.0) {
            return param("s samples must be positive and ascending");
        }
        let mut pts = Vec::with_capacity(s.len());
        for i in 0..s.len() {
            if y[i] == 0.0 || !y[i].is_finite() || !b[i].is_finite() {
                return domain(format!("sample {i} has y = {} on the singular set", y[i]));
            }
            pts.push((s[i], [b[i], b[i] / y[i], (b[i] + params.theta) * y[i]]));
        }
        Ok(Self::from_states(params, pts))
    }

    pub fn len(&self) -> usize {
        self.s_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_grid.is_empty()
    }

    pub fn s_range(&self) -> (f64, f64) {
        (self.s_grid[0], *self.s_grid.last().expect("trajectory is non-empty"))
    }

    /// Raw state (b, R, Q) at node i.
    pub fn node_state(&self, i: usize) -> State {
        self.nodes[i][0]
    }

    fn locate(&self, s: f64) -> Result<usize> {
        let (lo, hi) = self.s_range();
        if !(s >= lo && s <= hi) {
            return domain(format!("s = {s} is outside the trajectory range [{lo}, {hi}]"));
        }
        let i = self.s_grid.partition_point(|&v| v <= s);
        Ok(i.clamp(1, self.len() - 1) - 1)
    }

    /// Interpolated state and its derivative.
    pub fn state_at(&self, s: f64) -> Result<(State, State)> {
        let i = self.locate(s)?;
        if s == self.s_grid[i] {
            return Ok((self.nodes[i][0], self.nodes[i][1]));
        }
        let h = self.s_grid[i + 1] - self.s_grid[i];
        Ok(hermite(h, (s - self.s_grid[i]) / h, &self.nodes[i], &self.nodes[i + 1]))
    }

    pub fn derived_at(&self, s: f64) -> Result<Derived> {
        Ok(derive(&self.params, s, &self.state_at(s)?.0))
    }

    /// Jets of (b, R, Q) at s, seeded by the interpolated state.
    pub(crate) fn jets_at(&self, s: f64) -> Result<[J; 3]> {
        Ok(state_jets(&self.params, s, &self.state_at(s)?.0))
    }

    pub fn residuals_at(&self, s: f64) -> Result<ResidualRow> {
        let p = &self.params;
        let (x, dx) = self.state_at(s)?;
        let [b, r, q] = state_jets(p, s, &x);
        let y = y_jet(p, b, r, q);
        let w = y * y;
        let u = (r - q + p.gamma) / J::var(s);
        // |v| ≤ 1 iff y ≤ 0; near the pole of v use w = 1/v
        let p3 = if y.value() <= 0.0 {
            let v = (y + 1.0) / (y - 1.0);
            residual_p3(p, v.value(), v.deriv(1), v.deriv(2), s)?
        } else {
            let w = (y - 1.0) / (y + 1.0);
            residual_p3_reciprocal(p, w.value(), w.deriv(1), w.deriv(2), s)?
        };
        let su = r.value() - q.value() + p.gamma;
        let dsu = dx[1] - dx[2];
        Ok(ResidualRow {
            s,
            second_order: residual_second_order(p, y.value(), y.deriv(1), y.deriv(2), s)?,
            gpv: residual_gpv(p, w.value(), w.deriv(1), w.deriv(2), s, y.value())?,
            p3,
            u_ode: residual_u_ode(p, u.value(), u.deriv(1), u.deriv(2), u.deriv(3), s)?,
            sigma_prime: s * dx[0] - 2.0 * su * dsu,
        })
    }

    /// Evaluation points: every node plus `refine − 1` interior points per step.
    pub fn dense_points(&self, refine: usize) -> Vec<f64> {
        let refine = refine.max(1);
        let mut pts = Vec::with_capacity(self.len() * refine);
        for w in self.s_grid.windows(2) {
            for k in 0..refine {
                pts.push(w[0] + (w[1] - w[0]) * k as f64 / refine as f64);
            }
        }
        pts.push(self.s_range().1);
        pts
    }

    pub fn residual_profile(&self, refine: usize) -> Result<Vec<ResidualRow>> {
        self.dense_points(refine).into_iter().map(|s| self.residuals_at(s)).collect()
    }

    pub fn max_residuals(&self, refine: usize) -> Result<ResidualSummary> {
        let rows = self.residual_profile(refine)?;
        let m = |f: fn(&ResidualRow) -> f64| rows.iter().map(|r| f(r).abs()).fold(0.0, f64::max);
        Ok(ResidualSummary {
            second_order: m(|r| r.second_order),
            gpv: m(|r| r.gpv),
            p3: m(|r| r.p3),
            u_ode: m(|r| r.u_ode),
            sigma_prime: m(|r| r.sigma_prime),
            points: rows.len(),
        })
    }

    /// Largest violations at the nodes of su = b/y − (b+Θ)y + γ,
    /// σ = (b+Θ/2)s − (su)² and 2(b+Θ)y = γ + 2u + 2uσ − us − 2ĉ₂s, each
    /// relative to max(1, Σ|terms|).
    pub fn identity_errors(&self) -> [f64; 3] {
        let p = &self.params;
        let rel = |terms: &[f64]| {
            let sum: f64 = terms.iter().sum();
            sum.abs() / terms.iter().map(|t| t.abs()).sum::<f64>().max(1.0)
        };
        let mut out = [0.0f64; 3];
        for i in 0..self.len() {
            let (s, b, y, u, sg) = (self.s_grid[i], self.b[i], self.y[i], self.u[i], self.sigma[i]);
            let e0 = rel(&[u * s, -b / y, (b + p.theta) * y, -p.gamma]);
            let e1 = rel(&[sg, -(b + 0.5 * p.theta) * s, (s * u).powi(2)]);
            let e2 = rel(&[
                p.gamma,
                2.0 * u,
                2.0 * u * sg,
                -u * s,
                -2.0 * self.c2hat[i] * s,
                -2.0 * (b + p.theta) * y,
            ]);
            out = [out[0].max(e0), out[1].max(e1), out[2].max(e2)];
        }
        out
    }

    /// Rows (s, b, y, u, sigma, omega, v and the residuals) at the nodes.
    pub fn table(&self) -> Result<(Vec<&'static str>, Vec<Vec<f64>>)> {
        let header = vec![
            "s", "b", "y", "u", "sigma", "c2hat", "omega", "v", "res_second_order", "res_gpv",
            "res_p3", "res_u", "res_sigma_prime",
        ];
        let rows = (0..self.len())
            .map(|i| {
                let r = self.residuals_at(self.s_grid[i])?;
                Ok(vec![
                    self.s_grid[i], self.b[i], self.y[i], self.u[i], self.sigma[i], self.c2hat[i],
                    self.omega[i], self.v[i], r.second_order, r.gpv, r.p3, r.u_ode, r.sigma_prime,
                ])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((header, rows))
    }
}

/// Integrate the Schlesinger system from (s0, b0, y0) to s1 with local
/// error tolerance `tol`. The system in (b, R, Q) is regular where y
/// crosses 0 or ±1, so integration continues through those points; it stops
/// with a singularity error when y reaches a pole or the state blows up.
/// Initial data on {0, ±1} is rejected.
pub fn integrate_schlesinger(
    params: &PainleveParams,
    s0: f64,
    s1: f64,
    b0: f64,
    y0: f64,
    tol: f64,
) -> Result<PainleveTrajectory> {
    let p = *params;
    if !(s0 > 0.0 && s1 > 0.0 && s0.is_finite() && s1.is_finite()) || s0 == s1 {
        return param(format!("integration endpoints ({s0}, {s1}) must be distinct and positive"));
    }
    if !(tol > 0.0 && tol < 1e-2) {
        return param(format!("tolerance {tol} must lie in (0, 1e-2)"));
    }
    if !(b0.is_finite() && y0.is_finite()) {
        return param("initial data must be finite");
    }
    for target in [0.0, 1.0, -1.0] {
        if (y0 - target).abs() < SINGULAR_GAP {
            return domain(format!("y0 = {y0} lies on the singular set {{0, ±1}}"));
        }
    }
    if 2.0 * b0 + p.theta == 0.0 {
        return domain("2 b0 + Θ must be non-zero");
    }
    let x0 = [b0, b0 / y0, (b0 + p.theta) * y0];
    let mut last_s = s0;
    let check = |s: f64, x: &State| -> Result<()> {
        let y = y_of(&p, x[0], x[1], x[2]);
        let what = if !y.is_finite() || y.abs() > POLE_BOUND {
            format!("y = {y} reached a pole")
        } else if x.iter().any(|v| !(v.abs() <= STATE_BOUND)) {
            format!("state (b, R, Q) = {x:?} blew up")
        } else {
            last_s = s;
            return Ok(());
        };
        Err(Error::Singularity { msg: format!("{what} between s = {last_s} and s = {s}"), last_good_s: last_s })
    };
    let mut pts = dopri5(|s, x| rhs(&p, s, x), s0, s1, x0, &OdeOptions::with_tol(tol), check)?;
    if s1 < s0 {
        pts.reverse();
    }
    Ok(PainleveTrajectory::from_states(p, pts))
}
