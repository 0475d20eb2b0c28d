//! Exact sampling of the n-point determinantal process with kernel K_n.
//!
//! Points are drawn sequentially: the i-th point has density
//! (K_n(x,x) − Σ_j ⟨e_j, v(x)⟩²)/(n − i), where v(x) = √w(x)(p_0, …, p_{n−1})(x)
//! and e_j is an orthonormal basis of the span of v at the earlier points.
//! Each draw proposes from K_n(x,x)/n, itself sampled by rejection from a
//! Beta proposal in θ = arccos x, and accepts with probability
//! |residual|²/|v|².

use crate::error::{param, Error, Result};
use crate::orthopoly::KernelEvaluator;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Beta, Distribution};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Largest supported configuration size.
pub const MAX_N: usize = 200;
/// Safety factor applied to the grid maximum of the envelope ratio.
const ENVELOPE_MARGIN: f64 = 1.1;
/// Proposals per accepted point beyond which sampling is abandoned.
const MAX_ATTEMPTS_PER_N: usize = 2000;
/// Gram–Schmidt basis is re-orthogonalized after this many points.
const REORTHO_EVERY: usize = 10;

/// Configurations drawn from one evaluator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRun {
    pub seed: u64,
    pub n: usize,
    pub reps: usize,
    /// One ascending row of n points per repetition.
    pub points: Vec<Vec<f64>>,
}

impl SampleRun {
    /// All points pooled into one vector.
    pub fn pooled(&self) -> Vec<f64> {
        self.points.iter().flatten().copied().collect()
    }

    /// (rep, index, x) rows.
    pub fn rows(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.points
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(i, &x)| (r, i, x)))
    }
}

/// Proposal in θ ∈ (0, π) with unnormalized density (θ(π−θ))^{a−1}, and the
/// bound M on K_n(cos θ, cos θ) sin θ / (n q(θ)).
struct Envelope {
    beta: Beta<f64>,
    a: f64,
    m: f64,
}

impl Envelope {
    fn q(&self, theta: f64) -> f64 {
        (theta * (PI - theta)).powf(self.a - 1.0)
    }

    fn ratio(ev: &KernelEvaluator, a: f64, theta: f64) -> Result<f64> {
        let x = theta.cos();
        if !(x.abs() < 1.0) {
            return Ok(0.0);
        }
        let k = ev.kernel_kn_diag(x)?;
        Ok(k * theta.sin() / (ev.n as f64 * (theta * (PI - theta)).powf(a - 1.0)))
    }

    fn new(ev: &KernelEvaluator) -> Result<Self> {
        let spec = &ev.spec;
        let edge = if spec.is_merged() { spec.alpha + spec.beta } else { spec.beta };
        let a = (1.0 + edge).min(1.0);
        // uniform grid plus geometric refinement toward both ends
        let m_uniform = 40 * ev.n + 400;
        let mut grid: Vec<f64> = (1..m_uniform).map(|k| PI * k as f64 / m_uniform as f64).collect();
        for k in 1..=48 {
            let d = PI * 10f64.powf(-(k as f64) / 4.0);
            grid.push(d);
            grid.push(PI - d);
        }
        let ratios: Vec<f64> = grid.par_iter().map(|&th| Self::ratio(ev, a, th)).collect::<Result<_>>()?;
        let max = ratios.into_iter().fold(0.0f64, f64::max);
        if !(max > 0.0 && max.is_finite()) {
            return Err(Error::Envelope(format!("envelope bound {max} is not positive and finite")));
        }
        let beta = Beta::new(a, a).map_err(|e| Error::Envelope(e.to_string()))?;
        Ok(Envelope { beta, a, m: ENVELOPE_MARGIN * max })
    }

    /// One draw from K_n(x,x)/n.
    fn draw(&self, ev: &KernelEvaluator, rng: &mut ChaCha20Rng) -> Result<Option<f64>> {
        let theta = PI * self.beta.sample(rng);
        let x = theta.cos();
        if !(theta > 0.0 && theta < PI && x.abs() < 1.0) {
            return Ok(None);
        }
        let target = ev.kernel_kn_diag(x)? * theta.sin() / ev.n as f64;
        let bound = self.m * self.q(theta);
        if target > bound {
            return Err(Error::Envelope(format!(
                "envelope ratio {} at x = {x} exceeds the bound {}; refine the envelope grid",
                target / self.q(theta),
                self.m
            )));
        }
        Ok((rng.random::<f64>() * bound <= target).then_some(x))
    }
}

fn basis_vector(ev: &KernelEvaluator, x: f64) -> Vec<f64> {
    let sw = ev.weight(x).sqrt();
    let mut v = ev.table.orthonormal(ev.n - 1, x);
    v.iter_mut().for_each(|c| *c *= sw);
    v
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// v minus its projection on the orthonormal set `basis`.
fn project_out(basis: &[Vec<f64>], v: &mut [f64]) {
    for e in basis {
        let c = dot(e, v);
        v.iter_mut().zip(e).for_each(|(vi, ei)| *vi -= c * ei);
    }
}

fn reorthogonalize(basis: &mut [Vec<f64>]) {
    for i in 0..basis.len() {
        let (done, rest) = basis.split_at_mut(i);
        let e = &mut rest[0];
        project_out(done, e);
        let norm = dot(e, e).sqrt();
        e.iter_mut().for_each(|c| *c /= norm);
    }
}

fn sample_one(ev: &KernelEvaluator, env: &Envelope, rng: &mut ChaCha20Rng) -> Result<Vec<f64>> {
    let n = ev.n;
    let mut pts = Vec::with_capacity(n);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    let max_attempts = MAX_ATTEMPTS_PER_N * n;
    while pts.len() < n {
        let mut attempts = 0usize;
        loop {
            attempts += 1;
            if attempts > max_attempts {
                return Err(Error::Envelope(format!(
                    "rejection efficiency fell below 1/{max_attempts} at point {} of {n}",
                    pts.len() + 1
                )));
            }
            let Some(x) = env.draw(ev, rng)? else { continue };
            let mut v = basis_vector(ev, x);
            let full = dot(&v, &v);
            project_out(&basis, &mut v);
            let rest = dot(&v, &v);
            if rng.random::<f64>() * full <= rest && rest > 0.0 {
                let norm = rest.sqrt();
                v.iter_mut().for_each(|c| *c /= norm);
                // second pass keeps the new direction orthogonal to working precision
                project_out(&basis, &mut v);
                let norm = dot(&v, &v).sqrt();
                v.iter_mut().for_each(|c| *c /= norm);
                basis.push(v);
                pts.push(x);
                if pts.len() % REORTHO_EVERY == 0 {
                    reorthogonalize(&mut basis);
                }
                break;
            }
        }
    }
    pts.sort_by(f64::total_cmp);
    Ok(pts)
}

/// `reps` independent configurations; repetition r uses ChaCha20 seeded with
/// `seed` on stream r, so output is deterministic and independent of the
/// thread count.
pub fn sample_dpp(ev: &KernelEvaluator, seed: u64, reps: usize) -> Result<SampleRun> {
    if ev.n > MAX_N {
        return param(format!("n = {} exceeds the sampler limit {MAX_N}", ev.n));
    }
    if reps == 0 {
        return param("reps must be positive");
    }
    let env = Envelope::new(ev)?;
    let points = (0..reps)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            sample_one(ev, &env, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleRun { seed, n: ev.n, reps, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::WeightSpec;

    fn ev(n: usize) -> KernelEvaluator {
        KernelEvaluator::new(&WeightSpec::new(1.0, 0.5, 1.5).unwrap(), n).unwrap()
    }

    #[test]
    fn fixed_cardinality_and_range() {
        let run = sample_dpp(&ev(12), 7, 20).unwrap();
        assert_eq!(run.points.len(), 20);
        for row in &run.points {
            assert_eq!(row.len(), 12);
            assert!(row.iter().all(|x| x.abs() < 1.0));
            assert!(row.windows(2).all(|w| w[0] <= w[1]));
        }
        assert_eq!(run.rows().count(), 240);
    }

    #[test]
    fn deterministic_under_seed() {
        let e = ev(10);
        let a = sample_dpp(&e, 42, 8).unwrap();
        let b = sample_dpp(&e, 42, 8).unwrap();
        assert_eq!(a, b);
        let c = sample_dpp(&e, 43, 8).unwrap();
        assert_ne!(a.points, c.points);
    }

    #[test]
    fn single_point_density_matches_kernel() {
        // n = 1: one point with density w(x) p_0² = w(x)/μ₀; compare means
        let e = ev(1);
        let run = sample_dpp(&e, 3, 4000).unwrap();
        let mean = run.pooled().iter().sum::<f64>() / 4000.0;
        let second = run.pooled().iter().map(|x| x * x).sum::<f64>() / 4000.0;
        let rule = crate::quadrature::gauss_legendre(200).unwrap();
        let m2: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x * x * e.weight(*x)).sum::<f64>()
            / e.table.mu0;
        assert!(mean.abs() < 0.03, "{mean}");
        assert!((second - m2).abs() < 0.03, "{second} vs {m2}");
    }

    #[test]
    fn rejects_large_n_and_zero_reps() {
        let big = KernelEvaluator::new(&WeightSpec::new(0.0, 0.0, 2.0).unwrap(), 201).unwrap();
        assert!(matches!(sample_dpp(&big, 1, 1), Err(Error::Parameter(_))));
        assert!(matches!(sample_dpp(&ev(5), 1, 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn singular_edge_exponent_is_covered() {
        let spec = WeightSpec::new(-0.4, -0.8, 1.2).unwrap();
        let e = KernelEvaluator::new(&spec, 15).unwrap();
        let run = sample_dpp(&e, 11, 10).unwrap();
        assert!(run.points.iter().all(|r| r.len() == 15));
    }
}
