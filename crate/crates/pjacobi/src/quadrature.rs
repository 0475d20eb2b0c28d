//! Gauss rules via the Golub–Welsch eigenvalue method.

use crate::error::{Error, Result};
use crate::specfun::lgamma;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes and weights of a quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ w_i f(x_i) with compensated summation.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut acc = KahanSum::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(*x));
        }
        acc.value()
    }

    /// Affine map of a rule on [−1, 1] to [a, b], scaling weights by `scale`.
    pub fn mapped(&self, a: f64, b: f64, scale: f64) -> Rule {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        Rule {
            nodes: self.nodes.iter().map(|x| mid + half * x).collect(),
            weights: self.weights.iter().map(|w| w * scale).collect(),
        }
    }

    pub fn extend(&mut self, other: Rule) {
        self.nodes.extend(other.nodes);
        self.weights.extend(other.weights);
    }
}

/// Kahan–Babuška compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Implicit QL on a symmetric tridiagonal matrix; returns eigenvalues in
/// ascending order and the matching first-row eigenvector entries scaled by z.
fn imtqlx(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    let prec = f64::EPSILON;
    e[n - 1] = 0.0;
    for l in 1..=n {
        let mut j = 0;
        loop {
            let mut m = l;
            while m < n {
                if e[m - 1].abs() <= prec * (d[m - 1].abs() + d[m].abs()) {
                    break;
                }
                m += 1;
            }
            let mut p = d[l - 1];
            if m == l {
                break;
            }
            if j >= 60 {
                return Err(Error::NumericalBreakdown("tridiagonal eigensolver stalled".into()));
            }
            j += 1;
            let mut g = (d[l] - p) / (2.0 * e[l - 1]);
            let mut r = g.hypot(1.0);
            g = d[m - 1] - p + e[l - 1] / (g + r.abs().copysign(if g < 0.0 { -1.0 } else { 1.0 }));
            let mut s = 1.0;
            let mut c = 1.0;
            p = 0.0;
            for ii in 1..=(m - l) {
                let i = m - ii;
                let f = s * e[i - 1];
                let b = c * e[i - 1];
                if g.abs() <= f.abs() {
                    c = g / f;
                    r = c.hypot(1.0);
                    e[i] = f * r;
                    s = 1.0 / r;
                    c *= s;
                } else {
                    s = f / g;
                    r = s.hypot(1.0);
                    e[i] = g * r;
                    c = 1.0 / r;
                    s *= c;
                }
                g = d[i] - p;
                r = (d[i - 1] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i] = g + p;
                g = c * r - b;
                let f = z[i];
                z[i] = s * z[i - 1] + c * f;
                z[i - 1] = c * z[i - 1] - s * f;
            }
            d[l - 1] -= p;
            e[l - 1] = g;
            e[m - 1] = 0.0;
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let dd: Vec<f64> = idx.iter().map(|&i| d[i]).collect();
    let zz: Vec<f64> = idx.iter().map(|&i| z[i]).collect();
    d.copy_from_slice(&dd);
    z.copy_from_slice(&zz);
    Ok(())
}

/// Gauss rule from monic recurrence coefficients and total mass μ₀.
pub fn gauss_from_recurrence(a: &[f64], bsq: &[f64], mu0: f64) -> Result<Rule> {
    let m = a.len();
    let mut d = a.to_vec();
    let mut e: Vec<f64> = (0..m).map(|k| if k + 1 < m { bsq[k].sqrt() } else { 0.0 }).collect();
    let mut z = vec![0.0; m];
    z[0] = mu0.sqrt();
    imtqlx(&mut d, &mut e, &mut z)?;
    Ok(Rule { nodes: d, weights: z.iter().map(|v| v * v).collect() })
}

/// Gauss–Jacobi rule for the weight (1−x)^a (1+x)^b on [−1, 1].
pub fn gauss_jacobi(m: usize, a: f64, b: f64) -> Result<Rule> {
    if m == 0 {
        return Err(Error::Parameter("rule size must be positive".into()));
    }
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::Parameter(format!("Jacobi exponents ({a}, {b}) must exceed −1")));
    }
    let ab = a + b;
    let mut diag = Vec::with_capacity(m);
    let mut off = Vec::with_capacity(m);
    for k in 0..m {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        diag.push(if k == 0 { (b - a) / (ab + 2.0) } else { (b * b - a * a) / (s * (s + 2.0)) });
        let k1 = kf + 1.0;
        let s1 = 2.0 * k1 + ab;
        let bsq = if k == 0 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + ab) / (s1 * s1 * (s1 + 1.0) * (s1 - 1.0))
        };
        off.push(bsq);
    }
    let log_mu0 = (ab + 1.0) * std::f64::consts::LN_2 + lgamma(a + 1.0) + lgamma(b + 1.0)
        - lgamma(ab + 2.0);
    gauss_from_recurrence(&diag, &off, log_mu0.exp())
}

/// Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(m: usize) -> Result<Rule> {
    gauss_jacobi(m, 0.0, 0.0)
}

/// Memoized Gauss–Legendre rule; repeated adaptive loops reuse the nodes.
pub fn gauss_legendre_cached(m: usize) -> Result<Arc<Rule>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Rule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("rule cache poisoned").get(&m) {
        return Ok(r.clone());
    }
    let rule = Arc::new(gauss_legendre(m)?);
    cache.lock().expect("rule cache poisoned").insert(m, rule.clone());
    Ok(rule)
}
