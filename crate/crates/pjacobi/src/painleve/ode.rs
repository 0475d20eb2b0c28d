//! Dormand–Prince 5(4) with PI step-size control.

use crate::error::{Error, Result};

pub type State = [f64; 3];

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub atol: f64,
    pub rtol: f64,
    pub max_steps: usize,
    /// Largest allowed |h| as a fraction of the interval.
    pub max_step_frac: f64,
}

impl OdeOptions {
    pub fn with_tol(tol: f64) -> Self {
        OdeOptions { atol: tol, rtol: tol, max_steps: 1_000_000, max_step_frac: 0.02 }
    }
}

fn axpy(x: &State, h: f64, ks: &[State], coef: &[f64]) -> State {
    let mut out = *x;
    for (k, a) in ks.iter().zip(coef) {
        if *a != 0.0 {
            for i in 0..3 {
                out[i] += h * a * k[i];
            }
        }
    }
    out
}

/// Integrate x′ = f(s, x) from s0 to s1 (either direction). `accept` sees
/// each accepted point and may stop the integration with an error.
pub fn dopri5(
    f: impl Fn(f64, &State) -> State,
    s0: f64,
    s1: f64,
    x0: State,
    opts: &OdeOptions,
    mut accept: impl FnMut(f64, &State) -> Result<()>,
) -> Result<Vec<(f64, State)>> {
    let span = s1 - s0;
    let dir = span.signum();
    let hmax = span.abs() * opts.max_step_frac;
    let mut s = s0;
    let mut x = x0;
    let mut out = vec![(s, x)];
    let mut k1 = f(s, &x);
    let mut h = dir * (hmax.min(1e-3 * (1.0 + s.abs())));
    let mut err_prev: f64 = 1e-4;
    let mut steps = 0;
    while (s1 - s) * dir > 0.0 {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::NumericalBreakdown(format!("step limit reached at s = {s}")));
        }
        if (s + h - s1) * dir > 0.0 {
            h = s1 - s;
        }
        let mut ks = [k1, [0.0; 3], [0.0; 3], [0.0; 3], [0.0; 3], [0.0; 3], [0.0; 3]];
        for st in 1..7 {
            let xi = axpy(&x, h, &ks[..st], &A[st][..st]);
            ks[st] = f(s + C[st] * h, &xi);
        }
        let x_new = axpy(&x, h, &ks[..6], &A[6][..6]);
        let err_vec = axpy(&[0.0; 3], h, &ks, &E);
        let mut err = 0.0;
        for i in 0..3 {
            let sc = opts.atol + opts.rtol * x[i].abs().max(x_new[i].abs());
            err += (err_vec[i] / sc).powi(2);
        }
        let err = (err / 3.0).sqrt();
        if !err.is_finite() || x_new.iter().any(|v| !v.is_finite()) {
            h *= 0.25;
        } else if err <= 1.0 {
            let s_new = if (s + h - s1) * dir >= 0.0 { s1 } else { s + h };
            accept(s_new, &x_new)?;
            s = s_new;
            x = x_new;
            k1 = ks[6];
            out.push((s, x));
            let fac = 0.9 * err.max(1e-10).powf(-0.7 / 5.0) * err_prev.powf(0.4 / 5.0);
            h *= fac.clamp(0.2, 5.0);
            err_prev = err.max(1e-4);
        } else {
            h *= (0.9 * err.powf(-0.2)).max(0.2);
        }
        if h.abs() > hmax {
            h = dir * hmax;
        }
        if h.abs() < 1e-14 * (1.0 + s.abs()) {
            return Err(Error::Stiffness(format!("step size underflow at s = {s}")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let f = |_: f64, x: &State| [x[1], -x[0], 0.0];
        let out = dopri5(f, 0.0, 10.0, [1.0, 0.0, 0.0], &OdeOptions::with_tol(1e-11), |_, _| Ok(())).unwrap();
        let (s, x) = out.last().unwrap();
        assert_eq!(*s, 10.0);
        assert!((x[0] - 10f64.cos()).abs() < 1e-8);
        assert!((x[1] + 10f64.sin()).abs() < 1e-8);
        let back = dopri5(f, 10.0, 0.0, *x, &OdeOptions::with_tol(1e-11), |_, _| Ok(())).unwrap();
        assert!((back.last().unwrap().1[0] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn blow_up_is_reported_as_stiffness() {
        // x′ = x² from x(0) = 1 blows up at s = 1
        let f = |_: f64, x: &State| [x[0] * x[0], 0.0, 0.0];
        let r = dopri5(f, 0.0, 2.0, [1.0, 0.0, 0.0], &OdeOptions::with_tol(1e-10), |_, _| Ok(()));
        assert!(matches!(r, Err(Error::Stiffness(_)) | Err(Error::NumericalBreakdown(_))));
    }
}
