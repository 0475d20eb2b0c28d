//! Truncated Taylor series for derivatives of ODE solutions.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Taylor coefficients c[k] = f⁽ᵏ⁾(s₀)/k! up to order N − 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<const N: usize>(pub [f64; N]);

impl<const N: usize> Jet<N> {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        Jet(c)
    }

    /// The independent variable at s₀.
    pub fn var(s0: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = s0;
        if N > 1 {
            c[1] = 1.0;
        }
        Jet(c)
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// k-th derivative.
    pub fn deriv(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.0[k] * fact
    }

    pub fn scale(self, k: f64) -> Self {
        Jet(self.0.map(|v| v * k))
    }

    pub fn recip(self) -> Self {
        Jet::constant(1.0) / self
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(o.0) {
            *a += b;
        }
        Jet(c)
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet(self.0.map(|v| -v))
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [0.0; N];
        for (i, ci) in c.iter_mut().enumerate() {
            *ci = (0..=i).map(|j| self.0[j] * o.0[i - j]).sum();
        }
        Jet(c)
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let mut q = [0.0; N];
        for i in 0..N {
            let acc: f64 = (1..=i).map(|j| o.0[j] * q[i - j]).sum();
            q[i] = (self.0[i] - acc) / o.0[0];
        }
        Jet(q)
    }
}

impl<const N: usize> Add<f64> for Jet<N> {
    type Output = Self;
    fn add(mut self, o: f64) -> Self {
        self.0[0] += o;
        self
    }
}

impl<const N: usize> Sub<f64> for Jet<N> {
    type Output = Self;
    fn sub(mut self, o: f64) -> Self {
        self.0[0] -= o;
        self
    }
}

impl<const N: usize> Mul<f64> for Jet<N> {
    type Output = Self;
    fn mul(self, o: f64) -> Self {
        self.scale(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_function_derivatives() {
        // f(s) = s² / (1 + s) at s = 2: f' = (s² + 2s)/(1+s)², f'' = 2/(1+s)³
        let s = Jet::<5>::var(2.0);
        let f = s * s / (s + 1.0);
        assert!((f.value() - 4.0 / 3.0).abs() < 1e-15);
        assert!((f.deriv(1) - 8.0 / 9.0).abs() < 1e-15);
        assert!((f.deriv(2) - 2.0 / 27.0).abs() < 1e-15);
        assert!((f.deriv(3) + 6.0 / 81.0).abs() < 1e-15);
    }
}
