//! Periodic cubic spline on a uniform grid, complex-valued.
//!
//! Used to interpolate arc-length curve samples g(s_i) and tangents g'(s_i)
//! at arbitrary arclength. Interpolation error is O(h^4) for smooth data.

use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct PeriodicSpline {
    values: Vec<Complex64>,
    second: Vec<Complex64>,
    step: f64,
    period: f64,
}

impl PeriodicSpline {
    /// Build the spline through `values[i]` at nodes `i * period / values.len()`.
    pub fn new(values: Vec<Complex64>, period: f64) -> Self {
        let n = values.len();
        assert!(n >= 4, "periodic spline needs at least 4 nodes");
        let h = period / n as f64;
        let rhs: Vec<Complex64> = (0..n)
            .map(|i| {
                let prev = values[(i + n - 1) % n];
                let next = values[(i + 1) % n];
                (prev - 2.0 * values[i] + next) * (6.0 / (h * h))
            })
            .collect();
        let second = solve_cyclic_uniform(&rhs);
        Self {
            values,
            second,
            step: h,
            period,
        }
    }

    fn locate(&self, x: f64) -> (usize, usize, f64) {
        let n = self.values.len();
        let mut u = (x % self.period + self.period) % self.period;
        if u >= self.period {
            u = 0.0;
        }
        let mut i = (u / self.step) as usize;
        if i >= n {
            i = n - 1;
        }
        (i, (i + 1) % n, u - i as f64 * self.step)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let (i, j, dx) = self.locate(x);
        let h = self.step;
        let a = (h - dx) / h;
        let b = dx / h;
        self.values[i] * a
            + self.values[j] * b
            + ((a * a * a - a) * self.second[i] + (b * b * b - b) * self.second[j]) * (h * h / 6.0)
    }

    pub fn derivative(&self, x: f64) -> Complex64 {
        let (i, j, dx) = self.locate(x);
        let h = self.step;
        let a = (h - dx) / h;
        let b = dx / h;
        (self.values[j] - self.values[i]) / h
            + ((3.0 * b * b - 1.0) * self.second[j] - (3.0 * a * a - 1.0) * self.second[i])
                * (h / 6.0)
    }
}

/// Solve the cyclic tridiagonal system (1, 4, 1) m = d by Sherman-Morrison.
fn solve_cyclic_uniform(d: &[Complex64]) -> Vec<Complex64> {
    let n = d.len();
    let gamma = -4.0;
    // modified diagonal
    let mut diag = vec![4.0; n];
    diag[0] -= gamma;
    diag[n - 1] -= 1.0 / gamma;

    let x = thomas(&diag, d);
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    u[0] = Complex64::new(gamma, 0.0);
    u[n - 1] = Complex64::new(1.0, 0.0);
    let z = thomas(&diag, &u);

    let fact = (x[0] + x[n - 1] / gamma) / (1.0 + z[0] + z[n - 1] / gamma);
    x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect()
}

/// Thomas algorithm for a tridiagonal system with unit off-diagonals.
fn thomas(diag: &[f64], d: &[Complex64]) -> Vec<Complex64> {
    let n = d.len();
    let mut cp = vec![0.0; n];
    let mut dp = vec![Complex64::new(0.0, 0.0); n];
    cp[0] = 1.0 / diag[0];
    dp[0] = d[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - cp[i - 1];
        cp[i] = 1.0 / m;
        dp[i] = (d[i] - dp[i - 1]) / m;
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    x[n - 1] = dp[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = dp[i] - cp[i] * x[i + 1];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn interpolates_circle_to_fourth_order() {
        for &n in &[64usize, 128] {
            let period = 2.0 * PI;
            let vals: Vec<Complex64> = (0..n)
                .map(|i| Complex64::from_polar(1.0, period * i as f64 / n as f64))
                .collect();
            let sp = PeriodicSpline::new(vals, period);
            let mut worst: f64 = 0.0;
            let mut worst_d: f64 = 0.0;
            for k in 0..1000 {
                let x = period * (k as f64 + 0.31) / 1000.0;
                let exact = Complex64::from_polar(1.0, x);
                worst = worst.max((sp.eval(x) - exact).norm());
                worst_d = worst_d.max((sp.derivative(x) - Complex64::new(0.0, 1.0) * exact).norm());
            }
            let h = period / n as f64;
            assert!(worst < h.powi(4), "value err {worst} at n={n}");
            assert!(worst_d < h.powi(3), "deriv err {worst_d} at n={n}");
        }
    }

    #[test]
    fn periodic_wraparound() {
        let n = 32;
        let vals: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new((2.0 * PI * i as f64 / n as f64).sin(), 0.0))
            .collect();
        let sp = PeriodicSpline::new(vals, 2.0 * PI);
        let a = sp.eval(0.1);
        let b = sp.eval(0.1 + 2.0 * PI);
        let c = sp.eval(0.1 - 2.0 * PI);
        assert!((a - b).norm() < 1e-13);
        assert!((a - c).norm() < 1e-13);
    }
}
