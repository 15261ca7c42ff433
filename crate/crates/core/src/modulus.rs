//! Moduli of continuity and Dini integrals.
//!
//! A modulus lives on [0, l] and is extended by the cap omega(t) = omega(l)
//! for t >= l. Three kinds are supported: a power law c*t^a, a user closed
//! form, and an empirical nondecreasing table over a dyadic scale grid.

use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad;

const DYADIC_LEVELS: usize = 40;
const DIVERGENCE_RATIO: f64 = 0.97;

#[derive(Clone)]
pub enum ModulusKind {
    /// c * t^a with 0 < a <= 1.
    Power { coeff: f64, exponent: f64 },
    /// User closed form, valid on [0, l].
    Closed(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    /// Nondecreasing table over ascending scales (linear interpolation,
    /// omega(0) = 0 below the first scale).
    Empirical { scales: Vec<f64>, values: Vec<f64> },
}

impl std::fmt::Debug for ModulusKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModulusKind::Power { coeff, exponent } => f
                .debug_struct("Power")
                .field("coeff", coeff)
                .field("exponent", exponent)
                .finish(),
            ModulusKind::Closed(_) => f.write_str("Closed(..)"),
            ModulusKind::Empirical { scales, .. } => f
                .debug_struct("Empirical")
                .field("scales", &scales.len())
                .finish(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ModulusOfContinuity {
    kind: ModulusKind,
    length: f64,
    cap: f64,
    cumulative: Arc<OnceLock<(Vec<f64>, Vec<f64>)>>,
}

/// Value of a Dini integral with its error estimate and convergence flag.
#[derive(Debug, Clone, Copy)]
pub struct DiniIntegral {
    pub value: f64,
    pub error: f64,
    pub is_dini: bool,
    pub levels: usize,
}

impl ModulusOfContinuity {
    pub fn power(coeff: f64, exponent: f64, length: f64) -> Result<Self> {
        if !(coeff >= 0.0) || !(exponent > 0.0 && exponent <= 1.0) || !(length > 0.0) {
            return Err(Error::InvalidInput(format!(
                "power modulus needs c >= 0, 0 < a <= 1, l > 0 (got c={coeff}, a={exponent}, l={length})"
            )));
        }
        let cap = coeff * length.powf(exponent);
        Ok(Self {
            kind: ModulusKind::Power { coeff, exponent },
            length,
            cap,
            cumulative: Arc::new(OnceLock::new()),
        })
    }

    pub fn closed_form<F>(length: f64, f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(length > 0.0) {
            return Err(Error::InvalidInput("modulus length must be positive".into()));
        }
        let cap = f(length);
        Ok(Self {
            kind: ModulusKind::Closed(Arc::new(f)),
            length,
            cap,
            cumulative: Arc::new(OnceLock::new()),
        })
    }

    /// Tangent modulus of the circle of radius r: omega(t) = 2 sin(min(t, pi r)/(2r)).
    pub fn circle(radius: f64) -> Self {
        let l = 2.0 * std::f64::consts::PI * radius;
        Self::closed_form(l, move |t| {
            2.0 * ((t.min(std::f64::consts::PI * radius)) / (2.0 * radius)).sin()
        })
        .expect("positive length")
    }

    pub fn empirical(scales: Vec<f64>, values: Vec<f64>, length: f64) -> Result<Self> {
        if scales.is_empty() || scales.len() != values.len() {
            return Err(Error::InvalidInput("empty or mismatched modulus table".into()));
        }
        for w in scales.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidInput("modulus scales must be ascending".into()));
            }
        }
        if scales[0] <= 0.0 || *scales.last().unwrap() > length * (1.0 + 1e-12) {
            return Err(Error::InvalidInput("modulus scales must lie in (0, l]".into()));
        }
        // running maximum: the table is a sup by definition
        let mut vals = values;
        let mut run = f64::NEG_INFINITY;
        for v in &mut vals {
            run = run.max(*v);
            *v = run;
        }
        let cap = *vals.last().unwrap();
        Ok(Self {
            kind: ModulusKind::Empirical { scales, values: vals },
            length,
            cap,
            cumulative: Arc::new(OnceLock::new()),
        })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// omega(l), the cap used for t >= l.
    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn kind(&self) -> &ModulusKind {
        &self.kind
    }

    /// Same modulus multiplied by a positive factor.
    pub fn scale(&self, factor: f64) -> Self {
        let kind = match &self.kind {
            ModulusKind::Power { coeff, exponent } => ModulusKind::Power {
                coeff: coeff * factor,
                exponent: *exponent,
            },
            ModulusKind::Closed(f) => {
                let f = f.clone();
                ModulusKind::Closed(Arc::new(move |t| factor * f(t)))
            }
            ModulusKind::Empirical { scales, values } => ModulusKind::Empirical {
                scales: scales.clone(),
                values: values.iter().map(|v| v * factor).collect(),
            },
        };
        Self {
            kind,
            length: self.length,
            cap: self.cap * factor,
            cumulative: Arc::new(OnceLock::new()),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        if t >= self.length {
            return self.cap;
        }
        match &self.kind {
            ModulusKind::Power { coeff, exponent } => coeff * t.powf(*exponent),
            ModulusKind::Closed(f) => f(t),
            ModulusKind::Empirical { scales, values } => {
                if t <= scales[0] {
                    values[0] * t / scales[0]
                } else {
                    quad::interp_linear(scales, values, t)
                }
            }
        }
    }

    /// Leading power model omega(t) ~ coeff * t^p as t -> 0, used to extend
    /// cumulative integrals below floating-point range.
    pub fn low_end_power(&self) -> (f64, f64) {
        match &self.kind {
            ModulusKind::Power { coeff, exponent } => (*exponent, *coeff),
            ModulusKind::Empirical { scales, values } => (1.0, values[0] / scales[0]),
            ModulusKind::Closed(f) => {
                let eps = 1e-8 * self.length;
                let (w1, w2) = (f(eps), f(2.0 * eps));
                if w1 <= 0.0 || w2 <= w1 {
                    (1.0, (w1 / eps).max(0.0))
                } else {
                    let p = (w2 / w1).ln() / std::f64::consts::LN_2;
                    let p = p.clamp(1e-3, 1.0);
                    (p, w1 / eps.powf(p))
                }
            }
        }
    }

    /// Cumulative integral int_0^d omega(t) dt, using the cap above l.
    pub fn cumulative(&self, d: f64) -> f64 {
        if d <= 0.0 {
            return 0.0;
        }
        let head = d.min(self.length);
        let base = match &self.kind {
            ModulusKind::Power { coeff, exponent } => {
                coeff * head.powf(exponent + 1.0) / (exponent + 1.0)
            }
            ModulusKind::Empirical { scales, values } => {
                // exact integral of the piecewise-linear interpolant
                let mut acc = 0.0;
                let mut t_prev = 0.0;
                let mut w_prev = 0.0;
                for (i, &s) in scales.iter().enumerate() {
                    if head <= s {
                        let w_here = self.eval(head);
                        acc += 0.5 * (w_prev + w_here) * (head - t_prev);
                        return acc + self.cap * (d - head).max(0.0);
                    }
                    acc += 0.5 * (w_prev + values[i]) * (s - t_prev);
                    t_prev = s;
                    w_prev = values[i];
                }
                acc + w_prev * (head - t_prev)
            }
            ModulusKind::Closed(f) => {
                let (xs, ys) = self.cumulative.get_or_init(|| {
                    let n = 4096;
                    let f = f.clone();
                    let ys = quad::cumulative_gauss8(&move |t| f(t), 0.0, self.length, n);
                    let xs = (0..=n).map(|i| self.length * i as f64 / n as f64).collect();
                    (xs, ys)
                });
                // node value plus an exact sub-panel correction
                let n = xs.len() - 1;
                let k = ((head / self.length) * n as f64).floor().clamp(0.0, n as f64 - 1.0) as usize;
                ys[k] + quad::gauss8(&|t| f(t), xs[k], head)
            }
        };
        base + self.cap * (d - head).max(0.0)
    }

    /// int_0^delta omega(t)/t dt by dyadic refinement, with divergence flag.
    ///
    /// The tail below the deepest level is closed by geometric-ratio
    /// extrapolation; divergence is declared when the per-level integrals
    /// fail to decay (Cauchy test), which for empirical tables is assessed
    /// over the resolved scales only.
    pub fn dini_integral(&self, delta: f64) -> Result<DiniIntegral> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::InvalidInput(format!("dini integral needs delta > 0, got {delta}")));
        }
        // exact closed form for the power kind
        if let ModulusKind::Power { coeff, exponent } = self.kind {
            let head = delta.min(self.length);
            let mut value = coeff * head.powf(exponent) / exponent;
            if delta > self.length {
                value += self.cap * (delta / self.length).ln();
            }
            return Ok(DiniIntegral {
                value,
                error: 1e-14 * value.abs(),
                is_dini: true,
                levels: 0,
            });
        }

        let head = delta.min(self.length);
        let cap_part = if delta > self.length {
            self.cap * (delta / self.length).ln()
        } else {
            0.0
        };

        // resolution floor: below the first empirical scale omega is the
        // linear model, whose levels always decay; the Cauchy test must only
        // look at resolved levels.
        let resolved_floor = match &self.kind {
            ModulusKind::Empirical { scales, .. } => scales[0],
            _ => 0.0,
        };

        let mut total = 0.0;
        let mut levels = Vec::with_capacity(DYADIC_LEVELS);
        let mut hi = head;
        let mut resolved_ratios: Vec<f64> = Vec::new();
        for k in 0..DYADIC_LEVELS {
            let lo = hi / 2.0;
            let i_k = quad::gauss8_panels(&|t| self.eval(t) / t, lo, hi, 4);
            if k > 0 {
                let prev: f64 = levels[k - 1];
                if prev > 0.0 && lo >= resolved_floor {
                    resolved_ratios.push(i_k / prev);
                }
            }
            levels.push(i_k);
            total += i_k;
            hi = lo;
            if i_k < 1e-15 * (total.abs() + 1e-300) {
                break;
            }
        }

        let last = *levels.last().unwrap();
        let ratio = resolved_ratios
            .iter()
            .rev()
            .take(3)
            .fold(0.0f64, |a, &b| a.max(b));
        let is_dini = ratio < DIVERGENCE_RATIO || last < 1e-14 * (total.abs() + 1e-300);

        if !is_dini {
            return Ok(DiniIntegral {
                value: total + cap_part,
                error: f64::INFINITY,
                is_dini: false,
                levels: levels.len(),
            });
        }

        // geometric tail closure from the deepest decaying levels
        let rho = ratio.clamp(0.0, 0.95);
        let tail = if rho > 0.0 { last * rho / (1.0 - rho) } else { 0.0 };
        let mut error = 0.5 * tail + 1e-13 * total.abs();
        if let ModulusKind::Empirical { values, .. } = &self.kind {
            // below the table resolution the linear model is an assumption
            if head > resolved_floor {
                error += values[0];
            }
        }
        Ok(DiniIntegral {
            value: total + tail + cap_part,
            error,
            is_dini: true,
            levels: levels.len(),
        })
    }
}

/// Empirical modulus of continuity of sampled data over a uniform grid.
///
/// For each t in `t_grid` this is the sup of |xi(x) - xi(y)| over sampled
/// pairs with |x - y| <= t (plain window distances, no wraparound, so
/// non-periodic data like xi(x) = x is handled per the definition).
pub fn modulus_of_continuity(
    values: &[Complex64],
    period: f64,
    t_grid: &[f64],
) -> Result<ModulusOfContinuity> {
    if t_grid.is_empty() {
        return Err(Error::InvalidInput("empty modulus scale grid".into()));
    }
    if values.len() < 2 {
        return Err(Error::InvalidInput("need at least 2 samples for a modulus".into()));
    }
    if !(period > 0.0) {
        return Err(Error::InvalidInput("period must be positive".into()));
    }
    let n = values.len();
    let h = period / n as f64;

    let mut scales: Vec<f64> = t_grid.to_vec();
    scales.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if scales[0] <= 0.0 || scales[scales.len() - 1] > period * (1.0 + 1e-12) {
        return Err(Error::InvalidInput("modulus scales must lie in (0, period]".into()));
    }

    // running max over lags; lag d covers sampled pair distance d*h
    let max_lag = n - 1;
    let mut run = vec![0.0f64; max_lag + 1];
    let mut acc = 0.0f64;
    for d in 1..=max_lag {
        let mut m = 0.0f64;
        for j in 0..(n - d) {
            m = m.max((values[j + d] - values[j]).norm());
        }
        acc = acc.max(m);
        run[d] = acc;
    }

    let table: Vec<f64> = scales
        .iter()
        .map(|&t| {
            let lag = ((t / h) + 1e-9).floor() as usize;
            run[lag.min(max_lag)]
        })
        .collect();
    ModulusOfContinuity::empirical(scales, table, period)
}

/// Dyadic scale grid l*2^{-k}, k = levels-1 .. 0 (ascending).
pub fn dyadic_scales(length: f64, levels: usize) -> Vec<f64> {
    (0..levels)
        .rev()
        .map(|k| length * (0.5f64).powi(k as i32))
        .collect()
}
