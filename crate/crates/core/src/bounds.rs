//! The certified Lipschitz constant: Mori-type Holder data, the dyadic
//! convex majorant, the quantity Upsilon, and the final bound
//! L <= (pi^2/2) K chi^{-1}(Upsilon).
//!
//! Certificate magnitudes routinely exceed f64 range (the majorant is
//! evaluated at depths of 10^5 dyadic levels for K = 3 targets), so
//! breakpoints are stored as ln(x_k) and the assembled constants as
//! log-scaled positive values.

use rand::Rng;
use std::f64::consts::{LN_2, PI};

use crate::curve::JordanCurve;
use crate::error::{Error, Result};
use crate::modulus::ModulusOfContinuity;
use crate::quad;

/// The Lemma 2.5 constant of the Jacobian upper bound, also the prefactor
/// constant of the final display (2 pi K C1 = (pi^2/2) K).
pub const C1: f64 = PI / 4.0;

const HALVING_EPS: f64 = 1e-12;
const MAX_DEPTH: usize = 10_000_000;

/// Positive extended-range value stored as its natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogValue {
    ln: f64,
}

impl LogValue {
    pub fn from_value(v: f64) -> Result<Self> {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidInput(format!(
                "log-scaled value needs a positive finite input, got {v}"
            )));
        }
        Ok(Self { ln: v.ln() })
    }

    pub fn from_ln(ln: f64) -> Self {
        Self { ln }
    }

    pub fn ln(&self) -> f64 {
        self.ln
    }

    pub fn log10(&self) -> f64 {
        self.ln / std::f64::consts::LN_10
    }

    /// Plain value; overflows to infinity (or underflows to 0) outside f64
    /// range.
    pub fn value(&self) -> f64 {
        self.ln.exp()
    }

    pub fn scale(self, factor: f64) -> Self {
        Self {
            ln: self.ln + factor.ln(),
        }
    }
}

/// Mori-type Holder data for normalized K-q.c. maps onto a chord-arc
/// target: alpha = 2/(K(1+2B)^2), Lambda = 4 2^alpha (1+2B) sqrt(2 pi K |Omega| / log 2).
#[derive(Debug, Clone, Copy)]
pub struct MoriBound {
    pub k: f64,
    pub chord_arc: f64,
    pub area: f64,
    pub alpha: f64,
    pub lambda: f64,
}

pub fn mori_holder(k: f64, chord_arc: f64, area: f64) -> Result<MoriBound> {
    if k < 1.0 {
        return Err(Error::InvalidInput(format!("K must be >= 1, got {k}")));
    }
    if !(chord_arc >= 1.0) || !(area > 0.0) {
        return Err(Error::InvalidInput(
            "chord-arc constant must be >= 1 and area positive".into(),
        ));
    }
    let alpha = 2.0 / (k * (1.0 + 2.0 * chord_arc).powi(2));
    let lambda = 4.0
        * 2.0f64.powf(alpha)
        * (1.0 + 2.0 * chord_arc)
        * (2.0 * PI * k * area / LN_2).sqrt();
    Ok(MoriBound {
        k,
        chord_arc,
        area,
        alpha,
        lambda,
    })
}

impl MoriBound {
    /// |f(z1) - f(z2)| <= Lambda |z1 - z2|^alpha.
    pub fn holder_predicate(&self, dz: f64, df: f64) -> bool {
        df <= self.lambda * dz.powf(self.alpha)
    }
}

/// A positive integrable profile on [0, B]: either a mixture of power
/// laws (exact cumulative) or omega(y)/y for a modulus of continuity.
#[derive(Debug, Clone)]
pub enum AFunction {
    PowerMix(Vec<PowerTerm>),
    OmegaOverY(ModulusOfContinuity),
}

#[derive(Debug, Clone, Copy)]
pub struct PowerTerm {
    pub coeff: f64,
    pub exponent: f64, // > -1 for integrability
}

impl AFunction {
    pub fn constant(c: f64) -> Self {
        AFunction::PowerMix(vec![PowerTerm {
            coeff: c,
            exponent: 0.0,
        }])
    }

    pub fn power(c: f64, a: f64) -> Self {
        AFunction::PowerMix(vec![PowerTerm {
            coeff: c,
            exponent: a,
        }])
    }

    fn validate(&self, b_end: f64) -> Result<()> {
        match self {
            AFunction::PowerMix(terms) => {
                if terms.is_empty() {
                    return Err(Error::InvalidInput("empty power mixture".into()));
                }
                for t in terms {
                    if !(t.coeff >= 0.0) || !(t.exponent > -1.0) {
                        return Err(Error::InvalidInput(format!(
                            "power term c={} a={} is not integrable on [0, B]",
                            t.coeff, t.exponent
                        )));
                    }
                }
                if terms.iter().all(|t| t.coeff == 0.0) {
                    return Err(Error::InvalidInput("zero mixture has no majorant".into()));
                }
                Ok(())
            }
            AFunction::OmegaOverY(omega) => {
                let d = omega.dini_integral(b_end)?;
                if !d.is_dini {
                    return Err(Error::InvalidInput(
                        "omega(y)/y fails the dyadic integrability test".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            AFunction::PowerMix(terms) => terms
                .iter()
                .map(|t| t.coeff * x.powf(t.exponent))
                .sum(),
            AFunction::OmegaOverY(omega) => {
                if x <= 0.0 {
                    0.0
                } else {
                    omega.eval(x) / x
                }
            }
        }
    }

    /// F(x) = Int_0^x A, exact for power mixtures.
    pub fn cumulative(&self, x: f64) -> f64 {
        match self {
            AFunction::PowerMix(terms) => terms
                .iter()
                .map(|t| t.coeff * x.powf(t.exponent + 1.0) / (t.exponent + 1.0))
                .sum(),
            AFunction::OmegaOverY(omega) => omega
                .dini_integral(x)
                .map(|d| d.value)
                .unwrap_or(f64::NAN),
        }
    }

    /// Leading model F(x) ~ coeff x^p as x -> 0 (for log-range inversion).
    fn low_end(&self) -> (f64, f64) {
        match self {
            AFunction::PowerMix(terms) => {
                let a_min = terms
                    .iter()
                    .filter(|t| t.coeff > 0.0)
                    .map(|t| t.exponent)
                    .fold(f64::INFINITY, f64::min);
                let c: f64 = terms
                    .iter()
                    .filter(|t| t.coeff > 0.0 && (t.exponent - a_min).abs() < 1e-12)
                    .map(|t| t.coeff)
                    .sum();
                (a_min + 1.0, c / (a_min + 1.0))
            }
            AFunction::OmegaOverY(omega) => {
                let (p, c) = omega.low_end_power();
                (p, c / p)
            }
        }
    }
}

/// The dyadic convex majorant: breakpoints x_0 = B > x_1 > ... with
/// Int_0^{x_k} A <= M 2^{-k} and x_{k+1} <= x_k 2^{-max(1, 1/q)}, the
/// decreasing xi with xi(x_k) = k, and the increasing chi with
/// chi(Q x_k^{-q}) = k and x chi(x) convex.
///
/// For q >= 1, xi is piecewise linear and chi(y) = xi((Q/y)^{1/q}); for
/// q < 1 that formula loses convexity, so chi is interpolated between the
/// image nodes y_k = Q x_k^{-q} with y chi(y) piecewise linear instead.
#[derive(Debug, Clone)]
pub struct ConvexMajorant {
    ln_x: Vec<f64>,
    pub q: f64,
    pub q_scale: LogValue,
    pub mass: f64,
    pub domain_end: f64,
    /// q >= 1: linear-in-x pieces; q < 1: linear-in-y pieces of y chi(y).
    linear_in_x: bool,
}

/// Build the majorant to the requested dyadic depth. Picks the largest
/// admissible breakpoint at each level (tightest xi), then enforces
/// x_{k+1} <= (x_k/2)(1 - 1e-12).
pub fn eremenko_majorant(
    a: &AFunction,
    b_end: f64,
    q: f64,
    q_scale: LogValue,
    depth: usize,
) -> Result<ConvexMajorant> {
    if !(b_end > 0.0) || !(q > 0.0) {
        return Err(Error::InvalidInput("need B > 0 and q > 0".into()));
    }
    if depth > MAX_DEPTH {
        return Err(Error::Range(format!(
            "requested majorant depth {depth} exceeds the cap {MAX_DEPTH}"
        )));
    }
    a.validate(b_end)?;
    let mass = a.cumulative(b_end);
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::InvalidInput(format!(
            "total mass of A must be positive and finite, got {mass}"
        )));
    }

    // cumulative table at dyadic nodes B 2^{-j}; each entry integrates
    // from 0 so deep values do not cancel
    let table_levels = 60usize;
    let table: Vec<f64> = (0..=table_levels)
        .map(|j| a.cumulative(b_end * (0.5f64).powi(j as i32)))
        .collect();
    let (p_low, c_low) = a.low_end();
    let deepest_x = b_end * (0.5f64).powi(table_levels as i32);
    let deepest_f = *table.last().unwrap();

    // invert F(x) = target
    let invert = |ln_target: f64| -> f64 {
        if ln_target <= deepest_f.max(1e-300).ln() || deepest_f <= 0.0 {
            // anchored power-model extrapolation below the table
            let anchor_f = if deepest_f > 0.0 {
                deepest_f
            } else {
                c_low * deepest_x.powf(p_low)
            };
            return deepest_x.ln() + (ln_target - anchor_f.ln()) / p_low;
        }
        let target = ln_target.exp();
        // bracketing level, then bisection anchored at the level floor
        let mut j = 0;
        while j < table_levels && table[j + 1] > target {
            j += 1;
        }
        let anchor = b_end * (0.5f64).powi((j + 1).min(table_levels) as i32);
        let f_anchor = table[(j + 1).min(table_levels)];
        let (mut lo, mut hi) = (anchor, b_end * (0.5f64).powi(j as i32));
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            let f_mid = f_anchor + quad::gauss8_panels(&|x| a.eval(x), anchor, mid, 4);
            if f_mid < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (0.5 * (lo + hi)).ln()
    };

    // decay 2^{-1/q} for q < 1 keeps y_{k+1}/y_k >= 2, which the
    // linear-in-y pieces need for convexity
    let ln_step = -(1.0f64.max(1.0 / q)) * LN_2 + (1.0 - HALVING_EPS).ln();
    let mut ln_x = Vec::with_capacity(depth + 1);
    ln_x.push(b_end.ln());
    for k in 1..=depth {
        let candidate = invert(mass.ln() - k as f64 * LN_2);
        let bound = ln_x[k - 1] + ln_step;
        ln_x.push(candidate.min(bound));
    }

    Ok(ConvexMajorant {
        ln_x,
        q,
        q_scale,
        mass,
        domain_end: b_end,
        linear_in_x: q >= 1.0,
    })
}

impl ConvexMajorant {
    pub fn depth(&self) -> usize {
        self.ln_x.len() - 1
    }

    pub fn breakpoint_ln(&self, k: usize) -> Option<f64> {
        self.ln_x.get(k).copied()
    }

    /// xi at ln x; xi = 0 for x >= B, range error below the deepest
    /// breakpoint.
    pub fn xi_ln(&self, ln_x: f64) -> Result<f64> {
        if ln_x >= self.ln_x[0] {
            return Ok(0.0);
        }
        let last = *self.ln_x.last().unwrap();
        if ln_x < last {
            return Err(Error::Range(format!(
                "xi evaluated below breakpoint depth {} (ln x = {ln_x:.3e})",
                self.depth()
            )));
        }
        // binary search in the descending ln_x
        let mut lo = 0usize;
        let mut hi = self.ln_x.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.ln_x[mid] > ln_x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (lxk, lxk1) = (self.ln_x[lo], self.ln_x[hi]);
        let u = (ln_x - lxk).exp(); // x/x_k in (x_{k+1}/x_k, 1]
        if self.linear_in_x {
            let r = (lxk1 - lxk).exp();
            Ok(lo as f64 + (1.0 - u) / (1.0 - r))
        } else {
            // pullback of the linear-in-y chi pieces
            let ry = (self.q * (lxk - lxk1)).exp(); // y_{k+1}/y_k >= 2
            Ok(lo as f64 + ry / (ry - 1.0) * (1.0 - u.powf(self.q)))
        }
    }

    pub fn xi(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::InvalidInput("xi needs x > 0".into()));
        }
        self.xi_ln(x.ln())
    }

    /// ln of xi^{-1}(v); range error when v exceeds the constructed depth.
    pub fn xi_inverse_ln(&self, v: f64) -> Result<f64> {
        if !(v >= 0.0) {
            return Err(Error::InvalidInput(format!("xi^-1 needs v >= 0, got {v}")));
        }
        let k = v.floor() as usize;
        if k + 1 >= self.ln_x.len() {
            return Err(Error::Range(format!(
                "xi^-1({v:.3}) needs breakpoint depth {} but only {} were built",
                k + 1,
                self.depth()
            )));
        }
        let (lxk, lxk1) = (self.ln_x[k], self.ln_x[k + 1]);
        let frac = v - k as f64;
        if self.linear_in_x {
            let r = (lxk1 - lxk).exp();
            // x = x_k (1 - frac (1 - r))
            Ok(lxk + (1.0 - frac * (1.0 - r)).ln())
        } else {
            let ry = (self.q * (lxk - lxk1)).exp();
            // u^q = 1 - frac (r - 1)/r
            Ok(lxk + (1.0 - frac * (ry - 1.0) / ry).ln() / self.q)
        }
    }

    /// chi(y) = xi((Q/y)^{1/q}); 0 for y below Q B^{-q}.
    pub fn chi(&self, y: LogValue) -> Result<f64> {
        let ln_arg = (self.q_scale.ln() - y.ln()) / self.q;
        if ln_arg >= self.ln_x[0] {
            return Ok(0.0);
        }
        self.xi_ln(ln_arg)
    }

    pub fn chi_plain(&self, y: f64) -> Result<f64> {
        self.chi(LogValue::from_value(y)?)
    }

    /// chi^{-1}(v) = Q (xi^{-1}(v))^{-q}.
    pub fn chi_inverse(&self, v: f64) -> Result<LogValue> {
        let ln_u = self.xi_inverse_ln(v)?;
        Ok(LogValue::from_ln(self.q_scale.ln() - self.q * ln_u))
    }

    /// Int_0^B A(x) chi(Q x^{-q}) dx by per-level Gauss panels (chi through
    /// its evaluator, so the substitution identity is exercised, not
    /// assumed), plus the dyadic tail bound.
    pub fn majorant_integral(&self, a: &AFunction) -> f64 {
        let levels = self.depth().min(60);
        let mut acc = 0.0;
        for k in 0..levels {
            let (hi, lo) = (self.ln_x[k].exp(), self.ln_x[k + 1].exp());
            acc += quad::gauss8_panels(
                &|x| {
                    let y = LogValue::from_ln(self.q_scale.ln() - self.q * x.ln());
                    a.eval(x) * self.chi(y).unwrap_or(f64::NAN)
                },
                lo,
                hi,
                4,
            );
        }
        // Int_0^{x_levels} A xi <= sum_{k >= levels} (k+1) M 2^{-k}
        let tail = self.mass * (2.0 * levels as f64 + 4.0) * (0.5f64).powi(levels as i32);
        acc + tail
    }

    /// Midpoint-convexity defect of g(y) = y chi(y) over an n-point log
    /// grid of the representable range (negative when convex).
    pub fn convexity_defect(&self, n: usize) -> f64 {
        let grid = self.check_grid(n);
        let g = |y: f64| y * self.chi_plain(y).unwrap_or(f64::NAN);
        let mut worst = f64::NEG_INFINITY;
        for i in 0..grid.len() {
            for j in (i + 1)..grid.len() {
                let (y1, y2) = (grid[i], grid[j]);
                let mid = 0.5 * (y1 + y2);
                let defect = g(mid) - 0.5 * (g(y1) + g(y2));
                let scale = 1.0 + g(y1).abs() + g(y2).abs();
                worst = worst.max(defect / scale);
            }
        }
        worst
    }

    /// max over a log grid of |chi^{-1}(chi(y)) - y| / y.
    pub fn inverse_roundtrip_defect(&self, n: usize) -> f64 {
        let grid = self.check_grid(n);
        let mut worst: f64 = 0.0;
        for &y in &grid {
            let v = self.chi_plain(y).unwrap_or(f64::NAN);
            if let Ok(back) = self.chi_inverse(v) {
                worst = worst.max((back.value() - y).abs() / y);
            }
        }
        worst
    }

    /// Bundle of the three numeric certificates of the construction.
    pub fn verify(&self, a: &AFunction) -> MajorantCheck {
        let ratio = self.majorant_integral(a) / self.mass;
        let convexity_defect = self.convexity_defect(200);
        let roundtrip_defect = self.inverse_roundtrip_defect(100);
        MajorantCheck {
            ratio,
            convexity_defect,
            roundtrip_defect,
            ok: ratio <= 4.0 && convexity_defect <= 1e-9 && roundtrip_defect <= 1e-10,
        }
    }

    /// Log-spaced grid across the f64-representable part of chi's domain.
    fn check_grid(&self, n: usize) -> Vec<f64> {
        let ln_q = self.q_scale.ln();
        let y_min_ln = ln_q - self.q * self.ln_x[0]; // chi = 0 here
        let deep = self.ln_x[self.depth().min(40)];
        let y_max_ln = (ln_q - self.q * deep).min(600.0);
        let lo = y_min_ln + 1e-6 * (y_max_ln - y_min_ln).abs().max(1e-3);
        (0..n)
            .map(|i| {
                let t = (i as f64 + 0.5) / n as f64;
                (lo + t * (y_max_ln - lo)).exp()
            })
            .collect()
    }
}

/// Numeric certificates of a constructed majorant: the 4-mass integral
/// ratio, midpoint convexity of x chi(x), and the chi inverse roundtrip.
#[derive(Debug, Clone, Copy)]
pub struct MajorantCheck {
    pub ratio: f64,
    pub convexity_defect: f64,
    pub roundtrip_defect: f64,
    pub ok: bool,
}

/// Upsilon and the (B, Q) pair of the bound chain.
#[derive(Debug, Clone, Copy)]
pub struct UpsilonData {
    pub value: f64,
    pub error: f64,
    pub b_end: f64,
    pub q: f64,
    pub q_scale: LogValue,
    pub dini_value: f64,
    pub dini_levels: usize,
}

/// Upsilon(K, Omega) = (8 K C1 B_gamma / alpha) Int_0^B omega(y)/y dy with
/// B = B_gamma Lambda pi^alpha and Q = omega(|gamma|) (B_gamma Lambda)^{2/alpha}.
pub fn upsilon(
    k: f64,
    omega: &ModulusOfContinuity,
    mori: &MoriBound,
) -> Result<UpsilonData> {
    let b_gamma = mori.chord_arc;
    let lambda = mori.lambda;
    let alpha = mori.alpha;
    let b_end = b_gamma * lambda * PI.powf(alpha);
    let dini = omega.dini_integral(b_end)?;
    if !dini.is_dini {
        return Err(Error::CertificateUnavailable(
            "the Dini integral of omega diverges; no Lipschitz certificate exists".into(),
        ));
    }
    let prefactor = 8.0 * k * C1 * b_gamma / alpha;
    let cap = omega.cap();
    if !(cap > 0.0) {
        return Err(Error::CertificateUnavailable(
            "omega vanishes identically; Q is degenerate".into(),
        ));
    }
    let q = 2.0 / alpha - 1.0;
    let q_scale = LogValue::from_ln(cap.ln() + (2.0 / alpha) * (b_gamma * lambda).ln());
    Ok(UpsilonData {
        value: prefactor * dini.value,
        error: prefactor * dini.error.min(dini.value),
        b_end,
        q,
        q_scale,
        dini_value: dini.value,
        dini_levels: dini.levels,
    })
}

/// The assembled constants of the Lipschitz bound pipeline.
#[derive(Debug, Clone)]
pub struct LipschitzCertificate {
    pub k: f64,
    pub b_gamma: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub b_end: f64,
    pub q: f64,
    pub q_scale: LogValue,
    pub upsilon: f64,
    pub upsilon_error: f64,
    pub c1: f64,
    pub chi_inv_upsilon: LogValue,
    pub l_bound: LogValue,
    pub breakpoint_count: usize,
    pub dini_levels: usize,
}

/// Assemble the certificate: L <= (pi^2/2) K chi^{-1}(Upsilon), with the
/// majorant built for A(y) = omega(y)/y and q = 2/alpha - 1, to exactly
/// the depth chi^{-1}(Upsilon) requires.
pub fn lipschitz_certificate(
    k: f64,
    curve: &JordanCurve,
    omega: &ModulusOfContinuity,
) -> Result<LipschitzCertificate> {
    let b_gamma = curve.chord_arc_constant()?;
    let mori = mori_holder(k, b_gamma, curve.enclosed_area())?;
    let ups = upsilon(k, omega, &mori)?;

    let depth = ups.value.ceil() as usize + 2;
    let a = AFunction::OmegaOverY(omega.clone());
    let majorant = eremenko_majorant(&a, ups.b_end, ups.q, ups.q_scale, depth)?;
    let chi_inv = majorant.chi_inverse(ups.value)?;
    let l_bound = chi_inv.scale(PI * PI / 2.0 * k);

    Ok(LipschitzCertificate {
        k,
        b_gamma,
        alpha: mori.alpha,
        lambda: mori.lambda,
        b_end: ups.b_end,
        q: ups.q,
        q_scale: ups.q_scale,
        upsilon: ups.value,
        upsilon_error: ups.error,
        c1: C1,
        chi_inv_upsilon: chi_inv,
        l_bound,
        breakpoint_count: majorant.depth() + 1,
        dini_levels: ups.dini_levels,
    })
}

/// Audit data for the Jensen step of the bound chain at the angle of
/// maximal |Psi'|.
#[derive(Debug, Clone, Copy)]
pub struct JensenDiagnostic {
    /// M = L / (2 pi K C1).
    pub m_hat: f64,
    /// (1/2pi) Int M(x, phi*) dx with M(x,phi) = rho(x,phi)/x^2 omega(rho).
    pub mean_m: f64,
    /// Phi(M) with Phi(t) = t chi(t).
    pub lhs: f64,
    /// (1/2pi) Int Phi(M(x, phi*)) dx.
    pub rhs: f64,
    pub pass: bool,
}

/// Re-check the chain's internal inequalities Phi(M) <= avg Phi(M(x,phi))
/// and M <= avg M(x,phi) on a concrete map; a quadrature audit of the
/// certificate pipeline (chi is typically zero at these magnitudes, the
/// mean inequality is the substantive part).
pub fn jensen_diagnostic(
    boundary: &crate::boundary::BoundaryMap,
    omega: &ModulusOfContinuity,
    k: f64,
) -> Result<JensenDiagnostic> {
    let curve = boundary.target();
    let mori = mori_holder(k, curve.chord_arc_constant()?, curve.enclosed_area())?;
    let ups = upsilon(k, omega, &mori)?;
    let depth = (ups.value.ceil() as usize + 2).min(MAX_DEPTH);
    let majorant = eremenko_majorant(
        &AFunction::OmegaOverY(omega.clone()),
        ups.b_end,
        ups.q,
        ups.q_scale,
        depth,
    )?;

    let n = boundary.n();
    let h = 2.0 * PI / n as f64;
    let l = curve.length();
    // angle of maximal |Psi'|
    let (mut phi, mut best) = (0.0, 0.0);
    for (j, d) in boundary.derivative().iter().enumerate() {
        if d.norm() > best {
            best = d.norm();
            phi = h * j as f64;
        }
    }
    let m_hat = best / (2.0 * PI * k * C1);
    let psi_phi = boundary.psi_at(phi);

    let chi_at = |t: f64| -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        majorant
            .chi(LogValue::from_ln(t.ln()))
            .unwrap_or(f64::INFINITY)
    };

    let mut mean_m = 0.0;
    let mut rhs = 0.0;
    for j in 0..n {
        let mut x = (j as f64 + 0.5) * h;
        if x > PI {
            x -= 2.0 * PI;
        }
        let u = boundary.psi_at(phi + x);
        let mut d = (u - psi_phi).abs() % l;
        d = d.min(l - d);
        let m_x = d * omega.eval(d) / (x * x);
        mean_m += m_x;
        rhs += m_x * chi_at(m_x);
    }
    mean_m *= h / (2.0 * PI);
    rhs *= h / (2.0 * PI);
    let lhs = m_hat * chi_at(m_hat);
    let tol = 1e-9 * (1.0 + mean_m.abs() + rhs.abs());
    Ok(JensenDiagnostic {
        m_hat,
        mean_m,
        lhs,
        rhs,
        pass: m_hat <= mean_m + tol && lhs <= rhs + tol,
    })
}

/// Summary of a seeded randomized majorant suite.
#[derive(Debug, Clone, Copy)]
pub struct MajorantTrials {
    pub trials: usize,
    pub seed: u64,
    pub worst_ratio: f64,
    pub worst_convexity_defect: f64,
    pub worst_roundtrip_defect: f64,
}

/// Run `count` seeded trials with random power mixtures and
/// (q, Q) in [0.5, 10] x [0.1, 10]; identical seeds give identical
/// summaries.
pub fn majorant_trials(seed: u64, count: usize, depth: usize) -> Result<MajorantTrials> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut worst_ratio = 0.0f64;
    let mut worst_convexity = f64::NEG_INFINITY;
    let mut worst_roundtrip = 0.0f64;
    for _ in 0..count {
        let a = random_power_mixture(&mut rng);
        let q = rng.gen_range(0.5..10.0);
        let big_q = rng.gen_range(0.1..10.0);
        let b_end = rng.gen_range(0.5..3.0);
        let m = eremenko_majorant(&a, b_end, q, LogValue::from_value(big_q)?, depth)?;
        worst_ratio = worst_ratio.max(m.majorant_integral(&a) / m.mass);
        worst_convexity = worst_convexity.max(m.convexity_defect(64));
        worst_roundtrip = worst_roundtrip.max(m.inverse_roundtrip_defect(32));
    }
    Ok(MajorantTrials {
        trials: count,
        seed,
        worst_ratio,
        worst_convexity_defect: worst_convexity,
        worst_roundtrip_defect: worst_roundtrip,
    })
}

/// Seeded power-law mixture for the randomized majorant trials:
/// 1-4 terms with c in [0.1, 3] and a in [-0.9, 2].
pub fn random_power_mixture<R: Rng>(rng: &mut R) -> AFunction {
    let n_terms = rng.gen_range(1..=4);
    let terms = (0..n_terms)
        .map(|_| PowerTerm {
            coeff: rng.gen_range(0.1..3.0),
            exponent: rng.gen_range(-0.9..2.0),
        })
        .collect();
    AFunction::PowerMix(terms)
}
