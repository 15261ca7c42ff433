//! Report structures (JSON is canonical; CSV is a lossy flat view).
//! Field order is fixed by struct order, so identical runs render
//! byte-identical output.

use serde::Serialize;

#[derive(Serialize)]
pub struct GridPoint {
    pub r: f64,
    pub theta: f64,
    pub k: f64,
    pub jacobian: f64,
    pub df_norm: f64,
    pub angular_norm: f64,
}

#[derive(Serialize)]
pub struct NormalizationJson {
    pub pass: bool,
    pub arcs: [f64; 3],
}

#[derive(Serialize)]
pub struct HeinzJson {
    pub pass: bool,
    pub margin: f64,
}

#[derive(Serialize)]
pub struct JacobianLowerJson {
    pub pass: bool,
    pub margin: f64,
    pub kappa: f64,
    pub delta: f64,
}

#[derive(Serialize)]
pub struct CriterionJson {
    #[serde(rename = "log_dF_sup")]
    pub log_df_sup: f64,
    pub hilbert_sup: f64,
    pub predicted_qc: bool,
    pub measured_sup_k: f64,
    pub consistent: bool,
}

#[derive(Serialize)]
pub struct KAssertionJson {
    pub requested: f64,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub map: String,
    pub n: usize,
    pub seed: u64,
    pub k_sup: f64,
    #[serde(rename = "K")]
    pub big_k: f64,
    #[serde(rename = "J_min")]
    pub j_min: f64,
    pub lipschitz_sup: f64,
    pub max_angular_derivative: f64,
    pub sense_preserving: bool,
    pub not_qc: bool,
    pub tail_energy: f64,
    pub normalization: NormalizationJson,
    pub heinz: Option<HeinzJson>,
    pub jacobian_lower: Option<JacobianLowerJson>,
    pub criterion: Option<CriterionJson>,
    pub k_assertion: Option<KAssertionJson>,
    pub failed_checks: Vec<String>,
    #[serde(skip)]
    pub grid: Vec<GridPoint>,
}

#[derive(Serialize)]
pub struct QuadratureErrors {
    pub upsilon_error: f64,
    pub dini_levels: usize,
}

#[derive(Serialize)]
pub struct CertificateAudit {
    pub x_k_count: usize,
    pub quadrature_errors: QuadratureErrors,
    pub q_exponent: f64,
    #[serde(rename = "log10_Q")]
    pub log10_q: f64,
    #[serde(rename = "log10_L_bound")]
    pub log10_l_bound: f64,
    #[serde(rename = "measured_K", skip_serializing_if = "Option::is_none")]
    pub measured_k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_lipschitz: Option<f64>,
}

#[derive(Serialize)]
pub struct CertifyReport {
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "B_gamma")]
    pub b_gamma: f64,
    pub alpha: f64,
    #[serde(rename = "Lambda")]
    pub lambda: f64,
    #[serde(rename = "B")]
    pub b_end: f64,
    /// Plain value of Q; null when it exceeds f64 range (see audit.log10_Q).
    #[serde(rename = "Q")]
    pub q_value: f64,
    #[serde(rename = "Upsilon")]
    pub upsilon: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    /// Plain value of the certified constant; null when it exceeds f64
    /// range (see audit.log10_L_bound).
    #[serde(rename = "L_bound")]
    pub l_bound: f64,
    pub audit: CertificateAudit,
}

#[derive(Serialize)]
pub struct CertifyFailure {
    pub available: bool,
    pub reason: String,
}

#[derive(Serialize)]
pub struct JacobianRow {
    pub tau: f64,
    pub value: f64,
    pub remainder_bound: f64,
    pub upper_bound: f64,
    /// J / bound, <= 1 when the upper bound dominates.
    pub ratio: f64,
    pub within_bound: bool,
}

#[derive(Serialize)]
pub struct JacobianReport {
    pub map: String,
    pub n: usize,
    pub taus: usize,
    pub skipped_degenerate: usize,
    pub pass: bool,
    pub rows: Vec<JacobianRow>,
}

#[derive(Serialize)]
pub struct HilbertReport {
    pub map: String,
    pub n: usize,
    pub pv_error_estimate: f64,
    pub pv_vs_spectral_max: f64,
    pub involution_max: f64,
    pub conjugate_identity_max: f64,
    pub output_mean_abs: f64,
    pub pass: bool,
    pub failed_checks: Vec<String>,
}

#[derive(Serialize)]
pub struct EremenkoSingleReport {
    pub profile: String,
    #[serde(rename = "B")]
    pub b_end: f64,
    pub q: f64,
    #[serde(rename = "Q")]
    pub big_q: f64,
    pub mass: f64,
    pub integral: f64,
    pub ratio: f64,
    pub ratio_bound: f64,
    pub convexity_defect: f64,
    pub roundtrip_defect: f64,
    pub breakpoints: usize,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct EremenkoTrialsReport {
    pub trials: usize,
    pub seed: u64,
    pub worst_ratio: f64,
    pub ratio_bound: f64,
    pub worst_convexity_defect: f64,
    pub worst_roundtrip_defect: f64,
    pub unit_profile_ratio: f64,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct PresetEntry {
    pub name: String,
    pub description: String,
}

#[derive(Serialize)]
pub struct PresetsReport {
    pub presets: Vec<PresetEntry>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

/// CSV: one row per grid point for analyze.
pub fn analyze_csv(rep: &AnalyzeReport) -> String {
    let mut out = String::from("r,theta,k,jacobian,df_norm,angular_norm\n");
    for p in &rep.grid {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            p.r, p.theta, p.k, p.jacobian, p.df_norm, p.angular_norm
        ));
    }
    out
}

pub fn jacobian_csv(rep: &JacobianReport) -> String {
    let mut out = String::from("tau,value,remainder_bound,upper_bound,ratio,within_bound\n");
    for r in &rep.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.tau, r.value, r.remainder_bound, r.upper_bound, r.ratio, r.within_bound
        ));
    }
    out
}

pub fn certify_csv(rep: &CertifyReport) -> String {
    let mut out = String::from("field,value\n");
    for (k, v) in [
        ("K", rep.k),
        ("B_gamma", rep.b_gamma),
        ("alpha", rep.alpha),
        ("Lambda", rep.lambda),
        ("B", rep.b_end),
        ("Upsilon", rep.upsilon),
        ("C1", rep.c1),
        ("log10_Q", rep.audit.log10_q),
        ("log10_L_bound", rep.audit.log10_l_bound),
        ("x_k_count", rep.audit.x_k_count as f64),
    ] {
        out.push_str(&format!("{k},{v}\n"));
    }
    out
}

pub fn presets_csv(rep: &PresetsReport) -> String {
    let mut out = String::from("name,description\n");
    for p in &rep.presets {
        out.push_str(&format!("{},\"{}\"\n", p.name, p.description));
    }
    out
}
