// NaN-robust validation guards intentionally use negated comparisons
// (`!(x > 0.0)` rejects NaN where `x <= 0.0` would accept it).
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Numerical analysis of harmonic mappings of the unit disk onto smooth
//! Jordan domains: harmonic extensions and their derivatives, the circle
//! Hilbert transform, boundary kernels and the boundary Jacobian,
//! quasiconformal dilatation measurements, and a certified Lipschitz
//! constant assembled from Mori-type Holder estimates, Dini integrals of
//! the target's tangent modulus, and a dyadic convex majorant.

pub mod boundary;
pub mod bounds;
pub mod curve;
pub mod error;
pub mod fft;
pub mod harmonic;
pub mod hilbert;
pub mod kernels;
pub mod modulus;
pub mod parallel;
pub mod presets;
pub mod qc;
pub mod quad;
pub mod spline;

pub use error::{Error, Result};

pub use boundary::{BoundaryMap, BoundaryMapSpec};
pub use bounds::{
    eremenko_majorant, lipschitz_certificate, mori_holder, upsilon, AFunction, ConvexMajorant,
    LipschitzCertificate, LogValue, MoriBound,
};
pub use curve::{arc_length_reparametrize, CurveSpec, JordanCurve};
pub use harmonic::{analyze, poisson_quadrature, HarmonicMap};
pub use hilbert::{conjugate_identity_check, hilbert_pv, hilbert_spectral, CircleFunction};
pub use kernels::{boundary_jacobian, jacobian_upper_bound, kernel_bound_check, kernel_k, kernel_kf};
pub use modulus::{modulus_of_continuity, DiniIntegral, ModulusOfContinuity};
pub use qc::{
    convex_qc_criterion, dilatation_field, empirical_lipschitz, heinz_lower_check,
    jacobian_lower_check, normalization_check, renormalize, DilatationReport, NormalizationReport,
};
