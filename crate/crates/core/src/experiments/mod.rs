//! Numerical witnesses for the dynamical properties of `C_φ`.

mod cesaro;
mod orbit;
mod panel;
mod pseudo;
mod shadow;

pub use cesaro::{cesaro_averages, irregular_scan, CesaroReport, IrregularRow};
pub use orbit::{
    log_norm_image, lower_estimate_delta, norm_ratio, orbit_norms, random_kernel_vector, spectral_radius_estimate,
    verify_norm_estimates, LowerEstimate, LowerEstimateRow, NormEstimateReport, OrbitReport, OrbitRow,
    SpectralRadiusEstimate, Z0_GRID,
};
pub use panel::{default_test_vectors, PanelEntry, PANEL};
pub use pseudo::{make_pseudo_orbit, PseudoMode, PseudoOrbit};
pub use shadow::{non_shadowing_witness, shadow_contraction, shadow_expansion, ShadowReport, WitnessReport};

/// Largest horizon accepted by the orbit-based experiments.
pub const MAX_HORIZON: usize = 10_000;

/// Relative tolerance for identifying points produced by two different
/// evaluation orders of the same affine maps.
pub const ROUTE_MERGE_TOL: f64 = 1e-8;
