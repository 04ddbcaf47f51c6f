//! Starlike domains and the boundary-value experiments built on them.

mod domain;
mod farfield;
mod rays;
mod residual;

pub use domain::{real_harmonic, StarlikeDomain};
pub use farfield::{far_field_from_coeffs, rellich_expand, FarFieldPattern, RellichExpansion};
pub use rays::{per_ray_eigen_scan, RayEigenReport, RayScan, MATCH_TOL};
pub use residual::{
    ball_eigenfunction, default_collocation, fibonacci_directions, overdetermined_residual,
    residual_convergence, residual_scan, tan_root, BallEigenfunction, OverdeterminedFit,
    DEFAULT_L_TRIAL, RANK_WARNING_CONDITION,
};
