//! Special functions: spherical Bessel/Neumann and Riccati–Bessel functions,
//! associated Legendre functions and spherical harmonics.

mod bessel;
mod harmonics;
mod legendre;

pub use bessel::{
    riccati_c, riccati_s, spherical_bessel_j, spherical_bessel_y, BesselLimits, L_MAX_DEFAULT,
    L_MAX_SUPPORTED, Z_MAX,
};
pub use harmonics::{
    lm_index, normalization, spherical_harmonic, HarmonicTable, SphereQuadrature,
    SphericalDirection,
};
pub use legendre::{legendre, legendre_table, legendre_theta_derivative_table, tri_index};
