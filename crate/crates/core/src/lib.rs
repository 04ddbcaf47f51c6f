//! Numerical laboratory for radial Helmholtz eigenproblems anchored at a
//! starlike boundary.
//!
//! * [`specfun`]: spherical Bessel, Riccati–Bessel, Legendre and spherical
//!   harmonic functions.
//! * [`radial`]: the two-way radial initial value problem and checks of its
//!   asymptotic estimates.
//! * [`eigsearch`]: zeros of the dispersion function on the real axis and
//!   argument-principle counts in the plane.
//! * [`entire`]: sector zero counts, zero density and the Lindelöf indicator
//!   for arbitrary entire-function evaluators.
//! * [`scatter`]: starlike domains, per-ray eigenvalue comparison, the
//!   overdetermined boundary residual, far-field synthesis and spherical
//!   harmonic re-expansion.
//! * [`cli`]: the batch front end behind the `schiffer-lab` binary.

pub mod cli;
pub mod contour;
pub mod eigsearch;
pub mod entire;
pub mod error;
pub mod ode;
pub mod quad;
pub mod radial;
pub mod scatter;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
