use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use super::StarlikeDomain;
use crate::error::{Error, Result};
use crate::specfun::{lm_index, BesselLimits, HarmonicTable, SphericalDirection};

pub const DEFAULT_L_TRIAL: usize = 8;
/// Condition number of the normal equations above which a fit is flagged.
pub const RANK_WARNING_CONDITION: f64 = 1e12;

/// Collocation count used when none is given: twice the required minimum.
pub fn default_collocation(l_trial: usize) -> usize {
    4 * (l_trial + 1) * (l_trial + 1)
}

/// Fibonacci lattice of `n` directions.
pub fn fibonacci_directions(n: usize) -> Vec<SphericalDirection> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            SphericalDirection {
                theta: z.acos(),
                phi: (golden * i as f64).rem_euclid(2.0 * PI),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverdeterminedFit {
    pub k: f64,
    pub l_trial: usize,
    pub n_collocation: usize,
    /// RMS of the stacked Dirichlet and scaled Neumann misfits at the optimum.
    pub residual: f64,
    /// Condition number of the column-equilibrated normal equations.
    pub normal_condition: f64,
    pub rank_warning: bool,
}

/// Least-squares fit of `u = Σ c_lm j_l(kr) Y_l^m` to `u = 1` and
/// `∂u/∂ν = 0` at Fibonacci points of the boundary. Neumann rows are
/// divided by `k`.
pub fn overdetermined_residual(
    domain: &StarlikeDomain,
    k: f64,
    l_trial: usize,
    n_collocation: usize,
) -> Result<OverdeterminedFit> {
    if !(k > 0.0) {
        return Err(Error::Invalid(format!(
            "frequency must be positive, got {k}"
        )));
    }
    let ncol = (l_trial + 1) * (l_trial + 1);
    if n_collocation < 2 * ncol {
        return Err(Error::Invalid(format!(
            "need at least {} collocation points, got {n_collocation}",
            2 * ncol
        )));
    }
    let limits = BesselLimits::new(l_trial + 1)?;
    let kc = Complex64::new(k, 0.0);
    let mut a = DMatrix::<Complex64>::zeros(2 * n_collocation, ncol);
    let mut b = DVector::<Complex64>::zeros(2 * n_collocation);
    for (i, dir) in fibonacci_directions(n_collocation).into_iter().enumerate() {
        let rho = domain.ray_radius(dir)?;
        let normal = domain.boundary_normal(dir)?;
        let [er, et, ep] = dir.frame();
        let dot = |v: [f64; 3]| normal[0] * v[0] + normal[1] * v[1] + normal[2] * v[2];
        let (nr, nt, np) = (dot(er), dot(et), dot(ep));
        let table = HarmonicTable::new(l_trial, dir, true);
        let d_theta = table.d_theta.as_ref().expect("derivative table");
        let z = kc * rho;
        let j = limits.j_seq(l_trial + 1, z)?;
        let sin_t = dir.theta.sin();
        for l in 0..=l_trial {
            let dj = if l == 0 {
                -j[1]
            } else {
                j[l - 1] - (l as f64 + 1.0) / z * j[l]
            };
            for m in -(l as i64)..=l as i64 {
                let c = lm_index(l, m);
                let y = table.values[c];
                a[(i, c)] = j[l] * y;
                let g_r = kc * dj * y;
                let g_t = j[l] / rho * d_theta[c];
                let g_p = j[l] / (rho * sin_t) * Complex64::new(0.0, m as f64) * y;
                a[(n_collocation + i, c)] = (g_r * nr + g_t * nt + g_p * np) / k;
            }
        }
        b[i] = Complex64::new(1.0, 0.0);
    }

    for mut col in a.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= Complex64::new(norm, 0.0);
        }
    }
    // Applying Qᴴ leaves the least-squares misfit in the trailing entries;
    // R carries the singular values of the equilibrated matrix.
    let qr = a.qr();
    let mut qb = b;
    qr.q_tr_mul(&mut qb);
    let s = qr.r().singular_values();
    let s_max = s.max();
    let s_min = s.min();
    let residual = qb.rows(ncol, qb.len() - ncol).norm() / ((2 * n_collocation) as f64).sqrt();
    let normal_condition = if s_min > 0.0 {
        (s_max / s_min).powi(2)
    } else {
        f64::INFINITY
    };
    Ok(OverdeterminedFit {
        k,
        l_trial,
        n_collocation,
        residual,
        normal_condition,
        rank_warning: normal_condition > RANK_WARNING_CONDITION,
    })
}

/// [`overdetermined_residual`] over a list of frequencies, in parallel.
pub fn residual_scan(
    domain: &StarlikeDomain,
    ks: &[f64],
    l_trial: usize,
    n_collocation: usize,
) -> Result<Vec<OverdeterminedFit>> {
    ks.par_iter()
        .map(|&k| overdetermined_residual(domain, k, l_trial, n_collocation))
        .collect()
}

/// Residual at one frequency for each trial degree, with the default collocation count.
pub fn residual_convergence(
    domain: &StarlikeDomain,
    k: f64,
    l_trials: &[usize],
) -> Result<Vec<OverdeterminedFit>> {
    l_trials
        .iter()
        .map(|&l| overdetermined_residual(domain, k, l, default_collocation(l)))
        .collect()
}

/// `n`-th positive root of `tan x = x`, bracketed in `(nπ, nπ + π/2)`.
pub fn tan_root(n: usize) -> f64 {
    let g = |x: f64| x.sin() - x * x.cos();
    let mut lo = n as f64 * PI;
    let mut hi = lo + PI / 2.0;
    let g_lo = g(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid).signum() == g_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if g(lo).abs() <= g(hi).abs() {
        lo
    } else {
        hi
    }
}

/// Radial Neumann eigenfunction `u(r) = j_0(kr)/j_0(kR)` of the ball of radius `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallEigenfunction {
    pub radius: f64,
    pub n: usize,
    pub k: f64,
}

impl BallEigenfunction {
    fn j0(x: f64) -> f64 {
        if x.abs() < 1e-8 {
            1.0 - x * x / 6.0
        } else {
            x.sin() / x
        }
    }

    fn j1(x: f64) -> f64 {
        if x.abs() < 1e-4 {
            x / 3.0 - x.powi(3) / 30.0
        } else {
            (x.sin() - x * x.cos()) / (x * x)
        }
    }

    pub fn value(&self, r: f64) -> f64 {
        Self::j0(self.k * r) / Self::j0(self.k * self.radius)
    }

    pub fn derivative(&self, r: f64) -> f64 {
        -self.k * Self::j1(self.k * r) / Self::j0(self.k * self.radius)
    }
}

pub fn ball_eigenfunction(radius: f64, n: usize) -> Result<BallEigenfunction> {
    if !(radius > 0.0) {
        return Err(Error::NonPositiveRadius(radius));
    }
    if n == 0 || n > 50 {
        return Err(Error::Invalid(format!(
            "mode index must be in 1..=50, got {n}"
        )));
    }
    Ok(BallEigenfunction {
        radius,
        n,
        k: tan_root(n) / radius,
    })
}
