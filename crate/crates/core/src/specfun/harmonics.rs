//! Spherical harmonics `Y_l^m(θ, φ) = N_lm P_l^{|m|}(cos θ) e^{imφ}` and the
//! tensor quadrature rule used for all sphere integrals.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::legendre::{legendre_table, legendre_theta_derivative_table, tri_index};
use crate::error::{Error, Result};
use crate::quad::gauss_legendre;

/// A point on the unit sphere: polar angle `theta ∈ [0, π]`, azimuth `phi ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalDirection {
    pub theta: f64,
    pub phi: f64,
}

impl SphericalDirection {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !theta.is_finite() {
            return Err(Error::Domain(format!("polar angle {theta} outside [0, π]")));
        }
        if !phi.is_finite() {
            return Err(Error::Domain("azimuth is not finite".into()));
        }
        Ok(Self {
            theta,
            phi: phi.rem_euclid(2.0 * PI),
        })
    }

    pub fn from_unit_vector(v: [f64; 3]) -> Self {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let theta = (v[2] / n).clamp(-1.0, 1.0).acos();
        let phi = v[1].atan2(v[0]).rem_euclid(2.0 * PI);
        Self { theta, phi }
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Unit vectors `(r̂, θ̂, φ̂)`.
    pub fn frame(&self) -> [[f64; 3]; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [
            [st * cp, st * sp, ct],
            [ct * cp, ct * sp, -st],
            [-sp, cp, 0.0],
        ]
    }

    /// The six coordinate axis directions ±x, ±y, ±z.
    pub fn axes() -> Vec<Self> {
        vec![
            Self {
                theta: PI / 2.0,
                phi: 0.0,
            },
            Self {
                theta: PI / 2.0,
                phi: PI,
            },
            Self {
                theta: PI / 2.0,
                phi: PI / 2.0,
            },
            Self {
                theta: PI / 2.0,
                phi: 1.5 * PI,
            },
            Self {
                theta: 0.0,
                phi: 0.0,
            },
            Self {
                theta: PI,
                phi: 0.0,
            },
        ]
    }
}

/// Position of `(l, m)`, `-l ≤ m ≤ l`, in a full harmonic table.
#[inline]
pub fn lm_index(l: usize, m: i64) -> usize {
    ((l * l + l) as i64 + m) as usize
}

#[inline]
fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `sqrt((2l+1)/(4π) · (l-m)!/(l+m)!)` for `m ≥ 0`.
pub fn normalization(l: usize, m: usize) -> f64 {
    let ln =
        ((2 * l + 1) as f64).ln() - (4.0 * PI).ln() + ln_factorial(l - m) - ln_factorial(l + m);
    (0.5 * ln).exp()
}

/// `Y_l^m(dir)`.
pub fn spherical_harmonic(l: usize, m: i64, dir: SphericalDirection) -> Result<Complex64> {
    let am = m.unsigned_abs() as usize;
    if am > l {
        return Err(Error::Domain(format!("|m| = {am} exceeds l = {l}")));
    }
    let p = legendre_table(l, dir.theta.cos())[tri_index(l, am)];
    Ok(Complex64::from_polar(
        normalization(l, am) * p,
        m as f64 * dir.phi,
    ))
}

/// Every `Y_l^m` with `l ≤ l_max` at one direction, optionally with `∂Y/∂θ`.
#[derive(Debug, Clone)]
pub struct HarmonicTable {
    pub l_max: usize,
    pub values: Vec<Complex64>,
    pub d_theta: Option<Vec<Complex64>>,
}

impl HarmonicTable {
    pub fn new(l_max: usize, dir: SphericalDirection, with_derivative: bool) -> Self {
        let n = (l_max + 1) * (l_max + 1);
        let p = legendre_table(l_max, dir.theta.cos());
        let dp = with_derivative.then(|| legendre_theta_derivative_table(l_max, &p));
        let mut values = vec![Complex64::new(0.0, 0.0); n];
        let mut d_theta = with_derivative.then(|| vec![Complex64::new(0.0, 0.0); n]);
        let mut ln_fact = vec![0.0; 2 * l_max + 2];
        for i in 2..ln_fact.len() {
            ln_fact[i] = ln_fact[i - 1] + (i as f64).ln();
        }
        let ln_4pi = (4.0 * PI).ln();
        let phases: Vec<Complex64> = (0..=l_max)
            .map(|m| Complex64::from_polar(1.0, m as f64 * dir.phi))
            .collect();
        for l in 0..=l_max {
            for am in 0..=l {
                let norm = (0.5
                    * (((2 * l + 1) as f64).ln() - ln_4pi + ln_fact[l - am] - ln_fact[l + am]))
                    .exp();
                let v = phases[am] * (norm * p[tri_index(l, am)]);
                values[lm_index(l, am as i64)] = v;
                values[lm_index(l, -(am as i64))] = v.conj();
                if let (Some(d), Some(dp)) = (d_theta.as_mut(), dp.as_ref()) {
                    let dv = phases[am] * (norm * dp[tri_index(l, am)]);
                    d[lm_index(l, am as i64)] = dv;
                    d[lm_index(l, -(am as i64))] = dv.conj();
                }
            }
        }
        Self {
            l_max,
            values,
            d_theta,
        }
    }

    pub fn get(&self, l: usize, m: i64) -> Complex64 {
        self.values[lm_index(l, m)]
    }
}

/// Tensor product rule on S²: Gauss–Legendre in `cos θ` times the uniform
/// trapezoid rule in `φ`.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    pub n_theta: usize,
    pub n_phi: usize,
    pub directions: Vec<SphericalDirection>,
    pub weights: Vec<f64>,
}

impl Default for SphereQuadrature {
    fn default() -> Self {
        Self::new(64, 128)
    }
}

impl SphereQuadrature {
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        let (t, w) = gauss_legendre(n_theta);
        let dphi = 2.0 * PI / n_phi as f64;
        let mut directions = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        for (ti, wi) in t.iter().zip(&w) {
            let theta = ti.clamp(-1.0, 1.0).acos();
            for j in 0..n_phi {
                directions.push(SphericalDirection {
                    theta,
                    phi: j as f64 * dphi,
                });
                weights.push(wi * dphi);
            }
        }
        Self {
            n_theta,
            n_phi,
            directions,
            weights,
        }
    }

    /// Highest degree `L` such that products of two degree-`L` harmonics are
    /// integrated exactly.
    pub fn resolvable_degree(&self) -> usize {
        (2 * self.n_theta - 1).min(self.n_phi - 1) / 2
    }

    pub fn integrate<F: FnMut(SphericalDirection) -> Complex64>(&self, mut f: F) -> Complex64 {
        self.directions
            .iter()
            .zip(&self.weights)
            .map(|(d, w)| f(*d) * *w)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_axial_modes() {
        let d = SphericalDirection::new(1.1, 2.3).unwrap();
        assert!((spherical_harmonic(0, 0, d).unwrap().re - 0.282_094_791_77).abs() < 1e-10);
        let pole = SphericalDirection::new(0.0, 0.0).unwrap();
        assert!((spherical_harmonic(1, 0, pole).unwrap().re - 0.488_602_511_90).abs() < 1e-10);
    }

    #[test]
    fn negative_order_is_conjugate() {
        let d = SphericalDirection::new(0.7, 1.3).unwrap();
        let a = spherical_harmonic(3, 2, d).unwrap();
        let b = spherical_harmonic(3, -2, d).unwrap();
        assert!((a.conj() - b).norm() < 1e-15);
    }

    #[test]
    fn y21_unit_norm() {
        let q = SphereQuadrature::default();
        let v =
            q.integrate(|d| Complex64::new(spherical_harmonic(2, 1, d).unwrap().norm_sqr(), 0.0));
        assert!((v.re - 1.0).abs() < 1e-8);
    }

    #[test]
    fn table_matches_pointwise() {
        let d = SphericalDirection::new(2.0, 0.4).unwrap();
        let t = HarmonicTable::new(6, d, false);
        for l in 0..=6usize {
            for m in -(l as i64)..=(l as i64) {
                assert!((t.get(l, m) - spherical_harmonic(l, m, d).unwrap()).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn bad_direction_rejected() {
        assert!(SphericalDirection::new(4.0, 0.0).is_err());
        assert!(spherical_harmonic(1, 2, SphericalDirection::new(1.0, 0.0).unwrap()).is_err());
    }
}
