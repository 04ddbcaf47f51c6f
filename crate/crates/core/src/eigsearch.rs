//! Real eigenvalues of the two-way radial problem and their counting
//! statistics.
//!
//! The dispersion function is the coefficient `B(k)` of the irregular
//! component in `y = A S_l + B C_l` for the data `y(R̂) = R̂`, `y'(R̂) = 1`:
//!
//! ```text
//! B(k) = R̂ S_l'(kR̂) - S_l(kR̂)/k = kR̂² j_l'(kR̂)
//! ```
//!
//! It is entire and of parity `(-1)^l` in `k`, vanishes at `k = 0`, and has
//! the same nonzero zeros as `j_l'(kR̂)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use crate::contour::{winding_number, Contour, WindingOptions};
use crate::entire::EntireFunction;
use crate::error::{Error, Result};
use crate::specfun::BesselLimits;

/// Default bisection acceptance on `|B(k)|`.
pub const DEFAULT_TOL: f64 = 1e-10;

pub fn dispersion(l: usize, r_hat: f64, k: Complex64) -> Result<Complex64> {
    if !(r_hat > 0.0) {
        return Err(Error::NonPositiveRadius(r_hat));
    }
    let x = k * r_hat;
    if x.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if l == 0 {
        return Ok(r_hat * x.cos() - x.sin() / k);
    }
    let limits = BesselLimits::new(l.max(crate::specfun::L_MAX_DEFAULT))?;
    let (_, dj) = limits.j_with_derivative(l, x)?;
    Ok(x * r_hat * dj)
}

/// [`dispersion`] as an [`EntireFunction`]; evaluation errors map to NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dispersion {
    pub l: usize,
    pub r_hat: f64,
}

impl EntireFunction for Dispersion {
    fn eval(&self, k: Complex64) -> Complex64 {
        dispersion(self.l, self.r_hat, k).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }
}

fn real_dispersion(l: usize, r_hat: f64, k: f64) -> Result<f64> {
    Ok(dispersion(l, r_hat, Complex64::new(k, 0.0))?.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenvalueRecord {
    pub l: usize,
    pub k: f64,
    pub residual: f64,
    pub bracket: (f64, f64),
    /// Set when a neighbouring root lies within `10·tol`.
    pub near_coincident: bool,
}

/// Largest scan step that cannot skip a sign change: a quarter of the
/// asymptotic zero spacing `π/R̂`.
pub fn max_scan_step(r_hat: f64) -> f64 {
    PI / (4.0 * r_hat)
}

/// Sign-change roots of `B` on `(scan_step, k_max]`, refined by bisection
/// until the bracket cannot shrink further.
pub fn find_real_eigenvalues(
    l: usize,
    r_hat: f64,
    k_max: f64,
    scan_step: f64,
    tol: f64,
) -> Result<Vec<EigenvalueRecord>> {
    if !(r_hat > 0.0) {
        return Err(Error::NonPositiveRadius(r_hat));
    }
    if !(k_max > 0.0) || !(tol > 0.0) {
        return Err(Error::Invalid(format!(
            "need k_max > 0 and tol > 0, got {k_max}, {tol}"
        )));
    }
    if !(scan_step > 0.0) || scan_step > max_scan_step(r_hat) * (1.0 + 1e-12) {
        return Err(Error::Invalid(format!(
            "scan step {scan_step} exceeds π/(4R̂) = {}",
            max_scan_step(r_hat)
        )));
    }
    let n = (k_max / scan_step).floor() as usize;
    let mut grid: Vec<f64> = (1..=n).map(|i| i as f64 * scan_step).collect();
    if grid.last().map_or(true, |&g| g < k_max) {
        grid.push(k_max);
    }
    if grid[0] > k_max {
        return Ok(Vec::new());
    }
    let values = grid
        .par_iter()
        .map(|&k| real_dispersion(l, r_hat, k))
        .collect::<Result<Vec<f64>>>()?;

    let mut brackets = Vec::new();
    for i in 0..grid.len() {
        if values[i] == 0.0 {
            brackets.push((grid[i], grid[i]));
        } else if i + 1 < grid.len()
            && values[i + 1] != 0.0
            && values[i].signum() != values[i + 1].signum()
        {
            brackets.push((grid[i], grid[i + 1]));
        }
    }
    let mut records = brackets
        .par_iter()
        .map(|&(lo, hi)| {
            let k = bisect(l, r_hat, lo, hi)?;
            let residual = real_dispersion(l, r_hat, k)?.abs();
            if residual > tol {
                return Err(Error::RootNotConverged { lo, hi });
            }
            Ok(EigenvalueRecord {
                l,
                k,
                residual,
                bracket: (lo, hi),
                near_coincident: false,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| a.k.total_cmp(&b.k));
    for i in 1..records.len() {
        if records[i].k - records[i - 1].k < 10.0 * tol {
            records[i].near_coincident = true;
            records[i - 1].near_coincident = true;
        }
    }
    Ok(records)
}

fn bisect(l: usize, r_hat: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    if lo == hi {
        return Ok(lo);
    }
    let mut f_lo = real_dispersion(l, r_hat, lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = real_dispersion(l, r_hat, mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let (a, b) = (
        real_dispersion(l, r_hat, lo)?.abs(),
        real_dispersion(l, r_hat, hi)?.abs(),
    );
    Ok(if a <= b { lo } else { hi })
}

/// Closed rectangle `[re_min, re_max] × [im_min, im_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rect {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        if !(re_min < re_max && im_min < im_max) {
            return Err(Error::Invalid("degenerate rectangle".into()));
        }
        Ok(Self {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }
}

/// Zeros of `f` inside `rect` by the argument principle. `quad_nodes`
/// boundary samples per side are checked for a near-zero before integrating.
pub fn count_zeros_argument_principle<F: EntireFunction + ?Sized>(
    f: &F,
    rect: Rect,
    quad_nodes: usize,
) -> Result<usize> {
    let contour = Contour::rectangle(rect.re_min, rect.re_max, rect.im_min, rect.im_max);
    let opts = WindingOptions {
        quad_nodes,
        ..Default::default()
    };
    let n = winding_number(f, &contour, &opts)?;
    usize::try_from(n).map_err(|_| Error::QuadratureFailure(n as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityEstimate {
    pub count: usize,
    #[serde(rename = "K")]
    pub k_max: f64,
    pub density: f64,
    pub target: f64,
    pub relative_gap: f64,
}

/// Zero count on `(0, K]` against the asymptotic density `R̂/π`.
pub fn density_estimate(l: usize, r_hat: f64, k_max: f64) -> Result<DensityEstimate> {
    if !(r_hat > 0.0) {
        return Err(Error::NonPositiveRadius(r_hat));
    }
    if !(k_max >= 50.0 / r_hat) {
        return Err(Error::Invalid(format!(
            "K = {k_max} is below 50/R̂ = {}",
            50.0 / r_hat
        )));
    }
    let roots = find_real_eigenvalues(l, r_hat, k_max, max_scan_step(r_hat) / 2.0, DEFAULT_TOL)?;
    Ok(DensityEstimate::from_count(roots.len(), k_max, r_hat))
}

impl DensityEstimate {
    pub fn from_count(count: usize, k_max: f64, r_hat: f64) -> Self {
        let density = count as f64 / k_max;
        let target = r_hat / PI;
        Self {
            count,
            k_max,
            density,
            target,
            relative_gap: (density - target).abs() / target,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TAN_ROOTS: [f64; 3] = [4.493409457909064, 7.725251836937707, 10.904121659428899];

    #[test]
    fn closed_form_l0() {
        let d = dispersion(0, 1.0, Complex64::new(1.0, 0.0)).unwrap();
        assert!((d.re - (1f64.cos() - 1f64.sin())).abs() < 1e-15);
        assert!(
            dispersion(0, 1.0, Complex64::new(TAN_ROOTS[0], 0.0))
                .unwrap()
                .norm()
                < 1e-10
        );
    }

    #[test]
    fn general_l_matches_coefficient_formula() {
        let limits = BesselLimits::new(20).unwrap();
        for l in 0..8 {
            for k in [0.7, 3.1, 9.4] {
                let kc = Complex64::new(k, 0.3);
                let x = kc * 1.3;
                let (s, ds) = limits.riccati_s(l, x).unwrap();
                let b = 1.3 * ds - s / kc;
                assert!((dispersion(l, 1.3, kc).unwrap() - b).norm() < 1e-12 * (1.0 + b.norm()));
            }
        }
    }

    #[test]
    fn tan_roots() {
        let r = find_real_eigenvalues(0, 1.0, 12.0, max_scan_step(1.0), 1e-10).unwrap();
        let ks: Vec<f64> = r.iter().map(|e| e.k).collect();
        assert_eq!(ks.len(), 3);
        for (a, b) in ks.iter().zip(TAN_ROOTS) {
            assert!((a - b).abs() < 1e-12);
        }
        let r = find_real_eigenvalues(0, 2.0, 6.0, max_scan_step(2.0), 1e-10).unwrap();
        for (a, b) in r.iter().zip(TAN_ROOTS) {
            assert!((a.k - b / 2.0).abs() < 1e-12);
        }
        assert!(find_real_eigenvalues(0, 1.0, 2.0, 0.5, 1e-10)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn brackets_change_sign() {
        for rec in find_real_eigenvalues(3, 1.0, 30.0, 0.5, 1e-10).unwrap() {
            let a = real_dispersion(3, 1.0, rec.bracket.0).unwrap();
            let b = real_dispersion(3, 1.0, rec.bracket.1).unwrap();
            assert!(a * b <= 0.0);
            assert!(rec.residual <= 1e-10);
        }
    }

    #[test]
    fn rejects_coarse_scan() {
        assert!(find_real_eigenvalues(0, 1.0, 12.0, 1.0, 1e-10).is_err());
        assert!(density_estimate(0, 1.0, 40.0).is_err());
    }

    #[test]
    fn argument_principle_examples() {
        let sin = |z: Complex64| z.sin();
        assert_eq!(
            count_zeros_argument_principle(&sin, Rect::new(0.5, 10.0, -1.0, 1.0).unwrap(), 64)
                .unwrap(),
            3
        );
        let d = Dispersion { l: 0, r_hat: 1.0 };
        assert_eq!(
            count_zeros_argument_principle(&d, Rect::new(0.5, 12.0, -2.0, 2.0).unwrap(), 64)
                .unwrap(),
            3
        );
        let q = |z: Complex64| z * z + 1.0;
        assert_eq!(
            count_zeros_argument_principle(&q, Rect::new(-2.0, 2.0, 0.0, 2.0).unwrap(), 64)
                .unwrap(),
            1
        );
    }

    #[test]
    fn density_examples() {
        let d = density_estimate(0, 1.0, 200.0).unwrap();
        assert_eq!(d.count, 63);
        assert!(d.relative_gap <= 0.02);
        let d = density_estimate(0, 2.0, 100.0).unwrap();
        assert!(d.relative_gap <= 0.02);
        // The l = 5 scan finds 61 roots; the phase shift lπ/2 costs two zeros at K = 200.
        assert_eq!(density_estimate(5, 1.0, 200.0).unwrap().count, 61);
    }
}
