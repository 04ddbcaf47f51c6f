use rayon::prelude::*;
use serde::Serialize;

use super::StarlikeDomain;
use crate::eigsearch::{
    find_real_eigenvalues, max_scan_step, DensityEstimate, EigenvalueRecord, DEFAULT_TOL,
};
use crate::error::{Error, Result};
use crate::specfun::SphericalDirection;

/// Two eigenvalues on different rays match when they agree to this
/// relative tolerance.
pub const MATCH_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct RayEigenReport {
    pub direction: SphericalDirection,
    pub r_hat: f64,
    /// `eigenvalues[l]` for `l = 0..=l_max`.
    pub eigenvalues: Vec<Vec<EigenvalueRecord>>,
    /// `l = 0` density on `(0, K]` with `K` shared by every ray.
    pub density: DensityEstimate,
}

#[derive(Debug, Clone, Serialize)]
pub struct RayScan {
    pub reports: Vec<RayEigenReport>,
    /// Eigenvalues (any `l`) of the first ray found on every other ray.
    pub intersection: Vec<f64>,
    /// `(max - min)/min` of the per-ray densities.
    pub density_spread: f64,
}

/// Run the eigenvalue scan along each ray, using the ray length as `R̂`.
pub fn per_ray_eigen_scan(
    domain: &StarlikeDomain,
    directions: &[SphericalDirection],
    l_max: usize,
    k_max: f64,
) -> Result<RayScan> {
    if directions.is_empty() {
        return Err(Error::Invalid("no directions given".into()));
    }
    let radii = directions
        .iter()
        .map(|d| domain.ray_radius(*d))
        .collect::<Result<Vec<f64>>>()?;
    let r_min = radii.iter().cloned().fold(f64::INFINITY, f64::min);
    let density_k = k_max.max(50.0 / r_min);

    let reports = directions
        .par_iter()
        .zip(&radii)
        .map(|(dir, &r_hat)| {
            let step = max_scan_step(r_hat) / 2.0;
            let eigenvalues = (0..=l_max)
                .map(|l| find_real_eigenvalues(l, r_hat, k_max, step, DEFAULT_TOL))
                .collect::<Result<Vec<_>>>()?;
            let count = if density_k == k_max {
                eigenvalues[0].len()
            } else {
                find_real_eigenvalues(0, r_hat, density_k, step, DEFAULT_TOL)?.len()
            };
            Ok(RayEigenReport {
                direction: *dir,
                r_hat,
                eigenvalues,
                density: DensityEstimate::from_count(count, density_k, r_hat),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let all: Vec<Vec<f64>> = reports
        .iter()
        .map(|r| {
            let mut ks: Vec<f64> = r.eigenvalues.iter().flatten().map(|e| e.k).collect();
            ks.sort_by(f64::total_cmp);
            ks
        })
        .collect();
    let matches = |ks: &[f64], k: f64| {
        let i = ks.partition_point(|&x| x < k * (1.0 - MATCH_TOL));
        i < ks.len() && (ks[i] - k).abs() <= MATCH_TOL * k
    };
    let mut intersection: Vec<f64> = all[0]
        .iter()
        .cloned()
        .filter(|&k| all[1..].iter().all(|ks| matches(ks, k)))
        .collect();
    intersection.dedup_by(|a, b| (*a - *b).abs() <= MATCH_TOL * *b);

    let densities: Vec<f64> = reports.iter().map(|r| r.density.density).collect();
    let d_min = densities.iter().cloned().fold(f64::INFINITY, f64::min);
    let d_max = densities.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(RayScan {
        reports,
        intersection,
        density_spread: (d_max - d_min) / d_min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_rays_agree() {
        let scan = per_ray_eigen_scan(
            &StarlikeDomain::ball(1.0).unwrap(),
            &SphericalDirection::axes(),
            0,
            12.0,
        )
        .unwrap();
        assert_eq!(scan.intersection.len(), 3);
        assert!((scan.intersection[0] - 4.493409457909064).abs() < 1e-10);
        assert!(scan.density_spread < 1e-12);
    }

    #[test]
    fn single_direction_keeps_everything() {
        let s = StarlikeDomain::spheroid(1.2, 8).unwrap();
        let d = [SphericalDirection::new(0.4, 1.0).unwrap()];
        let scan = per_ray_eigen_scan(&s, &d, 1, 12.0).unwrap();
        let n: usize = scan.reports[0].eigenvalues.iter().map(Vec::len).sum();
        assert_eq!(scan.intersection.len(), n);
    }
}
