//! Numerical checks of the asymptotic estimates satisfied by radial solutions.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

use super::{solve_from_boundary, solve_ivp, Direction, RadialProblem};
use crate::error::{Error, Result};
use crate::quad::integrate_adaptive;
use crate::specfun::BesselLimits;

/// Lower truncation of the centrifugal integral in `K(ξ)` for `l ≠ 0`.
pub const XI_TRUNCATION: f64 = 1e-3;

/// Phase error per unit `|k|` tolerated from the integrator when the exact
/// deviation vanishes; the noise in `lhs·|k|` grows like `ε|k|²`.
pub const INTEGRATION_NOISE: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct PerturbationBoundRow {
    pub xi: f64,
    pub k_re: f64,
    pub k_im: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `ln K(ξ)`; `K` itself overflows for the truncated centrifugal integral.
    pub ln_k_bound: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PerturbationBoundReport {
    pub rows: Vec<PerturbationBoundRow>,
    /// `lhs ≤ rhs` at every sample.
    pub all_hold: bool,
    /// For every ξ, `max_k lhs·|k| ≤ 4 · max(lhs·|k| at the smallest |k|, ε|k|²_max)`
    /// with `ε` = [`INTEGRATION_NOISE`].
    pub rate_bounded: bool,
}

/// `ln K(ξ) = ∫_ξ^1 |l(l+1)|/t² + |p(t)| dt`, with the lower limit raised
/// to [`XI_TRUNCATION`] when `l(l+1) ≠ 0`.
pub fn ln_k_bound(problem: &RadialProblem, xi: f64) -> Result<f64> {
    let cent = (problem.l() * (problem.l() + 1.0)).abs();
    let lo = if cent != 0.0 {
        xi.max(XI_TRUNCATION)
    } else {
        xi
    };
    if lo >= 1.0 {
        return Ok(0.0);
    }
    let pot = problem.potential().cloned();
    let integrand = move |t: f64| {
        Ok(Complex64::new(
            cent / (t * t) + pot.as_ref().map_or(0.0, |p| p(t).abs()),
            0.0,
        ))
    };
    let v = integrate_adaptive(integrand, lo, 1.0, 8, 1e-10, 40)?;
    Ok(v.re)
}

/// Compare the solution of `-z'' + l(l+1)z/ξ² + p z = k² z`, `z(1) = -b`,
/// `z'(1) = a`, with its free approximation `-b cos k(1-ξ) - a sin k(1-ξ)/k`
/// against the bound `K(ξ)/|k| · exp(|Im k|(1-ξ))`.
///
/// `problem` supplies `l` and the potential; its anchor radius must be 1.
pub fn verify_perturbation_bound(
    problem: &RadialProblem,
    a: f64,
    b: f64,
    xi_grid: &[f64],
    k_samples: &[Complex64],
) -> Result<PerturbationBoundReport> {
    if problem.r_hat() != 1.0 {
        return Err(Error::Invalid(
            "the estimate is posed on [0, 1]; anchor radius must be 1".into(),
        ));
    }
    if xi_grid.is_empty() || xi_grid.iter().any(|x| !(*x > 0.0 && *x < 1.0)) {
        return Err(Error::Invalid("ξ samples must lie in (0, 1)".into()));
    }
    if k_samples.iter().any(|k| k.norm() < 1.0) {
        return Err(Error::Invalid("every |k| must be at least 1".into()));
    }
    let mut xis = xi_grid.to_vec();
    xis.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let xi_min = xis[0];
    let step = 1e-3;

    let mut bounds = Vec::with_capacity(xis.len());
    for xi in &xis {
        bounds.push(ln_k_bound(problem, *xi)?);
    }

    let mut rows = Vec::new();
    for k in k_samples {
        let p = problem.at_frequency(*k);
        let sol = solve_ivp(
            &p,
            Direction::Inward,
            1.0,
            Complex64::new(-b, 0.0),
            Complex64::new(a, 0.0),
            xi_min,
            step,
        )?;
        for (xi, kb) in xis.iter().zip(&bounds) {
            let (z, _) = sol.value_at(*xi)?;
            let s = 1.0 - xi;
            let free = -b * (k * s).cos() - a * (k * s).sin() / k;
            let lhs = (z - free).norm();
            let rhs = (kb + k.im.abs() * s).exp() / k.norm();
            rows.push(PerturbationBoundRow {
                xi: *xi,
                k_re: k.re,
                k_im: k.im,
                lhs,
                rhs,
                ln_k_bound: *kb,
                holds: lhs <= rhs,
            });
        }
    }

    let all_hold = rows.iter().all(|r| r.holds);
    let mut rate_bounded = true;
    if let Some(k_first) = k_samples
        .iter()
        .min_by(|x, y| x.norm().partial_cmp(&y.norm()).unwrap())
    {
        for xi in &xis {
            let scaled: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.xi == *xi)
                .map(|r| {
                    let kn = Complex64::new(r.k_re, r.k_im).norm();
                    (kn, r.lhs * kn)
                })
                .collect();
            let base = scaled
                .iter()
                .filter(|(kn, _)| *kn == k_first.norm())
                .map(|s| s.1)
                .fold(0.0, f64::max);
            let worst = scaled.iter().map(|s| s.1).fold(0.0, f64::max);
            let k_max = scaled.iter().map(|s| s.0).fold(0.0, f64::max);
            if worst > 4.0 * base.max(INTEGRATION_NOISE * k_max * k_max) {
                rate_bounded = false;
            }
        }
    }
    Ok(PerturbationBoundReport {
        rows,
        all_hold,
        rate_bounded,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseAsymptoticsRow {
    pub k_re: f64,
    pub k_im: f64,
    pub xi: f64,
    /// `|S_l(kξ) - sin(kξ - lπ/2)| e^{-|Im k|ξ}`, i.e. `|v_l - lead|·|k|^{l+1}` damped.
    pub deviation_value: f64,
    /// `|S_l'(kξ) - cos(kξ - lπ/2)| e^{-|Im k|ξ}`.
    pub deviation_derivative: f64,
    /// `|kξ|` times the larger of the two deviations.
    pub c_obs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseAsymptoticsReport {
    pub l: usize,
    pub rows: Vec<PhaseAsymptoticsRow>,
    pub c_obs: f64,
    /// Ceiling applied to `c_obs`: `max(l(l+1), 1)`, twice the first Hankel
    /// correction coefficient `l(l+1)/2`.
    pub c_ceiling: f64,
    pub bounded: bool,
    /// For each ξ, the unscaled value deviation is non-increasing in `|k|`.
    pub deviation_non_increasing: bool,
}

/// Observed constants in `|v_l - sin(kξ - lπ/2)/k^{l+1}| ≤ C|k|^{-(l+1)} e^{|Im k|ξ}/|kξ|`
/// and the companion bound for `v_l'`, with `v_l(ξ) = S_l(kξ)/k^{l+1}`.
pub fn verify_phase_asymptotics(
    l: usize,
    k_samples: &[Complex64],
    xi_samples: &[f64],
) -> Result<PhaseAsymptoticsReport> {
    if k_samples.iter().any(|k| k.re < 0.0) || xi_samples.iter().any(|x| !(*x > 0.0)) {
        return Err(Error::Invalid("need Re k >= 0 and ξ > 0".into()));
    }
    let limits = BesselLimits::default();
    let phase = l as f64 * FRAC_PI_2;
    let mut rows = Vec::new();
    for xi in xi_samples {
        for k in k_samples {
            let x = k * xi;
            let (s, ds) = limits.riccati_s(l, x)?;
            let damp = (-k.im.abs() * xi).exp();
            let dv = (s - (x - phase).sin()).norm() * damp;
            let dd = (ds - (x - phase).cos()).norm() * damp;
            rows.push(PhaseAsymptoticsRow {
                k_re: k.re,
                k_im: k.im,
                xi: *xi,
                deviation_value: dv,
                deviation_derivative: dd,
                c_obs: x.norm() * dv.max(dd),
            });
        }
    }
    let c_obs = rows.iter().map(|r| r.c_obs).fold(0.0, f64::max);
    let c_ceiling = ((l * (l + 1)) as f64).max(1.0);
    let mut non_increasing = true;
    for xi in xi_samples {
        let mut series: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.xi == *xi)
            .map(|r| (Complex64::new(r.k_re, r.k_im).norm(), r.deviation_value))
            .collect();
        series.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        if series
            .windows(2)
            .any(|w| w[1].1 > w[0].1 * (1.0 + 1e-9) + 1e-14)
        {
            non_increasing = false;
        }
    }
    Ok(PhaseAsymptoticsReport {
        l,
        rows,
        c_obs,
        c_ceiling,
        bounded: c_obs <= c_ceiling,
        deviation_non_increasing: non_increasing,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ShiftedRadiusRow {
    pub l: usize,
    pub xi: f64,
    /// `k₀^l y_l(ξ_l; k₀)` from the Riccati–Bessel closed form.
    pub s_closed_form: f64,
    /// The same quantity from outward numerical integration.
    pub s_integrated: f64,
    /// `|s_l - R̂| · ξ_l`.
    pub scaled_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShiftedRadiusReport {
    pub k0: f64,
    pub r_hat: f64,
    pub rows: Vec<ShiftedRadiusRow>,
    /// Common constant every scaled deviation must stay below:
    /// `2 · max(c_{l_min}, R̂/k₀)`.
    pub common_constant: f64,
    pub bounded: bool,
}

/// Evaluate `s_l = k₀^l y_l(ξ_l; k₀)` at `ξ_l = R̂ + lπ/(2k₀)` for the
/// solution with `y(R̂) = R̂`, `y'(R̂) = 1`, and test whether
/// `|s_l - R̂|·ξ_l` stays below one common constant across `l`.
pub fn verify_shifted_radius(
    l_values: &[usize],
    k0: f64,
    r_hat: f64,
) -> Result<ShiftedRadiusReport> {
    if !(k0 >= 1.0) {
        return Err(Error::Invalid("k0 must be at least 1".into()));
    }
    if l_values.is_empty() {
        return Err(Error::Invalid("need at least one order".into()));
    }
    let k = Complex64::new(k0, 0.0);
    let mut rows = Vec::new();
    for &l in l_values {
        let xi = r_hat + l as f64 * FRAC_PI_2 / k0;
        let problem = RadialProblem::free(l, k, r_hat)?;
        let coeffs = problem
            .closed_form_coefficients(r_hat, Complex64::new(r_hat, 0.0), Complex64::new(1.0, 0.0))?
            .ok_or(Error::SingularSystem)?;
        let (y_cf, _) = if xi == r_hat {
            (Complex64::new(r_hat, 0.0), Complex64::new(1.0, 0.0))
        } else {
            problem.closed_form_value(coeffs, xi)?
        };
        let y_num = if xi > r_hat {
            let sol = solve_from_boundary(&problem, Direction::Outward, xi, (xi - r_hat) / 64.0)?;
            *sol.y.last().unwrap()
        } else {
            Complex64::new(r_hat, 0.0)
        };
        let s_cf = scale_by_power(y_cf.re, k0, l);
        let s_num = scale_by_power(y_num.re, k0, l);
        rows.push(ShiftedRadiusRow {
            l,
            xi,
            s_closed_form: s_cf,
            s_integrated: s_num,
            scaled_deviation: (s_cf - r_hat).abs() * xi,
        });
    }
    let first = rows.iter().min_by_key(|r| r.l).unwrap().scaled_deviation;
    let common_constant = 2.0 * first.max(r_hat / k0);
    let bounded = rows.iter().all(|r| r.scaled_deviation <= common_constant);
    Ok(ShiftedRadiusReport {
        k0,
        r_hat,
        rows,
        common_constant,
        bounded,
    })
}

/// `k^l · y`, through logarithms once the power would be large.
fn scale_by_power(y: f64, k: f64, l: usize) -> f64 {
    if l <= 30 {
        y * k.powi(l as i32)
    } else if y == 0.0 {
        0.0
    } else {
        y.signum() * (l as f64 * k.ln() + y.abs().ln()).exp()
    }
}
