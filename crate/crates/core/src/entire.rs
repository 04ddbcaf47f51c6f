//! Zero counting in sectors, zero density and the Lindelöf indicator of
//! entire functions of order one.
//!
//! Counts exclude a disc of radius [`SectorOptions::inner_radius`] around the
//! origin: sector contours are annular, so zeros at `k = 0` never enter.

use num_complex::Complex64;
use serde::Serialize;

use crate::contour::{winding_number, Contour, WindingOptions};
use crate::eigsearch::dispersion;
use crate::error::{Error, Result};
use crate::radial::{solve_from_boundary, Direction, RadialProblem};

/// A pure evaluator of an entire function.
pub trait EntireFunction: Sync {
    fn eval(&self, z: Complex64) -> Complex64;

    /// `ln|f(z)|`. Override when `f` can overflow and a scaled evaluation exists.
    fn ln_abs(&self, z: Complex64) -> f64 {
        self.eval(z).norm().ln()
    }
}

impl<F> EntireFunction for F
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    fn eval(&self, z: Complex64) -> Complex64 {
        self(z)
    }
}

/// Number of zeros in `{re^{iφ} : inner ≤ ρ ≤ r, α ≤ φ ≤ β}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectorCount {
    pub alpha: f64,
    pub beta: f64,
    pub r: f64,
    pub count: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct SectorOptions {
    pub inner_radius: f64,
    pub winding: WindingOptions,
    /// Angular nudge applied to both rays when a zero sits on the contour.
    pub ray_nudge: f64,
}

impl Default for SectorOptions {
    fn default() -> Self {
        Self {
            inner_radius: 0.5,
            winding: WindingOptions::default(),
            ray_nudge: 1e-3,
        }
    }
}

pub fn zero_count_sector<F: EntireFunction + ?Sized>(
    f: &F,
    alpha: f64,
    beta: f64,
    r: f64,
) -> Result<SectorCount> {
    zero_count_sector_with(f, alpha, beta, r, &SectorOptions::default())
}

pub fn zero_count_sector_with<F: EntireFunction + ?Sized>(
    f: &F,
    alpha: f64,
    beta: f64,
    r: f64,
    opts: &SectorOptions,
) -> Result<SectorCount> {
    if !(alpha < beta) {
        return Err(Error::Invalid(format!(
            "sector needs alpha < beta, got [{alpha}, {beta}]"
        )));
    }
    if !(r > opts.inner_radius) {
        return Err(Error::Invalid(format!(
            "radius {r} must exceed the excluded radius {}",
            opts.inner_radius
        )));
    }
    let mut winding = opts.winding;
    // Resolution scales with the arc length so long contours stay sampled.
    winding.quad_nodes = winding
        .quad_nodes
        .max((4.0 * r * (beta - alpha)) as usize)
        .max((4.0 * r) as usize);
    let mut tries = [
        (alpha, beta),
        (alpha - opts.ray_nudge, beta + opts.ray_nudge),
    ]
    .into_iter();
    loop {
        let (a, b) = tries.next().unwrap();
        match winding_number(
            f,
            &Contour::annular_sector(a, b, opts.inner_radius, r),
            &winding,
        ) {
            Ok(n) => {
                return Ok(SectorCount {
                    alpha: a,
                    beta: b,
                    r,
                    count: n.max(0) as usize,
                })
            }
            Err(Error::ContourZero(_)) if a == alpha => continue,
            Err(e) => return Err(e),
        }
    }
}

/// `N(f, α, β, r)/r` along an increasing sequence of radii.
#[derive(Debug, Clone, Serialize)]
pub struct DensityTable {
    pub alpha: f64,
    pub beta: f64,
    pub rows: Vec<SectorCount>,
    /// `N/r` at the largest radius.
    pub density: f64,
}

impl DensityTable {
    pub fn ratios(&self) -> Vec<f64> {
        self.rows.iter().map(|c| c.count as f64 / c.r).collect()
    }
}

/// Zero density `Δ_f(α, β)` of an order-one function, estimated as the
/// count ratio at the largest radius.
pub fn density<F: EntireFunction + ?Sized>(
    f: &F,
    alpha: f64,
    beta: f64,
    r_sequence: &[f64],
) -> Result<DensityTable> {
    check_sequence(r_sequence, 3)?;
    let rows = r_sequence
        .iter()
        .map(|r| zero_count_sector(f, alpha, beta, *r))
        .collect::<Result<Vec<_>>>()?;
    let last = rows.last().unwrap();
    Ok(DensityTable {
        alpha,
        beta,
        density: last.count as f64 / last.r,
        rows,
    })
}

fn check_sequence(r: &[f64], min_len: usize) -> Result<()> {
    if r.len() < min_len {
        return Err(Error::Invalid(format!("need at least {min_len} radii")));
    }
    if r.windows(2).any(|w| w[1] <= w[0]) || r[0] <= 0.0 {
        return Err(Error::Invalid(
            "radii must be positive and increasing".into(),
        ));
    }
    Ok(())
}

/// Samples of `ln|f(re^{iθ})|/r` and their extrapolation to `r → ∞`.
#[derive(Debug, Clone, Serialize)]
pub struct IndicatorSample {
    pub theta: f64,
    pub r_values: Vec<f64>,
    pub h_estimates: Vec<f64>,
    /// Intercept at `1/r = 0` of the least-squares line through the top three samples.
    pub h_extrapolated: f64,
}

/// Lindelöf indicator `h_f(θ)`. On the real axis, where a function bounded
/// there oscillates through its zeros, each estimate uses the largest
/// `ln|f|` over `[0.95r, r]` instead of the single value at `r`.
pub fn indicator<F: EntireFunction + ?Sized>(
    f: &F,
    theta: f64,
    r_sequence: &[f64],
) -> Result<IndicatorSample> {
    check_sequence(r_sequence, 3)?;
    if *r_sequence.last().unwrap() < 50.0 {
        return Err(Error::Invalid("largest radius must be at least 50".into()));
    }
    let on_axis = (theta.sin()).abs() < 1e-12;
    let dir = Complex64::from_polar(1.0, theta);
    let mut h = Vec::with_capacity(r_sequence.len());
    for &r in r_sequence {
        let ln = if on_axis {
            (0..=64)
                .map(|i| f.ln_abs(dir * (r * (0.95 + 0.05 * i as f64 / 64.0))))
                .fold(f64::MIN, f64::max)
        } else {
            f.ln_abs(dir * r)
        };
        if !ln.is_finite() {
            return Err(Error::Overflow("indicator sample"));
        }
        h.push(ln / r);
    }
    let n = h.len();
    let xs: Vec<f64> = r_sequence[n - 3..].iter().map(|r| 1.0 / r).collect();
    let ys = &h[n - 3..];
    let mx = xs.iter().sum::<f64>() / 3.0;
    let my = ys.iter().sum::<f64>() / 3.0;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Ok(IndicatorSample {
        theta,
        r_values: r_sequence.to_vec(),
        h_estimates: h,
        h_extrapolated: my - slope * mx,
    })
}

/// Largest extrapolated indicator over `thetas`: the type of the function
/// when the maximizing direction is sampled.
pub fn type_estimate<F: EntireFunction + ?Sized>(
    f: &F,
    thetas: &[f64],
    r_sequence: &[f64],
) -> Result<f64> {
    let mut best = f64::MIN;
    for t in thetas {
        best = best.max(indicator(f, *t, r_sequence)?.h_extrapolated);
    }
    Ok(best)
}

/// `k ↦ y_l(ξ; k)`, the value at `ξ` of the radial solution with
/// `y(R̂) = R̂`, `y'(R̂) = 1`. Entire in `k`; of exponential type `R̂ - ξ`.
///
/// At `ξ = 0` and `l ≥ 1` the solution itself blows up, so the evaluator
/// returns the dispersion function instead (the two agree for `l = 0`).
#[derive(Debug, Clone, Copy)]
pub struct RadialValue {
    pub l: usize,
    pub r_hat: f64,
    pub xi: f64,
}

impl RadialValue {
    pub fn new(l: usize, r_hat: f64, xi: f64) -> Result<Self> {
        if !(r_hat > 0.0) || !(0.0..=r_hat).contains(&xi) {
            return Err(Error::Invalid(format!(
                "need 0 <= ξ <= R̂, got ξ = {xi}, R̂ = {r_hat}"
            )));
        }
        Ok(Self { l, r_hat, xi })
    }
}

impl EntireFunction for RadialValue {
    fn eval(&self, k: Complex64) -> Complex64 {
        let s = self.xi - self.r_hat;
        if self.l == 0 {
            if k.norm() == 0.0 {
                return Complex64::new(self.xi, 0.0);
            }
            return self.r_hat * (k * s).cos() + (k * s).sin() / k;
        }
        if self.xi == 0.0 {
            return dispersion(self.l, self.r_hat, k).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        }
        if self.xi == self.r_hat {
            return Complex64::new(self.r_hat, 0.0);
        }
        let nan = Complex64::new(f64::NAN, f64::NAN);
        let Ok(problem) = RadialProblem::free(self.l, k, self.r_hat) else {
            return nan;
        };
        match solve_from_boundary(&problem, Direction::Inward, self.xi, self.r_hat - self.xi) {
            Ok(sol) => sol.y[0],
            Err(_) => nan,
        }
    }
}
