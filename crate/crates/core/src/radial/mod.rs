//! The radial problem `y'' + (k² - l(l+1)/r² - p(r)) y = 0` anchored at the
//! boundary radius `R̂` with data `y(R̂) = R̂`, `y'(R̂) = 1`, integrated
//! inward toward the origin or outward toward infinity.
//!
//! With `p ≡ 0` and integer `l` the solution is the Riccati–Bessel
//! combination `y(r) = A S_l(kr) + B C_l(kr)`; the coefficients are returned
//! alongside the numerical trajectory and are the authoritative values.

mod verify;

use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ode::{self, Dopri5Options};
use crate::quad::integrate_gl;
use crate::specfun::BesselLimits;

pub use verify::{
    ln_k_bound, verify_perturbation_bound, verify_phase_asymptotics, verify_shifted_radius,
    PerturbationBoundReport, PerturbationBoundRow, PhaseAsymptoticsReport, PhaseAsymptoticsRow,
    ShiftedRadiusReport, ShiftedRadiusRow, INTEGRATION_NOISE, XI_TRUNCATION,
};

/// A real potential `p(r)` on `(0, R̂]`.
pub type Potential = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Data of one radial problem: angular parameter, frequency, anchor radius
/// and an optional potential.
#[derive(Clone)]
pub struct RadialProblem {
    l: f64,
    k: Complex64,
    r_hat: f64,
    potential: Option<Potential>,
}

impl fmt::Debug for RadialProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProblem")
            .field("l", &self.l)
            .field("k", &self.k)
            .field("r_hat", &self.r_hat)
            .field("potential", &self.potential.as_ref().map(|_| "<fn>"))
            .finish()
    }
}

impl RadialProblem {
    pub fn new(l: f64, k: Complex64, r_hat: f64) -> Result<Self> {
        if !(l >= -0.5) || !l.is_finite() {
            return Err(Error::Invalid(format!(
                "angular parameter l = {l} must be >= -1/2"
            )));
        }
        if !(r_hat > 0.0) || !r_hat.is_finite() {
            return Err(Error::Invalid(format!(
                "anchor radius {r_hat} must be positive"
            )));
        }
        if !(k.re.is_finite() && k.im.is_finite()) {
            return Err(Error::Invalid("frequency is not finite".into()));
        }
        Ok(Self {
            l,
            k,
            r_hat,
            potential: None,
        })
    }

    /// Integer-order problem without potential.
    pub fn free(l: usize, k: Complex64, r_hat: f64) -> Result<Self> {
        Self::new(l as f64, k, r_hat)
    }

    /// Attach a potential. It must produce a finite square integral on
    /// `[10⁻⁶ R̂, R̂]`.
    pub fn with_potential<F>(mut self, p: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let delta = 1e-6 * self.r_hat;
        let sq = integrate_gl(|t| p(t).powi(2), delta, self.r_hat, 64, 8);
        if !sq.is_finite() {
            return Err(Error::Invalid(
                "potential is not square integrable on the sampled span".into(),
            ));
        }
        self.potential = Some(Arc::new(p));
        Ok(self)
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn k(&self) -> Complex64 {
        self.k
    }

    pub fn r_hat(&self) -> f64 {
        self.r_hat
    }

    pub fn potential(&self) -> Option<&Potential> {
        self.potential.as_ref()
    }

    /// Same data at another frequency.
    pub fn at_frequency(&self, k: Complex64) -> Self {
        Self { k, ..self.clone() }
    }

    /// Same data at another anchor radius.
    pub fn at_radius(&self, r_hat: f64) -> Result<Self> {
        let mut p = Self::new(self.l, self.k, r_hat)?;
        p.potential = self.potential.clone();
        Ok(p)
    }

    pub fn integer_order(&self) -> Option<usize> {
        (self.l >= 0.0 && self.l.fract() == 0.0).then_some(self.l as usize)
    }

    fn centrifugal(&self) -> f64 {
        self.l * (self.l + 1.0)
    }

    /// `y''/y = l(l+1)/r² + p(r) - k²`.
    pub fn coefficient(&self, r: f64) -> Complex64 {
        let p = self.potential.as_ref().map_or(0.0, |p| p(r));
        let cent = self.centrifugal();
        let cent = if cent == 0.0 { 0.0 } else { cent / (r * r) };
        Complex64::new(cent + p, 0.0) - self.k * self.k
    }

    /// The equation is regular at `r = 0` only without centrifugal term and potential.
    pub fn regular_at_origin(&self) -> bool {
        self.centrifugal() == 0.0 && self.potential.is_none()
    }

    /// Riccati–Bessel coefficients `(A, B)` of the solution with data
    /// `y(r0) = y0`, `y'(r0) = dy0`, available for `p ≡ 0`, integer `l`.
    pub fn closed_form_coefficients(
        &self,
        r0: f64,
        y0: Complex64,
        dy0: Complex64,
    ) -> Result<Option<(Complex64, Complex64)>> {
        let Some(l) = self.integer_order() else {
            return Ok(None);
        };
        if self.potential.is_some() || self.k.norm() == 0.0 {
            return Ok(None);
        }
        let limits = BesselLimits::default();
        let x = self.k * r0;
        let (s, ds) = limits.riccati_s(l, x)?;
        let (c, dc) = limits.riccati_c(l, x)?;
        // [s c; ds dc] (A, B)ᵀ = (y0, dy0/k)ᵀ. The determinant is the
        // Wronskian, exactly -1; computing it cancels badly off the real axis.
        let det = Complex64::new(-1.0, 0.0);
        let rhs2 = dy0 / self.k;
        let a = (y0 * dc - c * rhs2) / det;
        let b = (s * rhs2 - ds * y0) / det;
        Ok(Some((a, b)))
    }

    /// `(y(r), y'(r))` of `A S_l(kr) + B C_l(kr)`.
    pub fn closed_form_value(
        &self,
        coeffs: (Complex64, Complex64),
        r: f64,
    ) -> Result<(Complex64, Complex64)> {
        let l = self
            .integer_order()
            .ok_or_else(|| Error::Invalid("closed form needs integer l".into()))?;
        let limits = BesselLimits::default();
        let x = self.k * r;
        let (s, ds) = limits.riccati_s(l, x)?;
        let (c, dc) = limits.riccati_c(l, x)?;
        let (a, b) = coeffs;
        Ok((a * s + b * c, self.k * (a * ds + b * dc)))
    }
}

/// Integration direction away from the anchor radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Inward,
    Outward,
}

/// Sampled trajectory of a radial solution.
#[derive(Debug, Clone)]
pub struct RadialSolution {
    /// Strictly increasing radii. The node `0` appears only for problems
    /// regular at the origin.
    pub grid: Vec<f64>,
    pub y: Vec<Complex64>,
    pub dy: Vec<Complex64>,
    /// `(A, B)` with `y = A S_l(kr) + B C_l(kr)` when `p ≡ 0`.
    pub closed_form: Option<(Complex64, Complex64)>,
    problem: Option<RadialProblem>,
}

/// Residuals of the boundary conditions `y(R̂) = R̂` and `y'(R̂) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryResiduals {
    pub f: Complex64,
    pub g: Complex64,
}

impl RadialSolution {
    /// Wrap externally sampled values. Interpolation of `y'` then falls
    /// back to finite differences.
    pub fn from_samples(grid: Vec<f64>, y: Vec<Complex64>, dy: Vec<Complex64>) -> Result<Self> {
        if grid.is_empty() || grid.len() != y.len() || grid.len() != dy.len() {
            return Err(Error::Invalid(
                "grid, y and dy must be nonempty and equally long".into(),
            ));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) || grid[0] < 0.0 {
            return Err(Error::Invalid(
                "grid must be nonnegative and strictly increasing".into(),
            ));
        }
        Ok(Self {
            grid,
            y,
            dy,
            closed_form: None,
            problem: None,
        })
    }

    pub fn problem(&self) -> Option<&RadialProblem> {
        self.problem.as_ref()
    }

    /// `a(r) = y(r)/r` at every positive grid node.
    pub fn coefficient_profile(&self) -> Vec<(f64, Complex64)> {
        self.grid
            .iter()
            .zip(&self.y)
            .filter(|(r, _)| **r > 0.0)
            .map(|(r, y)| (*r, *y / *r))
            .collect()
    }

    /// Largest deviation of the trajectory from the closed form, relative to
    /// the local envelope `sqrt(|y|² + |y'/k|²)` of the closed form.
    pub fn closed_form_mismatch(&self) -> Result<Option<f64>> {
        let (Some(coeffs), Some(problem)) = (self.closed_form, self.problem.as_ref()) else {
            return Ok(None);
        };
        let kn = problem.k().norm();
        let mut worst: f64 = 0.0;
        for ((r, y), dy) in self.grid.iter().zip(&self.y).zip(&self.dy) {
            if *r == 0.0 {
                continue;
            }
            let (yc, dyc) = problem.closed_form_value(coeffs, *r)?;
            let env = (yc.norm_sqr() + (dyc / kn).norm_sqr()).sqrt();
            let dev = ((y - yc).norm_sqr() + ((dy - dyc) / kn).norm_sqr()).sqrt();
            worst = worst.max(dev / env);
        }
        Ok(Some(worst))
    }

    /// `(y(r), y'(r))` between grid nodes: a short integration from the nearest
    /// node when the governing problem is known, cubic Hermite interpolation
    /// otherwise.
    pub fn value_at(&self, r: f64) -> Result<(Complex64, Complex64)> {
        let lo = self.grid[0];
        let hi = *self.grid.last().unwrap();
        if !(r >= lo && r <= hi) {
            return Err(Error::OutOfSpan { r, lo, hi });
        }
        let i = match self.grid.binary_search_by(|g| g.partial_cmp(&r).unwrap()) {
            Ok(i) => return Ok((self.y[i], self.dy[i])),
            Err(i) => i - 1,
        };
        if let Some(p) = self.problem.as_ref() {
            // hop from the nearer node with the integrator
            let j = if r - self.grid[i] <= self.grid[i + 1] - r {
                i
            } else {
                i + 1
            };
            let start = [self.y[j], self.dy[j]];
            let rhs = |t: f64, u: &ode::State<2>| [u[1], p.coefficient(t) * u[0]];
            let out = ode::integrate(rhs, self.grid[j], start, r, &[r], &default_options())?;
            return Ok((out[0][0], out[0][1]));
        }
        let (r0, r1) = (self.grid[i], self.grid[i + 1]);
        let h = r1 - r0;
        let s = (r - r0) / h;
        let y = hermite(s, h, self.y[i], self.y[i + 1], self.dy[i], self.dy[i + 1]);
        let dy = hermite(
            s,
            h,
            self.dy[i],
            self.dy[i + 1],
            self.slope_of_dy(i),
            self.slope_of_dy(i + 1),
        );
        Ok((y, dy))
    }

    fn slope_of_dy(&self, i: usize) -> Complex64 {
        let n = self.grid.len();
        let (a, b) = if i == 0 {
            (0, 1)
        } else if i == n - 1 {
            (n - 2, n - 1)
        } else {
            (i - 1, i + 1)
        };
        (self.dy[b] - self.dy[a]) / (self.grid[b] - self.grid[a])
    }
}

fn hermite(
    s: f64,
    h: f64,
    p0: Complex64,
    p1: Complex64,
    m0: Complex64,
    m1: Complex64,
) -> Complex64 {
    let s2 = s * s;
    let s3 = s2 * s;
    p0 * (2.0 * s3 - 3.0 * s2 + 1.0)
        + m0 * (h * (s3 - 2.0 * s2 + s))
        + p1 * (-2.0 * s3 + 3.0 * s2)
        + m1 * (h * (s3 - s2))
}

/// Integrator settings used by every radial solve.
pub fn default_options() -> Dopri5Options {
    Dopri5Options {
        atol: 1e-10,
        rtol: 1e-9,
        ..Default::default()
    }
}

/// Solve with initial data `y(R̂) = R̂`, `y'(R̂) = 1` toward `r_end`.
pub fn solve_from_boundary(
    problem: &RadialProblem,
    direction: Direction,
    r_end: f64,
    grid_step: f64,
) -> Result<RadialSolution> {
    let r_hat = problem.r_hat();
    solve_ivp(
        problem,
        direction,
        r_hat,
        Complex64::new(r_hat, 0.0),
        Complex64::new(1.0, 0.0),
        r_end,
        grid_step,
    )
}

/// Solve with arbitrary data `y(r0) = y0`, `y'(r0) = dy0`.
pub fn solve_ivp(
    problem: &RadialProblem,
    direction: Direction,
    r0: f64,
    y0: Complex64,
    dy0: Complex64,
    r_end: f64,
    grid_step: f64,
) -> Result<RadialSolution> {
    if !(grid_step > 0.0) {
        return Err(Error::Invalid("grid step must be positive".into()));
    }
    let stop = match direction {
        Direction::Inward => {
            if !(r_end < r0) || r_end < 0.0 {
                return Err(Error::Invalid(format!(
                    "inward solve needs 0 <= r_end < {r0}, got {r_end}"
                )));
            }
            if problem.regular_at_origin() {
                r_end
            } else if r_end > 0.0 {
                r_end.max(1e-6 * problem.r_hat())
            } else {
                r_end
                    .max(grid_step.min(r0 / 2.0))
                    .max(1e-6 * problem.r_hat())
            }
        }
        Direction::Outward => {
            if r_end < r0 {
                return Err(Error::Invalid(format!(
                    "outward solve needs r_end >= {r0}, got {r_end}"
                )));
            }
            r_end
        }
    };

    let mut nodes = vec![r0];
    let sign = if direction == Direction::Inward {
        -1.0
    } else {
        1.0
    };
    let mut i = 1usize;
    loop {
        let r = r0 + sign * i as f64 * grid_step;
        if (r - stop) * sign >= -1e-12 * grid_step {
            break;
        }
        nodes.push(r);
        i += 1;
    }
    if stop != r0 {
        nodes.push(stop);
    }

    let p = problem.clone();
    let rhs = move |r: f64, u: &ode::State<2>| [u[1], p.coefficient(r) * u[0]];
    let states = ode::integrate(rhs, r0, [y0, dy0], stop, &nodes, &default_options())?;

    let mut samples: Vec<(f64, Complex64, Complex64)> = nodes
        .iter()
        .zip(&states)
        .map(|(r, s)| (*r, s[0], s[1]))
        .collect();
    if direction == Direction::Inward {
        samples.reverse();
    }
    let closed_form = problem.closed_form_coefficients(r0, y0, dy0)?;
    Ok(RadialSolution {
        grid: samples.iter().map(|s| s.0).collect(),
        y: samples.iter().map(|s| s.1).collect(),
        dy: samples.iter().map(|s| s.2).collect(),
        closed_form,
        problem: Some(problem.clone()),
    })
}

/// `F = y(R̂) - R̂` and `G = y'(R̂) - 1`.
pub fn boundary_residuals(
    solution: &RadialSolution,
    r_hat: f64,
    _k: Complex64,
) -> Result<BoundaryResiduals> {
    let (y, dy) = solution.value_at(r_hat)?;
    Ok(BoundaryResiduals {
        f: y - r_hat,
        g: dy - 1.0,
    })
}
