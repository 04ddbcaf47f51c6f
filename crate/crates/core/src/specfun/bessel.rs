//! Spherical Bessel, Neumann and Riccati–Bessel functions of integer order
//! and complex argument.
//!
//! `j_l` is evaluated by its power series for |z| < 1, by upward recurrence
//! when every requested order satisfies l ≤ |z|, and otherwise by Miller's
//! downward recurrence normalized against the closed form of `j_0` or `j_1`.
//! `y_l` always uses upward recurrence.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default largest order accepted by the Bessel routines.
pub const L_MAX_DEFAULT: usize = 60;
/// Hard ceiling for a configured `l_max`.
pub const L_MAX_SUPPORTED: usize = 100;
/// Largest accepted argument modulus.
pub const Z_MAX: f64 = 1.0e4;

const SERIES_RADIUS: f64 = 1.0;
const MILLER_EXTRA: usize = 50;
const RESCALE_ABOVE: f64 = 1e250;

/// Order and argument limits for the Bessel routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselLimits {
    pub l_max: usize,
}

impl Default for BesselLimits {
    fn default() -> Self {
        Self {
            l_max: L_MAX_DEFAULT,
        }
    }
}

impl BesselLimits {
    pub fn new(l_max: usize) -> Result<Self> {
        if l_max > L_MAX_SUPPORTED {
            return Err(Error::OrderTooLarge {
                l: l_max,
                l_max: L_MAX_SUPPORTED,
            });
        }
        Ok(Self { l_max })
    }

    fn check(&self, l: usize, z: Complex64) -> Result<()> {
        if l > self.l_max {
            return Err(Error::OrderTooLarge {
                l,
                l_max: self.l_max,
            });
        }
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm() > Z_MAX {
            return Err(Error::ArgumentOutOfRange(z.norm()));
        }
        Ok(())
    }

    /// `j_0(z), …, j_n(z)`.
    pub fn j_seq(&self, n: usize, z: Complex64) -> Result<Vec<Complex64>> {
        self.check(n, z)?;
        Ok(j_seq_unchecked(n, z))
    }

    /// `y_0(z), …, y_n(z)`.
    pub fn y_seq(&self, n: usize, z: Complex64) -> Result<Vec<Complex64>> {
        self.check(n, z)?;
        if z.norm() == 0.0 {
            return Err(Error::Domain(
                "spherical Neumann function is singular at z = 0".into(),
            ));
        }
        let out = y_seq_unchecked(n, z);
        if out.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Overflow("spherical Neumann recurrence"));
        }
        Ok(out)
    }

    pub fn j(&self, l: usize, z: Complex64) -> Result<Complex64> {
        Ok(self.j_seq(l, z)?[l])
    }

    pub fn y(&self, l: usize, z: Complex64) -> Result<Complex64> {
        Ok(self.y_seq(l, z)?[l])
    }

    /// `(j_l(z), j_l'(z))`.
    pub fn j_with_derivative(&self, l: usize, z: Complex64) -> Result<(Complex64, Complex64)> {
        self.check(l, z)?;
        let seq = j_seq_unchecked(l + 1, z);
        Ok((seq[l], j_derivative(&seq, l, z)))
    }

    /// `(y_l(z), y_l'(z))`.
    pub fn y_with_derivative(&self, l: usize, z: Complex64) -> Result<(Complex64, Complex64)> {
        let seq = self.y_seq(l, z)?;
        let y1 = if l == 0 {
            y_seq_unchecked(1, z)[1]
        } else {
            seq[l - 1]
        };
        let d = if l == 0 {
            -y1
        } else {
            y1 - (l as f64 + 1.0) / z * seq[l]
        };
        Ok((seq[l], d))
    }

    /// Riccati–Bessel `S_l(z) = z j_l(z)` and its derivative.
    pub fn riccati_s(&self, l: usize, z: Complex64) -> Result<(Complex64, Complex64)> {
        let (j, dj) = self.j_with_derivative(l, z)?;
        Ok((z * j, j + z * dj))
    }

    /// Riccati–Bessel `C_l(z) = -z y_l(z)` and its derivative.
    pub fn riccati_c(&self, l: usize, z: Complex64) -> Result<(Complex64, Complex64)> {
        let (y, dy) = self.y_with_derivative(l, z)?;
        Ok((-z * y, -y - z * dy))
    }
}

fn j_derivative(seq: &[Complex64], l: usize, z: Complex64) -> Complex64 {
    if z.norm() == 0.0 {
        return Complex64::new(if l == 1 { 1.0 / 3.0 } else { 0.0 }, 0.0);
    }
    if l == 0 {
        -seq[1]
    } else {
        seq[l - 1] - (l as f64 + 1.0) / z * seq[l]
    }
}

fn j0_closed(z: Complex64) -> Complex64 {
    z.sin() / z
}

fn j1_closed(z: Complex64) -> Complex64 {
    z.sin() / (z * z) - z.cos() / z
}

/// Power series `j_l(z) = z^l/(2l+1)!! Σ_k (-z²/2)^k / (k! (2l+3)(2l+5)…(2l+2k+1))`.
fn j_series(l: usize, z: Complex64) -> Complex64 {
    let mut lead = Complex64::new(1.0, 0.0);
    for i in 1..=l {
        lead *= z / (2 * i + 1) as f64;
    }
    let w = -0.5 * z * z;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..200 {
        term *= w / (k as f64 * (2 * l + 2 * k + 1) as f64);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    lead * sum
}

fn j_seq_unchecked(n: usize, z: Complex64) -> Vec<Complex64> {
    let r = z.norm();
    if r == 0.0 {
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        out[0] = Complex64::new(1.0, 0.0);
        return out;
    }
    if r < SERIES_RADIUS {
        return (0..=n).map(|l| j_series(l, z)).collect();
    }
    if (n as f64) <= r {
        return j_upward(n, z);
    }
    j_miller(n, z)
}

fn j_upward(n: usize, z: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(j0_closed(z));
    if n >= 1 {
        out.push(j1_closed(z));
    }
    for l in 1..n {
        let next = (2 * l + 1) as f64 / z * out[l] - out[l - 1];
        out.push(next);
    }
    out
}

fn j_miller(n: usize, z: Complex64) -> Vec<Complex64> {
    let start = n + MILLER_EXTRA + z.norm().ceil() as usize;
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut upper = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1e-30, 0.0);
    for l in (1..=start).rev() {
        // f_{l-1} = (2l+1)/z f_l - f_{l+1}
        let lower = (2 * l + 1) as f64 / z * cur - upper;
        upper = cur;
        cur = lower;
        if l - 1 <= n {
            out[l - 1] = cur;
        }
        if l <= n {
            out[l] = upper;
        }
        if cur.norm() > RESCALE_ABOVE {
            let s = 1.0 / RESCALE_ABOVE;
            cur *= s;
            upper *= s;
            for v in out.iter_mut().skip(l.saturating_sub(1)) {
                *v *= s;
            }
        }
    }
    let j0 = j0_closed(z);
    let j1 = j1_closed(z);
    let scale = if j0.norm() >= j1.norm() || n == 0 {
        j0 / out[0]
    } else {
        j1 / out[1]
    };
    for v in out.iter_mut() {
        *v *= scale;
    }
    out
}

fn y_seq_unchecked(n: usize, z: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 2);
    let (s, c) = (z.sin(), z.cos());
    out.push(-c / z);
    out.push(-c / (z * z) - s / z);
    for l in 1..n {
        let next = (2 * l + 1) as f64 / z * out[l] - out[l - 1];
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

/// `j_l(z)` with the default limits.
pub fn spherical_bessel_j(l: usize, z: Complex64) -> Result<Complex64> {
    BesselLimits::default().j(l, z)
}

/// `y_l(z)` with the default limits.
pub fn spherical_bessel_y(l: usize, z: Complex64) -> Result<Complex64> {
    BesselLimits::default().y(l, z)
}

/// `S_l(z) = z j_l(z)`.
pub fn riccati_s(l: usize, z: Complex64) -> Result<Complex64> {
    Ok(BesselLimits::default().riccati_s(l, z)?.0)
}

/// `C_l(z) = -z y_l(z)`.
pub fn riccati_c(l: usize, z: Complex64) -> Result<Complex64> {
    Ok(BesselLimits::default().riccati_c(l, z)?.0)
}
