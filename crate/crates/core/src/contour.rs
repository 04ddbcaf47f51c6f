//! Closed contours and argument-principle zero counting.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::entire::EntireFunction;
use crate::error::{Error, Result};
use crate::quad::integrate_adaptive;

/// One piece of a closed contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    Segment {
        from: Complex64,
        to: Complex64,
    },
    Arc {
        center: Complex64,
        radius: f64,
        start: f64,
        end: f64,
    },
}

impl Piece {
    fn point(&self, t: f64) -> Complex64 {
        match *self {
            Piece::Segment { from, to } => from + (to - from) * t,
            Piece::Arc {
                center,
                radius,
                start,
                end,
            } => center + Complex64::from_polar(radius, start + (end - start) * t),
        }
    }

    fn tangent(&self, t: f64) -> Complex64 {
        match *self {
            Piece::Segment { from, to } => to - from,
            Piece::Arc {
                radius, start, end, ..
            } => {
                Complex64::i()
                    * (end - start)
                    * Complex64::from_polar(radius, start + (end - start) * t)
            }
        }
    }
}

/// Positively oriented closed contour made of segments and arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    pub pieces: Vec<Piece>,
}

impl Contour {
    /// Boundary of `[re_min, re_max] × [im_min, im_max]`.
    pub fn rectangle(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        let a = Complex64::new(re_min, im_min);
        let b = Complex64::new(re_max, im_min);
        let c = Complex64::new(re_max, im_max);
        let d = Complex64::new(re_min, im_max);
        Self {
            pieces: vec![
                Piece::Segment { from: a, to: b },
                Piece::Segment { from: b, to: c },
                Piece::Segment { from: c, to: d },
                Piece::Segment { from: d, to: a },
            ],
        }
    }

    /// Boundary of `{ρe^{iφ} : r_in ≤ ρ ≤ r_out, α ≤ φ ≤ β}`.
    pub fn annular_sector(alpha: f64, beta: f64, r_in: f64, r_out: f64) -> Self {
        let o = Complex64::new(0.0, 0.0);
        Self {
            pieces: vec![
                Piece::Segment {
                    from: Complex64::from_polar(r_in, alpha),
                    to: Complex64::from_polar(r_out, alpha),
                },
                Piece::Arc {
                    center: o,
                    radius: r_out,
                    start: alpha,
                    end: beta,
                },
                Piece::Segment {
                    from: Complex64::from_polar(r_out, beta),
                    to: Complex64::from_polar(r_in, beta),
                },
                Piece::Arc {
                    center: o,
                    radius: r_in,
                    start: beta,
                    end: alpha,
                },
            ],
        }
    }

    fn diameter(&self) -> f64 {
        let pts: Vec<Complex64> = self
            .pieces
            .iter()
            .flat_map(|p| (0..=8).map(move |i| p.point(i as f64 / 8.0)))
            .collect();
        let (mut lo_re, mut hi_re, mut lo_im, mut hi_im) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for z in pts {
            lo_re = lo_re.min(z.re);
            hi_re = hi_re.max(z.re);
            lo_im = lo_im.min(z.im);
            hi_im = hi_im.max(z.im);
        }
        (hi_re - lo_re).hypot(hi_im - lo_im)
    }
}

/// Settings of the winding-number computation.
#[derive(Debug, Clone, Copy)]
pub struct WindingOptions {
    /// Boundary samples per piece used for the proximity test and to seed
    /// the adaptive quadrature.
    pub quad_nodes: usize,
    /// A zero is declared on the contour when `|f| ≤ proximity · local max|f|` at a sample.
    pub proximity: f64,
    /// Central-difference step for `f'`, relative to the contour diameter.
    pub fd_rel_step: f64,
}

impl Default for WindingOptions {
    fn default() -> Self {
        Self {
            quad_nodes: 240,
            proximity: 1e-8,
            fd_rel_step: 1e-6,
        }
    }
}

/// `(1/2πi) ∮ f'/f dz`, rounded to the nearest integer.
pub fn winding_number<F: EntireFunction + ?Sized>(
    f: &F,
    contour: &Contour,
    opts: &WindingOptions,
) -> Result<i64> {
    let n = opts.quad_nodes.max(16);
    let h = opts.fd_rel_step * contour.diameter();
    // Proximity is judged against the local magnitude so that functions of
    // exponential growth are not flagged on the side where they are small.
    let reach = contour.diameter() * 4.0 / n as f64;
    let near_zero = |z: Complex64, fz: Complex64| {
        let local = f
            .eval(z + reach)
            .norm()
            .max(f.eval(z - reach).norm())
            .max(f.eval(z + Complex64::i() * reach).norm());
        fz.norm() <= opts.proximity * local.max(fz.norm())
    };
    for piece in &contour.pieces {
        for i in 0..n {
            let z = piece.point((i as f64 + 0.5) / n as f64);
            let v = f.eval(z);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::Overflow("contour sample"));
            }
            if v.norm() == 0.0 || near_zero(z, v) {
                return Err(Error::ContourZero(z));
            }
        }
    }

    let mut total = Complex64::new(0.0, 0.0);
    for piece in &contour.pieces {
        let integrand = |t: f64| {
            let z = piece.point(t);
            let fz = f.eval(z);
            if fz.norm() == 0.0 || !(fz.re.is_finite() && fz.im.is_finite()) {
                return Err(Error::ContourZero(z));
            }
            let d = (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
            Ok(d / fz * piece.tangent(t))
        };
        total += integrate_adaptive(integrand, 0.0, 1.0, (n / 15).max(1), 1e-4, 40)?;
    }
    let w = total / Complex64::new(0.0, 2.0 * PI);
    let rounded = w.re.round();
    if (w.re - rounded).abs() > 0.1 || w.im.abs() > 0.1 {
        return Err(Error::QuadratureFailure(w.re));
    }
    Ok(rounded as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_polynomial_zeros() {
        let f = |z: Complex64| (z - 1.0) * (z - Complex64::new(0.2, 0.3)) * (z + 3.0);
        let n = winding_number(
            &f,
            &Contour::rectangle(-1.0, 2.0, -1.0, 1.0),
            &Default::default(),
        )
        .unwrap();
        assert_eq!(n, 2);
        let n = winding_number(
            &f,
            &Contour::annular_sector(-0.5, 0.5, 0.5, 2.0),
            &Default::default(),
        )
        .unwrap();
        assert_eq!(n, 1);
    }

    #[test]
    fn zero_on_contour_is_reported() {
        let f = |z: Complex64| z - 1.0;
        let r = winding_number(
            &f,
            &Contour::rectangle(1.0, 2.0, -1.0, 1.0),
            &WindingOptions {
                quad_nodes: 16,
                ..Default::default()
            },
        );
        assert!(matches!(r, Err(Error::ContourZero(_))));
    }
}
