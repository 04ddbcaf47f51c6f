use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{Error, Result};
use crate::specfun::{lm_index, HarmonicTable, SphereQuadrature, SphericalDirection};

/// Real orthonormal harmonic: `√2 Re Y_l^m` for `m > 0`, `√2 Im Y_l^{|m|}`
/// for `m < 0`, `Y_l^0` otherwise. Works on value or `∂θ` tables alike.
pub fn real_harmonic(table: &[Complex64], l: usize, m: i64) -> f64 {
    let y = table[lm_index(l, m.abs())];
    match m.signum() {
        1 => std::f64::consts::SQRT_2 * y.re,
        -1 => std::f64::consts::SQRT_2 * y.im,
        _ => y.re,
    }
}

/// A region `r < ρ(x̂)` whose boundary function is a real harmonic series
/// of degree `l_geom`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarlikeDomain {
    l_geom: usize,
    coeffs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct DomainFile {
    #[serde(rename = "L_geom")]
    l_geom: usize,
    rho_coeffs: Vec<(usize, i64, f64)>,
}

impl StarlikeDomain {
    /// Build from `(l, m, value)` triples; unlisted coefficients are zero.
    pub fn from_coeffs(l_geom: usize, entries: &[(usize, i64, f64)]) -> Result<Self> {
        if l_geom > crate::specfun::L_MAX_SUPPORTED {
            return Err(Error::OrderTooLarge {
                l: l_geom,
                l_max: crate::specfun::L_MAX_SUPPORTED,
            });
        }
        let mut coeffs = vec![0.0; (l_geom + 1) * (l_geom + 1)];
        for &(l, m, v) in entries {
            if l > l_geom || m.unsigned_abs() as usize > l {
                return Err(Error::Invalid(format!(
                    "coefficient ({l}, {m}) outside degree {l_geom}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::Invalid(format!(
                    "coefficient ({l}, {m}) is not finite"
                )));
            }
            coeffs[lm_index(l, m)] = v;
        }
        let domain = Self { l_geom, coeffs };
        domain.check_positive()?;
        Ok(domain)
    }

    pub fn ball(radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::NonPositiveRadius(radius));
        }
        Self::from_coeffs(0, &[(0, 0, radius * (4.0 * std::f64::consts::PI).sqrt())])
    }

    /// Project `profile` onto real harmonics of degree ≤ `l_geom`.
    pub fn from_profile<F: Fn(SphericalDirection) -> f64>(
        l_geom: usize,
        profile: F,
    ) -> Result<Self> {
        let quad = SphereQuadrature::default();
        let mut coeffs = vec![0.0; (l_geom + 1) * (l_geom + 1)];
        for (dir, w) in quad.directions.iter().zip(&quad.weights) {
            let table = HarmonicTable::new(l_geom, *dir, false);
            let f = profile(*dir) * w;
            for l in 0..=l_geom {
                for m in -(l as i64)..=l as i64 {
                    coeffs[lm_index(l, m)] += f * real_harmonic(&table.values, l, m);
                }
            }
        }
        for c in coeffs.iter_mut() {
            if c.abs() < 1e-14 {
                *c = 0.0;
            }
        }
        let domain = Self { l_geom, coeffs };
        domain.check_positive()?;
        Ok(domain)
    }

    /// Prolate spheroid with polar radius `aspect` and equatorial radius 1.
    pub fn spheroid(aspect: f64, l_geom: usize) -> Result<Self> {
        if !(aspect > 0.0) {
            return Err(Error::NonPositiveRadius(aspect));
        }
        Self::from_profile(l_geom, |d| {
            let (s, c) = d.theta.sin_cos();
            1.0 / (s * s + c * c / (aspect * aspect)).sqrt()
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: DomainFile =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("domain file: {e}")))?;
        Self::from_coeffs(file.l_geom, &file.rho_coeffs)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    /// Domain-file JSON listing the nonzero coefficients.
    pub fn to_json(&self) -> String {
        let file = DomainFile {
            l_geom: self.l_geom,
            rho_coeffs: self.entries(),
        };
        serde_json::to_string_pretty(&file).expect("domain serializes")
    }

    pub fn l_geom(&self) -> usize {
        self.l_geom
    }

    pub fn coefficient(&self, l: usize, m: i64) -> f64 {
        if l > self.l_geom || m.unsigned_abs() as usize > l {
            return 0.0;
        }
        self.coeffs[lm_index(l, m)]
    }

    pub fn entries(&self) -> Vec<(usize, i64, f64)> {
        let mut out = Vec::new();
        for l in 0..=self.l_geom {
            for m in -(l as i64)..=l as i64 {
                let v = self.coeffs[lm_index(l, m)];
                if v != 0.0 {
                    out.push((l, m, v));
                }
            }
        }
        out
    }

    fn check_positive(&self) -> Result<()> {
        let quad = SphereQuadrature::default();
        for dir in &quad.directions {
            self.ray_radius(*dir)?;
        }
        Ok(())
    }

    fn synthesize(&self, dir: SphericalDirection, derivatives: bool) -> (f64, f64, f64) {
        let table = HarmonicTable::new(self.l_geom, dir, derivatives);
        let (mut rho, mut d_theta, mut d_phi) = (0.0, 0.0, 0.0);
        for l in 0..=self.l_geom {
            for m in -(l as i64)..=l as i64 {
                let c = self.coeffs[lm_index(l, m)];
                if c == 0.0 {
                    continue;
                }
                rho += c * real_harmonic(&table.values, l, m);
                if let Some(dt) = &table.d_theta {
                    d_theta += c * real_harmonic(dt, l, m);
                    // ∂φ of (√2 Re, √2 Im) of Y^{|m|} is |m| (-√2 Im, √2 Re).
                    d_phi -= c * m as f64 * real_harmonic(&table.values, l, -m);
                }
            }
        }
        (rho, d_theta, d_phi)
    }

    /// `ρ(x̂)`.
    pub fn ray_radius(&self, dir: SphericalDirection) -> Result<f64> {
        let rho = self.synthesize(dir, false).0;
        if !(rho > 0.0) {
            return Err(Error::NonPositiveRadius(rho));
        }
        Ok(rho)
    }

    /// `(ρ, ∂ρ/∂θ, ∂ρ/∂φ)`.
    pub fn radius_with_gradient(&self, dir: SphericalDirection) -> Result<(f64, f64, f64)> {
        let out = self.synthesize(dir, true);
        if !(out.0 > 0.0) {
            return Err(Error::NonPositiveRadius(out.0));
        }
        Ok(out)
    }

    pub fn boundary_point(&self, dir: SphericalDirection) -> Result<[f64; 3]> {
        let rho = self.ray_radius(dir)?;
        Ok(dir.unit_vector().map(|c| rho * c))
    }

    /// Outward unit normal of `r = ρ(θ, φ)`, proportional to
    /// `r̂ - (ρ_θ/ρ) θ̂ - ρ_φ/(ρ sin θ) φ̂`.
    pub fn boundary_normal(&self, dir: SphericalDirection) -> Result<[f64; 3]> {
        // At the poles ρ_φ/sin θ is a limit; step off by a hair.
        let eval_dir = if dir.theta.sin() < 1e-9 {
            SphericalDirection {
                theta: if dir.theta < 1.0 {
                    1e-9
                } else {
                    std::f64::consts::PI - 1e-9
                },
                phi: dir.phi,
            }
        } else {
            dir
        };
        let (rho, rt, rp) = self.radius_with_gradient(eval_dir)?;
        let [er, et, ep] = dir.frame();
        let a = rt / rho;
        let b = rp / (rho * eval_dir.theta.sin());
        let mut n = [0.0; 3];
        for i in 0..3 {
            n[i] = er[i] - a * et[i] - b * ep[i];
        }
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        Ok(n.map(|c| c / norm))
    }
}
