use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{lm_index, HarmonicTable, SphereQuadrature, SphericalDirection};

/// Coefficients `a_n^m`, `n ≤ n_trunc`, of a far-field pattern at wavenumber `k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FarFieldPattern {
    pub k: f64,
    pub n_trunc: usize,
    /// Indexed by [`lm_index`].
    pub a_coeffs: Vec<Complex64>,
}

impl FarFieldPattern {
    pub fn new(k: f64, n_trunc: usize, a_coeffs: Vec<Complex64>) -> Result<Self> {
        if !(k > 0.0) {
            return Err(Error::Invalid(format!(
                "wavenumber must be positive, got {k}"
            )));
        }
        if a_coeffs.len() != (n_trunc + 1) * (n_trunc + 1) {
            return Err(Error::Invalid(format!(
                "expected {} coefficients",
                (n_trunc + 1) * (n_trunc + 1)
            )));
        }
        if a_coeffs
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::Invalid("non-finite coefficient".into()));
        }
        Ok(Self {
            k,
            n_trunc,
            a_coeffs,
        })
    }

    /// Pattern with a single nonzero coefficient.
    pub fn single(k: f64, n: usize, m: i64, value: Complex64) -> Result<Self> {
        let mut a = vec![Complex64::new(0.0, 0.0); (n + 1) * (n + 1)];
        a[lm_index(n, m)] = value;
        Self::new(k, n, a)
    }

    /// Share of `Σ|a|²` carried by the top degree `n_trunc`.
    pub fn tail_energy(&self) -> f64 {
        let total: f64 = self.a_coeffs.iter().map(|c| c.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let n = self.n_trunc;
        let tail: f64 = self.a_coeffs[n * n..].iter().map(|c| c.norm_sqr()).sum();
        tail / total
    }
}

/// `u_∞(x̂) = (1/k) Σ_n i^{-(n+1)} Σ_m a_n^m Y_n^m(x̂)` at each direction.
pub fn far_field_from_coeffs(
    pattern: &FarFieldPattern,
    dirs: &[SphericalDirection],
) -> Vec<Complex64> {
    let n_max = pattern.n_trunc;
    let phase: Vec<Complex64> = (0..=n_max)
        .map(|n| Complex64::i().powu(n as u32 + 1).inv())
        .collect();
    dirs.iter()
        .map(|d| {
            let table = HarmonicTable::new(n_max, *d, false);
            let mut sum = Complex64::new(0.0, 0.0);
            for n in 0..=n_max {
                let mut inner = Complex64::new(0.0, 0.0);
                for m in -(n as i64)..=n as i64 {
                    let idx = lm_index(n, m);
                    inner += pattern.a_coeffs[idx] * table.values[idx];
                }
                sum += phase[n] * inner;
            }
            sum / pattern.k
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RellichExpansion {
    pub radius: f64,
    pub l_max: usize,
    /// `a_{l,m}(R₀)`, indexed by [`lm_index`].
    pub coeffs: Vec<Complex64>,
    /// `l_max` exceeds what the grid integrates exactly.
    pub aliasing_warning: bool,
}

impl RellichExpansion {
    pub fn get(&self, l: usize, m: i64) -> Complex64 {
        self.coeffs[lm_index(l, m)]
    }

    /// Synthesize the truncated series at `dir`.
    pub fn evaluate(&self, dir: SphericalDirection) -> Complex64 {
        let table = HarmonicTable::new(self.l_max, dir, false);
        self.coeffs
            .iter()
            .zip(&table.values)
            .map(|(a, y)| a * y)
            .sum()
    }
}

/// `a_{l,m}(R₀) = ∫ u conj(Y_l^m) dS` from samples at the nodes of `quad`.
pub fn rellich_expand(
    samples: &[Complex64],
    quad: &SphereQuadrature,
    radius: f64,
    l_max: usize,
) -> Result<RellichExpansion> {
    if samples.len() != quad.directions.len() {
        return Err(Error::Invalid(format!(
            "expected {} samples, got {}",
            quad.directions.len(),
            samples.len()
        )));
    }
    if !(radius > 0.0) {
        return Err(Error::NonPositiveRadius(radius));
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); (l_max + 1) * (l_max + 1)];
    for ((d, w), u) in quad.directions.iter().zip(&quad.weights).zip(samples) {
        let table = HarmonicTable::new(l_max, *d, false);
        let uw = u * *w;
        for (c, y) in coeffs.iter_mut().zip(&table.values) {
            *c += uw * y.conj();
        }
    }
    Ok(RellichExpansion {
        radius,
        l_max,
        coeffs,
        aliasing_warning: l_max > quad.resolvable_degree(),
    })
}
