//! Far-field synthesis from harmonic coefficients and re-expansion of
//! sphere samples into spherical harmonics.

use schiffer_lab::scatter::{far_field_from_coeffs, rellich_expand, FarFieldPattern};
use schiffer_lab::specfun::{
    lm_index, spherical_bessel_j, spherical_harmonic, SphereQuadrature, SphericalDirection,
};
use schiffer_lab::{Complex64, Result};

fn main() -> Result<()> {
    let mut a = vec![Complex64::new(0.0, 0.0); 9];
    a[lm_index(0, 0)] = Complex64::new(1.0, 0.0);
    a[lm_index(2, 1)] = Complex64::new(0.3, -0.1);
    let pattern = FarFieldPattern::new(2.0, 2, a)?;
    let dirs = SphericalDirection::axes();
    for (d, v) in dirs.iter().zip(far_field_from_coeffs(&pattern, &dirs)) {
        println!("u∞(θ={:.3}, φ={:.3}) = {:.6}", d.theta, d.phi, v);
    }
    println!("tail energy {:.4}", pattern.tail_energy());

    let (k, r0) = (3.0, 2.0);
    let quad = SphereQuadrature::default();
    let j1 = spherical_bessel_j(1, Complex64::new(k * r0, 0.0))?;
    let samples: Vec<Complex64> = quad
        .directions
        .iter()
        .map(|d| j1 * spherical_harmonic(1, 0, *d).unwrap())
        .collect();
    let e = rellich_expand(&samples, &quad, r0, 4)?;
    println!(
        "\na_(1,0)({r0}) = {:.15} vs j_1(6) = {:.15}",
        e.get(1, 0).re,
        j1.re
    );
    let others = (0..e.coeffs.len())
        .filter(|&i| i != lm_index(1, 0))
        .map(|i| e.coeffs[i].norm())
        .fold(0.0, f64::max);
    println!(
        "largest other coefficient {others:.1e}, aliasing warning {}",
        e.aliasing_warning
    );
    Ok(())
}
