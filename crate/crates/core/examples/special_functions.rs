//! Spherical Bessel and Riccati–Bessel values, their Wronskian, and the
//! orthonormality of spherical harmonics under the sphere quadrature.

use schiffer_lab::specfun::{
    riccati_c, riccati_s, spherical_bessel_j, spherical_bessel_y, spherical_harmonic,
    SphereQuadrature, SphericalDirection,
};
use schiffer_lab::{Complex64, Result};

fn main() -> Result<()> {
    let x = Complex64::new(1.0, 0.0);
    println!("j_1(1) = {:.15}", spherical_bessel_j(1, x)?.re);
    println!("y_1(1) = {:.15}", spherical_bessel_y(1, x)?.re);
    println!("S_3(2+i) = {:.12}", riccati_s(3, Complex64::new(2.0, 1.0))?);
    println!("C_3(2+i) = {:.12}", riccati_c(3, Complex64::new(2.0, 1.0))?);

    println!("\n l   x^2 (j y' - j' y) - 1 at x = 0.1, 1, 10, 100");
    for l in [0usize, 5, 10, 20] {
        let row: Vec<String> = [0.1, 1.0, 10.0, 100.0]
            .iter()
            .map(|&x: &f64| {
                let z = Complex64::new(x, 0.0);
                let h = 1e-6 * x;
                let j = spherical_bessel_j(l, z).unwrap().re;
                let y = spherical_bessel_y(l, z).unwrap().re;
                let dj = (spherical_bessel_j(l, z + h).unwrap().re
                    - spherical_bessel_j(l, z - h).unwrap().re)
                    / (2.0 * h);
                let dy = (spherical_bessel_y(l, z + h).unwrap().re
                    - spherical_bessel_y(l, z - h).unwrap().re)
                    / (2.0 * h);
                format!("{:9.1e}", x * x * (j * dy - dj * y) - 1.0)
            })
            .collect();
        println!("{l:2}  {}", row.join(" "));
    }

    let quad = SphereQuadrature::default();
    let dir = SphericalDirection::new(0.8, 2.0)?;
    println!(
        "\nY_3^2 at (0.8, 2.0) = {:.12}",
        spherical_harmonic(3, 2, dir)?
    );
    let norm =
        quad.integrate(|d| Complex64::new(spherical_harmonic(4, -3, d).unwrap().norm_sqr(), 0.0));
    let cross = quad.integrate(|d| {
        spherical_harmonic(4, -3, d).unwrap() * spherical_harmonic(2, -3 + 1, d).unwrap().conj()
    });
    println!(
        "∫|Y_4^-3|² = {:.15}, ∫Y_4^-3 conj(Y_2^-2) = {:.1e}",
        norm.re,
        cross.norm()
    );
    Ok(())
}
