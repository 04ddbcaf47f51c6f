//! Zero counts of dispersion functions against the density R̂/π, by real
//! scanning and by sector contours.

use schiffer_lab::eigsearch::{density_estimate, Dispersion};
use schiffer_lab::entire::density;
use schiffer_lab::{Complex64, Result};

fn main() -> Result<()> {
    println!(" l   R̂      K   count   density   target   gap");
    for l in [0usize, 1, 2, 5] {
        for r_hat in [0.5, 1.0, 2.0] {
            let k = 200.0 * (1.0f64).max(1.0 / r_hat);
            let d = density_estimate(l, r_hat, k)?;
            println!(
                "{l:2} {r_hat:4} {k:6} {:6} {:9.4} {:8.4} {:5.2}%",
                d.count,
                d.density,
                d.target,
                100.0 * d.relative_gap
            );
        }
    }

    let radii = [20.0, 50.0, 100.0];
    let sine = |z: Complex64| z.sin();
    let product = |z: Complex64| z.sin() * (2.0 * z).sin();
    println!("\nsector (-0.2, 0.2), r = {radii:?}");
    println!(
        "sin          N/r = {:?}",
        density(&sine, -0.2, 0.2, &radii)?.ratios()
    );
    println!(
        "sin k sin 2k N/r = {:?}",
        density(&product, -0.2, 0.2, &radii)?.ratios()
    );
    println!(
        "B_0, R̂=2     N/r = {:?}",
        density(&Dispersion { l: 0, r_hat: 2.0 }, -0.2, 0.2, &radii)?.ratios()
    );
    Ok(())
}
