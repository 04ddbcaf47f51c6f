//! Per-ray eigenvalue lists of a ball and a spheroid: equal densities and a
//! shared spectrum for the ball only.

use schiffer_lab::scatter::{per_ray_eigen_scan, StarlikeDomain};
use schiffer_lab::specfun::SphericalDirection;
use schiffer_lab::Result;

fn main() -> Result<()> {
    let axes = SphericalDirection::axes();
    for (name, domain) in [
        ("ball", StarlikeDomain::ball(1.0)?),
        ("spheroid", StarlikeDomain::spheroid(1.2, 8)?),
    ] {
        let scan = per_ray_eigen_scan(&domain, &axes, 1, 12.0)?;
        println!(
            "{name}: density spread {:.2}%, common eigenvalues {:?}",
            100.0 * scan.density_spread,
            scan.intersection
        );
        for r in &scan.reports {
            let l0: Vec<String> = r.eigenvalues[0]
                .iter()
                .map(|e| format!("{:.5}", e.k))
                .collect();
            println!(
                "  θ={:.3} φ={:.3} R̂={:.5} density={:.4} l=0: {}",
                r.direction.theta,
                r.direction.phi,
                r.r_hat,
                r.density.density,
                l0.join(" ")
            );
        }
    }
    Ok(())
}
