//! The overdetermined boundary fit u = 1, ∂u/∂ν = 0: exact for the ball at
//! its Neumann eigenvalues, bounded away from zero for a spheroid.

use schiffer_lab::scatter::{
    ball_eigenfunction, default_collocation, overdetermined_residual, residual_convergence,
    residual_scan, StarlikeDomain,
};
use schiffer_lab::Result;

fn main() -> Result<()> {
    let ball = StarlikeDomain::ball(1.0)?;
    for n in 1..=3 {
        let e = ball_eigenfunction(1.0, n)?;
        let fit = overdetermined_residual(&ball, e.k, 4, default_collocation(4))?;
        println!(
            "ball mode {n}: k={:.12} u'(1)={:.1e} residual={:.2e}",
            e.k,
            e.derivative(1.0),
            fit.residual
        );
    }
    println!(
        "ball at k=2: residual={:.4}",
        overdetermined_residual(&ball, 2.0, 4, default_collocation(4))?.residual
    );

    let spheroid = StarlikeDomain::spheroid(1.2, 8)?;
    let ks: Vec<f64> = (1..=115).map(|i| 0.5 + 0.1 * i as f64).collect();
    let fits = residual_scan(&spheroid, &ks, 8, default_collocation(8))?;
    let best = fits
        .iter()
        .min_by(|a, b| a.residual.total_cmp(&b.residual))
        .unwrap();
    println!(
        "spheroid (aspect 1.2), k in (0.5, 12] step 0.1: min residual {:.6} at k={:.2}",
        best.residual, best.k
    );
    for f in residual_convergence(&spheroid, best.k, &[2, 4, 6, 8])? {
        println!("  L_trial={}: residual {:.8}", f.l_trial, f.residual);
    }
    Ok(())
}
