//! Numerical checks of the large-|k| estimates of radial solutions: the
//! perturbation bound, the Riccati–Bessel phase asymptotics and the
//! shifted-radius limit at the first ball eigenvalue.

use schiffer_lab::radial::RadialProblem;
use schiffer_lab::radial::{
    verify_perturbation_bound, verify_phase_asymptotics, verify_shifted_radius,
};
use schiffer_lab::scatter::tan_root;
use schiffer_lab::{Complex64, Result};

fn main() -> Result<()> {
    let ks: Vec<Complex64> = [20.0, 40.0, 80.0]
        .iter()
        .map(|&k| Complex64::new(k, 0.0))
        .collect();
    for l in 0..=2usize {
        for (label, problem) in [
            ("p=0", RadialProblem::free(l, ks[0], 1.0)?),
            (
                "p=1",
                RadialProblem::free(l, ks[0], 1.0)?.with_potential(|_| 1.0)?,
            ),
        ] {
            let rep = verify_perturbation_bound(&problem, 1.0, 0.5, &[0.25, 0.5, 0.75], &ks)?;
            let worst = rep.rows.iter().map(|r| r.lhs / r.rhs).fold(0.0, f64::max);
            println!(
                "bound l={l} {label}: holds={} rate_bounded={} max lhs/rhs={worst:.2e}",
                rep.all_hold, rep.rate_bounded
            );
        }
    }

    for l in [0usize, 3, 8] {
        let rep = verify_phase_asymptotics(l, &ks, &[0.5, 1.0])?;
        println!(
            "phase asymptotics l={l}: c_obs={:.3} ceiling={} non-increasing={}",
            rep.c_obs, rep.c_ceiling, rep.deviation_non_increasing
        );
    }

    for r_hat in [1.0, 2.0] {
        let k0 = tan_root(1) / r_hat;
        if k0 < 1.0 {
            println!("\nR̂={r_hat}: k0={k0:.4} is below 1, shifted-radius check skipped");
            continue;
        }
        let rep = verify_shifted_radius(&[2, 4, 8], k0, r_hat)?;
        println!(
            "\nR̂={r_hat} k0={k0:.6} common constant {:.3e} bounded={}",
            rep.common_constant, rep.bounded
        );
        for row in &rep.rows {
            println!(
                "  l={} ξ={:.4} s={:.6e} (ODE {:.6e}) |s-R̂|ξ={:.3e}",
                row.l, row.xi, row.s_closed_form, row.s_integrated, row.scaled_deviation
            );
        }
    }
    Ok(())
}
