//! The radial problem anchored at R̂: integrate inward to the origin and
//! outward past the anchor, and compare with the Riccati–Bessel closed form.

use schiffer_lab::radial::{boundary_residuals, solve_from_boundary, Direction, RadialProblem};
use schiffer_lab::{Complex64, Result};

fn main() -> Result<()> {
    for (l, k) in [(0usize, 1.0), (2, 5.0), (6, 10.0)] {
        let kc = Complex64::new(k, 0.0);
        let problem = RadialProblem::free(l, kc, 1.0)?;
        let inward = solve_from_boundary(&problem, Direction::Inward, 0.0, 0.05)?;
        let outward = solve_from_boundary(&problem, Direction::Outward, 3.0, 0.05)?;
        let res = boundary_residuals(&outward, 1.0, kc)?;
        println!(
            "l={l:2} k={k:4}: inward stops at r={:.3}, y there = {:.6e}; mismatch in/out = {:.1e}/{:.1e}; F={:.1e} G={:.1e}",
            inward.grid[0],
            inward.y[0].re,
            inward.closed_form_mismatch()?.unwrap_or(f64::NAN),
            outward.closed_form_mismatch()?.unwrap_or(f64::NAN),
            res.f.norm(),
            res.g.norm(),
        );
    }

    let with_potential =
        RadialProblem::free(0, Complex64::new(3.0, 0.0), 1.0)?.with_potential(|r| 1.0 + r)?;
    let sol = solve_from_boundary(&with_potential, Direction::Inward, 0.0, 0.1)?;
    println!("\np(r) = 1 + r, l=0, k=3: y(0) = {:.10}", sol.y[0].re);
    let (y, dy) = sol.value_at(0.37)?;
    println!(
        "interpolated y(0.37) = {:.10}, y'(0.37) = {:.10}",
        y.re, dy.re
    );
    Ok(())
}
