//! Real zeros of the dispersion function and an argument-principle
//! certificate that no zeros lie off the real axis.

use schiffer_lab::eigsearch::{
    count_zeros_argument_principle, find_real_eigenvalues, max_scan_step, Dispersion, Rect,
};
use schiffer_lab::Result;

fn main() -> Result<()> {
    for l in [0usize, 1, 4] {
        let roots = find_real_eigenvalues(l, 1.0, 20.0, max_scan_step(1.0), 1e-10)?;
        let ks: Vec<String> = roots.iter().map(|r| format!("{:.10}", r.k)).collect();
        println!("l={l}: {}", ks.join(", "));
    }

    let k_max = 50.0;
    for l in 0..=5usize {
        let real = find_real_eigenvalues(l, 1.0, k_max, max_scan_step(1.0), 1e-10)?
            .iter()
            .filter(|r| r.k > 0.5)
            .count();
        let plane = count_zeros_argument_principle(
            &Dispersion { l, r_hat: 1.0 },
            Rect::new(0.5, k_max, -3.0, 3.0)?,
            240,
        )?;
        println!("l={l}: {real} real zeros in (0.5, {k_max}], {plane} zeros in the rectangle");
    }
    Ok(())
}
