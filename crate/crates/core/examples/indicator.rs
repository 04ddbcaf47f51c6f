//! Growth indicator of k ↦ y_l(ξ; k) and recovery of its exponential type.

use schiffer_lab::entire::{indicator, type_estimate, RadialValue};
use schiffer_lab::Result;
use std::f64::consts::PI;

fn main() -> Result<()> {
    let radii = [20.0, 50.0, 100.0];
    for xi in [0.0, 0.25, 0.5] {
        let f = RadialValue::new(0, 1.0, xi)?;
        let up = indicator(&f, PI / 2.0, &radii)?;
        let down = indicator(&f, -PI / 2.0, &radii)?;
        let thetas: Vec<f64> = (1..12).map(|i| i as f64 * PI / 12.0).collect();
        println!(
            "ξ={xi:4}: h(π/2)={:.4} h(-π/2)={:.4} type≈{:.4} (expected {})",
            up.h_extrapolated,
            down.h_extrapolated,
            type_estimate(&f, &thetas, &radii)?,
            1.0 - xi
        );
    }
    let f = RadialValue::new(3, 1.0, 0.4)?;
    let s = indicator(&f, PI / 3.0, &radii)?;
    println!(
        "l=3 ξ=0.4 θ=π/3: estimates {:?} -> {:.4}",
        s.h_estimates, s.h_extrapolated
    );
    Ok(())
}
