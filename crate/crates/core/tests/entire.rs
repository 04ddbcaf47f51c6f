use schiffer_lab::eigsearch::Dispersion;
use schiffer_lab::entire::*;
use schiffer_lab::Complex64;
use std::f64::consts::PI;

fn sin(z: Complex64) -> Complex64 {
    z.sin()
}

#[test]
fn sector_counts() {
    assert_eq!(zero_count_sector(&sin, -0.1, 0.1, 10.0).unwrap().count, 3);
    assert_eq!(
        zero_count_sector(&Dispersion { l: 0, r_hat: 1.0 }, -0.2, 0.2, 12.0)
            .unwrap()
            .count,
        3
    );
    let exp = |z: Complex64| z.exp();
    assert_eq!(zero_count_sector(&exp, 0.3, 2.0, 20.0).unwrap().count, 0);
}

#[test]
fn densities() {
    let radii = [20.0, 50.0, 100.0];
    let d = density(&sin, -0.1, 0.1, &radii).unwrap();
    assert!((d.density - 1.0 / PI).abs() <= 0.05 / PI);
    let d = density(&Dispersion { l: 0, r_hat: 2.0 }, -0.2, 0.2, &radii).unwrap();
    assert!((d.density - 2.0 / PI).abs() <= 0.05 * 2.0 / PI);
    let product = |z: Complex64| z.sin() * (2.0 * z).sin();
    let d = density(&product, -0.2, 0.2, &radii).unwrap();
    assert!((d.density - 3.0 / PI).abs() <= 0.05 * 3.0 / PI);
    assert_eq!(d.rows.len(), 3);
}

#[test]
fn sub_sector_never_denser() {
    let f = Dispersion { l: 1, r_hat: 1.0 };
    let radii = [20.0, 50.0, 100.0];
    let wide = density(&f, -0.2, 0.2, &radii).unwrap();
    let narrow = density(&f, -0.1, 0.1, &radii).unwrap();
    for (a, b) in narrow.ratios().iter().zip(wide.ratios()) {
        assert!(*a <= b);
    }
    let off = density(&f, 0.3, 1.2, &radii).unwrap();
    assert_eq!(off.density, 0.0);
}

#[test]
fn cartwright_counts_track_the_density() {
    for (l, r_hat) in [(0usize, 1.0), (2, 1.0), (0, 2.0)] {
        let f = Dispersion { l, r_hat };
        for r in [20.0, 50.0, 100.0] {
            let n = zero_count_sector(&f, -0.2, 0.2, r).unwrap().count as f64;
            assert!(
                (n - r * r_hat / PI).abs() <= 2.0,
                "l={l} R̂={r_hat} r={r} n={n}"
            );
        }
    }
}

#[test]
fn indicator_examples() {
    let s = indicator(&sin, PI / 2.0, &[10.0, 20.0, 50.0]).unwrap();
    assert!((s.h_extrapolated - 1.0).abs() <= 0.02);
    let d = indicator(
        &Dispersion { l: 0, r_hat: 1.0 },
        PI / 2.0,
        &[20.0, 50.0, 100.0],
    )
    .unwrap();
    assert!((d.h_extrapolated - 1.0).abs() <= 0.03);
    let y = indicator(
        &RadialValue::new(0, 1.0, 0.5).unwrap(),
        PI / 2.0,
        &[20.0, 50.0, 100.0],
    )
    .unwrap();
    assert!((y.h_extrapolated - 0.5).abs() <= 0.03 * 0.5);
}

#[test]
fn indicator_symmetry() {
    let radii = [20.0, 50.0, 100.0];
    for f in [
        RadialValue::new(0, 1.0, 0.25).unwrap(),
        RadialValue::new(2, 1.0, 0.5).unwrap(),
    ] {
        for theta in [0.4, 1.0, PI / 2.0, 2.5] {
            let a = indicator(&f, theta, &radii).unwrap().h_extrapolated;
            let b = indicator(&f, -theta, &radii).unwrap().h_extrapolated;
            assert!((a - b).abs() < 1e-6, "θ={theta}: {a} vs {b}");
        }
    }
}

#[test]
fn type_recovery() {
    let radii = [20.0, 50.0, 100.0];
    let thetas: Vec<f64> = (1..12).map(|i| i as f64 * PI / 12.0).collect();
    for xi in [0.0, 0.25, 0.5] {
        let t = type_estimate(&RadialValue::new(0, 1.0, xi).unwrap(), &thetas, &radii).unwrap();
        assert!(
            (t - (1.0 - xi)).abs() <= 0.05 * (1.0 - xi),
            "ξ={xi} type={t}"
        );
    }
}

#[test]
fn radial_value_is_entire_near_zero() {
    let f = RadialValue::new(0, 1.0, 0.3).unwrap();
    let at_zero = f.eval(Complex64::new(0.0, 0.0));
    let near = f.eval(Complex64::new(1e-7, 0.0));
    assert!((at_zero - near).norm() < 1e-10);
    assert!((at_zero.re - 0.3).abs() < 1e-15);
}
