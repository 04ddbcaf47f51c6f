use proptest::prelude::*;
use schiffer_lab::scatter::*;
use schiffer_lab::specfun::{lm_index, spherical_bessel_j, SphereQuadrature, SphericalDirection};
use schiffer_lab::Complex64;
use std::f64::consts::PI;

/// Real harmonics up to degree 2 written out by hand.
fn real_y_oracle(l: usize, m: i64, d: SphericalDirection) -> f64 {
    let [x, y, z] = d.unit_vector();
    let c0 = (1.0 / (4.0 * PI)).sqrt();
    let c1 = (3.0 / (4.0 * PI)).sqrt();
    let c2 = (15.0 / (4.0 * PI)).sqrt();
    match (l, m) {
        (0, 0) => c0,
        (1, -1) => c1 * y,
        (1, 0) => c1 * z,
        (1, 1) => c1 * x,
        (2, -2) => c2 * x * y,
        (2, -1) => c2 * y * z,
        (2, 0) => (5.0 / (16.0 * PI)).sqrt() * (3.0 * z * z - 1.0),
        (2, 1) => c2 * x * z,
        (2, 2) => 0.5 * c2 * (x * x - y * y),
        _ => unreachable!(),
    }
}

fn directions(n: usize, seed: u64) -> Vec<SphericalDirection> {
    let mut s = seed;
    let mut next = || {
        s = s
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (s >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..n)
        .map(|_| SphericalDirection::new((1.0 - 2.0 * next()).acos(), 2.0 * PI * next()).unwrap())
        .collect()
}

#[test]
fn ray_radius_matches_direct_sum() {
    let entries = [
        (0, 0, 3.4),
        (1, -1, 0.11),
        (1, 1, -0.07),
        (2, -2, 0.05),
        (2, 0, 0.13),
        (2, 1, -0.09),
        (2, 2, 0.02),
    ];
    let dom = StarlikeDomain::from_coeffs(2, &entries).unwrap();
    for d in directions(100, 7) {
        let want: f64 = entries
            .iter()
            .map(|&(l, m, v)| v * real_y_oracle(l, m, d))
            .sum();
        assert!((dom.ray_radius(d).unwrap() - want).abs() < 1e-10);
    }
}

#[test]
fn ball_geometry() {
    let ball = StarlikeDomain::ball(2.0).unwrap();
    for d in directions(20, 3) {
        assert!((ball.ray_radius(d).unwrap() - 2.0).abs() < 1e-14);
        let n = ball.boundary_normal(d).unwrap();
        let u = d.unit_vector();
        assert!((0..3).map(|i| (n[i] - u[i]).abs()).fold(0.0, f64::max) < 1e-12);
    }
}

#[test]
fn tilted_normal() {
    // ρ = 1 + 0.1 cos θ tilts the equatorial normal toward +θ̂ by atan(0.1).
    let c00 = (4.0 * PI).sqrt();
    let c10 = 0.1 * (4.0 * PI / 3.0).sqrt();
    let dom = StarlikeDomain::from_coeffs(1, &[(0, 0, c00), (1, 0, c10)]).unwrap();
    let d = SphericalDirection::new(PI / 2.0, 0.3).unwrap();
    let n = dom.boundary_normal(d).unwrap();
    let [er, et, _] = d.frame();
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    assert!((dot(n, n) - 1.0).abs() < 1e-14);
    assert!((dot(n, et).atan2(dot(n, er)) - 0.1f64.atan()).abs() < 1e-12);
}

#[test]
fn spheroid_projection() {
    let s = StarlikeDomain::spheroid(1.2, 8).unwrap();
    let pole = SphericalDirection::new(0.0, 0.0).unwrap();
    let eq = SphericalDirection::new(PI / 2.0, 0.0).unwrap();
    assert!((s.ray_radius(pole).unwrap() - 1.2).abs() < 1e-3);
    assert!((s.ray_radius(eq).unwrap() - 1.0).abs() < 1e-3);
    assert!(StarlikeDomain::spheroid(-1.0, 4).is_err());
}

#[test]
fn domain_json_round_trip() {
    let dom = StarlikeDomain::from_coeffs(2, &[(0, 0, 3.5), (2, 1, 0.2)]).unwrap();
    let back = StarlikeDomain::from_json_str(&dom.to_json()).unwrap();
    assert_eq!(dom, back);
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), dom.to_json()).unwrap();
    assert_eq!(StarlikeDomain::load(file.path()).unwrap(), dom);

    assert!(
        StarlikeDomain::from_json_str(r#"{"L_geom": 1, "rho_coeffs": [[0, 0, -1.0]]}"#).is_err()
    );
    assert!(
        StarlikeDomain::from_json_str(r#"{"L_geom": 1, "rho_coeffs": [[3, 0, 1.0]]}"#).is_err()
    );
    assert!(StarlikeDomain::from_json_str("{not json").is_err());
}

#[test]
fn far_field_brute_force() {
    let k = 2.5;
    let n_trunc = 2;
    let mut a = vec![Complex64::new(0.0, 0.0); 9];
    let mut s = 11u64;
    for c in a.iter_mut() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
        *c = Complex64::new(
            (s >> 40) as f64 / 1e7 - 0.8,
            (s >> 20 & 0xfffff) as f64 / 1e6 - 0.5,
        );
    }
    let p = FarFieldPattern::new(k, n_trunc, a.clone()).unwrap();
    let dirs = directions(50, 5);
    let got = far_field_from_coeffs(&p, &dirs);
    for (d, g) in dirs.iter().zip(got) {
        let mut want = Complex64::new(0.0, 0.0);
        for n in 0..=n_trunc {
            let phase = Complex64::new(0.0, -1.0).powu(n as u32 + 1);
            for m in -(n as i64)..=n as i64 {
                let y = schiffer_lab::specfun::spherical_harmonic(n, m, *d).unwrap();
                want += phase * a[lm_index(n, m)] * y;
            }
        }
        want /= k;
        assert!((g - want).norm() < 1e-12);
    }
}

#[test]
fn far_field_superposition() {
    let dirs = directions(30, 9);
    let p1 = FarFieldPattern::single(1.3, 3, 2, Complex64::new(0.4, -1.0)).unwrap();
    let p2 = FarFieldPattern::single(1.3, 3, -1, Complex64::new(2.0, 0.5)).unwrap();
    let sum: Vec<Complex64> = p1
        .a_coeffs
        .iter()
        .zip(&p2.a_coeffs)
        .map(|(a, b)| a + b)
        .collect();
    let p = FarFieldPattern::new(1.3, 3, sum).unwrap();
    let (u1, u2, u) = (
        far_field_from_coeffs(&p1, &dirs),
        far_field_from_coeffs(&p2, &dirs),
        far_field_from_coeffs(&p, &dirs),
    );
    for i in 0..dirs.len() {
        assert!((u[i] - u1[i] - u2[i]).norm() < 1e-12);
    }
    assert!(FarFieldPattern::new(1.0, 1, vec![Complex64::new(0.0, 0.0); 3]).is_err());
    assert!(FarFieldPattern::new(0.0, 0, vec![Complex64::new(1.0, 0.0)]).is_err());
}

#[test]
fn rellich_cases() {
    let quad = SphereQuadrature::default();
    let constant: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); quad.directions.len()];
    let e = rellich_expand(&constant, &quad, 1.0, 3).unwrap();
    assert!((e.get(0, 0).re - (4.0 * PI).sqrt()).abs() < 1e-10);
    assert!(e.coeffs[1..].iter().all(|c| c.norm() < 1e-10));

    // Plane-wave partial: u = j_1(k R₀) Y_1^0 on |x| = R₀ with k R₀ = 6.
    let j16 = spherical_bessel_j(1, Complex64::new(6.0, 0.0)).unwrap();
    let samples: Vec<Complex64> = quad
        .directions
        .iter()
        .map(|d| j16 * schiffer_lab::specfun::spherical_harmonic(1, 0, *d).unwrap())
        .collect();
    let e = rellich_expand(&samples, &quad, 2.0, 4).unwrap();
    assert!((e.get(1, 0) - j16).norm() < 1e-12);
    assert!(rellich_expand(&samples[1..], &quad, 2.0, 4).is_err());
}

#[test]
fn ball_eigenfunctions() {
    let b = ball_eigenfunction(1.0, 1).unwrap();
    assert_eq!(b.k, 4.493409457909064);
    assert!((b.value(1.0) - 1.0).abs() < 1e-15);
    assert!(b.derivative(1.0).abs() < 1e-10);
    let b2 = ball_eigenfunction(2.0, 2).unwrap();
    assert!((b2.k - 7.725251836937707 / 2.0).abs() < 1e-14);
    assert!(b2.derivative(2.0).abs() < 1e-10);
    assert!(ball_eigenfunction(1.0, 0).is_err());
    assert!(ball_eigenfunction(1.0, 51).is_err());
    assert!(ball_eigenfunction(0.0, 1).is_err());
}

#[test]
fn ball_residuals() {
    let ball = StarlikeDomain::ball(1.0).unwrap();
    let fit = overdetermined_residual(&ball, tan_root(1), 4, default_collocation(4)).unwrap();
    assert!(fit.residual < 1e-8, "{}", fit.residual);
    assert!(!fit.rank_warning);
    let off = overdetermined_residual(&ball, 2.0, 4, default_collocation(4)).unwrap();
    assert!(off.residual > 1e-2);
    assert!(overdetermined_residual(&ball, 2.0, 4, 10).is_err());
    assert!(overdetermined_residual(&ball, -1.0, 4, 100).is_err());
}

#[test]
fn ray_scans() {
    let ball = StarlikeDomain::ball(1.0).unwrap();
    let scan = per_ray_eigen_scan(&ball, &SphericalDirection::axes(), 2, 12.0).unwrap();
    assert_eq!(scan.density_spread, 0.0);
    assert!(scan
        .intersection
        .iter()
        .any(|k| (k - 4.493409457909064).abs() < 1e-9));

    let spheroid = StarlikeDomain::spheroid(1.2, 8).unwrap();
    let scan = per_ray_eigen_scan(&spheroid, &SphericalDirection::axes(), 2, 12.0).unwrap();
    assert!(scan.intersection.is_empty());
    assert!(scan.density_spread > 0.1);
    assert!(per_ray_eigen_scan(&ball, &[], 2, 12.0).is_err());
}

#[test]
fn fibonacci_points_are_unit_and_spread() {
    let pts = fibonacci_directions(200);
    assert_eq!(pts.len(), 200);
    let mean_z: f64 = pts.iter().map(|d| d.unit_vector()[2]).sum::<f64>() / 200.0;
    assert!(mean_z.abs() < 1e-2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn normals_are_unit(theta in 0.0f64..PI, phi in 0.0f64..(2.0 * PI), a in -0.2f64..0.2, b in -0.2f64..0.2) {
        let dom = StarlikeDomain::from_coeffs(2, &[(0, 0, 4.0), (1, 1, a), (2, -1, b)]).unwrap();
        let n = dom.boundary_normal(SphericalDirection::new(theta, phi).unwrap()).unwrap();
        prop_assert!(((n[0] * n[0] + n[1] * n[1] + n[2] * n[2]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rellich_inverts_synthesis(l in 0usize..=8, m_raw in 0i64..17, re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let m = m_raw % (2 * l as i64 + 1) - l as i64;
        let quad = SphereQuadrature::new(16, 32);
        let c = Complex64::new(re, im);
        let samples: Vec<Complex64> = quad
            .directions
            .iter()
            .map(|d| c * schiffer_lab::specfun::spherical_harmonic(l, m, *d).unwrap())
            .collect();
        let e = rellich_expand(&samples, &quad, 1.0, 8).unwrap();
        for ll in 0..=8usize {
            for mm in -(ll as i64)..=ll as i64 {
                let want = if (ll, mm) == (l, m) { c } else { Complex64::new(0.0, 0.0) };
                prop_assert!((e.get(ll, mm) - want).norm() < 1e-8);
            }
        }
    }
}
