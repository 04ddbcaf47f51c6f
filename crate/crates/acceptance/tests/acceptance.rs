//! One test per acceptance criterion. Each prints a single
//! `[criterion N] PASS|FAIL ...` line before asserting.

use schiffer_lab::cli;
use schiffer_lab::eigsearch::{
    count_zeros_argument_principle, density_estimate, find_real_eigenvalues, max_scan_step,
    Dispersion, Rect,
};
use schiffer_lab::entire::{indicator, RadialValue};
use schiffer_lab::radial::{
    solve_from_boundary, verify_perturbation_bound, verify_shifted_radius, Direction, RadialProblem,
};
use schiffer_lab::scatter::{
    default_collocation, overdetermined_residual, per_ray_eigen_scan, residual_scan, tan_root,
    StarlikeDomain, DEFAULT_L_TRIAL,
};
use schiffer_lab::specfun::{BesselLimits, SphericalDirection};
use schiffer_lab::Complex64;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

/// Spheroid (aspect 1.2) minimum residual on the 0.02 grid over (0.5, 12],
/// from an independent dense-scan oracle.
const SPHEROID_BASELINE: f64 = 0.129_209_442_523;
const SPHEROID_BASELINE_K: f64 = 0.52;

fn report(n: usize, pass: bool, budget: Duration, start: Instant, detail: String) {
    let elapsed = start.elapsed();
    let pass = pass && elapsed <= budget;
    println!(
        "[criterion {n}] {} {detail} runtime={:.2}s budget={}s",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    assert!(pass, "criterion {n} failed: {detail}");
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn criterion_01_wronskian() {
    let start = Instant::now();
    let limits = BesselLimits::new(21).unwrap();
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let x = 0.1 + (100.0 - 0.1) * i as f64 / 999.0;
        for l in 0..=20 {
            let (j, dj) = limits.j_with_derivative(l, c(x)).unwrap();
            let (y, dy) = limits.y_with_derivative(l, c(x)).unwrap();
            let w = (j * dy - dj * y).re;
            worst = worst.max((w * x * x - 1.0).abs());
        }
    }
    report(
        1,
        worst <= 1e-8,
        Duration::from_secs(5),
        start,
        format!("max_rel_wronskian_error={worst:.3e} tol=1e-8"),
    );
}

#[test]
fn criterion_02_closed_form_equivalence() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for l in 0..=10 {
        for k in [1.0, 5.0, 10.0] {
            let p = RadialProblem::free(l, c(k), 1.0).unwrap();
            for (dir, end) in [(Direction::Inward, 0.05), (Direction::Outward, 3.0)] {
                let sol = solve_from_boundary(&p, dir, end, 0.01).unwrap();
                worst = worst.max(sol.closed_form_mismatch().unwrap().unwrap());
            }
        }
    }
    report(
        2,
        worst <= 1e-6,
        Duration::from_secs(30),
        start,
        format!("max_rel_mismatch={worst:.3e} tol=1e-6"),
    );
}

#[test]
fn criterion_03_density_law() {
    let start = Instant::now();
    let mut worst = (0.0f64, 0usize, 0.0f64);
    for l in [0usize, 1, 2, 5] {
        for r_hat in [0.5, 1.0, 2.0] {
            let k = 200.0 * (1.0f64).max(1.0 / r_hat);
            let d = density_estimate(l, r_hat, k).unwrap();
            if d.relative_gap > worst.0 {
                worst = (d.relative_gap, l, r_hat);
            }
        }
    }
    report(
        3,
        worst.0 <= 0.03,
        Duration::from_secs(120),
        start,
        format!(
            "max_relative_gap={:.4} at l={} R={} tol=0.03",
            worst.0, worst.1, worst.2
        ),
    );
}

#[test]
fn criterion_04_realness() {
    let start = Instant::now();
    let mut discrepancy = 0i64;
    let mut counts = Vec::new();
    for l in 0..=5 {
        let real = find_real_eigenvalues(l, 1.0, 50.0, max_scan_step(1.0), 1e-10)
            .unwrap()
            .iter()
            .filter(|r| r.k > 0.5)
            .count();
        let plane = count_zeros_argument_principle(
            &Dispersion { l, r_hat: 1.0 },
            Rect::new(0.5, 50.0, -3.0, 3.0).unwrap(),
            240,
        )
        .unwrap();
        discrepancy += (plane as i64 - real as i64).abs();
        counts.push(format!("{plane}/{real}"));
    }
    report(
        4,
        discrepancy == 0,
        Duration::from_secs(120),
        start,
        format!(
            "counts(plane/real)={} discrepancy={discrepancy}",
            counts.join(",")
        ),
    );
}

#[test]
fn criterion_05_indicator_type() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for xi in [0.0, 0.25, 0.5] {
        let f = RadialValue::new(0, 1.0, xi).unwrap();
        let h = indicator(&f, PI / 2.0, &[20.0, 50.0, 100.0])
            .unwrap()
            .h_extrapolated;
        let rel = (h - (1.0 - xi)).abs() / (1.0 - xi);
        worst = worst.max(rel);
        parts.push(format!("xi={xi}:h={h:.4}"));
    }
    report(
        5,
        worst <= 0.05,
        Duration::from_secs(60),
        start,
        format!("{} max_rel_dev={worst:.4} tol=0.05", parts.join(" ")),
    );
}

#[test]
fn criterion_06_perturbation_bound() {
    let start = Instant::now();
    let ks: Vec<Complex64> = [20.0, 40.0, 80.0].iter().map(|&k| c(k)).collect();
    let mut all = true;
    let mut worst_ratio = 0.0f64;
    for l in 0..=2usize {
        for constant in [false, true] {
            let mut p = RadialProblem::free(l, ks[0], 1.0).unwrap();
            if constant {
                p = p.with_potential(|_| 1.0).unwrap();
            }
            let rep = verify_perturbation_bound(&p, 1.0, 0.5, &[0.25, 0.5, 0.75], &ks).unwrap();
            all &= rep.all_hold && rep.rate_bounded;
            worst_ratio = rep
                .rows
                .iter()
                .map(|r| r.lhs / r.rhs)
                .fold(worst_ratio, f64::max);
        }
    }
    report(
        6,
        all,
        Duration::from_secs(60),
        start,
        format!("max_lhs_over_rhs={worst_ratio:.3e} all_hold_and_rate_bounded={all}"),
    );
}

#[test]
fn criterion_07_shifted_radius_limit() {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for r_hat in [1.0, 2.0] {
        let k0 = tan_root(1) / r_hat;
        let rep = verify_shifted_radius(&[2, 4, 8], k0, r_hat).unwrap();
        ok &= rep.bounded;
        let devs: Vec<String> = rep
            .rows
            .iter()
            .map(|r| format!("{:.3e}", r.scaled_deviation))
            .collect();
        parts.push(format!(
            "R={r_hat}:dev=[{}],C={:.3e}",
            devs.join(","),
            rep.common_constant
        ));
    }
    report(7, ok, Duration::from_secs(60), start, parts.join(" "));
}

#[test]
fn criterion_08_ball_dichotomy() {
    let start = Instant::now();
    let l = DEFAULT_L_TRIAL;
    let n = default_collocation(l);
    let ball =
        overdetermined_residual(&StarlikeDomain::ball(1.0).unwrap(), 4.493409457909064, l, n)
            .unwrap()
            .residual;
    let spheroid = StarlikeDomain::spheroid(1.2, 8).unwrap();
    let grid: Vec<f64> = (1..=575).map(|i| 0.5 + 0.02 * i as f64).collect();
    let fits = residual_scan(&spheroid, &grid, l, n).unwrap();
    let best = fits
        .iter()
        .min_by(|a, b| a.residual.total_cmp(&b.residual))
        .unwrap();
    let baseline_ok = (best.residual - SPHEROID_BASELINE).abs() <= 1e-6 * SPHEROID_BASELINE
        && (best.k - SPHEROID_BASELINE_K).abs() < 1e-9;
    let pass = ball <= 1e-8 && best.residual >= 10.0 * ball && baseline_ok;
    report(
        8,
        pass,
        Duration::from_secs(600),
        start,
        format!(
            "ball_residual={ball:.3e} spheroid_min={:.12} at_k={:.2} baseline={SPHEROID_BASELINE} ratio={:.3e}",
            best.residual,
            best.k,
            best.residual / ball
        ),
    );
}

#[test]
fn criterion_09_per_ray_surrogate() {
    let start = Instant::now();
    let axes = SphericalDirection::axes();
    let ball = per_ray_eigen_scan(&StarlikeDomain::ball(1.0).unwrap(), &axes, 2, 12.0).unwrap();
    let spheroid =
        per_ray_eigen_scan(&StarlikeDomain::spheroid(1.2, 8).unwrap(), &axes, 2, 12.0).unwrap();
    let pass = ball.density_spread <= 0.02
        && !ball.intersection.is_empty()
        && spheroid.density_spread >= 0.15
        && spheroid.intersection.is_empty();
    report(
        9,
        pass,
        Duration::from_secs(300),
        start,
        format!(
            "ball_spread={:.4} ball_common={} spheroid_spread={:.4} spheroid_common={}",
            ball.density_spread,
            ball.intersection.len(),
            spheroid.density_spread,
            spheroid.intersection.len()
        ),
    );
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["schiffer-lab"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (code, out)
}

#[test]
fn criterion_10_cli_determinism() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scan.json");
    std::fs::write(&cfg, r#"{"l": 2, "r_hat": 1.5, "k_max": 30.0}"#).unwrap();
    let cfg_s = cfg.to_str().unwrap();

    let runs: Vec<(i32, Vec<u8>)> = (0..3)
        .map(|_| run_cli(&["eigen-scan", "--config", cfg_s]))
        .collect();
    let stdout_same = runs.iter().all(|r| r == &runs[0]) && runs[0].0 == 0;

    let files: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let p = dir.path().join(format!("out{i}.json"));
            run_cli(&[
                "--format",
                "json",
                "--out",
                p.to_str().unwrap(),
                "density",
                "--k-max",
                "100",
            ]);
            std::fs::read(p).unwrap()
        })
        .collect();
    let files_same = !files[0].is_empty() && files[0] == files[1];

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"l_max": 200}"#).unwrap();
    let codes = [
        run_cli(&["specfun-check"]).0,
        run_cli(&["domain-residual", "--shape", "ball", "--k", "2"]).0,
        run_cli(&["specfun-check", "--config", bad.to_str().unwrap()]).0,
        run_cli(&["no-such-command"]).0,
    ];
    let codes_ok = codes == [0, 1, 2, 2];
    report(
        10,
        stdout_same && files_same && codes_ok,
        Duration::from_secs(300),
        start,
        format!(
            "stdout_identical={stdout_same} out_files_identical={files_same} exit_codes={codes:?}"
        ),
    );
}
