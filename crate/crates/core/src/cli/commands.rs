//! Parameter sets and bodies of the subcommands.

use clap::Args;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::PathBuf;

use super::{CliError, Report, Table};
use crate::eigsearch::{find_real_eigenvalues, max_scan_step, Dispersion, DEFAULT_TOL};
use crate::entire::{density as sector_density, indicator as indicator_samples, RadialValue};
use crate::scatter::{
    ball_eigenfunction, default_collocation, far_field_from_coeffs, fibonacci_directions,
    overdetermined_residual, per_ray_eigen_scan, residual_scan, FarFieldPattern, StarlikeDomain,
    DEFAULT_L_TRIAL,
};
use crate::specfun::{
    lm_index, BesselLimits, HarmonicTable, SphereQuadrature, SphericalDirection, L_MAX_SUPPORTED,
};

type CmdResult = Result<Report, CliError>;

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(config_err(format!("{name} must be positive, got {v}")))
    }
}

fn fmt(v: f64) -> String {
    super::format_float(v)
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecfunParams {
    /// Highest Bessel order checked (at most 100).
    #[arg(long)]
    pub l_max: Option<usize>,
    #[arg(long)]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub n_points: Option<usize>,
    /// Relative tolerance of the Wronskian check.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

pub fn specfun_check(p: SpecfunParams) -> CmdResult {
    let l_max = p.l_max.unwrap_or(20);
    if l_max > L_MAX_SUPPORTED {
        return Err(config_err(format!(
            "l_max = {l_max} exceeds the supported maximum {L_MAX_SUPPORTED}"
        )));
    }
    let x_min = positive("x_min", p.x_min.unwrap_or(0.1))?;
    let x_max = positive("x_max", p.x_max.unwrap_or(100.0))?;
    let n = p.n_points.unwrap_or(1000);
    let tol = positive("tolerance", p.tolerance.unwrap_or(1e-8))?;
    if !(x_max > x_min) || n < 2 {
        return Err(config_err("need x_max > x_min and at least two points"));
    }
    let limits = BesselLimits::new(l_max + 1)?;
    let mut wronskian = vec![0.0f64; l_max + 1];
    let mut recurrence = vec![0.0f64; l_max + 1];
    let mut skipped = 0usize;
    for i in 0..n {
        let x = x_min + (x_max - x_min) * i as f64 / (n - 1) as f64;
        let z = Complex64::new(x, 0.0);
        let j: Vec<f64> = limits.j_seq(l_max + 1, z)?.iter().map(|c| c.re).collect();
        let y: Vec<f64> = match limits.y_seq(l_max + 1, z) {
            Ok(v) => v.iter().map(|c| c.re).collect(),
            Err(crate::Error::Overflow(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        for l in 0..=l_max {
            if j[l].abs() < 1e-280 || y[l + 1].abs() > 1e280 {
                skipped += 1;
                continue;
            }
            let (dj, dy) = if l == 0 {
                (-j[1], -y[1])
            } else {
                (
                    j[l - 1] - (l as f64 + 1.0) / x * j[l],
                    y[l - 1] - (l as f64 + 1.0) / x * y[l],
                )
            };
            wronskian[l] = wronskian[l].max((x * x * (j[l] * dy - dj * y[l]) - 1.0).abs());
            if l >= 1 {
                let rhs = (2 * l + 1) as f64 / x * j[l];
                let scale = j[l - 1].abs().max(j[l + 1].abs()).max(rhs.abs());
                recurrence[l] = recurrence[l].max((j[l - 1] + j[l + 1] - rhs).abs() / scale);
            }
        }
    }

    let l_orth = l_max.min(8);
    let quad = SphereQuadrature::default();
    let nh = (l_orth + 1) * (l_orth + 1);
    let mut gram = vec![Complex64::new(0.0, 0.0); nh * nh];
    for (d, w) in quad.directions.iter().zip(&quad.weights) {
        let t = HarmonicTable::new(l_orth, *d, false);
        for a in 0..nh {
            let ya = t.values[a] * *w;
            for b in 0..nh {
                gram[a * nh + b] += ya * t.values[b].conj();
            }
        }
    }
    let mut orth = vec![0.0f64; l_orth + 1];
    for l in 0..=l_orth {
        for m in -(l as i64)..=l as i64 {
            let a = lm_index(l, m);
            for b in 0..nh {
                let want = if a == b { 1.0 } else { 0.0 };
                orth[l] = orth[l].max((gram[a * nh + b] - want).norm());
            }
        }
    }

    let mut table = Table::new(&["check", "l", "max_error", "tolerance", "pass"]);
    let mut pass = true;
    let mut add = |name: &str, l: usize, err: f64, tol: f64| {
        let ok = err <= tol;
        pass &= ok;
        table.push(vec![
            name.into(),
            l.into(),
            err.into(),
            tol.into(),
            ok.into(),
        ]);
    };
    for l in 0..=l_max {
        add("wronskian", l, wronskian[l], tol);
    }
    for l in 1..=l_max {
        add("recurrence", l, recurrence[l], 1e-10);
    }
    for l in 0..=l_orth {
        add("orthonormality", l, orth[l], 1e-10);
    }
    let worst = wronskian.iter().cloned().fold(0.0, f64::max);
    Ok(Report {
        table,
        pass,
        summary: vec![
            ("l_max", l_max.to_string()),
            ("wronskian_max", fmt(worst)),
            ("skipped", skipped.to_string()),
        ],
    })
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenScanParams {
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub r_hat: Option<f64>,
    #[arg(long)]
    pub k_max: Option<f64>,
    /// Defaults to π/(8R̂).
    #[arg(long)]
    pub scan_step: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
}

pub fn eigen_scan(p: EigenScanParams) -> CmdResult {
    let l = p.l.unwrap_or(0);
    let r_hat = positive("r_hat", p.r_hat.unwrap_or(1.0))?;
    let k_max = positive("k_max", p.k_max.unwrap_or(12.0))?;
    let step = positive(
        "scan_step",
        p.scan_step.unwrap_or(max_scan_step(r_hat) / 2.0),
    )?;
    let tol = positive("tol", p.tol.unwrap_or(DEFAULT_TOL))?;
    let records = find_real_eigenvalues(l, r_hat, k_max, step, tol)?;
    let mut table = Table::new(&["l", "k", "residual", "bracket_lo", "bracket_hi"]);
    for r in &records {
        table.push(vec![
            r.l.into(),
            r.k.into(),
            r.residual.into(),
            r.bracket.0.into(),
            r.bracket.1.into(),
        ]);
    }
    let warnings = records.iter().filter(|r| r.near_coincident).count();
    Ok(Report {
        table,
        pass: true,
        summary: vec![
            ("count", records.len().to_string()),
            ("near_coincident", warnings.to_string()),
        ],
    })
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityParams {
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub r_hat: Option<f64>,
    /// Largest radius `K`; the table also reports `K/4` and `K/2`.
    #[arg(long)]
    pub k_max: Option<f64>,
    /// Half-opening of the sector around the positive real axis.
    #[arg(long)]
    pub half_angle: Option<f64>,
    /// Allowed relative gap to `R̂/π` at `K`.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

pub fn density(p: DensityParams) -> CmdResult {
    let l = p.l.unwrap_or(0);
    let r_hat = positive("r_hat", p.r_hat.unwrap_or(1.0))?;
    let k_max = positive(
        "k_max",
        p.k_max.unwrap_or(200.0 * (1.0f64).max(1.0 / r_hat)),
    )?;
    let half = positive("half_angle", p.half_angle.unwrap_or(0.2))?;
    let tol = positive("tolerance", p.tolerance.unwrap_or(0.03))?;
    let radii = [k_max / 4.0, k_max / 2.0, k_max];
    let f = Dispersion { l, r_hat };
    let sector = sector_density(&f, -half, half, &radii)?;
    let real = find_real_eigenvalues(l, r_hat, k_max, max_scan_step(r_hat) / 2.0, DEFAULT_TOL)?;
    let target = r_hat / PI;
    let mut table = Table::new(&[
        "r",
        "sector_count",
        "real_count",
        "density",
        "target",
        "relative_gap",
    ]);
    let mut last_gap = 0.0;
    for row in &sector.rows {
        let real_count = real.iter().filter(|e| e.k > 0.5 && e.k <= row.r).count();
        let d = row.count as f64 / row.r;
        last_gap = (d - target).abs() / target;
        table.push(vec![
            row.r.into(),
            row.count.into(),
            real_count.into(),
            d.into(),
            target.into(),
            last_gap.into(),
        ]);
    }
    Ok(Report {
        table,
        pass: last_gap <= tol,
        summary: vec![
            ("density", fmt(sector.density)),
            ("target", fmt(target)),
            ("relative_gap", fmt(last_gap)),
        ],
    })
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndicatorParams {
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub r_hat: Option<f64>,
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    /// Comma-separated increasing radii, largest at least 50.
    #[arg(long, value_delimiter = ',')]
    pub r_values: Option<Vec<f64>>,
    /// Allowed relative deviation from `(R̂ - ξ)|sin θ|`.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

pub fn indicator(p: IndicatorParams) -> CmdResult {
    let l = p.l.unwrap_or(0);
    let r_hat = positive("r_hat", p.r_hat.unwrap_or(1.0))?;
    let xi = p.xi.unwrap_or(0.0);
    let theta = p.theta.unwrap_or(PI / 2.0);
    let radii = p.r_values.unwrap_or_else(|| vec![20.0, 50.0, 100.0]);
    let tol = positive("tolerance", p.tolerance.unwrap_or(0.05))?;
    let f = RadialValue::new(l, r_hat, xi)?;
    let s = indicator_samples(&f, theta, &radii)?;
    let target = (r_hat - xi) * theta.sin().abs();
    let mut table = Table::new(&["theta", "r", "h_estimate", "h_extrapolated", "target"]);
    for (r, h) in s.r_values.iter().zip(&s.h_estimates) {
        table.push(vec![
            theta.into(),
            (*r).into(),
            (*h).into(),
            s.h_extrapolated.into(),
            target.into(),
        ]);
    }
    let err = (s.h_extrapolated - target).abs();
    let pass = if target > 0.0 {
        err <= tol * target
    } else {
        err <= tol
    };
    Ok(Report {
        table,
        pass,
        summary: vec![("h", fmt(s.h_extrapolated)), ("target", fmt(target))],
    })
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallCheckParams {
    #[arg(long)]
    pub radius: Option<f64>,
    /// Mode index, 1 to 50.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub l_trial: Option<usize>,
    #[arg(long)]
    pub n_collocation: Option<usize>,
    #[arg(long)]
    pub threshold: Option<f64>,
}

pub fn ball_check(p: BallCheckParams) -> CmdResult {
    let radius = positive("radius", p.radius.unwrap_or(1.0))?;
    let n = p.n.unwrap_or(1);
    let l_trial = p.l_trial.unwrap_or(4);
    let n_col = p.n_collocation.unwrap_or(default_collocation(l_trial));
    let threshold = positive("threshold", p.threshold.unwrap_or(1e-8))?;
    let e = ball_eigenfunction(radius, n)?;
    let fit = overdetermined_residual(&StarlikeDomain::ball(radius)?, e.k, l_trial, n_col)?;
    let du = e.derivative(radius);
    let mut table = Table::new(&["n", "radius", "k", "u_boundary", "du_boundary", "residual"]);
    table.push(vec![
        n.into(),
        radius.into(),
        e.k.into(),
        e.value(radius).into(),
        du.into(),
        fit.residual.into(),
    ]);
    Ok(Report {
        table,
        pass: fit.residual <= threshold && du.abs() <= 1e-10,
        summary: vec![("k", fmt(e.k)), ("residual", fmt(fit.residual))],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Ball,
    Spheroid,
}

fn build_domain(
    file: &Option<PathBuf>,
    shape: Option<Shape>,
    aspect: Option<f64>,
    l_geom: Option<usize>,
) -> Result<StarlikeDomain, CliError> {
    if let Some(path) = file {
        if !path.exists() {
            return Err(config_err(format!(
                "domain file {} does not exist",
                path.display()
            )));
        }
        return StarlikeDomain::load(path).map_err(|e| config_err(e.to_string()));
    }
    Ok(match shape.unwrap_or(Shape::Ball) {
        Shape::Ball => StarlikeDomain::ball(1.0)?,
        Shape::Spheroid => StarlikeDomain::spheroid(
            positive("aspect", aspect.unwrap_or(1.2))?,
            l_geom.unwrap_or(8),
        )?,
    })
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainResidualParams {
    /// Domain file; overrides `--shape`.
    #[arg(long)]
    pub domain: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub shape: Option<Shape>,
    #[arg(long)]
    pub aspect: Option<f64>,
    #[arg(long)]
    pub l_geom: Option<usize>,
    /// Single frequency; otherwise the grid `k_min + i·k_step ≤ k_max`, `i ≥ 1`.
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub k_min: Option<f64>,
    #[arg(long)]
    pub k_max: Option<f64>,
    #[arg(long)]
    pub k_step: Option<f64>,
    #[arg(long)]
    pub l_trial: Option<usize>,
    #[arg(long)]
    pub n_collocation: Option<usize>,
    /// A fit passes when its residual is at most this.
    #[arg(long)]
    pub threshold: Option<f64>,
}

pub fn domain_residual(p: DomainResidualParams) -> CmdResult {
    let domain = build_domain(&p.domain, p.shape, p.aspect, p.l_geom)?;
    let ks = match p.k {
        Some(k) => vec![positive("k", k)?],
        None => {
            let lo = p.k_min.unwrap_or(0.5);
            let hi = positive("k_max", p.k_max.unwrap_or(12.0))?;
            let step = positive("k_step", p.k_step.unwrap_or(0.02))?;
            let n = ((hi - lo) / step + 1e-9).floor() as usize;
            if n == 0 || lo < 0.0 {
                return Err(config_err("empty frequency range"));
            }
            (1..=n).map(|i| lo + step * i as f64).collect()
        }
    };
    let l_trial = p.l_trial.unwrap_or(DEFAULT_L_TRIAL);
    let n_col = p.n_collocation.unwrap_or(default_collocation(l_trial));
    let threshold = positive("threshold", p.threshold.unwrap_or(1e-8))?;
    let fits = residual_scan(&domain, &ks, l_trial, n_col)?;
    let mut table = Table::new(&["k", "residual", "normal_condition", "rank_warning"]);
    for f in &fits {
        table.push(vec![
            f.k.into(),
            f.residual.into(),
            f.normal_condition.into(),
            f.rank_warning.into(),
        ]);
    }
    let best = fits
        .iter()
        .min_by(|a, b| a.residual.total_cmp(&b.residual))
        .expect("nonempty grid");
    Ok(Report {
        table,
        pass: best.residual <= threshold,
        summary: vec![("min_residual", fmt(best.residual)), ("at_k", fmt(best.k))],
    })
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayScanParams {
    #[arg(long)]
    pub domain: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub shape: Option<Shape>,
    #[arg(long)]
    pub aspect: Option<f64>,
    #[arg(long)]
    pub l_geom: Option<usize>,
    /// Number of Fibonacci-lattice rays; the six coordinate axes when absent.
    #[arg(long)]
    pub directions: Option<usize>,
    #[arg(long)]
    pub l_max: Option<usize>,
    #[arg(long)]
    pub k_max: Option<f64>,
    /// Largest density spread still read as ball-like.
    #[arg(long)]
    pub spread_tolerance: Option<f64>,
}

pub fn ray_scan(p: RayScanParams) -> CmdResult {
    let domain = build_domain(&p.domain, p.shape, p.aspect, p.l_geom)?;
    let dirs = match p.directions {
        Some(0) => return Err(config_err("need at least one direction")),
        Some(n) => fibonacci_directions(n),
        None => SphericalDirection::axes(),
    };
    let k_max = positive("k_max", p.k_max.unwrap_or(12.0))?;
    let spread_tol = positive("spread_tolerance", p.spread_tolerance.unwrap_or(0.02))?;
    let scan = per_ray_eigen_scan(&domain, &dirs, p.l_max.unwrap_or(0), k_max)?;
    let mut table = Table::new(&[
        "ray", "theta", "phi", "r_hat", "density", "l", "k", "common",
    ]);
    for (i, r) in scan.reports.iter().enumerate() {
        for (l, list) in r.eigenvalues.iter().enumerate() {
            for e in list {
                let common = scan
                    .intersection
                    .iter()
                    .any(|k| (k - e.k).abs() <= crate::scatter::MATCH_TOL * k);
                table.push(vec![
                    i.into(),
                    r.direction.theta.into(),
                    r.direction.phi.into(),
                    r.r_hat.into(),
                    r.density.density.into(),
                    l.into(),
                    e.k.into(),
                    common.into(),
                ]);
            }
        }
    }
    Ok(Report {
        table,
        pass: scan.density_spread <= spread_tol && !scan.intersection.is_empty(),
        summary: vec![
            ("density_spread", fmt(scan.density_spread)),
            ("common", scan.intersection.len().to_string()),
        ],
    })
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FarfieldParams {
    /// JSON file `{"k": .., "n_trunc": .., "coeffs": [[n, m, re, im], ..]}`;
    /// a unit monopole at `k = 1` when absent.
    #[arg(long)]
    pub coeffs: Option<PathBuf>,
    /// Number of Fibonacci-lattice output directions.
    #[arg(long)]
    pub n_directions: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffFile {
    k: f64,
    n_trunc: usize,
    coeffs: Vec<(usize, i64, f64, f64)>,
}

pub fn farfield(p: FarfieldParams) -> CmdResult {
    let pattern = match &p.coeffs {
        None => FarFieldPattern::single(1.0, 0, 0, Complex64::new(1.0, 0.0))?,
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| config_err(format!("{}: {e}", path.display())))?;
            let file: CoeffFile = serde_json::from_str(&text)
                .map_err(|e| config_err(format!("{}: {e}", path.display())))?;
            let mut a = vec![Complex64::new(0.0, 0.0); (file.n_trunc + 1) * (file.n_trunc + 1)];
            for (n, m, re, im) in file.coeffs {
                if n > file.n_trunc || m.unsigned_abs() as usize > n {
                    return Err(config_err(format!("coefficient ({n}, {m}) out of range")));
                }
                a[lm_index(n, m)] = Complex64::new(re, im);
            }
            FarFieldPattern::new(file.k, file.n_trunc, a)?
        }
    };
    let dirs = fibonacci_directions(p.n_directions.unwrap_or(32).max(1));
    let values = far_field_from_coeffs(&pattern, &dirs);
    let mut table = Table::new(&["theta", "phi", "re", "im"]);
    for (d, v) in dirs.iter().zip(&values) {
        table.push(vec![d.theta.into(), d.phi.into(), v.re.into(), v.im.into()]);
    }
    let pass = values.iter().all(|v| v.re.is_finite() && v.im.is_finite());
    Ok(Report {
        table,
        pass,
        summary: vec![("tail_energy", fmt(pattern.tail_energy()))],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_scan_defaults() {
        let r = eigen_scan(EigenScanParams::default()).unwrap();
        assert_eq!(r.table.rows.len(), 3);
        assert!(r.pass);
    }

    #[test]
    fn specfun_rejects_large_order() {
        let r = specfun_check(SpecfunParams {
            l_max: Some(200),
            ..Default::default()
        });
        assert!(matches!(r, Err(CliError::Config(_))));
    }
}
