//! Dormand–Prince 5(4) integrator with continuous (dense) output for complex
//! first-order systems `u' = f(t, u)`, integrating forward or backward in `t`.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type State<const N: usize> = [Complex64; N];

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Tolerances and step limits.
#[derive(Debug, Clone, Copy)]
pub struct Dopri5Options {
    pub atol: f64,
    pub rtol: f64,
    pub max_steps: usize,
    pub h_max: f64,
}

impl Default for Dopri5Options {
    fn default() -> Self {
        Self {
            atol: 1e-10,
            rtol: 1e-9,
            max_steps: 1_000_000,
            h_max: f64::INFINITY,
        }
    }
}

fn axpy<const N: usize>(y: &State<N>, terms: &[(f64, &State<N>)], h: f64) -> State<N> {
    let mut out = *y;
    for (c, k) in terms {
        if *c != 0.0 {
            for i in 0..N {
                out[i] += k[i] * (h * c);
            }
        }
    }
    out
}

fn err_norm<const N: usize>(
    y0: &State<N>,
    y1: &State<N>,
    err: &State<N>,
    o: &Dopri5Options,
) -> f64 {
    let mut acc = 0.0;
    for i in 0..N {
        let scale = o.atol + o.rtol * y0[i].norm().max(y1[i].norm());
        acc += (err[i].re / scale).powi(2) + (err[i].im / scale).powi(2);
    }
    (acc / (2 * N) as f64).sqrt()
}

/// Integrate from `t0` to `t_end` and return the state at each requested
/// output time. `outputs` must be monotone in the direction of integration
/// and lie within `[t0, t_end]`; values between accepted steps come from the
/// continuous extension.
pub fn integrate<const N: usize, F>(
    f: F,
    t0: f64,
    y0: State<N>,
    t_end: f64,
    outputs: &[f64],
    opts: &Dopri5Options,
) -> Result<Vec<State<N>>>
where
    F: Fn(f64, &State<N>) -> State<N>,
{
    let dir = if t_end >= t0 { 1.0 } else { -1.0 };
    let mut out = Vec::with_capacity(outputs.len());
    let mut next_out = 0;
    while next_out < outputs.len() && (outputs[next_out] - t0) * dir <= 0.0 {
        out.push(y0);
        next_out += 1;
    }
    if t_end == t0 {
        while out.len() < outputs.len() {
            out.push(y0);
        }
        return Ok(out);
    }

    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = initial_step(&f, t, &y, &k1, dir, opts)
        .min((t_end - t0).abs())
        .min(opts.h_max);
    let mut steps = 0usize;
    let mut fac_old: f64 = 1e-4;

    while (t_end - t) * dir > 0.0 {
        steps += 1;
        if steps > opts.max_steps || h < 1e-14 * t.abs().max(1e-300) {
            return Err(Error::StepSizeFailure { reached: t });
        }
        let last = (t + dir * h - t_end) * dir >= 0.0;
        if last {
            h = (t_end - t).abs();
        }
        let hs = dir * h;
        let k2 = f(t + C2 * hs, &axpy(&y, &[(A21, &k1)], hs));
        let k3 = f(t + C3 * hs, &axpy(&y, &[(A31, &k1), (A32, &k2)], hs));
        let k4 = f(
            t + C4 * hs,
            &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], hs),
        );
        let k5 = f(
            t + C5 * hs,
            &axpy(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], hs),
        );
        let k6 = f(
            t + hs,
            &axpy(
                &y,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                hs,
            ),
        );
        let y_new = axpy(
            &y,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
            hs,
        );
        let k7 = f(t + hs, &y_new);
        let mut e = [Complex64::new(0.0, 0.0); N];
        for i in 0..N {
            e[i] =
                (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * hs;
        }
        let err = err_norm(&y, &y_new, &e, opts);
        if !err.is_finite() {
            h *= 0.2;
            continue;
        }
        // PI step-size controller.
        let fac11 = err.powf(0.17);
        let fac = (fac11 / fac_old.powf(0.04) / 0.9).clamp(0.1, 5.0);
        let h_new = (h / fac).min(opts.h_max);
        if err <= 1.0 {
            fac_old = err.max(1e-4);
            let t_new = t + hs;
            // dense output coefficients
            let mut r1 = [Complex64::new(0.0, 0.0); N];
            let mut r2 = r1;
            let mut r3 = r1;
            let mut r4 = r1;
            let mut r5 = r1;
            for i in 0..N {
                let dy = y_new[i] - y[i];
                let bspl = k1[i] * hs - dy;
                r1[i] = y[i];
                r2[i] = dy;
                r3[i] = bspl;
                r4[i] = dy - k7[i] * hs - bspl;
                r5[i] =
                    (k1[i] * D1 + k3[i] * D3 + k4[i] * D4 + k5[i] * D5 + k6[i] * D6 + k7[i] * D7)
                        * hs;
            }
            while next_out < outputs.len() && (outputs[next_out] - t_new) * dir <= 0.0 {
                let theta = (outputs[next_out] - t) / hs;
                let theta1 = 1.0 - theta;
                let mut v = [Complex64::new(0.0, 0.0); N];
                for i in 0..N {
                    v[i] = r1[i]
                        + (r2[i] + (r3[i] + (r4[i] + r5[i] * theta1) * theta) * theta1) * theta;
                }
                out.push(v);
                next_out += 1;
            }
            t = if last { t_end } else { t_new };
            y = y_new;
            k1 = k7;
            h = h_new;
        } else {
            h /= (fac11 / 0.9).min(10.0);
        }
    }
    while out.len() < outputs.len() {
        out.push(y);
    }
    Ok(out)
}

fn initial_step<const N: usize, F>(
    f: &F,
    t: f64,
    y: &State<N>,
    k1: &State<N>,
    dir: f64,
    o: &Dopri5Options,
) -> f64
where
    F: Fn(f64, &State<N>) -> State<N>,
{
    let mut dnf = 0.0;
    let mut dny = 0.0;
    for i in 0..N {
        let sk = o.atol + o.rtol * y[i].norm();
        dnf += (k1[i].norm() / sk).powi(2);
        dny += (y[i].norm() / sk).powi(2);
    }
    let mut h = if dnf <= 1e-10 || dny <= 1e-10 {
        1e-6
    } else {
        (dny / dnf).sqrt() * 0.01
    };
    let y1 = axpy(y, &[(1.0, k1)], dir * h);
    let k2 = f(t + dir * h, &y1);
    let mut der2 = 0.0;
    for i in 0..N {
        let sk = o.atol + o.rtol * y[i].norm();
        der2 += ((k2[i] - k1[i]).norm() / sk).powi(2);
    }
    let der2 = der2.sqrt() / h;
    let der12 = der2.max(dnf.sqrt());
    let h1 = if der12 <= 1e-15 {
        (h * 1e-3).max(1e-6)
    } else {
        (0.01 / der12).powf(0.2)
    };
    h = (100.0 * h).min(h1);
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_dense_output() {
        let k = 3.0;
        let f = |_t: f64, u: &State<2>| [u[1], -(k * k) * u[0]];
        let outs: Vec<f64> = (0..=100).map(|i| i as f64 * 0.05).collect();
        let sol = integrate(
            f,
            0.0,
            [Complex64::new(0.0, 0.0), Complex64::new(k, 0.0)],
            5.0,
            &outs,
            &Default::default(),
        )
        .unwrap();
        for (t, u) in outs.iter().zip(&sol) {
            assert!((u[0].re - (k * t).sin()).abs() < 1e-8, "t={t}");
            assert!((u[1].re - k * (k * t).cos()).abs() < 1e-7);
        }
    }

    #[test]
    fn backward_integration() {
        let f = |_t: f64, u: &State<1>| [u[0]];
        let sol = integrate(
            f,
            1.0,
            [Complex64::new(1.0, 0.0)],
            0.0,
            &[0.5, 0.0],
            &Default::default(),
        )
        .unwrap();
        assert!((sol[0][0].re - (-0.5f64).exp()).abs() < 1e-9);
        assert!((sol[1][0].re - (-1.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn complex_growth() {
        let lam = Complex64::new(0.5, 2.0);
        let f = move |_t: f64, u: &State<1>| [u[0] * lam];
        let sol = integrate(
            f,
            0.0,
            [Complex64::new(1.0, 0.0)],
            2.0,
            &[2.0],
            &Default::default(),
        )
        .unwrap();
        assert!((sol[0][0] - (lam * 2.0).exp()).norm() < 1e-8 * (lam * 2.0).exp().norm());
    }
}
