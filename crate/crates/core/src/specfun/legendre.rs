//! Associated Legendre functions `P_l^m(t) = (1-t²)^{m/2} d^m P_l/dt^m`,
//! without the Condon–Shortley phase.

use crate::error::{Error, Result};

/// Position of `(l, m)`, `0 ≤ m ≤ l`, in a triangular table.
#[inline]
pub fn tri_index(l: usize, m: usize) -> usize {
    l * (l + 1) / 2 + m
}

/// All `P_l^m(t)` for `0 ≤ m ≤ l ≤ l_max`, indexed by [`tri_index`].
pub fn legendre_table(l_max: usize, t: f64) -> Vec<f64> {
    let mut out = vec![0.0; tri_index(l_max, l_max) + 1];
    let s = (1.0 - t * t).max(0.0).sqrt();
    let mut pmm = 1.0;
    for m in 0..=l_max {
        if m > 0 {
            pmm *= (2 * m - 1) as f64 * s;
        }
        out[tri_index(m, m)] = pmm;
        if m < l_max {
            let mut p_prev = pmm;
            let mut p = t * (2 * m + 1) as f64 * pmm;
            out[tri_index(m + 1, m)] = p;
            for l in (m + 2)..=l_max {
                let next =
                    ((2 * l - 1) as f64 * t * p - (l + m - 1) as f64 * p_prev) / (l - m) as f64;
                p_prev = p;
                p = next;
                out[tri_index(l, m)] = p;
            }
        }
    }
    out
}

/// `P_l^{|m|}(t)`.
pub fn legendre(l: usize, m: i64, t: f64) -> Result<f64> {
    let am = m.unsigned_abs() as usize;
    if am > l {
        return Err(Error::Domain(format!("|m| = {am} exceeds l = {l}")));
    }
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t = {t} outside [-1, 1]")));
    }
    Ok(legendre_table(l, t)[tri_index(l, am)])
}

/// `d/dθ P_l^m(cos θ)` for every entry of a table built at `t = cos θ`.
pub fn legendre_theta_derivative_table(l_max: usize, table: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; table.len()];
    for l in 0..=l_max {
        for m in 0..=l {
            let up = if m < l {
                table[tri_index(l, m + 1)]
            } else {
                0.0
            };
            out[tri_index(l, m)] = if m == 0 {
                -up
            } else {
                let down = table[tri_index(l, m - 1)];
                0.5 * ((l + m) as f64 * (l - m + 1) as f64 * down - up)
            };
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_values() {
        assert!((legendre(2, 0, 0.5).unwrap() + 0.125).abs() < 1e-15);
        assert!((legendre(1, 1, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((legendre(1, -1, 0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn no_condon_shortley_phase() {
        // P_1^1 = +sqrt(1-t²)
        assert!(legendre(1, 1, 0.6).unwrap() > 0.0);
        assert!((legendre(3, 3, 0.6).unwrap() - 15.0 * 0.8f64.powi(3)).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(legendre(2, 3, 0.0).is_err());
        assert!(legendre(2, 1, 1.5).is_err());
    }

    #[test]
    fn theta_derivative_matches_finite_difference() {
        let l_max = 7;
        let theta: f64 = 0.9;
        let h = 1e-6;
        let table = legendre_table(l_max, theta.cos());
        let d = legendre_theta_derivative_table(l_max, &table);
        let plus = legendre_table(l_max, (theta + h).cos());
        let minus = legendre_table(l_max, (theta - h).cos());
        for i in 0..table.len() {
            let fd = (plus[i] - minus[i]) / (2.0 * h);
            assert!(
                (fd - d[i]).abs() < 1e-6 * (1.0 + fd.abs()),
                "{i}: {fd} {}",
                d[i]
            );
        }
    }
}
