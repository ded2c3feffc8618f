//! Bessel functions of the first kind, integer order, real argument.
//!
//! Orders are generated by Miller's backward recurrence
//! `J_{n-1} = (2n/z) J_n - J_{n+1}` and normalized with
//! `J_0 + 2 sum_k J_{2k} = 1`. Forward recurrence is never used.

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 10_000;
pub const MAX_ARGUMENT: f64 = 1e6;

const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

fn check_envelope(order: usize, z: f64) -> Result<()> {
    if order > MAX_ORDER || !(0.0..=MAX_ARGUMENT).contains(&z) || z.is_nan() {
        return Err(Error::BesselEnvelope { order, z });
    }
    Ok(())
}

/// Even starting index comfortably above both `n` and `z`.
fn start_index(n: usize, z: f64) -> usize {
    let base = (n as f64).max(z);
    let m = (base + 12.0 * z.cbrt() + 30.0).ceil() as usize;
    m + (m & 1)
}

/// `J_0(z), ..., J_{n_max}(z)`. Entries below roughly `1e-300` flush to zero.
/// Only the argument envelope applies here; the order is bounded by memory.
pub fn bessel_sequence(n_max: usize, z: f64) -> Result<Vec<f64>> {
    if z.is_nan() || z < 0.0 || z > MAX_ARGUMENT {
        return Err(Error::BesselEnvelope { order: n_max, z });
    }
    let mut out = vec![0.0; n_max + 1];
    if z == 0.0 {
        out[0] = 1.0;
        return Ok(out);
    }
    let m = start_index(n_max, z);
    let mut next = 0.0;
    let mut cur = 1e-300;
    let mut norm = 0.0;
    for n in (1..=m).rev() {
        // cur = J_n (unnormalized), next = J_{n+1}.
        if n <= n_max {
            out[n] = cur;
        }
        if n % 2 == 0 {
            norm += 2.0 * cur;
        }
        let prev = (2.0 * n as f64 / z) * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            next *= RESCALE_BY;
            norm *= RESCALE_BY;
            for v in out.iter_mut().skip(n.min(n_max + 1)) {
                *v *= RESCALE_BY;
            }
        }
    }
    out[0] = cur;
    norm += cur;
    for v in out.iter_mut() {
        *v /= norm;
    }
    Ok(out)
}

/// `J_order(z)` for `order <= 1e4`, `0 <= z <= 1e6`.
///
/// The requested order is captured once and then only the count of later
/// rescales is tracked, so values down to the `f64` underflow limit keep full
/// relative accuracy.
pub fn bessel_j(order: usize, z: f64) -> Result<f64> {
    check_envelope(order, z)?;
    if z == 0.0 {
        return Ok(if order == 0 { 1.0 } else { 0.0 });
    }
    let m = start_index(order, z);
    let mut next = 0.0;
    let mut cur = 1e-300;
    let mut norm = 0.0;
    let mut captured: Option<f64> = None;
    // Rescales applied after the wanted order was captured.
    let mut shifts = 0u32;
    for n in (1..=m).rev() {
        if n == order {
            captured = Some(cur);
        }
        if n % 2 == 0 {
            norm += 2.0 * cur;
        }
        let prev = (2.0 * n as f64 / z) * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            next *= RESCALE_BY;
            norm *= RESCALE_BY;
            if captured.is_some() {
                shifts += 1;
            }
        }
    }
    norm += cur;
    let value = if order == 0 { cur } else { captured.unwrap_or(0.0) };
    let mut ratio = value / norm;
    for _ in 0..shifts {
        ratio *= RESCALE_BY;
    }
    Ok(ratio)
}

/// Ascending series `x^{m+1} sum_n (-1)^n x^{2n} / ((n+m+1)! n!) = J_{m+1}(2x)`.
pub fn bessel_ascending_series(m: usize, x: f64) -> f64 {
    let mut term = x.powi(m as i32 + 1);
    for j in 1..=(m + 1) {
        term /= j as f64;
    }
    let mut sum = 0.0;
    let x2 = x * x;
    for n in 0..500 {
        sum += term;
        let next = -term * x2 / (((n + 1) * (n + m + 2)) as f64);
        if next.abs() < 1e-18 * sum.abs() {
            break;
        }
        term = next;
    }
    sum
}

/// Partial sum `sum_{m=1}^{M} m^2 J_{2m}(z)`; tends to `z^2 / 8`.
pub fn bessel_sum_check(z: f64, truncation: usize) -> Result<f64> {
    let j = bessel_sequence(2 * truncation, z)?;
    Ok((1..=truncation).map(|m| (m * m) as f64 * j[2 * m]).sum())
}

/// Partial sum `sum_{m=1}^{M} m^2 J_m(z)^2`; tends to `z^2 / 4`.
pub fn bessel_square_sum(z: f64, truncation: usize) -> Result<f64> {
    let j = bessel_sequence(truncation, z)?;
    Ok((1..=truncation).map(|m| (m * m) as f64 * j[m] * j[m]).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        for m in 1..20 {
            assert_eq!(bessel_j(m, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn known_values() {
        // Abramowitz and Stegun tables.
        assert_relative_eq!(bessel_j(0, 1.0).unwrap(), 0.765_197_686_557_966_6, max_relative = 1e-14);
        assert_relative_eq!(bessel_j(1, 1.0).unwrap(), 0.440_050_585_744_933_5, max_relative = 1e-14);
        assert_relative_eq!(bessel_j(0, 10.0).unwrap(), -0.245_935_764_451_348_3, max_relative = 1e-13);
        assert_relative_eq!(bessel_j(5, 10.0).unwrap(), -0.234_061_528_186_793_6, max_relative = 1e-13);
        assert_relative_eq!(bessel_j(10, 1.0).unwrap(), 2.630_615_123_687_453e-10, max_relative = 1e-13);
    }

    #[test]
    fn matches_ascending_series() {
        for m in 0..=6 {
            for i in 1..=50 {
                let x = 0.1 * i as f64;
                let series = bessel_ascending_series(m, x);
                let miller = bessel_j(m + 1, 2.0 * x).unwrap();
                // Absolute: the alternating series cancels near the zeros of J.
                assert!(
                    (series - miller).abs() <= 1e-13,
                    "m={m} x={x}: {series} vs {miller}"
                );
            }
        }
    }

    #[test]
    fn sequence_agrees_with_single_order() {
        for z in [0.3, 4.0, 37.5, 251.0] {
            let seq = bessel_sequence(80, z).unwrap();
            for (n, v) in seq.iter().enumerate() {
                let single = bessel_j(n, z).unwrap();
                assert!((v - single).abs() <= 1e-13 * single.abs().max(1e-250), "n={n} z={z}");
            }
        }
    }

    #[test]
    fn deep_tail_relative_accuracy() {
        // J_n(z) ~ (z/2)^n / n! for n >> z.
        let n = 150;
        let z = 1.0;
        let ln_expect = n as f64 * (0.5f64).ln() - statrs::function::gamma::ln_gamma(n as f64 + 1.0)
            - (0.25 / (n as f64 + 1.0));
        let got = bessel_j(n, z).unwrap();
        assert!(got > 0.0);
        assert!((got.ln() - ln_expect).abs() < 1e-4);
    }

    #[test]
    fn large_argument_sum_rule() {
        let z = 5000.0;
        let j = bessel_sequence(6000, z).unwrap();
        let s: f64 = j[0] * j[0] + 2.0 * j[1..].iter().map(|v| v * v).sum::<f64>();
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn envelope() {
        assert!(bessel_j(10_001, 1.0).is_err());
        assert!(bessel_j(0, 2e6).is_err());
        assert!(bessel_j(0, -1.0).is_err());
        assert!(bessel_j(0, f64::NAN).is_err());
        assert!(bessel_j(10_000, 1e6).is_ok());
    }

    #[test]
    fn sum_identities() {
        assert_eq!(bessel_sum_check(0.0, 10).unwrap(), 0.0);
        assert!((bessel_sum_check(10.0, 40).unwrap() - 12.5).abs() < 1e-10);
        for m in [60, 80, 120] {
            assert!((bessel_square_sum(20.0, m).unwrap() - 100.0).abs() < 1e-10);
        }
    }
}
