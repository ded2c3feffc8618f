//! Leading-edge forms, velocities and the saturation level.
//!
//! Leading-edge magnitudes reach far below the `f64` range, so they are
//! returned as [`LogValue`].

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;
use std::f64::consts::{E, LN_10, LOG10_E, PI};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogSign {
    Negative,
    Zero,
    Positive,
}

/// A real number stored as `sign * 10^log10`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    pub log10: f64,
    pub sign: LogSign,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        log10: f64::NEG_INFINITY,
        sign: LogSign::Zero,
    };

    pub fn positive(log10: f64) -> Self {
        LogValue {
            log10,
            sign: LogSign::Positive,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            LogValue::ZERO
        } else {
            LogValue {
                log10: x.abs().log10(),
                sign: if x > 0.0 { LogSign::Positive } else { LogSign::Negative },
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == LogSign::Zero
    }

    /// Nearest `f64`; underflows to zero.
    pub fn value(&self) -> f64 {
        match self.sign {
            LogSign::Zero => 0.0,
            LogSign::Positive => 10f64.powf(self.log10),
            LogSign::Negative => -(10f64.powf(self.log10)),
        }
    }

    /// `ln |x|`.
    pub fn ln(&self) -> f64 {
        self.log10 * LN_10
    }
}

fn check_leading(k: usize, s: f64, j: f64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    if !s.is_finite() || s < 0.0 {
        return Err(Error::NegativeTime(s));
    }
    if !j.is_finite() || j < 0.0 {
        return Err(Error::InvalidParams(format!("coupling must be nonnegative, got {j}")));
    }
    Ok(())
}

/// `2^{2k} pi^{2k-1} / (2k-1)! * J'^{k-1} * s^{2k-1}`.
pub fn lr_leading_exact(k: usize, s: f64, j: f64) -> Result<LogValue> {
    check_leading(k, s, j)?;
    if s == 0.0 || (j == 0.0 && k >= 2) {
        return Ok(LogValue::ZERO);
    }
    let kf = k as f64;
    let n = 2.0 * kf - 1.0;
    let coupling = if k == 1 { 0.0 } else { (kf - 1.0) * j.log10() };
    let log10 = 2.0 * kf * 2f64.log10() + n * PI.log10() - ln_gamma(n + 1.0) * LOG10_E + coupling + n * s.log10();
    Ok(LogValue::positive(log10))
}

/// Stirling form `(pi J')^{-1/2} k^{-1/2} (v_LR s / (k - 1/2))^{2k-1}`.
pub fn lr_leading_largek(k: usize, s: f64, j: f64) -> Result<LogValue> {
    check_leading(k, s, j)?;
    if k < 2 {
        return Err(Error::InvalidParams("large-k form needs k >= 2".into()));
    }
    if s == 0.0 || j == 0.0 {
        return Ok(LogValue::ZERO);
    }
    let kf = k as f64;
    let v = v_lieb_robinson(j);
    let log10 = -0.5 * (PI * j).log10() - 0.5 * kf.log10() + (2.0 * kf - 1.0) * (v * s / (kf - 0.5)).log10();
    Ok(LogValue::positive(log10))
}

/// Exponential front `e (pi J')^{-1/2} k^{-1/2} exp(-2 (k - v_LR s))`.
///
/// Only meaningful for large `k` with `k - v_LR s` small compared with `k`;
/// no regime check is applied.
pub fn lr_leading_exponential(k: usize, s: f64, j: f64) -> Result<LogValue> {
    check_leading(k, s, j)?;
    if j == 0.0 {
        return Ok(LogValue::ZERO);
    }
    let kf = k as f64;
    let v = v_lieb_robinson(j);
    let log10 = LOG10_E - 0.5 * (PI * j * kf).log10() - 2.0 * (kf - v * s) * LOG10_E;
    Ok(LogValue::positive(log10))
}

/// `v_LR tau = e pi sqrt(J')`.
pub fn v_lieb_robinson(j: f64) -> f64 {
    E * PI * j.max(0.0).sqrt()
}

fn check_positive(j: f64) -> Result<()> {
    if !j.is_finite() || j <= 0.0 {
        return Err(Error::InvalidParams(format!("coupling must be positive, got {j}")));
    }
    Ok(())
}

/// Quasiparticle energy in units of `gamma`: `2 J' sqrt(g^2 + 1 - 2 g cos q)`, `g = 1/J'`.
pub fn dispersion(q: f64, j: f64) -> Result<f64> {
    check_positive(j)?;
    let g = 1.0 / j;
    Ok(2.0 * j * (g * g + 1.0 - 2.0 * g * q.cos()).max(0.0).sqrt())
}

/// Group velocity `v_g tau = 2 pi J' g sin q / sqrt((g - cos q)^2 + sin^2 q)`.
pub fn v_group(q: f64, j: f64) -> Result<f64> {
    check_positive(j)?;
    let g = 1.0 / j;
    let (sq, cq) = q.sin_cos();
    let den = ((g - cq).powi(2) + sq * sq).sqrt();
    if den == 0.0 {
        // q = 0 at J' = 1, where the odd function is set to its symmetric value.
        return Ok(0.0);
    }
    Ok(2.0 * PI * j * g * sq / den)
}

/// `2 pi min(J', 1)`.
pub fn v_group_max(j: f64) -> Result<f64> {
    check_positive(j)?;
    Ok(2.0 * PI * j.min(1.0))
}

/// Numerically located maximum of `v_group` on `(0, pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupVelocityMax {
    pub q0: f64,
    pub v_max: f64,
}

/// Golden-section search on `v_group`, then bisection on the sign of its
/// derivative `-g cos^2 q + (1 + g^2) cos q - g` to pin the maximizer.
pub fn v_group_max_numeric(j: f64) -> Result<GroupVelocityMax> {
    check_positive(j)?;
    let g = 1.0 / j;
    let f = |q: f64| v_group(q, j).unwrap_or(0.0);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (1e-12, PI - 1e-12);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-7 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let slope = |q: f64| {
        let cq = q.cos();
        -g * cq * cq + (1.0 + g * g) * cq - g
    };
    // Widen the bracket until the derivative changes sign across it.
    let mut lo = (a - 1e-6).max(1e-15);
    let mut hi = (b + 1e-6).min(PI - 1e-15);
    let mut q0 = 0.5 * (a + b);
    if slope(lo) > 0.0 && slope(hi) < 0.0 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if slope(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        q0 = 0.5 * (lo + hi);
    }
    Ok(GroupVelocityMax { q0, v_max: f(q0) })
}

/// Long-time plateau `2 min(1, 1/J')`.
pub fn saturation_value(j: f64) -> f64 {
    if j <= 1.0 {
        2.0
    } else {
        2.0 / j
    }
}
