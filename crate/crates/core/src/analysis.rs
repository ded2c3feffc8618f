//! Front arrival, saturation and light-cone measurements built on the walk engine.

use serde::{Deserialize, Serialize};

use crate::asymptotics::{saturation_value, v_group_max};
use crate::error::{Error, Result};
use crate::model::{ChainParams, TimeGrid};
use crate::walk::highprec::HighPrecWalk;
use crate::walk::{WalkEngine, TRUST_FLOOR};

/// Default crossing level.
pub const DEFAULT_THRESHOLD: f64 = 0.1;

/// Bisection stops once the bracket is this narrow.
pub const CROSSING_TOLERANCE: f64 = 1e-8;

/// Coarse scan step in `s`.
const SCAN_STEP: f64 = 0.01;

/// Latest `s` before the fastest excitation returns from the far end to qubit `k`.
pub fn reflection_safe_horizon(p: ChainParams, k: usize) -> Result<f64> {
    p.check_qubit(k)?;
    if p.j_coupling == 0.0 {
        return Ok(f64::INFINITY);
    }
    let v = v_group_max(p.j_coupling)?;
    Ok((2.0 * p.n_qubits as f64 - k as f64 - 1.0) / v)
}

fn check_threshold(p: ChainParams, threshold: f64) -> Result<()> {
    let saturation = saturation_value(p.j_coupling);
    if !(threshold > 0.0 && threshold < saturation) {
        return Err(Error::ThresholdOutOfRange {
            threshold,
            saturation,
        });
    }
    Ok(())
}

/// First upward crossing of `threshold` for each `k`, in one shared time sweep.
pub fn crossing_times(p: ChainParams, ks: &[usize], threshold: f64) -> Result<Vec<f64>> {
    check_threshold(p, threshold)?;
    for &k in ks {
        p.check_qubit(k)?;
    }
    let engine = WalkEngine::new(p);
    let horizons: Vec<f64> = ks
        .iter()
        .map(|&k| reflection_safe_horizon(p, k))
        .collect::<Result<_>>()?;
    let mut brackets: Vec<Option<(f64, f64)>> = vec![None; ks.len()];
    let mut pending = ks.len();
    let mut s_prev = 0.0;
    let mut step = 0usize;
    while pending > 0 {
        step += 1;
        let s = step as f64 * SCAN_STEP;
        let c = engine.correlations(s)?;
        for (i, &k) in ks.iter().enumerate() {
            if brackets[i].is_some() {
                continue;
            }
            if s_prev >= horizons[i] {
                return Err(Error::ThresholdUnreachable {
                    k,
                    threshold,
                    horizon: horizons[i],
                });
            }
            if c[k - 1] >= threshold {
                brackets[i] = Some((s_prev, s));
                pending -= 1;
            }
        }
        s_prev = s;
    }
    let mut out = Vec::with_capacity(ks.len());
    for (i, &k) in ks.iter().enumerate() {
        let (mut lo, mut hi) = brackets[i].expect("all brackets filled");
        while hi - lo > CROSSING_TOLERANCE {
            let mid = 0.5 * (lo + hi);
            if engine.correlation(k, mid)? >= threshold {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let s_k = 0.5 * (lo + hi);
        if s_k > horizons[i] {
            return Err(Error::ThresholdUnreachable {
                k,
                threshold,
                horizon: horizons[i],
            });
        }
        out.push(s_k);
    }
    Ok(out)
}

/// First `s` with `C_k(s) = threshold`.
pub fn crossing_time(p: ChainParams, k: usize, threshold: f64) -> Result<f64> {
    Ok(crossing_times(p, &[k], threshold)?[0])
}

/// Bulk window `[max(10, N/5), N/2]`.
pub fn default_fit_range(p: ChainParams) -> (usize, usize) {
    let n = p.n_qubits;
    ((n / 5).max(10), n / 2)
}

/// Front arrival times and the velocities derived from them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontEstimate {
    pub threshold: f64,
    /// `(k, s_k)` over the fit range.
    pub crossing_times: Vec<(usize, f64)>,
    /// `(k_max - k_min) / (s_{k_max} - s_{k_min})`, in units of `1/tau`.
    pub velocity: f64,
    pub fit_range: (usize, usize),
    /// `1 / (s_{k+1} - s_k)` for each step.
    pub step_velocities: Vec<f64>,
    /// Mean of `step_velocities`.
    pub mean_step_reciprocal: f64,
    /// Inverse slope of the least-squares line `s_k = a + k / v`.
    pub least_squares: f64,
    /// Inverse slope from `s_k = a + k / v + c k^{1/3}`, which absorbs the
    /// threshold-dependent broadening of the front.
    pub broadening_corrected: f64,
}

/// Measures the front speed from threshold crossings over `fit_range`.
pub fn front_velocity(p: ChainParams, threshold: f64, fit_range: Option<(usize, usize)>) -> Result<FrontEstimate> {
    let (k_min, k_max) = fit_range.unwrap_or_else(|| default_fit_range(p));
    if k_min < 1 || k_max <= k_min + 1 || k_max > p.n_qubits {
        return Err(Error::FitRange(format!(
            "[{k_min}, {k_max}] must satisfy 1 <= k_min < k_min + 1 < k_max <= {}",
            p.n_qubits
        )));
    }
    let ks: Vec<usize> = (k_min..=k_max).collect();
    let times = crossing_times(p, &ks, threshold)?;
    for w in times.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::FitRange(format!(
                "crossing times not increasing ({} then {})",
                w[0], w[1]
            )));
        }
    }
    let step_velocities: Vec<f64> = times.windows(2).map(|w| 1.0 / (w[1] - w[0])).collect();
    let mean_step_reciprocal = step_velocities.iter().sum::<f64>() / step_velocities.len() as f64;
    let velocity = (k_max - k_min) as f64 / (times[times.len() - 1] - times[0]);
    let kf: Vec<f64> = ks.iter().map(|&k| k as f64).collect();
    let least_squares = 1.0 / linear_fit(&kf, &times)[1];
    let broadening_corrected = 1.0 / broadening_fit(&kf, &times)[1];
    Ok(FrontEstimate {
        threshold,
        crossing_times: ks.into_iter().zip(times).collect(),
        velocity,
        fit_range: (k_min, k_max),
        step_velocities,
        mean_step_reciprocal,
        least_squares,
        broadening_corrected,
    })
}

/// Least-squares `y = c0 + c1 x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> [f64; 2] {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let c1 = sxy / sxx;
    [my - c1 * mx, c1]
}

/// Least-squares `y = c0 + c1 x + c2 x^{1/3}`.
pub fn broadening_fit(x: &[f64], y: &[f64]) -> [f64; 3] {
    let design = nalgebra::DMatrix::from_fn(x.len(), 3, |i, j| match j {
        0 => 1.0,
        1 => x[i],
        _ => x[i].cbrt(),
    });
    let rhs = nalgebra::DVector::from_column_slice(y);
    let sol = design
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .expect("SVD computed with both factors");
    [sol[0], sol[1], sol[2]]
}

/// Largest `C_k` on a uniform grid over `[s_start, s_end]`.
pub fn measure_saturation(p: ChainParams, k: usize, window: (f64, f64)) -> Result<f64> {
    let (s0, s1) = window;
    if !(s0 >= 0.0 && s1 > s0) {
        return Err(Error::InvalidGrid(format!("window [{s0}, {s1}] is empty")));
    }
    let horizon = reflection_safe_horizon(p, k)?;
    if s1 > horizon {
        return Err(Error::HorizonExceeded { k, s_end: s1, horizon });
    }
    let n = ((s1 - s0) / SCAN_STEP).ceil() as usize + 1;
    let grid = TimeGrid::linspace(s0, s1, n)?;
    let engine = WalkEngine::new(p);
    let rows = engine.grid(&grid)?;
    Ok(rows.iter().map(|r| r[k - 1]).fold(0.0, f64::max))
}

/// `log10 C_k(s)` over a `(k, s)` grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LightconeGrid {
    pub k_values: Vec<usize>,
    pub s_values: TimeGrid,
    /// Indexed `[s][k]`; exact zeros are `-inf`.
    pub log10_c: Vec<Vec<f64>>,
    /// Indexed `[s][k]`; false where the value is below the precision floor.
    pub trusted: Vec<Vec<bool>>,
    /// Requested software precision, `None` for double precision.
    pub digits: Option<usize>,
}

/// Samples the light cone. With `digits`, values come from the
/// arbitrary-precision walk and are trusted down to `10^{-digits + 5}`;
/// otherwise double-precision values below the trust floor are masked.
pub fn lightcone(p: ChainParams, k_values: &[usize], s_values: &TimeGrid, digits: Option<usize>) -> Result<LightconeGrid> {
    for &k in k_values {
        p.check_qubit(k)?;
    }
    let mut log10_c = Vec::with_capacity(s_values.len());
    let mut trusted = Vec::with_capacity(s_values.len());
    match digits {
        None => {
            let rows = WalkEngine::new(p).grid(s_values)?;
            for row in rows {
                let logs: Vec<f64> = k_values.iter().map(|&k| row[k - 1].log10()).collect();
                trusted.push(k_values.iter().map(|&k| row[k - 1] >= TRUST_FLOOR).collect());
                log10_c.push(logs);
            }
        }
        Some(d) => {
            let s_max = s_values.values().last().copied().unwrap_or(0.0);
            let mut walk = HighPrecWalk::new(p, d, s_max)?;
            let floor = -(d as f64) + 5.0;
            for &s in s_values.values() {
                walk.advance_to(s)?;
                let all = walk.correlations();
                let logs: Vec<f64> = k_values.iter().map(|&k| all[k - 1].log10).collect();
                trusted.push(logs.iter().map(|&l| l >= floor).collect());
                log10_c.push(logs);
            }
        }
    }
    Ok(LightconeGrid {
        k_values: k_values.to_vec(),
        s_values: s_values.clone(),
        log10_c,
        trusted,
        digits,
    })
}

impl LightconeGrid {
    /// For each `k`, the first `s` where `log10 C_k` rises through `level`,
    /// linearly interpolated between trusted neighbours.
    pub fn isocontour(&self, level: f64) -> Vec<(usize, f64)> {
        let s = self.s_values.values();
        let mut out = Vec::new();
        for (j, &k) in self.k_values.iter().enumerate() {
            for i in 1..s.len() {
                let (a, b) = (self.log10_c[i - 1][j], self.log10_c[i][j]);
                if !(self.trusted[i - 1][j] && self.trusted[i][j]) {
                    continue;
                }
                if a < level && b >= level {
                    let t = (level - a) / (b - a);
                    out.push((k, s[i - 1] + t * (s[i] - s[i - 1])));
                    break;
                }
            }
        }
        out
    }
}

/// Speed `dk/ds` of a contour from a least-squares line through its points.
pub fn contour_velocity(points: &[(usize, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let k: Vec<f64> = points.iter().map(|p| p.0 as f64).collect();
    let s: Vec<f64> = points.iter().map(|p| p.1).collect();
    Some(1.0 / linear_fit(&k, &s)[1])
}
