//! Closed form at the critical coupling `J' = 1` on a semi-infinite chain.
//!
//! At `J' = 1` every edge of the walk line has unit weight, so walk sums
//! reduce to ballot numbers and the row of the exponential to Bessel
//! functions. Nodes are numbered from 0 here: offset `m` is walk node `m + 1`.

use std::f64::consts::PI;

use crate::bessel::bessel_sequence;
use crate::error::{Error, Result};

/// Walks of length `n` from node 0 to node `m` on the line `0, 1, 2, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallotCount {
    pub n: usize,
    pub m: usize,
    pub count: u128,
}

fn binomial(n: usize, r: usize) -> Result<u128> {
    let r = r.min(n - r);
    let mut c: u128 = 1;
    for i in 0..r {
        c = c
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / (i as u128 + 1);
    }
    Ok(c)
}

/// `(m + 1) / (1 + (n + m)/2) * binom(n, (n + m)/2)` for matching parity.
pub fn ballot_count(n: usize, m: usize) -> Result<u128> {
    if m > n || (n + m) % 2 != 0 {
        return Ok(0);
    }
    let up = (n + m) / 2;
    let c = binomial(n, up)?;
    let scaled = c
        .checked_mul(m as u128 + 1)
        .ok_or(Error::Overflow("ballot count"))?;
    Ok(scaled / (up as u128 + 1))
}

pub fn ballot(n: usize, m: usize) -> Result<BallotCount> {
    Ok(BallotCount {
        n,
        m,
        count: ballot_count(n, m)?,
    })
}

/// Signed walk weight at `J' = 1`: `(-1)^{(n-m)/2} N_w(n, m)`.
pub fn signed_walk_sum(n: usize, m: usize) -> Result<i128> {
    let count = ballot_count(n, m)?;
    if count == 0 {
        return Ok(0);
    }
    let c = i128::try_from(count).map_err(|_| Error::Overflow("signed walk sum"))?;
    Ok(if ((n - m) / 2) % 2 == 0 { c } else { -c })
}

/// Radicand `z^2/4 - sum_{m=1}^{2k-1} m^2 J_m(z)^2` and its tail form, `z = 4 pi s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalRadicand {
    pub closed: f64,
    pub tail: f64,
    pub z: f64,
}

/// Both evaluations of the radicand at `(k, s)`.
pub fn critical_radicand(k: usize, s: f64) -> Result<CriticalRadicand> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    if !s.is_finite() || s < 0.0 {
        return Err(Error::NegativeTime(s));
    }
    let z = 4.0 * PI * s;
    let n_max = ((z + 12.0 * z.cbrt() + 40.0).ceil() as usize).max(2 * k + 2);
    let j = bessel_sequence(n_max, z)?;
    let weighted = |m: usize| (m * m) as f64 * j[m] * j[m];
    let head: f64 = (1..2 * k).map(weighted).sum();
    // Summed from the far end so the smallest terms are added first.
    let tail: f64 = (2 * k..=n_max).rev().map(weighted).sum();
    Ok(CriticalRadicand {
        closed: 0.25 * z * z - head,
        tail,
        z,
    })
}

/// `C_k(s)` for the semi-infinite chain at `J' = 1`.
///
/// The value is taken from the tail form of the radicand, which equals the
/// closed form through `sum_m m^2 J_m^2(z) = z^2/4` without its cancellation.
/// The closed form is still evaluated and must be nonnegative to
/// `1e-10 z^2`.
pub fn lr_critical(k: usize, s: f64) -> Result<f64> {
    let r = critical_radicand(k, s)?;
    if s == 0.0 {
        return Ok(0.0);
    }
    if r.closed < -1e-10 * r.z * r.z {
        return Err(Error::NegativeRadicand {
            k,
            s,
            radicand: r.closed,
        });
    }
    Ok((r.tail.max(0.0).sqrt() / (PI * s)).min(2.0))
}
