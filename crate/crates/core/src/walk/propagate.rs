//! First row of `exp(+-theta A')` by three independent routes.
//!
//! With `D = diag(i^m)` and `T` the real symmetric tridiagonal matrix sharing
//! the superdiagonal of `A'`, `A' = D (iT) D^{-1}`. The wanted row is therefore
//! `r = exp(theta A') e_1 = D exp(i theta T) e_1`, and `u = exp(i theta T) e_1`
//! is real on even entries and imaginary on odd ones.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{check_time, spectral_bound, superdiagonal, WalkAdjacency};
use crate::bessel::bessel_sequence;
use crate::error::Result;
use crate::model::ChainParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Propagator {
    /// Chebyshev expansion of `exp(i theta T)`, matrix free.
    Chebyshev,
    /// Eigendecomposition of the Hermitian `i A'`.
    Spectral,
    /// Dense Taylor series with scaling and squaring.
    ScalingSquaring,
}

/// Folds `u_m` back to `r_m = i^m u_m`; `u` is given as (real, imaginary) parts.
fn fold(re: &[f64], im: &[f64]) -> Vec<f64> {
    (0..re.len())
        .map(|m| match m % 4 {
            0 => re[m],
            1 => -im[m],
            2 => -re[m],
            _ => im[m],
        })
        .collect()
}

/// `exp(i z x) = J_0(z) + 2 sum_n i^n J_n(z) T_n(x)` applied to `e_1` with
/// `x = T / rho`, `z = theta rho`.
pub(crate) fn chebyshev_first_row(p: ChainParams, theta: f64) -> Result<Vec<f64>> {
    let b = superdiagonal(p);
    let dim = b.len() + 1;
    let rho = spectral_bound(p);
    let z = theta * rho;
    let n_terms = (z + 12.0 * z.cbrt() + 40.0).ceil() as usize;
    let jn = bessel_sequence(n_terms, z)?;

    let scaled: Vec<f64> = b.iter().map(|x| x / rho).collect();
    let mut re = vec![0.0; dim];
    let mut im = vec![0.0; dim];
    let mut prev = vec![0.0; dim];
    let mut cur = vec![0.0; dim];
    cur[0] = 1.0;
    re[0] = jn[0];
    let mut next = vec![0.0; dim];
    for n in 1..=n_terms {
        // Support of T_n(x) e_1 is the first n + 1 entries.
        let width = (n + 1).min(dim);
        let first = n == 1;
        for m in 0..width {
            let mut acc = 0.0;
            if m > 0 {
                acc += scaled[m - 1] * cur[m - 1];
            }
            if m + 1 < dim {
                acc += scaled[m] * cur[m + 1];
            }
            next[m] = if first { acc } else { 2.0 * acc - prev[m] };
        }
        let c = 2.0 * jn[n];
        let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let target = if n % 2 == 0 { &mut re } else { &mut im };
        for m in 0..width {
            target[m] += sign * c * next[m];
        }
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(fold(&re, &im))
}

/// Eigenpairs of `T`, reused across times.
pub(crate) struct SpectralCache {
    eigenvalues: Vec<f64>,
    /// `V_{0l} V_{ml}`, indexed `[m][l]`.
    weights: DMatrix<f64>,
}

impl SpectralCache {
    pub(crate) fn new(p: ChainParams) -> Self {
        let b = superdiagonal(p);
        let dim = b.len() + 1;
        let mut t = DMatrix::zeros(dim, dim);
        for (i, x) in b.iter().enumerate() {
            t[(i, i + 1)] = *x;
            t[(i + 1, i)] = *x;
        }
        let eig = SymmetricEigen::new(t);
        let v = eig.eigenvectors;
        let weights = DMatrix::from_fn(dim, dim, |m, l| v[(0, l)] * v[(m, l)]);
        SpectralCache {
            eigenvalues: eig.eigenvalues.iter().copied().collect(),
            weights,
        }
    }

    pub(crate) fn first_row(&self, theta: f64) -> Vec<f64> {
        let dim = self.eigenvalues.len();
        let cos: Vec<f64> = self.eigenvalues.iter().map(|l| (theta * l).cos()).collect();
        let sin: Vec<f64> = self.eigenvalues.iter().map(|l| (theta * l).sin()).collect();
        let mut re = vec![0.0; dim];
        let mut im = vec![0.0; dim];
        for m in 0..dim {
            let row = self.weights.row(m);
            if m % 2 == 0 {
                re[m] = row.iter().zip(&cos).map(|(w, c)| w * c).sum();
            } else {
                im[m] = row.iter().zip(&sin).map(|(w, c)| w * c).sum();
            }
        }
        fold(&re, &im)
    }
}

/// Row 1 of `exp(-2 pi s A')` through the eigendecomposition of `i A'`.
pub fn exp_first_row(a: &WalkAdjacency, s: f64) -> Result<Vec<f64>> {
    check_time(s)?;
    if s == 0.0 {
        let mut r = vec![0.0; a.dim()];
        r[0] = 1.0;
        return Ok(r);
    }
    Ok(SpectralCache::new(a.params()).first_row(2.0 * PI * s))
}

/// Row 1 of `exp(-2 pi s A')` from the full dense exponential.
pub fn exp_first_row_scaling_squaring(a: &WalkAdjacency, s: f64) -> Result<Vec<f64>> {
    check_time(s)?;
    let m = a.matrix() * (-2.0 * PI * s);
    let dim = m.nrows();
    let norm1 = (0..dim)
        .map(|j| m.column(j).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm1 * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let ms = &m * scale;
    let mut term = DMatrix::<f64>::identity(dim, dim);
    let mut e = term.clone();
    for n in 1..=30 {
        term = &term * &ms / n as f64;
        e += &term;
        if term.iter().map(|x| x.abs()).fold(0.0, f64::max) < 1e-20 {
            break;
        }
    }
    for _ in 0..squarings {
        e = &e * &e;
    }
    Ok(e.row(0).iter().copied().collect())
}
