//! Operator Pauli walk.
//!
//! `Z_1(s)` stays inside the span of `2N` Pauli strings. Its expansion
//! coefficients are the first row of `exp(-2 pi s A')` for the tridiagonal
//! skew-symmetric walk matrix `A'`, and `C_k(s) = 2 sqrt(sum_{m >= 2k} r_m^2)`.

mod propagate;
pub mod highprec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{ChainParams, CorrelationSeries, Method, TimeGrid};
use crate::pauli::{Pauli, PauliString};

pub use propagate::{exp_first_row, exp_first_row_scaling_squaring, Propagator};
use propagate::{chebyshev_first_row, SpectralCache};

/// Double-precision values below this are reported as untrusted.
pub const TRUST_FLOOR: f64 = 1e-13;

/// The `2N` strings reachable from `Z_1`, in walk order.
#[derive(Debug, Clone, PartialEq)]
pub struct RelevantStrings {
    strings: Vec<PauliString>,
}

impl RelevantStrings {
    pub fn strings(&self) -> &[PauliString] {
        &self.strings
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    /// 1-based access, `sigma_m`.
    pub fn get(&self, m: usize) -> Option<&PauliString> {
        m.checked_sub(1).and_then(|i| self.strings.get(i))
    }
}

/// `sigma_{2j-1} = X_1 ... X_{j-1} Z_j`, `sigma_{2j} = X_1 ... X_{j-1} Y_j`.
pub fn relevant_strings(p: ChainParams) -> RelevantStrings {
    let n = p.n_qubits;
    let mut strings = Vec::with_capacity(2 * n);
    for j in 1..=n {
        for last in [Pauli::Z, Pauli::Y] {
            let mut ops: Vec<(usize, Pauli)> = (1..j).map(|i| (i, Pauli::X)).collect();
            ops.push((j, last));
            strings.push(PauliString::from_sites(n, &ops));
        }
    }
    RelevantStrings { strings }
}

/// Real skew-symmetric tridiagonal `A'` with superdiagonal `1, J', 1, J', ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkAdjacency {
    params: ChainParams,
    matrix: DMatrix<f64>,
}

impl WalkAdjacency {
    pub fn params(&self) -> ChainParams {
        self.params
    }

    pub fn coupling(&self) -> f64 {
        self.params.j_coupling
    }

    pub fn dim(&self) -> usize {
        2 * self.params.n_qubits
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `A'_{i,i+1}` for `i = 0 .. 2N-2`.
    pub fn superdiagonal(&self) -> Vec<f64> {
        superdiagonal(self.params)
    }

    /// Gershgorin bound on the spectral radius.
    pub fn spectral_bound(&self) -> f64 {
        spectral_bound(self.params)
    }
}

fn superdiagonal(p: ChainParams) -> Vec<f64> {
    (0..2 * p.n_qubits - 1)
        .map(|i| if i % 2 == 0 { 1.0 } else { p.j_coupling })
        .collect()
}

fn spectral_bound(p: ChainParams) -> f64 {
    if p.n_qubits == 1 {
        1.0
    } else {
        1.0 + p.j_coupling
    }
}

pub fn build_adjacency(p: ChainParams) -> WalkAdjacency {
    let dim = 2 * p.n_qubits;
    let mut matrix = DMatrix::zeros(dim, dim);
    for (i, b) in superdiagonal(p).into_iter().enumerate() {
        matrix[(i, i + 1)] = b;
        matrix[(i + 1, i)] = -b;
    }
    WalkAdjacency { params: p, matrix }
}

/// First row of `(2i A')^n`: the weight of all length-`n` walks from `Z_1`.
pub fn walk_coefficients(p: ChainParams, n: usize) -> Vec<Complex64> {
    let b = superdiagonal(p);
    let dim = 2 * p.n_qubits;
    let mut row = vec![0.0; dim];
    row[0] = 1.0;
    for _ in 0..n {
        row = row_times_adjacency(&row, &b);
    }
    let factor = Complex64::new(0.0, 2.0).powu(n as u32);
    row.into_iter().map(|x| factor * x).collect()
}

/// `v A'` for a row vector `v`.
pub(crate) fn row_times_adjacency(v: &[f64], b: &[f64]) -> Vec<f64> {
    let dim = v.len();
    let mut out = vec![0.0; dim];
    for (i, &bi) in b.iter().enumerate() {
        // A'_{i,i+1} = b_i, A'_{i+1,i} = -b_i.
        out[i + 1] += v[i] * bi;
        out[i] -= v[i + 1] * bi;
    }
    out
}

/// `C_k` for every `k` from the first row, accumulating tails from the end.
pub fn correlations_from_row(r: &[f64]) -> Vec<f64> {
    let n = r.len() / 2;
    let mut tail = vec![0.0; r.len() + 1];
    for m in (0..r.len()).rev() {
        tail[m] = tail[m + 1] + r[m] * r[m];
    }
    (1..=n).map(|k| 2.0 * tail[2 * k - 1].min(1.0).sqrt()).collect()
}

/// Evaluator for one chain, reusable across times.
pub struct WalkEngine {
    params: ChainParams,
    propagator: Propagator,
    spectral: Option<SpectralCache>,
}

impl WalkEngine {
    pub fn new(params: ChainParams) -> Self {
        WalkEngine {
            params,
            propagator: Propagator::Chebyshev,
            spectral: None,
        }
    }

    pub fn with_propagator(params: ChainParams, propagator: Propagator) -> Self {
        let spectral = match propagator {
            Propagator::Spectral => Some(SpectralCache::new(params)),
            _ => None,
        };
        WalkEngine {
            params,
            propagator,
            spectral,
        }
    }

    pub fn params(&self) -> ChainParams {
        self.params
    }

    pub fn propagator(&self) -> Propagator {
        self.propagator
    }

    /// Row 1 of `exp(-2 pi s A')`.
    pub fn first_row(&self, s: f64) -> Result<Vec<f64>> {
        check_time(s)?;
        let dim = 2 * self.params.n_qubits;
        if s == 0.0 {
            let mut r = vec![0.0; dim];
            r[0] = 1.0;
            return Ok(r);
        }
        Ok(match self.propagator {
            Propagator::Chebyshev => chebyshev_first_row(self.params, 2.0 * PI * s)?,
            Propagator::Spectral => self
                .spectral
                .as_ref()
                .expect("spectral cache built with engine")
                .first_row(2.0 * PI * s),
            Propagator::ScalingSquaring => exp_first_row_scaling_squaring(&build_adjacency(self.params), s)?,
        })
    }

    /// `C_k(s)` for `k = 1..=N`.
    pub fn correlations(&self, s: f64) -> Result<Vec<f64>> {
        if s == 0.0 {
            check_time(s)?;
            return Ok(vec![0.0; self.params.n_qubits]);
        }
        Ok(correlations_from_row(&self.first_row(s)?))
    }

    pub fn correlation(&self, k: usize, s: f64) -> Result<f64> {
        self.params.check_qubit(k)?;
        Ok(self.correlations(s)?[k - 1])
    }

    /// `C_k(s_i)` for every grid time, indexed `[i][k-1]`; times run in parallel.
    pub fn grid(&self, times: &TimeGrid) -> Result<Vec<Vec<f64>>> {
        times
            .values()
            .par_iter()
            .map(|&s| self.correlations(s))
            .collect()
    }

    pub fn series(&self, k: usize, times: &TimeGrid) -> Result<CorrelationSeries> {
        self.params.check_qubit(k)?;
        let values = self.grid(times)?.into_iter().map(|row| row[k - 1]).collect();
        CorrelationSeries::new(k, times.clone(), values, Method::Walk)
    }
}

pub(crate) fn check_time(s: f64) -> Result<()> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::NegativeTime(s));
    }
    Ok(())
}

/// `C_k(s)` from the walk formula.
pub fn lr_walk(p: ChainParams, k: usize, s: f64) -> Result<f64> {
    p.check_qubit(k)?;
    WalkEngine::new(p).correlation(k, s)
}

/// `C_k(s)` from the exponential series truncated after `n_max` powers of `A'`.
pub fn lr_walk_series(p: ChainParams, k: usize, s: f64, n_max: usize) -> Result<f64> {
    p.check_qubit(k)?;
    check_time(s)?;
    let b = superdiagonal(p);
    let dim = 2 * p.n_qubits;
    let theta = 2.0 * PI * s;
    let mut term = vec![0.0; dim];
    term[0] = 1.0;
    let mut r = term.clone();
    for n in 1..=n_max {
        // row 1 of (-theta A')^n / n!
        term = row_times_adjacency(&term, &b)
            .into_iter()
            .map(|x| -x * theta / n as f64)
            .collect();
        for (ri, ti) in r.iter_mut().zip(&term) {
            *ri += ti;
        }
    }
    let tail: f64 = r[2 * k - 1..].iter().map(|x| x * x).sum();
    Ok(2.0 * tail.sqrt())
}
