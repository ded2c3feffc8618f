//! Parameter and result types shared by every evaluation route.
//!
//! All times are dimensionless, `s = t / tau` with `tau = pi hbar / gamma`, and
//! the Hamiltonian is `H' = -sum X_k - J' sum Z_k Z_{k+1}` on an open chain.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Chain length and dimensionless coupling `J' = J / gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainParams {
    pub n_qubits: usize,
    pub j_coupling: f64,
}

impl ChainParams {
    /// Builds validated parameters.
    pub fn new(n_qubits: usize, j_coupling: f64) -> Result<Self> {
        validate_params(ChainParams {
            n_qubits,
            j_coupling,
        })
    }

    /// Checks a 1-based qubit index against the chain length.
    pub fn check_qubit(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n_qubits {
            return Err(Error::QubitIndex {
                k,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }
}

/// Returns `p` unchanged when `n_qubits >= 1` and `j_coupling` is finite and nonnegative.
pub fn validate_params(p: ChainParams) -> Result<ChainParams> {
    if p.n_qubits < 1 {
        return Err(Error::InvalidParams("n_qubits must be at least 1".into()));
    }
    if !p.j_coupling.is_finite() {
        return Err(Error::InvalidParams("coupling must be finite".into()));
    }
    if p.j_coupling < 0.0 {
        return Err(Error::InvalidParams(format!(
            "coupling must be nonnegative, got {}",
            p.j_coupling
        )));
    }
    Ok(p)
}

/// Strictly increasing list of nonnegative dimensionless times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    values: Vec<f64>,
}

impl TimeGrid {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidGrid("grid is empty".into()));
        }
        if let Some(bad) = values.iter().find(|s| !s.is_finite() || **s < 0.0) {
            return Err(Error::InvalidGrid(format!("entry {bad} is not a nonnegative time")));
        }
        if values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid("entries must be strictly increasing".into()));
        }
        Ok(TimeGrid { values })
    }

    /// `n` equally spaced points covering `[start, end]` inclusive.
    pub fn linspace(start: f64, end: f64, n: usize) -> Result<Self> {
        match n {
            0 => Err(Error::InvalidGrid("need at least one point".into())),
            1 => TimeGrid::new(vec![start]),
            _ => {
                let step = (end - start) / (n - 1) as f64;
                let mut values: Vec<f64> = (0..n).map(|i| start + step * i as f64).collect();
                values[n - 1] = end;
                TimeGrid::new(values)
            }
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// How a correlation value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Walk,
    Direct,
    Critical,
    LeadingExact,
    LeadingLargek,
    LeadingExponential,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Walk => "walk",
            Method::Direct => "direct",
            Method::Critical => "critical",
            Method::LeadingExact => "leading-exact",
            Method::LeadingLargek => "leading-largek",
            Method::LeadingExponential => "leading-exponential",
        }
    }

    /// Methods whose values are exact correlation values, bounded by 2.
    pub fn is_bounded(&self) -> bool {
        matches!(self, Method::Walk | Method::Direct | Method::Critical)
    }
}

/// `C_k(s_i)` for one qubit over a time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSeries {
    pub qubit_index: usize,
    pub times: TimeGrid,
    pub values: Vec<f64>,
    pub method: Method,
}

impl CorrelationSeries {
    pub fn new(qubit_index: usize, times: TimeGrid, values: Vec<f64>, method: Method) -> Result<Self> {
        if values.len() != times.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} times",
                values.len(),
                times.len()
            )));
        }
        if method.is_bounded() {
            if let Some(v) = values.iter().find(|v| !(0.0..=2.0).contains(*v)) {
                return Err(Error::InvalidGrid(format!("correlation value {v} outside [0, 2]")));
            }
        }
        Ok(CorrelationSeries {
            qubit_index,
            times,
            values,
            method,
        })
    }
}
