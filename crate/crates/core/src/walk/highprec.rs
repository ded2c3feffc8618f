//! Arbitrary-precision walk row for deep-tail values.
//!
//! The row vector is advanced in short Taylor steps `r <- r exp(-dtheta A')`
//! with `dtheta (1 + J') <= 1`, so no term of a step exceeds the row norm and
//! the working precision only needs `digits + 10` guard digits plus the
//! logarithm of the step count. Precision is absolute with respect to the unit
//! row: `digits = 120` resolves `C_k` down to about `1e-120`.

use astro_float::{BigFloat, Consts, RoundingMode};

use super::{check_time, spectral_bound, superdiagonal};
use crate::asymptotics::LogValue;
use crate::error::{Error, Result};
use crate::model::ChainParams;

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_DIGITS: usize = 10;
const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Smallest accepted precision request.
pub const MIN_DIGITS: usize = 16;

/// `log10 |x|`, or `None` for zero.
pub fn bigfloat_log10(x: &BigFloat) -> Option<f64> {
    if x.is_zero() {
        return None;
    }
    let words = x.mantissa_digits()?;
    let exp = x.exponent()? as f64;
    let top = *words.last()? as f64;
    let next = if words.len() > 1 { words[words.len() - 2] as f64 } else { 0.0 };
    // Mantissa is a fraction in [1/2, 1) stored most significant word last.
    let frac = (top + next / 18_446_744_073_709_551_616.0) / 18_446_744_073_709_551_616.0;
    Some(frac.log10() + exp * std::f64::consts::LOG10_2)
}

/// Nearest `f64`, flushing to zero or infinity outside the `f64` range.
pub fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    match bigfloat_log10(x) {
        None => 0.0,
        Some(l) => {
            let sign = if x.is_negative() { -1.0 } else { 1.0 };
            sign * 10f64.powf(l)
        }
    }
}

/// Row vector of `exp(-theta A')` held in software floating point.
pub struct HighPrecWalk {
    params: ChainParams,
    digits: usize,
    bits: usize,
    coupling: Vec<BigFloat>,
    two_pi: BigFloat,
    row: Vec<BigFloat>,
    s: f64,
}

impl HighPrecWalk {
    /// `max_s` bounds the latest time requested, used to size the guard digits.
    pub fn new(params: ChainParams, digits: usize, max_s: f64) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::Precision(format!(
                "at least {MIN_DIGITS} digits required, got {digits}"
            )));
        }
        check_time(max_s)?;
        let steps = step_count(params, max_s).max(1) as f64;
        let working = digits + GUARD_DIGITS + steps.log10().ceil() as usize + 5;
        let bits = ((working as f64 * LOG2_10).ceil() as usize).div_ceil(64) * 64;
        let mut cc = Consts::new().map_err(|e| Error::Precision(format!("{e:?}")))?;
        let pi = cc.pi(bits, RM);
        if pi.is_nan() {
            return Err(Error::Precision("pi unavailable".into()));
        }
        let two_pi = pi.mul(&BigFloat::from_f64(2.0, bits), bits, RM);
        let coupling = superdiagonal(params)
            .into_iter()
            .map(|b| BigFloat::from_f64(b, bits))
            .collect();
        let mut row = vec![BigFloat::from_f64(0.0, bits); 2 * params.n_qubits];
        row[0] = BigFloat::from_f64(1.0, bits);
        Ok(HighPrecWalk {
            params,
            digits,
            bits,
            coupling,
            two_pi,
            row,
            s: 0.0,
        })
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    /// Working precision in bits.
    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn time(&self) -> f64 {
        self.s
    }

    pub fn row(&self) -> &[BigFloat] {
        &self.row
    }

    /// Moves forward to time `s`; going backwards restarts from zero.
    pub fn advance_to(&mut self, s: f64) -> Result<()> {
        check_time(s)?;
        if s < self.s {
            let p = self.bits;
            for v in self.row.iter_mut() {
                *v = BigFloat::from_f64(0.0, p);
            }
            self.row[0] = BigFloat::from_f64(1.0, p);
            self.s = 0.0;
        }
        let ds = s - self.s;
        if ds == 0.0 {
            return Ok(());
        }
        let n_steps = step_count(self.params, ds).max(1);
        let h = BigFloat::from_f64(ds, self.bits).div(&BigFloat::from_f64(n_steps as f64, self.bits), self.bits, RM);
        let dtheta = self.two_pi.mul(&h, self.bits, RM);
        for _ in 0..n_steps {
            self.taylor_step(&dtheta)?;
        }
        self.s = s;
        Ok(())
    }

    /// `r <- r exp(-dtheta A')`.
    fn taylor_step(&mut self, dtheta: &BigFloat) -> Result<()> {
        let p = self.bits;
        let dim = self.row.len();
        let neg = dtheta.neg();
        let mut term = self.row.clone();
        let mut sum = self.row.clone();
        for n in 1..10_000usize {
            let factor = neg.div(&BigFloat::from_f64(n as f64, p), p, RM);
            let mut next = vec![BigFloat::from_f64(0.0, p); dim];
            for (i, b) in self.coupling.iter().enumerate() {
                // (v A')_{i+1} += v_i b_i, (v A')_i -= v_{i+1} b_i.
                let up = term[i].mul(b, p, RM);
                next[i + 1] = next[i + 1].add(&up, p, RM);
                let down = term[i + 1].mul(b, p, RM);
                next[i] = next[i].sub(&down, p, RM);
            }
            let mut largest: Option<f64> = None;
            for (v, s) in next.iter_mut().zip(sum.iter_mut()) {
                *v = v.mul(&factor, p, RM);
                *s = s.add(v, p, RM);
                if let Some(l) = bigfloat_log10(v) {
                    largest = Some(largest.map_or(l, |m: f64| m.max(l)));
                }
            }
            term = next;
            if term.iter().any(|v| v.is_nan()) {
                return Err(Error::Precision("non-finite value in Taylor step".into()));
            }
            match largest {
                None => break,
                Some(l) if l < -(p as f64) / LOG2_10 - 2.0 => break,
                _ => {}
            }
        }
        self.row = sum;
        Ok(())
    }

    /// `C_k` for every `k` at the current time, in log form.
    pub fn correlations(&self) -> Vec<LogValue> {
        let p = self.bits;
        let dim = self.row.len();
        let mut tail = BigFloat::from_f64(0.0, p);
        let mut out = vec![LogValue::ZERO; self.params.n_qubits];
        for m in (1..dim).rev() {
            let sq = self.row[m].mul(&self.row[m], p, RM);
            tail = tail.add(&sq, p, RM);
            if m % 2 == 1 {
                let k = m.div_ceil(2);
                out[k - 1] = match bigfloat_log10(&tail) {
                    None => LogValue::ZERO,
                    Some(l) => LogValue::positive(std::f64::consts::LOG10_2 + 0.5 * l.min(0.0)),
                };
            }
        }
        out
    }

    /// `C_k` at time `s`.
    pub fn correlation(&mut self, k: usize, s: f64) -> Result<LogValue> {
        self.params.check_qubit(k)?;
        self.advance_to(s)?;
        Ok(self.correlations()[k - 1])
    }
}

/// Taylor steps needed so that each covers `theta (1 + J') <= 1`.
fn step_count(p: ChainParams, s: f64) -> usize {
    let z = 2.0 * std::f64::consts::PI * s * spectral_bound(p);
    z.ceil().max(0.0) as usize
}

/// `C_k(s)` in software arbitrary precision with `digits` significant digits
/// relative to the unit row.
pub fn lr_walk_highprec(p: ChainParams, k: usize, s: f64, digits: usize) -> Result<LogValue> {
    p.check_qubit(k)?;
    check_time(s)?;
    if s == 0.0 {
        if digits < MIN_DIGITS {
            return Err(Error::Precision(format!(
                "at least {MIN_DIGITS} digits required, got {digits}"
            )));
        }
        return Ok(LogValue::ZERO);
    }
    let mut w = HighPrecWalk::new(p, digits, s)?;
    w.correlation(k, s)
}
