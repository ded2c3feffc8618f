//! List syntax for `--k`, `--s` and `--jp`.
//!
//! Accepted forms: `3`, `1,4,9`, `1..10` (inclusive), `1..10:3` (stepped) and
//! arithmetic continuation `1,3,...,39`.

use crate::CliError;

fn number(tok: &str) -> Result<f64, CliError> {
    tok.trim()
        .parse::<f64>()
        .map_err(|_| CliError::Usage(format!("not a number: {tok:?}")))
}

/// Expands a list of reals.
pub fn real_list(text: &str) -> Result<Vec<f64>, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(CliError::Usage("empty list".into()));
    }
    if let Some((a, rest)) = text.split_once("..") {
        if !a.contains(',') && !rest.starts_with('.') {
            let (b, step) = match rest.split_once(':') {
                Some((b, st)) => (number(b)?, number(st)?),
                None => (number(rest)?, 1.0),
            };
            return progression(number(a)?, step, b);
        }
    }
    let toks: Vec<&str> = text.split(',').map(str::trim).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        if toks[i] == "..." {
            if out.len() < 2 || i + 1 >= toks.len() {
                return Err(CliError::Usage(format!(
                    "'...' needs two values before and one after in {text:?}"
                )));
            }
            let step = out[out.len() - 1] - out[out.len() - 2];
            let start = out[out.len() - 1] + step;
            let end = number(toks[i + 1])?;
            let mut tail = progression(start, step, end)?;
            out.append(&mut tail);
            if out.last() != Some(&end) {
                return Err(CliError::Usage(format!("{end} is not on the progression in {text:?}")));
            }
            i += 2;
        } else {
            out.push(number(toks[i])?);
            i += 1;
        }
    }
    Ok(out)
}

fn progression(start: f64, step: f64, end: f64) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0) || end < start - 1e-12 * step {
        return Err(CliError::Usage(format!("bad progression {start}..{end} step {step}")));
    }
    let n = ((end - start) / step + 1e-9).floor() as usize;
    if n > 10_000_000 {
        return Err(CliError::Usage("progression too long".into()));
    }
    Ok((0..=n)
        .map(|i| {
            let v = start + step * i as f64;
            if (v - end).abs() < 1e-9 * step {
                end
            } else {
                v
            }
        })
        .collect())
}

/// Expands a list of positive integers.
pub fn index_list(text: &str) -> Result<Vec<usize>, CliError> {
    real_list(text)?
        .into_iter()
        .map(|v| {
            if v >= 1.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                Err(CliError::Usage(format!("{v} is not a qubit index")))
            }
        })
        .collect()
}
