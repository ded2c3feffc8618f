//! Subcommand implementations. Each builds a [`Table`] or a JSON value and
//! hands it to [`emit`].

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use lrwalk::analysis::{contour_velocity, default_fit_range};
use lrwalk::walk::highprec::HighPrecWalk;
use lrwalk::walk::TRUST_FLOOR;
use lrwalk::{
    front_velocity, lightcone, lr_critical, lr_leading_exact, lr_leading_exponential, lr_leading_largek,
    measure_saturation, reflection_safe_horizon, saturation_value, v_group_max, v_group_max_numeric,
    v_lieb_robinson, relevant_strings, build_adjacency, ChainParams, DirectOracle, LogValue, TimeGrid, WalkEngine,
};

use crate::parse::{index_list, real_list};
use crate::table::{real, Cell, Table};
use crate::{Chain, CliError, Command, Format, MethodArg, Output, Times};

/// Digits reported for double-precision runs.
const DOUBLE_DIGITS: usize = 16;

fn params(c: &Chain) -> Result<ChainParams, CliError> {
    Ok(ChainParams::new(c.nq, c.jp)?)
}

fn qubits(p: ChainParams, text: &Option<String>) -> Result<Vec<usize>, CliError> {
    let ks = match text {
        Some(s) => index_list(s)?,
        None => (1..=p.n_qubits).collect(),
    };
    for &k in &ks {
        p.check_qubit(k)?;
    }
    Ok(ks)
}

fn time_grid(t: &Times, smax: f64, ns: usize) -> Result<TimeGrid, CliError> {
    if let Some(s) = &t.s {
        if t.smax.is_some() || t.ns.is_some() {
            return Err(CliError::Usage("--s cannot be combined with --smax/--ns".into()));
        }
        return Ok(TimeGrid::new(real_list(s)?)?);
    }
    Ok(TimeGrid::linspace(0.0, t.smax.unwrap_or(smax), t.ns.unwrap_or(ns))?)
}

fn require_critical(p: ChainParams) -> Result<(), CliError> {
    if p.j_coupling != 1.0 {
        return Err(CliError::Usage(format!(
            "the closed form holds only at J' = 1, got {}",
            p.j_coupling
        )));
    }
    Ok(())
}

fn chain_meta(t: &mut Table, p: ChainParams) {
    t.meta("nq", p.n_qubits);
    t.meta("jp", real(p.j_coupling));
}

fn precision_meta(t: &mut Table, digits: Option<usize>) {
    match digits {
        Some(d) => t.meta("precision", format!("software-{d}-digits")),
        None => t.meta("precision", "double"),
    }
    t.meta("trust_floor", real(trust_floor(digits)));
}

fn trust_floor(digits: Option<usize>) -> f64 {
    match digits {
        Some(d) => 10f64.powf(5.0 - d as f64),
        None => TRUST_FLOOR,
    }
}

fn log_trusted(l: &LogValue, s: f64, digits: Option<usize>) -> bool {
    s == 0.0 || l.log10 >= trust_floor(digits).log10()
}

fn value_trusted(c: f64, s: f64) -> bool {
    s == 0.0 || c >= TRUST_FLOOR
}

fn log_cell(l: &LogValue) -> Cell {
    Cell::Real(l.log10)
}

fn leading_log(k: usize, s: f64, j: f64) -> f64 {
    lr_leading_exact(k, s, j).map(|l| l.log10).unwrap_or(f64::NAN)
}

/// Software-precision rows, one per time, of `C_k` for every `k`.
fn highprec_rows(p: ChainParams, grid: &TimeGrid, digits: usize) -> Result<Vec<Vec<LogValue>>, CliError> {
    let s_max = grid.values().last().copied().unwrap_or(0.0);
    let mut w = HighPrecWalk::new(p, digits, s_max)?;
    let mut out = Vec::with_capacity(grid.len());
    for &s in grid.values() {
        w.advance_to(s)?;
        out.push(w.correlations());
    }
    Ok(out)
}

pub fn override_out(cmd: &mut Command, path: PathBuf) {
    let out = match cmd {
        Command::Correlate { output, .. }
        | Command::Snapshot { output, .. }
        | Command::Leading { output, .. }
        | Command::Front { output, .. }
        | Command::Saturation { output, .. }
        | Command::Velocities { output, .. }
        | Command::Lightcone { output, .. }
        | Command::Bench { output, .. }
        | Command::Graph { output, .. } => output,
        Command::Recipe { out, .. } => {
            *out = Some(path);
            return;
        }
    };
    out.out = Some(path);
}

enum Report {
    Table(Table),
    Json(Value),
}

fn emit(report: Report, output: &Output, sink: &mut dyn Write) -> Result<(), CliError> {
    let mut buf: Vec<u8> = Vec::new();
    match (report, output.format) {
        (Report::Table(t), Format::Csv) => t.write_csv(&mut buf)?,
        (Report::Table(t), Format::Json) => {
            serde_json::to_writer_pretty(&mut buf, &t.to_json()).map_err(std::io::Error::from)?;
            buf.push(b'\n');
        }
        (Report::Json(v), _) => {
            serde_json::to_writer_pretty(&mut buf, &v).map_err(std::io::Error::from)?;
            buf.push(b'\n');
        }
    }
    match &output.out {
        Some(path) => std::fs::write(path, buf)?,
        None => sink.write_all(&buf)?,
    }
    Ok(())
}

pub fn dispatch(cmd: Command, sink: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Correlate {
            chain,
            k,
            times,
            method,
            digits,
            leading,
            output,
        } => {
            let t = correlate(&chain, &k, &times, method, digits, leading)?;
            emit(Report::Table(t), &output, sink)
        }
        Command::Snapshot {
            chain,
            k,
            s,
            critical,
            leading,
            digits,
            output,
        } => {
            let t = snapshot(&chain, &k, &s, critical, leading, digits)?;
            emit(Report::Table(t), &output, sink)
        }
        Command::Leading { jp, k, s, output } => emit(Report::Table(leading_table(jp, &k, &s)?), &output, sink),
        Command::Front {
            chain,
            threshold,
            kmin,
            kmax,
            output,
        } => {
            let range = kmin.zip(kmax);
            let r = front(&chain, threshold, range, output.format)?;
            emit(r, &output, sink)
        }
        Command::Saturation {
            jp,
            nq,
            k,
            window,
            output,
        } => emit(Report::Table(saturation(&jp, nq, k, &window)?), &output, sink),
        Command::Velocities {
            jp,
            nq,
            threshold,
            output,
        } => emit(Report::Table(velocities(&jp, nq, threshold)?), &output, sink),
        Command::Lightcone {
            chain,
            k,
            times,
            digits,
            contours,
            contour_table,
            output,
        } => {
            let t = lightcone_table(&chain, &k, &times, digits, &contours, contour_table)?;
            emit(Report::Table(t), &output, sink)
        }
        Command::Bench {
            nq,
            jp,
            smax,
            ns,
            scaling,
            repeats,
            digits,
            output,
        } => emit(Report::Json(bench(nq, jp, smax, ns, &scaling, repeats, digits)?), &output, sink),
        Command::Graph { chain, output } => emit(Report::Table(graph(&chain)?), &output, sink),
        Command::Recipe { .. } => Err(CliError::Usage("recipes cannot invoke other recipes".into())),
    }
}

fn correlate(
    chain: &Chain,
    k: &Option<String>,
    times: &Times,
    method: MethodArg,
    digits: Option<usize>,
    leading: bool,
) -> Result<Table, CliError> {
    let p = params(chain)?;
    let ks = qubits(p, k)?;
    let grid = time_grid(times, 3.0, 301)?;
    if digits.is_some() && method != MethodArg::Walk {
        return Err(CliError::Usage("--digits applies to --method walk only".into()));
    }
    if method == MethodArg::Critical {
        require_critical(p)?;
    }
    let horizons: Vec<f64> = ks
        .iter()
        .map(|&k| reflection_safe_horizon(p, k))
        .collect::<Result<_, _>>()?;
    let min_horizon = horizons.iter().copied().fold(f64::INFINITY, f64::min);

    let mut cols = vec!["s".to_string()];
    let name = |prefix: &str, suffix: &str| -> Vec<String> {
        ks.iter().map(|k| format!("{prefix}{k}{suffix}")).collect()
    };
    match (method, digits) {
        (MethodArg::Walk, Some(_)) => cols.extend(name("log10_C_", "")),
        (MethodArg::Both, _) => {
            cols.extend(name("C_", "_walk"));
            cols.extend(name("C_", "_direct"));
            cols.push("abs_diff".into());
        }
        _ => cols.extend(name("C_", "")),
    }
    if leading {
        cols.extend(name("log10_lead_", ""));
    }
    cols.push("pre_reflection".into());
    cols.push("trusted".into());

    let mut t = Table::new(cols);
    chain_meta(&mut t, p);
    t.meta(
        "method",
        match method {
            MethodArg::Walk => "walk",
            MethodArg::Direct => "direct",
            MethodArg::Both => "walk+direct",
            MethodArg::Critical => "critical-semi-infinite",
        },
    );
    precision_meta(&mut t, digits);
    t.meta("reflection_horizon", real(min_horizon));

    let s_values = grid.values();
    let walk_rows = match method {
        MethodArg::Walk | MethodArg::Both if digits.is_none() => Some(WalkEngine::new(p).grid(&grid)?),
        _ => None,
    };
    let direct_rows = match method {
        MethodArg::Direct | MethodArg::Both => {
            let oracle = DirectOracle::new(p)?;
            Some(s_values.par_iter().map(|&s| oracle.correlations(s)).collect::<Vec<_>>())
        }
        _ => None,
    };
    let hp_rows = match digits {
        Some(d) => Some(highprec_rows(p, &grid, d)?),
        None => None,
    };
    let critical_rows = if method == MethodArg::Critical {
        Some(
            s_values
                .par_iter()
                .map(|&s| ks.iter().map(|&k| lr_critical(k, s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?,
        )
    } else {
        None
    };

    let mut max_diff: f64 = 0.0;
    for (i, &s) in s_values.iter().enumerate() {
        let mut row = vec![Cell::Real(s)];
        let mut ok = true;
        if let Some(hp) = &hp_rows {
            for &k in &ks {
                let l = hp[i][k - 1];
                ok &= log_trusted(&l, s, digits);
                row.push(log_cell(&l));
            }
        } else if let Some(crit) = &critical_rows {
            for &c in &crit[i] {
                ok &= value_trusted(c, s);
                row.push(Cell::Real(c));
            }
        } else {
            for rows in [&walk_rows, &direct_rows].into_iter().flatten() {
                for &k in &ks {
                    let c = rows[i][k - 1];
                    ok &= value_trusted(c, s);
                    row.push(Cell::Real(c));
                }
            }
            if let (Some(w), Some(d)) = (&walk_rows, &direct_rows) {
                let diff = ks
                    .iter()
                    .map(|&k| (w[i][k - 1] - d[i][k - 1]).abs())
                    .fold(0.0, f64::max);
                max_diff = max_diff.max(diff);
                row.push(Cell::Real(diff));
            }
        }
        if leading {
            for &k in &ks {
                row.push(Cell::Real(leading_log(k, s, p.j_coupling)));
            }
        }
        let pre = s <= min_horizon;
        row.push(Cell::Bool(pre));
        row.push(Cell::Bool(pre && ok));
        t.push(row);
    }
    if method == MethodArg::Both {
        t.meta("max_abs_diff", real(max_diff));
    }
    Ok(t)
}

fn snapshot(
    chain: &Chain,
    k: &Option<String>,
    s: &str,
    critical: bool,
    leading: bool,
    digits: Option<usize>,
) -> Result<Table, CliError> {
    let p = params(chain)?;
    if critical {
        require_critical(p)?;
    }
    let ks = qubits(p, k)?;
    let grid = TimeGrid::new(real_list(s)?)?;
    let s_values = grid.values();
    let label = |prefix: &str| -> Vec<String> { s_values.iter().map(|s| format!("{prefix}{s}")).collect() };

    let mut cols = vec!["k".to_string()];
    cols.extend(label(if digits.is_some() { "log10_C_s" } else { "C_s" }));
    if critical {
        cols.extend(label("Ccrit_s"));
    }
    if leading {
        cols.extend(label("log10_lead_s"));
        cols.extend(label("log10_largek_s"));
    }
    cols.push("pre_reflection".into());
    cols.push("trusted".into());
    let mut t = Table::new(cols);
    chain_meta(&mut t, p);
    t.meta("method", if critical { "walk+critical-semi-infinite" } else { "walk" });
    precision_meta(&mut t, digits);

    // [s][k - 1]
    let values: Vec<Vec<LogValue>> = match digits {
        Some(d) => highprec_rows(p, &grid, d)?,
        None => WalkEngine::new(p)
            .grid(&grid)?
            .into_iter()
            .map(|r| r.into_iter().map(LogValue::from_f64).collect())
            .collect(),
    };
    let crit: Option<Vec<Vec<f64>>> = if critical {
        Some(
            ks.par_iter()
                .map(|&k| s_values.iter().map(|&s| lr_critical(k, s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?,
        )
    } else {
        None
    };

    for (j, &k) in ks.iter().enumerate() {
        let horizon = reflection_safe_horizon(p, k)?;
        let mut row = vec![Cell::Int(k as i64)];
        let mut ok = true;
        for (i, &s) in s_values.iter().enumerate() {
            let v = values[i][k - 1];
            ok &= log_trusted(&v, s, digits);
            row.push(if digits.is_some() { log_cell(&v) } else { Cell::Real(v.value()) });
        }
        if let Some(c) = &crit {
            row.extend(c[j].iter().map(|&x| Cell::Real(x)));
        }
        if leading {
            for &s in s_values {
                row.push(Cell::Real(leading_log(k, s, p.j_coupling)));
            }
            for &s in s_values {
                let l = lr_leading_largek(k, s, p.j_coupling).map(|l| l.log10).unwrap_or(f64::NAN);
                row.push(Cell::Real(l));
            }
        }
        let pre = s_values.iter().all(|&s| s <= horizon);
        row.push(Cell::Bool(pre));
        row.push(Cell::Bool(pre && ok));
        t.push(row);
    }
    Ok(t)
}

fn leading_table(jp: f64, k: &str, s: &str) -> Result<Table, CliError> {
    let ks = index_list(k)?;
    let grid = TimeGrid::new(real_list(s)?)?;
    let mut cols = vec!["k".to_string()];
    for s in grid.values() {
        cols.push(format!("log10_exact_s{s}"));
        cols.push(format!("log10_largek_s{s}"));
        cols.push(format!("log10_exponential_s{s}"));
    }
    let mut t = Table::new(cols);
    t.meta("jp", real(jp));
    t.meta("chain", "unbounded");
    let rows: Vec<Vec<Cell>> = ks
        .par_iter()
        .map(|&k| -> Result<Vec<Cell>, CliError> {
            let mut row = vec![Cell::Int(k as i64)];
            for &s in grid.values() {
                row.push(Cell::Real(lr_leading_exact(k, s, jp)?.log10));
                let lk = if k >= 2 { lr_leading_largek(k, s, jp)?.log10 } else { f64::NAN };
                row.push(Cell::Real(lk));
                row.push(Cell::Real(lr_leading_exponential(k, s, jp)?.log10));
            }
            Ok(row)
        })
        .collect::<Result<_, _>>()?;
    for r in rows {
        t.push(r);
    }
    Ok(t)
}

fn front(chain: &Chain, threshold: f64, range: Option<(usize, usize)>, format: Format) -> Result<Report, CliError> {
    let p = params(chain)?;
    let est = front_velocity(p, threshold, range)?;
    let expected = v_group_max(p.j_coupling)?;
    let v_lr = v_lieb_robinson(p.j_coupling);
    if format == Format::Json {
        let mut v = serde_json::to_value(&est).map_err(std::io::Error::from)?;
        if let Value::Object(m) = &mut v {
            m.insert("nq".into(), json!(p.n_qubits));
            m.insert("jp".into(), json!(p.j_coupling));
            m.insert("v_front_expected".into(), json!(expected));
            m.insert("v_lr".into(), json!(v_lr));
        }
        return Ok(Report::Json(v));
    }
    let mut t = Table::new(vec!["k".into(), "s_cross".into()]);
    chain_meta(&mut t, p);
    t.meta("threshold", real(est.threshold));
    t.meta("fit_kmin", est.fit_range.0);
    t.meta("fit_kmax", est.fit_range.1);
    t.meta("velocity", real(est.velocity));
    t.meta("mean_step_reciprocal", real(est.mean_step_reciprocal));
    t.meta("least_squares", real(est.least_squares));
    t.meta("broadening_corrected", real(est.broadening_corrected));
    t.meta("v_front_expected", real(expected));
    t.meta("v_lr", real(v_lr));
    for (k, s) in &est.crossing_times {
        t.push(vec![Cell::Int(*k as i64), Cell::Real(*s)]);
    }
    Ok(Report::Table(t))
}

fn saturation(jp: &str, nq: usize, k: usize, window: &Option<String>) -> Result<Table, CliError> {
    let jps = real_list(jp)?;
    let fixed = match window {
        Some(w) => match real_list(w)?.as_slice() {
            [a, b] => Some((*a, *b)),
            _ => return Err(CliError::Usage("--window takes `start,end`".into())),
        },
        None => None,
    };
    let mut t = Table::new(
        ["jp", "measured", "analytic", "rel_err", "s_start", "s_end"]
            .map(String::from)
            .to_vec(),
    );
    t.meta("nq", nq);
    t.meta("k", k);
    let rows: Vec<Vec<Cell>> = jps
        .par_iter()
        .map(|&j| -> Result<Vec<Cell>, CliError> {
            let p = ChainParams::new(nq, j)?;
            let (a, b) = match fixed {
                Some(w) => w,
                None => {
                    let start = k as f64 / v_group_max(j)? + 5.0;
                    let h = reflection_safe_horizon(p, k)?;
                    (start, (start + 10.0).min(h))
                }
            };
            let measured = measure_saturation(p, k, (a, b))?;
            let analytic = saturation_value(j);
            Ok(vec![
                Cell::Real(j),
                Cell::Real(measured),
                Cell::Real(analytic),
                Cell::Real((measured - analytic).abs() / analytic),
                Cell::Real(a),
                Cell::Real(b),
            ])
        })
        .collect::<Result<_, _>>()?;
    for r in rows {
        t.push(r);
    }
    Ok(t)
}

fn velocities(jp: &str, nq: usize, threshold: f64) -> Result<Table, CliError> {
    let jps = real_list(jp)?;
    let mut t = Table::new(
        [
            "jp",
            "v_front_measured",
            "v_front_expected",
            "v_lr",
            "v_group_max_numeric",
            "rel_err",
            "broadening_corrected",
        ]
        .map(String::from)
        .to_vec(),
    );
    t.meta("nq", nq);
    t.meta("threshold", real(threshold));
    let rows: Vec<Vec<Cell>> = jps
        .par_iter()
        .map(|&j| -> Result<Vec<Cell>, CliError> {
            let p = ChainParams::new(nq, j)?;
            let est = front_velocity(p, threshold, None)?;
            let expected = v_group_max(j)?;
            Ok(vec![
                Cell::Real(j),
                Cell::Real(est.velocity),
                Cell::Real(expected),
                Cell::Real(v_lieb_robinson(j)),
                Cell::Real(v_group_max_numeric(j)?.v_max),
                Cell::Real((est.velocity - expected).abs() / expected),
                Cell::Real(est.broadening_corrected),
            ])
        })
        .collect::<Result<_, _>>()?;
    if let Some(&j) = jps.first() {
        let (a, b) = default_fit_range(ChainParams::new(nq, j)?);
        t.meta("fit_kmin", a);
        t.meta("fit_kmax", b);
    }
    for r in rows {
        t.push(r);
    }
    Ok(t)
}

fn lightcone_table(
    chain: &Chain,
    k: &Option<String>,
    times: &Times,
    digits: Option<usize>,
    contours: &Option<String>,
    contour_table: bool,
) -> Result<Table, CliError> {
    let p = params(chain)?;
    let ks = qubits(p, k)?;
    let grid = time_grid(times, 20.0, 401)?;
    let levels = match contours {
        Some(c) => real_list_signed(c)?,
        None if digits.is_some() => vec![-1.0, -20.0, -40.0, -60.0, -80.0, -100.0],
        None => vec![-1.0],
    };
    let cone = lightcone(p, &ks, &grid, digits)?;
    let mut t = if contour_table {
        Table::new(["level", "k", "s"].map(String::from).to_vec())
    } else {
        Table::new(["k", "s", "log10C", "trusted"].map(String::from).to_vec())
    };
    chain_meta(&mut t, p);
    precision_meta(&mut t, digits);
    t.meta("v_front_expected", real(v_group_max(p.j_coupling)?));
    t.meta("v_lr", real(v_lieb_robinson(p.j_coupling)));
    let mut points = Vec::new();
    for &level in &levels {
        let pts = cone.isocontour(level);
        let v = contour_velocity(&pts).unwrap_or(f64::NAN);
        t.meta(&format!("contour_velocity[{level}]"), real(v));
        points.push((level, pts));
    }
    if contour_table {
        for (level, pts) in points {
            for (k, s) in pts {
                t.push(vec![Cell::Real(level), Cell::Int(k as i64), Cell::Real(s)]);
            }
        }
    } else {
        for (j, &k) in ks.iter().enumerate() {
            for (i, &s) in grid.values().iter().enumerate() {
                t.push(vec![
                    Cell::Int(k as i64),
                    Cell::Real(s),
                    Cell::Real(cone.log10_c[i][j]),
                    Cell::Bool(cone.trusted[i][j]),
                ]);
            }
        }
    }
    Ok(t)
}

/// Like [`real_list`] but accepts descending progressions such as `-1,-20,...,-100`.
fn real_list_signed(text: &str) -> Result<Vec<f64>, CliError> {
    let negated: String = text
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok == "..." {
                tok.to_string()
            } else if let Some(rest) = tok.strip_prefix('-') {
                rest.to_string()
            } else {
                format!("-{tok}")
            }
        })
        .collect::<Vec<_>>()
        .join(",");
    match real_list(&negated) {
        Ok(v) => Ok(v.into_iter().map(|x| -x).collect()),
        Err(_) => real_list(text),
    }
}

fn best_of<F: FnMut() -> Result<(), CliError>>(repeats: usize, mut f: F) -> Result<f64, CliError> {
    let mut best = f64::INFINITY;
    for _ in 0..repeats.max(1) {
        let t0 = Instant::now();
        f()?;
        best = best.min(t0.elapsed().as_secs_f64());
    }
    Ok(best)
}

fn bench(
    nq: usize,
    jp: f64,
    smax: f64,
    ns: usize,
    scaling: &str,
    repeats: usize,
    digits: Option<usize>,
) -> Result<Value, CliError> {
    let p = ChainParams::new(nq, jp)?;
    let grid = TimeGrid::linspace(0.0, smax, ns)?;
    let engine = WalkEngine::new(p);
    let walk = best_of(repeats, || {
        engine.grid(&grid)?;
        Ok(())
    })?;
    let direct = best_of(1, || {
        let oracle = DirectOracle::new(p)?;
        let _: Vec<Vec<f64>> = grid.values().par_iter().map(|&s| oracle.correlations(s)).collect();
        Ok(())
    })?;
    let mut arms = Vec::new();
    let mut logs = (Vec::new(), Vec::new());
    for n in index_list(scaling)? {
        let pn = ChainParams::new(n, jp)?;
        let e = WalkEngine::new(pn);
        let secs = best_of(repeats, || {
            e.grid(&grid)?;
            Ok(())
        })?;
        logs.0.push((n as f64).ln());
        logs.1.push(secs.ln());
        arms.push(json!({ "nq": n, "seconds": secs }));
    }
    let exponent = if logs.0.len() >= 2 {
        lrwalk::analysis::linear_fit(&logs.0, &logs.1)[1]
    } else {
        f64::NAN
    };
    let highprec = match digits {
        Some(d) => {
            let secs = best_of(1, || {
                highprec_rows(p, &grid, d)?;
                Ok(())
            })?;
            json!({ "digits": d, "seconds": secs })
        }
        None => Value::Null,
    };
    Ok(json!({
        "nq": nq,
        "jp": jp,
        "smax": smax,
        "ns": ns,
        "repeats": repeats,
        "precision_digits": digits.unwrap_or(DOUBLE_DIGITS),
        "walk_seconds": walk,
        "direct_seconds": direct,
        "speedup": direct / walk,
        "scaling": arms,
        "scaling_exponent": exponent,
        "highprec": highprec,
    }))
}

fn graph(chain: &Chain) -> Result<Table, CliError> {
    let p = params(chain)?;
    let strings = relevant_strings(p);
    let weights = build_adjacency(p).superdiagonal();
    let mut t = Table::new(["m", "string", "weight_to_next"].map(String::from).to_vec());
    chain_meta(&mut t, p);
    t.meta("edge", "A'[m][m+1] = weight, A'[m+1][m] = -weight");
    for (i, s) in strings.strings().iter().enumerate() {
        let w = weights.get(i).copied().unwrap_or(0.0);
        t.push(vec![Cell::Int(i as i64 + 1), Cell::Text(s.to_string()), Cell::Real(w)]);
    }
    Ok(t)
}
