//! `lrwalk`: commutator spreading in the transverse-field Ising chain.

mod commands;
mod parse;
mod recipe;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] lrwalk::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(e) if e.is_usage() => 1,
            _ => 2,
        }
    }
}

fn digits_arg(v: &str) -> Result<usize, String> {
    let d: usize = v.parse().map_err(|e| format!("{e}"))?;
    if d < lrwalk::walk::highprec::MIN_DIGITS {
        return Err(format!("at least {} digits required", lrwalk::walk::highprec::MIN_DIGITS));
    }
    Ok(d)
}

#[derive(Debug, Parser)]
#[command(name = "lrwalk", version, about = "commutator spreading in the transverse-field Ising chain")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Walk,
    Direct,
    Both,
    Critical,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct Chain {
    /// Number of qubits.
    #[arg(long)]
    pub nq: usize,
    /// Coupling J'.
    #[arg(long)]
    pub jp: f64,
}

#[derive(Debug, Clone, Args)]
pub struct Times {
    /// Explicit times in units of tau, e.g. `1,3,...,39` or `0..2:0.1`.
    #[arg(long)]
    pub s: Option<String>,
    /// Uniform grid end when `--s` is absent.
    #[arg(long)]
    pub smax: Option<f64>,
    /// Uniform grid size when `--s` is absent.
    #[arg(long)]
    pub ns: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time series C_k(s) for a set of qubits.
    Correlate {
        #[command(flatten)]
        chain: Chain,
        /// Qubit indices, e.g. `1..10`.
        #[arg(long)]
        k: Option<String>,
        #[command(flatten)]
        times: Times,
        #[arg(long, value_enum, default_value = "walk")]
        method: MethodArg,
        /// Software precision for the walk, in decimal digits.
        #[arg(long, value_parser = digits_arg)]
        digits: Option<usize>,
        /// Add leading-edge columns.
        #[arg(long)]
        leading: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Spatial profiles C_k at fixed times.
    Snapshot {
        #[command(flatten)]
        chain: Chain,
        #[arg(long)]
        k: Option<String>,
        #[arg(long, default_value = "1,3,...,39")]
        s: String,
        /// Add the semi-infinite closed form (J' = 1 only).
        #[arg(long)]
        critical: bool,
        /// Add leading-edge columns.
        #[arg(long)]
        leading: bool,
        #[arg(long, value_parser = digits_arg)]
        digits: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Leading-edge formulas far down an unbounded chain.
    Leading {
        #[arg(long)]
        jp: f64,
        #[arg(long)]
        k: String,
        #[arg(long)]
        s: String,
        #[command(flatten)]
        output: Output,
    },
    /// Front velocity from threshold crossing times.
    Front {
        #[command(flatten)]
        chain: Chain,
        #[arg(long, default_value_t = lrwalk::analysis::DEFAULT_THRESHOLD)]
        threshold: f64,
        #[arg(long, requires = "kmax")]
        kmin: Option<usize>,
        #[arg(long, requires = "kmin")]
        kmax: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Measured saturation against 2 min(1, 1/J').
    Saturation {
        /// Couplings, e.g. `0.25,0.5,1,1.5,2,3,4`.
        #[arg(long, default_value = "0.25,0.5,1,1.5,2,3,4")]
        jp: String,
        #[arg(long, default_value_t = 300)]
        nq: usize,
        #[arg(long, default_value_t = 10)]
        k: usize,
        /// Measurement window `start,end`; defaults to ten time units
        /// starting five after the front reaches `k`.
        #[arg(long)]
        window: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Measured front velocity against the analytic velocities.
    Velocities {
        #[arg(long, default_value = "0.25,0.5,1,2,4")]
        jp: String,
        #[arg(long, default_value_t = 200)]
        nq: usize,
        #[arg(long, default_value_t = lrwalk::analysis::DEFAULT_THRESHOLD)]
        threshold: f64,
        #[command(flatten)]
        output: Output,
    },
    /// log10 C_k(s) over a (k, s) grid with isocontour speeds.
    Lightcone {
        #[command(flatten)]
        chain: Chain,
        #[arg(long)]
        k: Option<String>,
        #[command(flatten)]
        times: Times,
        #[arg(long, value_parser = digits_arg)]
        digits: Option<usize>,
        /// Contour levels in log10, e.g. `-1,-20,...,-100`.
        #[arg(long, allow_hyphen_values = true)]
        contours: Option<String>,
        /// Emit contour points instead of the grid.
        #[arg(long)]
        contour_table: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Wall-clock comparison of the walk and the dense oracle.
    Bench {
        #[arg(long, default_value_t = 10)]
        nq: usize,
        #[arg(long, default_value_t = 0.5)]
        jp: f64,
        #[arg(long, default_value_t = 3.0)]
        smax: f64,
        #[arg(long, default_value_t = 201)]
        ns: usize,
        /// Chain lengths for the walk scaling fit.
        #[arg(long, default_value = "50,100,200,400")]
        scaling: String,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, value_parser = digits_arg)]
        digits: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Operator nodes of the walk and the weights linking neighbours.
    Graph {
        #[command(flatten)]
        chain: Chain,
        #[command(flatten)]
        output: Output,
    },
    /// Run a TOML recipe from the recipes directory.
    Recipe {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the parsed invocation without running it.
        #[arg(long)]
        dry_run: bool,
    },
}

pub fn run(cli: Cli, sink: &mut dyn Write) -> Result<(), CliError> {
    if let Command::Recipe { path, out, dry_run } = &cli.command {
        let (description, mut inner) = recipe::load(path)?;
        if *dry_run {
            writeln!(sink, "{}\n{:?}", description.trim(), inner.command)?;
            return Ok(());
        }
        eprintln!("recipe: {}", description.trim());
        if let Some(o) = out {
            commands::override_out(&mut inner.command, o.clone());
        }
        return commands::dispatch(inner.command, sink);
    }
    commands::dispatch(cli.command, sink)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
