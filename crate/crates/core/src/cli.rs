//! The `lcs-lab` command line.
//!
//! Every subcommand renders its artifact into memory first, inside a rayon
//! pool sized by `--threads`, and only then writes it out, so a failure
//! never leaves a partial table behind.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::combinatorics::{embed_prob, embed_prob_mc, exact_lcs_distribution};
use crate::engine::Engine;
use crate::error::{LcsError, Result};
use crate::estimator::{concentration_check, concentration_exact, figure1_sweep, gamma_table, SweepParams};
use crate::fsm::{calibrate_fsm, diff_table, CalibratedFsm, FsmSpec};
use crate::output::{
    distribution_records, write_table, ConcentrationRecord, EmbedRecord, GammaRecord, PsiRecord, TableFormat,
};
use crate::sequence::BinarySequence;
use crate::{dp, rows};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "lcs-lab", version, about = "LCS engines and Monte Carlo experiments for binary sequences")]
struct Cli {
    /// Worker threads for trials and enumeration (never changes the output).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print L(X, Y).
    Lcs {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value = "rows", value_parser = parse_engine)]
        engine: Engine,
    },
    /// Print L(X_k, Y) for k = 0..=|X|, space separated.
    Prefix {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value = "rows", value_parser = parse_engine)]
        engine: Engine,
    },
    /// Print every row l[0..=m] of the LCS table as CSV.
    Rows {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Print the 0/1 differential table, one row per symbol of X.
    Difftable {
        #[command(flatten)]
        pair: PairArgs,
        /// `dp` or `fsm`.
        #[arg(long, default_value = "dp", value_parser = parse_engine)]
        engine: Engine,
    },
    /// Calibrate the published four-state machine and print the report.
    FsmCalibrate {
        /// Print the frozen config (first survivor) as TOML instead of the report.
        #[arg(long)]
        emit_config: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exact (and optionally sampled) embedding probability p(m, n).
    Embed {
        m: usize,
        n: usize,
        /// Also estimate by Monte Carlo with this many trials.
        #[arg(long)]
        mc: Option<usize>,
        /// Sequence to embed for --mc (default: m ones).
        #[arg(long)]
        x: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: EmbedFormat,
    },
    /// Exact distribution of L over all pairs of lengths m and n.
    Distribution {
        m: usize,
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Estimate gamma_n = E[L(n, n)] / n for each size.
    Gamma {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value = "rows", value_parser = parse_engine)]
        engine: Engine,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sweep E[L(m, n)] / n over m / n next to L*(m, n) / n.
    Psi {
        /// `lo:hi:step` in units of m / n.
        #[arg(long, default_value = "0.5:2:0.025", value_parser = parse_range)]
        alpha_range: (f64, f64, f64),
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// `rows` or `dp`.
        #[arg(long, default_value = "rows", value_parser = parse_engine)]
        engine: Engine,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Deviation frequencies of L(n, n) against the Azuma-Hoeffding bound.
    Concentration {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,4")]
        lambdas: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Use the exact enumerated distribution (n <= 12) instead of sampling.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value = "rows", value_parser = parse_engine)]
        engine: Engine,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct PairArgs {
    /// X as a 0/1 string.
    #[arg(required_unless_present = "x_file")]
    x: Option<String>,
    /// Y as a 0/1 string.
    #[arg(required_unless_present = "y_file")]
    y: Option<String>,
    #[arg(long)]
    x_file: Option<PathBuf>,
    #[arg(long)]
    y_file: Option<PathBuf>,
    /// Files use the packed format: u64 little-endian length, then the packed bytes.
    #[arg(long)]
    packed: bool,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmbedFormat {
    Text,
    Csv,
    Json,
}

fn parse_engine(s: &str) -> std::result::Result<Engine, String> {
    s.parse().map_err(|e: LcsError| e.to_string())
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64, f64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(format!("expected lo:hi:step, got {s:?}"));
    };
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(lo)?, num(hi)?, num(step)?))
}

/// Reads a sequence file: ASCII 0/1 (whitespace ignored) or the packed format.
pub fn read_sequence_file(path: &Path, packed: bool) -> Result<BinarySequence> {
    let bytes = fs::read(path).map_err(|e| LcsError::InvalidArgument(format!("{}: {e}", path.display())))?;
    if packed {
        let (head, body) = bytes
            .split_at_checked(8)
            .ok_or_else(|| LcsError::Malformed(format!("{}: missing length header", path.display())))?;
        let len = u64::from_le_bytes(head.try_into().expect("8 bytes")) as usize;
        BinarySequence::from_packed_bytes(body, len)
    } else {
        let text: String = String::from_utf8_lossy(&bytes).split_whitespace().collect();
        BinarySequence::from_ascii(&text)
    }
}

/// Writes `seq` in the packed file format read by `--packed`.
pub fn write_packed_file(path: &Path, seq: &BinarySequence) -> std::io::Result<()> {
    let mut bytes = (seq.len() as u64).to_le_bytes().to_vec();
    bytes.extend(seq.to_packed_bytes());
    fs::write(path, bytes)
}

impl PairArgs {
    fn load(&self) -> Result<(BinarySequence, BinarySequence)> {
        let one = |text: &Option<String>, file: &Option<PathBuf>| match (file, text) {
            (Some(path), _) => read_sequence_file(path, self.packed),
            (None, Some(t)) => BinarySequence::from_ascii(t),
            (None, None) => Err(LcsError::InvalidArgument("missing sequence".into())),
        };
        // with only --x-file given, the single positional is Y
        let (x_text, y_text) = match (&self.x_file, &self.y_file, &self.x, &self.y) {
            (Some(_), None, Some(t), None) => (None, Some(t.clone())),
            _ => (self.x.clone(), self.y.clone()),
        };
        Ok((one(&x_text, &self.x_file)?, one(&y_text, &self.y_file)?))
    }
}

struct Artifact {
    bytes: Vec<u8>,
    destination: Option<PathBuf>,
    exit_code: i32,
}

impl Artifact {
    fn stdout(bytes: Vec<u8>) -> Self {
        Self { bytes, destination: None, exit_code: 0 }
    }
}

fn table<T: serde::Serialize>(records: &[T], out: &OutputArgs) -> Result<Artifact> {
    let mut bytes = Vec::new();
    write_table(records, out.format, &mut bytes)?;
    Ok(Artifact { bytes, destination: out.output.clone(), exit_code: 0 })
}

fn execute(command: Command) -> Result<Artifact> {
    match command {
        Command::Lcs { pair, engine } => {
            let (x, y) = pair.load()?;
            Ok(Artifact::stdout(format!("{}\n", engine.lcs_length(&x, &y)).into_bytes()))
        }
        Command::Prefix { pair, engine } => {
            let (x, y) = pair.load()?;
            let lengths = match engine {
                Engine::Rows => rows::prefix_lengths(&x, &y),
                Engine::Dp => dp::prefix_lengths(&x, &y),
                other => return Err(LcsError::InvalidArgument(format!("prefix supports dp and rows, not {other}"))),
            };
            let line: Vec<String> = lengths.iter().map(|v| v.to_string()).collect();
            Ok(Artifact::stdout(format!("{}\n", line.join(" ")).into_bytes()))
        }
        Command::Rows { pair } => {
            let (x, y) = pair.load()?;
            let all = rows::lcs_rows(&x, &y, true).rows.expect("rows retained");
            let mut text = String::from("m");
            for j in 0..=y.len() {
                text.push_str(&format!(",j{j}"));
            }
            text.push('\n');
            for (m, r) in all.iter().enumerate() {
                text.push_str(&m.to_string());
                for v in r.iter() {
                    text.push_str(&format!(",{v}"));
                }
                text.push('\n');
            }
            Ok(Artifact::stdout(text.into_bytes()))
        }
        Command::Difftable { pair, engine } => {
            let (x, y) = pair.load()?;
            let t = match engine {
                Engine::Dp => diff_table(&x, &y),
                Engine::Fsm => CalibratedFsm::published().diff_table(&x, &y),
                other => return Err(LcsError::InvalidArgument(format!("difftable supports dp and fsm, not {other}"))),
            };
            Ok(Artifact::stdout(t.to_grid().into_bytes()))
        }
        Command::FsmCalibrate { emit_config, output } => {
            let report = calibrate_fsm(FsmSpec::published());
            let survived = report.first_survivor();
            let bytes = match (emit_config, survived) {
                (true, Some(config)) => config.to_toml(),
                _ => report.to_string(),
            };
            Ok(Artifact {
                bytes: bytes.into_bytes(),
                destination: output,
                exit_code: if survived.is_some() { 0 } else { 1 },
            })
        }
        Command::Embed { m, n, mc, x, seed, format } => {
            let exact = embed_prob(m, n);
            let stats = match mc {
                Some(trials) => {
                    let x = match x {
                        Some(t) => BinarySequence::from_ascii(&t)?,
                        None => BinarySequence::from_symbols(std::iter::repeat(1u8).take(m))?,
                    };
                    if x.len() != m {
                        return Err(LcsError::InvalidArgument(format!("--x has length {}, expected {m}", x.len())));
                    }
                    Some(embed_prob_mc(&x, n, trials, seed)?)
                }
                None => None,
            };
            let record = EmbedRecord::new(m, n, &exact, stats.as_ref());
            let mut bytes = Vec::new();
            match format {
                EmbedFormat::Text => {
                    bytes.extend(format!("{exact} ({})\n", exact.to_f64()).into_bytes());
                    if let Some(s) = stats {
                        bytes.extend(
                            format!("mc {} (err {}, trials {}, seed {})\n", s.mean, s.err, s.trials, s.seed)
                                .into_bytes(),
                        );
                    }
                }
                EmbedFormat::Csv => write_table(&[record], TableFormat::Csv, &mut bytes)?,
                EmbedFormat::Json => write_table(&[record], TableFormat::Json, &mut bytes)?,
            }
            Ok(Artifact::stdout(bytes))
        }
        Command::Distribution { m, n, out } => table(&distribution_records(&exact_lcs_distribution(m, n)?), &out),
        Command::Gamma { sizes, trials, seed, engine, out } => {
            let stats = gamma_table(&sizes, trials, seed, engine)?;
            let records: Vec<_> = stats.iter().map(|s| GammaRecord::new(engine, s)).collect();
            table(&records, &out)
        }
        Command::Psi { alpha_range: (alpha_lo, alpha_hi, alpha_step), n, trials, seed, engine, out } => {
            let sweep = figure1_sweep(&SweepParams { n, alpha_lo, alpha_hi, alpha_step, trials, seed, engine })?;
            let records: Vec<_> = sweep.iter().map(|r| PsiRecord::new(engine, r)).collect();
            table(&records, &out)
        }
        Command::Concentration { n, trials, lambdas, seed, exact, engine, out } => {
            let rows = if exact {
                concentration_exact(n, &lambdas)?
            } else {
                concentration_check(n, trials, &lambdas, seed, engine)?
            };
            let records: Vec<_> = rows.iter().map(|r| ConcentrationRecord::new(engine, seed, r)).collect();
            table(&records, &out)
        }
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// its artifact. Returns the process exit code: 0 on success, 1 on a
/// runtime failure, 2 on bad arguments.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "lcs-lab: {}", line.trim_start_matches("error: "));
            return 2;
        }
    };

    let result = match cli.threads {
        Some(0) => Err(LcsError::InvalidArgument("--threads must be at least 1".into())),
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| LcsError::InvalidArgument(format!("thread pool: {e}")))
            .and_then(|pool| pool.install(|| execute(cli.command))),
        None => execute(cli.command),
    };

    let artifact = match result {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "lcs-lab: {e}");
            return 1;
        }
    };
    let written = match &artifact.destination {
        Some(path) => fs::write(path, &artifact.bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => out.write_all(&artifact.bytes).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => artifact.exit_code,
        Err(e) => {
            let _ = writeln!(err, "lcs-lab: {e}");
            1
        }
    }
}
