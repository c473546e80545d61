//! The `crossbell` command line.
//!
//! Exit codes: 0 on success, 1 when a fidelity or verification check fails,
//! 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bellkit::{cross_bell_basis, CrossBellIndex};
use crate::error::Error;
use crate::fixtures;
use crate::measurement::{outcome_distribution, MeasurementPlan};
use crate::oracle::{self, MAX_EXHAUSTIVE_PAIRS};
use crate::protocol::{self, prepare_total_state, ChannelSpec, FIDELITY_TOL};
use crate::statevec::{StateVector, QUBIT_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "crossbell",
    version,
    about = "Teleport multipartite qubit states through cross Bell channels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every cross Bell basis state on 2N qubits.
    Basis {
        #[arg(long = "n")]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Run seeded teleportation trials.
    Teleport(RunConfig),
    /// Print the exact distribution of Alice's outcomes.
    Distribution(RunConfig),
    /// Run the brute-force verification suite.
    Verify {
        /// A single N or an inclusive range such as `1..3`.
        #[arg(long = "n", default_value = "1..3")]
        n: String,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Ghz,
    W,
    Random,
}

#[derive(Debug, Args)]
pub struct RunConfig {
    /// Number of qubits to teleport (and of Bell pairs in the channel).
    #[arg(long = "n")]
    pub n: usize,
    /// Channel labels λ₁,…,λ_N in 1..=4; defaults to all ψ⁻.
    #[arg(long, value_delimiter = ',')]
    pub channel: Option<Vec<i64>>,
    #[arg(long, value_enum, conflicts_with = "input")]
    pub preset: Option<Preset>,
    /// State file: {"n_qubits": n, "amplitudes": [[re, im], ...]}.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Allowed shortfall of the minimum fidelity below 1.
    #[arg(long, default_value_t = FIDELITY_TOL)]
    pub tolerance: f64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Print only the batch summary.
    #[arg(long)]
    pub summary_only: bool,
}

/// A user-facing failure mapped to an exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Basis { n, format } => cmd_basis(n, format, out),
        Command::Teleport(config) => cmd_teleport(&config, out),
        Command::Distribution(config) => cmd_distribution(&config, out),
        Command::Verify { n, format } => cmd_verify(&n, format, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn check_pairs(n: usize, qubits_per_pair: usize) -> Result<(), Failure> {
    if n == 0 || qubits_per_pair * n > QUBIT_CAP {
        return Err(usage(format!(
            "--n must be in 1..={} (qubit cap {QUBIT_CAP})",
            QUBIT_CAP / qubits_per_pair
        )));
    }
    Ok(())
}

fn ket(index: usize, n_qubits: usize) -> String {
    (0..n_qubits)
        .map(|q| {
            if (index >> (n_qubits - 1 - q)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

fn cmd_basis(n: usize, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    check_pairs(n, 2)?;
    let basis = cross_bell_basis(n)?;
    let indices = CrossBellIndex::all(n);
    match format {
        Format::Json => {
            let states: Vec<_> = indices
                .zip(&basis)
                .map(|(idx, s)| {
                    let file = s.to_file_format();
                    json!({"labels": idx, "n_qubits": file.n_qubits, "amplitudes": file.amplitudes})
                })
                .collect();
            serde_json::to_writer(&mut *out, &json!({"n_pairs": n, "states": states}))
                .map_err(Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "labels,basis,re,im")?;
            for (idx, s) in indices.zip(&basis) {
                let label = idx
                    .values()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("-");
                for (b, a) in s.amplitudes().iter().enumerate() {
                    writeln!(out, "{label},{},{},{}", ket(b, 2 * n), a.re, a.im)?;
                }
            }
        }
        Format::Human => {
            writeln!(
                out,
                "cross Bell basis, N={n}: {} states on {} qubits",
                basis.len(),
                2 * n
            )?;
            for (idx, s) in indices.zip(&basis) {
                let terms: Vec<String> = s
                    .amplitudes()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.norm() > 1e-15)
                    .map(|(b, a)| format!("{:+.6}|{}>", a.re, ket(b, 2 * n)))
                    .collect();
                writeln!(out, "{idx}: {}", terms.join(" "))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn resolve(config: &RunConfig) -> Result<(ChannelSpec, StateVector), Failure> {
    check_pairs(config.n, 3)?;
    let labels = match &config.channel {
        Some(values) => CrossBellIndex::from_values(values)?,
        None => CrossBellIndex::uniform(config.n, crate::bellkit::BellLabel::PSI_MINUS),
    };
    if labels.len() != config.n {
        return Err(usage(format!(
            "--channel has {} labels but --n is {}",
            labels.len(),
            config.n
        )));
    }
    let input = match (&config.input, config.preset) {
        (Some(path), _) => StateVector::read_file(path)?,
        (None, Some(Preset::Ghz)) => fixtures::ghz(config.n)?,
        (None, Some(Preset::W)) => fixtures::w(config.n)?,
        (None, Some(Preset::Random)) => fixtures::haar_random(config.n, config.seed)?,
        (None, None) => return Err(usage("one of --preset or --input is required")),
    };
    if input.n_qubits() != config.n {
        return Err(usage(format!(
            "input state has {} qubits but --n is {}",
            input.n_qubits(),
            config.n
        )));
    }
    Ok((ChannelSpec::new(labels)?, input))
}

fn cmd_teleport(config: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    if config.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let (channel, input) = resolve(config)?;
    let batch = protocol::run_batch(&channel, &input, config.trials, config.seed, config.threads)?;
    let summary = &batch.summary;
    match config.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Output<'a> {
                summary: &'a protocol::BatchSummary,
                #[serde(skip_serializing_if = "Option::is_none")]
                reports: Option<&'a [protocol::TeleportationReport]>,
            }
            let doc = Output {
                summary,
                reports: (!config.summary_only).then_some(batch.reports.as_slice()),
            };
            serde_json::to_writer(&mut *out, &doc).map_err(Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            if config.summary_only {
                writeln!(out, "outcome,count")?;
                for c in &summary.counts {
                    writeln!(out, "{},{}", dashed(&c.outcome), c.count)?;
                }
            } else {
                writeln!(
                    out,
                    "trial,channel,outcome,probability,message_hex,fidelity,seed"
                )?;
                for r in &batch.reports {
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        r.trial,
                        dashed(r.channel.labels()),
                        dashed(&r.outcome),
                        r.probability,
                        r.message.to_hex(),
                        r.fidelity,
                        r.seed.map(|s| s.to_string()).unwrap_or_default()
                    )?;
                }
            }
        }
        Format::Human => {
            writeln!(
                out,
                "channel {} | {} trials | seed {}",
                channel.labels(),
                summary.trials,
                summary.seed
            )?;
            if !config.summary_only {
                for r in &batch.reports {
                    writeln!(
                        out,
                        "trial {:>6}: outcome {} p={:.6} message 0x{} fidelity {:.12}",
                        r.trial,
                        r.outcome,
                        r.probability,
                        r.message.to_hex(),
                        r.fidelity
                    )?;
                }
            }
            writeln!(
                out,
                "min fidelity {:.12}, mean fidelity {:.12}, max |z| of outcome counts {:.3}",
                summary.min_fidelity, summary.mean_fidelity, summary.max_abs_z
            )?;
        }
    }
    Ok(if summary.min_fidelity >= 1.0 - config.tolerance {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

fn dashed(idx: &CrossBellIndex) -> String {
    idx.values()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("-")
}

fn cmd_distribution(config: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let (channel, input) = resolve(config)?;
    let total = prepare_total_state(&channel, &input)?;
    let dist = outcome_distribution(&total, &MeasurementPlan::teleportation(channel.n_pairs()))?;
    let sum: f64 = dist.values().sum();
    match config.format {
        Format::Json => {
            let rows: Vec<_> = dist
                .iter()
                .map(|(idx, p)| json!({"outcome": idx, "probability": p}))
                .collect();
            let doc = json!({"channel": channel, "distribution": rows, "total": sum});
            serde_json::to_writer(&mut *out, &doc).map_err(Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "outcome,probability")?;
            for (idx, p) in &dist {
                writeln!(out, "{},{}", dashed(idx), p)?;
            }
        }
        Format::Human => {
            writeln!(out, "channel {}: {} outcomes", channel.labels(), dist.len())?;
            for (idx, p) in &dist {
                writeln!(out, "{idx} {p:.12}")?;
            }
            writeln!(out, "total {sum:.12}")?;
        }
    }
    Ok(EXIT_OK)
}

/// Parses `3` or `1..3` (inclusive).
pub fn parse_range(text: &str) -> Option<RangeInclusive<usize>> {
    let text = text.trim();
    let range = match text.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            a.trim().parse().ok()?..=b.trim().parse().ok()?
        }
        None => {
            let n = text.parse().ok()?;
            n..=n
        }
    };
    (!range.is_empty()).then_some(range)
}

fn cmd_verify(n: &str, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let range = parse_range(n)
        .filter(|r| *r.start() >= 1 && *r.end() <= MAX_EXHAUSTIVE_PAIRS)
        .ok_or_else(|| {
            usage(format!(
                "--n must be N or A..B within 1..={MAX_EXHAUSTIVE_PAIRS}"
            ))
        })?;
    let results = oracle::run_suite(range)?;
    let all_passed = results.iter().all(|r| r.passed);
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &json!({"passed": all_passed, "checks": results}))
                .map_err(Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "check,n,status,max_residual,tolerance,errata")?;
            for r in &results {
                writeln!(
                    out,
                    "{},{},{},{:e},{:e},{}",
                    r.check,
                    r.n_pairs.map(|n| n.to_string()).unwrap_or_default(),
                    r.status(),
                    r.max_residual,
                    r.tolerance,
                    r.errata.len()
                )?;
            }
        }
        Format::Human => {
            for r in &results {
                writeln!(out, "{r}")?;
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            writeln!(out, "{} checks, {} failed", results.len(), failed)?;
        }
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_FAILURE })
}
