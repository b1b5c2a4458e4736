//! `ltbx`: reproducible experiments on the splitting of Landau levels under
//! compactly supported magnetic and electric perturbations.
//!
//! Subcommands: `zxy` (symbolic Z/X/Y forms), `effpot` (printed vs
//! first-principles effective potential, term-level diff on divergence),
//! `toeplitz` (log-domain Toeplitz spectrum, decay and counting tables),
//! `split` (two-pipeline level-splitting counts), `verify` (exact-identity
//! suite). Exit codes: 0 success, 2 config error, 3 numerical precondition
//! failure, 4 identity-suite failure, 5 formula-vs-oracle divergence.
//!
//! The `LTBX_SEED` environment variable is reserved; no stochastic component
//! reads it today.

use clap::{Parser, Subcommand};
use ltbx_cli::commands::{run_effpot, run_split, run_toeplitz, run_zxy, EXIT_CONFIG};
use ltbx_cli::config::{CommandKind, DiskSpec, OutputFormat, RunConfig, SignArg};
use ltbx_cli::verify::run_verify;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "ltbx", version, about = "Landau-level splitting toolbox")]
struct Cli {
    /// JSON config file (or inline JSON starting with '{'); CLI flags
    /// override config values.
    #[arg(long, global = true)]
    config: Option<String>,

    /// Output directory for artifacts (default: current directory).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads; accepted for compatibility, outputs are identical
    /// regardless.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Artifact format.
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<OutputFormat>,

    #[command(subcommand)]
    command: Option<Command>,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        _ => Err("format must be csv or json".into()),
    }
}

fn parse_sign(s: &str) -> Result<SignArg, String> {
    match s {
        "plus" | "+" => Ok(SignArg::Plus),
        "minus" | "-" => Ok(SignArg::Minus),
        _ => Err("sign must be plus or minus".into()),
    }
}

/// `--disk R=1.0` style parameter.
fn parse_disk(s: &str) -> Result<DiskSpec, String> {
    let (key, val) = s
        .split_once('=')
        .ok_or_else(|| "disk takes R=<radius>".to_string())?;
    if key.trim() != "R" {
        return Err(format!("unknown disk parameter {}", key));
    }
    let radius: f64 = val
        .trim()
        .parse()
        .map_err(|_| format!("bad disk radius {}", val))?;
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
    if !(radius > 0.0) {
        return Err("disk radius must be positive".into());
    }
    Ok(DiskSpec { radius })
}

#[derive(Subcommand)]
enum Command {
    /// Emit the symbolic forms Z_q, X_q, Y_q as JSON.
    Zxy {
        #[arg(long)]
        q: Option<u16>,
    },
    /// Compare the closed-form effective potential W± with the
    /// first-principles expansion; exit 5 on divergence.
    Effpot {
        #[arg(long)]
        q: Option<u16>,
        #[arg(long, value_parser = parse_sign)]
        sign: Option<SignArg>,
    },
    /// Log-domain Toeplitz eigenvalues, decay diagnostic and counting table.
    Toeplitz {
        /// Disk indicator weight, e.g. --disk R=1
        #[arg(long, value_parser = parse_disk)]
        disk: Option<DiskSpec>,
        /// Background field B°.
        #[arg(long = "B0", alias = "b0")]
        b0: Option<f64>,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Landau-level splitting counts (needs a field spec via --config).
    Split {
        #[arg(long)]
        q: Option<u16>,
        /// Zero-mode basis size N.
        #[arg(long = "N", alias = "n")]
        basis_size: Option<usize>,
        /// Also dump the Rayleigh–Ritz matrices (LTBX binary + CSV).
        #[arg(long)]
        dump_matrices: bool,
    },
    /// Run the exact-identity suite; exit 0 iff every check passes.
    Verify,
}

fn merge(cli: Cli) -> Result<RunConfig, String> {
    let mut cfg = match &cli.config {
        Some(source) => RunConfig::parse(source).map_err(|e| e.to_string())?,
        None => {
            let kind = match &cli.command {
                Some(Command::Zxy { .. }) => CommandKind::Zxy,
                Some(Command::Effpot { .. }) => CommandKind::Effpot,
                Some(Command::Toeplitz { .. }) => CommandKind::Toeplitz,
                Some(Command::Split { .. }) => CommandKind::Split,
                Some(Command::Verify) => CommandKind::Verify,
                None => return Err("no subcommand and no --config given".into()),
            };
            RunConfig::new(kind)
        }
    };
    match cli.command {
        Some(Command::Zxy { q }) => {
            cfg.command = CommandKind::Zxy;
            if q.is_some() {
                cfg.q = q;
            }
        }
        Some(Command::Effpot { q, sign }) => {
            cfg.command = CommandKind::Effpot;
            if q.is_some() {
                cfg.q = q;
            }
            if sign.is_some() {
                cfg.sign = sign;
            }
        }
        Some(Command::Toeplitz { disk, b0, n_max }) => {
            cfg.command = CommandKind::Toeplitz;
            if disk.is_some() {
                cfg.disk = disk;
            }
            if b0.is_some() {
                cfg.b0 = b0;
            }
            if n_max.is_some() {
                cfg.n_max = n_max;
            }
        }
        Some(Command::Split {
            q,
            basis_size,
            dump_matrices,
        }) => {
            cfg.command = CommandKind::Split;
            if q.is_some() {
                cfg.q = q;
            }
            if basis_size.is_some() {
                cfg.basis_size = basis_size;
            }
            if dump_matrices {
                cfg.dump_matrices = Some(true);
            }
        }
        Some(Command::Verify) => cfg.command = CommandKind::Verify,
        None => {}
    }
    if cli.out.is_some() {
        cfg.out = cli.out;
    }
    if cli.format.is_some() {
        cfg.format = cli.format;
    }
    if cli.threads.is_some() {
        cfg.threads = cli.threads;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn main() {
    let cli = Cli::parse();
    let cfg = match merge(cli) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("ltbx: {}", msg);
            std::process::exit(EXIT_CONFIG);
        }
    };
    let code = match cfg.command {
        CommandKind::Zxy => run_zxy(&cfg),
        CommandKind::Effpot => run_effpot(&cfg),
        CommandKind::Toeplitz => run_toeplitz(&cfg),
        CommandKind::Split => run_split(&cfg),
        CommandKind::Verify => run_verify(),
    };
    std::process::exit(code);
}
