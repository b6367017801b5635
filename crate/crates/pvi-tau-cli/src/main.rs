use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use pvi_tau::analysis::{zero_two_n_index, DEFAULT_BUDGET};
use pvi_tau::taulattice::{Family, KIndex, Lattice, LatticeError};
use pvi_tau_cli::cache::{CacheError, CacheFile};
use pvi_tau_cli::render::{render_export, render_value, ExportFormat, ValueFormat};
use pvi_tau_cli::verify::{self, Suite, VerifyOptions};
use pvi_tau_cli::CliError;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pvi-tau", version, about = "Tau-function lattice of Picard's PVI solution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum FamilyName {
    /// t^(n,n,0,0)
    Nn00,
    /// t^(n+1,n,0,−1)
    N1n0m1,
    /// t^(0,2n,0,0)
    #[value(name = "02n00")]
    ZeroTwoN,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one lattice value t^(k).
    Compute {
        /// Index as four comma-separated integers with even sum.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "family")]
        k: Option<Vec<i64>>,
        #[arg(long, value_enum, requires = "n")]
        family: Option<FamilyName>,
        #[arg(long)]
        n: Option<i64>,
        /// Maximum number of lattice entries to hold.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, env = "PVI_TAU_CACHE")]
        cache: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "pretty")]
        format: ValueFormat,
    },
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Index radius for grid-based suites.
        #[arg(long, default_value_t = 2)]
        grid: i64,
        /// Decimal digits for the modular suite.
        #[arg(long, default_value_t = 60)]
        precision: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Write the cache in canonical order.
    Export {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "json-like")]
        format: ExportFormat,
        #[arg(long, env = "PVI_TAU_CACHE")]
        cache: Option<PathBuf>,
    },
}

fn target(k: Option<Vec<i64>>, family: Option<FamilyName>, n: Option<i64>) -> Result<KIndex> {
    let k = match (k, family, n) {
        (Some(k), _, _) => {
            let k: [i64; 4] =
                k.try_into().map_err(|_| CliError::Usage("--k takes exactly four integers".into()))?;
            KIndex::new(k).map_err(LatticeError::from).map_err(CliError::from)?
        }
        (None, Some(f), Some(n)) => match f {
            FamilyName::Nn00 => Family::NN00.index(n),
            FamilyName::N1n0m1 => Family::N1N0M1.index(n),
            FamilyName::ZeroTwoN => zero_two_n_index(n),
        },
        _ => return Err(CliError::Usage("give either --k or --family with --n".into()).into()),
    };
    Ok(k)
}

fn load_cache(path: Option<&PathBuf>) -> Result<CacheFile> {
    match path {
        Some(p) => Ok(CacheFile::load(p).map_err(CliError::from)?),
        None => Ok(CacheFile::empty()),
    }
}

fn compute(
    k: KIndex,
    budget: usize,
    cache: Option<PathBuf>,
    format: ValueFormat,
    out: &mut impl Write,
) -> Result<()> {
    let lat = Lattice::new();
    let file = load_cache(cache.as_ref())?;
    file.load_into(&lat).map_err(CliError::from)?;
    let entry = lat.compute(&k, budget).map_err(CliError::from)?;
    write!(out, "{}", render_value(&entry.value, format))?;
    if let Some(path) = cache {
        let mut values = file.values().map_err(CliError::from)?;
        if !values.iter().any(|(key, _)| *key == k) {
            values.push((k, entry.value.clone()));
            CacheFile::from_values(values.iter().map(|(a, b)| (a, b))).save(&path).map_err(CliError::from)?;
        }
    }
    Ok(())
}

fn export(out: PathBuf, format: ExportFormat, cache: Option<PathBuf>) -> Result<()> {
    let file = load_cache(cache.as_ref())?;
    let values = file.values().map_err(CliError::from)?;
    let canonical = CacheFile::from_values(values.iter().map(|(a, b)| (a, b)));
    let text = render_export(&canonical, format);
    std::fs::write(&out, text)
        .map_err(|source| CacheError::Io { path: out.display().to_string(), source })
        .map_err(CliError::from)
        .with_context(|| "export failed")?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Compute { k, family, n, budget, cache, format } => {
            compute(target(k, family, n)?, budget, cache, format, &mut out)?;
            Ok(0)
        }
        Command::Verify { suite, grid, precision, budget } => {
            let lines = verify::run(suite, &VerifyOptions { grid, precision, budget });
            for l in &lines {
                writeln!(out, "{l}")?;
            }
            let failed = lines.iter().filter(|l| !l.passed).count();
            writeln!(out, "{} checks, {failed} failed", lines.len())?;
            Ok(if failed == 0 { 0 } else { 1 })
        }
        Command::Export { out: path, format, cache } => {
            export(path, format, cache)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<CliError>().map_or(1, CliError::exit_code);
            ExitCode::from(code as u8)
        }
    }
}
