use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use charclass::enumerate::{self, GridFormat};
use charclass::error::EXIT_USAGE;
use charclass::report::{ErrorDocument, ReportDocument};
use charclass::verify::{self, VerifyConfig, DEFAULT_SAMPLES, DEFAULT_SEED};
use charclass::CliError;
use charclass_core::{classify::classify, validate};
use clap::{Parser, Subcommand, ValueEnum};

/// Characteristic classes and parallelizability of the right generalized
/// complex projective Stiefel manifolds W_{n,k;l}.
#[derive(Debug, Parser)]
#[command(name = "charclass", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a single W_{n,k;l}.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Comma-separated weights, e.g. `1,2` or `-1,3`.
        #[arg(long, allow_hyphen_values = true)]
        l: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Include the derivation trace.
        #[arg(long)]
        explain: bool,
    },
    /// Classify every canonical (n, k, l) up to the given bounds.
    Enumerate {
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        l_max: i64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = GridFormat::Tsv)]
        format: GridFormat,
    },
    /// Run the seeded property suites.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Overridden by the CHARCLASS_SEED environment variable.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        degree_cap: usize,
    },
}

fn parse_weights(s: &str) -> Result<Vec<i64>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|e| CliError::Usage(format!("bad weight {x:?} in --l: {e}")))
        })
        .collect()
}

fn cmd_classify(
    n: i64,
    k: i64,
    l: &str,
    format: ReportFormat,
    explain: bool,
) -> Result<(), CliError> {
    let weights = parse_weights(l)?;
    let params = match validate(n, k, &weights) {
        Ok(p) => p,
        Err(e) => {
            if format == ReportFormat::Json {
                let doc = ErrorDocument::from(&e);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("error serializes")
                );
            }
            return Err(e.into());
        }
    };
    let doc = ReportDocument::new(&classify(&params), explain);
    match format {
        ReportFormat::Text => print!("{}", doc.to_text()),
        ReportFormat::Json => println!("{}", doc.to_json()),
    }
    Ok(())
}

fn cmd_enumerate(
    n_max: u32,
    l_max: i64,
    out: &PathBuf,
    format: GridFormat,
) -> Result<(), CliError> {
    if n_max < 2 {
        return Err(CliError::Usage("--n-max must be at least 2".into()));
    }
    if l_max < 1 {
        return Err(CliError::Usage("--l-max must be at least 1".into()));
    }
    let io_err = |source: io::Error| CliError::Io {
        path: out.display().to_string(),
        source,
    };
    let rows = enumerate::rows(n_max, l_max);
    let mut file = BufWriter::new(File::create(out).map_err(io_err)?);
    enumerate::write_rows(&mut file, &rows, format).map_err(io_err)?;
    eprintln!("wrote {} rows to {}", rows.len(), out.display());
    Ok(())
}

fn cmd_verify(samples: usize, seed: u64, degree_cap: usize) -> Result<(), CliError> {
    let seed = match std::env::var("CHARCLASS_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| CliError::Usage(format!("bad CHARCLASS_SEED {v:?}: {e}")))?,
        Err(_) => seed,
    };
    if samples < 1 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if degree_cap < 2 {
        return Err(CliError::Usage("--degree-cap must be at least 2".into()));
    }
    let cfg = VerifyConfig {
        samples,
        seed,
        degree_cap,
    };
    println!("verify: seed {seed}, {samples} samples, degree cap {degree_cap}");
    let results = verify::run(&cfg);
    let mut stdout = io::stdout().lock();
    for r in &results {
        match &r.counterexample {
            None => {
                let _ = writeln!(stdout, "{:<9} ok      {} checks", r.name, r.checks);
            }
            Some(cx) => {
                let _ = writeln!(stdout, "{:<9} FAILED  after {} checks", r.name, r.checks);
                let _ = writeln!(stdout, "          counterexample: {cx}");
            }
        }
    }
    if results.iter().all(|r| r.passed()) {
        let _ = writeln!(stdout, "all suites passed");
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Classify {
            n,
            k,
            l,
            format,
            explain,
        } => cmd_classify(*n, *k, l, *format, *explain),
        Command::Enumerate {
            n_max,
            l_max,
            out,
            format,
        } => cmd_enumerate(*n_max, *l_max, out, *format),
        Command::Verify {
            samples,
            seed,
            degree_cap,
        } => cmd_verify(*samples, *seed, *degree_cap),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
