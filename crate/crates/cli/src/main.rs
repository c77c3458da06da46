use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hsign_cli::commands::{self, OracleForm};
use hsign_cli::{CliError, Fixture, Format, Table};

#[derive(Parser)]
#[command(name = "hsign", version, about = "Sign changes and non-vanishing of Hecke eigenform coefficients")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output path; `-` writes to stdout
    #[arg(long, global = true, default_value = "-")]
    out: String,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    /// Accept fixtures whose eigenvalues break the Ramanujan bound
    #[arg(long, global = true)]
    allow_unchecked: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormName {
    Delta,
    Weight16,
    Synthetic,
}

#[derive(Subcommand)]
enum Command {
    /// Ideal counts of a real quadratic field (or Q with --disc 1)
    Zeta {
        #[arg(long)]
        disc: i64,
        #[arg(long)]
        max_norm: u64,
        /// Count only ideals coprime to this ideal, e.g. `11.0*2`
        #[arg(long)]
        coprime_to: Option<String>,
        /// Also report the truncated sum at this s (> 1)
        #[arg(long)]
        s: Option<f64>,
    },
    /// Signs of C(m,f)C(m,g) for two forms of different weight
    Signs {
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        max_norm: u64,
    },
    /// Joint non-vanishing along the powers of one prime
    Density {
        f: PathBuf,
        g: PathBuf,
        /// Prime ideal spec, `p` or `p.i`
        #[arg(long)]
        prime: String,
        #[arg(long, default_value_t = 100_000)]
        x: u64,
    },
    /// Remove the coefficients at multiples of q
    Kill {
        f: PathBuf,
        #[arg(long)]
        q: String,
        #[arg(long)]
        max_norm: u64,
    },
    /// Truncated Rankin-Selberg series
    Rankin {
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        s: f64,
        #[arg(long, alias = "max-norm")]
        terms: u64,
        /// Include the Gamma factors
        #[arg(long)]
        completed: bool,
        /// Extra ideal to restrict to
        #[arg(long)]
        restrict: Option<String>,
    },
    /// Write an eigenvalue fixture
    Oracle {
        #[arg(long, value_enum)]
        form: FormName,
        /// Largest prime norm to include
        #[arg(long, alias = "max-norm")]
        primes: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Field discriminant for synthetic forms
        #[arg(long, default_value_t = 5)]
        disc: i64,
        /// Comma-separated weights for synthetic forms
        #[arg(long, default_value = "2,2")]
        weights: String,
        /// Level for synthetic forms
        #[arg(long, default_value = "1")]
        level: String,
    },
    /// Check the Ramanujan bound at every prime of a fixture
    Validate { f: PathBuf },
}

fn open_out(path: &str) -> Result<Box<dyn Write>, CliError> {
    Ok(if path == "-" {
        Box::new(io::stdout().lock())
    } else {
        Box::new(File::create(path)?)
    })
}

fn emit(table: &Table, common: &Common) -> Result<(), CliError> {
    let format = match common.format {
        OutFormat::Csv => Format::Csv,
        OutFormat::Tsv => Format::Tsv,
    };
    table.write(open_out(&common.out)?, format)
}

fn warn(lines: &[String]) {
    for l in lines {
        eprintln!("warning: {l}");
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = &cli.common;
    let load = |p: &PathBuf| Fixture::load(p, common.allow_unchecked);
    match &cli.command {
        Command::Zeta {
            disc,
            max_norm,
            coprime_to,
            s,
        } => {
            let out = commands::cmd_zeta(*disc, *max_norm, coprime_to.as_deref(), *s)?;
            emit(&out.table, common)?;
            if let Some(p) = out.partial {
                eprintln!("partial sum {:.11e} over {} terms, tail <= {:.3e}", p.value, p.terms, p.tail_bound);
            }
        }
        Command::Signs { f, g, max_norm } => {
            let r = commands::cmd_signs(&load(f)?, &load(g)?, *max_norm)?;
            warn(&r.warnings);
            emit(&r.table, common)?;
            let first = |m: &Option<hsign_core::Ideal>| m.as_ref().map_or("-".to_string(), |m| m.to_string());
            eprintln!(
                "positive {} (first {}), negative {} (first {}), zero {} (first {}), skipped {}",
                r.positive,
                first(&r.first_positive),
                r.negative,
                first(&r.first_negative),
                r.zero,
                first(&r.first_zero),
                r.skipped
            );
        }
        Command::Density { f, g, prime, x } => {
            let out = commands::cmd_density(&load(f)?, &load(g)?, prime, *x)?;
            warn(&out.warnings);
            emit(&out.table, common)?;
        }
        Command::Kill { f, q, max_norm } => {
            emit(&commands::cmd_kill(&load(f)?, q, *max_norm)?, common)?;
        }
        Command::Rankin {
            f,
            g,
            s,
            terms,
            completed,
            restrict,
        } => {
            let out = commands::cmd_rankin(&load(f)?, &load(g)?, *s, *terms, *completed, restrict.as_deref())?;
            emit(&out.table, common)?;
        }
        Command::Oracle {
            form,
            primes,
            seed,
            disc,
            weights,
            level,
        } => {
            let form = match form {
                FormName::Delta => OracleForm::Delta,
                FormName::Weight16 => OracleForm::Weight16,
                FormName::Synthetic => OracleForm::Synthetic {
                    disc: *disc,
                    weights: weights
                        .split(',')
                        .map(|w| w.trim().parse().map_err(|_| CliError::Input(format!("bad weight {w:?}"))))
                        .collect::<Result<_, _>>()?,
                    level: level.clone(),
                    seed: *seed,
                },
            };
            let fixture = commands::cmd_oracle(&form, *primes)?;
            open_out(&common.out)?.write_all(fixture.to_text().as_bytes())?;
        }
        Command::Validate { f } => {
            let out = commands::cmd_validate(&Fixture::load(f, true)?);
            emit(&out.table, common)?;
            if !out.report.pass {
                return Err(CliError::Validation(format!(
                    "Ramanujan bound fails at {}",
                    out.failing_primes().join(", ")
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
