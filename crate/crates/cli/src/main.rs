use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hk_core::engine::{hk_function, verify, Limits, Mode};
use hk_core::oracle::{global_dimension, DEFAULT_BUDGET};
use hk_core::tables::{
    build_b_part_a, build_b_part_b_lower, build_c, dump, reduce_stages, EntryContext,
    StagedBlocks, Table,
};
use hk_core::{HkError, Prime, Trinomial};

/// Hilbert–Kunz functions of disjoint-term trinomial hypersurfaces.
#[derive(Parser, Debug)]
#[command(name = "hk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// HK(p^n) for n = 1..=max-n.
    Compute {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Classifier)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest q^m the oracle may handle.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Compare classifier and oracle on every monomial at q = p^n.
    Verify {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Colength of S/(m^[q] + (f)) by direct elimination.
    OracleDim {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Dump a rank-test matrix or a staged block for an invariant tuple.
    Tables {
        /// T5, T6, T8, B_A or B_B.
        #[arg(long)]
        table: String,
        #[arg(long)]
        one_min: u64,
        #[arg(long)]
        two_min: u64,
        #[arg(long)]
        neg2: u64,
        #[arg(long)]
        neg3: u64,
        #[arg(long)]
        prime: u64,
        /// Apply the stage row operations before dumping B_A / B_B.
        #[arg(long)]
        reduced: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Classifier,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

fn parse_poly(text: &str, prime: u64) -> Result<Trinomial, HkError> {
    let p = Prime::new(prime)?;
    Ok(Trinomial::parse(text, p)?)
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<(), HkError> {
    match out {
        Some(path) => fs::write(path, body)?,
        None => io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), HkError> {
    match cli.command {
        Command::Compute {
            poly,
            prime,
            max_n,
            mode,
            format,
            out,
            budget,
        } => {
            let f = parse_poly(&poly, prime)?;
            let mode = match mode {
                ModeArg::Classifier => Mode::Classifier,
                ModeArg::Oracle => Mode::Oracle,
            };
            let limits = Limits {
                oracle_budget: budget,
                ..Limits::default()
            };
            let series = hk_function(&f, max_n, mode, &limits)?;
            let body = match format {
                Format::Json => series.to_json()? + "\n",
                Format::Csv => series.to_csv_string()?,
                Format::Text => series.to_text(),
            };
            emit(&out, &body)
        }
        Command::Verify {
            poly,
            prime,
            n,
            format,
            out,
            budget,
        } => {
            let f = parse_poly(&poly, prime)?;
            let report = verify(&f, n, budget)?;
            let body = match format {
                Format::Csv => report.to_csv_string()?,
                Format::Json => report.to_json()? + "\n",
                Format::Text => report.to_text(),
            };
            emit(&out, &body)?;
            if out.is_some() || format != Format::Text {
                eprint!("{}", report.to_text());
            }
            Ok(())
        }
        Command::OracleDim {
            poly,
            prime,
            n,
            budget,
        } => {
            let f = parse_poly(&poly, prime)?;
            if n == 0 {
                return Err(HkError::ZeroExponent);
            }
            println!("{}", global_dimension(&f, n, budget)?);
            Ok(())
        }
        Command::Tables {
            table,
            one_min,
            two_min,
            neg2,
            neg3,
            prime,
            reduced,
        } => {
            let ctx = EntryContext::new(one_min, two_min, neg2, neg3, Prime::new(prime)?)?;
            let body = match table.as_str() {
                "B_A" | "B_B" if reduced => {
                    let blocks = reduce_stages(StagedBlocks::build(&ctx)?, &ctx);
                    let m = if table == "B_A" {
                        blocks.part_a
                    } else {
                        blocks.part_b
                    };
                    dump(&table, &ctx, &m)
                }
                "B_A" => dump(&table, &ctx, &build_b_part_a(&ctx)?),
                "B_B" => dump(&table, &ctx, &build_b_part_b_lower(&ctx)?),
                other => {
                    let t: Table = other.parse()?;
                    let sys = build_c(&ctx, t)?;
                    dump(t.name(), &ctx, &sys.matrix)
                }
            };
            print!("{body}");
            Ok(())
        }
    }
}

fn configure_threads() {
    let Ok(v) = std::env::var("HK_THREADS") else {
        return;
    };
    match v.trim().parse::<usize>() {
        Ok(0) => {}
        Ok(n) => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        Err(_) => eprintln!("warning: ignoring HK_THREADS={v:?}: not a number"),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 2 } else { 1 })
        }
    }
}
