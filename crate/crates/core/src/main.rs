use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use piblocks::harness::{analyze, load_group_file, table_dump, verify, PiSpec};
use piblocks::landau::{gamma_traces, is_monotone, BoundOracle, DEFAULT_MAX_DIGITS};
use piblocks::Result;

#[derive(Parser)]
#[command(name = "piblocks", version, about = "π-blocks, defect groups and character tables of small permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the π-blocks of one group with defect data.
    Analyze {
        #[arg(long)]
        group: PathBuf,
        /// Comma-separated primes, `none`, or `all`.
        #[arg(long)]
        pi: String,
    },
    /// Run every check over a corpus directory.
    Verify {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = 120)]
        max_order: u64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate the recursive bound γ(1..=k).
    Gamma {
        #[arg(long)]
        k: u64,
        /// `identity`, `square`, or a table file of `n value` lines.
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = DEFAULT_MAX_DIGITS)]
        max_digits: u32,
    },
    /// Dump the character table of one group.
    Table {
        #[arg(long)]
        group: PathBuf,
    },
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { group, pi } => {
            let spec = PiSpec::parse(&pi)?;
            let (entry, g) = load_group_file(&group)?;
            print!("{}", analyze(&entry, &g, &spec.resolve(g.order()))?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { corpus, max_order, output } => {
            let outcome = verify(&corpus, max_order)?;
            match output {
                Some(path) => std::fs::write(&path, &outcome.report)
                    .map_err(|e| piblocks::Error::Input(format!("{}: {e}", path.display())))?,
                None => print!("{}", outcome.report),
            }
            Ok(if outcome.failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Gamma { k, alpha, beta, max_digits } => {
            let mut a = BoundOracle::from_spec(&alpha)?;
            let mut b = BoundOracle::from_spec(&beta)?;
            let traces = gamma_traces(k, &mut a, &mut b, max_digits)?;
            for t in &traces {
                print!("k={} gamma={}", t.k, t.value);
                if let (Some(m), Some(al), Some(be), Some(bp)) = (&t.argument, &t.alpha, &t.beta, &t.beta_power) {
                    print!(" argument={m} alpha={al} beta={be} beta_power={bp}");
                }
                println!();
            }
            println!("alpha={} beta={} max_digits={max_digits} monotone={}", a.name(), b.name(), is_monotone(&traces));
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { group } => {
            let (entry, g) = load_group_file(&group)?;
            print!("{}", table_dump(&entry, &g)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
