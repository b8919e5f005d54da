use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use matchpose::{
    cmd_analyze, cmd_verify, exit, oracle_limits, AnalyzeOptions, CliError, RandomBatch,
    VerifySource,
};

/// Factor-components, canonical partition and component order of graphs
/// with perfect matchings.
#[derive(Parser)]
#[command(name = "matchpose", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse one graph file (edge list or JSON).
    Analyze {
        file: PathBuf,
        /// Print the full JSON report instead of a summary.
        #[arg(long)]
        json: bool,
        /// Write a DOT Hasse diagram of the component order.
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
    },
    /// Compare every result against the brute-force oracle.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    file: Option<PathBuf>,
    /// Random factorizable graphs: N M SEED COUNT.
    #[arg(long, num_args = 4, value_names = ["N", "M", "SEED", "COUNT"])]
    random: Option<Vec<u64>>,
    /// Print every report as JSON.
    #[arg(long)]
    json: bool,
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Analyze { file, json, dot } => {
            let report = cmd_analyze(&file, &AnalyzeOptions { dot })?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.summary());
            }
            Ok(exit::OK)
        }
        Command::Verify(args) => {
            let source = match (args.file, args.random) {
                (Some(f), _) => VerifySource::File(f),
                (None, Some(r)) => VerifySource::Random(RandomBatch {
                    n: r[0] as usize,
                    m: r[1] as usize,
                    seed: r[2],
                    count: r[3] as usize,
                }),
                (None, None) => unreachable!("clap requires one source"),
            };
            let reports = cmd_verify(&source, oracle_limits()?)?;
            let failed: Vec<_> = reports.iter().filter(|r| !r.agreed).collect();
            if args.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&reports).expect("reports serialize")
                );
            } else {
                for r in &failed {
                    println!(
                        "DISAGREE {} on {}: fast {} oracle {}",
                        r.subject, r.instance, r.fast_result, r.oracle_result
                    );
                }
                println!("{} checks, {} disagreements", reports.len(), failed.len());
            }
            Ok(if failed.is_empty() {
                exit::OK
            } else {
                exit::DISAGREEMENT
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
