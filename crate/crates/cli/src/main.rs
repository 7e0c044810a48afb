use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serex_cli::run::{
    self, CheckArgs, CliError, CyclicArgs, ExchangeArgs, FallbackMode, GlobalOpts, GraphArgs,
};

/// Serial symmetric exchanges of matroid bases: constructive algorithms,
/// base-cobase graphs, and exhaustive desk-scale conjecture checks.
#[derive(Parser)]
#[command(name = "serex", version, disable_help_subcommand = true)]
struct Cli {
    /// Print the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for all randomized corpora and sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Step budget per exhaustive search.
    #[arg(long, global = true)]
    max_steps: Option<u64>,

    /// Degrade the rank-4 procedure to brute force on internal errors
    /// (still reported as a violation).
    #[arg(long, global = true, value_enum, default_value_t = Fallback::None)]
    fallback: Fallback,

    /// Re-check any printed certificate through a fresh oracle instance.
    #[arg(long, global = true)]
    verify: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fallback {
    None,
    Brute,
}

#[derive(Subcommand)]
enum Command {
    /// Construct (or brute-force) a serial symmetric exchange of a subset
    /// of base A with elements of base B.
    Exchange {
        /// Matroid file.
        file: PathBuf,
        /// Elements of the first base, comma-separated external labels.
        #[arg(long = "A", value_name = "ELEMENTS")]
        base_a: String,
        /// Elements of the second base.
        #[arg(long = "B", value_name = "ELEMENTS")]
        base_b: String,
        /// Subset of A to exchange (size 2 constructively, 1-4 with
        /// --brute).
        #[arg(long, value_name = "ELEMENTS")]
        subset: String,
        /// Exhaustive search instead of the constructive procedure.
        #[arg(long)]
        brute: bool,
    },
    /// Run property checks over generated corpora or fixture files.
    Check {
        /// TOML config file; command-line flags win key by key.
        #[arg(long)]
        config: Option<PathBuf>,
        /// uniform | graphic | graphic-random | linear-gf2 | fixtures |
        /// default (the full built-in corpus).
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        max_rank: Option<u32>,
        /// Comma-separated check names, or 'all'.
        #[arg(long)]
        checks: Option<String>,
        /// Curated graph names for --family graphic (default: all).
        #[arg(long)]
        graphs: Option<String>,
        /// Instances per family where applicable.
        #[arg(long)]
        count: Option<u32>,
        /// Rank for --family linear-gf2.
        #[arg(long)]
        rank: Option<u32>,
        /// Largest vertex count for --family graphic-random.
        #[arg(long)]
        max_vertices: Option<u32>,
        /// Matroid files for --family fixtures.
        #[arg(long, num_args = 1..)]
        fixtures: Vec<PathBuf>,
        /// Write findings as JSON lines to this path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Lift the desk-scale rank cap.
        #[arg(long)]
        allow_large: bool,
    },
    /// Build the base-cobase graph of a block matroid and report
    /// connectivity and diameter.
    Graph {
        /// Matroid file (must be a block matroid).
        file: PathBuf,
        /// Write the adjacency structure to this path.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Search for a cyclic base order of one base pair.
    Cyclic {
        /// Matroid file.
        file: PathBuf,
        #[arg(long = "A", value_name = "ELEMENTS")]
        base_a: String,
        #[arg(long = "B", value_name = "ELEMENTS")]
        base_b: String,
    },
}

fn main() -> ExitCode {
    // usage problems exit 1; code 2 is reserved for conjecture-relevant
    // outcomes, so clap's default error code must not leak through
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };

    let globals = GlobalOpts {
        json: cli.json,
        seed: cli.seed,
        max_steps: cli.max_steps,
        fallback: match cli.fallback {
            Fallback::None => FallbackMode::None,
            Fallback::Brute => FallbackMode::Brute,
        },
        verify: cli.verify,
    };

    let result = match cli.command {
        Command::Exchange {
            file,
            base_a,
            base_b,
            subset,
            brute,
        } => run::cmd_exchange(
            &ExchangeArgs {
                file,
                base_a,
                base_b,
                subset,
                brute,
            },
            &globals,
        ),
        Command::Check {
            config,
            family,
            max_rank,
            checks,
            graphs,
            count,
            rank,
            max_vertices,
            fixtures,
            out,
            allow_large,
        } => run::cmd_check(
            &CheckArgs {
                config,
                family,
                max_rank,
                checks,
                graphs,
                count,
                rank,
                max_vertices,
                fixtures,
                out,
                allow_large,
            },
            &globals,
        ),
        Command::Graph { file, export } => run::cmd_graph(&GraphArgs { file, export }, &globals),
        Command::Cyclic {
            file,
            base_a,
            base_b,
        } => run::cmd_cyclic(
            &CyclicArgs {
                file,
                base_a,
                base_b,
            },
            &globals,
        ),
    };

    match result {
        Ok(out) => {
            if globals.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.report).expect("report serialization")
                );
            } else {
                print!("{}", out.human);
            }
            ExitCode::from(out.report.exit_code as u8)
        }
        Err(CliError { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code as u8)
        }
    }
}
