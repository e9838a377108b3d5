use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use mobius_metric::cli::{self, Command, ConstructKind, OutputFormat, Problem, RunConfig};
use mobius_metric::PlaneModel;

#[derive(Parser)]
#[command(
    name = "mobius",
    version,
    about = "Möbius planes, resolving sets and blocking sets"
)]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(clap::Args)]
struct Common {
    /// Plane order
    #[arg(long)]
    q: u32,
    #[arg(long, value_enum, default_value = "miquelian")]
    model: Model,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(clap::Args)]
struct Limits {
    /// Wall-clock cap per exact solve, e.g. 600s, 10m, 1h
    #[arg(long, value_parser = cli::parse_duration)]
    budget: Option<std::time::Duration>,
    /// Node cap per exact solve
    #[arg(long)]
    nodes: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build and verify a plane, printing its JSON document
    Build(#[command(flatten)] Common),
    /// Solve a covering problem exactly and print a certificate
    Solve {
        #[arg(value_enum)]
        problem: ProblemArg,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        limits: Limits,
    },
    /// Run an explicit construction and check it against its bounds
    Construct {
        #[arg(value_enum)]
        kind: KindArg,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate optima, greedy sizes and constructions over a range of orders
    Report {
        /// An order, a range like 2..5, or a list like 3,4
        #[arg(long)]
        q: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Miquelian,
    Order2Subsets,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Resolve,
    Split,
    Blocking,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    S1,
    S1s2,
    BlockingGreedy,
}

fn config(command: Command, common: Common, limits: Option<Limits>) -> RunConfig {
    let limits = limits.unwrap_or(Limits {
        budget: None,
        nodes: None,
    });
    RunConfig {
        command,
        qs: vec![common.q],
        model: match common.model {
            Model::Miquelian => PlaneModel::Miquelian,
            Model::Order2Subsets => PlaneModel::Order2Subsets,
        },
        budget: limits.budget,
        nodes: limits.nodes,
        output: common.output,
        format: format(common.format),
    }
}

fn format(f: Format) -> OutputFormat {
    match f {
        Format::Json => OutputFormat::Json,
        Format::Csv => OutputFormat::Csv,
        Format::Human => OutputFormat::Human,
    }
}

fn main() {
    // clap exits with 2 on usage errors, which is reserved for bounded results.
    let args = Args::try_parse().unwrap_or_else(|e| {
        let code = if e.use_stderr() {
            cli::EXIT_FAILURE
        } else {
            cli::EXIT_OK
        };
        let _ = e.print();
        std::process::exit(code);
    });
    let config = match args.command {
        Cmd::Build(common) => config(Command::Build, common, None),
        Cmd::Solve {
            problem,
            common,
            limits,
        } => {
            let p = match problem {
                ProblemArg::Resolve => Problem::Resolve,
                ProblemArg::Split => Problem::Split,
                ProblemArg::Blocking => Problem::Blocking,
            };
            config(Command::Solve(p), common, Some(limits))
        }
        Cmd::Construct { kind, common } => {
            let k = match kind {
                KindArg::S1 => ConstructKind::S1,
                KindArg::S1s2 => ConstructKind::S1S2,
                KindArg::BlockingGreedy => ConstructKind::BlockingGreedy,
            };
            config(Command::Construct(k), common, None)
        }
        Cmd::Report {
            q,
            output,
            format: f,
            limits,
        } => match cli::parse_q_range(&q) {
            Ok(qs) => RunConfig {
                command: Command::Report,
                qs,
                model: PlaneModel::Miquelian,
                budget: limits.budget,
                nodes: limits.nodes,
                output,
                format: format(f),
            },
            Err(e) => {
                eprintln!("error: {e:#}");
                std::process::exit(cli::EXIT_FAILURE);
            }
        },
    };
    std::process::exit(cli::run(&config));
}
