use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fuztop::commands::{dispatch, Command, CompactnessKind, ConstructKind, Limits};
use fuztop::error::Error;
use fuztop::instance::InstanceDocument;

/// Exact engine for finite fuzzy topological spaces.
#[derive(Parser)]
#[command(name = "fuztop", version, about)]
struct Cli {
    /// Instance document: a JSON file path, or '-' for stdin.
    #[arg(short, long, global = true)]
    instance: Option<String>,

    /// Report rendering.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,

    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest carrier the census command will accept.
    #[arg(long, global = true, default_value_t = 3)]
    max_n: usize,

    /// Largest grid denominator the census command will accept.
    #[arg(long, global = true, default_value_t = 4)]
    max_q: u32,

    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Classify the document's fuzzy topology (or the one induced by its
    /// topology).
    Classify,
    /// Run one named property check; an unknown id lists the known ones.
    Check { id: String },
    /// Exhaustive classification census at the document's (n, q), default
    /// (2, 2).
    Census,
    /// Build a construction from the document and verify its laws.
    Construct {
        #[arg(value_enum)]
        kind: ConstructArg,
    },
    /// Run a counterexample-family certificate: A, B, C, D, or E.
    Gallery { entry: String },
    /// Compactness tooling on the document.
    Compactness {
        #[arg(value_enum)]
        kind: CompactnessArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructArg {
    Product,
    Coproduct,
    Subspace,
    Quotient,
}

#[derive(Clone, Copy, ValueEnum)]
enum CompactnessArg {
    Subcover,
    Levels,
    Tychonoff,
    Onepoint,
}

fn read_document(source: &str) -> Result<InstanceDocument, Error> {
    let text = if source == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| Error::BoundExceeded(format!("cannot read stdin: {e}")))?;
        buffer
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| Error::BoundExceeded(format!("cannot read {source}: {e}")))?
    };
    InstanceDocument::parse(&text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let doc = match cli.instance.as_deref().map(read_document) {
        None => None,
        Some(Ok(doc)) => Some(doc),
        Some(Err(e)) => {
            eprintln!("input error:");
            for line in e.detail_lines() {
                eprintln!("  {line}");
            }
            return ExitCode::from(2);
        }
    };

    let command = match &cli.command {
        CliCommand::Classify => Command::Classify,
        CliCommand::Check { id } => Command::Check(id.clone()),
        CliCommand::Census => Command::Census,
        CliCommand::Construct { kind } => Command::Construct(match kind {
            ConstructArg::Product => ConstructKind::Product,
            ConstructArg::Coproduct => ConstructKind::Coproduct,
            ConstructArg::Subspace => ConstructKind::Subspace,
            ConstructArg::Quotient => ConstructKind::Quotient,
        }),
        CliCommand::Gallery { entry } => Command::Gallery(entry.clone()),
        CliCommand::Compactness { kind } => Command::Compactness(match kind {
            CompactnessArg::Subcover => CompactnessKind::Subcover,
            CompactnessArg::Levels => CompactnessKind::Levels,
            CompactnessArg::Tychonoff => CompactnessKind::Tychonoff,
            CompactnessArg::Onepoint => CompactnessKind::Onepoint,
        }),
    };

    let limits = Limits {
        seed: cli.seed,
        max_n: cli.max_n,
        max_q: cli.max_q,
    };

    match dispatch(&command, doc.as_ref(), &limits) {
        Ok(report) => {
            match cli.report {
                ReportFormat::Text => print!("{}", report.to_text()),
                ReportFormat::Json => println!("{}", report.to_json_string()),
            }
            eprintln!("elapsed: {} ms", report.elapsed_ms);
            ExitCode::from(if report.all_pass() { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("input error:");
            for line in e.detail_lines() {
                eprintln!("  {line}");
            }
            if let Error::UnknownCheck(_) = e {
                eprintln!("  known ids: {}, all", fuztop::checks::CHECK_IDS.join(", "));
            }
            ExitCode::from(2)
        }
    }
}
