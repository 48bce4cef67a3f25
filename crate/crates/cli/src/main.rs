//! Command-line driver: `check`, `iso`, `rep` and `dump`.

mod pipeline;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ehresmann::interchange::SemigroupFile;
use ehresmann::zoo::ZooSpec;
use ehresmann::{build_category, Order};

use pipeline::{InputError, Outcome, RunConfig, Source};

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ehresmann",
    version,
    about = "Verify E-Ehresmann semigroups, their categories and algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the input and verify the variety and category axioms.
    Check(RunArgs),
    /// Verify the Möbius isomorphism between the semigroup and category algebras.
    Iso(RunArgs),
    /// Report invertible morphisms, the EI condition and radicals.
    Rep(RunArgs),
    /// Write a zoo member as an input file.
    Dump {
        #[arg(long)]
        zoo: ZooSpec,
        /// Output path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
struct SourceArgs {
    /// JSON file with `n`, `table`, and optionally `E` and `names`.
    #[arg(long, group = "source")]
    input: Option<PathBuf>,
    /// Built-in member, e.g. `pt:3`, `b:2`, `six`, `ssl:chain2:z2,z3`.
    #[arg(long, group = "source")]
    zoo: Option<ZooSpec>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Natural order used by the isomorphism: `r` or `l`.
    #[arg(long, default_value = "r")]
    order: Order,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Threads for the pair sweep.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    /// Also write the category as JSON.
    #[arg(long)]
    emit_category: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> RunConfig {
        let source = match (&self.source.input, &self.source.zoo) {
            (Some(p), _) => Source::File(p.clone()),
            (None, Some(z)) => Source::Zoo(z.clone()),
            (None, None) => unreachable!("clap requires a source"),
        };
        RunConfig { source, order: self.order, workers: usize::from(self.workers) }
    }
}

fn write_json(path: Option<&PathBuf>, value: &impl serde::Serialize) -> Result<(), InputError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| InputError(format!("cannot write {}: {e}", p.display())))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| InputError(format!("cannot write stdout: {e}"))),
    }
}

fn finish(args: &RunArgs, outcome: Outcome) -> Result<bool, InputError> {
    for line in &outcome.summary {
        eprintln!("{line}");
    }
    eprintln!("{}", if outcome.passed { "PASSED" } else { "FAILED" });
    if let (Some(path), Some(es)) = (&args.emit_category, &outcome.structure) {
        write_json(Some(path), &build_category(es).dump())?;
    }
    write_json(args.report.as_ref(), &outcome.report)?;
    Ok(outcome.passed)
}

fn run(cli: Cli) -> Result<bool, InputError> {
    match cli.command {
        Command::Check(args) => finish(&args, pipeline::run_check(&args.config())?),
        Command::Iso(args) => finish(&args, pipeline::run_iso(&args.config())?),
        Command::Rep(args) => finish(&args, pipeline::run_rep(&args.config())?),
        Command::Dump { zoo, output } => {
            let es = zoo.build().map_err(|e| InputError(format!("zoo member {zoo}: {e}")))?;
            write_json(output.as_ref(), &SemigroupFile::from_structure(&es))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
