use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use strtherm::batch;
use strtherm::corpus::{self, Kind};
use strtherm::emit::{self, Format};
use strtherm::{analyze_files, AnalyzeOptions};
use strtherm_core::{BitOrder, ZeroShift};

#[derive(Parser, Debug)]
#[command(name = "strtherm", version, about = "Thermodynamic analysis of binary strings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyse one file, or a pair of files with --pair
    Analyze(AnalyzeArgs),
    /// Summarise every input listed in a manifest, one row per input
    Batch(BatchArgs),
    /// Write a deterministic sample corpus
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BitOrderArg {
    Msb,
    Lsb,
}

#[derive(Args, Debug)]
struct PipelineArgs {
    /// Keep only the first N bits of each input
    #[arg(long, value_name = "N")]
    bits: Option<usize>,
    /// Number of shifts in the ensemble (default: all of them)
    #[arg(long, value_name = "N")]
    ensemble: Option<usize>,
    #[arg(long, value_enum, default_value = "msb")]
    bit_order: BitOrderArg,
    /// Start self ensembles at the trivial zero shift
    #[arg(long)]
    include_zero_shift: bool,
}

impl PipelineArgs {
    fn options(&self) -> AnalyzeOptions {
        AnalyzeOptions {
            bit_order: match self.bit_order {
                BitOrderArg::Msb => BitOrder::MsbFirst,
                BitOrderArg::Lsb => BitOrder::LsbFirst,
            },
            max_bits: self.bits,
            ensemble: self.ensemble,
            zero_shift: if self.include_zero_shift {
                ZeroShift::Included
            } else {
                ZeroShift::Excluded
            },
        }
    }
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Input file (`-` for standard input)
    file: PathBuf,
    /// Second input; analyses the pair ensemble
    #[arg(long, value_name = "FILE")]
    pair: Option<PathBuf>,
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the observed histogram (CSV, or JSON for a .json path)
    #[arg(long, value_name = "PATH")]
    emit_histogram: Option<PathBuf>,
    /// Write normal and adjusted-binomial model curves as CSV
    #[arg(long, value_name = "PATH")]
    emit_curves: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BatchArgs {
    manifest: PathBuf,
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    bytes: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn analyze(args: AnalyzeArgs) -> Result<()> {
    let outcome = analyze_files(&args.file, args.pair.as_deref(), &args.pipeline.options())?;
    if let Some(path) = &args.emit_histogram {
        emit::write_histogram(&outcome.analysis.histogram, path)?;
    }
    if let Some(path) = &args.emit_curves {
        if outcome.analysis.model.degenerate {
            eprintln!("strtherm: degenerate ensemble, curve file has no rows");
        }
        emit::write_curves(&outcome.analysis.histogram, &outcome.analysis.model, path)?;
    }
    let mut out = io::stdout().lock();
    emit::write_report(&outcome.report, args.format, &mut out)?;
    out.flush()?;
    Ok(())
}

fn run_batch(args: BatchArgs) -> Result<()> {
    let entries = batch::read_manifest(&args.manifest)?;
    let rows = batch::summarize(&entries, &args.pipeline.options());
    let mut out = io::stdout().lock();
    batch::write_table(&rows, args.format, &mut out)?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Batch(args) => run_batch(args),
        Command::Gen(args) => corpus::write(args.kind, args.bytes as usize, args.seed, &args.out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("strtherm: {err:#}");
            ExitCode::from(2)
        }
    }
}
