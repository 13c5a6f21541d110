use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use reglab::cli::{self, Command, KindArg, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "reglab",
    version,
    about = "Regularity and syzygy degrees of products of powers of monomial ideals"
)]
struct Args {
    #[arg(value_enum)]
    command: CommandArg,
    /// Ideal family file (`ring ...` line followed by `I = ...` lines).
    input: PathBuf,
    #[arg(long = "grid", default_value_t = cli::DEFAULT_GRID_MAX)]
    grid: u32,
    /// Region origin for `fit`, e.g. `1,1` (default all ones).
    #[arg(long)]
    origin: Option<String>,
    /// Homological index for `--kind t` and `hilbert-check`.
    #[arg(long)]
    j: Option<usize>,
    #[arg(long, value_enum, default_value = "reg")]
    kind: KindFlag,
    /// Series decomposition file for `hilbert-check`.
    #[arg(long)]
    series: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    output: OutputFlag,
    /// Exponent vector for `gens` and `betti`, e.g. `2,1`.
    #[arg(long)]
    exp: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CommandArg {
    Gens,
    Betti,
    Table,
    Fit,
    Pd,
    HilbertCheck,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindFlag {
    T,
    Reg,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFlag {
    Text,
    Json,
    Csv,
}

fn config(args: Args) -> reglab::Result<RunConfig> {
    let command = match args.command {
        CommandArg::Gens => Command::Gens,
        CommandArg::Betti => Command::Betti,
        CommandArg::Table => Command::Table,
        CommandArg::Fit => Command::Fit,
        CommandArg::Pd => Command::Pd,
        CommandArg::HilbertCheck => Command::HilbertCheck,
    };
    let mut cfg = RunConfig::new(args.input, command);
    cfg.grid_max = args.grid;
    cfg.origin = args
        .origin
        .as_deref()
        .map(cli::parse_exponent)
        .transpose()?;
    cfg.exp = args.exp.as_deref().map(cli::parse_exponent).transpose()?;
    cfg.j = args.j;
    cfg.kind = match args.kind {
        KindFlag::T => KindArg::T,
        KindFlag::Reg => KindArg::Reg,
    };
    cfg.output = match args.output {
        OutputFlag::Text => OutputFormat::Text,
        OutputFlag::Json => OutputFormat::Json,
        OutputFlag::Csv => OutputFormat::Csv,
    };
    cfg.series_path = args.series;
    Ok(cfg)
}

fn main() -> ExitCode {
    let threads = std::env::var("REGLAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .expect("thread pool is configured once");
    }

    let args = Args::parse();
    match config(args).and_then(|cfg| cli::run(&cfg)) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
