use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use dynwild_cli::{bench, run_ov, Mode, Session, Settings, StreamShape};

#[derive(Parser)]
#[command(
    name = "dynwild",
    version,
    about = "Dynamic pattern matching with wildcards"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Replay a command script (or OV instances in mode ov).
    Run(RunArgs),
    /// Replay a seeded random stream and print the counters as JSON.
    Bench(BenchArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long)]
    tau: Option<usize>,
    #[arg(long)]
    block_size: Option<usize>,
    #[arg(long)]
    rebuild_threshold: Option<usize>,
    /// Wildcard budget (mode general).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Common {
    fn settings(&self) -> Settings {
        Settings {
            mode: self.mode,
            tau: self.tau,
            block_size: self.block_size,
            rebuild_threshold: self.rebuild_threshold,
            k: self.k,
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    /// Text given inline.
    #[arg(long, conflicts_with = "text_file")]
    text: Option<String>,
    /// Text read as raw bytes; one trailing newline is dropped.
    #[arg(long)]
    text_file: Option<PathBuf>,
    #[arg(long, conflicts_with = "pattern_file")]
    pattern: Option<String>,
    #[arg(long)]
    pattern_file: Option<PathBuf>,
    /// Script file; stdin when absent.
    #[arg(long)]
    script: Option<PathBuf>,
    /// Print a JSON report after the last command.
    #[arg(long)]
    report: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Pattern length; the vector dimension in mode ov.
    #[arg(long, default_value_t = 8)]
    m: usize,
    #[arg(long, default_value_t = 4)]
    sigma: usize,
    #[arg(long, default_value_t = 1000)]
    updates: usize,
    #[arg(long, default_value_t = 2)]
    wildcards: usize,
}

fn load(inline: &Option<String>, file: &Option<PathBuf>) -> anyhow::Result<Vec<u8>> {
    if let Some(s) = inline {
        return Ok(s.as_bytes().to_vec());
    }
    match file {
        Some(path) => {
            let mut bytes =
                fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            if bytes.last() == Some(&b'\n') {
                bytes.pop();
            }
            Ok(bytes)
        }
        None => Ok(Vec::new()),
    }
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    let settings = args.common.settings();
    let input: Box<dyn BufRead> = match &args.script {
        Some(path) => Box::new(BufReader::new(
            fs::File::open(path).with_context(|| format!("opening {}", path.display()))?,
        )),
        None => Box::new(io::stdin().lock()),
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let report = if settings.mode == Mode::Ov {
        run_ov(settings, input, &mut out)?
    } else {
        if args.text.is_none() && args.text_file.is_none() {
            bail!(
                "--text or --text-file is required in mode {}",
                settings.mode
            );
        }
        let text = load(&args.text, &args.text_file)?;
        let pattern = load(&args.pattern, &args.pattern_file)?;
        let mut session = Session::new(settings, &text, &pattern)?;
        session.run(input, &mut out)?;
        session.report()
    };
    if args.report {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Run(args) => run(args),
        Cmd::Bench(args) => {
            let shape = StreamShape {
                n: args.n,
                m: args.m,
                sigma: args.sigma,
                updates: args.updates,
                wildcards: args.wildcards,
            };
            bench(args.common.settings(), shape)
                .map_err(anyhow::Error::from)
                .and_then(|r| {
                    println!("{}", serde_json::to_string_pretty(&r)?);
                    Ok(())
                })
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
