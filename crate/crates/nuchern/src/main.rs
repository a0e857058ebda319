use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use nuchern::output::{report_json, report_text};
use nuchern::{run, Command, Format, RunConfig, RunError};
use nuchern_core::BranchWindow;

#[derive(Copy, Clone, Debug, ValueEnum)]
enum CommandArg {
    Atlas,
    VerifyGluing,
    VerifyCocycle,
    NuClass,
    ExampleP21,
    #[value(name = "global-2form")]
    Global2Form,
    Curvature,
    Properties,
    All,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Self {
        match c {
            CommandArg::Atlas => Command::Atlas,
            CommandArg::VerifyGluing => Command::VerifyGluing,
            CommandArg::VerifyCocycle => Command::VerifyCocycle,
            CommandArg::NuClass => Command::NuClass,
            CommandArg::ExampleP21 => Command::ExampleP21,
            CommandArg::Global2Form => Command::Global2Form,
            CommandArg::Curvature => Command::Curvature,
            CommandArg::Properties => Command::Properties,
            CommandArg::All => Command::All,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

/// Verifies nu-projective superspace gluing, the nu-class and curvature
/// identities, and prints a report. Exit status is 0 iff every check passes.
#[derive(Debug, Parser)]
#[command(name = "nuchern", version)]
struct Cli {
    #[arg(value_enum)]
    command: CommandArg,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Even rank of the synthetic cocycle.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Odd rank of the synthetic cocycle.
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[arg(long, default_value_t = 3)]
    charts: usize,
    /// Overridden by NUCHERN_SEED when set.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Truncation degree for forms.
    #[arg(long, default_value_t = 6)]
    max_degree: u8,
    #[arg(long, default_value = "0-2pi", value_parser = ["0-2pi", "-pi-pi"], allow_hyphen_values = true)]
    branch: String,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn config(cli: &Cli) -> Result<RunConfig, RunError> {
    let seed = match std::env::var("NUCHERN_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| RunError::BadConfig(format!("NUCHERN_SEED={s} is not a u64")))?,
        Err(_) => cli.seed,
    };
    Ok(RunConfig {
        command: cli.command.into(),
        m: cli.m,
        n: cli.n,
        k: cli.k,
        l: cli.l,
        charts: cli.charts,
        seed,
        samples: cli.samples,
        max_degree: cli.max_degree,
        branch: BranchWindow::parse(&cli.branch).expect("validated by clap"),
        format: match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = config(&cli).and_then(|c| run(&c).map(|r| (c, r)));
    let (config, report) = match outcome {
        Ok(x) => x,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    let rendered = match config.format {
        Format::Text => report_text(&report),
        Format::Json => format!("{:#}\n", report_json(&report)),
    };
    match &cli.out {
        Some(path) => {
            if let Err(err) = std::fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {err}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
