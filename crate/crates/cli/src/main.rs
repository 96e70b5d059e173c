use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use samuel_cli::commands::{Command, Options};
use samuel_cli::{execute, Invocation, Target, EXIT_INPUT};

/// Hilbert-Samuel coefficients, reductions, closures and depth of the
/// associated graded ring for m-primary ideals.
#[derive(Parser)]
#[command(name = "samuel", version)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Coefficient characteristic (a prime, or 0 for the rationals); overrides the problem file.
    #[arg(long = "char", global = true)]
    characteristic: Option<u64>,
    /// Power bound for depth and Ratliff-Rush checks.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Cap on tabulated powers, reduction numbers or homology slices.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Ring, dimension, m-primary check and colength.
    Info { file: PathBuf },
    /// Hilbert-Samuel table, fitted coefficients and postulation number.
    Hilbert { file: PathBuf },
    /// Series numerator and the three-way coefficient cross-check.
    Series { file: PathBuf },
    /// A minimal reduction and its reduction number.
    Reduction {
        file: PathBuf,
        /// Histogram of r_J over this many random minimal reductions.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Bracket on depth G(I) with certificates.
    Depth { file: PathBuf },
    /// Ratliff-Rush closure and closed powers.
    Rr { file: PathBuf },
    /// Integral closure of a monomial ideal.
    Closure { file: PathBuf },
    /// Homology of the graded slices and e1, e2 from it.
    Homology { file: PathBuf },
    /// Check a theorem's hypotheses and conclusions on the ideal.
    Audit {
        file: PathBuf,
        #[arg(long)]
        theorem: String,
        /// Hypothesis taken on trust: integrally-closed, asymptotically-normal, cohen-macaulay.
        #[arg(long)]
        declare: Vec<String>,
    },
    /// The embedded example corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Recompute every entry and compare with the recorded values.
    Run,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let file = |command, file| Target::File { command, path: file };
    let target = match cli.command {
        Sub::Info { file: f } => file(Command::Info, f),
        Sub::Hilbert { file: f } => file(Command::Hilbert, f),
        Sub::Series { file: f } => file(Command::Series, f),
        Sub::Reduction { file: f, samples } => file(Command::Reduction { samples }, f),
        Sub::Depth { file: f } => file(Command::Depth, f),
        Sub::Rr { file: f } => file(Command::Rr, f),
        Sub::Closure { file: f } => file(Command::Closure, f),
        Sub::Homology { file: f } => file(Command::Homology, f),
        Sub::Audit {
            file: f,
            theorem,
            declare,
        } => file(Command::Audit { theorem, declare }, f),
        Sub::Corpus {
            action: CorpusAction::Run,
        } => Target::CorpusRun,
    };
    let run = execute(&Invocation {
        target,
        json: cli.json,
        characteristic: cli.characteristic,
        options: Options {
            seed: cli.seed,
            bound: cli.bound,
            cap: cli.cap,
        },
    });
    print!("{}", run.stdout);
    eprint!("{}", run.stderr);
    ExitCode::from(run.code as u8)
}
