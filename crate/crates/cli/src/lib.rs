//! Command-line front end: document parsers, subcommands and report output.

pub mod doc;
pub mod parse;
pub mod report;

mod commands;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::CliError;
pub use report::{Item, Report, Status, Summary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qgauge", version, about = "Symbolic and K-theoretic checks for SU_q towers")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a presentation document.
    Build {
        #[command(subcommand)]
        target: BuildTarget,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Homogeneous-space membership checks.
    Hs {
        #[command(subcommand)]
        action: HsAction,
    },
    /// K-theory towers and their Milnor assembly.
    K {
        #[command(subcommand)]
        target: KTarget,
    },
    /// Reduce an expression against a presentation's rewrite rules.
    Reduce(ReduceArgs),
}

#[derive(Debug, Subcommand)]
enum BuildTarget {
    #[command(name = "su_q")]
    /// The SU_q(n) presentation.
    SuQ {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<String>,
        /// List every relation even when the compact family form is available.
        #[arg(long)]
        explicit: bool,
    },
}

#[derive(Debug, Args)]
struct SuiteArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_step_limit)]
    step_limit: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct ThetaArgs {
    #[command(flatten)]
    common: SuiteArgs,
    /// Permit n >= 6.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Debug, Args)]
struct HypArgs {
    #[arg(long)]
    tower: String,
    #[arg(long, value_parser = parse_window)]
    window: (usize, usize),
    #[arg(long, value_parser = parse_step_limit)]
    step_limit: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Suite {
    /// Coassociativity of the comultiplication on generators.
    Coassoc(SuiteArgs),
    /// Compatibility of the tower maps with comultiplication and the w presentation.
    Square(SuiteArgs),
    /// Images of level-n relations lie in the level-(n-1) relation ideal.
    ThetaIdeal(ThetaArgs),
    /// Section compatibility of a presentation tower over a window.
    HypothesisB(HypArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LinkArg {
    Sphere,
    Cp,
}

#[derive(Debug, Subcommand)]
enum HsAction {
    /// Coaction invariance of one element.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value_t = LinkArg::Sphere)]
        link: LinkArg,
        #[arg(long, value_parser = parse_step_limit)]
        step_limit: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum KTarget {
    /// Odd spheres S^{2n-1}.
    Sphere {
        #[arg(long)]
        n_max: usize,
    },
    /// Projective spaces CP^n.
    Cp {
        #[arg(long)]
        n_max: usize,
    },
    /// SU(n) through the branching tower.
    Su {
        #[arg(long)]
        n_max: usize,
    },
    /// Classify a K_0/K_1 tower pair given as JSON.
    Tower {
        #[arg(long)]
        file: String,
    },
    /// Solve a six-term exact sequence given as JSON.
    Sixterm {
        #[arg(long)]
        file: String,
    },
}

#[derive(Debug, Args)]
struct ReduceArgs {
    #[arg(long)]
    pres: String,
    #[arg(long)]
    expr: String,
    #[arg(long, value_parser = parse_step_limit)]
    step_limit: Option<usize>,
}

/// Accepts `1000000` or `1e6`.
fn parse_step_limit(s: &str) -> Result<usize, String> {
    if let Ok(v) = s.parse::<usize>() {
        return Ok(v);
    }
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        if let (Ok(m), Ok(e)) = (m.parse::<usize>(), e.parse::<u32>()) {
            if let Some(v) = 10usize.checked_pow(e).and_then(|p| p.checked_mul(m)) {
                return Ok(v);
            }
        }
    }
    Err(format!("'{}' is not a step count", s))
}

/// Parses `A..B` with `A <= B`.
fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got '{}'", s))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad window start '{}'", a))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad window end '{}'", b))?;
    if a > b {
        return Err(format!("empty window {}..{}", a, b));
    }
    Ok((a, b))
}

/// Outcome of one invocation.
#[derive(Clone, Debug)]
pub struct CommandResult {
    /// 0 all verified or computed, 1 refutations, 2 unknowns, 3 usage error.
    pub status: i32,
    /// What the binary prints to stdout.
    pub output: String,
    /// What the binary prints to stderr.
    pub error: String,
    pub report: Option<Report>,
}

impl CommandResult {
    fn usage(message: String) -> Self {
        CommandResult { status: 3, output: String::new(), error: message, report: None }
    }
}

/// Runs the tool on `argv`, whose first entry is the program name.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CommandResult { status: 0, output: text, error: String::new(), report: None }
                }
                _ => CommandResult::usage(text),
            };
        }
    };
    match commands::dispatch(cli.command) {
        Ok(out) => {
            let status = out.report.exit_status();
            let output = match cli.format {
                Format::Text => out.text,
                Format::Json => out.report.to_json() + "\n",
            };
            CommandResult { status, output, error: String::new(), report: Some(out.report) }
        }
        Err(e) => CommandResult::usage(format!("error: {}\n", e)),
    }
}
