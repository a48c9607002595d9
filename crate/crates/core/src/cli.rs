//! The `zigzag` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Result;
use crate::input::{parse_file, InputSpec};
use crate::model::Subalgebra;
use crate::report::{self, Outcome, Overrides, Settings};

#[derive(Debug, Parser)]
#[command(name = "zigzag", version, about = "Inverse hulls, tight groupoids and ideal detection for finite categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Common {
    /// Numerical tolerance for rank decisions.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Path-length bound for graphs with cycles.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Maximum number of hull elements.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Seed for the random lemma instances.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the category axioms (and the degree map, if any).
    Validate { input: PathBuf },
    /// List the left inverse hull.
    Hull { input: PathBuf },
    /// Enumerate filters and tight filters of the idempotents.
    Spectrum { input: PathBuf },
    /// Build the tight groupoid of germs.
    Groupoid { input: PathBuf },
    /// Decide whether a subalgebra detects ideals.
    Detect {
        input: PathBuf,
        #[arg(long)]
        subalgebra: Subalgebra,
    },
    /// Run the lemma suites on an input, the fixtures, or random instances.
    VerifyLemmas {
        input: Option<PathBuf>,
        #[arg(long)]
        random: Option<usize>,
    },
    /// Run the whole pipeline.
    Report { input: PathBuf },
}

fn load(path: &Path) -> Result<InputSpec> {
    Ok(parse_file(path)?)
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let o = Overrides {
        tolerance: cli.common.tolerance,
        depth: cli.common.depth,
        cap: cli.common.cap,
        seed: cli.common.seed,
    };
    let with = |path: &PathBuf, f: &dyn Fn(&InputSpec, &Settings) -> Result<Outcome>| {
        let spec = load(path)?;
        f(&spec, &Settings::new(Some(&spec), &o))
    };
    match &cli.command {
        Command::Validate { input } => with(input, &report::cmd_validate),
        Command::Hull { input } => with(input, &report::cmd_hull),
        Command::Spectrum { input } => with(input, &report::cmd_spectrum),
        Command::Groupoid { input } => with(input, &report::cmd_groupoid),
        Command::Report { input } => with(input, &report::cmd_report),
        Command::Detect { input, subalgebra } => with(input, &|s, st| report::cmd_detect(s, st, *subalgebra)),
        Command::VerifyLemmas { input, random } => {
            let spec = input.as_deref().map(load).transpose()?;
            report::cmd_verify_lemmas(spec.as_ref(), &Settings::new(spec.as_ref(), &o), *random)
        }
    }
}

fn emit(outcome: &Outcome, out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(&outcome.document).expect("reports serialize") + "\n";
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli).and_then(|o| emit(&o, cli.common.out.as_ref()).map(|()| o.code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run() -> i32 {
    run_from(std::env::args_os())
}
