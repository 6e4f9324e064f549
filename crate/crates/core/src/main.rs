use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tate_resolve::groebner::GroebnerLimits;
use tate_resolve::problem::{self, ProblemSpec, Ring};
use tate_resolve::{Error, Result};

#[derive(Parser)]
#[command(name = "tate-resolve", version, about = "dg module structures over the Tate construction, and their descent")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the ring and the pair (f, g); report whether it is an exact pair.
    CheckRing(Common),
    /// Minimal free resolution of M over Q or over R = Q/(f).
    Resolve {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "q")]
        over: Over,
    },
    /// Build and verify the dg module structure on the resolution over Q.
    Dg(Common),
    /// Full pipeline: dg structure, descent to R, comparison with the resolution over R.
    Descend(Common),
    /// Verify the structure constants and the periodic complex of the Tate construction.
    VerifyTate(Common),
}

#[derive(Args)]
struct Common {
    /// Problem specification (JSON).
    #[arg(long)]
    spec: PathBuf,
    /// Override the truncation degree.
    #[arg(long)]
    degree: Option<usize>,
    /// Directory for JSON artifacts (defaults to the spec's `output`).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Over {
    #[value(name = "Q", alias = "q")]
    Q,
    #[value(name = "R", alias = "r")]
    R,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl Common {
    fn load(&self) -> Result<ProblemSpec> {
        let mut spec = ProblemSpec::load(&self.spec)?;
        if let Some(n) = self.degree {
            spec.degree = n;
            spec.validate()?;
        }
        Ok(spec)
    }

    fn out_dir(&self, spec: &ProblemSpec) -> Option<PathBuf> {
        self.out.clone().or_else(|| spec.output.as_ref().map(PathBuf::from))
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn write_artifact<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, to_json(value)).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize + std::fmt::Display>(common: &Common, spec: &ProblemSpec, name: &str, report: &T) -> Result<()> {
    let text = match common.format {
        Format::Json => to_json(report),
        Format::Text => report.to_string(),
    };
    // a closed pipe (e.g. `| head`) is not an error
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if let Some(dir) = common.out_dir(spec) {
        write_artifact(&dir, name, report)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32> {
    let limits = GroebnerLimits::from_env();
    match cli.command {
        Command::CheckRing(common) => {
            let spec = common.load()?;
            let report = problem::check_ring(&spec, limits)?;
            emit(&common, &spec, "ring.json", &report)?;
            Ok(0)
        }
        Command::Resolve { common, over } => {
            let spec = common.load()?;
            let (ring, name) = match over {
                Over::Q => (Ring::Q, "resolution-q.json"),
                Over::R => (Ring::R, "resolution-r.json"),
            };
            let report = problem::resolve(&spec, ring, limits)?;
            emit(&common, &spec, name, &report)?;
            Ok(if report.verification.all_passed() { 0 } else { 1 })
        }
        Command::Dg(common) => {
            let spec = common.load()?;
            let (system, report) = problem::dg(&spec, limits)?;
            emit(&common, &spec, "dg-report.json", &report)?;
            if let Some(dir) = common.out_dir(&spec) {
                write_artifact(&dir, "sigma.json", &system)?;
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Descend(common) => {
            let spec = common.load()?;
            let report = problem::full_pipeline(&spec, limits)?;
            emit(&common, &spec, "pipeline.json", &report)?;
            Ok(report.exit_code())
        }
        Command::VerifyTate(common) => {
            let spec = common.load()?;
            let report = problem::verify_tate(&spec, limits)?;
            emit(&common, &spec, "tate.json", &report)?;
            Ok(if report.verification.consistent() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
