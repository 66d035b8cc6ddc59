//! `bergman-lab <subcommand> --config <path> [--out <dir>]`
//!
//! Exit status: 0 on success, 1 when a computation fails (or, for `verify`,
//! when a criterion fails), 2 when the configuration cannot be read.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bergman::config::ExperimentConfig;
use bergman::experiments;
use bergman::report::OutputFile;
use bergman::verify::{self, Scope, Status, Suite};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bergman-lab", version, about = "Bergman polynomial experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `output_dir` from the configuration.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Orthonormal system as JSON and the λ_n table.
    Ortho(Common),
    /// α, ε, β and h tables with the identity residuals.
    Tables(Common),
    /// Zeros of p_1 … p_N with distances and diagnostics.
    Zeros(Common),
    /// Deviation and n-th root profile tables at the sample points.
    Asymptotics(Common),
    /// Raster of the continuation region.
    Continuation(Common),
    /// Acceptance checks, one PASS/FAIL/SKIP line per criterion.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Run every criterion on every domain it names, not only the
        /// configured domain.
        #[arg(long)]
        catalog: bool,
    },
}

enum Failure {
    Config(String),
    Compute(String),
}

impl From<bergman::Error> for Failure {
    fn from(e: bergman::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn load(common: &Common) -> Result<(ExperimentConfig, PathBuf), Failure> {
    let mut cfg = ExperimentConfig::load(&common.config)
        .map_err(|e| Failure::Config(format!("{}: {e}", common.config.display())))?;
    if let Some(out) = &common.out {
        cfg.output_dir = out.to_string_lossy().into_owned();
    }
    let dir = PathBuf::from(&cfg.output_dir);
    Ok((cfg, dir))
}

/// Write the resolved configuration and then every output, in order.
fn write_all(dir: &Path, cfg: &ExperimentConfig, files: &[OutputFile]) -> Result<(), Failure> {
    let echo = OutputFile { name: "config.json".into(), contents: cfg.resolved_json() };
    for f in std::iter::once(&echo).chain(files) {
        f.write_into(dir)?;
        println!("wrote {}", dir.join(&f.name).display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let (common, job): (&Common, fn(&ExperimentConfig) -> bergman::Result<Vec<OutputFile>>) = match &cli.command {
        Command::Ortho(c) => (c, experiments::ortho),
        Command::Tables(c) => (c, experiments::tables),
        Command::Zeros(c) => (c, experiments::zeros),
        Command::Asymptotics(c) => (c, experiments::asymptotics),
        Command::Continuation(c) => (c, experiments::continuation),
        Command::Verify { common, catalog } => return run_verify(common, *catalog),
    };
    let (cfg, dir) = load(common)?;
    let files = job(&cfg)?;
    write_all(&dir, &cfg, &files)?;
    Ok(true)
}

fn run_verify(common: &Common, catalog: bool) -> Result<bool, Failure> {
    let (cfg, dir) = load(common)?;
    let scope = if catalog { Scope::Catalog } else { Scope::Domain(cfg.domain_spec()?) };
    let mut outcomes = Suite::from_config(&cfg, scope.clone())?.run();
    let twelve = verify::determinism(&mut Suite::from_config(&cfg, scope)?, &outcomes);
    outcomes.push(twelve);
    print!("{}", verify::render(&outcomes));
    let files = [
        verify::table(&outcomes).into_file("verify.csv"),
        OutputFile { name: "verify.txt".into(), contents: verify::render(&outcomes) },
    ];
    write_all(&dir, &cfg, &files)?;
    Ok(outcomes.iter().all(|o| o.status != Status::Fail))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: config: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
