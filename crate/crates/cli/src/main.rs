use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use supergrid_cli::config::{self, Loaded};
use supergrid_cli::output::{write_manifest, Manifest, Outputs};
use supergrid_cli::pipeline::{self, Flags, Run};
use supergrid_cli::{fixtures, CliError};

/// Extendable heatmaps and cluster diagnostics.
///
/// Any config key can also be given as `--key=value` (for example
/// `--heat_pal=RdBu` or `--bottom.label.text.angle=90`); such flags win over
/// the config file.
#[derive(Parser, Debug)]
#[command(name = "supergrid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Render a heatmap figure to SVG.
    Render(Common),
    /// Write stability and silhouette curves over a range of k.
    Diagnose(Common),
    /// Write the cluster-smoothed block matrix as CSV.
    Smooth(Common),
    /// Write the bundled synthetic fixtures to a directory.
    Fixtures {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

const RESERVED: &[&str] = &["config", "matrix", "out", "seed", "help", "version"];

/// Splits `--key=value` config overrides from the arguments clap handles.
fn split_overrides(args: Vec<OsString>) -> (Vec<OsString>, Vec<(String, String)>) {
    let mut kept = Vec::new();
    let mut overrides = Vec::new();
    for a in args {
        if let Some((k, v)) = a
            .to_str()
            .and_then(|s| s.strip_prefix("--"))
            .and_then(|s| s.split_once('='))
        {
            if !RESERVED.contains(&k) {
                overrides.push((k.to_string(), v.to_string()));
                continue;
            }
        }
        kept.push(a);
    }
    (kept, overrides)
}

fn commit(run: Run) -> Result<(), CliError> {
    let outputs = run.outputs.commit()?;
    write_manifest(
        &run.primary,
        &Manifest {
            command: run.command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: run.seed,
            inputs: run.inputs,
            outputs,
        },
    )
}

fn execute(cli: Cli, overrides: &[(String, String)]) -> Result<(), CliError> {
    let (common, f): (Common, fn(&Loaded, &Flags) -> Result<Run, CliError>) = match cli.command {
        Command::Render(c) => (c, pipeline::render),
        Command::Diagnose(c) => (c, pipeline::diagnose),
        Command::Smooth(c) => (c, pipeline::smooth),
        Command::Fixtures { out } => {
            if !overrides.is_empty() {
                return Err(CliError::Config(
                    "fixtures takes no config overrides".into(),
                ));
            }
            let mut files = Outputs::default();
            for (name, bytes) in fixtures::all()? {
                files.add(out.join(name), bytes);
            }
            let outputs = files.commit()?;
            return write_manifest(
                &out.join("fixtures"),
                &Manifest {
                    command: "fixtures".into(),
                    version: env!("CARGO_PKG_VERSION").to_string(),
                    seed: 0,
                    inputs: Vec::new(),
                    outputs,
                },
            )
            .map(|_| ());
        }
    };
    let loaded = config::load(common.config.as_deref(), overrides)?;
    let flags = Flags {
        matrix: common.matrix,
        out: common.out,
        seed: common.seed,
    };
    let run = f(&loaded, &flags)?;
    for p in run.outputs.paths() {
        log::info!("writing {}", p.display());
    }
    commit(run)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let (args, overrides) = split_overrides(std::env::args_os().collect());
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli, &overrides) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("supergrid: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
