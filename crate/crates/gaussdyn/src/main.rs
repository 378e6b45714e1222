use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gaussdyn::config::KeyValues;
use gaussdyn::scenario::{run_scenario, Scenario, ScenarioConfig};
use gaussdyn::{run, sweep, CliError, Result, RunConfig};

/// Entanglement dynamics of two coupled oscillators in a common environment.
#[derive(Parser)]
#[command(name = "gaussdyn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the CSV for a figure preset (fig1, fig2 or fig3).
    Scenario {
        name: String,
        /// Override a preset value, e.g. `--set d=0.3` or `--set grid.d.n=81`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, env = "GAUSSDYN_JOBS", default_value_t = 1)]
        jobs: usize,
    },
    /// Evaluate a single configuration and print a report.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        allow_unphysical: bool,
        /// Trace CSV path; overrides `output.path`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a 1-D or 2-D parameter grid into a CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, env = "GAUSSDYN_JOBS", default_value_t = 1)]
        jobs: usize,
        /// Output CSV path; overrides `output.path`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_config(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    RunConfig::from_text(&text)
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Scenario {
            name,
            set,
            out,
            jobs,
        } => {
            let scenario = Scenario::parse(&name)?;
            let overrides = set
                .iter()
                .map(|s| KeyValues::parse_assignment(s))
                .collect::<Result<Vec<_>>>()?;
            let cfg = ScenarioConfig::with_overrides(scenario, &overrides)?;
            let output = run_scenario(&cfg, &out, jobs)?;
            for w in &output.warnings {
                eprintln!("{w}");
            }
            for f in &output.files {
                println!("wrote {}", f.display());
            }
        }
        Command::Run {
            config,
            allow_unphysical,
            out,
        } => {
            let mut cfg = load_config(&config)?;
            cfg.allow_unphysical |= allow_unphysical;
            let output = run::run_single(&cfg, out)?;
            print!("{}", output.report);
        }
        Command::Sweep { config, jobs, out } => {
            let cfg = load_config(&config)?;
            let out = out
                .or_else(|| cfg.output.clone())
                .ok_or_else(|| CliError::Config("no output path (output.path or --out)".into()))?;
            let rows = sweep::run_sweep(&cfg, jobs, &out)?;
            println!("wrote {rows} rows to {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
