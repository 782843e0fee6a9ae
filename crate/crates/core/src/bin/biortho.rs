use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use biortho::cli::{
    cmd_dict, cmd_duals, cmd_figures, cmd_project, cmd_verify, CliError, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "biortho",
    version,
    about = "Recursive bi-orthogonal duals for Mexican-hat dictionaries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the dictionary atoms.
    Dict(Common),
    /// Build the duals by successive insertion.
    Duals {
        #[command(flatten)]
        common: Common,
        /// Also record this dual (1-based) across every family version.
        #[arg(long)]
        trace: Option<usize>,
    },
    /// Project a target CSV onto the dictionary.
    Project {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        target: PathBuf,
    },
    /// Write the first atom and the first dual after 1, 3 and 5 insertions.
    Figures(Common),
    /// Run the invariant checks; exits 1 if any fails.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Offer the dependent atom 2*a1 + a2 and report the outcome.
        #[arg(long)]
        inject_dependent: bool,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    grid_start: f64,
    #[arg(long, default_value_t = 7.0, allow_hyphen_values = true)]
    grid_end: f64,
    #[arg(long, default_value_t = 1201)]
    grid_points: usize,
    #[arg(long, default_value_t = 5)]
    atoms: usize,
    #[arg(long, default_value_t = biortho::DEFAULT_DEPENDENCE_TOL)]
    tol: f64,
    /// Prefix prepended to every output file name.
    #[arg(long, default_value = "")]
    out: String,
}

impl Common {
    fn into_config(self) -> RunConfig {
        RunConfig {
            grid_start: self.grid_start,
            grid_end: self.grid_end,
            grid_points: self.grid_points,
            atom_count: self.atoms,
            dependence_tol: self.tol,
            out: self.out,
            ..RunConfig::default()
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    let files = match command {
        Command::Dict(c) => cmd_dict(&c.into_config())?,
        Command::Duals { common, trace } => cmd_duals(&RunConfig {
            trace_dual: trace,
            ..common.into_config()
        })?,
        Command::Project { common, target } => cmd_project(&RunConfig {
            target: Some(target),
            ..common.into_config()
        })?,
        Command::Figures(c) => cmd_figures(&c.into_config())?,
        Command::Verify {
            common,
            inject_dependent,
        } => {
            let report = cmd_verify(&RunConfig {
                inject_dependent,
                ..common.into_config()
            })?;
            print!("{report}");
            return Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
    };
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
