use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use singequiv::commands::{self, parse_field, parse_shifts, CliError, IdealSpec, Input, ModuleSpec, Options};
use singequiv::{FixtureId, Report};
use singequiv_core::module::Side;

#[derive(Parser)]
#[command(name = "singequiv", version, about = "Singular equivalences of quiver algebras, checked exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Ground field override: Q or F<p>.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Search bound for homological dimensions and stabilization.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Consecutive bijective transitions required for heuristic stability.
    #[arg(long, global = true)]
    window: Option<usize>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long, global = true)]
    json: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Command {
    /// Build the algebra and list its basis.
    Basis { file: String },
    /// Minimal projective resolution of a module.
    Resolve {
        file: String,
        /// S:v, P:v, I:v or A.
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 5)]
        degree: usize,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
    },
    /// Tor_i(J, A/J) and Tor_i(A/J, A/J).
    Tor {
        file: String,
        /// vertex:1,2 or gens:x;y
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value_t = 5)]
        max: usize,
    },
    /// Certificate chain for a singular equivalence between A and A/J.
    Check {
        file: String,
        #[arg(long)]
        ideal: String,
    },
    /// Peel vertices off as triangular extensions.
    Peel {
        file: String,
        /// Comma-separated vertex labels.
        #[arg(long)]
        at: String,
    },
    /// Compare singularity-category Hom dimensions over A and A/AeA.
    Shadow {
        file: String,
        #[arg(long)]
        at: String,
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        shifts: String,
    },
    /// Run the claim suite of a built-in example.
    VerifyExample {
        /// dual, a2, e31, e32 or e33
        id: String,
        /// Parameter of e33 (at least 2).
        #[arg(long)]
        r: Option<usize>,
    },
    /// Randomized property checks.
    Harness {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Run the single instance with this seed.
        #[arg(long)]
        replay: Option<u64>,
    },
}

fn run(cli: Cli, echo: Vec<String>) -> Result<Report, CliError> {
    let g = &cli.global;
    let o = Options {
        field: g.field.as_deref().map(parse_field).transpose()?,
        bound: g.bound,
        window: g.window,
        command: echo,
    };
    match cli.command {
        Command::Basis { file } => commands::cmd_basis(&Input::load(&file)?, &o),
        Command::Resolve { file, module, degree, side } => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            commands::cmd_resolve(&Input::load(&file)?, &module.parse::<ModuleSpec>()?, side, degree, &o)
        }
        Command::Tor { file, ideal, max } => commands::cmd_tor(&Input::load(&file)?, &ideal.parse::<IdealSpec>()?, max, &o),
        Command::Check { file, ideal } => commands::cmd_check(&Input::load(&file)?, &ideal.parse::<IdealSpec>()?, &o),
        Command::Peel { file, at } => commands::cmd_peel(&Input::load(&file)?, &at, &o),
        Command::Shadow { file, at, shifts } => commands::cmd_shadow(&Input::load(&file)?, &at, &parse_shifts(&shifts)?, &o),
        Command::VerifyExample { id, r } => {
            let mut fixture: FixtureId = id.parse().map_err(CliError::Input)?;
            if let Some(r) = r {
                if !matches!(fixture, FixtureId::E33(_)) {
                    return Err(CliError::Input("--r only applies to e33".into()));
                }
                fixture = FixtureId::new_e33(r).map_err(CliError::Input)?;
            }
            commands::cmd_verify_example(fixture, &o)
        }
        Command::Harness { seed, count, replay } => match replay {
            Some(s) => commands::cmd_harness_replay(s, &o),
            None => commands::cmd_harness(seed, count, &o),
        },
    }
}

fn main() -> ExitCode {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let json = cli.global.json.clone();
    match run(cli, echo) {
        Ok(report) => {
            // `--json -` keeps stdout machine-readable
            if json.as_deref() != Some("-") {
                print!("{}", report.render());
            }
            if let Some(path) = json {
                let body = report.to_json();
                let written = if path == "-" {
                    print!("{body}");
                    Ok(())
                } else {
                    std::fs::write(&path, body)
                };
                if let Err(e) = written {
                    eprintln!("error: {path}: {e}");
                    return ExitCode::from(2);
                }
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
