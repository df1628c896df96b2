use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tworep_core::catalogue::{Catalogue, DEFAULT_SEED};
use tworep_core::io::{cmd_classify, cmd_fuse, cmd_homs, cmd_verify, load_two_group, Report};
use tworep_core::projrep::TwistMode;
use tworep_core::two_rep::Flavour;

#[derive(Parser)]
#[command(name = "tworep", version, about = "Representations of finite 2-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// JSON specification of the 2-group
    spec: PathBuf,
    #[arg(long, default_value = "positive")]
    flavour: Flavour,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the JSON report here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the table
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Transform {
    Dual1,
    Dual2,
    Adjoint,
}

#[derive(Subcommand)]
enum Command {
    /// List the irreducible 2-representations
    Classify(Common),
    /// Irreducible intertwiners between every ordered pair
    Homs(Common),
    /// Compose labelled intertwiners, leftmost applied last
    Fuse {
        #[command(flatten)]
        common: Common,
        #[arg(required = true)]
        labels: Vec<String>,
        /// Apply a dual or adjoint to a single label instead
        #[arg(long, value_enum)]
        transform: Option<Transform>,
    },
    /// Run the coherence battery; exits nonzero on any failure
    Verify {
        #[command(flatten)]
        common: Common,
        /// Check at most this many chainable pairs
        #[arg(long)]
        max_pairs: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<Report, Box<dyn std::error::Error>> {
    let common = match &cli.command {
        Command::Classify(c) | Command::Homs(c) => c,
        Command::Fuse { common, .. } | Command::Verify { common, .. } => common,
    };
    let text = std::fs::read_to_string(&common.spec)?;
    let tg = load_two_group(&text)?;
    let cat = Catalogue::build(&tg, common.flavour, common.seed)?;
    let report = match &cli.command {
        Command::Classify(_) => cmd_classify(&cat),
        Command::Homs(_) => cmd_homs(&cat),
        Command::Fuse { labels, transform, .. } => {
            let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
            let mode = transform.map(|t| match t {
                Transform::Dual1 => TwistMode::Dual1,
                Transform::Dual2 => TwistMode::Dual2,
                Transform::Adjoint => TwistMode::Adjoint,
            });
            cmd_fuse(&cat, &labels, mode)?
        }
        Command::Verify { max_pairs, .. } => cmd_verify(&cat, *max_pairs)?,
    };
    if let Some(path) = &common.out {
        std::fs::write(path, report.to_json() + "\n")?;
    }
    if common.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render());
    }
    Ok(report)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) if report.passed() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
