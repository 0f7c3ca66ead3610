//! `combatlas`: verify hyperbolicity certificates for matroids, Lorentzian
//! polynomials, mixed volumes and brick regions from JSON inputs.
//!
//! Exit status is 0 when the verdict holds, 1 when it fails and 2 on input
//! errors.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use combatlas::atlas::CheckOptions;
use combatlas::linalg::{parse_rational, Rational, Tolerance};
use num_traits::{One, Zero};

use commands::Config;
use report::Report;

#[derive(Parser)]
#[command(name = "combatlas", version, about = "Combinatorial atlas verifiers")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Tolerance for floating-point comparisons.
    #[arg(long, default_value_t = 1e-9, global = true)]
    eps: f64,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Values of t in [0, 1] at which matroid atlases are instantiated.
    #[arg(long, default_value = "0,1/4,1/2,3/4,1", global = true)]
    t_samples: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// (Ultra-)log-concavity of independent-set counts at k.
    Mason {
        file: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        strong: bool,
        /// Also build the atlas and check every vertex.
        #[arg(long)]
        atlas_route: bool,
    },
    /// Decide whether a simplicial complex is a matroid, by both routes.
    Recognize { file: String },
    /// Certify a homogeneous polynomial as Lorentzian.
    Lorentzian {
        file: String,
        #[arg(long)]
        witness: bool,
    },
    /// Hyperbolicity of the Hessian at a positive point.
    Hessian {
        file: String,
        /// Comma-separated coordinates, e.g. `1,1/2,3`.
        #[arg(long)]
        at: String,
    },
    /// Mixed volume of the selected bodies.
    Mixvol {
        file: String,
        #[arg(long)]
        select: String,
    },
    /// The Alexandrov-Fenchel inequality for two bodies of a family.
    Af {
        file: String,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        /// Remaining bodies; defaults to the others in file order.
        #[arg(long = "P")]
        p: Option<String>,
        /// Replace every body X by X + εQ with Q the sum of all bodies.
        #[arg(long)]
        perturb: Option<f64>,
    },
    /// Brunn-Minkowski for two brick regions.
    Bm {
        file_a: String,
        file_b: String,
        #[arg(long)]
        trace: bool,
    },
    /// Atlas files.
    Atlas {
        #[command(subcommand)]
        action: AtlasAction,
    },
}

#[derive(Subcommand)]
enum AtlasAction {
    /// Validate and run the local-global principle at the sources, one vertex, or every non-sink.
    Verify {
        file: String,
        #[arg(long, conflicts_with = "all")]
        vertex: Option<String>,
        #[arg(long)]
        all: bool,
        /// Check transposition invariance on distinct index triples only.
        #[arg(long)]
        tinv_distinct: bool,
        /// Accept negative diagonal entries when validating.
        #[arg(long)]
        allow_negative_diagonal: bool,
    },
}

fn config(cli: &Cli) -> Result<Config> {
    if !(cli.eps > 0.0 && cli.eps.is_finite()) {
        bail!("--eps must be positive, found {}", cli.eps);
    }
    let mut t_samples = Vec::new();
    for s in cli.t_samples.split(',') {
        let t: Rational = parse_rational(s.trim()).map_err(|e| anyhow::anyhow!("--t-samples: {e}"))?;
        if t < Rational::zero() || t > Rational::one() {
            bail!("--t-samples: {t} lies outside [0, 1]");
        }
        t_samples.push(t);
    }
    Ok(Config { eps: cli.eps, seed: cli.seed, t_samples })
}

fn run(cli: &Cli) -> Result<Report> {
    let cfg = config(cli)?;
    match &cli.command {
        Command::Mason { file, k, strong, atlas_route } => commands::mason(&cfg, file, *k, *strong, *atlas_route),
        Command::Recognize { file } => commands::recognize(&cfg, file),
        Command::Lorentzian { file, witness } => commands::lorentzian(&cfg, file, *witness),
        Command::Hessian { file, at } => commands::hessian_cmd(&cfg, file, at),
        Command::Mixvol { file, select } => commands::mixvol(&cfg, file, select),
        Command::Af { file, a, b, p, perturb } => commands::af(&cfg, file, a, b, p.as_deref(), *perturb),
        Command::Bm { file_a, file_b, trace } => commands::bm(&cfg, file_a, file_b, *trace),
        Command::Atlas { action: AtlasAction::Verify { file, vertex, all, tinv_distinct, allow_negative_diagonal } } => {
            let opts = CheckOptions { tol: Tolerance::new(cfg.eps), tinv_distinct_only: *tinv_distinct, require_nonneg_diagonal: !*allow_negative_diagonal };
            commands::atlas_verify(&cfg, file, vertex.as_deref(), *all, opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(start.elapsed().as_secs_f64()),
            };
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
