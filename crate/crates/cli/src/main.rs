//! Command-line driver: forward projection, reconstruction, experiment
//! sweeps, and report generation.
//!
//! Exit codes: 0 on success, 1 on validation errors, 2 on I/O errors.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use arcmeans::Error;
use config::RunConfig;

#[derive(Parser)]
#[command(name = "arcmeans", version, about = "Limited-view circular-mean reconstruction")]
struct Cli {
    /// Flat key = value config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (default "out").
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker thread cap; default uses all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Grid scale: n = n_a = n_r = scale.
    #[arg(long, global = true)]
    scale: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct RunArgs {
    /// Named configuration: fig1, fig2, fig3, fig5b, fig12c, fullcircle, polar.
    #[arg(long)]
    preset: Option<String>,

    /// Filter symbol dimension (2 or 3).
    #[arg(long)]
    filter_dim: Option<u32>,

    /// Transform padding factor.
    #[arg(long)]
    pad: Option<usize>,

    /// Raised-cosine taper fraction in [0, 1).
    #[arg(long)]
    taper: Option<f64>,

    /// Window kind: sharp, rational, plateau.
    #[arg(long)]
    window: Option<String>,

    /// Window transition parameter.
    #[arg(long)]
    eps: Option<f64>,

    /// Window vanishing order k.
    #[arg(long)]
    order: Option<u32>,

    /// Image size (n x n pixels).
    #[arg(long)]
    n: Option<usize>,

    /// Angular sample count.
    #[arg(long)]
    na: Option<usize>,

    /// Radial sample count.
    #[arg(long)]
    nr: Option<usize>,

    /// Radial range [0, rmax].
    #[arg(long)]
    rmax: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute and write the analytic sinogram.
    Forward(RunArgs),
    /// Run one reconstruction and write the image, config, and profile.
    Reconstruct(RunArgs),
    /// Run a named sweep (exp1, exp2, exp3, fullcircle, polar) plus analysis.
    Experiment {
        name: String,
        #[command(flatten)]
        args: RunArgs,
    },
    /// Recompute the report over a directory of completed runs.
    Analyze {
        /// Directory of runs; defaults to --out.
        dir: Option<PathBuf>,
    },
}

fn build_config(cli: &Cli, args: &RunArgs) -> arcmeans::Result<RunConfig> {
    let mut c = match (&args.preset, &cli.config) {
        (Some(_), Some(_)) => {
            return Err(Error::validation(
                "config",
                "--preset and --config are mutually exclusive",
            ))
        }
        (Some(name), None) => config::preset(name)?,
        (None, Some(path)) => RunConfig::load(path)?,
        (None, None) => RunConfig::default(),
    };
    if let Some(scale) = cli.scale {
        c = c.at_scale(scale);
    }
    if let Some(v) = args.filter_dim {
        c.filter_dim = v;
    }
    if let Some(v) = args.pad {
        c.pad = v;
    }
    if let Some(v) = args.taper {
        c.taper = v;
    }
    if let Some(v) = &args.window {
        c.set("window", v)?;
    }
    if let Some(v) = args.eps {
        c.eps = v;
    }
    if let Some(v) = args.order {
        c.order = v;
    }
    if let Some(v) = args.n {
        c.n = v;
    }
    if let Some(v) = args.na {
        c.n_a = v;
    }
    if let Some(v) = args.nr {
        c.n_r = v;
    }
    if let Some(v) = args.rmax {
        c.r_max = v;
    }
    Ok(c)
}

fn run(cli: &Cli) -> arcmeans::Result<()> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::validation("threads", e.to_string()))?;
    }
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    match &cli.cmd {
        Cmd::Forward(args) => commands::cmd_forward(&build_config(cli, args)?, &out),
        Cmd::Reconstruct(args) => commands::cmd_reconstruct(&build_config(cli, args)?, &out),
        Cmd::Experiment { name, args: _ } => {
            commands::cmd_experiment(name, cli.scale.unwrap_or(512), &out)
        }
        Cmd::Analyze { dir } => commands::cmd_analyze(dir.as_deref().unwrap_or(&out)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) | Error::Format { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
