//! Thin command-line front end over the c0forge library.
//!
//! Exit codes: 0 on success/pass, 1 when verification fails, 2 on usage or
//! parse errors. `C0FORGE_THREADS` caps internal worker parallelism.

use c0forge::cli::{
    cmd_embed, cmd_gen, cmd_prune, cmd_report, cmd_sweep, cmd_verify, EmbedConfig, EngineKind,
    GenConfig, LambdaArg, SpaceKind,
};
use c0forge::embed::Target;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "c0forge", version, about = "Low-distortion embeddings into max-norm coordinates and their nonnegative cone")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a space file (random | lp | ultra | tree | shifted-axes | dyadic).
    Gen {
        #[arg(long)]
        kind: String,
        /// Point count (random, lp, ultra) or axis count (shifted-axes).
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        /// Tree depth (tree) or string depth (dyadic).
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        branch: u64,
        /// Restrict lp clouds to the nonnegative cone.
        #[arg(long, default_value_t = false)]
        positive: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Embed a space file.
    Embed {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// generic | net | lp | generic-plus | net-plus | lp-plus |
        /// lp-positive | ultrametric | tree
        #[arg(long)]
        engine: String,
        /// A number, or `auto` for the engine's characteristic constant.
        #[arg(long, default_value = "auto")]
        lambda: String,
        /// c0 | c0plus; requesting c0plus from a signed engine applies the
        /// positive-part doubling map.
        #[arg(long)]
        target: Option<String>,
        #[arg(long = "schedule-ratio", default_value_t = 0.5)]
        schedule_ratio: f64,
        /// Calibration net fraction for net-plus at lambda <= 2.
        #[arg(long = "net-fraction", default_value_t = 1.0)]
        net_fraction: f64,
        #[arg(long, default_value_t = false)]
        prune: bool,
    },
    /// Audit an embedding file against its space file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Drop redundant coordinates while keeping the strict lower bound.
    Prune {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Embed across a lambda list and emit CSV (lambda, dimension, max_ratio).
    Sweep {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated lambda values, e.g. 1.2,1.5,2.
        #[arg(long)]
        lambdas: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summarize an embedding file.
    Report {
        #[arg(long)]
        embedding: PathBuf,
    },
}

fn run(cmd: Cmd) -> c0forge::Result<i32> {
    match cmd {
        Cmd::Gen { kind, n, p, dim, depth, branch, positive, seed, out } => {
            let cfg = GenConfig {
                kind: kind.parse::<SpaceKind>()?,
                n,
                p,
                dim,
                depth,
                branch,
                positive,
                seed,
                out,
            };
            println!("{}", cmd_gen(&cfg)?);
            Ok(0)
        }
        Cmd::Embed {
            input,
            out,
            engine,
            lambda,
            target,
            schedule_ratio,
            net_fraction,
            prune,
        } => {
            let target = match target.as_deref() {
                None => None,
                Some("c0") => Some(Target::C0),
                Some("c0plus") => Some(Target::C0Plus),
                Some(other) => {
                    return Err(c0forge::Error::BadParams(format!("unknown target `{other}`")))
                }
            };
            let cfg = EmbedConfig {
                input,
                out,
                engine: engine.parse::<EngineKind>()?,
                lambda: lambda.parse::<LambdaArg>()?,
                target,
                schedule_ratio,
                net_fraction,
                prune,
            };
            print!("{}", cmd_embed(&cfg)?);
            Ok(0)
        }
        Cmd::Verify { input, embedding, tol } => {
            let (report, code) = cmd_verify(&input, &embedding, tol)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report)
                    .map_err(|e| c0forge::Error::ParseError(e.to_string()))?
            );
            Ok(code)
        }
        Cmd::Prune { input, embedding, out } => {
            println!("{}", cmd_prune(&input, &embedding, &out)?);
            Ok(0)
        }
        Cmd::Sweep { input, lambdas, out } => {
            let values = lambdas
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| c0forge::Error::BadParams(format!("bad lambda `{s}`")))
                })
                .collect::<c0forge::Result<Vec<f64>>>()?;
            print!("{}", cmd_sweep(&input, &values, out.as_deref())?);
            Ok(0)
        }
        Cmd::Report { embedding } => {
            print!("{}", cmd_report(&embedding)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
