//! Batch pipeline behind the `c0forge` binary: generate spaces, run
//! engines, verify, prune, sweep, and summarize — all through JSON/CSV
//! files with deterministic contents.

use crate::audit::{distortion_report, DistortionReport};
use crate::cloud::proot;
use crate::cover::{phi_net, phi_net_on, PhiFunction, Provider, ProviderKind, ProviderSpec};
use crate::embed::{embed_c0, embed_c0_plus, pos_split, prune, BlockSchedule, Embedding, Target};
use crate::error::{Error, Result};
use crate::exact::{embed_tree, embed_ultrametric};
use crate::json::{
    read_embedding, read_space, write_embedding, write_space, write_sparse, SpaceInput,
};
use crate::metric::FiniteMetricSpace;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Space families the `gen` command produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    Random,
    Lp,
    Ultra,
    Tree,
    ShiftedAxes,
    Dyadic,
}

impl std::str::FromStr for SpaceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "random" => SpaceKind::Random,
            "lp" => SpaceKind::Lp,
            "ultra" => SpaceKind::Ultra,
            "tree" => SpaceKind::Tree,
            "shifted-axes" => SpaceKind::ShiftedAxes,
            "dyadic" => SpaceKind::Dyadic,
            other => return Err(Error::BadParams(format!("unknown space kind `{other}`"))),
        })
    }
}

/// Embedding engines of the `embed` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineKind {
    Generic,
    Net,
    Lp,
    GenericPlus,
    NetPlus,
    LpPlus,
    LpPositive,
    Ultrametric,
    Tree,
}

impl std::str::FromStr for EngineKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "generic" => EngineKind::Generic,
            "net" => EngineKind::Net,
            "lp" => EngineKind::Lp,
            "generic-plus" => EngineKind::GenericPlus,
            "net-plus" => EngineKind::NetPlus,
            "lp-plus" => EngineKind::LpPlus,
            "lp-positive" => EngineKind::LpPositive,
            "ultrametric" => EngineKind::Ultrametric,
            "tree" => EngineKind::Tree,
            other => return Err(Error::BadParams(format!("unknown engine `{other}`"))),
        })
    }
}

/// `--lambda` accepts a number or `auto`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaArg {
    Auto,
    Value(f64),
}

impl std::str::FromStr for LambdaArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(LambdaArg::Auto);
        }
        s.parse::<f64>()
            .map(LambdaArg::Value)
            .map_err(|_| Error::BadParams(format!("bad lambda `{s}`")))
    }
}

/// Parameters of `gen`.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub kind: SpaceKind,
    pub n: usize,
    pub p: f64,
    pub dim: usize,
    pub depth: usize,
    pub branch: u64,
    pub positive: bool,
    pub seed: u64,
    pub out: PathBuf,
}

/// Parameters of `embed`.
#[derive(Debug, Clone)]
pub struct EmbedConfig {
    pub input: PathBuf,
    pub out: PathBuf,
    pub engine: EngineKind,
    pub lambda: LambdaArg,
    pub target: Option<Target>,
    pub schedule_ratio: f64,
    pub net_fraction: f64,
    pub prune: bool,
}

pub fn cmd_gen(cfg: &GenConfig) -> Result<String> {
    let input = match cfg.kind {
        SpaceKind::Random => SpaceInput::Metric(crate::gen::gen_random_metric(cfg.n, cfg.seed)?),
        SpaceKind::Lp => SpaceInput::Cloud(crate::gen::gen_lp_cloud(
            cfg.p,
            cfg.dim,
            cfg.n,
            cfg.seed,
            cfg.positive,
        )?),
        SpaceKind::Ultra => {
            SpaceInput::Metric(crate::gen::gen_random_ultrametric(cfg.n, cfg.seed)?)
        }
        SpaceKind::Tree => SpaceInput::Tree(crate::gen::gen_branching_tree(cfg.depth, cfg.branch)?),
        SpaceKind::ShiftedAxes => SpaceInput::Metric(crate::gen::gen_shifted_axes(cfg.n)?),
        SpaceKind::Dyadic => SpaceInput::Metric(crate::gen::gen_dyadic_shifted(cfg.depth)?),
    };
    write_space(&cfg.out, &input)?;
    let n = match &input {
        SpaceInput::Metric(s) => s.len(),
        SpaceInput::Cloud(c) => c.len(),
        SpaceInput::Tree(t) => t.len(),
    };
    Ok(format!("wrote {} ({n} points)", cfg.out.display()))
}

fn engine_auto_lambda(engine: EngineKind, cloud_p: Option<f64>) -> Result<f64> {
    Ok(match engine {
        EngineKind::Generic => 2.0,
        EngineKind::GenericPlus => 3.0,
        EngineKind::Lp => proot(2.0, need_p(cloud_p)?),
        EngineKind::LpPlus => {
            let p = need_p(cloud_p)?;
            proot(2f64.powf(p) + 1.0, p)
        }
        EngineKind::LpPositive => proot(3.0, need_p(cloud_p)?),
        EngineKind::Ultrametric | EngineKind::Tree => 1.0,
        EngineKind::Net | EngineKind::NetPlus => {
            return Err(Error::BadParams(
                "net engines have no canonical constant; pass --lambda <value>".into(),
            ))
        }
    })
}

fn need_p(p: Option<f64>) -> Result<f64> {
    p.ok_or_else(|| Error::BadParams("lp engines need an lp cloud input".into()))
}

/// Build the provider and the calibration phi an engine run needs.
fn resolve_provider(
    engine: EngineKind,
    lambda: f64,
    input: &SpaceInput,
    space: &FiniteMetricSpace,
    net_fraction: f64,
) -> Result<(Provider, Option<PhiFunction>)> {
    let cloud = match input {
        SpaceInput::Cloud(c) => Some(c),
        _ => None,
    };
    let kind = match engine {
        EngineKind::Generic => ProviderKind::Generic,
        EngineKind::Net => ProviderKind::Net,
        EngineKind::Lp => ProviderKind::Lp,
        EngineKind::GenericPlus => ProviderKind::GenericPlus,
        EngineKind::NetPlus => ProviderKind::NetPlus,
        EngineKind::LpPlus => ProviderKind::LpPlus,
        EngineKind::LpPositive => ProviderKind::LpPositive,
        EngineKind::Ultrametric | EngineKind::Tree => {
            unreachable!("exact engines dispatch earlier")
        }
    };
    let phi = if kind == ProviderKind::NetPlus && lambda <= 2.0 {
        Some(calibration_net(space, lambda, net_fraction)?)
    } else {
        None
    };
    let spec = ProviderSpec {
        kind,
        lambda,
        p: cloud.map(|c| c.p),
        net_fraction: Some(net_fraction),
    };
    let provider = spec.resolve(cloud, phi.is_some())?;
    Ok((provider, phi))
}

fn calibration_net(
    space: &FiniteMetricSpace,
    lambda: f64,
    fraction: f64,
) -> Result<PhiFunction> {
    if fraction >= 1.0 {
        return phi_net(space, lambda);
    }
    // farthest-point subsample of the requested fraction (at least 2 points)
    let n = space.len();
    let want = ((n as f64 * fraction).ceil() as usize).clamp(2.min(n), n);
    let mut net = vec![0usize];
    while net.len() < want {
        let far = (0..n)
            .filter(|x| !net.contains(x))
            .max_by(|&a, &b| {
                space
                    .dist_to_set(a, &net)
                    .total_cmp(&space.dist_to_set(b, &net))
            });
        match far {
            Some(x) => net.push(x),
            None => break,
        }
    }
    net.sort_unstable();
    phi_net_on(space, lambda, &net)
}

/// Dense block-engine run or sparse exact-engine run, plus a text summary.
pub fn cmd_embed(cfg: &EmbedConfig) -> Result<String> {
    let input = read_space(&cfg.input)?;
    let space = input.to_space()?;

    // exact engines write the sparse form
    match cfg.engine {
        EngineKind::Ultrametric => {
            check_exact_lambda(cfg.lambda)?;
            let sparse = embed_ultrametric(&space)?;
            write_sparse(&cfg.out, &sparse)?;
            return Ok(format!(
                "wrote {} (isometric, {} sparse coordinates)",
                cfg.out.display(),
                sparse.coords.len()
            ));
        }
        EngineKind::Tree => {
            check_exact_lambda(cfg.lambda)?;
            let SpaceInput::Tree(tree) = &input else {
                return Err(Error::BadParams("tree engine needs a tree input".into()));
            };
            let sparse = embed_tree(tree)?;
            write_sparse(&cfg.out, &sparse)?;
            return Ok(format!(
                "wrote {} (isometric, {} sparse coordinates)",
                cfg.out.display(),
                sparse.coords.len()
            ));
        }
        _ => {}
    }

    let cloud_p = match &input {
        SpaceInput::Cloud(c) => Some(c.p),
        _ => None,
    };
    let lambda = match cfg.lambda {
        LambdaArg::Auto => engine_auto_lambda(cfg.engine, cloud_p)?,
        LambdaArg::Value(v) => v,
    };
    let (provider, phi) = resolve_provider(cfg.engine, lambda, &input, &space, cfg.net_fraction)?;

    let schedule = if cfg.schedule_ratio == 0.5 {
        None
    } else {
        Some(custom_schedule(&space, lambda, &provider, phi.as_ref(), cfg.schedule_ratio)?)
    };
    let mut emb = if provider.is_plus() {
        embed_c0_plus(&space, lambda, &provider, phi.as_ref(), schedule.as_ref())?
    } else {
        embed_c0(&space, lambda, &provider, schedule.as_ref())?
    };
    if cfg.target == Some(Target::C0Plus) && emb.target == Target::C0 {
        emb = pos_split(&emb);
    }
    if cfg.prune {
        emb = prune(&space, &emb);
    }
    write_embedding(&cfg.out, &emb)?;

    let mut summary = format!(
        "wrote {} (lambda = {}, dimension = {})\n",
        cfg.out.display(),
        emb.lambda,
        emb.dim()
    );
    summary.push_str(&block_table(&emb));
    Ok(summary)
}

fn check_exact_lambda(lambda: LambdaArg) -> Result<()> {
    match lambda {
        LambdaArg::Auto => Ok(()),
        LambdaArg::Value(v) => {
            if v == 1.0 {
                Ok(())
            } else {
                Err(Error::BadParams(format!(
                    "exact engines are isometric; --lambda {v} is not available (use auto or 1)"
                )))
            }
        }
    }
}

fn custom_schedule(
    space: &FiniteMetricSpace,
    lambda: f64,
    provider: &Provider,
    phi: Option<&PhiFunction>,
    ratio: f64,
) -> Result<BlockSchedule> {
    if space.len() <= 1 {
        // engines return zero columns before touching the schedule
        return BlockSchedule::geometric_from(space, 1.0, ratio);
    }
    let canonical = provider.canonical_phi();
    let phi = phi.or(canonical.as_ref());
    let eps1 = match phi {
        Some(phi) if provider.is_plus() && lambda <= 2.0 => {
            let anchor = lambda * phi.values[0];
            if anchor > 0.0 {
                2.0 * anchor
            } else {
                2.0 * space.diameter()
            }
        }
        _ => 2.0 * space.diameter(),
    };
    BlockSchedule::geometric_from(space, eps1, ratio)
}

fn block_table(emb: &Embedding) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "block  cols        eps_k");
    for b in &emb.blocks {
        let _ = writeln!(
            out,
            "{:>5}  [{:>3},{:>3})  {:.6e}",
            b.k, b.cols.0, b.cols.1, b.eps_k
        );
    }
    out
}

/// Audit an embedding file against its space file. Returns the report and
/// the process exit code (0 pass, 1 fail).
pub fn cmd_verify(
    space_path: &Path,
    emb_path: &Path,
    tol: f64,
) -> Result<(DistortionReport, i32)> {
    let space = read_space(space_path)?.to_space()?;
    let emb = read_embedding(emb_path)?;
    let report = distortion_report(&space, &emb, tol)?;
    let code = if report.pass { 0 } else { 1 };
    Ok((report, code))
}

pub fn cmd_prune(space_path: &Path, emb_path: &Path, out: &Path) -> Result<String> {
    let space = read_space(space_path)?.to_space()?;
    let emb = read_embedding(emb_path)?;
    let pruned = prune(&space, &emb);
    write_embedding(out, &pruned)?;
    Ok(format!(
        "wrote {} ({} -> {} columns)",
        out.display(),
        emb.dim(),
        pruned.dim()
    ))
}

/// Run the net engine (generic exactly at lambda = 2) across a lambda list
/// and emit CSV rows (lambda, dimension, max_ratio).
pub fn cmd_sweep(space_path: &Path, lambdas: &[f64], out: Option<&Path>) -> Result<String> {
    let space = read_space(space_path)?.to_space()?;
    let mut csv = String::from("lambda,dimension,max_ratio\n");
    for &lambda in lambdas {
        let provider = if (lambda - 2.0).abs() <= 1e-12 {
            Provider::Generic
        } else {
            Provider::Net { lambda }
        };
        let emb = embed_c0(&space, lambda, &provider, None)?;
        let report = distortion_report(&space, &emb, crate::audit::DEFAULT_TOL)?;
        if !report.pass {
            return Err(Error::BadParams(format!(
                "sweep run at lambda = {lambda} failed its own audit"
            )));
        }
        let _ = writeln!(csv, "{lambda},{},{}", emb.dim(), report.max_ratio);
    }
    if let Some(path) = out {
        std::fs::write(path, &csv)?;
    }
    Ok(csv)
}

pub fn cmd_report(emb_path: &Path) -> Result<String> {
    let emb = read_embedding(emb_path)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "target = {}, lambda = {}, points = {}, dimension = {}, sparsity = {:.3}",
        match emb.target {
            Target::C0 => "c0",
            Target::C0Plus => "c0plus",
        },
        emb.lambda,
        emb.n,
        emb.dim(),
        emb.sparsity()
    );
    out.push_str(&block_table(&emb));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_shifted_axes_counts() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("sa.json");
        let cfg = GenConfig {
            kind: SpaceKind::ShiftedAxes,
            n: 4,
            p: 2.0,
            dim: 2,
            depth: 1,
            branch: 1,
            positive: false,
            seed: 0,
            out: out.clone(),
        };
        let msg = cmd_gen(&cfg).unwrap();
        assert!(msg.contains("10 points"));
        assert!(read_space(&out).is_ok());
    }

    #[test]
    fn gen_single_point_ultra() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("u.json");
        let cfg = GenConfig {
            kind: SpaceKind::Ultra,
            n: 1,
            p: 2.0,
            dim: 2,
            depth: 1,
            branch: 1,
            positive: false,
            seed: 3,
            out,
        };
        assert!(cmd_gen(&cfg).unwrap().contains("1 points"));
    }

    #[test]
    fn embed_ultrametric_engine_rejects_non_ultrametric() {
        let dir = tempfile::tempdir().unwrap();
        let space_path = dir.path().join("space.json");
        let out = dir.path().join("emb.json");
        write_space(
            &space_path,
            &SpaceInput::Metric(crate::gen::gen_random_metric(6, 5).unwrap()),
        )
        .unwrap();
        let cfg = EmbedConfig {
            input: space_path,
            out,
            engine: EngineKind::Ultrametric,
            lambda: LambdaArg::Auto,
            target: None,
            schedule_ratio: 0.5,
            net_fraction: 1.0,
            prune: false,
        };
        assert!(matches!(cmd_embed(&cfg), Err(Error::NotUltrametric { .. })));
    }

    #[test]
    fn gen_embed_verify_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let space_path = dir.path().join("space.json");
        let emb_path = dir.path().join("emb.json");
        cmd_gen(&GenConfig {
            kind: SpaceKind::Random,
            n: 7,
            p: 2.0,
            dim: 2,
            depth: 1,
            branch: 1,
            positive: false,
            seed: 11,
            out: space_path.clone(),
        })
        .unwrap();
        cmd_embed(&EmbedConfig {
            input: space_path.clone(),
            out: emb_path.clone(),
            engine: EngineKind::Generic,
            lambda: LambdaArg::Auto,
            target: None,
            schedule_ratio: 0.5,
            net_fraction: 1.0,
            prune: true,
        })
        .unwrap();
        let (report, code) = cmd_verify(&space_path, &emb_path, 1e-9).unwrap();
        assert!(report.pass);
        assert_eq!(code, 0);
    }

    #[test]
    fn sweep_produces_csv_rows() {
        let dir = tempfile::tempdir().unwrap();
        let space_path = dir.path().join("space.json");
        cmd_gen(&GenConfig {
            kind: SpaceKind::Random,
            n: 5,
            p: 2.0,
            dim: 2,
            depth: 1,
            branch: 1,
            positive: false,
            seed: 2,
            out: space_path.clone(),
        })
        .unwrap();
        let csv = cmd_sweep(&space_path, &[1.5, 2.0], None).unwrap();
        let lines: Vec<&str> = csv.trim().lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "lambda,dimension,max_ratio");
    }
}
