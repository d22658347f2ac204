//! Telescoping block schedules and the two full embedding engines.
//!
//! The schedule enumerates the points as nested nets F_1 c F_2 c ... c M
//! with a strictly decreasing scale sequence. For any pair (x, y) the
//! capture value `sigma_k = lambda (d(x,F_k) + d(y,F_k)) + eps_k` (maxima
//! instead of sums in plus mode) decreases from above d(x,y) to at most
//! d_min, so exactly one block captures the pair, and that block's columns
//! separate it strictly. Blocks are independent and may be computed on
//! worker threads (capped by `C0FORGE_THREADS`); columns are concatenated
//! in block order, so results do not depend on the interleaving.

use super::blocks::{block_functions, block_functions_plus, BlockSpec};
use super::{BlockMeta, Embedding, Target};
use crate::cover::{PhiFunction, Provider};
use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::separator::SeparatorColumn;

/// Hard cap on the number of schedule blocks.
pub const MAX_BLOCKS: usize = 64;

/// Point ordering and scale sequence of an embedding run.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSchedule {
    /// Permutation u_1 .. u_n of the points.
    pub order: Vec<usize>,
    /// eps_1 > eps_2 > ... > eps_{K+1} > 0.
    pub eps_seq: Vec<f64>,
    /// Number of blocks K; eps_seq has K + 1 entries.
    pub blocks: usize,
}

impl BlockSchedule {
    /// Default schedule: input order, scales geometric with the given
    /// ratio anchored at eps_1 = 2 diam(M).
    pub fn geometric(space: &FiniteMetricSpace, ratio: f64) -> Result<Self> {
        Self::geometric_from(space, 2.0 * space.diameter(), ratio)
    }

    /// Geometric schedule from an explicit first scale.
    pub fn geometric_from(space: &FiniteMetricSpace, eps1: f64, ratio: f64) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "schedule ratio must lie in (0,1), got {ratio}"
            )));
        }
        if !(eps1 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "first scale must be positive, got {eps1}"
            )));
        }
        let n = space.len();
        let d_min = space.min_distance().unwrap_or(1.0);
        let mut eps_seq = vec![eps1];
        // K = first k >= n-1 with eps_{k+1} <= d_min
        let mut k = 0usize;
        loop {
            k += 1;
            let next = eps_seq[k - 1] * ratio;
            eps_seq.push(next);
            if k + 1 >= n && next <= d_min {
                break;
            }
            if k >= MAX_BLOCKS {
                return Err(Error::TooManyBlocks { needed: k + 1, cap: MAX_BLOCKS });
            }
        }
        Ok(BlockSchedule { order: (0..n).collect(), eps_seq, blocks: k })
    }

    /// Net F_k of the schedule (the whole space once k reaches n).
    pub fn net(&self, k: usize) -> Vec<usize> {
        self.order[..k.min(self.order.len())].to_vec()
    }

    fn validate(&self, space: &FiniteMetricSpace) -> Result<()> {
        let n = space.len();
        let mut sorted = self.order.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidParameter(
                "schedule order must be a permutation of the points".into(),
            ));
        }
        if self.eps_seq.len() != self.blocks + 1 {
            return Err(Error::InvalidParameter(format!(
                "schedule needs {} scales for {} blocks, got {}",
                self.blocks + 1,
                self.blocks,
                self.eps_seq.len()
            )));
        }
        if self.blocks + 1 < n {
            return Err(Error::InvalidParameter(format!(
                "schedule has {} blocks; at least {} are needed to exhaust {} points",
                self.blocks,
                n - 1,
                n
            )));
        }
        if self.blocks > MAX_BLOCKS {
            return Err(Error::TooManyBlocks { needed: self.blocks, cap: MAX_BLOCKS });
        }
        if !self
            .eps_seq
            .windows(2)
            .all(|w| w[0] > w[1] && w[1] > 0.0)
        {
            return Err(Error::InvalidParameter(
                "schedule scales must be strictly decreasing and positive".into(),
            ));
        }
        if let Some(d_min) = space.min_distance() {
            if self.eps_seq[self.blocks] > d_min {
                return Err(Error::InvalidParameter(format!(
                    "final scale {} must not exceed the minimum distance {d_min}",
                    self.eps_seq[self.blocks]
                )));
            }
        }
        Ok(())
    }
}

/// Worker parallelism: C0FORGE_THREADS if set, otherwise the machine's
/// available parallelism.
fn worker_count() -> usize {
    std::env::var("C0FORGE_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Compute all blocks, possibly on several workers, preserving block order.
fn run_blocks<F>(blocks: usize, per_block: F) -> Result<Vec<Vec<SeparatorColumn>>>
where
    F: Fn(usize) -> Result<Vec<SeparatorColumn>> + Sync,
{
    let workers = worker_count().min(blocks.max(1));
    if workers <= 1 || blocks <= 1 {
        return (1..=blocks).map(&per_block).collect();
    }
    let mut out: Vec<Option<Result<Vec<SeparatorColumn>>>> = Vec::new();
    out.resize_with(blocks, || None);
    let chunk = blocks.div_ceil(workers);
    std::thread::scope(|scope| {
        let mut rest: &mut [Option<Result<Vec<SeparatorColumn>>>] = &mut out;
        let mut start = 0usize;
        while !rest.is_empty() {
            let take = chunk.min(rest.len());
            let (head, tail) = rest.split_at_mut(take);
            let per_block = &per_block;
            let base = start;
            scope.spawn(move || {
                for (off, slot) in head.iter_mut().enumerate() {
                    *slot = Some(per_block(base + off + 1));
                }
            });
            rest = tail;
            start += take;
        }
    });
    out.into_iter().map(|r| r.expect("block computed")).collect()
}

fn assemble(
    target: Target,
    lambda: f64,
    n: usize,
    schedule: &BlockSchedule,
    per_block: Vec<Vec<SeparatorColumn>>,
) -> Embedding {
    let mut columns = Vec::new();
    let mut blocks = Vec::new();
    for (idx, cols) in per_block.into_iter().enumerate() {
        let k = idx + 1;
        let lo = columns.len();
        columns.extend(cols.into_iter().map(|c| c.values));
        blocks.push(BlockMeta {
            k,
            cols: (lo, columns.len()),
            f_k: schedule.net(k),
            eps_k: schedule.eps_seq[k - 1],
        });
    }
    Embedding { target, lambda, n, columns, blocks }
}

/// Embed into max-norm coordinates with
/// `d(x,y) < ||f(x) - f(y)|| <= lambda d(x,y)` for all distinct pairs.
pub fn embed_c0(
    space: &FiniteMetricSpace,
    lambda: f64,
    provider: &Provider,
    schedule: Option<&BlockSchedule>,
) -> Result<Embedding> {
    if lambda <= 1.0 {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    if provider.is_plus() {
        return Err(Error::ProviderMismatch(
            "embed_c0 needs a sum-mode provider".into(),
        ));
    }
    provider.check_lambda(lambda, false)?;
    let n = space.len();
    if n <= 1 {
        return Ok(Embedding::empty(Target::C0, lambda, n));
    }
    let default;
    let schedule = match schedule {
        Some(s) => {
            s.validate(space)?;
            s
        }
        None => {
            default = BlockSchedule::geometric(space, 0.5)?;
            &default
        }
    };
    let per_block = run_blocks(schedule.blocks, |k| {
        let spec = BlockSpec::new(
            schedule.net(k),
            schedule.net(k + 1),
            schedule.eps_seq[k],
            schedule.eps_seq[k - 1],
        )?;
        block_functions(space, lambda, &spec, provider)
    })?;
    Ok(assemble(Target::C0, lambda, n, schedule, per_block))
}

/// Embed into the nonnegative cone with the same two-sided guarantee.
/// A calibration phi is required when lambda <= 2 (the positive-cone lp
/// provider carries its own).
pub fn embed_c0_plus(
    space: &FiniteMetricSpace,
    lambda: f64,
    provider: &Provider,
    phi: Option<&PhiFunction>,
    schedule: Option<&BlockSchedule>,
) -> Result<Embedding> {
    if lambda <= 1.0 {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    if !provider.is_plus() {
        return Err(Error::ProviderMismatch(
            "embed_c0_plus needs a plus-mode provider".into(),
        ));
    }
    let canonical = provider.canonical_phi();
    let phi = phi.or(canonical.as_ref());
    if lambda <= 2.0 && phi.is_none() {
        return Err(Error::PhiMissing(lambda));
    }
    provider.check_lambda(lambda, phi.is_some())?;
    let n = space.len();
    if n <= 1 {
        return Ok(Embedding::empty(Target::C0Plus, lambda, n));
    }
    let default;
    let schedule = match schedule {
        Some(s) => {
            s.validate(space)?;
            s
        }
        None => {
            // For lambda <= 2 the first scale must clear lambda * phi(u_1)
            // so that the first block captures every pair.
            let eps1 = match phi {
                Some(phi) if lambda <= 2.0 => {
                    let anchor = lambda * phi.values[0];
                    if anchor > 0.0 {
                        2.0 * anchor
                    } else {
                        2.0 * space.diameter()
                    }
                }
                _ => 2.0 * space.diameter(),
            };
            default = BlockSchedule::geometric_from(space, eps1, 0.5)?;
            &default
        }
    };
    if lambda <= 2.0 {
        let phi = phi.expect("checked above");
        let u1 = schedule.order[0];
        if schedule.eps_seq[0] <= lambda * phi.values[u1] {
            return Err(Error::InvalidParameter(format!(
                "first scale {} must exceed lambda * phi(u1) = {}",
                schedule.eps_seq[0],
                lambda * phi.values[u1]
            )));
        }
    }
    let per_block = run_blocks(schedule.blocks, |k| {
        let spec = BlockSpec::new(
            schedule.net(k),
            schedule.net(k + 1),
            schedule.eps_seq[k],
            schedule.eps_seq[k - 1],
        )?;
        block_functions_plus(space, lambda, &spec, provider, phi)
    })?;
    Ok(assemble(Target::C0Plus, lambda, n, schedule, per_block))
}
