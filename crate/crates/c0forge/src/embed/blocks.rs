//! Block function families: finitely many lambda-Lipschitz coordinates,
//! small on the net F, that separate every pair captured between the nets
//! F and G of one schedule block.
//!
//! Sum mode covers the capture window
//! `lambda (d(x,G) + d(y,G)) + alpha <= d(x,y) < lambda (d(x,F) + d(y,F)) + beta`;
//! plus mode replaces the sums by maxima and produces nonnegative columns.
//!
//! Pipeline per block: bound the region E where captured points can live,
//! partition E by quantized distance profiles to G, enclose each class in a
//! small ball around its nearest net point, run the graded cover over class
//! pairs, and emit one scaled separator per surviving cover pair.

use super::super::cover::{graded_targeted, PhiFunction, Provider};
use crate::error::{Error, Result};
use crate::metric::{Ball, FiniteMetricSpace};
use crate::separator::{build_separator, build_separator_plus, SeparatorColumn, SeparatorSpec};
use std::collections::{BTreeMap, BTreeSet};

/// One block's inputs: nets F subset of G and the capture window (alpha, beta).
#[derive(Debug, Clone)]
pub struct BlockSpec {
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub alpha: f64,
    pub beta: f64,
}

impl BlockSpec {
    pub fn new(f: Vec<usize>, g: Vec<usize>, alpha: f64, beta: f64) -> Result<Self> {
        if f.is_empty() {
            return Err(Error::EmptySet("block net F"));
        }
        if g.is_empty() {
            return Err(Error::EmptySet("block net G"));
        }
        if !(0.0 < alpha && alpha < beta) {
            return Err(Error::InvalidParameter(format!(
                "block window needs 0 < alpha < beta, got alpha = {alpha}, beta = {beta}"
            )));
        }
        if !f.iter().all(|x| g.contains(x)) {
            return Err(Error::InvalidParameter("block net F must be a subset of G".into()));
        }
        Ok(BlockSpec { f, g, alpha, beta })
    }
}

/// Profile classes of E: points whose distances to every anchor agree
/// within the quantization width, each enclosed in a ball around its
/// nearest net point.
struct ProfileClass {
    members: Vec<usize>,
    anchor: usize,
    radius: f64,
}

fn profile_classes(
    space: &FiniteMetricSpace,
    region: &[usize],
    anchors: &[usize],
    width: f64,
) -> Vec<ProfileClass> {
    let mut groups: BTreeMap<Vec<i128>, Vec<usize>> = BTreeMap::new();
    for &x in region {
        let key: Vec<i128> = anchors
            .iter()
            .map(|&z| (space.d(x, z) / width).floor() as i128)
            .collect();
        groups.entry(key).or_default().push(x);
    }
    groups
        .into_values()
        .map(|members| {
            // nearest net point over the whole class, lowest index on ties
            let mut best = (f64::INFINITY, usize::MAX);
            for &z in anchors {
                let r = members
                    .iter()
                    .map(|&x| space.d(x, z))
                    .fold(f64::INFINITY, f64::min);
                if r < best.0 {
                    best = (r, z);
                }
            }
            ProfileClass { members, anchor: best.1, radius: best.0 }
        })
        .collect()
}

fn dedup_columns(cols: Vec<SeparatorColumn>) -> Vec<SeparatorColumn> {
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    cols.into_iter()
        .filter(|col| seen.insert(col.values.iter().map(|v| v.to_bits()).collect()))
        .collect()
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

/// Sum-mode block functions: lambda-Lipschitz columns, |f| <= lambda beta
/// on F, separating every captured pair by more than its distance.
pub fn block_functions(
    space: &FiniteMetricSpace,
    lambda: f64,
    block: &BlockSpec,
    provider: &Provider,
) -> Result<Vec<SeparatorColumn>> {
    if lambda <= 1.0 {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    if provider.is_plus() {
        return Err(Error::ProviderMismatch(
            "sum-mode block functions need a sum-mode provider".into(),
        ));
    }
    provider.check_lambda(lambda, false)?;

    let captured = captured_pairs(space, block, lambda);
    if captured.is_empty() {
        return Ok(Vec::new());
    }
    let r_diam = space.diameter_of(&block.g);
    if r_diam == 0.0 {
        // single-point G: the capture window is provably empty
        return Ok(Vec::new());
    }
    let mu = lambda + (lambda - 1.0) * block.alpha / (2.0 * r_diam);
    let eps = block.alpha / (8.0 * mu);
    let reach = r_diam / (lambda - 1.0);
    let region: Vec<usize> = (0..space.len())
        .filter(|&x| space.dist_to_set(x, &block.g) < reach)
        .collect();
    let classes = profile_classes(space, &region, &block.g, eps);

    let mut cols = Vec::new();
    for ((j, k), focus) in class_pair_focus(space.len(), &classes, &captured) {
        let (cj, ck) = (&classes[j], &classes[k]);
        let b1 = Ball::new(cj.anchor, cj.radius + eps);
        let b2 = Ball::new(ck.anchor, ck.radius + eps);
        let fam = graded_targeted(space, b1, b2, mu, provider, &focus)?;
        for pair in &fam.pairs {
            let u = intersect(&pair.u, &cj.members);
            let v = intersect(&pair.v, &ck.members);
            if u.is_empty() || v.is_empty() {
                continue;
            }
            let spec = SeparatorSpec::new(u, v, block.f.clone(), block.beta)?;
            cols.push(build_separator(space, &spec)?.scaled(lambda));
        }
    }
    Ok(dedup_columns(cols))
}

/// Captured pairs grouped by unordered class pair and oriented so the
/// first point sits on the first ball's side (columns are symmetric in
/// the two sides, so one orientation per unordered pair suffices).
fn class_pair_focus(
    n: usize,
    classes: &[ProfileClass],
    captured: &[(usize, usize)],
) -> BTreeMap<(usize, usize), Vec<(usize, usize)>> {
    let mut class_of = vec![usize::MAX; n];
    for (ci, c) in classes.iter().enumerate() {
        for &x in &c.members {
            class_of[x] = ci;
        }
    }
    let mut grouped: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for &(x, y) in captured {
        let (a, b) = (class_of[x], class_of[y]);
        debug_assert!(a != usize::MAX && b != usize::MAX, "captured point outside E");
        if a == usize::MAX || b == usize::MAX {
            continue;
        }
        let (key, oriented) = if a <= b { ((a, b), (x, y)) } else { ((b, a), (y, x)) };
        grouped.entry(key).or_default().push(oriented);
    }
    grouped
}

/// Plus-mode block functions: nonnegative columns for the max-scaled
/// capture window. A calibration phi is required when lambda <= 2.
pub fn block_functions_plus(
    space: &FiniteMetricSpace,
    lambda: f64,
    block: &BlockSpec,
    provider: &Provider,
    phi: Option<&PhiFunction>,
) -> Result<Vec<SeparatorColumn>> {
    if lambda <= 1.0 {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    if !provider.is_plus() {
        return Err(Error::ProviderMismatch(
            "plus-mode block functions need a plus-mode provider".into(),
        ));
    }
    provider.check_lambda(lambda, phi.is_some())?;

    // Bound the diameter of the capture window.
    let diam_bound = if lambda > 2.0 {
        let r_diam = space.diameter_of(&block.g);
        lambda * r_diam / (lambda - 2.0)
    } else {
        let phi = phi.ok_or(Error::PhiMissing(lambda))?;
        let theta = phi.theta_plus;
        if theta >= lambda {
            return Err(Error::ThetaInfeasible { theta_min: theta, lambda });
        }
        let k0 = block
            .g
            .iter()
            .map(|&z| phi.values[z])
            .fold(0.0, f64::max);
        lambda * theta * k0 / (lambda - theta)
    };
    if diam_bound == 0.0 {
        return Ok(Vec::new());
    }
    let captured = captured_pairs_plus(space, block, lambda);
    if captured.is_empty() {
        return Ok(Vec::new());
    }
    let mu = lambda + block.alpha * lambda / (2.0 * diam_bound);
    // Half of min(alpha/(2 mu), (lambda-1) beta / lambda): both the capture
    // margin (mu eps < alpha/2) and the F-distance margin must survive.
    let eps = 0.5 * (block.alpha / (2.0 * mu)).min((lambda - 1.0) * block.beta / lambda);
    let reach = diam_bound / lambda;
    let region: Vec<usize> = (0..space.len())
        .filter(|&x| space.dist_to_set(x, &block.g) <= reach)
        .collect();
    let classes = profile_classes(space, &region, &block.g, eps);

    let mut cols = Vec::new();
    for ((j, k), focus) in class_pair_focus(space.len(), &classes, &captured) {
        let (cj, ck) = (&classes[j], &classes[k]);
        let radius = cj.radius.max(ck.radius) + eps;
        let b1 = Ball::new(cj.anchor, radius);
        let b2 = Ball::new(ck.anchor, radius);
        let fam = graded_targeted(space, b1, b2, mu, provider, &focus)?;
        for pair in &fam.pairs {
            let u = intersect(&pair.u, &cj.members);
            let v = intersect(&pair.v, &ck.members);
            if u.is_empty() || v.is_empty() {
                continue;
            }
            let spec = SeparatorSpec::new(u, v, block.f.clone(), block.beta)?;
            cols.push(build_separator_plus(space, &spec)?.scaled(lambda));
        }
    }
    Ok(dedup_columns(cols))
}

/// The sum-mode capture window: pairs with
/// lambda (d(x,G) + d(y,G)) + alpha <= d < lambda (d(x,F) + d(y,F)) + beta.
/// Test oracle for the block post-condition.
pub fn captured_pairs(
    space: &FiniteMetricSpace,
    block: &BlockSpec,
    lambda: f64,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..space.len() {
        for y in 0..space.len() {
            if x == y {
                continue;
            }
            let d = space.d(x, y);
            let lower =
                lambda * (space.dist_to_set(x, &block.g) + space.dist_to_set(y, &block.g))
                    + block.alpha;
            let upper =
                lambda * (space.dist_to_set(x, &block.f) + space.dist_to_set(y, &block.f))
                    + block.beta;
            if lower <= d && d < upper {
                out.push((x, y));
            }
        }
    }
    out
}

/// Plus-mode capture window with maxima in place of sums.
pub fn captured_pairs_plus(
    space: &FiniteMetricSpace,
    block: &BlockSpec,
    lambda: f64,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..space.len() {
        for y in 0..space.len() {
            if x == y {
                continue;
            }
            let d = space.d(x, y);
            let lower = lambda
                * space
                    .dist_to_set(x, &block.g)
                    .max(space.dist_to_set(y, &block.g))
                + block.alpha;
            let upper = lambda
                * space
                    .dist_to_set(x, &block.f)
                    .max(space.dist_to_set(y, &block.f))
                + block.beta;
            if lower <= d && d < upper {
                out.push((x, y));
            }
        }
    }
    out
}
