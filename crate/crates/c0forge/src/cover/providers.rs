//! The concrete cover providers.
//!
//! Sum-mode providers cover pairs with d(x,y) > mu (r1 + r2); plus-mode
//! providers require equal radii and cover d(x,y) > mu r. Each returns an
//! empty family when no pair exceeds its threshold.

use super::{CoverFamily, CoverPair, CoverVariant};
use crate::cloud::LpPointCloud;
use crate::error::{Error, Result};
use crate::metric::{Ball, FiniteMetricSpace};
use std::collections::BTreeMap;

/// Epsilon searches halve from their start value down to this times scale
/// (2^-40).
const EPS_FLOOR_FACTOR: f64 = 1.0 / 1099511627776.0;

fn check_equal_radii(b1: Ball, b2: Ball) -> Result<f64> {
    if b1.radius != b2.radius {
        return Err(Error::UnequalRadii { r1: b1.radius, r2: b2.radius });
    }
    Ok(b1.radius)
}

/// Far pairs across the two member sets.
fn far_pairs(
    space: &FiniteMetricSpace,
    m1: &[usize],
    m2: &[usize],
    threshold: f64,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &x in m1 {
        for &y in m2 {
            if space.d(x, y) > threshold {
                out.push((x, y));
            }
        }
    }
    out
}

/// Universal single-pair cover at constant 2: U collects the points of B1
/// that see some far partner in B2, V symmetrically, and nu = 2 mu - 2.
pub fn generic_cover(
    space: &FiniteMetricSpace,
    b1: Ball,
    b2: Ball,
    mu: f64,
) -> Result<CoverFamily> {
    if mu <= 2.0 {
        return Err(Error::MuTooSmall { mu, min: 2.0 });
    }
    let scale = b1.radius + b2.radius;
    let threshold = mu * scale;
    one_sided_pair(space, b1, b2, threshold, 2.0, mu, 2.0 * mu - 2.0)
}

/// Plus-mode analogue at constant 3 with nu = 3 mu - 6.
pub fn generic_cover_plus(
    space: &FiniteMetricSpace,
    b1: Ball,
    b2: Ball,
    mu: f64,
) -> Result<CoverFamily> {
    if mu <= 3.0 {
        return Err(Error::MuTooSmall { mu, min: 3.0 });
    }
    let r = check_equal_radii(b1, b2)?;
    let threshold = mu * r;
    one_sided_pair(space, b1, b2, threshold, 3.0, mu, 3.0 * mu - 6.0)
}

fn one_sided_pair(
    space: &FiniteMetricSpace,
    b1: Ball,
    b2: Ball,
    threshold: f64,
    lambda: f64,
    mu: f64,
    nu: f64,
) -> Result<CoverFamily> {
    let m1 = space.ball_members(b1);
    let m2 = space.ball_members(b2);
    let u: Vec<usize> = m1
        .iter()
        .copied()
        .filter(|&x| m2.iter().any(|&y| space.d(x, y) > threshold))
        .collect();
    let v: Vec<usize> = m2
        .iter()
        .copied()
        .filter(|&y| m1.iter().any(|&x| space.d(x, y) > threshold))
        .collect();
    let pairs = if u.is_empty() || v.is_empty() {
        Vec::new()
    } else {
        vec![CoverPair { u, v }]
    };
    Ok(CoverFamily { pairs, lambda, mu, nu, variant: CoverVariant::Plain, threshold })
}

/// Net cover at any lambda > 1: greedily pick representative far pairs and
/// surround them with eps-balls small enough that
/// lambda * gap >= nu * scale survives the 2 eps loss.
pub fn net_cover(
    space: &FiniteMetricSpace,
    b1: Ball,
    b2: Ball,
    mu: f64,
    lambda: f64,
) -> Result<CoverFamily> {
    if lambda <= 1.0 {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    if mu <= lambda {
        return Err(Error::MuTooSmall { mu, min: lambda });
    }
    let scale = b1.radius + b2.radius;
    net_family(space, b1, b2, mu, lambda, scale)
}

/// Plus-mode net cover (equal radii). Admissible for every lambda > 1 on
/// finite spaces; the calibration side of the story lives with the caller.
pub fn net_cover_plus(
    space: &FiniteMetricSpace,
    b1: Ball,
    b2: Ball,
    mu: f64,
    lambda: f64,
) -> Result<CoverFamily> {
    if lambda <= 1.0 {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    if mu <= lambda {
        return Err(Error::MuTooSmall { mu, min: lambda });
    }
    let r = check_equal_radii(b1, b2)?;
    net_family(space, b1, b2, mu, lambda, r)
}

fn net_family(
    space: &FiniteMetricSpace,
    b1: Ball,
    b2: Ball,
    mu: f64,
    lambda: f64,
    scale: f64,
) -> Result<CoverFamily> {
    let nu = (mu + lambda * mu) / 2.0;
    // strict requirement is eps < (2 lambda)^-1 (lambda mu - nu) scale
    let eps = (lambda * mu - nu) * scale / (4.0 * lambda);
    let threshold = mu * scale;
    let m1 = space.ball_members(b1);
    let m2 = space.ball_members(b2);
    let delta = far_pairs(space, &m1, &m2, threshold);
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for &(x, y) in &delta {
        let covered = reps
            .iter()
            .any(|&(xr, yr)| space.d(x, xr) <= eps && space.d(y, yr) <= eps);
        if !covered {
            reps.push((x, y));
        }
    }
    let pairs = reps
        .iter()
        .map(|&(xr, yr)| CoverPair {
            u: m1.iter().copied().filter(|&x| space.d(x, xr) <= eps).collect(),
            v: m2.iter().copied().filter(|&y| space.d(y, yr) <= eps).collect(),
        })
        .collect();
    Ok(CoverFamily { pairs, lambda, mu, nu, variant: CoverVariant::Plain, threshold })
}

/// Shared grid partition: group cloud points by cells of per-axis width
/// eps / (2 dim^(1/p)), which bounds the l_p cell diameter by eps / 2.
fn grid_groups(
    cloud: &LpPointCloud,
    members: &[usize],
    eps: f64,
) -> BTreeMap<Vec<i128>, Vec<usize>> {
    let width = eps / (2.0 * (cloud.dim.max(1) as f64).powf(1.0 / cloud.p));
    let mut groups: BTreeMap<Vec<i128>, Vec<usize>> = BTreeMap::new();
    for &i in members {
        let key: Vec<i128> = cloud.points[i]
            .iter()
            .map(|c| (c / width).floor() as i128)
            .collect();
        groups.entry(key).or_default().push(i);
    }
    groups
}

fn cloud_members(cloud: &LpPointCloud, ball: Ball) -> Vec<usize> {
    (0..cloud.len())
        .filter(|&i| cloud.dist(i, ball.center) <= ball.radius)
        .collect()
}

fn grid_family(
    cloud: &LpPointCloud,
    b1: Ball,
    b2: Ball,
    threshold: f64,
    eps: f64,
    lambda: f64,
    mu: f64,
    nu: f64,
) -> CoverFamily {
    let g1 = grid_groups(cloud, &cloud_members(cloud, b1), eps);
    let g2 = grid_groups(cloud, &cloud_members(cloud, b2), eps);
    let mut pairs = Vec::new();
    for u in g1.values() {
        for v in g2.values() {
            let far = u
                .iter()
                .any(|&x| v.iter().any(|&y| cloud.dist(x, y) > threshold));
            if far {
                pairs.push(CoverPair { u: u.clone(), v: v.clone() });
            }
        }
    }
    CoverFamily { pairs, lambda, mu, nu, variant: CoverVariant::Plain, threshold }
}

/// Halve eps from `start` until `ok` holds strictly; fail below the floor.
fn search_eps(start: f64, scale: f64, ok: impl Fn(f64) -> bool) -> Result<f64> {
    let floor = EPS_FLOOR_FACTOR * scale;
    let mut eps = start;
    while eps >= floor {
        if ok(eps) {
            return Ok(eps);
        }
        eps /= 2.0;
    }
    Err(Error::EpsilonSearchFailed { floor })
}

/// l_p cover at constant 2^(1/p): partition the coordinate projection into
/// cells of l_p diameter < eps and keep cell pairs containing a far pair.
pub fn lp_cover(cloud: &LpPointCloud, b1: Ball, b2: Ball, mu: f64) -> Result<CoverFamily> {
    let p = cloud.p;
    let lambda = 2f64.powf(1.0 / p);
    if mu <= lambda {
        return Err(Error::MuTooSmall { mu, min: lambda });
    }
    let scale = b1.radius + b2.radius;
    let nu = (mu + lambda * (mu.powf(p) - 1.0).powf(1.0 / p)) / 2.0;
    let eps = search_eps(scale / 4.0, scale, |e| {
        let inner = mu.powf(p) * scale.powf(p) - (scale + 2.0 * e).powf(p);
        inner > 0.0 && lambda * inner.powf(1.0 / p) - 2f64.powf(1.0 + 1.0 / p) * e > nu * scale
    })?;
    Ok(grid_family(cloud, b1, b2, mu * scale, eps, lambda, mu, nu))
}

/// l_p plus-mode cover at constant (2^p + 1)^(1/p); the coordinate tail
/// across equal-radius balls is bounded by 2 (r + eps).
pub fn lp_cover_plus(cloud: &LpPointCloud, b1: Ball, b2: Ball, mu: f64) -> Result<CoverFamily> {
    let p = cloud.p;
    let lambda = (2f64.powf(p) + 1.0).powf(1.0 / p);
    if mu <= lambda {
        return Err(Error::MuTooSmall { mu, min: lambda });
    }
    let r = check_equal_radii(b1, b2)?;
    let nu = (mu + lambda * (mu.powf(p) - 2f64.powf(p)).powf(1.0 / p)) / 2.0;
    let eps = search_eps(r / 4.0, r, |e| {
        let inner = mu.powf(p) * r.powf(p) - 2f64.powf(p) * (r + e).powf(p);
        inner > 0.0 && lambda * inner.powf(1.0 / p) - 2.0 * e * lambda > nu * r
    })?;
    Ok(grid_family(cloud, b1, b2, mu * r, eps, lambda, mu, nu))
}

/// Positive-cone l_p cover at constant 3^(1/p): inside the cone the tail
/// bound improves to |Qx - Qy|^p <= 2 (r + eps)^p.
pub fn lp_positive_cover(
    cloud: &LpPointCloud,
    b1: Ball,
    b2: Ball,
    mu: f64,
) -> Result<CoverFamily> {
    if !cloud.positive {
        return Err(Error::NotPositiveCone);
    }
    let p = cloud.p;
    let lambda = 3f64.powf(1.0 / p);
    if mu <= lambda {
        return Err(Error::MuTooSmall { mu, min: lambda });
    }
    let r = check_equal_radii(b1, b2)?;
    let nu = (mu + lambda * (mu.powf(p) - 2.0).powf(1.0 / p)) / 2.0;
    let eps = search_eps(r / 4.0, r, |e| {
        let inner = mu.powf(p) * r.powf(p) - 2.0 * (r + e).powf(p);
        inner > 0.0 && lambda * inner.powf(1.0 / p) - 2.0 * e * lambda > nu * r
    })?;
    Ok(grid_family(cloud, b1, b2, mu * r, eps, lambda, mu, nu))
}
