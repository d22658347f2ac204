//! Scale gradation: turn a provider's per-ball separation bound into a
//! per-pair bound.
//!
//! The base provider certifies `lambda * gap(U, V) >= nu' * scale` at every
//! radius. Inflating both balls by powers of `1 + eps` (with
//! `(1 + eps) nu = nu'`) and covering each inflated pair puts every far
//! point pair (x, y) on the scale k where its distance sits between
//! consecutive thresholds, which yields
//! `lambda * mu * gap(U, V) >= nu * d(x, y)`.
//!
//! Only scales hit by a pair that must be covered are materialized, and
//! from each scale only the set pairs witnessing such a point pair are
//! kept; the dropped pairs would never be consulted.

use super::{CoverFamily, CoverPair, CoverVariant, Provider};
use crate::error::{Error, Result};
use crate::metric::{Ball, FiniteMetricSpace};
use std::collections::{BTreeMap, BTreeSet};

/// Graded cover in sum mode (threshold mu (r1 + r2)).
pub fn graded_cover(
    space: &FiniteMetricSpace,
    b1: Ball,
    b2: Ball,
    mu: f64,
    base: &Provider,
) -> Result<CoverFamily> {
    if base.is_plus() {
        return Err(Error::ProviderMismatch(
            "graded_cover needs a sum-mode provider".into(),
        ));
    }
    graded_family(space, b1, b2, mu, base, None)
}

/// Graded cover in plus mode (equal radii, threshold mu r).
pub fn graded_cover_plus(
    space: &FiniteMetricSpace,
    b1: Ball,
    b2: Ball,
    mu: f64,
    base: &Provider,
) -> Result<CoverFamily> {
    if !base.is_plus() {
        return Err(Error::ProviderMismatch(
            "graded_cover_plus needs a plus-mode provider".into(),
        ));
    }
    if b1.radius != b2.radius {
        return Err(Error::UnequalRadii { r1: b1.radius, r2: b2.radius });
    }
    graded_family(space, b1, b2, mu, base, None)
}

/// As the public entry points, but covering only the given point pairs
/// (the block pipeline knows exactly which pairs it must separate).
pub(crate) fn graded_targeted(
    space: &FiniteMetricSpace,
    b1: Ball,
    b2: Ball,
    mu: f64,
    base: &Provider,
    focus: &[(usize, usize)],
) -> Result<CoverFamily> {
    graded_family(space, b1, b2, mu, base, Some(focus))
}

fn graded_family(
    space: &FiniteMetricSpace,
    b1: Ball,
    b2: Ball,
    mu: f64,
    base: &Provider,
    focus: Option<&[(usize, usize)]>,
) -> Result<CoverFamily> {
    let lambda = base.lambda();
    let nu_base = base.nu(mu)?;
    let nu = (mu + nu_base) / 2.0;
    let eps = nu_base / nu - 1.0;
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(
            "graded inflation step underflowed; mu is too close to lambda".into(),
        ));
    }
    let plus = base.is_plus();
    // mirror the base provider's own threshold arithmetic at scale k; the
    // index can be astronomically large when eps is tiny, so it is a u64
    // and only ever enters arithmetic through f64
    let threshold_at = |k: u64| -> f64 {
        let f = (k as f64 * eps.ln_1p()).exp();
        if plus {
            mu * (b1.radius * f)
        } else {
            mu * (b1.radius * f + b2.radius * f)
        }
    };
    let threshold = threshold_at(0);

    // the pairs that must end up covered, bucketed by their scale index
    let mut buckets: BTreeMap<u64, Vec<(usize, usize)>> = BTreeMap::new();
    let mut insert = |x: usize, y: usize| {
        let d = space.d(x, y);
        if d > threshold {
            buckets
                .entry(scale_index(d, threshold_at, eps, threshold))
                .or_default()
                .push((x, y));
        }
    };
    match focus {
        Some(pairs) => {
            for &(x, y) in pairs {
                insert(x, y);
            }
        }
        None => {
            for &x in &space.ball_members(b1) {
                for &y in &space.ball_members(b2) {
                    insert(x, y);
                }
            }
        }
    }

    let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    let mut pairs: Vec<CoverPair> = Vec::new();
    for (&k, bucket) in &buckets {
        let f = (k as f64 * eps.ln_1p()).exp();
        let fam = base.cover(space, b1.scaled(f), b2.scaled(f), mu)?;
        let mut marked = vec![false; fam.pairs.len()];
        for &(x, y) in bucket {
            let hit = fam
                .pairs
                .iter()
                .position(|p| p.u.contains(&x) && p.v.contains(&y));
            match hit {
                Some(i) => marked[i] = true,
                None => debug_assert!(false, "base cover misses pair ({x},{y}) at scale {k}"),
            }
        }
        for (pair, marked) in fam.pairs.into_iter().zip(marked) {
            if marked && seen.insert((pair.u.clone(), pair.v.clone())) {
                pairs.push(pair);
            }
        }
    }
    Ok(CoverFamily { pairs, lambda, mu, nu, variant: CoverVariant::Graded, threshold })
}

/// The unique k with threshold_at(k) < d <= threshold_at(k + 1), computed
/// by logarithm and then nudged to absorb rounding.
fn scale_index(d: f64, threshold_at: impl Fn(u64) -> f64, eps: f64, t0: f64) -> u64 {
    let guess = ((d / t0).ln() / eps.ln_1p()).floor();
    let mut k = if guess.is_finite() && guess > 0.0 { guess as u64 } else { 0 };
    while k > 0 && threshold_at(k) >= d {
        k -= 1;
    }
    while threshold_at(k + 1) < d {
        k += 1;
    }
    k
}
