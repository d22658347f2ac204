//! The converse direction: recover a cover certificate from an existing
//! embedding by cutting off coordinates that have already decayed near the
//! ball centers and quantizing the remaining ones.

use super::{CoverFamily, CoverPair, CoverVariant, PhiFunction};
use crate::embed::{Embedding, Target};
use crate::error::{Error, Result};
use crate::metric::{Ball, FiniteMetricSpace};
use std::collections::BTreeMap;

/// Extract a plain cover family from a verified lambda_0-embedding, for any
/// lambda_0 < lambda < mu. The family certifies nu = lambda/lambda_0 (mu - eps),
/// which stays above mu.
pub fn extract_cover_from_embedding(
    space: &FiniteMetricSpace,
    emb: &Embedding,
    b1: Ball,
    b2: Ball,
    mu: f64,
    lambda: f64,
) -> Result<CoverFamily> {
    let lambda0 = emb.lambda;
    if lambda <= lambda0 {
        return Err(Error::ConstantTooTight { lambda, lambda0 });
    }
    if mu <= lambda {
        return Err(Error::MuTooSmall { mu, min: lambda });
    }
    if emb.n != space.len() {
        return Err(Error::ShapeMismatch(format!(
            "embedding has {} rows for {} points",
            emb.n,
            space.len()
        )));
    }
    let positive = emb.target == Target::C0Plus;
    let scale = if positive {
        if b1.radius != b2.radius {
            return Err(Error::UnequalRadii { r1: b1.radius, r2: b2.radius });
        }
        b1.radius
    } else {
        b1.radius + b2.radius
    };

    // Coordinate cutoff: keep columns up to the last one still large at the
    // centers; beyond it no coordinate can reach a far pair's distance.
    let (a1, a2) = (b1.center, b2.center);
    let big = (mu - lambda) * scale;
    let cutoff = emb
        .columns
        .iter()
        .enumerate()
        .rev()
        .find(|(_, col)| {
            if positive {
                col[a1].max(col[a2]) >= big
            } else {
                (col[a1] - col[a2]).abs() >= big
            }
        })
        .map_or(0, |(i, _)| i + 1);

    let eps = mu * (lambda - lambda0) / (2.0 * lambda);
    let nu = lambda / lambda0 * (mu - eps);
    let width = eps * scale / 2.0;
    let threshold = mu * scale;

    let group = |members: &[usize]| -> BTreeMap<Vec<i128>, Vec<usize>> {
        let mut groups: BTreeMap<Vec<i128>, Vec<usize>> = BTreeMap::new();
        for &x in members {
            let key: Vec<i128> = emb.columns[..cutoff]
                .iter()
                .map(|col| (col[x] / width).floor() as i128)
                .collect();
            groups.entry(key).or_default().push(x);
        }
        groups
    };
    let g1 = group(&space.ball_members(b1));
    let g2 = group(&space.ball_members(b2));

    let mut pairs = Vec::new();
    for u in g1.values() {
        for v in g2.values() {
            let far = u
                .iter()
                .any(|&x| v.iter().any(|&y| space.d(x, y) > threshold));
            if far {
                pairs.push(CoverPair { u: u.clone(), v: v.clone() });
            }
        }
    }
    Ok(CoverFamily { pairs, lambda, mu, nu, variant: CoverVariant::Plain, threshold })
}

/// Calibration function read off a positive-cone embedding:
/// phi(x) = |f(x)| / lambda_0, valid with theta_plus = (lambda_0 + lambda) / 2.
pub fn phi_from_embedding(
    space: &FiniteMetricSpace,
    emb: &Embedding,
    lambda: f64,
) -> Result<PhiFunction> {
    if emb.target != Target::C0Plus {
        return Err(Error::ProviderMismatch(
            "phi extraction needs a positive-cone embedding".into(),
        ));
    }
    let lambda0 = emb.lambda;
    if lambda <= lambda0 {
        return Err(Error::ConstantTooTight { lambda, lambda0 });
    }
    if emb.n != space.len() {
        return Err(Error::ShapeMismatch(format!(
            "embedding has {} rows for {} points",
            emb.n,
            space.len()
        )));
    }
    Ok(PhiFunction {
        values: (0..emb.n).map(|i| emb.row_norm(i) / lambda0).collect(),
        theta_plus: (lambda0 + lambda) / 2.0,
    })
}
