//! Exhaustive cover-contract audit. This is the oracle every provider is
//! tested against: it replays the definitions directly, point pair by
//! point pair.

use super::{CoverFamily, CoverVariant};
use crate::metric::{set_gap, Ball, FiniteMetricSpace};

/// Outcome of a cover audit.
#[derive(Debug, Clone)]
pub struct CoverReport {
    pub pass: bool,
    /// First violation, if any.
    pub violation: Option<String>,
    /// Number of far point pairs checked for coverage.
    pub delta_size: usize,
    /// Number of set pairs in the family.
    pub family_size: usize,
    /// Smallest slack across all separation inequalities (infinite when
    /// nothing applied).
    pub worst_margin: f64,
}

impl CoverReport {
    fn fail(violation: String, delta_size: usize, family_size: usize) -> Self {
        CoverReport { pass: false, violation: Some(violation), delta_size, family_size, worst_margin: f64::NEG_INFINITY }
    }
}

/// Check coverage of every far pair and the family's separation contract
/// (plain or graded). Returns the first violation or worst margins.
pub fn verify_cover(
    space: &FiniteMetricSpace,
    b1: Ball,
    b2: Ball,
    family: &CoverFamily,
) -> CoverReport {
    let m1 = space.ball_members(b1);
    let m2 = space.ball_members(b2);
    let mut delta = Vec::new();
    for &x in &m1 {
        for &y in &m2 {
            if space.d(x, y) > family.threshold {
                delta.push((x, y));
            }
        }
    }
    let nf = family.pairs.len();

    for (j, pair) in family.pairs.iter().enumerate() {
        if pair.u.is_empty() || pair.v.is_empty() {
            return CoverReport::fail(format!("pair {j} has an empty side"), delta.len(), nf);
        }
    }
    let gaps: Vec<f64> = family
        .pairs
        .iter()
        .map(|pair| set_gap(space, &pair.u, &pair.v).expect("pairs are nonempty"))
        .collect();

    let mut worst = f64::INFINITY;
    match family.variant {
        CoverVariant::Plain => {
            let scale = family.scale();
            for (j, &gap) in gaps.iter().enumerate() {
                let margin = family.lambda * gap - family.nu * scale;
                if margin < 0.0 {
                    return CoverReport::fail(
                        format!(
                            "pair {j}: lambda*gap = {} < nu*scale = {}",
                            family.lambda * gap,
                            family.nu * scale
                        ),
                        delta.len(),
                        nf,
                    );
                }
                worst = worst.min(margin);
            }
            for &(x, y) in &delta {
                let covered = family
                    .pairs
                    .iter()
                    .any(|p| p.u.contains(&x) && p.v.contains(&y));
                if !covered {
                    return CoverReport::fail(
                        format!("far pair ({x},{y}) at distance {} is uncovered", space.d(x, y)),
                        delta.len(),
                        nf,
                    );
                }
            }
        }
        CoverVariant::Graded => {
            for &(x, y) in &delta {
                let d = space.d(x, y);
                let mut best = f64::NEG_INFINITY;
                for (j, pair) in family.pairs.iter().enumerate() {
                    if pair.u.contains(&x) && pair.v.contains(&y) {
                        best = best.max(family.lambda * family.mu * gaps[j] - family.nu * d);
                    }
                }
                if best == f64::NEG_INFINITY {
                    return CoverReport::fail(
                        format!("far pair ({x},{y}) at distance {d} is uncovered"),
                        delta.len(),
                        nf,
                    );
                }
                if best < 0.0 {
                    return CoverReport::fail(
                        format!("far pair ({x},{y}): no containing pair satisfies lambda*mu*gap >= nu*d"),
                        delta.len(),
                        nf,
                    );
                }
                worst = worst.min(best);
            }
        }
    }
    CoverReport { pass: true, violation: None, delta_size: delta.len(), family_size: nf, worst_margin: worst }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{generic_cover, CoverPair};
    use crate::metric::validate_metric;

    fn line(points: &[f64]) -> FiniteMetricSpace {
        let m = points
            .iter()
            .map(|&a| points.iter().map(|&b| (a - b).abs()).collect())
            .collect();
        validate_metric(m).unwrap()
    }

    #[test]
    fn empty_family_with_empty_delta_passes() {
        let space = line(&[0.0, 1.0]);
        let fam = generic_cover(&space, Ball::new(0, 1.0), Ball::new(1, 1.0), 2.5).unwrap();
        assert!(fam.pairs.is_empty());
        let report = verify_cover(&space, Ball::new(0, 1.0), Ball::new(1, 1.0), &fam);
        assert!(report.pass);
        assert_eq!(report.delta_size, 0);
    }

    #[test]
    fn constructed_violation_is_named() {
        // halve the gap artificially by injecting a pair containing both
        // near points: gap collapses to 1 and the inequality fails.
        let space = line(&[0.0, 1.0, 10.0, 11.0]);
        let b1 = Ball::new(0, 1.0);
        let b2 = Ball::new(3, 1.0);
        let mut fam = generic_cover(&space, b1, b2, 2.5).unwrap();
        fam.pairs.push(CoverPair { u: vec![0, 1], v: vec![1, 2, 3] });
        let report = verify_cover(&space, b1, b2, &fam);
        assert!(!report.pass);
        assert!(report.violation.unwrap().contains("pair 1"));
    }

    #[test]
    fn uncovered_far_pair_is_named() {
        let space = line(&[0.0, 1.0, 10.0, 11.0]);
        let b1 = Ball::new(0, 1.0);
        let b2 = Ball::new(3, 1.0);
        let mut fam = generic_cover(&space, b1, b2, 2.5).unwrap();
        fam.pairs[0].u.retain(|&x| x != 0);
        let report = verify_cover(&space, b1, b2, &fam);
        assert!(!report.pass);
        assert!(report.violation.unwrap().contains("uncovered"));
    }
}
