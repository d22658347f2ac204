//! Separator functions: the 1-Lipschitz coordinates every embedding is
//! assembled from.
//!
//! Given nonempty sets A, B, C and a slack eps > 0, [`build_separator`]
//! produces a signed function that is constant on A and on B with gap
//! exactly `theta = min(gap(A,B), gap(A,C) + gap(B,C) + 2 eps)` and stays
//! within eps of zero on C. The construction augments the metric with a
//! virtual zero point at distance `d(x,C) + eps`, assigns anchor values on
//! A, B and the zero point, and extends by the inf-convolution
//! `f(x) = min_z (g(z) + d*(x,z))`, which keeps anchor values exactly and
//! is automatically 1-Lipschitz.
//!
//! [`build_separator_plus`] is the nonnegative variant with the explicit
//! formula `f(x) = max(theta - d(x, A), 0)` after orienting A and B so that
//! the side closer to C becomes the truncated one; its gap is
//! `theta = min(gap(A,B), max(gap(A,C), gap(B,C)) + eps)`.

use crate::error::{Error, Result};
use crate::metric::{set_gap, FiniteMetricSpace};

/// Inputs of a separator build: three nonempty sets and a positive slack.
#[derive(Debug, Clone)]
pub struct SeparatorSpec {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub eps: f64,
}

impl SeparatorSpec {
    pub fn new(a: Vec<usize>, b: Vec<usize>, c: Vec<usize>, eps: f64) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptySet("separator set A"));
        }
        if b.is_empty() {
            return Err(Error::EmptySet("separator set B"));
        }
        if c.is_empty() {
            return Err(Error::EmptySet("separator set C"));
        }
        if !(eps > 0.0) {
            return Err(Error::InvalidParameter(format!("separator eps = {eps} must be > 0")));
        }
        Ok(SeparatorSpec { a, b, c, eps })
    }
}

/// One real-valued coordinate with its recorded certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatorColumn {
    /// f(x) per point.
    pub values: Vec<f64>,
    /// Claimed Lipschitz bound (1 for raw builders, lambda after scaling).
    pub lip_bound: f64,
    /// Achieved |f(a) - f(b)| gap between A and B.
    pub gap: f64,
    /// Bound on |f| over C.
    pub small_bound: f64,
    pub nonnegative: bool,
}

impl SeparatorColumn {
    /// A gap-0 column separates nothing; callers typically drop it.
    pub fn is_degenerate(&self) -> bool {
        self.gap == 0.0
    }

    /// Scale values and certificates by a positive factor.
    pub fn scaled(&self, factor: f64) -> SeparatorColumn {
        SeparatorColumn {
            values: self.values.iter().map(|v| v * factor).collect(),
            lip_bound: self.lip_bound * factor,
            gap: self.gap * factor,
            small_bound: self.small_bound * factor,
            nonnegative: self.nonnegative,
        }
    }

    /// Exhaustive Lipschitz constant of the stored values.
    pub fn measured_lip(&self, space: &FiniteMetricSpace) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..space.len() {
            for j in (i + 1)..space.len() {
                worst = worst.max((self.values[i] - self.values[j]).abs() / space.d(i, j));
            }
        }
        worst
    }
}

/// The augmented metric on M plus a virtual zero point (index n):
/// d*(x,y) = min(d(x,y), d(x,C) + d(y,C) + 2 eps), d*(x,0) = d(x,C) + eps.
pub fn augmented_metric(space: &FiniteMetricSpace, c: &[usize], eps: f64) -> Vec<Vec<f64>> {
    let n = space.len();
    let dc: Vec<f64> = (0..n).map(|x| space.dist_to_set(x, c)).collect();
    let mut m = vec![vec![0.0f64; n + 1]; n + 1];
    for x in 0..n {
        for y in 0..n {
            m[x][y] = space.d(x, y).min(dc[x] + dc[y] + 2.0 * eps);
        }
        m[x][n] = dc[x] + eps;
        m[n][x] = dc[x] + eps;
    }
    m
}

/// Signed separator via anchor assignment and inf-extension in the
/// augmented metric. On A the value is exactly `t = min(theta, gap(A,C) + eps)`,
/// on B exactly `t - theta`.
pub fn build_separator(space: &FiniteMetricSpace, spec: &SeparatorSpec) -> Result<SeparatorColumn> {
    let gap_ab = set_gap(space, &spec.a, &spec.b)?;
    let gap_ac = set_gap(space, &spec.a, &spec.c)?;
    let gap_bc = set_gap(space, &spec.b, &spec.c)?;
    let eps = spec.eps;
    let theta = gap_ab.min(gap_ac + gap_bc + 2.0 * eps);
    let t = theta.min(gap_ac + eps);
    let s = t - theta;

    let dstar = augmented_metric(space, &spec.c, eps);
    let n = space.len();
    // anchors: (index in M*, value); the virtual zero sits at index n
    let mut anchors: Vec<(usize, f64)> = Vec::with_capacity(spec.a.len() + spec.b.len() + 1);
    anchors.extend(spec.a.iter().map(|&x| (x, t)));
    anchors.extend(spec.b.iter().map(|&x| (x, s)));
    anchors.push((n, 0.0));

    let mut values = vec![0.0f64; n];
    for x in 0..n {
        values[x] = anchors
            .iter()
            .map(|&(z, g)| g + dstar[x][z])
            .fold(f64::INFINITY, f64::min);
    }
    // Anchor values are assigned, not computed: the inf-extension keeps them
    // because the anchor assignment is 1-Lipschitz for d*, but rounding in
    // the min scan must not replace them.
    for &x in &spec.a {
        values[x] = t;
    }
    for &x in &spec.b {
        values[x] = s;
    }
    Ok(SeparatorColumn {
        values,
        lip_bound: 1.0,
        gap: theta,
        small_bound: eps,
        nonnegative: false,
    })
}

/// Nonnegative separator: `f = max(theta - d(x, kept), 0)` where `kept` is
/// whichever of A, B sits farther from C, so that the C bound survives.
pub fn build_separator_plus(
    space: &FiniteMetricSpace,
    spec: &SeparatorSpec,
) -> Result<SeparatorColumn> {
    let gap_ab = set_gap(space, &spec.a, &spec.b)?;
    let gap_ac = set_gap(space, &spec.a, &spec.c)?;
    let gap_bc = set_gap(space, &spec.b, &spec.c)?;
    let eps = spec.eps;
    let theta = gap_ab.min(gap_ac.max(gap_bc) + eps);
    // keep the side farther from C at height theta
    let kept: &[usize] = if gap_ac >= gap_bc { &spec.a } else { &spec.b };
    let values: Vec<f64> = (0..space.len())
        .map(|x| (theta - space.dist_to_set(x, kept)).max(0.0))
        .collect();
    Ok(SeparatorColumn {
        values,
        lip_bound: 1.0,
        gap: theta,
        small_bound: eps,
        nonnegative: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::validate_metric;

    fn triangle_413() -> FiniteMetricSpace {
        // d(a,b) = 4, d(a,c) = 1, d(b,c) = 3
        validate_metric(vec![
            vec![0.0, 4.0, 1.0],
            vec![4.0, 0.0, 3.0],
            vec![1.0, 3.0, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn signed_hand_example() {
        // theta = min(4, 1 + 3 + 1) = 4, t = min(4, 1.5) = 1.5, s = -2.5,
        // f(c) = min(1.5 + d*(c,a), -2.5 + d*(c,b), 0 + d*(c,0)) = 0.5.
        let space = triangle_413();
        let spec = SeparatorSpec::new(vec![0], vec![1], vec![2], 0.5).unwrap();
        let col = build_separator(&space, &spec).unwrap();
        assert_eq!(col.gap, 4.0);
        assert_eq!(col.values[0], 1.5);
        assert_eq!(col.values[1], -2.5);
        assert_eq!(col.values[2], 0.5);
        assert!(col.measured_lip(&space) <= 1.0 + 1e-12);
    }

    #[test]
    fn signed_a_equals_b_is_degenerate() {
        let space = triangle_413();
        let spec = SeparatorSpec::new(vec![0], vec![0], vec![2], 0.5).unwrap();
        let col = build_separator(&space, &spec).unwrap();
        assert_eq!(col.gap, 0.0);
        assert!(col.is_degenerate());
    }

    #[test]
    fn signed_c_contains_a_forces_small_anchor() {
        // gap(A,C) = 0, so t <= eps and |f| <= eps on A.
        let space = triangle_413();
        let eps = 0.01;
        let spec = SeparatorSpec::new(vec![0], vec![1], vec![0, 2], eps).unwrap();
        let col = build_separator(&space, &spec).unwrap();
        assert!(col.values[0].abs() <= eps + 1e-15);
        assert!(col.measured_lip(&space) <= 1.0 + 1e-12);
    }

    #[test]
    fn plus_hand_example_with_role_swap() {
        // gap(A,C) = 1 < gap(B,C) = 3, so B is kept:
        // theta = min(4, 3.5) = 3.5, f(b) = 3.5, f(a) = 0, f(c) = 0.5.
        let space = triangle_413();
        let spec = SeparatorSpec::new(vec![0], vec![1], vec![2], 0.5).unwrap();
        let col = build_separator_plus(&space, &spec).unwrap();
        assert_eq!(col.gap, 3.5);
        assert_eq!(col.values[1], 3.5);
        assert_eq!(col.values[0], 0.0);
        assert_eq!(col.values[2], 0.5);
        assert!(col.nonnegative);
    }

    #[test]
    fn plus_zero_gap_when_sets_touch() {
        let space = triangle_413();
        let spec = SeparatorSpec::new(vec![0, 1], vec![1], vec![2], 0.5).unwrap();
        let col = build_separator_plus(&space, &spec).unwrap();
        assert_eq!(col.gap, 0.0);
    }

    #[test]
    fn plus_c_equals_a_on_line() {
        // line {0,1,3}: A = C = {0}, B = {2(point at coordinate 3)}, eps = 0.1:
        // theta = min(d(A,B), max(0, gap(B,C)) + 0.1) = min(3, 3.1) = 3.
        let space = validate_metric(vec![
            vec![0.0, 1.0, 3.0],
            vec![1.0, 0.0, 2.0],
            vec![3.0, 2.0, 0.0],
        ])
        .unwrap();
        let spec = SeparatorSpec::new(vec![0], vec![2], vec![0], 0.1).unwrap();
        let col = build_separator_plus(&space, &spec).unwrap();
        assert_eq!(col.gap, 3.0);
        // kept side is B (gap(B,C) = 3 > gap(A,C) = 0); f <= eps on C
        assert!(col.values[0] <= 0.1);
    }

    #[test]
    fn augmented_metric_is_a_metric() {
        let space = triangle_413();
        let m = augmented_metric(&space, &[2], 0.5);
        crate::metric::validate_metric(m).expect("d* must satisfy the metric axioms");
    }

    #[test]
    fn anchors_are_bitwise_exact() {
        let space = crate::gen::gen_random_metric(9, 11).unwrap();
        let spec = SeparatorSpec::new(vec![0, 3], vec![5, 7], vec![1, 2], 0.25).unwrap();
        let col = build_separator(&space, &spec).unwrap();
        let t = col.values[0];
        let s = col.values[5];
        assert!(col.values[3] == t && col.values[7] == s);
        assert_eq!(t - s, col.gap);
    }
}
