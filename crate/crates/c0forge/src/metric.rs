//! Finite metric spaces: validated distance matrices plus the set-distance
//! primitives every construction in this crate is built from.
//!
//! A [`FiniteMetricSpace`] is an n x n matrix of pairwise distances together
//! with point labels. Validation enforces the metric axioms once, up front;
//! after that every consumer may assume symmetry, zero diagonal, strictly
//! positive off-diagonal entries (no duplicate points) and the triangle
//! inequality. The triangle check uses an absolute tolerance of
//! `1e-12 * max(dist)`; the ultrametric test is exact because it performs
//! no arithmetic, only comparisons.

use crate::error::{Error, Result};

/// Relative tolerance for the triangle inequality check.
pub const TRIANGLE_TOL: f64 = 1e-12;

/// A validated finite metric space.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<f64>>,
}

/// A closed metric ball with strictly positive radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball {
    pub center: usize,
    pub radius: f64,
}

impl Ball {
    /// Panics if the radius is not strictly positive.
    pub fn new(center: usize, radius: f64) -> Self {
        assert!(radius > 0.0, "ball radius must be strictly positive");
        Ball { center, radius }
    }

    /// Same center, radius scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Ball::new(self.center, self.radius * factor)
    }
}

/// Validate a raw square matrix as a metric, naming the first violated
/// axiom and the offending indices.
pub fn validate_metric(raw: Vec<Vec<f64>>) -> Result<FiniteMetricSpace> {
    let labels = (0..raw.len()).map(|i| format!("p{i}")).collect();
    validate_metric_labeled(raw, labels)
}

/// As [`validate_metric`] but keeps caller-provided labels.
pub fn validate_metric_labeled(raw: Vec<Vec<f64>>, labels: Vec<String>) -> Result<FiniteMetricSpace> {
    let n = raw.len();
    if labels.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "{} labels for {} points",
            labels.len(),
            n
        )));
    }
    for (i, row) in raw.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare { row: i, len: row.len(), n });
        }
    }
    let mut max = 0.0f64;
    for (i, row) in raw.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { i, j, value: v });
            }
            max = max.max(v);
        }
    }
    for i in 0..n {
        if raw[i][i] != 0.0 {
            return Err(Error::NonzeroDiagonal { i, value: raw[i][i] });
        }
        for j in (i + 1)..n {
            if raw[i][j] != raw[j][i] {
                return Err(Error::Asymmetric { i, j, dij: raw[i][j], dji: raw[j][i] });
            }
            if raw[i][j] <= 0.0 {
                return Err(Error::DuplicatePoints { i, j, value: raw[i][j] });
            }
        }
    }
    let tol = TRIANGLE_TOL * max;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let via = raw[i][j] + raw[j][k];
                if raw[i][k] > via + tol {
                    return Err(Error::TriangleViolation { i, j, k, dik: raw[i][k], via });
                }
            }
        }
    }
    Ok(FiniteMetricSpace { labels, dist: raw })
}

impl FiniteMetricSpace {
    /// Number of points.
    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    /// Distance between points `i` and `j`.
    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.dist
    }

    /// Largest pairwise distance (0 for a single point).
    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                d = d.max(self.dist[i][j]);
            }
        }
        d
    }

    /// Smallest positive distance; `None` for a single point.
    pub fn min_distance(&self) -> Option<f64> {
        let mut m: Option<f64> = None;
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                m = Some(match m {
                    Some(v) => v.min(self.dist[i][j]),
                    None => self.dist[i][j],
                });
            }
        }
        m
    }

    /// Diameter of a point subset.
    pub fn diameter_of(&self, set: &[usize]) -> f64 {
        let mut d = 0.0f64;
        for (a, &i) in set.iter().enumerate() {
            for &j in &set[a + 1..] {
                d = d.max(self.dist[i][j]);
            }
        }
        d
    }

    /// Distance from a point to a nonempty set.
    pub fn dist_to_set(&self, x: usize, set: &[usize]) -> f64 {
        set.iter().map(|&z| self.dist[x][z]).fold(f64::INFINITY, f64::min)
    }

    /// All points within `ball.radius` of the center (closed ball).
    pub fn ball_members(&self, ball: Ball) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.dist[ball.center][x] <= ball.radius)
            .collect()
    }
}

/// Minimum distance between two nonempty sets.
pub fn set_gap(space: &FiniteMetricSpace, a: &[usize], b: &[usize]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet("set_gap"));
    }
    let mut m = f64::INFINITY;
    for &x in a {
        for &y in b {
            m = m.min(space.d(x, y));
        }
    }
    Ok(m)
}

/// Maximum distance between two nonempty sets.
pub fn set_span(space: &FiniteMetricSpace, a: &[usize], b: &[usize]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet("set_span"));
    }
    let mut m = 0.0f64;
    for &x in a {
        for &y in b {
            m = m.max(space.d(x, y));
        }
    }
    Ok(m)
}

/// Exact strong triangle inequality test: d(x,y) <= max(d(x,z), d(z,y))
/// for every triple, with no tolerance.
pub fn is_ultrametric(space: &FiniteMetricSpace) -> bool {
    ultrametric_violation(space).is_none()
}

/// First triple violating the strong triangle inequality, if any.
pub fn ultrametric_violation(space: &FiniteMetricSpace) -> Option<(usize, usize, usize)> {
    let n = space.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if space.d(i, j) > space.d(i, k).max(space.d(k, j)) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}
