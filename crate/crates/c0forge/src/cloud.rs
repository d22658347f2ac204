//! Finite point clouds in l_p coordinates, optionally restricted to the
//! nonnegative cone, with the induced metric space view.

use crate::error::{Error, Result};
use crate::metric::{validate_metric_labeled, FiniteMetricSpace};

/// A finite set of points in R^dim carrying the l_p metric.
#[derive(Debug, Clone, PartialEq)]
pub struct LpPointCloud {
    pub p: f64,
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    /// True when every coordinate is >= 0 (the cone l_p^+).
    pub positive: bool,
}

impl LpPointCloud {
    /// Build and check shape, p >= 1, and cone membership when flagged.
    pub fn new(p: f64, points: Vec<Vec<f64>>, positive: bool) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::InvalidParameter(format!("p = {p} must be >= 1")));
        }
        let dim = points.first().map_or(0, Vec::len);
        for (i, pt) in points.iter().enumerate() {
            if pt.len() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    pt.len()
                )));
            }
            if positive && pt.iter().any(|&c| c < 0.0) {
                return Err(Error::NotPositiveCone);
            }
        }
        Ok(LpPointCloud { p, dim, points, positive })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// l_p norm of an arbitrary coordinate vector.
    pub fn norm(&self, v: &[f64]) -> f64 {
        lp_norm(self.p, v)
    }

    /// l_p distance between cloud points `i` and `j`.
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        let diff: Vec<f64> = self.points[i]
            .iter()
            .zip(&self.points[j])
            .map(|(a, b)| a - b)
            .collect();
        lp_norm(self.p, &diff)
    }

    /// The induced finite metric space (validates the usual axioms, which
    /// also rejects duplicate points).
    pub fn to_metric_space(&self) -> Result<FiniteMetricSpace> {
        let n = self.len();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.dist(i, j);
                m[i][j] = d;
                m[j][i] = d;
            }
        }
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        validate_metric_labeled(m, labels)
    }
}

/// l_p norm with the max norm as the p = infinity limit left to callers.
pub fn lp_norm(p: f64, v: &[f64]) -> f64 {
    if p == 1.0 {
        v.iter().map(|c| c.abs()).sum()
    } else if p == 2.0 {
        proot(v.iter().map(|c| c * c).sum::<f64>(), p)
    } else {
        proot(v.iter().map(|c| c.abs().powf(p)).sum::<f64>(), p)
    }
}

/// The canonical p-th root used everywhere a constant like 2^(1/p) is
/// compared against a computed norm; sharing one kernel keeps such
/// comparisons bitwise stable.
pub fn proot(base: f64, p: f64) -> f64 {
    if p == 1.0 {
        base
    } else if p == 2.0 {
        base.sqrt()
    } else {
        base.powf(1.0 / p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pythagorean_distance() {
        let cloud =
            LpPointCloud::new(2.0, vec![vec![0.0, 0.0], vec![3.0, 4.0]], false).unwrap();
        assert_eq!(cloud.dist(0, 1), 5.0);
        let space = cloud.to_metric_space().unwrap();
        assert_eq!(space.d(0, 1), 5.0);
    }

    #[test]
    fn cone_check() {
        let e = LpPointCloud::new(1.0, vec![vec![-1.0]], true).unwrap_err();
        assert!(matches!(e, Error::NotPositiveCone));
        assert!(LpPointCloud::new(1.0, vec![vec![1.0]], true).is_ok());
    }

    #[test]
    fn l1_and_l3_norms() {
        assert_eq!(lp_norm(1.0, &[1.0, -2.0, 3.0]), 6.0);
        let n3 = lp_norm(3.0, &[1.0, 1.0]);
        assert!((n3 - 2f64.powf(1.0 / 3.0)).abs() < 1e-15);
    }
}
