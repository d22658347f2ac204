//! Embedding assembly: block function families, telescoping schedules, the
//! positive-part doubling map, and coordinate pruning.
//!
//! An [`Embedding`] stores one coordinate function per column. The block
//! engines guarantee, for every pair of distinct points,
//! `d(x,y) < max_j |f_j(x) - f_j(y)| <= lambda d(x,y)`: the upper bound
//! because every column is lambda-Lipschitz, the strict lower bound because
//! each pair is captured by exactly one block of the schedule and that
//! block's columns separate it. Columns of block k stay below
//! `lambda eps_k` on the net F_k, which is the finite-scale witness that
//! the coordinates vanish along the point sequence.

mod blocks;
mod engine;
mod transform;

pub use blocks::{
    block_functions, block_functions_plus, captured_pairs, captured_pairs_plus, BlockSpec,
};
pub use engine::{embed_c0, embed_c0_plus, BlockSchedule};
pub use transform::{pos_split, prune};

use crate::metric::FiniteMetricSpace;
use serde::{Deserialize, Serialize};

/// Target cone of an embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "c0")]
    C0,
    #[serde(rename = "c0plus")]
    C0Plus,
}

/// Metadata of one schedule block: its scale, the covered column range
/// (half-open) and the net the columns are small on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockMeta {
    pub k: usize,
    /// Column range [lo, hi).
    pub cols: (usize, usize),
    #[serde(rename = "F_k")]
    pub f_k: Vec<usize>,
    pub eps_k: f64,
}

/// A coordinate matrix with its target cone, claimed constant, and
/// per-block provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub target: Target,
    pub lambda: f64,
    /// Number of points (rows).
    pub n: usize,
    /// Column-major coordinates: columns[j][i] = f_j(x_i).
    pub columns: Vec<Vec<f64>>,
    pub blocks: Vec<BlockMeta>,
}

impl Embedding {
    /// Zero-column embedding of an n-point space.
    pub fn empty(target: Target, lambda: f64, n: usize) -> Self {
        Embedding { target, lambda, n, columns: Vec::new(), blocks: Vec::new() }
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    /// Max-norm distance between the images of points `i` and `j`.
    pub fn pair_norm(&self, i: usize, j: usize) -> f64 {
        self.columns
            .iter()
            .map(|col| (col[i] - col[j]).abs())
            .fold(0.0, f64::max)
    }

    /// Row image of one point.
    pub fn row(&self, i: usize) -> Vec<f64> {
        self.columns.iter().map(|col| col[i]).collect()
    }

    /// Max-norm of a point's image.
    pub fn row_norm(&self, i: usize) -> f64 {
        self.columns.iter().map(|col| col[i].abs()).fold(0.0, f64::max)
    }

    /// Fraction of exactly-zero entries.
    pub fn sparsity(&self) -> f64 {
        let total = self.dim() * self.n;
        if total == 0 {
            return 0.0;
        }
        let zeros: usize = self
            .columns
            .iter()
            .map(|col| col.iter().filter(|&&v| v == 0.0).count())
            .sum();
        zeros as f64 / total as f64
    }

    /// Largest per-column Lipschitz constant, measured exhaustively.
    pub fn measured_column_lip(&self, space: &FiniteMetricSpace) -> f64 {
        let mut worst = 0.0f64;
        for col in &self.columns {
            for i in 0..self.n {
                for j in (i + 1)..self.n {
                    worst = worst.max((col[i] - col[j]).abs() / space.d(i, j));
                }
            }
        }
        worst
    }
}
