//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by metric validation, cover providers, and the
/// embedding engines.
#[derive(Error, Debug)]
pub enum Error {
    /// Distance matrix is not square.
    #[error("distance matrix is not square: row {row} has length {len}, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    /// A diagonal entry is nonzero.
    #[error("nonzero diagonal at index {i}: {value}")]
    NonzeroDiagonal { i: usize, value: f64 },
    /// dist[i][j] != dist[j][i].
    #[error("asymmetric distances at ({i},{j}): {dij} vs {dji}")]
    Asymmetric { i: usize, j: usize, dij: f64, dji: f64 },
    /// A non-positive off-diagonal entry (duplicate or invalid points).
    #[error("duplicate points: dist[{i}][{j}] = {value} is not positive")]
    DuplicatePoints { i: usize, j: usize, value: f64 },
    /// Triangle inequality violated for the named triple.
    #[error("triangle violation: d({i},{k}) = {dik} > d({i},{j}) + d({j},{k}) = {via}")]
    TriangleViolation { i: usize, j: usize, k: usize, dik: f64, via: f64 },
    /// A matrix entry is NaN or infinite.
    #[error("non-finite distance at ({i},{j}): {value}")]
    NonFinite { i: usize, j: usize, value: f64 },

    /// A set argument that must be nonempty is empty.
    #[error("empty set: {0}")]
    EmptySet(&'static str),
    /// mu must exceed the provider's lambda.
    #[error("mu = {mu} too small: must exceed {min}")]
    MuTooSmall { mu: f64, min: f64 },
    /// No epsilon above the floor satisfies the provider's strict inequality.
    #[error("epsilon search failed: no value above {floor:e} satisfies the margin inequality")]
    EpsilonSearchFailed { floor: f64 },
    /// Positive-cone providers require balls of the same radius.
    #[error("unequal radii: {r1} vs {r2}")]
    UnequalRadii { r1: f64, r2: f64 },
    /// The positive-cone lp provider needs a cloud inside the cone.
    #[error("point cloud is not inside the nonnegative cone")]
    NotPositiveCone,
    /// No admissible calibration constant exists at this lambda.
    #[error("calibration infeasible: theta_min = {theta_min} >= lambda = {lambda}")]
    ThetaInfeasible { theta_min: f64, lambda: f64 },
    /// Cover extraction needs lambda strictly above the embedding constant.
    #[error("lambda = {lambda} too tight: embedding constant is {lambda0}")]
    ConstantTooTight { lambda: f64, lambda0: f64 },

    /// Provider mode does not match the requested operation.
    #[error("provider mismatch: {0}")]
    ProviderMismatch(String),
    /// Embedding constants must be strictly greater than 1.
    #[error("lambda out of range: {0}")]
    LambdaOutOfRange(f64),
    /// A calibration function is required for lambda <= 2 in positive mode.
    #[error("phi function required for lambda = {0} <= 2")]
    PhiMissing(f64),
    /// The block schedule grew past the hard cap.
    #[error("schedule needs {needed} blocks, cap is {cap} (degenerate d_min/diam ratio)")]
    TooManyBlocks { needed: usize, cap: usize },

    /// The input space fails the ultrametric inequality.
    #[error("space is not ultrametric: d({i},{j}) > max(d({i},{k}), d({k},{j}))")]
    NotUltrametric { i: usize, j: usize, k: usize },
    /// A tree node set is missing a prefix.
    #[error("node set is not prefix-closed: missing prefix of node {0:?}")]
    NotPrefixClosed(Vec<u64>),
    /// A tree node is not strictly increasing.
    #[error("node {0:?} is not strictly increasing")]
    NotIncreasing(Vec<u64>),

    /// Embedding row count does not match the space.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    /// Block bounds were requested but the embedding carries no block metadata.
    #[error("embedding has no block metadata")]
    MissingBlockMeta,

    /// Invalid argument to a library call.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Bad command line parameters.
    #[error("bad params: {0}")]
    BadParams(String),
    /// File or JSON parse failure.
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
