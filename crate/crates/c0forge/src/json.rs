//! File formats: space inputs, dense embeddings, and the sparse embedding
//! variant emitted by the exact engines. All floats round-trip bit-exactly
//! through serde_json's shortest-representation formatting, and map keys
//! are ordered, so outputs are byte-deterministic.

use crate::cloud::LpPointCloud;
use crate::embed::{BlockMeta, Embedding, Target};
use crate::error::{Error, Result};
use crate::exact::{CoordIndex, SparseCoord, SparseEmbedding};
use crate::metric::{validate_metric_labeled, FiniteMetricSpace};
use crate::tree::TreeNodeSet;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

/// On-disk space description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceJson {
    Matrix { labels: Vec<String>, dist: Vec<Vec<f64>> },
    Lp { p: f64, positive: bool, points: Vec<Vec<f64>> },
    Tree { nodes: Vec<Vec<u64>> },
}

/// A parsed space input: metric spaces embed directly, clouds carry their
/// l_p structure, trees their node set.
#[derive(Debug, Clone)]
pub enum SpaceInput {
    Metric(FiniteMetricSpace),
    Cloud(LpPointCloud),
    Tree(TreeNodeSet),
}

impl SpaceInput {
    /// The induced finite metric space of any input kind.
    pub fn to_space(&self) -> Result<FiniteMetricSpace> {
        match self {
            SpaceInput::Metric(s) => Ok(s.clone()),
            SpaceInput::Cloud(c) => c.to_metric_space(),
            SpaceInput::Tree(t) => crate::exact::tree_metric_space(t),
        }
    }

    pub fn to_json(&self) -> SpaceJson {
        match self {
            SpaceInput::Metric(s) => SpaceJson::Matrix {
                labels: s.labels().to_vec(),
                dist: s.matrix().to_vec(),
            },
            SpaceInput::Cloud(c) => SpaceJson::Lp {
                p: c.p,
                positive: c.positive,
                points: c.points.clone(),
            },
            SpaceInput::Tree(t) => SpaceJson::Tree { nodes: t.nodes().to_vec() },
        }
    }

    pub fn from_json(json: SpaceJson) -> Result<Self> {
        Ok(match json {
            SpaceJson::Matrix { labels, dist } => {
                SpaceInput::Metric(validate_metric_labeled(dist, labels)?)
            }
            SpaceJson::Lp { p, positive, points } => {
                SpaceInput::Cloud(LpPointCloud::new(p, points, positive)?)
            }
            SpaceJson::Tree { nodes } => SpaceInput::Tree(TreeNodeSet::new(nodes)?),
        })
    }
}

/// Dense embedding file: column-major coordinates plus block metadata.
/// `n` disambiguates zero-column embeddings; readers fall back to the
/// column length when it is absent.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub target: Target,
    pub lambda: f64,
    #[serde(default)]
    pub n: Option<usize>,
    pub columns: Vec<Vec<f64>>,
    pub blocks: Vec<BlockMeta>,
}

/// Sparse embedding file of the exact engines.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SparseJson {
    pub target: Target,
    pub lambda: f64,
    pub n: usize,
    pub coords: Vec<SparseCoordJson>,
}

/// Point indices are serialized as JSON object keys, hence strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SparseCoordJson {
    pub index: CoordIndex,
    pub values: BTreeMap<String, f64>,
}

/// Either embedding file form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EmbeddingFile {
    Dense(EmbeddingJson),
    Sparse(SparseJson),
}

impl EmbeddingFile {
    /// Densify either form into a working embedding. The dense row count is
    /// taken from the columns (zero-column dense files carry n = 0 rows and
    /// are only valid for single-point uses when written by this crate,
    /// which records n via an empty marker column list).
    pub fn into_embedding(self) -> Result<Embedding> {
        match self {
            EmbeddingFile::Dense(d) => {
                let n = d.n.unwrap_or_else(|| d.columns.first().map_or(0, Vec::len));
                if let Some(bad) = d.columns.iter().find(|c| c.len() != n) {
                    return Err(Error::ShapeMismatch(format!(
                        "ragged columns: expected {n} rows, found {}",
                        bad.len()
                    )));
                }
                Ok(Embedding { target: d.target, lambda: d.lambda, n, columns: d.columns, blocks: d.blocks })
            }
            EmbeddingFile::Sparse(s) => {
                let coords = s
                    .coords
                    .into_iter()
                    .map(|c| {
                        let values = c
                            .values
                            .into_iter()
                            .map(|(k, v)| {
                                k.parse::<usize>()
                                    .map(|i| (i, v))
                                    .map_err(|_| Error::ParseError(format!("bad point index `{k}`")))
                            })
                            .collect::<Result<BTreeMap<usize, f64>>>()?;
                        Ok(SparseCoord { index: c.index, values })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let sparse =
                    SparseEmbedding { target: s.target, lambda: s.lambda, n: s.n, coords };
                Ok(sparse.to_embedding())
            }
        }
    }
}

fn to_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::ParseError(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn write_space(path: &Path, input: &SpaceInput) -> Result<()> {
    std::fs::write(path, to_pretty(&input.to_json())?)?;
    Ok(())
}

pub fn read_space(path: &Path) -> Result<SpaceInput> {
    let text = std::fs::read_to_string(path)?;
    let json: SpaceJson = serde_json::from_str(&text)
        .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
    SpaceInput::from_json(json)
}

pub fn write_embedding(path: &Path, emb: &Embedding) -> Result<()> {
    let json = EmbeddingJson {
        target: emb.target,
        lambda: emb.lambda,
        n: Some(emb.n),
        columns: emb.columns.clone(),
        blocks: emb.blocks.clone(),
    };
    std::fs::write(path, to_pretty(&json)?)?;
    Ok(())
}

pub fn write_sparse(path: &Path, emb: &SparseEmbedding) -> Result<()> {
    let json = SparseJson {
        target: emb.target,
        lambda: emb.lambda,
        n: emb.n,
        coords: emb
            .coords
            .iter()
            .map(|c| SparseCoordJson {
                index: c.index.clone(),
                values: c.values.iter().map(|(&i, &v)| (i.to_string(), v)).collect(),
            })
            .collect(),
    };
    std::fs::write(path, to_pretty(&json)?)?;
    Ok(())
}

pub fn read_embedding(path: &Path) -> Result<Embedding> {
    let text = std::fs::read_to_string(path)?;
    let file: EmbeddingFile = serde_json::from_str(&text)
        .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
    file.into_embedding()
}
