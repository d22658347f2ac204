//! Exact isometric embeddings: ultrametric spaces into the nonnegative
//! cone and branching trees into signed max-norm coordinates.
//!
//! Both constructions are arithmetic-free: every emitted value is a copy
//! (or min) of an input distance or an integer depth difference, so the
//! isometry `max_j |f_j(x) - f_j(y)| = d(x, y)` holds bitwise, not merely
//! within tolerance. Coordinates are indexed sparsely — by distance-profile
//! prefixes for ultrametrics and by (node, label) pairs for trees — and
//! only indices with support anywhere are materialized.

use crate::embed::{Embedding, Target};
use crate::error::{Error, Result};
use crate::metric::{ultrametric_violation, validate_metric_labeled, FiniteMetricSpace};
use crate::tree::TreeNodeSet;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Index of one sparse coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordIndex {
    /// A distance-profile prefix (r_1, ..., r_k).
    Profile(Vec<f64>),
    /// A (node, label) pair of the tree construction.
    Tree { node: Vec<u64>, n: u64 },
}

/// One sparse coordinate: its index and the points where it is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseCoord {
    pub index: CoordIndex,
    pub values: BTreeMap<usize, f64>,
}

/// A sparsely represented embedding (lambda = 1 for both exact engines).
#[derive(Debug, Clone, PartialEq)]
pub struct SparseEmbedding {
    pub target: Target,
    pub lambda: f64,
    pub n: usize,
    pub coords: Vec<SparseCoord>,
}

impl SparseEmbedding {
    /// Densify into the column-major embedding form (no block metadata).
    pub fn to_embedding(&self) -> Embedding {
        let columns = self
            .coords
            .iter()
            .map(|c| {
                let mut col = vec![0.0; self.n];
                for (&i, &v) in &c.values {
                    col[i] = v;
                }
                col
            })
            .collect();
        Embedding {
            target: self.target,
            lambda: self.lambda,
            n: self.n,
            columns,
            blocks: Vec::new(),
        }
    }

    /// Number of nonzero coordinates of one point.
    pub fn support_size(&self, point: usize) -> usize {
        self.coords.iter().filter(|c| c.values.contains_key(&point)).count()
    }
}

/// Isometric embedding of an ultrametric space into the nonnegative cone.
///
/// Point x gets, at the coordinate indexed by a profile prefix
/// (r_1, ..., r_k), the value min(r_1, ..., r_k) when d(x, a_j) = r_j for
/// all j <= k (enumeration a_1, a_2, ... = input order), and 0 otherwise.
pub fn embed_ultrametric(space: &FiniteMetricSpace) -> Result<SparseEmbedding> {
    if let Some((i, j, k)) = ultrametric_violation(space) {
        return Err(Error::NotUltrametric { i, j, k });
    }
    let n = space.len();
    let mut coords = Vec::new();
    for k in 1..=n {
        // group points by bit-exact distance-profile prefix of length k
        let mut groups: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let key: Vec<u64> = (0..k).map(|j| space.d(x, j).to_bits()).collect();
            groups.entry(key).or_default().push(x);
        }
        for (key, members) in groups {
            let value = key
                .iter()
                .map(|&bits| f64::from_bits(bits))
                .fold(f64::INFINITY, f64::min);
            if value == 0.0 {
                continue; // identically zero coordinate
            }
            coords.push(SparseCoord {
                index: CoordIndex::Profile(key.iter().map(|&b| f64::from_bits(b)).collect()),
                values: members.into_iter().map(|x| (x, value)).collect(),
            });
        }
    }
    Ok(SparseEmbedding { target: Target::C0Plus, lambda: 1.0, n, coords })
}

/// The graph metric of a node set as a validated metric space.
pub fn tree_metric_space(tree: &TreeNodeSet) -> Result<FiniteMetricSpace> {
    let nodes = tree.nodes();
    let n = nodes.len();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = TreeNodeSet::graph_distance(&nodes[i], &nodes[j]) as f64;
            m[i][j] = d;
            m[j][i] = d;
        }
    }
    let labels = nodes
        .iter()
        .map(|a| {
            let inner: Vec<String> = a.iter().map(u64::to_string).collect();
            format!("({})", inner.join(","))
        })
        .collect();
    validate_metric_labeled(m, labels)
}

/// Isometric embedding of a tree node set under its graph metric.
///
/// Coordinate (a, n) sends node b to |b| - |a| when b sits strictly below a
/// through child label exactly n, to |a| - |b| when it passes through a
/// larger label, and to 0 otherwise.
pub fn embed_tree(tree: &TreeNodeSet) -> Result<SparseEmbedding> {
    let nodes = tree.nodes();
    let count = nodes.len();
    let mut coords = Vec::new();
    for a in nodes {
        // labels occurring immediately below a bound the materialized range
        let max_label = nodes
            .iter()
            .filter(|b| b.len() > a.len() && TreeNodeSet::meet_len(a, b) == a.len())
            .map(|b| b[a.len()])
            .max();
        let Some(max_label) = max_label else { continue };
        for n in 1..=max_label {
            let mut values = BTreeMap::new();
            for (bi, b) in nodes.iter().enumerate() {
                if b.len() > a.len() && TreeNodeSet::meet_len(a, b) == a.len() {
                    let next = b[a.len()];
                    if next == n {
                        values.insert(bi, (b.len() - a.len()) as f64);
                    } else if next > n {
                        values.insert(bi, -((b.len() - a.len()) as f64));
                    }
                }
            }
            if !values.is_empty() {
                coords.push(SparseCoord {
                    index: CoordIndex::Tree { node: a.clone(), n },
                    values,
                });
            }
        }
    }
    Ok(SparseEmbedding { target: Target::C0, lambda: 1.0, n: count, coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::validate_metric;

    #[test]
    fn three_point_ultrametric_hand_example() {
        // d(x,y) = 1, d(x,z) = d(y,z) = 2, order (x, y, z)
        let space = validate_metric(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 2.0],
            vec![2.0, 2.0, 0.0],
        ])
        .unwrap();
        let emb = embed_ultrametric(&space).unwrap();
        let dense = emb.to_embedding();
        assert_eq!(dense.pair_norm(0, 1), 1.0);
        assert_eq!(dense.pair_norm(0, 2), 2.0);
        assert_eq!(dense.pair_norm(1, 2), 2.0);
        // the profile coordinate (1) carries y alone at value 1
        let y_coord = emb
            .coords
            .iter()
            .find(|c| c.index == CoordIndex::Profile(vec![1.0]))
            .unwrap();
        assert_eq!(y_coord.values.len(), 1);
        assert_eq!(y_coord.values[&1], 1.0);
        // the profile coordinate (2) carries z alone at value 2
        let z_coord = emb
            .coords
            .iter()
            .find(|c| c.index == CoordIndex::Profile(vec![2.0]))
            .unwrap();
        assert_eq!(z_coord.values[&2], 2.0);
    }

    #[test]
    fn single_point_has_no_coordinates() {
        let space = validate_metric(vec![vec![0.0]]).unwrap();
        let emb = embed_ultrametric(&space).unwrap();
        assert!(emb.coords.is_empty());
    }

    #[test]
    fn equilateral_isometry() {
        let r = 2.5;
        let n = 5;
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { r }).collect())
            .collect();
        let space = validate_metric(m).unwrap();
        let emb = embed_ultrametric(&space).unwrap().to_embedding();
        for i in 0..n {
            for j in (i + 1)..n {
                assert_eq!(emb.pair_norm(i, j), r);
            }
        }
    }

    #[test]
    fn ultrametric_exactness_and_support_bound() {
        for seed in 0..10 {
            let space = crate::gen::gen_random_ultrametric(16, seed).unwrap();
            let emb = embed_ultrametric(&space).unwrap();
            let dense = emb.to_embedding();
            for i in 0..space.len() {
                for j in (i + 1)..space.len() {
                    assert_eq!(dense.pair_norm(i, j), space.d(i, j), "seed {seed}");
                }
                assert!(emb.support_size(i) <= space.len());
            }
            assert!(dense.columns.iter().all(|c| c.iter().all(|&v| v >= 0.0)));
        }
    }

    #[test]
    fn not_ultrametric_rejected() {
        let space = validate_metric(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 2.5],
            vec![2.0, 2.5, 0.0],
        ])
        .unwrap();
        assert!(matches!(
            embed_ultrametric(&space),
            Err(Error::NotUltrametric { .. })
        ));
    }

    #[test]
    fn two_children_hand_example() {
        // nodes {root, (1), (2)}: coordinate (root, 1) separates (1) and (2)
        let tree = TreeNodeSet::new(vec![vec![1], vec![2]]).unwrap();
        let emb = embed_tree(&tree).unwrap();
        let dense = emb.to_embedding();
        let space = tree_metric_space(&tree).unwrap();
        // node order after canonicalization: [], [1], [2]
        assert_eq!(dense.pair_norm(1, 2), 2.0);
        assert_eq!(space.d(1, 2), 2.0);
        let c = emb
            .coords
            .iter()
            .find(|c| c.index == CoordIndex::Tree { node: vec![], n: 1 })
            .unwrap();
        assert_eq!(c.values[&1], 1.0);
        assert_eq!(c.values[&2], -1.0);
        assert_eq!(c.values.get(&0), None);
    }

    #[test]
    fn chain_distance_through_root_coordinate() {
        let tree = TreeNodeSet::new(vec![vec![1], vec![1, 2]]).unwrap();
        let emb = embed_tree(&tree).unwrap().to_embedding();
        let space = tree_metric_space(&tree).unwrap();
        // d(root, (1,2)) = 2 via the (root, 1) coordinate
        assert_eq!(space.d(0, 2), 2.0);
        assert_eq!(emb.pair_norm(0, 2), 2.0);
        // identical nodes map to distance 0
        assert_eq!(emb.pair_norm(1, 1), 0.0);
    }

    #[test]
    fn tree_isometry_random_sets_with_bfs_oracle() {
        for seed in 0..5 {
            let tree = crate::gen::gen_random_tree(40, seed).unwrap();
            let space = tree_metric_space(&tree).unwrap();
            let sparse = embed_tree(&tree).unwrap();
            let emb = sparse.to_embedding();
            let bfs = bfs_distances(&tree);
            for i in 0..space.len() {
                for j in 0..space.len() {
                    assert_eq!(space.d(i, j), bfs[i][j], "lca formula vs bfs");
                    assert_eq!(emb.pair_norm(i, j), space.d(i, j), "isometry");
                }
            }
            // sparse support stays below depth * max-label per point
            let depth = tree.nodes().iter().map(Vec::len).max().unwrap();
            let max_label = tree.nodes().iter().flatten().copied().max().unwrap() as usize;
            for i in 0..space.len() {
                assert!(sparse.support_size(i) <= depth * max_label);
            }
        }
    }

    /// Independent oracle: breadth-first search over the parent/child graph.
    fn bfs_distances(tree: &TreeNodeSet) -> Vec<Vec<f64>> {
        let nodes = tree.nodes();
        let n = nodes.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&nodes[i], &nodes[j]);
                if b.len() == a.len() + 1 && TreeNodeSet::meet_len(a, b) == a.len() {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        let mut out = vec![vec![0.0; n]; n];
        for start in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            for (j, &d) in dist.iter().enumerate() {
                out[start][j] = d as f64;
            }
        }
        out
    }
}
