//! Prefix-closed sets of tree nodes with the natural graph metric.
//!
//! A node is a strictly increasing finite sequence of positive integers;
//! the empty sequence is the root. Two nodes are adjacent when one extends
//! the other by a single label, so the graph distance is
//! `|a| + |b| - 2 |meet(a, b)|` where the meet is the longest common prefix.

use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// A finite, prefix-closed, strictly increasing node set.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeNodeSet {
    nodes: Vec<Vec<u64>>,
}

impl TreeNodeSet {
    /// Validate prefix closure and strict monotonicity. Node order is
    /// canonicalized (sorted, deduplicated); the root is always present.
    pub fn new(mut nodes: Vec<Vec<u64>>) -> Result<Self> {
        for node in &nodes {
            if node.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::NotIncreasing(node.clone()));
            }
        }
        nodes.push(vec![]);
        nodes.sort();
        nodes.dedup();
        let set: BTreeSet<&[u64]> = nodes.iter().map(Vec::as_slice).collect();
        for node in &nodes {
            if !node.is_empty() && !set.contains(&node[..node.len() - 1]) {
                return Err(Error::NotPrefixClosed(node.clone()));
            }
        }
        Ok(TreeNodeSet { nodes })
    }

    pub fn nodes(&self) -> &[Vec<u64>] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Longest common prefix length of nodes `a` and `b`.
    pub fn meet_len(a: &[u64], b: &[u64]) -> usize {
        a.iter().zip(b).take_while(|(x, y)| x == y).count()
    }

    /// Graph distance |a| + |b| - 2 |a meet b| as an exact integer.
    pub fn graph_distance(a: &[u64], b: &[u64]) -> u64 {
        (a.len() + b.len() - 2 * Self::meet_len(a, b)) as u64
    }
}
