//! Deterministic generators for test families: random repaired metrics,
//! random dendrogram ultrametrics, l_p clouds, branching trees, and the two
//! shifted-axis l_1 families.
//!
//! Every generator is a pure function of its parameters and the 64-bit seed
//! (ChaCha8 keyed by the seed), so outputs are reproducible across runs and
//! platforms.

use crate::cloud::LpPointCloud;
use crate::error::Result;
use crate::metric::{validate_metric_labeled, FiniteMetricSpace};
use crate::tree::TreeNodeSet;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random metric on `n` points: draw a symmetric positive weight matrix and
/// repair it into a metric by running all-pairs shortest paths to a fixpoint.
pub fn gen_random_metric(n: usize, seed: u64) -> Result<FiniteMetricSpace> {
    assert!(n >= 1);
    let mut rng = rng_for(seed);
    let mut d = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rng.gen_range(0.2..=1.2);
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    // Floyd-Warshall, iterated until no entry changes so the final matrix
    // satisfies the triangle inequality under exact float comparison.
    loop {
        let mut changed = false;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                        d[j][i] = via;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    validate_metric_labeled(d, labels)
}

/// Random ultrametric on `n` points via a random binary merge tree with
/// strictly increasing merge heights (the cophenetic distance of a random
/// dendrogram).
pub fn gen_random_ultrametric(n: usize, seed: u64) -> Result<FiniteMetricSpace> {
    assert!(n >= 1);
    let mut rng = rng_for(seed);
    let mut d = vec![vec![0.0f64; n]; n];
    // clusters[c] = members of cluster c
    let mut clusters: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut height = 0.0f64;
    while clusters.len() > 1 {
        height += rng.gen_range(0.1..=1.0);
        let a = rng.gen_range(0..clusters.len());
        let mut b = rng.gen_range(0..clusters.len() - 1);
        if b >= a {
            b += 1;
        }
        let (first, second) = (a.min(b), a.max(b));
        let other = clusters.swap_remove(second);
        for &x in &clusters[first] {
            for &y in &other {
                d[x][y] = height;
                d[y][x] = height;
            }
        }
        clusters[first].extend(other);
    }
    let labels = (0..n).map(|i| format!("u{i}")).collect();
    validate_metric_labeled(d, labels)
}

/// Random l_p cloud of `n` points in `dim` coordinates. Coordinates are
/// uniform in [0, 4] for positive clouds and [-2, 2] otherwise.
pub fn gen_lp_cloud(p: f64, dim: usize, n: usize, seed: u64, positive: bool) -> Result<LpPointCloud> {
    assert!(n >= 1 && dim >= 1);
    let mut rng = rng_for(seed);
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let pt: Vec<f64> = (0..dim)
            .map(|_| {
                if positive {
                    rng.gen_range(0.0..=4.0)
                } else {
                    rng.gen_range(-2.0..=2.0)
                }
            })
            .collect();
        points.push(pt);
    }
    LpPointCloud::new(p, points, positive)
}

/// Regular branching tree: every node of depth < `depth` gets `branch`
/// children labeled after its own last label. Prefix-closed by construction.
pub fn gen_branching_tree(depth: usize, branch: u64) -> Result<TreeNodeSet> {
    assert!(branch >= 1);
    let mut nodes = vec![vec![]];
    let mut frontier: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..depth {
        let mut next = Vec::new();
        for node in &frontier {
            let last = node.last().copied().unwrap_or(0);
            for label in (last + 1)..=(last + branch) {
                let mut child = node.clone();
                child.push(label);
                next.push(child);
            }
        }
        nodes.extend(next.iter().cloned());
        frontier = next;
    }
    TreeNodeSet::new(nodes)
}

/// Random prefix-closed node set with roughly `target` nodes.
pub fn gen_random_tree(target: usize, seed: u64) -> Result<TreeNodeSet> {
    assert!(target >= 1);
    let mut rng = rng_for(seed);
    let mut nodes: Vec<Vec<u64>> = vec![vec![]];
    while nodes.len() < target {
        let parent = nodes[rng.gen_range(0..nodes.len())].clone();
        let last = parent.last().copied().unwrap_or(0);
        let mut child = parent;
        child.push(last + rng.gen_range(1..=3));
        if !nodes.contains(&child) {
            nodes.push(child);
        }
    }
    TreeNodeSet::new(nodes)
}

/// The locally finite l_1 family {0, e0} U {n e_n, e0 + n e_n : 1 <= n <= N}:
/// 2N + 2 points with closed-form l_1 distances.
pub fn gen_shifted_axes(n_max: usize) -> Result<FiniteMetricSpace> {
    assert!(n_max >= 1);
    // Point encoding: (has_e0, axis scale n); n = 0 means no axis component.
    let mut pts: Vec<(bool, usize)> = vec![(false, 0), (true, 0)];
    let mut labels = vec!["0".to_string(), "e0".to_string()];
    for n in 1..=n_max {
        pts.push((false, n));
        labels.push(format!("{n}e{n}"));
        pts.push((true, n));
        labels.push(format!("e0+{n}e{n}"));
    }
    let d = |a: (bool, usize), b: (bool, usize)| -> f64 {
        let e0 = if a.0 != b.0 { 1.0 } else { 0.0 };
        let axes = if a.1 == b.1 { 0.0 } else { (a.1 + b.1) as f64 };
        e0 + axes
    };
    let m = pts
        .iter()
        .map(|&a| pts.iter().map(|&b| d(a, b)).collect())
        .collect();
    validate_metric_labeled(m, labels)
}

/// The dyadic analogue over binary strings s with 1 <= |s| <= depth:
/// {0, e} U {|s| e_s, e + |s| e_s} inside l_1 of the dyadic index set.
pub fn gen_dyadic_shifted(depth: usize) -> Result<FiniteMetricSpace> {
    assert!(depth >= 1);
    // Point encoding: (has_e_root, binary string as (len, bits)); len = 0
    // means no axis component.
    let mut strings: Vec<(usize, u64)> = Vec::new();
    for len in 1..=depth {
        for bits in 0..(1u64 << len) {
            strings.push((len, bits));
        }
    }
    let mut pts: Vec<(bool, Option<(usize, u64)>)> = vec![(false, None), (true, None)];
    let mut labels = vec!["0".to_string(), "e".to_string()];
    for &(len, bits) in &strings {
        let s: String = (0..len)
            .map(|i| if bits >> (len - 1 - i) & 1 == 1 { '1' } else { '0' })
            .collect();
        pts.push((false, Some((len, bits))));
        labels.push(format!("{len}e_{s}"));
        pts.push((true, Some((len, bits))));
        labels.push(format!("e+{len}e_{s}"));
    }
    let d = |a: (bool, Option<(usize, u64)>), b: (bool, Option<(usize, u64)>)| -> f64 {
        let e0 = if a.0 != b.0 { 1.0 } else { 0.0 };
        let axes = match (a.1, b.1) {
            (None, None) => 0.0,
            (Some((n, _)), None) | (None, Some((n, _))) => n as f64,
            (Some(s), Some(t)) => {
                if s == t {
                    0.0
                } else {
                    (s.0 + t.0) as f64
                }
            }
        };
        e0 + axes
    };
    let m = pts
        .iter()
        .map(|&a| pts.iter().map(|&b| d(a, b)).collect())
        .collect();
    validate_metric_labeled(m, labels)
}
