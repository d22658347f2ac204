//! Embedding transforms: the positive-part doubling map and greedy
//! coordinate pruning.

use super::{BlockMeta, Embedding, Target};
use crate::metric::FiniteMetricSpace;

/// Split every column g into 2 max(g, 0) and 2 max(-g, 0). The image lands
/// in the nonnegative cone, the constant doubles, and each pair's max-norm
/// distance lies within [1, 2] times its original value.
pub fn pos_split(emb: &Embedding) -> Embedding {
    let mut columns = Vec::with_capacity(emb.columns.len() * 2);
    for col in &emb.columns {
        columns.push(col.iter().map(|&v| 2.0 * v.max(0.0)).collect());
        columns.push(col.iter().map(|&v| 2.0 * (-v).max(0.0)).collect());
    }
    let blocks = emb
        .blocks
        .iter()
        .map(|b| BlockMeta { k: b.k, cols: (2 * b.cols.0, 2 * b.cols.1), f_k: b.f_k.clone(), eps_k: b.eps_k })
        .collect();
    Embedding {
        target: Target::C0Plus,
        lambda: 2.0 * emb.lambda,
        n: emb.n,
        columns,
        blocks,
    }
}

/// Greedily drop columns, highest index first, as long as every pair keeps
/// some remaining column with |f_j(x) - f_j(y)| > d(x, y). Ratios and
/// target are preserved; block ranges are recomputed.
pub fn prune(space: &FiniteMetricSpace, emb: &Embedding) -> Embedding {
    let n = emb.n;
    let m = emb.dim();
    if m == 0 || n <= 1 {
        return emb.clone();
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    // per pair, how many columns currently witness the strict lower bound
    let achieves = |col: &[f64], &(i, j): &(usize, usize)| (col[i] - col[j]).abs() > space.d(i, j);
    let mut count: Vec<usize> = pairs
        .iter()
        .map(|pair| emb.columns.iter().filter(|c| achieves(c, pair)).count())
        .collect();
    let mut keep = vec![true; m];
    for c in (0..m).rev() {
        let col = &emb.columns[c];
        let removable = pairs
            .iter()
            .zip(&count)
            .all(|(pair, &cnt)| cnt - usize::from(achieves(col, pair)) >= 1);
        if removable {
            keep[c] = false;
            for (pair, cnt) in pairs.iter().zip(count.iter_mut()) {
                if achieves(col, pair) {
                    *cnt -= 1;
                }
            }
        }
    }
    let columns: Vec<Vec<f64>> = emb
        .columns
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(c, _)| c.clone())
        .collect();
    // surviving-column prefix counts rebuild the block ranges
    let mut surviving_before = vec![0usize; m + 1];
    for c in 0..m {
        surviving_before[c + 1] = surviving_before[c] + usize::from(keep[c]);
    }
    let blocks = emb
        .blocks
        .iter()
        .map(|b| BlockMeta {
            k: b.k,
            cols: (surviving_before[b.cols.0], surviving_before[b.cols.1]),
            f_k: b.f_k.clone(),
            eps_k: b.eps_k,
        })
        .collect();
    Embedding { target: emb.target, lambda: emb.lambda, n, columns, blocks }
}
