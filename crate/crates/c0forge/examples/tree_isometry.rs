//! Branching trees embed isometrically into signed max-norm coordinates,
//! and 2-embed into the nonnegative cone via positive-part doubling.
//!
//! Coordinate (a, n) looks down from node a through its child labeled n:
//! descendants through exactly n get their depth below a, descendants
//! through larger labels get its negative, everything else 0. The deepest
//! disagreement between two nodes realizes their graph distance exactly.
//! Splitting g into 2 max(g, 0) and 2 max(-g, 0) then lands the image in
//! the cone at twice the constant, which is again the best possible
//! factor (the tree contains bi-infinite paths in spirit).
//!
//! ```bash
//! cargo run -p c0forge --example tree_isometry --release
//! ```

use c0forge::audit::distortion_report;
use c0forge::embed::pos_split;
use c0forge::exact::{embed_tree, tree_metric_space};
use c0forge::gen::{gen_branching_tree, gen_random_tree};

fn main() {
    println!("tree             nodes  coords  exact?");
    println!("----------------------------------------");
    for (name, tree) in [
        ("binary depth 3", gen_branching_tree(3, 2).unwrap()),
        ("ternary depth 2", gen_branching_tree(2, 3).unwrap()),
        ("random 120", gen_random_tree(120, 7).unwrap()),
        ("random 200", gen_random_tree(200, 8).unwrap()),
    ] {
        let space = tree_metric_space(&tree).unwrap();
        let sparse = embed_tree(&tree).unwrap();
        let dense = sparse.to_embedding();
        let report = distortion_report(&space, &dense, 0.0).unwrap();
        assert!(report.pass && report.isometry_mode);
        println!(
            "{name:<16} {:<6} {:<7} min = max = {}",
            tree.len(),
            sparse.coords.len(),
            report.max_ratio
        );
    }

    // the doubling map: tree -> cone at constant 2
    let tree = gen_random_tree(60, 9).unwrap();
    let space = tree_metric_space(&tree).unwrap();
    let cone = pos_split(&embed_tree(&tree).unwrap().to_embedding());
    let report = distortion_report(&space, &cone, 1e-9).unwrap();
    assert!(report.pass && report.nonneg);
    println!();
    println!(
        "positive-part doubling of the 60-node tree: ratios in [{:.3}, {:.3}], all entries >= 0",
        report.min_ratio, report.max_ratio
    );
}
