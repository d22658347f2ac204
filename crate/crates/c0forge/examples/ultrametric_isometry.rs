//! Ultrametric spaces embed isometrically into the nonnegative cone —
//! exactly, not approximately.
//!
//! Coordinates are indexed by distance-profile prefixes: point x places
//! the value min(r_1, ..., r_k) on the coordinate (r_1, ..., r_k) exactly
//! when d(x, a_j) = r_j for the enumeration a_1, a_2, .... Because every
//! emitted value is a copy or min of an input distance and the strong
//! triangle inequality turns unequal legs into equalities, the max-norm
//! distance reproduces d bitwise.
//!
//! ```bash
//! cargo run -p c0forge --example ultrametric_isometry --release
//! ```

use c0forge::audit::distortion_report;
use c0forge::exact::embed_ultrametric;
use c0forge::gen::gen_random_ultrametric;

fn main() {
    println!("n    coords  max support  exact?");
    println!("---------------------------------");
    for (n, seed) in [(8, 1u64), (16, 2), (32, 3), (64, 4)] {
        let space = gen_random_ultrametric(n, seed).unwrap();
        let sparse = embed_ultrametric(&space).unwrap();
        let dense = sparse.to_embedding();
        let report = distortion_report(&space, &dense, 0.0).unwrap();
        assert!(report.pass && report.isometry_mode);
        let max_support = (0..n).map(|i| sparse.support_size(i)).max().unwrap_or(0);
        println!(
            "{n:<4} {:<7} {max_support:<12} min = max = {}",
            sparse.coords.len(),
            report.max_ratio
        );
    }

    // a tiny worked case: the 1-2-2 isosceles triple
    let space = c0forge::metric::validate_metric(vec![
        vec![0.0, 1.0, 2.0],
        vec![1.0, 0.0, 2.0],
        vec![2.0, 2.0, 0.0],
    ])
    .unwrap();
    let sparse = embed_ultrametric(&space).unwrap();
    println!();
    println!("worked 3-point case, nonzero coordinates:");
    for c in &sparse.coords {
        println!("  index {:?} -> {:?}", c.index, c.values);
    }
}
