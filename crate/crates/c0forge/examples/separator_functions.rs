//! The separator primitive every coordinate is built from.
//!
//! Given sets A, B, C and slack eps, a separator is a 1-Lipschitz function
//! that stays within eps of 0 on C while opening a gap theta between A
//! and B. The signed builder extends anchor values through an augmented
//! metric (gap exactly min(gap(A,B), gap(A,C) + gap(B,C) + 2 eps)); the
//! nonnegative builder truncates a distance cone (gap at least
//! min(gap(A,B), max(gap(A,C), gap(B,C)) + eps)).
//!
//! ```bash
//! cargo run -p c0forge --example separator_functions --release
//! ```

use c0forge::gen::gen_random_metric;
use c0forge::metric::validate_metric;
use c0forge::separator::{build_separator, build_separator_plus, SeparatorSpec};

fn main() {
    // the worked triangle: d(a,b) = 4, d(a,c) = 1, d(b,c) = 3
    let space = validate_metric(vec![
        vec![0.0, 4.0, 1.0],
        vec![4.0, 0.0, 3.0],
        vec![1.0, 3.0, 0.0],
    ])
    .unwrap();
    let spec = SeparatorSpec::new(vec![0], vec![1], vec![2], 0.5).unwrap();

    let signed = build_separator(&space, &spec).unwrap();
    println!("signed separator on the 4-1-3 triangle, eps = 0.5:");
    println!("  values = {:?}", signed.values);
    println!("  gap = {} (min(4, 1 + 3 + 1)), |f(c)| = {} <= eps", signed.gap, signed.values[2]);
    println!("  measured Lipschitz constant = {}", signed.measured_lip(&space));

    let plus = build_separator_plus(&space, &spec).unwrap();
    println!();
    println!("nonnegative separator on the same sets:");
    println!("  values = {:?}", plus.values);
    println!("  gap = {} (min(4, max(1, 3) + 0.5)); B is the kept side", plus.gap);

    // bulk audit on random inputs
    let mut worst_lip = 0.0f64;
    let mut cases = 0;
    for seed in 0..200 {
        let space = gen_random_metric(8, seed).unwrap();
        let spec = SeparatorSpec::new(
            vec![0, 1],
            vec![4, 5],
            vec![6, 7],
            0.05 + (seed as f64) * 0.001,
        )
        .unwrap();
        for col in [
            build_separator(&space, &spec).unwrap(),
            build_separator_plus(&space, &spec).unwrap(),
        ] {
            worst_lip = worst_lip.max(col.measured_lip(&space));
            cases += 1;
        }
    }
    println!();
    println!("{cases} random separators audited; worst measured Lipschitz constant = {worst_lip}");
    assert!(worst_lip <= 1.0 + 1e-12);
}
