//! The cover certificates behind every engine, audited directly.
//!
//! A provider takes two balls and returns set pairs (U_j, V_j) covering
//! every far point pair across the balls, with lambda * gap(U_j, V_j)
//! proportionally large. Gradation upgrades the per-ball bound to a
//! per-pair bound by stratifying inflated radii. Extraction runs the
//! converse: given any verified embedding, a cover family with nu > mu
//! can be read back off its coordinates.
//!
//! ```bash
//! cargo run -p c0forge --example cover_certificates --release
//! ```

use c0forge::cover::{extract_cover_from_embedding, graded_cover, verify_cover, Provider};
use c0forge::embed::embed_c0;
use c0forge::gen::gen_lp_cloud;
use c0forge::metric::{validate_metric, Ball, FiniteMetricSpace};

fn line(points: &[f64]) -> FiniteMetricSpace {
    let m = points
        .iter()
        .map(|&a| points.iter().map(|&b| (a - b).abs()).collect())
        .collect();
    validate_metric(m).unwrap()
}

fn main() {
    // two clusters far apart, plus an outlier beyond them
    let space = line(&[0.0, 0.7, 1.1, 14.0, 14.6, 15.2, 40.0]);
    let b1 = Ball::new(0, 1.2); // covers the left cluster
    let b2 = Ball::new(4, 1.2); // covers the right cluster

    println!("provider   mu      nu      pairs  far-pairs  worst margin");
    println!("----------------------------------------------------------");
    for provider in [Provider::Generic, Provider::Net { lambda: 1.3 }] {
        let mu = provider.lambda() * 1.25;
        let fam = provider.cover(&space, b1, b2, mu).unwrap();
        let rep = verify_cover(&space, b1, b2, &fam);
        assert!(rep.pass, "{:?}", rep.violation);
        println!(
            "{:<10} {mu:<7.3} {:<7.3} {:<6} {:<10} {:+.4e}",
            format!("{:?}", provider.kind()),
            fam.nu,
            fam.pairs.len(),
            rep.delta_size,
            rep.worst_margin
        );
    }

    // l_p clouds get their covers from coordinate grids; put the balls on
    // the cloud's farthest pair so far pairs exist
    let cloud = gen_lp_cloud(2.0, 3, 16, 4, false).unwrap();
    let cspace = cloud.to_metric_space().unwrap();
    let mut far = (0, 1);
    for i in 0..cspace.len() {
        for j in 0..cspace.len() {
            if cspace.d(i, j) > cspace.d(far.0, far.1) {
                far = (i, j);
            }
        }
    }
    let cb1 = Ball::new(far.0, 0.08 * cspace.diameter());
    let cb2 = Ball::new(far.1, 0.08 * cspace.diameter());
    let provider = Provider::Lp { cloud };
    let fam = provider.cover(&cspace, cb1, cb2, provider.lambda() * 1.4).unwrap();
    let rep = verify_cover(&cspace, cb1, cb2, &fam);
    assert!(rep.pass, "{:?}", rep.violation);
    println!(
        "{:<10} {:<7.3} {:<7.3} {:<6} {:<10} {:+.4e}",
        "Lp",
        fam.mu,
        fam.nu,
        fam.pairs.len(),
        rep.delta_size,
        rep.worst_margin
    );

    // graded: the per-pair inequality lambda mu gap >= nu d(x,y); the
    // outlier at 40 forces a second inflation scale
    let wide1 = Ball::new(0, 1.2);
    let wide2 = Ball::new(6, 1.2);
    let fam = graded_cover(&space, wide1, wide2, 2.5, &Provider::Generic).unwrap();
    let rep = verify_cover(&space, wide1, wide2, &fam);
    assert!(rep.pass, "{:?}", rep.violation);
    println!();
    println!(
        "graded generic at mu = 2.5: {} pairs cover {} far pairs, worst per-pair slack {:+.4e}",
        fam.pairs.len(),
        rep.delta_size,
        rep.worst_margin
    );

    // the converse direction: covers out of an embedding
    let emb = embed_c0(&space, 2.0, &Provider::Generic, None).unwrap();
    let fam = extract_cover_from_embedding(&space, &emb, b1, b2, 3.0, 2.5).unwrap();
    let rep = verify_cover(&space, b1, b2, &fam);
    assert!(rep.pass && fam.nu > fam.mu);
    println!(
        "extracted from a constant-2 embedding: {} pairs over {} far pairs, nu = {:.3} > mu = {:.3}",
        fam.pairs.len(),
        rep.delta_size,
        fam.nu,
        fam.mu
    );
}
