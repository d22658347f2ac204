//! Sharp constants for l_p point clouds.
//!
//! Three engines, three constants, all best possible:
//!
//! | source      | target   | constant        |
//! |-------------|----------|-----------------|
//! | l_p         | signed   | 2^(1/p)         |
//! | l_p         | cone     | (2^p + 1)^(1/p) |
//! | l_p cone    | cone     | 3^(1/p)         |
//!
//! The upper bounds are constructive (this example runs them); the
//! matching lower bounds come from unit-vector configurations whose norms
//! this example also evaluates: ||e1 + e2||_p = 2^(1/p) and
//! ||e1 + e_m - e_n||_p = 3^(1/p).
//!
//! ```bash
//! cargo run -p c0forge --example lp_constants --release
//! ```

use c0forge::audit::{distortion_report, lower_bound_witnesses};
use c0forge::cloud::proot;
use c0forge::cover::Provider;
use c0forge::embed::{embed_c0, embed_c0_plus};
use c0forge::gen::gen_lp_cloud;

fn main() {
    println!("p     engine        lambda     max_ratio   dim");
    println!("-----------------------------------------------");
    for p in [1.0, 1.5, 2.0, 3.0] {
        let cloud = gen_lp_cloud(p, 6, 18, 5, false).unwrap();
        let space = cloud.to_metric_space().unwrap();
        let lambda = proot(2.0, p);
        let emb = embed_c0(&space, lambda, &Provider::Lp { cloud }, None).unwrap();
        let r = distortion_report(&space, &emb, 1e-9).unwrap();
        assert!(r.pass);
        println!("{p:<5} signed        {lambda:<9.6}  {:<10.6}  {}", r.max_ratio, emb.dim());
    }
    for p in [1.0, 2.0] {
        let cloud = gen_lp_cloud(p, 6, 18, 6, false).unwrap();
        let space = cloud.to_metric_space().unwrap();
        let lambda = proot(2f64.powf(p) + 1.0, p);
        let emb = embed_c0_plus(&space, lambda, &Provider::LpPlus { cloud }, None, None).unwrap();
        let r = distortion_report(&space, &emb, 1e-9).unwrap();
        assert!(r.pass && r.nonneg);
        println!("{p:<5} into cone     {lambda:<9.6}  {:<10.6}  {}", r.max_ratio, emb.dim());
    }
    for p in [1.0, 2.0] {
        let cloud = gen_lp_cloud(p, 6, 18, 7, true).unwrap();
        let space = cloud.to_metric_space().unwrap();
        let lambda = proot(3.0, p);
        // the cone engine calibrates itself by point norms when lambda <= 2
        let emb =
            embed_c0_plus(&space, lambda, &Provider::LpPositive { cloud }, None, None).unwrap();
        let r = distortion_report(&space, &emb, 1e-9).unwrap();
        assert!(r.pass && r.nonneg);
        println!("{p:<5} cone to cone  {lambda:<9.6}  {:<10.6}  {}", r.max_ratio, emb.dim());
    }

    println!();
    println!("sharpness witnesses (computed exactly):");
    let w = lower_bound_witnesses();
    for e in &w.entries {
        println!(
            "  p = {}: ||e1+e2||_p = {} = 2^(1/p); ||e1+e2-e3||_p = {} = 3^(1/p)",
            e.p, e.signed_witness, e.cone_witness
        );
    }
    assert!(w.pass);
}
