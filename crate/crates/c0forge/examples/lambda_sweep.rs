//! Dimension against the distortion constant on the shifted-axes family.
//!
//! The family {0, e0} U {n e_n, e0 + n e_n : n <= N} inside l_1 is locally
//! finite, so any lambda > 1 is feasible for its truncations even though
//! no single embedding of the infinite space achieves lambda = 1 in
//! signed coordinates (and nothing below 2 in the cone). The sweep shows
//! the price: columns accumulate as lambda drops toward 1.
//!
//! ```bash
//! cargo run -p c0forge --example lambda_sweep --release
//! ```

use c0forge::audit::distortion_report;
use c0forge::cover::Provider;
use c0forge::embed::{embed_c0, prune};
use c0forge::gen::{gen_dyadic_shifted, gen_shifted_axes};

fn main() {
    for (name, space) in [
        ("shifted-axes N=6", gen_shifted_axes(6).unwrap()),
        ("dyadic depth 3", gen_dyadic_shifted(3).unwrap()),
    ] {
        println!("{name} ({} points)", space.len());
        println!("lambda  dim   pruned  max_ratio");
        for lambda in [1.05, 1.1, 1.25, 1.5, 2.0] {
            let provider = if lambda == 2.0 {
                Provider::Generic
            } else {
                Provider::Net { lambda }
            };
            let emb = embed_c0(&space, lambda, &provider, None).unwrap();
            let small = prune(&space, &emb);
            let report = distortion_report(&space, &small, 1e-9).unwrap();
            assert!(report.pass);
            println!(
                "{lambda:<7} {:<5} {:<7} {:.9}",
                emb.dim(),
                small.dim(),
                report.max_ratio
            );
        }
        println!();
    }
}
