//! Low-distortion embeddings of finite metric spaces into finite
//! dimensional max-norm coordinates (the computable shadow of c0) and into
//! its nonnegative cone, with exhaustive verification.
//!
//! Every engine comes with a certificate the [`audit`] module replays pair
//! by pair: for a constant lambda, an embedding f satisfies
//! `d(x,y) < max_j |f_j(x) - f_j(y)| <= lambda d(x,y)` for all distinct
//! points. The engines and their constants:
//!
//! * any finite metric space at lambda = 2 (`generic`), and at any
//!   lambda > 1 via finite nets (`net`);
//! * l_p clouds at 2^(1/p) (`lp`);
//! * into the nonnegative cone: lambda = 3 (`generic-plus`), any
//!   lambda > 1 with an eccentricity calibration (`net-plus`),
//!   (2^p + 1)^(1/p) for l_p clouds (`lp-plus`) and 3^(1/p) for clouds
//!   inside the cone (`lp-positive`);
//! * exact isometries for ultrametric spaces (into the cone) and for
//!   branching trees, with bitwise-equal distances;
//! * the positive-part doubling map realizing any c0-style embedding
//!   inside the cone at twice the constant.
//!
//! The building blocks are exposed too: separator functions
//! ([`separator`]), ball-cover certificates with seven providers and a
//! graded strengthening ([`cover`]), block schedules ([`embed`]), and the
//! generators of test families ([`gen`]).
//!
//! See the crate examples for runnable end-to-end demonstrations, and the
//! `c0forge` binary for the file-based pipeline
//! (`gen | embed | verify | prune | sweep | report`).

pub mod audit;
pub mod cli;
pub mod cloud;
pub mod cover;
pub mod embed;
pub mod error;
pub mod exact;
pub mod gen;
pub mod json;
pub mod metric;
pub mod separator;
pub mod tree;

pub use audit::{check_block_bounds, distortion_report, lower_bound_witnesses, DistortionReport};
pub use cloud::LpPointCloud;
pub use cover::{
    extract_cover_from_embedding, graded_cover, graded_cover_plus, phi_net, verify_cover,
    CoverFamily, CoverPair, PhiFunction, Provider,
};
pub use embed::{
    block_functions, block_functions_plus, embed_c0, embed_c0_plus, pos_split, prune,
    BlockSchedule, BlockSpec, Embedding, Target,
};
pub use error::{Error, Result};
pub use exact::{embed_tree, embed_ultrametric, tree_metric_space, SparseEmbedding};
pub use gen::{
    gen_branching_tree, gen_dyadic_shifted, gen_lp_cloud, gen_random_metric, gen_random_tree,
    gen_random_ultrametric, gen_shifted_axes,
};
pub use metric::{
    is_ultrametric, set_gap, set_span, validate_metric, validate_metric_labeled, Ball,
    FiniteMetricSpace,
};
pub use separator::{build_separator, build_separator_plus, SeparatorColumn, SeparatorSpec};
pub use tree::TreeNodeSet;
