//! Ball-cover certificates: for two metric balls, a finite family of set
//! pairs (U_j, V_j) that covers every "far" pair of points across the balls
//! while keeping the gap between U_j and V_j proportionally large.
//!
//! Seven providers certify the property at their characteristic constants:
//!
//! | provider      | constant        | balls        |
//! |---------------|-----------------|--------------|
//! | `generic`     | 2               | any radii    |
//! | `net`         | any lambda > 1  | any radii    |
//! | `lp`          | 2^(1/p)         | any radii    |
//! | `generic_plus`| 3               | equal radii  |
//! | `net_plus`    | lambda > 2 (or > 1 with a calibration phi) | equal radii |
//! | `lp_plus`     | (2^p + 1)^(1/p) | equal radii  |
//! | `lp_positive` | 3^(1/p)         | equal radii  |
//!
//! The `plus` providers feed the positive-cone pipeline: thresholds scale
//! with the single radius r instead of r1 + r2. [`graded`] upgrades any
//! provider's per-ball bound to a per-pair bound by stratifying radii over
//! geometrically inflated scales, and [`extract_cover_from_embedding`]
//! recovers a cover from an already-verified embedding (the converse
//! direction). [`verify_cover`] replays every contract exhaustively.

mod extract;
mod graded;
mod providers;
mod verify;

pub use extract::{extract_cover_from_embedding, phi_from_embedding};
pub use graded::{graded_cover, graded_cover_plus};
pub(crate) use graded::graded_targeted;
pub use providers::{
    generic_cover, generic_cover_plus, lp_cover, lp_cover_plus, lp_positive_cover, net_cover,
    net_cover_plus,
};
pub use verify::{verify_cover, CoverReport};

use crate::cloud::LpPointCloud;
use crate::error::{Error, Result};
use crate::metric::{Ball, FiniteMetricSpace};
use serde::{Deserialize, Serialize};

/// One set pair of a cover; both sides are nonempty point-index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverPair {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

/// Which contract the family certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverVariant {
    /// Per pair: lambda * gap(U_j, V_j) >= nu * scale.
    Plain,
    /// Per covered point pair: lambda * mu * gap(U_j, V_j) >= nu * d(x, y).
    Graded,
}

/// A cover family with its separation certificate. `threshold` is the
/// covered-distance cutoff mu * scale, where scale is r1 + r2 for sum-mode
/// providers and the common radius r for plus-mode providers.
#[derive(Debug, Clone)]
pub struct CoverFamily {
    pub pairs: Vec<CoverPair>,
    pub lambda: f64,
    pub mu: f64,
    pub nu: f64,
    pub variant: CoverVariant,
    pub threshold: f64,
}

impl CoverFamily {
    /// The separation scale (r1 + r2 or r) the plain contract refers to.
    pub fn scale(&self) -> f64 {
        self.threshold / self.mu
    }
}

/// Calibration function for positive-mode embeddings at lambda <= 2:
/// 1-Lipschitz, nonnegative, with d(x,y) <= theta_plus * max(phi(x), phi(y)).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiFunction {
    pub values: Vec<f64>,
    pub theta_plus: f64,
}

impl PhiFunction {
    /// Exhaustively check both calibration inequalities; `None` means valid.
    pub fn check(&self, space: &FiniteMetricSpace) -> Option<String> {
        let n = space.len();
        if self.values.len() != n {
            return Some(format!("phi has {} values for {} points", self.values.len(), n));
        }
        if let Some(v) = self.values.iter().find(|v| **v < 0.0) {
            return Some(format!("phi value {v} is negative"));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let d = space.d(i, j);
                if (self.values[i] - self.values[j]).abs() > d * (1.0 + 1e-12) {
                    return Some(format!("phi not 1-Lipschitz at ({i},{j})"));
                }
                if d > self.theta_plus * self.values[i].max(self.values[j]) {
                    return Some(format!("calibration bound fails at ({i},{j})"));
                }
            }
        }
        None
    }
}

/// Eccentricity calibration over a finite net (all points by default):
/// phi(x) = max over net points z of d(x, z).
pub fn phi_net(space: &FiniteMetricSpace, lambda: f64) -> Result<PhiFunction> {
    let all: Vec<usize> = (0..space.len()).collect();
    phi_net_on(space, lambda, &all)
}

/// As [`phi_net`] over a caller-chosen net.
pub fn phi_net_on(space: &FiniteMetricSpace, lambda: f64, net: &[usize]) -> Result<PhiFunction> {
    if lambda <= 1.0 {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    if space.len() < 2 {
        return Err(Error::InvalidParameter("phi_net needs at least 2 points".into()));
    }
    if net.is_empty() {
        return Err(Error::EmptySet("phi net"));
    }
    let values: Vec<f64> = (0..space.len())
        .map(|x| net.iter().map(|&z| space.d(x, z)).fold(0.0, f64::max))
        .collect();
    let mut theta_min = 0.0f64;
    for i in 0..space.len() {
        for j in (i + 1)..space.len() {
            theta_min = theta_min.max(space.d(i, j) / values[i].max(values[j]));
        }
    }
    if theta_min >= lambda {
        return Err(Error::ThetaInfeasible { theta_min, lambda });
    }
    Ok(PhiFunction {
        values,
        theta_plus: (theta_min.max(1.0) + lambda) / 2.0,
    })
}

/// Single-anchor calibration phi(x) = d(x, anchor), valid with
/// theta_plus = 2 (only useful when lambda > 2).
pub fn phi_anchor(space: &FiniteMetricSpace, anchor: usize) -> PhiFunction {
    PhiFunction {
        values: (0..space.len()).map(|x| space.d(x, anchor)).collect(),
        theta_plus: 2.0,
    }
}

/// Provider kinds, mirroring the CLI `--engine` names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProviderKind {
    Generic,
    Net,
    Lp,
    GenericPlus,
    NetPlus,
    LpPlus,
    LpPositive,
}

/// Declarative provider description (engine kind plus its parameters).
#[derive(Debug, Clone, PartialEq)]
pub struct ProviderSpec {
    pub kind: ProviderKind,
    pub lambda: f64,
    pub p: Option<f64>,
    pub net_fraction: Option<f64>,
}

impl ProviderSpec {
    /// Bind the description to concrete data (the cloud for lp kinds) and
    /// check the lambda is admissible for the kind.
    pub fn resolve(&self, cloud: Option<&LpPointCloud>, has_phi: bool) -> Result<Provider> {
        let need_cloud = || {
            cloud.cloned().ok_or_else(|| {
                Error::InvalidParameter(format!("{:?} provider needs an lp cloud", self.kind))
            })
        };
        let provider = match self.kind {
            ProviderKind::Generic => Provider::Generic,
            ProviderKind::Net => Provider::Net { lambda: self.lambda },
            ProviderKind::Lp => Provider::Lp { cloud: need_cloud()? },
            ProviderKind::GenericPlus => Provider::GenericPlus,
            ProviderKind::NetPlus => Provider::NetPlus { lambda: self.lambda },
            ProviderKind::LpPlus => Provider::LpPlus { cloud: need_cloud()? },
            ProviderKind::LpPositive => Provider::LpPositive { cloud: need_cloud()? },
        };
        if let (Some(p), Some(cloud)) = (self.p, cloud) {
            if p != cloud.p {
                return Err(Error::InvalidParameter(format!(
                    "provider spec says p = {p} but the cloud has p = {}",
                    cloud.p
                )));
            }
        }
        provider.check_lambda(self.lambda, has_phi)?;
        Ok(provider)
    }
}

/// A runnable cover provider. The lp kinds own their point cloud; callers
/// must pass the induced metric space alongside.
#[derive(Debug, Clone)]
pub enum Provider {
    Generic,
    Net { lambda: f64 },
    Lp { cloud: LpPointCloud },
    GenericPlus,
    NetPlus { lambda: f64 },
    LpPlus { cloud: LpPointCloud },
    LpPositive { cloud: LpPointCloud },
}

impl Provider {
    /// The characteristic embedding constant of this provider.
    pub fn lambda(&self) -> f64 {
        match self {
            Provider::Generic => 2.0,
            Provider::Net { lambda } => *lambda,
            Provider::Lp { cloud } => crate::cloud::proot(2.0, cloud.p),
            Provider::GenericPlus => 3.0,
            Provider::NetPlus { lambda } => *lambda,
            Provider::LpPlus { cloud } => {
                crate::cloud::proot(2f64.powf(cloud.p) + 1.0, cloud.p)
            }
            Provider::LpPositive { cloud } => crate::cloud::proot(3.0, cloud.p),
        }
    }

    /// Positive-cone (equal-radius) mode?
    pub fn is_plus(&self) -> bool {
        matches!(
            self,
            Provider::GenericPlus
                | Provider::NetPlus { .. }
                | Provider::LpPlus { .. }
                | Provider::LpPositive { .. }
        )
    }

    pub fn kind(&self) -> ProviderKind {
        match self {
            Provider::Generic => ProviderKind::Generic,
            Provider::Net { .. } => ProviderKind::Net,
            Provider::Lp { .. } => ProviderKind::Lp,
            Provider::GenericPlus => ProviderKind::GenericPlus,
            Provider::NetPlus { .. } => ProviderKind::NetPlus,
            Provider::LpPlus { .. } => ProviderKind::LpPlus,
            Provider::LpPositive { .. } => ProviderKind::LpPositive,
        }
    }

    /// Reject lambdas the provider cannot certify. `has_phi` relaxes the
    /// net_plus range from lambda > 2 to lambda > 1.
    pub fn check_lambda(&self, lambda: f64, has_phi: bool) -> Result<()> {
        let close = |target: f64| (lambda - target).abs() <= 1e-9 * target;
        let ok = match self {
            Provider::Generic => close(2.0),
            Provider::Net { .. } => lambda > 1.0 && close(self.lambda()),
            Provider::Lp { .. } | Provider::LpPlus { .. } | Provider::LpPositive { .. } => {
                close(self.lambda())
            }
            Provider::GenericPlus => close(3.0),
            Provider::NetPlus { .. } => {
                (lambda > 2.0 || (lambda > 1.0 && has_phi)) && close(self.lambda())
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ProviderMismatch(format!(
                "lambda = {lambda} is not admissible for {:?} (constant {})",
                self.kind(),
                self.lambda()
            )))
        }
    }

    /// The nu the provider certifies for a given mu (midpoint of the
    /// admissible open interval).
    pub fn nu(&self, mu: f64) -> Result<f64> {
        let lambda = self.lambda();
        if mu <= lambda {
            return Err(Error::MuTooSmall { mu, min: lambda });
        }
        Ok(match self {
            Provider::Generic => 2.0 * mu - 2.0,
            Provider::GenericPlus => 3.0 * mu - 6.0,
            Provider::Net { .. } | Provider::NetPlus { .. } => (mu + lambda * mu) / 2.0,
            Provider::Lp { cloud } => {
                let p = cloud.p;
                (mu + 2f64.powf(1.0 / p) * (mu.powf(p) - 1.0).powf(1.0 / p)) / 2.0
            }
            Provider::LpPlus { cloud } => {
                let p = cloud.p;
                let cp = (2f64.powf(p) + 1.0).powf(1.0 / p);
                (mu + cp * (mu.powf(p) - 2f64.powf(p)).powf(1.0 / p)) / 2.0
            }
            Provider::LpPositive { cloud } => {
                let p = cloud.p;
                (mu + 3f64.powf(1.0 / p) * (mu.powf(p) - 2.0).powf(1.0 / p)) / 2.0
            }
        })
    }

    /// Run the provider on two balls.
    pub fn cover(
        &self,
        space: &FiniteMetricSpace,
        b1: Ball,
        b2: Ball,
        mu: f64,
    ) -> Result<CoverFamily> {
        match self {
            Provider::Generic => generic_cover(space, b1, b2, mu),
            Provider::Net { lambda } => net_cover(space, b1, b2, mu, *lambda),
            Provider::Lp { cloud } => lp_cover(cloud, b1, b2, mu),
            Provider::GenericPlus => generic_cover_plus(space, b1, b2, mu),
            Provider::NetPlus { lambda } => net_cover_plus(space, b1, b2, mu, *lambda),
            Provider::LpPlus { cloud } => lp_cover_plus(cloud, b1, b2, mu),
            Provider::LpPositive { cloud } => lp_positive_cover(cloud, b1, b2, mu),
        }
    }

    /// The calibration function a provider carries natively: the positive
    /// lp cone calibrates by point norms with theta_plus = 2^(1/p).
    pub fn canonical_phi(&self) -> Option<PhiFunction> {
        match self {
            Provider::LpPositive { cloud } => Some(PhiFunction {
                values: cloud.points.iter().map(|pt| cloud.norm(pt)).collect(),
                theta_plus: 2f64.powf(1.0 / cloud.p),
            }),
            _ => None,
        }
    }
}
