//! Gaussian local limit theorem toolkit.
//!
//! Densities with respect to the standard Gaussian measure are represented
//! by their Wiener chaos (Hermite) expansions. The crate provides the
//! expansion algebra, quadrature, a corpus of Gaussian mixtures with exact
//! coefficients, and the engine that measures `L¹(μ)` distances of
//! normalized sums to the Gaussian against the explicit bounds.

// `!(x > a)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chaos;
pub mod corpus;
pub mod error;
pub mod hermite;
pub mod integrate;
pub mod llt;
#[cfg(any(test, feature = "oracles"))]
pub mod oracle;

pub use chaos::{exponential_vector, wick_power, wick_product, ChaosEvaluator, ChaosExpansion};
pub use corpus::{GaussianMixtureLaw, MixtureComponent, MomentCheck};
pub use error::{Error, Result};
pub use hermite::{
    gauss_hermite_rule, hermite_eval, multi_hermite_eval, multiindex_iter, tensor_rule, MultiIndex,
    QuadratureRule,
};
pub use integrate::{
    l1_distance_to_one, lp_norm, tv_distance, Evaluator, IntegralEstimate, Integrator,
    QuadratureSpec,
};
pub use llt::{run_llt_sweep, Experiment, ExperimentReport, LltConfig, Status};
