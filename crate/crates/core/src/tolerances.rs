//! Numerical tolerances shared across the crate.

use serde::{Deserialize, Serialize};

/// Interval-endpoint sliver half-width and shift-retry offset.
pub const TAU: f64 = 1e-9;
/// Largest dimension handled by the dense eigensolver.
pub const DEFAULT_DENSE_CAP: usize = 4000;
/// Residual bound `||Ax - lambda x||` for returned eigenpairs.
pub const RESIDUAL_BOUND: f64 = 1e-8;
/// Two eigenvalues closer than this are treated as one eigenspace.
pub const MULTIPLICITY_GAP: f64 = 1e-8;
/// A Sturm pivot below `BREAKDOWN * max(1, ||T||)` triggers shift retries.
pub const BREAKDOWN: f64 = 1e-12;
/// Additive slack for decay bounds.
pub const DECAY_ABS: f64 = 1e-10;
/// Relative slack for ratio chains.
pub const RATIO_REL: f64 = 1e-10;
/// Endpoint equality in the principal-vector classification.
pub const ENDPOINT_EQ: f64 = 1e-9;
/// Noise allowed on strict comparisons between Perron-vector entries.
pub const STRICT_NOISE: f64 = 1e-12;
/// Slack for interlacing comparisons between eigenvalue sequences.
pub const INTERLACING: f64 = 1e-10;

/// The tolerance block recorded in every persisted output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub tau: f64,
    pub residual_bound: f64,
    pub multiplicity_gap: f64,
    pub breakdown: f64,
    pub decay_abs: f64,
    pub ratio_rel: f64,
    pub endpoint_eq: f64,
    pub interlacing: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tau: TAU,
            residual_bound: RESIDUAL_BOUND,
            multiplicity_gap: MULTIPLICITY_GAP,
            breakdown: BREAKDOWN,
            decay_abs: DECAY_ABS,
            ratio_rel: RATIO_REL,
            endpoint_eq: ENDPOINT_EQ,
            interlacing: INTERLACING,
        }
    }
}
