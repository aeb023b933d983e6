//! Trapezoidal fuzzy preference relations and least-absolute-deviation
//! priority derivation.
//!
//! The crate is organized bottom-up:
//!
//! - [`trfn`]: trapezoidal fuzzy numbers, magnitude and ranking.
//! - [`prefrel`]: additive and multiplicative relations, consistency, the
//!   scale transform between them.
//! - [`lp`]: a dense two-phase simplex solver.
//! - [`lad`]: LAD utility and weight derivation.
//! - [`aggregate`]: group aggregation of expert relations.
//! - [`ahp`]: a one-layer fuzzy AHP pipeline and baseline weight methods.

#![allow(clippy::needless_range_loop)]

pub mod aggregate;
pub mod ahp;
pub mod error;
pub mod lad;
pub mod lp;
pub mod prefrel;
pub mod trfn;

pub use aggregate::{
    aggregate_relations, aggregate_utilities, verify_bounds, BoundsReport, GroupWeights,
};
pub use ahp::{amm_weights, deviation, gmm_weights, run_ahp, AhpProblem, AhpResult};
pub use error::{Error, Result};
pub use lad::{
    derive_utility, derive_utility_mult, derive_weights, fast_path_consistent, objective_at,
    shift_normalize, Model, SigmaConstraint, UtilityVector, Variant,
};
pub use lp::{LinearProgram, LpSolution, LpStatus, SolveOptions};
pub use prefrel::{
    from_utilities, phi, phi_inv, ConsistencyReport, NeutralElement, NeutralKind, Scale, Trfpr,
    Trmpr,
};
pub use trfn::{rank, MagWeights, Ranking, Trfn};
