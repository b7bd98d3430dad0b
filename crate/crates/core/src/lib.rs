//! Construction and verification of logarithmically asymptotically optimal
//! (LAO) tests for M hypotheses on finite alphabets, for one object and for
//! K independent objects.
//!
//! The crate is organized around the pipeline:
//!
//! - [`prob`]: distributions, empirical types, KL divergence, exact
//!   type-class probabilities;
//! - [`projection`]: constrained information projections onto divergence
//!   balls and their complements, with brute-force grid oracles;
//! - [`single`]: the single-object test — feasibility conditions, the M x M
//!   reliability matrix, decision regions, and the classifier;
//! - [`multi`]: composition of per-object tests into the compound test for
//!   K independent objects and its reliability tensor;
//! - [`sim`]: exact and Monte Carlo error probabilities and empirical
//!   error-exponent estimation against the predicted reliabilities.

pub mod error;
pub mod num;
pub mod prob;
pub mod projection;
pub mod sim;
pub mod single;
pub mod multi;

pub use error::Error;
pub use num::{ExtReal, LogBase};
pub use prob::{
    empirical_type, enumerate_types, kl_divergence, type_class_log_probability, type_count,
    Distribution, EmpiricalType, LogFactorials, Sample,
};
pub use projection::{
    inverse_reliability, min_div_in_ball, min_div_in_ball_oracle, min_div_in_complement,
    BallConstraint, ComplementResult, ProjectionResult,
};
pub use single::{
    build_matrix, check_conditions, classify, stein_row, ConditionReport, ConditionViolation,
    DecisionRegions, GivenExponents, HypothesisSet, ReliabilityMatrix, ViolationKind,
};
pub use multi::{
    build_compound, check_conditions_multi, classify_family, compose_tensor, family_c_fill,
    CompoundReliabilityTensor, Family, FamilyCExponents, FamilyLabel, MultiConditionReport,
    MultiObjectSpec,
};
pub use sim::{
    compound_exact_error, compound_monte_carlo_error, exact_error, exact_rejection_probability,
    fit_exponent, fit_exponent_series, monte_carlo_error, ErrorEstimate, EstimateMethod,
    ExponentEstimate, ExponentFit,
};
