//! Exact analysis of Kannan-type contraction conditions on finite metric and
//! generalized (rectangular) metric spaces.
//!
//! The crate answers, with exact rational arithmetic throughout:
//!
//! * does a finite distance table satisfy the metric or the rectangular
//!   axioms ([`space`])?
//! * what is the smallest `λ` for which `S` satisfies the Kannan condition,
//!   and the extended condition through an auxiliary map `T`
//!   ([`contraction`])?
//! * is there an injective `T` that certifies the extended condition below
//!   a given cap ([`contraction::search_certificate`])?
//! * does Picard iteration reach the fixed point, and do its `T`-images obey
//!   the geometric and tail bounds ([`iteration`])?
//!
//! Runnable walkthroughs live in `examples/`, one per capability, and the
//! `kannan` binary exposes the same operations on space-definition files.

pub mod cli;
pub mod contraction;
pub mod document;
mod error;
pub mod fixtures;
pub mod iteration;
pub mod maps;
pub mod rational;
pub mod report;
pub mod space;

pub use contraction::{
    analyze, kannan_lambda, search_certificate, t_kannan_lambda, AnalysisReport, Certificate,
    ExcludedPairs, LambdaBound, LambdaVerdict, SearchSpace,
};
pub use error::{Error, Result};
pub use iteration::{
    fixed_points_exhaustive, picard, verify_bounds, BoundReport, Termination, Trajectory,
};
pub use maps::{realize_family, AnalyticFamily, AuxMap, MapProperties, SelfMap};
pub use rational::Rational;
pub use space::{
    validate_generalized_metric, validate_metric, AxiomViolation, FiniteSpace, PointId, SpaceKind,
};
