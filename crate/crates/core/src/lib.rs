//! Real analytic automorphisms of the unit interval.
//!
//! This crate constructs strictly monotone real analytic bijections of
//! (-1, 1) with any prescribed derivative at the origin, and provides the
//! machinery to check the construction numerically:
//!
//! * [`expr`] — an immutable expression tree ([`MapExpr`]) over a small set
//!   of odd primitive families, with exact evaluation, exact chain-rule
//!   differentiation, composition, iterated self-composition and monotone
//!   inversion;
//! * [`solver`] — solves the endpoint constraints `b/arctan(b) = a` and
//!   `b/tan(b) = a` and assembles [`build_automorphism`];
//! * [`verify`] — grid-based certification of the automorphism properties,
//!   emitting a machine-readable [`VerificationReport`];
//! * [`series`] — truncated Maclaurin expansions of the primitive families
//!   together with their radius of convergence;
//! * [`counterexamples`] — sequences of injective functions converging
//!   uniformly to non-injective, non-constant limits.

pub mod counterexamples;
pub mod expr;
pub mod sample;
pub mod series;
pub mod solver;
pub mod verify;

mod grid;
mod roots;

pub use counterexamples::{
    injectivity_witness, sup_norm_gap, SeqError, SeqFamily, SeqIndex, SeqKind,
};
pub use expr::{DomainError, ExprError, InvertError, MapExpr, ERF_K_MAX};
pub use sample::{CurveSample, SampleError, SampleMeta};
pub use series::{
    default_order, eval_series, radius, tan_series_coefficients, taylor, SeriesError,
    SeriesExpansion,
};
pub use solver::{
    arctan_ratio, build_automorphism, solve_b_arctan, solve_b_tan, tan_ratio, SolveError,
    SolveResult,
};
pub use verify::{fd_derivative, verify, Check, ToleranceProfile, VerificationReport, VerifyError};
