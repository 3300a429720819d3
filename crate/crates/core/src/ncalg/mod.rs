//! Free *-algebras over `Z[q, q^-1]`: tensor powers, substitution
//! homomorphisms, and bounded rewriting against oriented relations.

mod laurent;
mod poly;
mod rewrite;
mod subst;
mod symbol;

pub use laurent::Laurent;
pub use poly::{poly_equal, Monomial, TensorPoly};
pub use rewrite::{
    reduce, reduce_legwise, replay_trace, ReductionOutcome, ReductionStatus, RewriteRule, RuleSet, TraceStep,
    DEFAULT_STEP_LIMIT,
};
pub use subst::{Leg, Substitution};
pub use symbol::{GenSymbol, Word};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("tensor degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("generator `{0}` has no assigned image")]
    Unassigned(String),
    #[error("leg {leg} is not valid for tensor degree {degree}")]
    IllegalLeg { leg: usize, degree: usize },
    #[error("relation `{relation}` has non-invertible leading coefficient {coefficient}")]
    NonUnitLeading { relation: String, coefficient: String },
    #[error("relation `{0}` normalizes to zero")]
    ZeroRelation(String),
    #[error("relation `{0}` is a nonzero scalar")]
    ScalarRelation(String),
}
