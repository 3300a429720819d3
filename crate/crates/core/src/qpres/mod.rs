//! Presented quantum groups, their towers and the symbolic verification suites.

mod esymbol;
mod homogeneous;
mod morphism;
mod presentation;
mod report;
mod suites;
mod tower;

use thiserror::Error;

use crate::ncalg::AlgebraError;

pub use esymbol::{e_symbol, inversion_length};
pub use homogeneous::{
    coaction_invariant, cp_link, cp_samples, last_row_samples, sphere_link, verify_hs_restriction, verify_link,
    LinkKind, TwoTowerLink,
};
pub use morphism::{
    build_delta, build_pi, build_suq, build_theta, build_theta_w, build_w_presentation, naive_sections, suq_level,
    trivial_presentation, AlgebraMorphism,
};
pub use presentation::{NormBound, Presentation, PresentationRef, Relation};
pub use report::{Outcome, ReportItem, Summary, VerificationReport};
pub use suites::{verify_coassoc, verify_square, verify_theta_ideal};
pub use tower::{check_hypothesis_b, gamma_split, suq_tower, w_tower, PresentationTower, SectionMap};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QpresError {
    #[error("level {level} is below the minimum {min}")]
    LevelTooSmall { level: usize, min: usize },
    #[error("tuple {0:?} has repeated entries")]
    RepeatedEntries(Vec<u32>),
    #[error("index {index} is outside 1..={level}")]
    IndexOutOfRange { index: u32, level: usize },
    #[error("relation {0}: {1}")]
    BadRelation(String, String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("tower has no sections")]
    MissingSections,
    #[error("level {level} is outside the window {lo}..={hi}")]
    LevelOutOfRange { level: usize, lo: usize, hi: usize },
    #[error("{0} has no generator image")]
    NotASetMap(String),
    #[error("section identity fails: {0}")]
    SectionIdentity(String),
    #[error("empty tower")]
    EmptyTower,
    #[error("{0}")]
    Tower(String),
}
