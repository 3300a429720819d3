//! Inverse systems of finitely generated abelian groups over a finite
//! window, with declared tail behaviour, and the `lim` / `lim¹`
//! classification feeding the Milnor sequence.

mod builders;
mod classify;
mod tower;

use thiserror::Error;

use crate::abgrp::AbgrpError;

pub use builders::{cp_tower, sphere_tower, su_tower, KTowers};
pub use classify::{
    lim1_classify, lim_classify, milnor_assemble, Lim1Class, MilnorDegree, MilnorResult, MlJustification, ProGroupClass,
};
pub use tower::{GroupTower, TailPattern};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("{0}")]
    Shape(String),
    #[error("tail pattern {pattern} is inconsistent with the window: {reason}")]
    Tail { pattern: String, reason: String },
    #[error("window {lo}..{hi} is outside the tower levels {min}..{max}")]
    Window { lo: usize, hi: usize, min: usize, max: usize },
    #[error(transparent)]
    Abgrp(#[from] AbgrpError),
    #[error("six-term step at level {level}: {reason}")]
    SixTerm { level: usize, reason: String },
    #[error("{0}")]
    Kring(String),
}
