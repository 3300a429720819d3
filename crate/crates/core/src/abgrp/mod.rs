//! Finitely generated abelian groups, their homomorphisms, exactness and
//! forced deduction on six-term sequences.

mod extension;
mod group;
mod hom;
mod matrix;
mod sixterm;
mod snf;

use thiserror::Error;

pub use extension::{direct_sum, solve_extension, AmbiguousReport, Extension, SplitExtension};
pub use group::{quotient, FGAbelianGroup, Quotient};
pub use hom::{cokernel, image, is_exact_at, is_injective, is_iso, is_surjective, is_torsion_free, kernel, GroupHom};
pub use matrix::Matrix;
pub use sixterm::{
    solve_sixterm, MapProperty, MapSlot, NodeSlot, SixTerm, SixTermFailure, SixTermSolution, UnderdeterminedReport,
    DEFAULT_LABELS,
};
pub use snf::{column_span_basis, kernel_basis, lattice_contains, lattice_eq, smith_normal_form, solve, Snf};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AbgrpError {
    #[error("{0}")]
    BadFactors(String),
    #[error("matrix is {found:?}, expected {expected:?}")]
    Shape { expected: (usize, usize), found: (usize, usize) },
    #[error("image of torsion generator {0} is not killed by its order")]
    NotWellDefined(usize),
    #[error("groups differ: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("{0}")]
    Parse(String),
}
