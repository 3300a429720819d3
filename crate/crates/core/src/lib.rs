//! Symbolic verification and exact K-theory for the tower of quantum groups
//! `C(SU_q(n))` and its homogeneous spaces.
//!
//! The numeric layer is generic over an exact integer [`Scalar`]; the aliases
//! below fix it to `i64`, which covers every computation the suites run.

pub mod abgrp;
pub mod kring;
pub mod ncalg;
pub mod qpres;
pub mod scalar;
pub mod towers;

pub use scalar::Scalar;

/// Laurent polynomials in `q` over `i64`.
pub type LaurentInt = ncalg::Laurent<i64>;
/// Noncommutative tensor polynomials over `Z[q, q^-1]`.
pub type Poly = ncalg::TensorPoly<i64>;
pub type Rule = ncalg::RewriteRule<i64>;
pub type Rules = ncalg::RuleSet<i64>;

pub type IntMatrix = abgrp::Matrix<i64>;
pub type BigMatrix = abgrp::Matrix<num_bigint::BigInt>;
pub type Group = abgrp::FGAbelianGroup<i64>;
pub type Hom = abgrp::GroupHom<i64>;
