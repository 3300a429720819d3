//! Integral exterior Hopf algebras on odd generators, the branching maps
//! between consecutive ranks, and the graded K-group tower they induce.

mod algebra;
mod morphism;

pub use algebra::{ext_mul, hopf_comul, tensor_mul, ExtAlgebra, ExtElement, ExtTensor, Parity, Subset};
pub use morphism::{branching_morphism, su_k_tower, tensor_map, Boundary, ExtMorphism, KringError};
