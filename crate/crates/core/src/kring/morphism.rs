use thiserror::Error;

use super::algebra::{ext_mul, ExtAlgebra, ExtElement, ExtTensor, Parity, Subset};
use crate::abgrp::{is_surjective, FGAbelianGroup, GroupHom, Matrix};
use crate::towers::{GroupTower, TailPattern, TowerError};
use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KringError {
    #[error("level {0} is below 2")]
    LevelTooSmall(usize),
    #[error("image of r{0} lies in the wrong algebra")]
    WrongAlgebra(usize),
    #[error("morphism does not preserve parity")]
    NotGraded,
    #[error("{0}")]
    Tower(#[from] TowerError),
    #[error("branching matrix {0} is not surjective")]
    NotSurjective(String),
}

/// How the trivial-representation terms `r_0` and `r_{n-1}` are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Boundary {
    /// They contribute nothing in odd degree.
    #[default]
    Zero,
    /// They are read as the ring unit; breaks the grading.
    LiteralUnit,
}

/// An algebra map determined by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtMorphism<T> {
    source: ExtAlgebra,
    target: ExtAlgebra,
    images: Vec<ExtElement<T>>,
}

impl<T: Scalar> ExtMorphism<T> {
    pub fn new(source: ExtAlgebra, target: ExtAlgebra, images: Vec<ExtElement<T>>) -> Result<Self, KringError> {
        assert_eq!(images.len(), source.num_generators(), "one image per generator");
        if let Some(i) = images.iter().position(|e| e.algebra() != target) {
            return Err(KringError::WrongAlgebra(i + 1));
        }
        Ok(ExtMorphism { source, target, images })
    }

    pub fn source(&self) -> ExtAlgebra {
        self.source
    }

    pub fn target(&self) -> ExtAlgebra {
        self.target
    }

    pub fn image(&self, i: usize) -> &ExtElement<T> {
        &self.images[i - 1]
    }

    /// Every generator goes to an odd element or zero.
    pub fn is_graded(&self) -> bool {
        self.images.iter().all(|e| e.is_zero() || e.parity() == Some(Parity::Odd))
    }

    /// The image of a basis monomial: the ordered product of generator images.
    pub fn apply_basis(&self, s: Subset) -> ExtElement<T> {
        let mut acc = ExtElement::one(self.target);
        for b in 0..64u32 {
            if s >> b & 1 == 1 {
                acc = ext_mul(&acc, &self.images[b as usize]);
            }
        }
        acc
    }

    pub fn apply(&self, x: &ExtElement<T>) -> ExtElement<T> {
        assert_eq!(x.algebra(), self.source, "algebra mismatch");
        x.coords().iter().fold(ExtElement::zero(self.target), |acc, (&s, c)| acc.add(&self.apply_basis(s).scale(c)))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ExtMorphism<T>) -> Result<Self, KringError> {
        if first.target != self.source {
            return Err(KringError::WrongAlgebra(0));
        }
        ExtMorphism::new(first.source, self.target, first.images.iter().map(|e| self.apply(e)).collect())
    }

    fn matrix_on(&self, src: &[Subset], tgt: &[Subset]) -> Matrix<T> {
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (j, &s) in src.iter().enumerate() {
            let img = self.apply_basis(s);
            for (i, &t) in tgt.iter().enumerate() {
                m[(i, j)] = img.coefficient(t);
            }
        }
        m
    }

    /// The matrix on one parity, in the ordered subset bases.
    pub fn induced_matrix(&self, p: Parity) -> Result<Matrix<T>, KringError> {
        if !self.is_graded() {
            return Err(KringError::NotGraded);
        }
        Ok(self.matrix_on(&self.source.basis_of(p), &self.target.basis_of(p)))
    }

    /// The matrix on the full basis; defined for ungraded maps too.
    pub fn full_matrix(&self) -> Matrix<T> {
        self.matrix_on(&self.source.basis(), &self.target.basis())
    }
}

/// `f ⊗ f` on `Λ ⊗ Λ`.
pub fn tensor_map<T: Scalar>(f: &ExtMorphism<T>, t: &ExtTensor<T>) -> ExtTensor<T> {
    let mut out = ExtTensor::zero(f.target);
    for (&(a, b), c) in t.coords() {
        let (fa, fb) = (f.apply_basis(a), f.apply_basis(b));
        let terms = fa
            .coords()
            .iter()
            .flat_map(|(&x, cx)| fb.coords().iter().map(move |(&y, cy)| ((x, y), cx.clone() * cy.clone() * c.clone())));
        out = out.add(&ExtTensor::from_coords(f.target, terms));
    }
    out
}

/// Restriction `Λ(level n) → Λ(level n-1)`: `r_i ↦ r_i + r_{i-1}`, with the
/// out-of-range terms `r_0`, `r_{n-1}` handled per `boundary`.
pub fn branching_morphism<T: Scalar>(n: usize, boundary: Boundary) -> Result<ExtMorphism<T>, KringError> {
    if n < 2 {
        return Err(KringError::LevelTooSmall(n));
    }
    let (src, tgt) = (ExtAlgebra::new(n), ExtAlgebra::new(n - 1));
    let term = |k: usize| -> ExtElement<T> {
        if (1..=tgt.num_generators()).contains(&k) {
            ExtElement::generator(tgt, k)
        } else {
            match boundary {
                Boundary::Zero => ExtElement::zero(tgt),
                Boundary::LiteralUnit => ExtElement::one(tgt),
            }
        }
    };
    let images = (1..n).map(|i| term(i).add(&term(i - 1))).collect();
    ExtMorphism::new(src, tgt, images)
}

/// The K-group towers of `SU(n)`, `n = 2..=n_max`: even parts as `K_0`,
/// odd parts as `K_1`, with branching-induced maps. Each map is checked
/// surjective before the towers are returned.
pub fn su_k_tower<T: Scalar>(n_max: usize) -> Result<(GroupTower<T>, GroupTower<T>), KringError> {
    if n_max < 2 {
        return Err(KringError::LevelTooSmall(n_max));
    }
    let group = |n: usize, p: Parity| FGAbelianGroup::free(ExtAlgebra::new(n).basis_of(p).len());
    let mut parts = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        let groups: Vec<_> = (2..=n_max).map(|n| group(n, p)).collect();
        let mut maps = Vec::new();
        for n in 3..=n_max {
            let m = branching_morphism::<T>(n, Boundary::Zero)?.induced_matrix(p)?;
            let h = GroupHom::new(group(n, p), group(n - 1, p), m).map_err(TowerError::from)?;
            if !is_surjective(&h) {
                return Err(KringError::NotSurjective(format!("level {} {:?}", n, p)));
            }
            maps.push(h);
        }
        let name = match p {
            Parity::Even => "K0(SU(n))",
            Parity::Odd => "K1(SU(n))",
        };
        parts.push(GroupTower::new(name, 2, groups, maps, Some(TailPattern::RankDoubling))?);
    }
    let k1 = parts.pop().expect("two parities");
    let k0 = parts.pop().expect("two parities");
    Ok((k0, k1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kring::hopf_comul;

    type E = ExtElement<i64>;

    #[test]
    fn branching_examples() {
        let b3 = branching_morphism::<i64>(3, Boundary::Zero).unwrap();
        let t = ExtAlgebra::new(2);
        assert_eq!(b3.image(1), &E::generator(t, 1));
        assert_eq!(b3.image(2), &E::generator(t, 1));
        let b4 = branching_morphism::<i64>(4, Boundary::Zero).unwrap();
        assert_eq!(b4.image(2).to_string(), "r1 + r2");
        let b2 = branching_morphism::<i64>(2, Boundary::Zero).unwrap();
        assert!(b2.image(1).is_zero());
        assert!(branching_morphism::<i64>(1, Boundary::Zero).is_err());
    }

    #[test]
    fn induced_matrices_at_three() {
        let b3 = branching_morphism::<i64>(3, Boundary::Zero).unwrap();
        assert_eq!(b3.induced_matrix(Parity::Odd).unwrap(), Matrix::from_i64_rows(&[&[1, 1]]));
        assert_eq!(b3.induced_matrix(Parity::Even).unwrap(), Matrix::from_i64_rows(&[&[1, 0]]));
        assert_eq!(b3.apply_basis(0), E::one(ExtAlgebra::new(2)));
    }

    #[test]
    fn literal_unit_is_ungraded() {
        let b = branching_morphism::<i64>(3, Boundary::LiteralUnit).unwrap();
        assert!(!b.is_graded());
        assert_eq!(b.induced_matrix(Parity::Odd), Err(KringError::NotGraded));
        assert_eq!(b.full_matrix().rows(), 2);
    }

    #[test]
    fn branching_is_hopf() {
        for n in 2..=6 {
            let b = branching_morphism::<i64>(n, Boundary::Zero).unwrap();
            for i in 1..n {
                let r = E::generator(ExtAlgebra::new(n), i);
                assert_eq!(tensor_map(&b, &hopf_comul(&r)), hopf_comul(&b.apply(&r)));
            }
        }
    }

    #[test]
    fn su_tower_ranks() {
        let (k0, k1) = su_k_tower::<i64>(5).unwrap();
        for n in 2..=5 {
            assert_eq!(k0.group(n).unwrap().rank(), 1 << (n - 2));
            assert_eq!(k1.group(n).unwrap().rank(), 1 << (n - 2));
        }
    }
}
