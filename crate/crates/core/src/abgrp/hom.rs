use std::fmt;

use super::group::{quotient, FGAbelianGroup};
use super::matrix::Matrix;
use super::snf::{column_span_basis, kernel_basis, lattice_eq, smith_normal_form, solve_with};
use super::AbgrpError;
use crate::Scalar;

/// A homomorphism between groups in their standard generators; column `j`
/// is the image of source generator `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom<T> {
    source: FGAbelianGroup<T>,
    target: FGAbelianGroup<T>,
    matrix: Matrix<T>,
}

impl<T: Scalar> GroupHom<T> {
    /// Checks the shape and that each torsion generator's order kills its image.
    /// Entries are reduced to canonical representatives.
    pub fn new(
        source: FGAbelianGroup<T>,
        target: FGAbelianGroup<T>,
        mut matrix: Matrix<T>,
    ) -> Result<Self, AbgrpError> {
        if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
            return Err(AbgrpError::Shape {
                expected: (target.num_generators(), source.num_generators()),
                found: (matrix.rows(), matrix.cols()),
            });
        }
        for j in 0..matrix.cols() {
            let mut col = matrix.column(j);
            let ord = source.generator_order(j);
            if !ord.is_zero() {
                let scaled: Vec<T> = col.iter().map(|x| x.clone() * ord.clone()).collect();
                let killed = scaled.iter().enumerate().all(|(i, x)| {
                    let d = target.generator_order(i);
                    if d.is_zero() {
                        x.is_zero()
                    } else {
                        (x.clone() % d).is_zero()
                    }
                });
                if !killed {
                    return Err(AbgrpError::NotWellDefined(j));
                }
            }
            target.reduce(&mut col);
            for (i, x) in col.into_iter().enumerate() {
                matrix[(i, j)] = x;
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn zero(source: FGAbelianGroup<T>, target: FGAbelianGroup<T>) -> Self {
        let matrix = Matrix::zeros(target.num_generators(), source.num_generators());
        GroupHom { source, target, matrix }
    }

    pub fn identity(g: FGAbelianGroup<T>) -> Self {
        let matrix = Matrix::identity(g.num_generators());
        GroupHom { source: g.clone(), target: g, matrix }
    }

    pub fn source(&self) -> &FGAbelianGroup<T> {
        &self.source
    }

    pub fn target(&self) -> &FGAbelianGroup<T> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupHom<T>) -> Result<Self, AbgrpError> {
        if first.target != self.source {
            return Err(AbgrpError::GroupMismatch(first.target.to_string(), self.source.to_string()));
        }
        GroupHom::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }

    pub fn negate(&self) -> Self {
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            m.negate_row(i);
        }
        GroupHom::new(self.source.clone(), self.target.clone(), m).expect("negation preserves well-definedness")
    }

    /// Preimage lattice `{x in Z^ns : M x in R_t}` as a generating matrix.
    fn kernel_lattice(&self) -> Matrix<T> {
        let ns = self.source.num_generators();
        let stacked = self.matrix.hstack(&self.target.relation_matrix());
        kernel_basis(&stacked).row_range(0, ns)
    }
}

/// `target / (image + relations)` with the projection map.
pub fn cokernel<T: Scalar>(h: &GroupHom<T>) -> GroupHom<T> {
    let t = h.target();
    let q = quotient(t.num_generators(), &t.relation_matrix().hstack(h.matrix()));
    GroupHom::new(t.clone(), q.group, q.proj).expect("projection onto a quotient is well defined")
}

/// `L / N` for lattices `N ⊆ L ⊆ Z^n`, given by generating columns, with
/// the inclusion of `L / N` into `Z^n / N`.
fn lattice_quotient<T: Scalar>(ambient: &FGAbelianGroup<T>, big: &Matrix<T>, small: &Matrix<T>) -> GroupHom<T> {
    let basis = column_span_basis(big);
    let s = smith_normal_form(&basis);
    let coords: Vec<Vec<T>> =
        (0..small.cols()).map(|j| solve_with(&s, &small.column(j)).expect("sublattice lies in the lattice")).collect();
    let k = basis.cols();
    let rel = Matrix::from_rows_with_cols(coords, k).transpose();
    let q = quotient(k, &rel);
    GroupHom::new(q.group, ambient.clone(), basis.mul(&q.lift)).expect("inclusion of a subgroup is well defined")
}

/// The kernel with its inclusion into the source.
pub fn kernel<T: Scalar>(h: &GroupHom<T>) -> GroupHom<T> {
    let s = h.source();
    lattice_quotient(s, &h.kernel_lattice().hstack(&s.relation_matrix()), &s.relation_matrix())
}

/// The image with its inclusion into the target.
pub fn image<T: Scalar>(h: &GroupHom<T>) -> GroupHom<T> {
    let t = h.target();
    lattice_quotient(t, &h.matrix().hstack(&t.relation_matrix()), &t.relation_matrix())
}

pub fn is_surjective<T: Scalar>(h: &GroupHom<T>) -> bool {
    cokernel(h).target().is_zero()
}

pub fn is_injective<T: Scalar>(h: &GroupHom<T>) -> bool {
    kernel(h).source().is_zero()
}

pub fn is_iso<T: Scalar>(h: &GroupHom<T>) -> bool {
    is_injective(h) && is_surjective(h)
}

pub fn is_torsion_free<T: Scalar>(g: &FGAbelianGroup<T>) -> bool {
    g.is_free()
}

/// `image(incoming) = kernel(outgoing)` as subgroups of the middle group.
pub fn is_exact_at<T: Scalar>(incoming: &GroupHom<T>, outgoing: &GroupHom<T>) -> Result<bool, AbgrpError> {
    if incoming.target() != outgoing.source() {
        return Err(AbgrpError::GroupMismatch(incoming.target().to_string(), outgoing.source().to_string()));
    }
    let mid = incoming.target().relation_matrix();
    let im = incoming.matrix().hstack(&mid);
    let ker = outgoing.kernel_lattice().hstack(&mid);
    Ok(lattice_eq(&im, &ker))
}

impl<T: Scalar> fmt::Display for GroupHom<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {}", self.source, self.target, self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = FGAbelianGroup<i64>;
    type H = GroupHom<i64>;
    type M = Matrix<i64>;

    fn z(r: usize) -> G {
        G::free(r)
    }

    #[test]
    fn times_two() {
        let h = H::new(z(1), z(1), M::from_i64_rows(&[&[2]])).unwrap();
        assert_eq!(cokernel(&h).target(), &G::cyclic(2).unwrap());
        assert!(kernel(&h).source().is_zero());
        assert!(is_injective(&h) && !is_surjective(&h));
    }

    #[test]
    fn zero_and_projection() {
        let h = H::zero(z(3), z(2));
        assert_eq!(cokernel(&h).target(), &z(2));
        assert_eq!(kernel(&h).source(), &z(3));
        let p = H::new(z(4), z(3), M::from_i64_rows(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])).unwrap();
        assert!(cokernel(&p).target().is_zero());
        assert_eq!(kernel(&p).source(), &z(1));
        let k = kernel(&p);
        assert!(p.compose(&k).unwrap().is_zero());
    }

    #[test]
    fn exactness_examples() {
        let id = H::identity(z(1));
        let zero_in = H::zero(G::zero(), z(1));
        let zero_out = H::zero(z(1), G::zero());
        assert!(is_exact_at(&zero_in, &id).unwrap());
        assert!(is_exact_at(&id, &zero_out).unwrap());
        assert!(!is_exact_at(&id, &id).unwrap());
        let two = H::new(z(1), z(1), M::from_i64_rows(&[&[2]])).unwrap();
        let red = H::new(z(1), G::cyclic(2).unwrap(), M::from_i64_rows(&[&[1]])).unwrap();
        assert!(is_exact_at(&two, &red).unwrap());
        assert!(is_exact_at(&id, &red).is_err() || !is_exact_at(&id, &red).unwrap());
    }

    #[test]
    fn torsion_maps() {
        let z2 = G::cyclic(2).unwrap();
        let z4 = G::cyclic(4).unwrap();
        assert!(H::new(z2.clone(), z4.clone(), M::from_i64_rows(&[&[2]])).is_ok());
        assert!(matches!(
            H::new(z2.clone(), z4.clone(), M::from_i64_rows(&[&[1]])),
            Err(AbgrpError::NotWellDefined(0))
        ));
        assert!(H::new(z2.clone(), z(1), M::from_i64_rows(&[&[1]])).is_err());
        let h = H::new(z4.clone(), z2.clone(), M::from_i64_rows(&[&[3]])).unwrap();
        assert_eq!(h.matrix()[(0, 0)], 1);
        assert_eq!(kernel(&h).source(), &z2);
        assert_eq!(image(&h).source(), &z2);
    }

    #[test]
    fn branching_row_is_surjective() {
        let h = H::new(z(2), z(1), M::from_i64_rows(&[&[1, 1]])).unwrap();
        assert!(is_surjective(&h));
        assert!(!is_torsion_free(&"Z (+) Z/3".parse::<G>().unwrap()));
        assert!(is_iso(&H::identity(z(3))));
    }
}
