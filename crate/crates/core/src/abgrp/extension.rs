use serde::Serialize;

use super::group::{quotient, FGAbelianGroup};
use super::hom::GroupHom;
use super::matrix::Matrix;
use crate::Scalar;

/// A short exact sequence `0 -> sub -> ? -> quotient -> 0` with unknown middle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension<T> {
    pub sub: FGAbelianGroup<T>,
    pub quotient: FGAbelianGroup<T>,
}

/// The extension problem could not be decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmbiguousReport {
    pub sub: String,
    pub quotient: String,
    pub reason: String,
}

/// A split middle term with its structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitExtension<T> {
    pub middle: FGAbelianGroup<T>,
    pub inclusion: GroupHom<T>,
    pub projection: GroupHom<T>,
}

/// `a (+) b` with the inclusion of `a` and the projection onto `b`.
pub fn direct_sum<T: Scalar>(a: &FGAbelianGroup<T>, b: &FGAbelianGroup<T>) -> SplitExtension<T> {
    let (na, nb) = (a.num_generators(), b.num_generators());
    let (ra, rb) = (a.relation_matrix(), b.relation_matrix());
    let mut rel = Matrix::zeros(na + nb, ra.cols() + rb.cols());
    for i in 0..na {
        for j in 0..ra.cols() {
            rel[(i, j)] = ra[(i, j)].clone();
        }
    }
    for i in 0..nb {
        for j in 0..rb.cols() {
            rel[(na + i, ra.cols() + j)] = rb[(i, j)].clone();
        }
    }
    let q = quotient(na + nb, &rel);
    let incl = q.proj.columns(0, na);
    let proj = q.lift.row_range(na, na + nb);
    SplitExtension {
        middle: q.group.clone(),
        inclusion: GroupHom::new(a.clone(), q.group.clone(), incl).expect("summand inclusion is well defined"),
        projection: GroupHom::new(q.group, b.clone(), proj).expect("summand projection is well defined"),
    }
}

/// A free quotient forces the split extension `sub (+) quotient`.
pub fn solve_extension<T: Scalar>(e: &Extension<T>) -> Result<SplitExtension<T>, AmbiguousReport> {
    if e.quotient.is_free() {
        Ok(direct_sum(&e.sub, &e.quotient))
    } else {
        Err(AmbiguousReport {
            sub: e.sub.to_string(),
            quotient: e.quotient.to_string(),
            reason: "quotient has torsion; extension not classified".into(),
        })
    }
}
