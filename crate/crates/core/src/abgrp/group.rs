use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::snf::smith_normal_form;
use super::AbgrpError;
use crate::Scalar;

/// `Z^rank (+) Z/d1 (+) ... (+) Z/dk` with `d1 | d2 | ... | dk`, each `>= 2`.
///
/// The standard generators are ordered torsion first, then free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FGAbelianGroup<T> {
    rank: usize,
    factors: Vec<T>,
}

impl<T: Scalar> FGAbelianGroup<T> {
    pub fn new(rank: usize, factors: Vec<T>) -> Result<Self, AbgrpError> {
        let two = T::one() + T::one();
        if factors.iter().any(|d| *d < two) {
            return Err(AbgrpError::BadFactors("invariant factors must be at least 2".into()));
        }
        if factors.windows(2).any(|w| !(w[1].clone() % w[0].clone()).is_zero()) {
            return Err(AbgrpError::BadFactors("invariant factors must form a divisibility chain".into()));
        }
        Ok(FGAbelianGroup { rank, factors })
    }

    pub fn zero() -> Self {
        FGAbelianGroup { rank: 0, factors: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { rank, factors: Vec::new() }
    }

    pub fn cyclic(d: T) -> Result<Self, AbgrpError> {
        if d.is_zero() {
            Ok(Self::free(1))
        } else if d.abs().is_one() {
            Ok(Self::zero())
        } else {
            Self::new(0, vec![d.abs()])
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn factors(&self) -> &[T] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn num_generators(&self) -> usize {
        self.factors.len() + self.rank
    }

    /// Order of standard generator `i`; zero for free generators.
    pub fn generator_order(&self, i: usize) -> T {
        self.factors.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Relation columns `d_i e_i`, one per torsion generator.
    pub fn relation_matrix(&self) -> Matrix<T> {
        Matrix::diagonal(self.num_generators(), self.factors.len(), &self.factors)
    }

    /// Canonical representative of a coordinate vector: torsion entries in `0..d`.
    pub fn reduce(&self, v: &mut [T]) {
        for (x, d) in v.iter_mut().zip(&self.factors) {
            *x = x.mod_floor(d);
        }
    }
}

/// `Z^n / R Z^k` in invariant-factor form, with the coordinate change.
#[derive(Clone, Debug)]
pub struct Quotient<T> {
    pub group: FGAbelianGroup<T>,
    /// `ngens x n`: standard coordinates of the class of a vector of `Z^n`.
    pub proj: Matrix<T>,
    /// `n x ngens`: a lift of each standard generator to `Z^n`.
    pub lift: Matrix<T>,
}

/// The quotient of `Z^n` by the column lattice of `relations` (`n x k`).
pub fn quotient<T: Scalar>(n: usize, relations: &Matrix<T>) -> Quotient<T> {
    assert_eq!(relations.rows(), n, "relation matrix has the wrong height");
    let s = smith_normal_form(relations);
    let diag = s.diagonal();
    let kept: Vec<usize> = (0..n).filter(|&i| i >= s.rank || !diag[i].is_one()).collect();
    let factors: Vec<T> = kept.iter().filter(|&&i| i < s.rank).map(|&i| diag[i].clone()).collect();
    let rank = n - s.rank;
    let proj = Matrix::from_rows_with_cols(kept.iter().map(|&i| s.u.row(i).to_vec()).collect(), n);
    let lift_rows: Vec<Vec<T>> = (0..n).map(|r| kept.iter().map(|&i| s.u_inv[(r, i)].clone()).collect()).collect();
    let lift = Matrix::from_rows_with_cols(lift_rows, kept.len());
    Quotient { group: FGAbelianGroup { rank, factors }, proj, lift }
}

impl<T: Scalar> fmt::Display for FGAbelianGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        parts.extend(self.factors.iter().map(|d| format!("Z/{}", d)));
        write!(f, "{}", parts.join(" (+) "))
    }
}

/// Parses the rendered form, e.g. `Z^2 (+) Z/2 (+) Z/4`, `Z`, `0`.
/// Summands may come in any order and are brought to invariant-factor form.
impl<T: Scalar> FromStr for FGAbelianGroup<T> {
    type Err = AbgrpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut rank = 0usize;
        let mut orders = Vec::new();
        for part in s.split("(+)").map(str::trim) {
            let bad = || AbgrpError::Parse(format!("bad summand '{}'", part));
            if part == "Z" {
                rank += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                rank += r.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d: i64 = d.parse().map_err(|_| bad())?;
                if d < 1 {
                    return Err(bad());
                }
                orders.push(T::from_int(d));
            } else {
                return Err(bad());
            }
        }
        let n = orders.len();
        let q = quotient(n, &Matrix::diagonal(n, n, &orders));
        Ok(FGAbelianGroup { rank, factors: q.group.factors })
    }
}
