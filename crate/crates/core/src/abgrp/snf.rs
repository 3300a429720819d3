use super::matrix::Matrix;
use crate::Scalar;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, its nonzero
/// entries positive and forming a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf<T> {
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inv: Matrix<T>,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl<T: Scalar> Snf<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Work<T> {
    a: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

impl<T: Scalar> Work<T> {
    fn row_add(&mut self, dst: usize, src: usize, k: &T) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k.clone());
    }

    fn col_add(&mut self, dst: usize, src: usize, k: &T) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k.clone());
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Reduces row and column `t` against the pivot; true when both are clear.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clear = true;
        for i in t + 1..self.a.rows() {
            if !self.a[(i, t)].is_zero() {
                let q = nearest_quotient(&self.a[(i, t)], &self.a[(t, t)]);
                self.row_add(i, t, &-q);
                clear &= self.a[(i, t)].is_zero();
            }
        }
        for j in t + 1..self.a.cols() {
            if !self.a[(t, j)].is_zero() {
                let q = nearest_quotient(&self.a[(t, j)], &self.a[(t, t)]);
                self.col_add(j, t, &-q);
                clear &= self.a[(t, j)].is_zero();
            }
        }
        clear
    }

    /// Moves the smallest nonzero entry of the block from `(t, t)` on to the pivot.
    fn select_pivot(&mut self, t: usize) -> bool {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let a = &self.a;
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[(i, j)].is_zero())
            .min_by_key(|&(i, j)| a[(i, j)].abs());
        let Some((pi, pj)) = pivot else { return false };
        self.row_swap(t, pi);
        self.col_swap(t, pj);
        true
    }
}

/// `q` with `|a - q p| <= |p| / 2`; keeps remainders and transforms small.
fn nearest_quotient<T: Scalar>(a: &T, p: &T) -> T {
    let q = a.clone() / p.clone();
    let r = a.clone() - q.clone() * p.clone();
    let two = T::one() + T::one();
    if r.abs() * two <= p.abs() {
        q
    } else if r.is_negative() == p.is_negative() {
        q + T::one()
    } else {
        q - T::one()
    }
}

/// Smith normal form by gcd-style elimination.
pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> Snf<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: Matrix::identity(rows),
        u_inv: Matrix::identity(rows),
        v: Matrix::identity(cols),
        v_inv: Matrix::identity(cols),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        if !w.select_pivot(t) {
            break;
        }
        loop {
            if !w.clear_cross(t) {
                w.select_pivot(t);
                continue;
            }
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(w.a[(i, j)].clone() % w.a[(t, t)].clone()).is_zero());
            match bad {
                Some((i, _)) => w.row_add(t, i, &T::one()),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.row_negate(t);
        }
        rank = t + 1;
    }
    Snf { u: w.u, u_inv: w.u_inv, d: w.a, v: w.v, v_inv: w.v_inv, rank }
}

/// A basis (as columns) of the lattice spanned by the columns of `g`.
pub fn column_span_basis<T: Scalar>(g: &Matrix<T>) -> Matrix<T> {
    let s = smith_normal_form(g);
    let mut b = s.u_inv.columns(0, s.rank);
    for (i, d) in s.diagonal().iter().enumerate() {
        for r in 0..b.rows() {
            b[(r, i)] = b[(r, i)].clone() * d.clone();
        }
    }
    b
}

/// A basis (as columns) of the integer kernel of `m`.
pub fn kernel_basis<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let s = smith_normal_form(m);
    s.v.columns(s.rank, m.cols())
}

/// An integer solution of `b · x = v`, if one exists.
pub fn solve<T: Scalar>(b: &Matrix<T>, v: &[T]) -> Option<Vec<T>> {
    solve_with(&smith_normal_form(b), v)
}

pub(crate) fn solve_with<T: Scalar>(s: &Snf<T>, v: &[T]) -> Option<Vec<T>> {
    let uv = s.u.mul_vec(v);
    let mut y = vec![T::zero(); s.v.rows()];
    for (i, c) in uv.iter().enumerate() {
        if i < s.rank {
            let d = &s.d[(i, i)];
            if !(c.clone() % d.clone()).is_zero() {
                return None;
            }
            y[i] = c.clone() / d.clone();
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// Whether every column of `a` lies in the column lattice of `b`.
pub fn lattice_contains<T: Scalar>(b: &Matrix<T>, a: &Matrix<T>) -> bool {
    let s = smith_normal_form(b);
    (0..a.cols()).all(|j| solve_with(&s, &a.column(j)).is_some())
}

/// Whether the column lattices of `a` and `b` coincide.
pub fn lattice_eq<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> bool {
    lattice_contains(a, b) && lattice_contains(b, a)
}
