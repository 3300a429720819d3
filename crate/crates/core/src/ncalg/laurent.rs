use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// A Laurent polynomial in a formal variable `q` with exact integer
/// coefficients. Zero coefficients are never stored, so structural equality
/// is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Laurent<T: Scalar> {
    coeffs: BTreeMap<i64, T>,
}

impl<T: Scalar> Laurent<T> {
    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: T, exp: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Laurent { coeffs }
    }

    pub fn q() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// `(-q)^k`, the building block of the E-symbols.
    pub fn neg_q_pow(k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { T::one() } else { -T::one() };
        Self::monomial(sign, k)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, T)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: i64, c: T) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(T::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &T)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient as a plain integer if no power of `q` occurs.
    pub fn as_constant(&self) -> Option<T> {
        match self.coeffs.len() {
            0 => Some(T::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn has_q(&self) -> bool {
        self.coeffs.keys().any(|e| *e != 0)
    }

    /// Units of `Z[q, q^-1]` are exactly `±q^k`; returns `(±1, k)`.
    pub fn as_unit(&self) -> Option<(T, i64)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (e, c) = self.coeffs.iter().next()?;
        if c.abs().is_one() {
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        self.as_unit().map(|(s, e)| Self::monomial(s, -e))
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { coeffs: self.coeffs.iter().map(|(e, v)| (*e, v.clone() * c.clone())).collect() }
    }
}

impl<T: Scalar> Zero for Laurent<T> {
    fn zero() -> Self {
        Laurent { coeffs: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> One for Laurent<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Scalar> Add for Laurent<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<'a, T: Scalar> Add<&'a Laurent<T>> for &'a Laurent<T> {
    type Output = Laurent<T>;
    fn add(self, rhs: Self) -> Laurent<T> {
        let mut out = self.clone();
        out += rhs.clone();
        out
    }
}

impl<T: Scalar> AddAssign for Laurent<T> {
    fn add_assign(&mut self, rhs: Self) {
        for (e, c) in rhs.coeffs {
            self.add_term(e, c);
        }
    }
}

impl<T: Scalar> SubAssign for Laurent<T> {
    fn sub_assign(&mut self, rhs: Self) {
        for (e, c) in rhs.coeffs {
            self.add_term(e, -c);
        }
    }
}

impl<T: Scalar> Sub for Laurent<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<T: Scalar> Neg for Laurent<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Laurent { coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<'a, T: Scalar> Mul<&'a Laurent<T>> for &'a Laurent<T> {
    type Output = Laurent<T>;
    fn mul(self, rhs: Self) -> Laurent<T> {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Mul for Laurent<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

/// Renders in descending powers of `q`, e.g. `q^2 - 1 + 3*q^-1`.
/// A single-term value never needs parentheses in product position.
impl<T: Scalar> fmt::Display for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{}*q", mag)?,
                (e, true) => write!(f, "q^{}", e)?,
                (e, false) => write!(f, "{}*q^{}", mag, e)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type L = Laurent<i64>;

    #[test]
    fn unit_cancellation() {
        let a = L::q();
        let b = L::monomial(1, -1);
        assert_eq!(&a * &b, L::one());
        assert_eq!(L::monomial(-1, 3).inverse(), Some(L::monomial(-1, -3)));
        assert_eq!(L::monomial(2, 0).as_unit(), None);
        assert_eq!((L::one() + L::q()).as_unit(), None);
    }

    #[test]
    fn neg_q_powers() {
        assert_eq!(L::neg_q_pow(0), L::one());
        assert_eq!(L::neg_q_pow(1), L::monomial(-1, 1));
        assert_eq!(L::neg_q_pow(2), L::monomial(1, 2));
        assert_eq!(L::neg_q_pow(-1), L::monomial(-1, -1));
    }

    #[test]
    fn display() {
        assert_eq!(L::from_terms([(2, 1), (0, -1), (-1, 3)]).to_string(), "q^2 - 1 + 3*q^-1");
        assert_eq!(L::monomial(-1, 1).to_string(), "-q");
        assert_eq!(L::zero().to_string(), "0");
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = L::q() - L::q();
        assert!(p.is_zero());
        assert_eq!(p, L::zero());
    }
}
