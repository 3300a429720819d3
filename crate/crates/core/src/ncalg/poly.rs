use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::Laurent;
use super::symbol::{GenSymbol, Word};
use super::AlgebraError;
use crate::scalar::Scalar;

/// A monomial of tensor degree `d`: one word per tensor leg.
pub type Monomial = Vec<Word>;

/// An element of the `d`-fold algebraic tensor power of the free *-algebra,
/// with coefficients in `Z[q, q^-1]`.
///
/// Values are always normalized: `one` letters are absorbed, any monomial
/// containing `zero` in some leg vanishes, and zero coefficients are pruned.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TensorPoly<T: Scalar> {
    degree: usize,
    terms: BTreeMap<Monomial, Laurent<T>>,
}

/// Apply the 0/1 relations to a single word; `None` means the word is zero.
pub(crate) fn normalize_word(w: &Word) -> Option<Word> {
    let mut out = Vec::with_capacity(w.len());
    for g in w.letters() {
        if g.is_zero() {
            return None;
        }
        if !g.is_one() {
            out.push(g.clone());
        }
    }
    Some(Word(out))
}

impl<T: Scalar> TensorPoly<T> {
    pub fn zero(degree: usize) -> Self {
        assert!(degree >= 1, "tensor degree must be positive");
        TensorPoly { degree, terms: BTreeMap::new() }
    }

    pub fn scalar(c: Laurent<T>, degree: usize) -> Self {
        let mut p = Self::zero(degree);
        p.add_normalized(vec![Word::unit(); degree], c);
        p
    }

    /// The unit `1 ⊗ … ⊗ 1` of the given degree.
    pub fn unit(degree: usize) -> Self {
        Self::scalar(Laurent::one(), degree)
    }

    pub fn generator(g: GenSymbol) -> Self {
        Self::monomial(vec![Word::letter(g)], Laurent::one())
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(vec![w], Laurent::one())
    }

    pub fn monomial(legs: Monomial, c: Laurent<T>) -> Self {
        Self::from_raw(legs.len(), [(legs, c)])
    }

    /// Builds a polynomial from arbitrary (possibly unnormalized) terms.
    ///
    /// Panics if a term's leg count differs from `degree`.
    pub fn from_raw<I>(degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Laurent<T>)>,
    {
        let mut p = Self::zero(degree);
        for (legs, c) in terms {
            assert_eq!(legs.len(), degree, "tensor degree mismatch in term");
            let legs: Option<Vec<Word>> = legs.iter().map(normalize_word).collect();
            if let Some(legs) = legs {
                p.add_normalized(legs, c);
            }
        }
        p
    }

    pub(crate) fn add_normalized(&mut self, legs: Monomial, c: Laurent<T>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&legs) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&legs);
                }
            }
            None => {
                self.terms.insert(legs, c);
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Laurent<T>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[Word]) -> Laurent<T> {
        self.terms.get(m).cloned().unwrap_or_else(Laurent::zero)
    }

    /// The order-greatest term.
    pub fn leading(&self) -> Option<(&Monomial, &Laurent<T>)> {
        self.terms.iter().next_back()
    }

    /// True when every monomial is the unit word in every leg.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|legs| legs.iter().all(Word::is_empty))
    }

    /// Max word length over all legs and terms.
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().flat_map(|l| l.iter().map(Word::len)).max().unwrap_or(0)
    }

    /// Re-applies the 0/1 relations. Values built through this API are already
    /// normalized, so this is the identity on them.
    pub fn normalize(&self) -> Self {
        Self::from_raw(self.degree, self.terms.iter().map(|(l, c)| (l.clone(), c.clone())))
    }

    pub fn scale(&self, c: &Laurent<T>) -> Self {
        let mut out = Self::zero(self.degree);
        if c.is_zero() {
            return out;
        }
        for (legs, v) in &self.terms {
            out.add_normalized(legs.clone(), v * c);
        }
        out
    }

    /// Legwise product. Fails on a degree mismatch.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.degree != rhs.degree {
            return Err(AlgebraError::DegreeMismatch { left: self.degree, right: rhs.degree });
        }
        let mut out = Self::zero(self.degree);
        for (l1, c1) in &self.terms {
            for (l2, c2) in &rhs.terms {
                let legs = l1.iter().zip(l2).map(|(a, b)| a.concat(b)).collect();
                out.add_normalized(legs, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.degree != rhs.degree {
            return Err(AlgebraError::DegreeMismatch { left: self.degree, right: rhs.degree });
        }
        let mut out = self.clone();
        for (legs, c) in &rhs.terms {
            out.add_normalized(legs.clone(), c.clone());
        }
        Ok(out)
    }

    /// Formal adjoint: reverses each word and stars each letter. The formal
    /// `q` is real, so coefficients are unchanged.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.degree);
        for (legs, c) in &self.terms {
            out.add_normalized(legs.iter().map(Word::adjoint).collect(), c.clone());
        }
        out
    }

    /// `self ⊗ rhs`; degrees add.
    pub fn tensor(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.degree + rhs.degree);
        for (l1, c1) in &self.terms {
            for (l2, c2) in &rhs.terms {
                let mut legs = l1.clone();
                legs.extend(l2.iter().cloned());
                out.add_normalized(legs, c1 * c2);
            }
        }
        out
    }

    /// Letters occurring anywhere, unstarred.
    pub fn generators(&self) -> std::collections::BTreeSet<GenSymbol> {
        self.terms
            .keys()
            .flat_map(|legs| legs.iter().flat_map(|w| w.letters().iter().map(GenSymbol::unstarred)))
            .collect()
    }
}

/// Structural equality after normalization.
pub fn poly_equal<T: Scalar>(p: &TensorPoly<T>, r: &TensorPoly<T>) -> bool {
    let (p, r) = (p.normalize(), r.normalize());
    if p.is_zero() && r.is_zero() {
        return true;
    }
    p == r
}

impl<T: Scalar> Add for &TensorPoly<T> {
    type Output = TensorPoly<T>;
    fn add(self, rhs: Self) -> TensorPoly<T> {
        self.try_add(rhs).expect("tensor degree mismatch in addition")
    }
}

impl<T: Scalar> Sub for &TensorPoly<T> {
    type Output = TensorPoly<T>;
    fn sub(self, rhs: Self) -> TensorPoly<T> {
        self.try_add(&-rhs).expect("tensor degree mismatch in subtraction")
    }
}

impl<T: Scalar> Neg for &TensorPoly<T> {
    type Output = TensorPoly<T>;
    fn neg(self) -> TensorPoly<T> {
        TensorPoly { degree: self.degree, terms: self.terms.iter().map(|(l, c)| (l.clone(), -c.clone())).collect() }
    }
}

impl<T: Scalar> Mul for &TensorPoly<T> {
    type Output = TensorPoly<T>;
    fn mul(self, rhs: Self) -> TensorPoly<T> {
        self.try_mul(rhs).expect("tensor degree mismatch in product")
    }
}

fn render_legs(legs: &[Word]) -> String {
    legs.iter().map(Word::to_string).collect::<Vec<_>>().join("(x)")
}

/// Canonical text form, terms in descending monomial order, e.g.
/// `u[1,1](x)u[2,2] - q*u[1,2](x)u[2,1]`.
impl<T: Scalar> fmt::Display for TensorPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (legs, c)) in self.terms.iter().rev().enumerate() {
            // only single-term coefficients lend their sign to the separator
            let neg = c.len() == 1 && c.terms().any(|(_, v)| v.is_negative());
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let coeff = if mag.len() > 1 { format!("({})", mag) } else { mag.to_string() };
            let first_unit = legs[0].is_empty();
            if mag.is_one() {
                write!(f, "{}", render_legs(legs))?;
            } else if first_unit {
                write!(f, "{}", coeff)?;
                if legs.len() > 1 {
                    write!(f, "(x){}", render_legs(&legs[1..]))?;
                }
            } else {
                write!(f, "{}*{}", coeff, render_legs(legs))?;
            }
        }
        Ok(())
    }
}
