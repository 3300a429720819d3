use std::collections::BTreeMap;
use std::fmt;

use crate::Scalar;

/// A set of generator indices `1..=63`, bit `i-1` standing for `r_i`.
pub type Subset = u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(s: Subset) -> Parity {
        if s.count_ones().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

fn elements(s: Subset) -> impl Iterator<Item = u32> {
    (0..64).filter(move |b| s >> b & 1 == 1).map(|b| b + 1)
}

/// `(-1)^{#{(a, b) : a in x, b in y, a > b}}` as a boolean "negative".
fn merge_sign_negative(x: Subset, y: Subset) -> bool {
    let mut count = 0u32;
    for b in elements(y) {
        count += (x >> b).count_ones();
    }
    count % 2 == 1
}

/// `Λ_Z(r_1, ..., r_{n-1})` with all generators odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtAlgebra {
    n: usize,
}

impl ExtAlgebra {
    /// Panics for `n = 0` or more than 63 generators.
    pub fn new(n: usize) -> Self {
        assert!((1..=64).contains(&n), "exterior algebra level must be in 1..=64");
        ExtAlgebra { n }
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.n - 1
    }

    pub fn rank(&self) -> usize {
        1 << self.num_generators()
    }

    /// All subsets ordered by cardinality, then lexicographically.
    pub fn basis(&self) -> Vec<Subset> {
        let mut b: Vec<Subset> = (0..self.rank() as u64).collect();
        b.sort_by_key(|&s| (s.count_ones(), elements(s).collect::<Vec<_>>()));
        b
    }

    pub fn basis_of(&self, p: Parity) -> Vec<Subset> {
        self.basis().into_iter().filter(|&s| Parity::of(s) == p).collect()
    }

    pub fn contains(&self, s: Subset) -> bool {
        s < self.rank() as u64
    }
}

/// An element of an exterior algebra, as subset coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElement<T> {
    algebra: ExtAlgebra,
    coords: BTreeMap<Subset, T>,
}

impl<T: Scalar> ExtElement<T> {
    pub fn zero(algebra: ExtAlgebra) -> Self {
        ExtElement { algebra, coords: BTreeMap::new() }
    }

    pub fn one(algebra: ExtAlgebra) -> Self {
        Self::basis(algebra, 0)
    }

    pub fn basis(algebra: ExtAlgebra, s: Subset) -> Self {
        Self::from_coords(algebra, [(s, T::one())])
    }

    /// `r_i`; panics if `i` is not a generator index.
    pub fn generator(algebra: ExtAlgebra, i: usize) -> Self {
        assert!((1..=algebra.num_generators()).contains(&i), "no generator r_{}", i);
        Self::basis(algebra, 1 << (i - 1))
    }

    pub fn from_coords<I: IntoIterator<Item = (Subset, T)>>(algebra: ExtAlgebra, coords: I) -> Self {
        let mut e = Self::zero(algebra);
        for (s, c) in coords {
            e.add_term(s, c);
        }
        e
    }

    fn add_term(&mut self, s: Subset, c: T) {
        assert!(self.algebra.contains(s), "subset outside the algebra");
        let v = self.coords.remove(&s).unwrap_or_else(T::zero) + c;
        if !v.is_zero() {
            self.coords.insert(s, v);
        }
    }

    pub fn algebra(&self) -> ExtAlgebra {
        self.algebra
    }

    pub fn coords(&self) -> &BTreeMap<Subset, T> {
        &self.coords
    }

    pub fn coefficient(&self, s: Subset) -> T {
        self.coords.get(&s).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// The parity if every term has the same one; `None` for zero or mixed.
    pub fn parity(&self) -> Option<Parity> {
        let mut ps = self.coords.keys().map(|&s| Parity::of(s));
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.parity().is_some()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.algebra, other.algebra, "algebra mismatch");
        let mut out = self.clone();
        for (&s, c) in &other.coords {
            out.add_term(s, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::from_coords(self.algebra, self.coords.iter().map(|(&s, c)| (s, c.clone() * k.clone())))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }
}

/// Exterior product; the sign is that of the merge shuffle.
pub fn ext_mul<T: Scalar>(x: &ExtElement<T>, y: &ExtElement<T>) -> ExtElement<T> {
    assert_eq!(x.algebra, y.algebra, "algebra mismatch");
    let mut out = ExtElement::zero(x.algebra);
    for (&a, ca) in &x.coords {
        for (&b, cb) in &y.coords {
            if a & b != 0 {
                continue;
            }
            let c = ca.clone() * cb.clone();
            out.add_term(a | b, if merge_sign_negative(a, b) { -c } else { c });
        }
    }
    out
}

/// An element of `Λ ⊗ Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTensor<T> {
    algebra: ExtAlgebra,
    coords: BTreeMap<(Subset, Subset), T>,
}

impl<T: Scalar> ExtTensor<T> {
    pub fn zero(algebra: ExtAlgebra) -> Self {
        ExtTensor { algebra, coords: BTreeMap::new() }
    }

    pub fn from_coords<I: IntoIterator<Item = ((Subset, Subset), T)>>(algebra: ExtAlgebra, coords: I) -> Self {
        let mut t = Self::zero(algebra);
        for (k, c) in coords {
            t.add_term(k, c);
        }
        t
    }

    fn add_term(&mut self, k: (Subset, Subset), c: T) {
        let v = self.coords.remove(&k).unwrap_or_else(T::zero) + c;
        if !v.is_zero() {
            self.coords.insert(k, v);
        }
    }

    pub fn algebra(&self) -> ExtAlgebra {
        self.algebra
    }

    pub fn coords(&self) -> &BTreeMap<(Subset, Subset), T> {
        &self.coords
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.coords {
            out.add_term(k, c.clone());
        }
        out
    }
}

/// `(a⊗b)(c⊗d) = (-1)^{|b||c|} ac ⊗ bd`.
pub fn tensor_mul<T: Scalar>(x: &ExtTensor<T>, y: &ExtTensor<T>) -> ExtTensor<T> {
    assert_eq!(x.algebra, y.algebra, "algebra mismatch");
    let mut out = ExtTensor::zero(x.algebra);
    for (&(a, b), c1) in &x.coords {
        for (&(c, d), c2) in &y.coords {
            if a & c != 0 || b & d != 0 {
                continue;
            }
            let negative = merge_sign_negative(a, c)
                ^ merge_sign_negative(b, d)
                ^ (b.count_ones() % 2 == 1 && c.count_ones() % 2 == 1);
            let v = c1.clone() * c2.clone();
            out.add_term((a | c, b | d), if negative { -v } else { v });
        }
    }
    out
}

/// The coproduct with primitive generators, `Δ(r) = r⊗1 + 1⊗r`.
pub fn hopf_comul<T: Scalar>(x: &ExtElement<T>) -> ExtTensor<T> {
    let mut out = ExtTensor::zero(x.algebra);
    for (&s, c) in &x.coords {
        // Sub-subsets of s: a runs over all submasks.
        let mut a = s;
        loop {
            let b = s & !a;
            out.add_term((a, b), if merge_sign_negative(a, b) { -c.clone() } else { c.clone() });
            if a == 0 {
                break;
            }
            a = (a - 1) & s;
        }
    }
    out
}

fn render_subset(s: Subset) -> String {
    if s == 0 {
        "1".to_string()
    } else {
        elements(s).map(|i| format!("r{}", i)).collect::<Vec<_>>().join("^")
    }
}

fn render_terms<T: Scalar>(f: &mut fmt::Formatter<'_>, terms: Vec<(String, &T)>) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (mono, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (k, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if mag.is_one() {
            write!(f, "{}", mono)?;
        } else {
            write!(f, "{}*{}", mag, mono)?;
        }
    }
    Ok(())
}

/// Signed subset monomials in basis order, e.g. `r1 - 2*r1^r3`.
impl<T: Scalar> fmt::Display for ExtElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = self.algebra.basis();
        let terms = order.iter().filter_map(|s| self.coords.get(s).map(|c| (render_subset(*s), c))).collect();
        render_terms(f, terms)
    }
}

impl<T: Scalar> fmt::Display for ExtTensor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coords
            .iter()
            .map(|(&(a, b), c)| (format!("{} (x) {}", render_subset(a), render_subset(b)), c))
            .collect();
        render_terms(f, terms)
    }
}
