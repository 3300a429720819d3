use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

const ONE: &str = "one";
const ZERO: &str = "zero";

/// A generator letter `name[i,j,...]`, possibly carrying a formal adjoint.
///
/// The `Ord` impl is the letter precedence of the monomial order: every
/// unstarred letter outranks every starred one, then lower names and lower
/// index tuples rank higher (so `u[1,1] > u[1,2] > u[2,1]`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GenSymbol {
    name: Arc<str>,
    indices: Vec<u32>,
    starred: bool,
}

impl GenSymbol {
    pub fn new(name: &str, indices: &[u32]) -> Self {
        GenSymbol { name: Arc::from(name), indices: indices.to_vec(), starred: false }
    }

    /// Shorthand for the matrix letter `name[i,j]`.
    pub fn matrix(name: &str, i: u32, j: u32) -> Self {
        Self::new(name, &[i, j])
    }

    pub fn one() -> Self {
        Self::new(ONE, &[])
    }

    pub fn zero() -> Self {
        Self::new(ZERO, &[])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn is_starred(&self) -> bool {
        self.starred
    }

    pub fn is_one(&self) -> bool {
        self.indices.is_empty() && &*self.name == ONE
    }

    pub fn is_zero(&self) -> bool {
        self.indices.is_empty() && &*self.name == ZERO
    }

    /// `one` or `zero`.
    pub fn is_scalar(&self) -> bool {
        self.is_one() || self.is_zero()
    }

    /// The formal adjoint. `one` and `zero` are self-adjoint.
    pub fn star(&self) -> Self {
        let mut s = self.clone();
        if !s.is_scalar() {
            s.starred = !s.starred;
        }
        s
    }

    /// The same letter with the adjoint flag cleared.
    pub fn unstarred(&self) -> Self {
        let mut s = self.clone();
        s.starred = false;
        s
    }
}

impl Ord for GenSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .starred
            .cmp(&self.starred)
            .then_with(|| other.name.cmp(&self.name))
            .then_with(|| other.indices.cmp(&self.indices))
    }
}

impl PartialOrd for GenSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.indices.is_empty() {
            write!(f, "[")?;
            for (k, i) in self.indices.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", i)?;
            }
            write!(f, "]")?;
        }
        if self.starred {
            write!(f, "'")?;
        }
        Ok(())
    }
}

/// A monomial of the free algebra; the empty word is the unit.
///
/// Ordered degree-lexicographically: longer words are greater, equal lengths
/// compare letter by letter under the [`GenSymbol`] precedence.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<GenSymbol>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: GenSymbol) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GenSymbol] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Reverse and star every letter.
    pub fn adjoint(&self) -> Word {
        Word(self.0.iter().rev().map(GenSymbol::star).collect())
    }

    /// Starting positions of `pattern` in `self`, left to right.
    pub fn occurrences<'a>(&'a self, pattern: &'a Word) -> impl Iterator<Item = usize> + 'a {
        let n = pattern.len();
        let last = (self.len() + 1).saturating_sub(n.max(1));
        (0..last).filter(move |&i| n > 0 && self.0[i..i + n] == pattern.0[..])
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", g)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(i: u32, j: u32) -> GenSymbol {
        GenSymbol::matrix("u", i, j)
    }

    #[test]
    fn precedence() {
        assert!(u(1, 1) > u(1, 2));
        assert!(u(1, 2) > u(2, 1));
        assert!(u(3, 3) > u(1, 1).star());
        assert!(u(1, 1).star() > u(1, 2).star());
    }

    #[test]
    fn deglex() {
        let w1 = Word(vec![u(1, 1), u(2, 2)]);
        let w2 = Word(vec![u(1, 2), u(2, 1)]);
        assert!(w1 > w2);
        assert!(Word(vec![u(3, 3), u(3, 3), u(3, 3)]) > w1);
        assert!(w2 > Word::unit());
    }

    #[test]
    fn scalars_never_starred() {
        assert_eq!(GenSymbol::one().star(), GenSymbol::one());
        assert_eq!(GenSymbol::zero().star(), GenSymbol::zero());
        assert!(u(1, 2).star().is_starred());
        assert_eq!(u(1, 2).star().star(), u(1, 2));
    }

    #[test]
    fn occurrences() {
        let w = Word(vec![u(1, 1), u(2, 2), u(1, 1), u(2, 2)]);
        let p = Word(vec![u(1, 1), u(2, 2)]);
        assert_eq!(w.occurrences(&p).collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(w.occurrences(&Word::unit()).count(), 0);
        assert_eq!(Word::letter(u(1, 1)).occurrences(&p).count(), 0);
    }

    #[test]
    fn render() {
        assert_eq!(Word(vec![u(2, 2).star(), u(1, 1)]).to_string(), "u[2,2]'*u[1,1]");
        assert_eq!(Word::unit().to_string(), "1");
        assert_eq!(GenSymbol::new("x", &[]).to_string(), "x");
    }
}
