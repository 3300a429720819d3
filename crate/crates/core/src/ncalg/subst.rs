use std::collections::{BTreeMap, HashMap};

use super::poly::TensorPoly;
use super::symbol::{GenSymbol, Word};
use super::AlgebraError;
use crate::scalar::Scalar;

/// Which tensor legs a substitution acts on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Leg {
    All,
    Index(usize),
}

/// A *-homomorphism of free algebras given by images of generators.
///
/// Starred letters are sent to the adjoint of the image, so adjoint
/// compatibility holds by construction. Images may have tensor degree 2
/// (a comultiplication); such substitutions act on a single leg only.
#[derive(Clone, Debug)]
pub struct Substitution<T: Scalar> {
    images: BTreeMap<GenSymbol, TensorPoly<T>>,
    image_degree: usize,
}

impl<T: Scalar> Substitution<T> {
    pub fn new(image_degree: usize) -> Self {
        let mut images = BTreeMap::new();
        images.insert(GenSymbol::one(), TensorPoly::unit(image_degree));
        images.insert(GenSymbol::zero(), TensorPoly::zero(image_degree));
        Substitution { images, image_degree }
    }

    /// Assigns the image of an (unstarred) generator.
    pub fn assign(&mut self, g: GenSymbol, image: TensorPoly<T>) -> Result<(), AlgebraError> {
        if image.degree() != self.image_degree {
            return Err(AlgebraError::DegreeMismatch { left: self.image_degree, right: image.degree() });
        }
        self.images.insert(g.unstarred(), image);
        Ok(())
    }

    pub fn image_degree(&self) -> usize {
        self.image_degree
    }

    pub fn image(&self, g: &GenSymbol) -> Result<TensorPoly<T>, AlgebraError> {
        let base =
            self.images.get(&g.unstarred()).ok_or_else(|| AlgebraError::Unassigned(g.unstarred().to_string()))?;
        Ok(if g.is_starred() { base.adjoint() } else { base.clone() })
    }

    pub fn assigned(&self) -> impl Iterator<Item = (&GenSymbol, &TensorPoly<T>)> {
        self.images.iter()
    }

    fn image_word(
        &self,
        w: &Word,
        cache: &mut HashMap<GenSymbol, TensorPoly<T>>,
    ) -> Result<TensorPoly<T>, AlgebraError> {
        let mut acc = TensorPoly::unit(self.image_degree);
        for g in w.letters() {
            if !cache.contains_key(g) {
                cache.insert(g.clone(), self.image(g)?);
            }
            acc = acc.try_mul(&cache[g])?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// Substitutes generator images letterwise in the selected legs.
    pub fn apply(&self, p: &TensorPoly<T>, leg: Leg) -> Result<TensorPoly<T>, AlgebraError> {
        let d = p.degree();
        let mut cache = HashMap::new();
        match leg {
            Leg::Index(l) if l >= d => Err(AlgebraError::IllegalLeg { leg: l, degree: d }),
            Leg::Index(l) => {
                let k = self.image_degree;
                let mut out = TensorPoly::zero(d - 1 + k);
                for (legs, c) in p.terms() {
                    let img = self.image_word(&legs[l], &mut cache)?;
                    for (ilegs, ic) in img.terms() {
                        let mut nl = Vec::with_capacity(d - 1 + k);
                        nl.extend_from_slice(&legs[..l]);
                        nl.extend(ilegs.iter().cloned());
                        nl.extend_from_slice(&legs[l + 1..]);
                        out.add_normalized(nl, c * ic);
                    }
                }
                Ok(out)
            }
            Leg::All if d == 1 => self.apply(p, Leg::Index(0)),
            Leg::All if self.image_degree != 1 => Err(AlgebraError::IllegalLeg { leg: usize::MAX, degree: d }),
            Leg::All => {
                let mut out = TensorPoly::zero(d);
                for (legs, c) in p.terms() {
                    let mut acc: Option<TensorPoly<T>> = None;
                    for w in legs {
                        let img = self.image_word(w, &mut cache)?;
                        acc = Some(match acc {
                            None => img,
                            Some(a) => a.tensor(&img),
                        });
                    }
                    let term = acc.expect("degree >= 1").scale(c);
                    out = out.try_add(&term)?;
                }
                Ok(out)
            }
        }
    }
}
