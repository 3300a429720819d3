use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Ratio;

use super::presentation::{NormBound, Presentation, PresentationRef};
use super::QpresError;
use crate::ncalg::{GenSymbol, Leg, Substitution};
use crate::Poly;

/// A *-homomorphism between presentations given on generators.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    name: String,
    source: PresentationRef,
    target: PresentationRef,
    map: Substitution<i64>,
}

impl AlgebraMorphism {
    /// Checks that every source generator is assigned and that images only
    /// use target generators.
    pub fn new(
        name: &str,
        source: PresentationRef,
        target: PresentationRef,
        map: Substitution<i64>,
    ) -> Result<Self, QpresError> {
        for g in source.generators() {
            let img = map.image(g)?;
            if let Some(bad) = img.generators().into_iter().find(|h| !target.has_generator(h)) {
                return Err(QpresError::UnknownGenerator(bad.to_string()));
            }
        }
        Ok(AlgebraMorphism { name: name.to_string(), source, target, map })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &PresentationRef {
        &self.source
    }

    pub fn target(&self) -> &PresentationRef {
        &self.target
    }

    pub fn tensor_degree_of_images(&self) -> usize {
        self.map.image_degree()
    }

    pub fn substitution(&self) -> &Substitution<i64> {
        &self.map
    }

    pub fn image(&self, g: &GenSymbol) -> Result<Poly, QpresError> {
        Ok(self.map.image(g)?)
    }

    pub fn apply(&self, p: &Poly, leg: Leg) -> Result<Poly, QpresError> {
        Ok(self.map.apply(p, leg)?)
    }

    /// The image of a generator as a generator symbol, when it is one
    /// (a single letter, the unit, or zero).
    pub fn symbol_image(&self, g: &GenSymbol) -> Result<Option<GenSymbol>, QpresError> {
        Ok(poly_as_symbol(&self.image(g)?))
    }
}

pub(crate) fn poly_as_symbol(p: &Poly) -> Option<GenSymbol> {
    if p.is_zero() {
        return Some(GenSymbol::zero());
    }
    if p.len() != 1 || p.degree() != 1 {
        return None;
    }
    let (legs, c) = p.leading()?;
    if c.as_constant() != Some(1) {
        return None;
    }
    match legs[0].letters() {
        [] => Some(GenSymbol::one()),
        [g] => Some(g.clone()),
        _ => None,
    }
}

fn delta(i: u32, j: u32) -> Poly {
    if i == j {
        Poly::unit(1)
    } else {
        Poly::zero(1)
    }
}

/// The trivial presentation `{one, zero}`, used for `C(SU_q(1)) ≅ C` and below.
pub fn trivial_presentation(level: usize) -> Presentation {
    Presentation::new(&format!("su_q({})", level), level, Vec::new(), Vec::new(), Vec::new())
        .expect("trivial presentation is valid")
}

/// `C(SU_q(n))`: `n² + 2` generators, `2n²` unitarity relations and `n^n`
/// determinant rows.
pub fn build_suq(n: usize) -> Result<Presentation, QpresError> {
    if n < 2 {
        return Err(QpresError::LevelTooSmall { level: n, min: 2 });
    }
    Ok(Presentation::suq(n))
}

/// Like [`build_suq`] but closes the bottom of the tower with the trivial
/// presentation at levels 0 and 1.
pub fn suq_level(n: usize) -> Presentation {
    if n < 2 {
        trivial_presentation(n)
    } else {
        Presentation::suq(n)
    }
}

/// Generators `w[i,j]` with only the 0/1 relations and `‖w[i,j]‖ <= 1`.
pub fn build_w_presentation(n: usize) -> Result<Presentation, QpresError> {
    if n < 1 {
        return Err(QpresError::LevelTooSmall { level: n, min: 1 });
    }
    let mut gens = Vec::new();
    let mut norms = Vec::new();
    for i in 1..=n as u32 {
        for j in 1..=n as u32 {
            let g = GenSymbol::matrix("w", i, j);
            norms.push(NormBound { generator: g.clone(), bound: Ratio::from_integer(1) });
            gens.push(g);
        }
    }
    Presentation::new(&format!("w({})", n), n, gens, Vec::new(), norms)
}

/// The corner-truncation map on a matrix family named `letter`:
/// `x[i,j] ↦ x[i,j]` for `i, j < n`, otherwise `δ_ij · 1`. A trivial
/// target has no matrix letters, so everything goes to `δ_ij · 1`.
fn truncation(
    letter: &str,
    name: &str,
    source: PresentationRef,
    target: PresentationRef,
) -> Result<AlgebraMorphism, QpresError> {
    let n = source.level() as u32;
    let mut map = Substitution::new(1);
    for g in source.generators().iter().filter(|g| !g.is_scalar()) {
        let [i, j] = g.indices() else {
            return Err(QpresError::UnknownGenerator(g.to_string()));
        };
        let kept = GenSymbol::matrix(letter, *i, *j);
        let img = if *i < n && *j < n && target.has_generator(&kept) { Poly::generator(kept) } else { delta(*i, *j) };
        map.assign(g.clone(), img)?;
    }
    AlgebraMorphism::new(name, source, target, map)
}

/// `θ_n : C(SU_q(n)) → C(SU_q(n-1))`.
pub fn build_theta(n: usize) -> Result<AlgebraMorphism, QpresError> {
    if n < 1 {
        return Err(QpresError::LevelTooSmall { level: n, min: 1 });
    }
    theta_between(Arc::new(suq_level(n)), Arc::new(suq_level(n - 1)))
}

pub(crate) fn theta_between(src: PresentationRef, tgt: PresentationRef) -> Result<AlgebraMorphism, QpresError> {
    let name = format!("theta_{}", src.level());
    truncation("u", &name, src, tgt)
}

/// `θ_n` on the `w` family.
pub fn build_theta_w(n: usize) -> Result<AlgebraMorphism, QpresError> {
    if n < 2 {
        return Err(QpresError::LevelTooSmall { level: n, min: 2 });
    }
    let src = Arc::new(build_w_presentation(n)?);
    let tgt = Arc::new(build_w_presentation(n - 1)?);
    truncation("w", &format!("theta_w_{}", n), src, tgt)
}

/// `Δ_n(u[i,j]) = Σ_k u[i,k] ⊗ u[k,j]`, `Δ(1) = 1⊗1`, `Δ(0) = 0⊗0`.
pub fn build_delta(n: usize) -> Result<AlgebraMorphism, QpresError> {
    delta_on(Arc::new(suq_level(n)))
}

pub(crate) fn delta_on(pres: PresentationRef) -> Result<AlgebraMorphism, QpresError> {
    let n = pres.level() as u32;
    let mut map = Substitution::new(2);
    for g in pres.generators().iter().filter(|g| !g.is_scalar()) {
        let [i, j] = g.indices() else {
            return Err(QpresError::UnknownGenerator(g.to_string()));
        };
        let mut img = Poly::zero(2);
        for k in 1..=n {
            let t =
                Poly::generator(GenSymbol::matrix("u", *i, k)).tensor(&Poly::generator(GenSymbol::matrix("u", k, *j)));
            img = &img + &t;
        }
        map.assign(g.clone(), img)?;
    }
    AlgebraMorphism::new(&format!("delta_{}", n), pres.clone(), pres, map)
}

/// `π_n(w[i,j]) = u[i,j]`; at level 1 the target is trivial and `π_1(w[1,1]) = 1`.
pub fn build_pi(n: usize) -> Result<AlgebraMorphism, QpresError> {
    let src = Arc::new(build_w_presentation(n)?);
    let tgt = Arc::new(suq_level(n));
    let mut map = Substitution::new(1);
    for g in src.generators().iter().filter(|g| !g.is_scalar()) {
        let [i, j] = g.indices() else { unreachable!("w generators are matrix letters") };
        let img = if n >= 2 { Poly::generator(GenSymbol::matrix("u", *i, *j)) } else { delta(*i, *j) };
        map.assign(g.clone(), img)?;
    }
    AlgebraMorphism::new(&format!("pi_{}", n), src, tgt, map)
}

/// Naive set-level sections `x^{n-1}[i,j] ↦ x^n[i,j]`, `0 ↦ 0`, `1 ↦ 1`.
pub fn naive_sections(lower: &Presentation) -> BTreeMap<GenSymbol, GenSymbol> {
    lower.generators().iter().map(|g| (g.clone(), g.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Word;

    fn u(i: u32, j: u32) -> GenSymbol {
        GenSymbol::matrix("u", i, j)
    }

    #[test]
    fn theta_examples() {
        let t3 = build_theta(3).unwrap();
        assert_eq!(t3.apply(&Poly::generator(u(1, 2)), Leg::All).unwrap(), Poly::generator(u(1, 2)));
        assert!(t3.apply(&Poly::generator(u(1, 3)), Leg::All).unwrap().is_zero());
        assert!(t3.image(&u(2, 3)).unwrap().is_zero());
        assert_eq!(t3.image(&u(3, 3)).unwrap(), Poly::unit(1));
        assert_eq!(t3.target().level(), 2);
        let t2 = build_theta(2).unwrap();
        assert_eq!(t2.image(&u(1, 1)).unwrap(), Poly::unit(1));
        assert!(t2.image(&u(1, 2)).unwrap().is_zero());
    }

    #[test]
    fn delta_examples() {
        let d2 = build_delta(2).unwrap();
        assert_eq!(d2.tensor_degree_of_images(), 2);
        assert_eq!(d2.image(&u(1, 1)).unwrap().to_string(), "u[1,1](x)u[1,1] + u[1,2](x)u[2,1]");
        assert!(d2.image(&GenSymbol::zero()).unwrap().is_zero());
        assert_eq!(d2.image(&GenSymbol::one()).unwrap(), Poly::unit(2));
    }

    #[test]
    fn delta_is_star_compatible() {
        let d = build_delta(3).unwrap();
        for g in d.source().generators() {
            let via_adjoint = d.apply(&Poly::generator(g.clone()).adjoint(), Leg::Index(0)).unwrap();
            let legwise = d.apply(&Poly::generator(g.clone()), Leg::Index(0)).unwrap().adjoint();
            assert_eq!(via_adjoint, legwise, "{}", g);
        }
    }

    #[test]
    fn pi_and_w() {
        let p = build_pi(3).unwrap();
        assert_eq!(p.image(&GenSymbol::matrix("w", 1, 2)).unwrap(), Poly::generator(u(1, 2)));
        let w2 = build_w_presentation(2).unwrap();
        assert_eq!(w2.relation_count(), 0);
        assert_eq!(w2.norm_relations().len(), 4);
        assert!(build_suq(1).is_err());
    }

    #[test]
    fn symbol_images() {
        let t3 = build_theta(3).unwrap();
        assert_eq!(t3.symbol_image(&u(3, 3)).unwrap(), Some(GenSymbol::one()));
        assert_eq!(t3.symbol_image(&u(3, 1)).unwrap(), Some(GenSymbol::zero()));
        assert_eq!(t3.symbol_image(&u(2, 1)).unwrap(), Some(u(2, 1)));
        assert_eq!(poly_as_symbol(&Poly::word(Word(vec![u(1, 1), u(2, 2)]))), None);
    }

    #[test]
    fn suq_counts() {
        for n in 2..=4 {
            let p = build_suq(n).unwrap();
            assert_eq!(p.generators().len(), n * n + 2);
            let rels = p.relations();
            let unit = rels.iter().filter(|r| r.id.starts_with("unitary")).count();
            let det = rels.iter().filter(|r| r.id.starts_with("det")).count();
            assert_eq!(unit, 2 * n * n);
            assert_eq!(det, n.pow(n as u32));
            assert!(rels.iter().all(|r| !r.poly.is_zero()));
            assert!(p.rules().is_ok());
        }
    }
}
