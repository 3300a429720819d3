use rayon::prelude::*;

use super::morphism::{delta_on, theta_between, AlgebraMorphism};
use super::report::{Outcome, ReportItem, VerificationReport};
use super::tower::{suq_tower, PresentationTower};
use super::QpresError;
use crate::ncalg::{poly_equal, reduce_legwise, GenSymbol, Leg, ReductionStatus, Word};
use crate::Poly;

/// Which homogeneous space a link cuts out of `C(SU_q(n))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkKind {
    /// The quantum sphere `S^{2n-1}`: invariants of the `θ_n` coaction.
    Sphere,
    /// The quantum projective space `CP^{n-1}` inside the sphere: sphere
    /// invariants that are also balanced in last-row letters and their adjoints.
    ProjectiveSpace,
}

/// Two towers `A_n`, `B_n` with link maps `θ'_n : A_n → B_n`.
#[derive(Clone, Debug)]
pub struct TwoTowerLink {
    pub kind: LinkKind,
    pub a: PresentationTower,
    pub b: PresentationTower,
    link_maps: Vec<AlgebraMorphism>,
}

impl TwoTowerLink {
    pub fn new(
        kind: LinkKind,
        a: PresentationTower,
        b: PresentationTower,
        link_maps: Vec<AlgebraMorphism>,
    ) -> Result<Self, QpresError> {
        if link_maps.len() != a.n_max() - a.n_min() + 1 {
            return Err(QpresError::Tower("need one link map per level of the source tower".into()));
        }
        for (k, m) in link_maps.iter().enumerate() {
            let n = a.n_min() + k;
            if m.source().level() != a.level(n)?.level() || m.target().level() != b.level(b.n_min() + k)?.level() {
                return Err(QpresError::Tower(format!("link map {} has the wrong levels", m.name())));
            }
        }
        Ok(TwoTowerLink { kind, a, b, link_maps })
    }

    pub fn link_map(&self, n: usize) -> Result<&AlgebraMorphism, QpresError> {
        self.a.level(n)?;
        Ok(&self.link_maps[n - self.a.n_min()])
    }

    /// `B_n` for `A_n`.
    pub fn b_level_for(&self, n: usize) -> usize {
        self.b.n_min() + (n - self.a.n_min())
    }

    pub fn levels(&self) -> (usize, usize) {
        (self.a.n_min(), self.a.n_max())
    }
}

/// The sphere link over `lo..=hi`: `A_n = C(SU_q(n))`, `B_n = C(SU_q(n-1))`,
/// `θ'_n = θ_n` and `ψ_n = θ_{n-1}`.
pub fn sphere_link(lo: usize, hi: usize) -> Result<TwoTowerLink, QpresError> {
    link_of_kind(LinkKind::Sphere, lo, hi)
}

/// Same maps as [`sphere_link`], with the projective-space membership test.
pub fn cp_link(lo: usize, hi: usize) -> Result<TwoTowerLink, QpresError> {
    link_of_kind(LinkKind::ProjectiveSpace, lo, hi)
}

fn link_of_kind(kind: LinkKind, lo: usize, hi: usize) -> Result<TwoTowerLink, QpresError> {
    if lo < 1 {
        return Err(QpresError::LevelTooSmall { level: lo, min: 1 });
    }
    let a = suq_tower(lo, hi, false)?;
    let b = suq_tower(lo - 1, hi - 1, false)?;
    let maps = (lo..=hi)
        .map(|n| theta_between(a.level(n)?.clone(), b.level(n - 1)?.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    TwoTowerLink::new(kind, a, b, maps)
}

/// Net count of last-row letters minus their adjoints, per monomial.
fn balanced_in_last_row(f: &Poly, n: usize) -> bool {
    let is_last = |g: &GenSymbol| g.name() == "u" && g.indices().first() == Some(&(n as u32));
    f.terms().all(|(legs, _)| {
        legs.iter().all(|w: &Word| {
            let mut weight = 0i64;
            for g in w.letters().iter().filter(|g| is_last(g)) {
                weight += if g.is_starred() { -1 } else { 1 };
            }
            weight == 0
        })
    })
}

/// Tests `(θ'_n ⊗ id) Δ_n(f) = 1 ⊗ f`.
///
/// Free-tensor equality gives `Verified`; otherwise the difference is reduced
/// leg by leg against the `B_n` and `A_n` rules. Returns the outcome and the
/// number of rewrite steps used.
pub fn coaction_invariant(
    f: &Poly,
    link: &TwoTowerLink,
    n: usize,
    step_limit: usize,
) -> Result<(Outcome, usize), QpresError> {
    let a_n = link.a.level(n)?;
    if f.degree() != 1 {
        return Err(QpresError::Algebra(crate::ncalg::AlgebraError::DegreeMismatch { left: 1, right: f.degree() }));
    }
    if let Some(bad) = f.generators().into_iter().find(|g| !a_n.has_generator(g)) {
        return Err(QpresError::UnknownGenerator(bad.to_string()));
    }
    if link.kind == LinkKind::ProjectiveSpace && !balanced_in_last_row(f, n) {
        return Ok((Outcome::RefutedAtNormalForm, 0));
    }
    let delta = delta_on(a_n.clone())?;
    let coacted = link.link_map(n)?.apply(&delta.apply(f, Leg::Index(0))?, Leg::Index(0))?;
    let expected = Poly::unit(1).tensor(f);
    if poly_equal(&coacted, &expected) {
        return Ok((Outcome::Verified, 0));
    }
    let diff = &coacted - &expected;
    let b_n = link.b.level(link.b_level_for(n))?;
    let out = reduce_legwise(&diff, &[b_n.rules()?, a_n.rules()?], step_limit);
    let status = match out.status {
        ReductionStatus::ReducedToZero => Outcome::Verified,
        ReductionStatus::NormalForm(_) => Outcome::RefutedAtNormalForm,
        ReductionStatus::StepLimit(_) => Outcome::Unknown,
    };
    Ok((status, out.steps))
}

/// `θ_n(f)` stays invariant one level down for every invariant sample `f`.
pub fn verify_hs_restriction(
    link: &TwoTowerLink,
    n: usize,
    samples: &[Poly],
    step_limit: usize,
) -> Result<VerificationReport, QpresError> {
    let theta = link.a.down_map(n)?;
    let items = samples
        .par_iter()
        .map(|f| {
            let id = f.to_string();
            let (pre, s0) = coaction_invariant(f, link, n, step_limit)?;
            if pre != Outcome::Verified {
                return Ok(ReportItem::new(id, pre, s0).with_note(format!("sample is not invariant at level {}", n)));
            }
            let down = theta.apply(f, Leg::All)?;
            let (post, s1) = coaction_invariant(&down, link, n - 1, step_limit)?;
            Ok(ReportItem::new(id, post, s0 + s1).with_note(format!("theta image {}", down)))
        })
        .collect::<Result<Vec<_>, QpresError>>()?;
    Ok(VerificationReport::new("hs-restriction", vec![n - 1, n], items))
}

/// Diagrams (θ'_{n-1} ∘ θ_n = ψ_n ∘ θ'_n) and (Δ^B ∘ θ' = (θ'⊗θ') ∘ Δ^A) on generators.
pub fn verify_link(link: &TwoTowerLink) -> Result<VerificationReport, QpresError> {
    let (lo, hi) = link.levels();
    let mut items = Vec::new();
    for n in lo..=hi {
        let a_n = link.a.level(n)?;
        let bn = link.b_level_for(n);
        let th = link.link_map(n)?;
        let delta_a = delta_on(a_n.clone())?;
        let delta_b = delta_on(link.b.level(bn)?.clone())?;
        for g in a_n.generators() {
            let p = Poly::generator(g.clone()).normalize();
            if n > lo && bn > link.b.n_min() {
                let lhs = link.link_map(n - 1)?.apply(&link.a.down_map(n)?.apply(&p, Leg::All)?, Leg::All)?;
                let rhs = link.b.down_map(bn)?.apply(&th.apply(&p, Leg::All)?, Leg::All)?;
                let status = if poly_equal(&lhs, &rhs) { Outcome::Verified } else { Outcome::RefutedAtNormalForm };
                items.push(ReportItem::new(format!("n{}:square-theta:{}", n, g), status, 0));
            }
            let lhs = delta_b.apply(&th.apply(&p, Leg::All)?, Leg::Index(0))?;
            let rhs = th.apply(&delta_a.apply(&p, Leg::Index(0))?, Leg::All)?;
            let status = if poly_equal(&lhs, &rhs) { Outcome::Verified } else { Outcome::RefutedAtNormalForm };
            items.push(ReportItem::new(format!("n{}:square-delta:{}", n, g), status, 0));
        }
    }
    Ok(VerificationReport::new("link-diagrams", (lo..=hi).collect(), items))
}

/// Last-row generators `u[n,j]`, which generate the sphere.
pub fn last_row_samples(n: usize) -> Vec<Poly> {
    (1..=n as u32).map(|j| Poly::generator(GenSymbol::matrix("u", n as u32, j))).collect()
}

/// The projective-space generators `v_i* v_j` with `v_i = u[n,i]`.
pub fn cp_samples(n: usize) -> Vec<Poly> {
    let v = |i: u32| Poly::generator(GenSymbol::matrix("u", n as u32, i));
    let mut out = Vec::new();
    for i in 1..=n as u32 {
        for j in 1..=n as u32 {
            out.push(&v(i).adjoint() * &v(j));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::DEFAULT_STEP_LIMIT;

    fn u(i: u32, j: u32) -> Poly {
        Poly::generator(GenSymbol::matrix("u", i, j))
    }

    #[test]
    fn last_row_is_invariant() {
        let link = sphere_link(2, 4).unwrap();
        for n in 2..=4 {
            for f in last_row_samples(n) {
                assert_eq!(coaction_invariant(&f, &link, n, DEFAULT_STEP_LIMIT).unwrap().0, Outcome::Verified);
            }
        }
    }

    #[test]
    fn top_left_corner_is_refuted() {
        let link = sphere_link(3, 4).unwrap();
        for n in 3..=4 {
            let (o, _) = coaction_invariant(&u(1, 1), &link, n, DEFAULT_STEP_LIMIT).unwrap();
            assert_eq!(o, Outcome::RefutedAtNormalForm);
        }
    }

    #[test]
    fn level_two_corner_is_invariant() {
        // θ_2 is the counit, so (θ_2 ⊗ id)Δ = 1 ⊗ id on everything.
        let link = sphere_link(2, 2).unwrap();
        assert_eq!(coaction_invariant(&u(1, 1), &link, 2, 100).unwrap().0, Outcome::Verified);
    }

    #[test]
    fn invariants_are_multiplicative() {
        let link = sphere_link(3, 3).unwrap();
        let samples = last_row_samples(3);
        for f in &samples {
            for g in &samples {
                let prod = f * g;
                assert_eq!(coaction_invariant(&prod, &link, 3, 100).unwrap().0, Outcome::Verified);
                let comb = &f.adjoint() + &g.scale(&crate::LaurentInt::monomial(-2, 3));
                assert_eq!(coaction_invariant(&comb, &link, 3, 100).unwrap().0, Outcome::Verified);
            }
        }
    }

    #[test]
    fn cp_membership() {
        let link = cp_link(3, 3).unwrap();
        for f in cp_samples(3) {
            assert_eq!(coaction_invariant(&f, &link, 3, 100).unwrap().0, Outcome::Verified);
        }
        assert_eq!(coaction_invariant(&u(3, 1), &link, 3, 100).unwrap().0, Outcome::RefutedAtNormalForm);
    }

    #[test]
    fn restriction_examples() {
        let link = sphere_link(2, 4).unwrap();
        let r = verify_hs_restriction(&link, 4, &last_row_samples(4), 1000).unwrap();
        assert!(r.all_verified(), "{}", r);
        let r = verify_hs_restriction(&link, 4, &cp_samples(4), 1000).unwrap();
        assert!(r.all_verified(), "{}", r);
    }

    #[test]
    fn link_diagrams_commute() {
        let r = verify_link(&sphere_link(1, 4).unwrap()).unwrap();
        assert!(r.all_verified(), "{}", r);
    }

    #[test]
    fn level_mismatch() {
        let link = sphere_link(2, 3).unwrap();
        assert!(matches!(coaction_invariant(&u(1, 1), &link, 5, 10), Err(QpresError::LevelOutOfRange { .. })));
        assert!(matches!(coaction_invariant(&u(4, 1), &link, 3, 10), Err(QpresError::UnknownGenerator(_))));
    }
}
