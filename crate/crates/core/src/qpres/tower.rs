use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::morphism::{build_w_presentation, naive_sections, suq_level, theta_between, AlgebraMorphism};
use super::presentation::PresentationRef;
use super::report::{Outcome, ReportItem, VerificationReport};
use super::QpresError;
use crate::ncalg::{reduce, GenSymbol, Leg, ReductionStatus, Substitution};
use crate::Poly;

pub type SectionMap = BTreeMap<GenSymbol, GenSymbol>;

/// A finite window `n_min..=n_max` of an inverse system of presentations,
/// with the down maps `θ_n : level n → level n-1` and optional set-level
/// sections `s_{n-1} : G_{n-1} → G_n`.
#[derive(Clone, Debug)]
pub struct PresentationTower {
    name: String,
    n_min: usize,
    levels: Vec<PresentationRef>,
    down_maps: Vec<AlgebraMorphism>,
    sections: Option<Vec<SectionMap>>,
}

impl PresentationTower {
    pub fn new(
        name: &str,
        levels: Vec<PresentationRef>,
        down_maps: Vec<AlgebraMorphism>,
        sections: Option<Vec<SectionMap>>,
    ) -> Result<Self, QpresError> {
        let n_min = levels.first().map(|p| p.level()).ok_or(QpresError::EmptyTower)?;
        if levels.iter().enumerate().any(|(k, p)| p.level() != n_min + k) {
            return Err(QpresError::Tower("levels must be consecutive".into()));
        }
        if down_maps.len() + 1 != levels.len() {
            return Err(QpresError::Tower("need one down map per adjacent pair".into()));
        }
        for (k, m) in down_maps.iter().enumerate() {
            if m.source().level() != n_min + k + 1 || m.target().level() != n_min + k {
                return Err(QpresError::Tower(format!("down map {} is not between adjacent levels", m.name())));
            }
        }
        if let Some(s) = &sections {
            if s.len() + 1 != levels.len() {
                return Err(QpresError::Tower("need one section per adjacent pair".into()));
            }
        }
        let tower = PresentationTower { name: name.to_string(), n_min, levels, down_maps, sections };
        tower.check_sections()?;
        Ok(tower)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_min(&self) -> usize {
        self.n_min
    }

    pub fn n_max(&self) -> usize {
        self.n_min + self.levels.len() - 1
    }

    pub fn has_sections(&self) -> bool {
        self.sections.is_some()
    }

    fn check_range(&self, n: usize) -> Result<(), QpresError> {
        if n < self.n_min || n > self.n_max() {
            return Err(QpresError::LevelOutOfRange { level: n, lo: self.n_min, hi: self.n_max() });
        }
        Ok(())
    }

    pub fn level(&self, n: usize) -> Result<&PresentationRef, QpresError> {
        self.check_range(n)?;
        Ok(&self.levels[n - self.n_min])
    }

    /// `θ_n : level n → level n-1`.
    pub fn down_map(&self, n: usize) -> Result<&AlgebraMorphism, QpresError> {
        self.check_range(n)?;
        if n == self.n_min {
            return Err(QpresError::LevelOutOfRange { level: n - 1, lo: self.n_min, hi: self.n_max() });
        }
        Ok(&self.down_maps[n - self.n_min - 1])
    }

    /// `θ_n` on a generator symbol of level `n`.
    pub fn theta_symbol(&self, n: usize, g: &GenSymbol) -> Result<GenSymbol, QpresError> {
        self.down_map(n)?.symbol_image(g)?.ok_or_else(|| QpresError::NotASetMap(g.to_string()))
    }

    /// `s_n : G_n → G_{n+1}`.
    pub fn section_symbol(&self, n: usize, g: &GenSymbol) -> Result<GenSymbol, QpresError> {
        let secs = self.sections.as_ref().ok_or(QpresError::MissingSections)?;
        self.check_range(n + 1)?;
        self.check_range(n)?;
        secs[n - self.n_min].get(g).cloned().ok_or_else(|| QpresError::NotASetMap(g.to_string()))
    }

    /// `θ_{n+1} ∘ s_n = id` on every generator symbol of every level.
    pub fn check_sections(&self) -> Result<(), QpresError> {
        if self.sections.is_none() {
            return Ok(());
        }
        for n in self.n_min..self.n_max() {
            for g in self.level(n)?.generators() {
                let up = self.section_symbol(n, g)?;
                if !self.level(n + 1)?.has_generator(&up) {
                    return Err(QpresError::SectionIdentity(format!("s_{}({}) = {} is not a generator", n, g, up)));
                }
                let back = self.theta_symbol(n + 1, &up)?;
                if back != *g {
                    return Err(QpresError::SectionIdentity(format!("θ_{}(s_{}({})) = {}", n + 1, n, g, back)));
                }
            }
        }
        Ok(())
    }

    /// The set map `G_i → G_t` given by iterated `θ`s (t < i) or sections (t > i).
    pub fn symbol_map(&self, i: usize, t: usize) -> Result<SectionMap, QpresError> {
        let mut out = SectionMap::new();
        for g in self.level(i)?.generators() {
            let mut h = g.clone();
            if t < i {
                for n in (t + 1..=i).rev() {
                    h = self.theta_symbol(n, &h)?;
                }
            } else {
                for n in i..t {
                    h = self.section_symbol(n, &h)?;
                }
            }
            out.insert(g.clone(), h);
        }
        Ok(out)
    }
}

fn symbol_poly(g: &GenSymbol) -> Poly {
    if g.is_zero() {
        Poly::zero(1)
    } else if g.is_one() {
        Poly::unit(1)
    } else {
        Poly::generator(g.clone())
    }
}

/// The tower `{C(SU_q(n)), θ_n}` over `lo..=hi`, optionally with naive sections.
pub fn suq_tower(lo: usize, hi: usize, naive: bool) -> Result<PresentationTower, QpresError> {
    if lo > hi {
        return Err(QpresError::EmptyTower);
    }
    let levels: Vec<PresentationRef> = (lo..=hi).map(|n| Arc::new(suq_level(n))).collect();
    let down = (1..levels.len())
        .map(|k| theta_between(levels[k].clone(), levels[k - 1].clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let sections = naive.then(|| levels[..levels.len() - 1].iter().map(|p| naive_sections(p)).collect());
    let name = if naive { "su_q (naive sections)" } else { "su_q" };
    PresentationTower::new(name, levels, down, sections)
}

/// The `w` tower over `lo..=hi` with its obvious sections.
pub fn w_tower(lo: usize, hi: usize) -> Result<PresentationTower, QpresError> {
    if lo > hi || lo < 1 {
        return Err(QpresError::EmptyTower);
    }
    let levels = (lo..=hi).map(|n| build_w_presentation(n).map(Arc::new)).collect::<Result<Vec<_>, _>>()?;
    let mut down = Vec::new();
    for k in 1..levels.len() {
        let src = levels[k].clone();
        let n = src.level() as u32;
        let mut map = Substitution::new(1);
        for g in src.generators().iter().filter(|g| !g.is_scalar()) {
            let (i, j) = (g.indices()[0], g.indices()[1]);
            let img = if i < n && j < n {
                Poly::generator(g.clone())
            } else if i == j {
                Poly::unit(1)
            } else {
                Poly::zero(1)
            };
            map.assign(g.clone(), img)?;
        }
        down.push(AlgebraMorphism::new(&format!("theta_w_{}", n), src, levels[k - 1].clone(), map)?);
    }
    let sections = levels[..levels.len() - 1].iter().map(|p| naive_sections(p)).collect();
    PresentationTower::new("w", levels, down, Some(sections))
}

/// The coherent sequence `γ_i(g) = (h_j)` over the tower window: `h_i = g`,
/// iterated `θ` below and iterated sections above.
pub fn gamma_split(tower: &PresentationTower, i: usize, g: &GenSymbol) -> Result<Vec<(usize, GenSymbol)>, QpresError> {
    if !tower.has_sections() {
        return Err(QpresError::MissingSections);
    }
    if !tower.level(i)?.has_generator(g) {
        return Err(QpresError::UnknownGenerator(g.to_string()));
    }
    let mut below = Vec::new();
    let mut h = g.clone();
    for n in (tower.n_min() + 1..=i).rev() {
        h = tower.theta_symbol(n, &h)?;
        below.push((n - 1, h.clone()));
    }
    below.reverse();
    below.push((i, g.clone()));
    let mut h = g.clone();
    for n in i..tower.n_max() {
        h = tower.section_symbol(n, &h)?;
        below.push((n + 1, h.clone()));
    }
    Ok(below)
}

/// Checks that the iterated `θ`/section images of each `G_i` satisfy `R_i`
/// in the target presentation, for every pair of levels in `window`.
///
/// Algebraic relations are substituted and reduced against the target rules.
/// Norm bounds are checked structurally: the image must be `0`, `1`, or a
/// generator with a bound no larger.
pub fn check_hypothesis_b(
    tower: &PresentationTower,
    window: (usize, usize),
    step_limit: usize,
) -> Result<VerificationReport, QpresError> {
    if !tower.has_sections() {
        return Err(QpresError::MissingSections);
    }
    let (lo, hi) = window;
    tower.level(lo)?;
    tower.level(hi)?;
    let mut items = Vec::new();
    for i in lo..=hi {
        let src = tower.level(i)?;
        for t in lo..=hi {
            let target = tower.level(t)?;
            let smap = tower.symbol_map(i, t)?;
            let mut sub = Substitution::new(1);
            for (g, h) in &smap {
                sub.assign(g.clone(), symbol_poly(h))?;
            }
            let rules = target.rules()?;
            let prefix = format!("R{}->G{}", i, t);
            let algebraic: Vec<ReportItem> = (0..src.relation_count())
                .into_par_iter()
                .map(|idx| {
                    let rel = src.relation(idx);
                    let img = sub.apply(&rel.poly, Leg::All)?;
                    let id = format!("{}:{}", prefix, rel.id);
                    if img.is_zero() {
                        return Ok(ReportItem::new(id, Outcome::Verified, 0));
                    }
                    let out = reduce(&img, rules, step_limit);
                    Ok(match out.status {
                        ReductionStatus::ReducedToZero => ReportItem::new(id, Outcome::Verified, out.steps),
                        ReductionStatus::NormalForm(_) => ReportItem::new(id, Outcome::RefutedAtNormalForm, out.steps)
                            .with_note("not reduced to zero under this strategy"),
                        ReductionStatus::StepLimit(_) => ReportItem::new(id, Outcome::Unknown, out.steps),
                    })
                })
                .collect::<Result<_, QpresError>>()?;
            items.extend(algebraic);
            for nb in src.norm_relations() {
                let h = &smap[&nb.generator];
                let id = format!("{}:norm{}", prefix, nb.generator);
                let ok = h.is_scalar() || target.norm_bound(h).is_some_and(|b| b <= nb.bound);
                let item = if ok {
                    ReportItem::new(id, Outcome::Verified, 0)
                } else {
                    ReportItem::new(id, Outcome::RefutedAtNormalForm, 0)
                        .with_note(format!("image {} carries no bound <= {}", h, nb.bound))
                };
                items.push(item);
            }
        }
    }
    Ok(VerificationReport::new(&format!("hypothesis-b[{}]", tower.name()), (lo..=hi).collect(), items))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn section_identity_holds() {
        assert!(w_tower(1, 5).unwrap().check_sections().is_ok());
        assert!(suq_tower(2, 4, true).unwrap().check_sections().is_ok());
    }

    #[test]
    fn gamma_examples() {
        let t = w_tower(1, 4).unwrap();
        let w11 = GenSymbol::matrix("w", 1, 1);
        let seq = gamma_split(&t, 2, &w11).unwrap();
        assert_eq!(seq, (1..=4).map(|n| (n, w11.clone())).collect::<Vec<_>>());
        let one = gamma_split(&t, 2, &GenSymbol::one()).unwrap();
        assert!(one.iter().all(|(_, g)| g.is_one()));
        let w33 = GenSymbol::matrix("w", 3, 3);
        let seq = gamma_split(&t, 3, &w33).unwrap();
        assert_eq!(seq[1], (2, GenSymbol::one()));
        assert_eq!(seq[3], (4, w33));
        assert!(matches!(
            gamma_split(&suq_tower(2, 3, false).unwrap(), 2, &GenSymbol::one()),
            Err(QpresError::MissingSections)
        ));
    }

    #[test]
    fn hypothesis_b_trivial_window() {
        let t = w_tower(2, 3).unwrap();
        let r = check_hypothesis_b(&t, (2, 2), 1000).unwrap();
        assert!(r.all_verified());
    }
}
