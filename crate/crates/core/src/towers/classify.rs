use std::fmt;

use serde::Serialize;

use super::tower::{GroupTower, TailPattern};
use super::TowerError;
use crate::abgrp::{image, is_iso, is_surjective, lattice_eq, FGAbelianGroup};
use crate::Scalar;

/// Why `lim¹` vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MlJustification {
    /// Every map is onto.
    Surjective,
    /// Every composite of `length` consecutive maps is zero.
    EventuallyZero { length: usize },
    /// Images into each level agree for all sources from level `from` on.
    StabilizedImages { from: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Lim1Class {
    ZeroMl { justification: MlJustification, evidence: String },
    UnknownWithinWindow { evidence: String },
}

impl Lim1Class {
    pub fn is_zero(&self) -> bool {
        matches!(self, Lim1Class::ZeroMl { .. })
    }
}

impl fmt::Display for Lim1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lim1Class::ZeroMl { justification: MlJustification::Surjective, .. } => write!(f, "0 (ML: surjective)"),
            Lim1Class::ZeroMl { justification: MlJustification::EventuallyZero { length }, .. } => {
                write!(f, "0 (ML: composites of length {} vanish)", length)
            }
            Lim1Class::ZeroMl { justification: MlJustification::StabilizedImages { from }, .. } => {
                write!(f, "0 (ML: images stable from level {})", from)
            }
            Lim1Class::UnknownWithinWindow { .. } => write!(f, "unknown within window"),
        }
    }
}

/// The classification of `lim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ProGroupClass {
    Trivial { justification: String },
    Stable { group: String },
    ProFree { ranks: Vec<usize>, label: String },
    Unclassified { evidence: String },
}

impl ProGroupClass {
    fn is_torsion_free(&self) -> bool {
        match self {
            ProGroupClass::Trivial { .. } | ProGroupClass::ProFree { .. } => true,
            ProGroupClass::Stable { group } => !group.contains('/'),
            ProGroupClass::Unclassified { .. } => false,
        }
    }
}

impl fmt::Display for ProGroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProGroupClass::Trivial { .. } => write!(f, "0"),
            ProGroupClass::Stable { group } => write!(f, "{} (Stable)", group),
            ProGroupClass::ProFree { label, .. } => write!(f, "{} (ProFree)", label),
            ProGroupClass::Unclassified { evidence } => write!(f, "unclassified ({})", evidence),
        }
    }
}

fn tail_persists<T: Scalar>(t: &GroupTower<T>) -> bool {
    !matches!(t.tail(), Some(TailPattern::Custom))
}

fn tail_repeats<T: Scalar>(t: &GroupTower<T>) -> bool {
    matches!(t.tail(), None | Some(TailPattern::Constant))
}

fn all_maps<T: Scalar>(
    t: &GroupTower<T>,
    lo: usize,
    hi: usize,
    pred: impl Fn(&crate::abgrp::GroupHom<T>) -> bool,
) -> bool {
    (lo + 1..=hi).all(|n| t.map(n).is_some_and(&pred))
}

/// Smallest `L` with every length-`L` composite in the window zero.
fn vanishing_length<T: Scalar>(t: &GroupTower<T>, lo: usize, hi: usize) -> Option<usize> {
    (1..=hi - lo).find(|&len| (lo..=hi - len).all(|n| t.composite(n + len, n).is_some_and(|h| h.is_zero())))
}

/// Images `A_m → A_n` agree for all `m` in `from..=hi`, where `n < from`.
fn images_stable<T: Scalar>(t: &GroupTower<T>, n: usize, from: usize, hi: usize) -> bool {
    let lattice = |m: usize| {
        let h = t.composite(m, n).expect("levels in window");
        image(&h).matrix().hstack(&h.target().relation_matrix())
    };
    let first = lattice(from);
    (from + 1..=hi).all(|m| lattice_eq(&first, &lattice(m)))
}

/// Decides whether `lim¹` vanishes, from window evidence plus the declared tail.
pub fn lim1_classify<T: Scalar>(t: &GroupTower<T>, window: (usize, usize)) -> Result<Lim1Class, TowerError> {
    let (lo, hi) = window;
    t.check_window(lo, hi)?;
    let levels = format!("levels {}..{}", lo, hi);
    if tail_persists(t) && all_maps(t, lo, hi, is_surjective) {
        return Ok(Lim1Class::ZeroMl {
            justification: MlJustification::Surjective,
            evidence: format!("every map on {} has trivial cokernel", levels),
        });
    }
    if tail_repeats(t) {
        if let Some(length) = vanishing_length(t, lo, hi) {
            return Ok(Lim1Class::ZeroMl {
                justification: MlJustification::EventuallyZero { length },
                evidence: format!("all composites of length {} on {} are zero", length, levels),
            });
        }
    }
    if t.tail() == Some(TailPattern::Constant) && hi > lo {
        let from = lo + (hi - lo).div_ceil(2);
        if (lo..from).all(|n| images_stable(t, n, from, hi)) {
            return Ok(Lim1Class::ZeroMl {
                justification: MlJustification::StabilizedImages { from },
                evidence: format!("images agree for sources {}..{}", from, hi),
            });
        }
    }
    Ok(Lim1Class::UnknownWithinWindow { evidence: format!("no Mittag-Leffler witness on {}", levels) })
}

/// Classifies `lim` from window evidence plus the declared tail.
pub fn lim_classify<T: Scalar>(t: &GroupTower<T>, window: (usize, usize)) -> Result<ProGroupClass, TowerError> {
    let (lo, hi) = window;
    t.check_window(lo, hi)?;
    let groups: Vec<&FGAbelianGroup<T>> = (lo..=hi).map(|n| t.group(n).expect("in window")).collect();
    if groups.iter().all(|g| g.is_zero()) && tail_repeats(t) {
        return Ok(ProGroupClass::Trivial { justification: "all groups are zero".into() });
    }
    if tail_repeats(t) {
        if let Some(length) = vanishing_length(t, lo, hi) {
            return Ok(ProGroupClass::Trivial { justification: format!("composites of length {} vanish", length) });
        }
    }
    if tail_repeats(t) && all_maps(t, lo, hi, is_iso) {
        return Ok(ProGroupClass::Stable { group: groups[groups.len() - 1].to_string() });
    }
    let growing = matches!(t.tail(), Some(TailPattern::RankLinear { step }) if step > 0)
        || t.tail() == Some(TailPattern::RankDoubling);
    let ranks: Vec<usize> = groups.iter().map(|g| g.rank()).collect();
    if growing
        && groups.iter().all(|g| g.is_free())
        && ranks.windows(2).all(|w| w[0] < w[1])
        && all_maps(t, lo, hi, is_surjective)
    {
        return Ok(ProGroupClass::ProFree { ranks, label: "Z^inf".into() });
    }
    Ok(ProGroupClass::Unclassified {
        evidence: format!(
            "groups {} on levels {}..{}",
            groups.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "),
            lo,
            hi
        ),
    })
}

/// One degree of the Milnor sequence `0 → lim¹ K_{1-i} → RK_i → lim K_i → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MilnorDegree {
    pub lim1: Lim1Class,
    pub lim: ProGroupClass,
    pub value: ProGroupClass,
    pub split_justification: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MilnorResult {
    pub rk0: MilnorDegree,
    pub rk1: MilnorDegree,
}

fn degree<T: Scalar>(
    k_same: &GroupTower<T>,
    k_other: &GroupTower<T>,
    window: (usize, usize),
    other_name: &str,
) -> Result<MilnorDegree, TowerError> {
    let lim1 = lim1_classify(k_other, window)?;
    let lim = lim_classify(k_same, window)?;
    let (value, split_justification) = if lim1.is_zero() {
        (lim.clone(), None)
    } else if lim.is_torsion_free() {
        let evidence = format!("lim1 {} (+) {}", other_name, lim);
        (ProGroupClass::Unclassified { evidence }, Some("torsion free".to_string()))
    } else {
        (ProGroupClass::Unclassified { evidence: format!("lim1 {} undetermined", other_name) }, None)
    };
    Ok(MilnorDegree { lim1, lim, value, split_justification })
}

/// `RK_0` and `RK_1` of the inverse limit from the `K_0` and `K_1` towers.
pub fn milnor_assemble<T: Scalar>(
    k0: &GroupTower<T>,
    k1: &GroupTower<T>,
    window: (usize, usize),
) -> Result<MilnorResult, TowerError> {
    if k0.levels() != k1.levels() {
        return Err(TowerError::Shape("K0 and K1 towers must share their levels".into()));
    }
    Ok(MilnorResult { rk0: degree(k0, k1, window, "K1")?, rk1: degree(k1, k0, window, "K0")? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgrp::{GroupHom, Matrix};

    type G = FGAbelianGroup<i64>;

    fn constant(n: usize, map: i64, tail: TailPattern) -> GroupTower<i64> {
        let z = G::free(1);
        let h = GroupHom::new(z.clone(), z.clone(), Matrix::from_i64_rows(&[&[map]])).unwrap();
        GroupTower::new("c", 1, vec![z; n], vec![h; n - 1], Some(tail)).unwrap()
    }

    #[test]
    fn doubling_map_is_unknown() {
        let t = constant(5, 2, TailPattern::Custom);
        assert!(matches!(lim1_classify(&t, (1, 5)).unwrap(), Lim1Class::UnknownWithinWindow { .. }));
        assert!(matches!(lim_classify(&t, (1, 5)).unwrap(), ProGroupClass::Unclassified { .. }));
    }

    #[test]
    fn iso_and_zero_towers() {
        let t = constant(4, -1, TailPattern::Constant);
        assert_eq!(lim_classify(&t, (1, 4)).unwrap(), ProGroupClass::Stable { group: "Z".into() });
        let z = constant(4, 0, TailPattern::Constant);
        assert!(matches!(
            lim1_classify(&z, (1, 4)).unwrap(),
            Lim1Class::ZeroMl { justification: MlJustification::EventuallyZero { length: 1 }, .. }
        ));
        assert!(matches!(lim_classify(&z, (1, 4)).unwrap(), ProGroupClass::Trivial { .. }));
        let r = milnor_assemble(&t, &z, (1, 4)).unwrap();
        assert_eq!(r.rk0.value.to_string(), "Z (Stable)");
        assert_eq!(r.rk1.value.to_string(), "0");
    }

    #[test]
    fn zero_groups() {
        let t: GroupTower<i64> = GroupTower::new(
            "0",
            1,
            vec![G::zero(); 3],
            vec![GroupHom::zero(G::zero(), G::zero()); 2],
            Some(TailPattern::Constant),
        )
        .unwrap();
        assert!(matches!(lim_classify(&t, (1, 3)).unwrap(), ProGroupClass::Trivial { .. }));
        let r = milnor_assemble(&t, &t, (1, 3)).unwrap();
        assert_eq!((r.rk0.value.to_string(), r.rk1.value.to_string()), ("0".into(), "0".into()));
    }

    #[test]
    fn stabilized_images() {
        // Z/4 <-(x2)- Z/4 <-(x2)- ...: images shrink to 2Z/4 then 0, then stay.
        let g = G::cyclic(4).unwrap();
        let h = GroupHom::new(g.clone(), g.clone(), Matrix::from_i64_rows(&[&[2]])).unwrap();
        let t = GroupTower::new("t", 1, vec![g; 4], vec![h; 3], Some(TailPattern::Constant)).unwrap();
        assert!(matches!(
            lim1_classify(&t, (1, 4)).unwrap(),
            Lim1Class::ZeroMl { justification: MlJustification::EventuallyZero { length: 2 }, .. }
        ));
        let g = "Z/2 (+) Z".parse::<G>().unwrap();
        let h = GroupHom::new(g.clone(), g.clone(), Matrix::from_i64_rows(&[&[1, 0], &[0, 0]])).unwrap();
        let t = GroupTower::new("t", 1, vec![g; 4], vec![h; 3], Some(TailPattern::Constant)).unwrap();
        assert!(matches!(
            lim1_classify(&t, (1, 4)).unwrap(),
            Lim1Class::ZeroMl { justification: MlJustification::StabilizedImages { .. }, .. }
        ));
    }
}
