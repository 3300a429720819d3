use super::tower::{GroupTower, TailPattern};
use super::TowerError;
use crate::abgrp::{solve_sixterm, FGAbelianGroup, GroupHom, MapSlot, SixTerm, SixTermSolution};
use crate::kring::su_k_tower;
use crate::Scalar;

/// `K_0` and `K_1` towers with the per-level derivations behind them.
#[derive(Clone, Debug)]
pub struct KTowers<T> {
    pub k0: GroupTower<T>,
    pub k1: GroupTower<T>,
    /// Solved hexagon per level, when the groups came from one.
    pub hexagons: Vec<(usize, SixTermSolution<T>)>,
    /// Identifications consumed as inputs.
    pub provenance: Vec<String>,
}

fn down_map<T: Scalar>(sol: &SixTermSolution<T>, k: usize) -> GroupHom<T> {
    match &sol.maps[k] {
        MapSlot::Known(h) => h.clone(),
        _ => GroupHom::zero(sol.nodes[k].clone(), sol.nodes[(k + 1) % 6].clone()),
    }
}

/// Climbs a family of hexagons `0 → I → A_n → A_{n-1} → 0`: at each level
/// the `B` nodes are the previous answer, the ideal nodes are `ideal`, and
/// `zero_maps` are given as zero. The tower maps are `K_*(A_n) → K_*(A_{n-1})`.
/// With `include_base`, the base becomes tower level `lo - 1`.
struct Climb<'a, T> {
    names: (&'a str, &'a str),
    levels: (usize, usize),
    base: (FGAbelianGroup<T>, FGAbelianGroup<T>),
    include_base: bool,
    ideal: (FGAbelianGroup<T>, FGAbelianGroup<T>),
    zero_maps: &'a [usize],
    tails: (TailPattern, TailPattern),
}

fn climb<T: Scalar>(c: Climb<'_, T>) -> Result<KTowers<T>, TowerError> {
    let (lo, hi) = c.levels;
    let mut prev = c.base.clone();
    let (mut g0, mut g1, mut m0, mut m1, mut hexagons) = (vec![], vec![], vec![], vec![], vec![]);
    if c.include_base {
        g0.push(prev.0.clone());
        g1.push(prev.1.clone());
    }
    for n in lo..=hi {
        let st = SixTerm::from_pattern(
            [Some(c.ideal.0.clone()), None, Some(prev.0.clone()), Some(c.ideal.1.clone()), None, Some(prev.1.clone())],
            c.zero_maps,
        );
        let sol = solve_sixterm(&st).map_err(|e| TowerError::SixTerm { level: n, reason: e.to_string() })?;
        if n > lo || c.include_base {
            m0.push(down_map(&sol, 1));
            m1.push(down_map(&sol, 4));
        }
        prev = (sol.nodes[1].clone(), sol.nodes[4].clone());
        g0.push(prev.0.clone());
        g1.push(prev.1.clone());
        hexagons.push((n, sol));
    }
    let start = if c.include_base { lo - 1 } else { lo };
    Ok(KTowers {
        k0: GroupTower::new(c.names.0, start, g0, m0, Some(c.tails.0))?,
        k1: GroupTower::new(c.names.1, start, g1, m1, Some(c.tails.1))?,
        hexagons,
        provenance: Vec::new(),
    })
}

/// Spheres `S^{2n-1}`, `n = 2..=n_max`, from `0 → C(T)⊗K → C(S^{2n-1}) → C(S^{2n-3}) → 0`
/// with `d1 = d3 = d5 = 0`, starting from `K_*(C(S^1)) = (Z, Z)`.
pub fn sphere_tower<T: Scalar>(n_max: usize) -> Result<KTowers<T>, TowerError> {
    let z = FGAbelianGroup::free(1);
    let mut t = climb(Climb {
        names: ("K0(S^{2n-1})", "K1(S^{2n-1})"),
        levels: (2, n_max.max(2)),
        base: (z.clone(), z.clone()),
        include_base: false,
        ideal: (z.clone(), z),
        zero_maps: &[0, 2, 4],
        tails: (TailPattern::Constant, TailPattern::Constant),
    })?;
    t.provenance = vec!["ideal constant K(C(T) (x) K) = (Z, Z)".into(), "base K(C(S^1)) = (Z, Z)".into()];
    Ok(t)
}

/// Projective spaces `CP^n`, `n = 0..=n_max`, from `0 → K → C(CP^n) → C(CP^{n-1}) → 0`,
/// starting from `K_*(point) = (Z, 0)`. Needs `n_max >= 1`.
pub fn cp_tower<T: Scalar>(n_max: usize) -> Result<KTowers<T>, TowerError> {
    let (z, zero) = (FGAbelianGroup::free(1), FGAbelianGroup::zero());
    let mut t = climb(Climb {
        names: ("K0(CP^n)", "K1(CP^n)"),
        levels: (1, n_max.max(1)),
        base: (z.clone(), zero.clone()),
        include_base: true,
        ideal: (z, zero),
        zero_maps: &[],
        tails: (TailPattern::RankLinear { step: 1 }, TailPattern::Constant),
    })?;
    t.provenance = vec!["ideal constant K(K) = (Z, 0)".into(), "base K(point) = (Z, 0)".into()];
    Ok(t)
}

/// `K_*(C(SU_q(n)))`, `n = 2..=n_max`, through the exterior-algebra branching tower.
pub fn su_tower<T: Scalar>(n_max: usize) -> Result<KTowers<T>, TowerError> {
    let (k0, k1) = su_k_tower(n_max).map_err(|e| TowerError::Kring(e.to_string()))?;
    Ok(KTowers { k0, k1, hexagons: Vec::new(), provenance: vec!["Nagy comparison".into()] })
}
