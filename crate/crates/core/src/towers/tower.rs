use std::fmt;

use serde::{Deserialize, Serialize};

use super::TowerError;
use crate::abgrp::{FGAbelianGroup, GroupHom};
use crate::Scalar;

/// How the tower continues past the last window level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailPattern {
    /// The last group and map repeat forever.
    Constant,
    /// Free groups whose rank grows by `step` per level.
    RankLinear { step: usize },
    /// Free groups whose rank doubles per level.
    RankDoubling,
    /// Nothing is known beyond the window.
    Custom,
}

impl fmt::Display for TailPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailPattern::Constant => write!(f, "constant"),
            TailPattern::RankLinear { step } => write!(f, "rank-linear({})", step),
            TailPattern::RankDoubling => write!(f, "rank-doubling"),
            TailPattern::Custom => write!(f, "custom"),
        }
    }
}

/// Groups `A_start, ..., A_end` with maps `A_n → A_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTower<T> {
    name: String,
    start: usize,
    groups: Vec<FGAbelianGroup<T>>,
    maps: Vec<GroupHom<T>>,
    tail: Option<TailPattern>,
}

impl<T: Scalar> GroupTower<T> {
    /// `maps[k]` runs from level `start + k + 1` to level `start + k`.
    pub fn new(
        name: &str,
        start: usize,
        groups: Vec<FGAbelianGroup<T>>,
        maps: Vec<GroupHom<T>>,
        tail: Option<TailPattern>,
    ) -> Result<Self, TowerError> {
        if groups.is_empty() {
            return Err(TowerError::Shape("a tower needs at least one group".into()));
        }
        if maps.len() + 1 != groups.len() {
            return Err(TowerError::Shape(format!(
                "{} groups need {} maps, got {}",
                groups.len(),
                groups.len() - 1,
                maps.len()
            )));
        }
        for (k, h) in maps.iter().enumerate() {
            if h.source() != &groups[k + 1] || h.target() != &groups[k] {
                return Err(TowerError::Shape(format!(
                    "map at level {} is {} -> {}, expected {} -> {}",
                    start + k + 1,
                    h.source(),
                    h.target(),
                    groups[k + 1],
                    groups[k]
                )));
            }
        }
        let t = GroupTower { name: name.to_string(), start, groups, maps, tail };
        t.check_tail()?;
        Ok(t)
    }

    fn check_tail(&self) -> Result<(), TowerError> {
        let Some(p) = self.tail else { return Ok(()) };
        let bad = |reason: &str| Err(TowerError::Tail { pattern: p.to_string(), reason: reason.to_string() });
        let g = &self.groups;
        let last_two = (g.len() >= 2).then(|| (&g[g.len() - 2], &g[g.len() - 1]));
        match (p, last_two) {
            (TailPattern::Constant, Some((a, b))) => {
                if a != b {
                    return bad("last two groups differ");
                }
                let m = &self.maps;
                if m.len() >= 2 && m[m.len() - 2].matrix() != m[m.len() - 1].matrix() {
                    return bad("last two maps differ");
                }
            }
            (TailPattern::RankLinear { step }, Some((a, b)))
                if !a.is_free() || !b.is_free() || b.rank() != a.rank() + step =>
            {
                return bad("last two groups are not free with the declared rank step");
            }
            (TailPattern::RankDoubling, Some((a, b))) if !a.is_free() || !b.is_free() || b.rank() != 2 * a.rank() => {
                return bad("last two groups are not free with doubling rank");
            }
            _ => {}
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// First and last level.
    pub fn levels(&self) -> (usize, usize) {
        (self.start, self.start + self.groups.len() - 1)
    }

    pub fn tail(&self) -> Option<TailPattern> {
        self.tail
    }

    pub fn groups(&self) -> &[FGAbelianGroup<T>] {
        &self.groups
    }

    pub fn maps(&self) -> &[GroupHom<T>] {
        &self.maps
    }

    pub fn group(&self, n: usize) -> Option<&FGAbelianGroup<T>> {
        n.checked_sub(self.start).and_then(|k| self.groups.get(k))
    }

    /// The map `A_n → A_{n-1}`.
    pub fn map(&self, n: usize) -> Option<&GroupHom<T>> {
        n.checked_sub(self.start + 1).and_then(|k| self.maps.get(k))
    }

    /// `A_m → A_n` for `m >= n`.
    pub fn composite(&self, m: usize, n: usize) -> Option<GroupHom<T>> {
        let mut h = GroupHom::identity(self.group(m)?.clone());
        for l in (n + 1..=m).rev() {
            h = self.map(l)?.compose(&h).ok()?;
        }
        Some(h)
    }

    pub(crate) fn check_window(&self, lo: usize, hi: usize) -> Result<(), TowerError> {
        let (min, max) = self.levels();
        if lo > hi || lo < min || hi > max {
            return Err(TowerError::Window { lo, hi, min, max });
        }
        Ok(())
    }

    /// The sub-tower on `lo..=hi`; the tail is kept only if `hi` is the last level.
    pub fn window(&self, lo: usize, hi: usize) -> Result<Self, TowerError> {
        self.check_window(lo, hi)?;
        let (a, b) = (lo - self.start, hi - self.start);
        let tail = if hi == self.levels().1 { self.tail } else { Some(TailPattern::Custom) };
        GroupTower::new(&self.name, lo, self.groups[a..=b].to_vec(), self.maps[a..b].to_vec(), tail)
    }
}

impl<T: Scalar> fmt::Display for GroupTower<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let groups: Vec<String> = self.groups.iter().map(ToString::to_string).collect();
        write!(f, "{}: {} from level {}", self.name, groups.join(" <- "), self.start)?;
        if let Some(t) = self.tail {
            write!(f, ", tail {}", t)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = FGAbelianGroup<i64>;

    #[test]
    fn shape_and_tail_checks() {
        let z = G::free(1);
        let id = GroupHom::identity(z.clone());
        let t =
            GroupTower::new("t", 2, vec![z.clone(), z.clone()], vec![id.clone()], Some(TailPattern::Constant)).unwrap();
        assert_eq!(t.levels(), (2, 3));
        assert_eq!(t.composite(3, 2).unwrap(), id);
        assert!(GroupTower::new("t", 2, vec![z.clone(), z.clone()], vec![], None).is_err());
        assert!(matches!(
            GroupTower::new("t", 2, vec![z.clone(), z.clone()], vec![id], Some(TailPattern::RankLinear { step: 1 })),
            Err(TowerError::Tail { .. })
        ));
        assert!(t.window(3, 4).is_err());
        assert_eq!(t.window(3, 3).unwrap().levels(), (3, 3));
    }
}
