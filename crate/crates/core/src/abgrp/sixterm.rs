use std::fmt;

use serde::Serialize;

use super::extension::{solve_extension, AmbiguousReport, Extension, SplitExtension};
use super::group::FGAbelianGroup;
use super::hom::{cokernel, is_exact_at, kernel, GroupHom};
use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeSlot<T> {
    Known(FGAbelianGroup<T>),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapSlot<T> {
    Known(GroupHom<T>),
    Zero,
    Unknown,
}

/// A cyclic six-term sequence; map `k` runs from node `k` to node `k+1 mod 6`.
#[derive(Clone, Debug)]
pub struct SixTerm<T> {
    pub labels: [String; 6],
    pub nodes: [NodeSlot<T>; 6],
    pub maps: [MapSlot<T>; 6],
}

pub const DEFAULT_LABELS: [&str; 6] = ["K0(I)", "K0(A)", "K0(B)", "K1(I)", "K1(A)", "K1(B)"];

impl<T: Scalar> SixTerm<T> {
    pub fn new(nodes: [NodeSlot<T>; 6], maps: [MapSlot<T>; 6]) -> Self {
        SixTerm { labels: DEFAULT_LABELS.map(String::from), nodes, maps }
    }

    /// Nodes given as `Some(group)` or `None`, and the indices of the zero maps.
    pub fn from_pattern(nodes: [Option<FGAbelianGroup<T>>; 6], zero_maps: &[usize]) -> Self {
        let nodes = nodes.map(|n| n.map_or(NodeSlot::Unknown, NodeSlot::Known));
        let mut maps = [(); 6].map(|_| MapSlot::Unknown);
        for &k in zero_maps {
            maps[k % 6] = MapSlot::Zero;
        }
        Self::new(nodes, maps)
    }
}

/// What exactness alone forces on a map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MapProperty {
    Zero,
    Injective,
    Surjective,
    Iso,
    Unconstrained,
}

impl fmt::Display for MapProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MapProperty::Zero => "zero",
            MapProperty::Injective => "injective",
            MapProperty::Surjective => "surjective",
            MapProperty::Iso => "an isomorphism",
            MapProperty::Unconstrained => "unconstrained",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct SixTermSolution<T> {
    pub labels: [String; 6],
    pub nodes: [FGAbelianGroup<T>; 6],
    /// Given maps, zero maps, and witness maps where a representative exists.
    pub maps: [MapSlot<T>; 6],
    pub witnessed: [bool; 6],
    pub properties: [MapProperty; 6],
    pub deductions: Vec<String>,
    /// Maps fixed only up to an automorphism, e.g. `±id` on `Z`.
    pub families: Vec<String>,
    /// Nodes at which exactness was re-checked on concrete maps.
    pub exact_checked: Vec<usize>,
}

impl<T: Scalar> SixTermSolution<T> {
    pub fn euler_characteristic(&self) -> i64 {
        self.nodes.iter().enumerate().map(|(k, g)| if k % 2 == 0 { g.rank() as i64 } else { -(g.rank() as i64) }).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnderdeterminedReport {
    pub unresolved: Vec<String>,
    pub ambiguous: Vec<AmbiguousReport>,
    pub deductions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SixTermFailure {
    #[error("inconsistent six-term data: {0}")]
    Inconsistent(String),
    #[error("underdetermined: unresolved nodes {:?}", .0.unresolved)]
    Underdetermined(UnderdeterminedReport),
}

fn map_name(k: usize) -> String {
    format!("d{}", k + 1)
}

#[derive(Clone, Debug)]
enum SubSource<T> {
    Zero,
    Node,
    Coker(GroupHom<T>),
}

#[derive(Clone, Debug)]
enum QuotSource<T> {
    Zero,
    Node,
    Kernel(GroupHom<T>),
}

#[derive(Clone, Debug)]
struct Resolved<T> {
    sub: SubSource<T>,
    quot: QuotSource<T>,
    split: SplitExtension<T>,
}

struct State<T> {
    labels: [String; 6],
    nodes: [Option<FGAbelianGroup<T>>; 6],
    maps: [MapSlot<T>; 6],
    resolved: [Option<Resolved<T>>; 6],
    deductions: Vec<String>,
}

impl<T: Scalar> State<T> {
    fn is_zero_map(&self, k: usize) -> bool {
        match &self.maps[k % 6] {
            MapSlot::Zero => true,
            MapSlot::Known(h) => h.is_zero(),
            MapSlot::Unknown => false,
        }
    }

    fn known_map(&self, k: usize) -> Option<&GroupHom<T>> {
        match &self.maps[k % 6] {
            MapSlot::Known(h) => Some(h),
            _ => None,
        }
    }

    fn set_node(&mut self, k: usize, g: FGAbelianGroup<T>, why: String) -> Result<bool, SixTermFailure> {
        match &self.nodes[k] {
            Some(old) if *old == g => Ok(false),
            Some(old) => {
                Err(SixTermFailure::Inconsistent(format!("{} is {} but {} forces {}", self.labels[k], old, why, g)))
            }
            None => {
                self.deductions.push(format!("{} = {} ({})", self.labels[k], g, why));
                self.nodes[k] = Some(g);
                Ok(true)
            }
        }
    }

    fn fill_from_known_maps(&mut self) -> Result<bool, SixTermFailure> {
        let mut changed = false;
        for k in 0..6 {
            if let Some(h) = self.known_map(k).cloned() {
                changed |= self.set_node(k, h.source().clone(), format!("source of {}", map_name(k)))?;
                changed |= self.set_node((k + 1) % 6, h.target().clone(), format!("target of {}", map_name(k)))?;
            }
        }
        Ok(changed)
    }

    fn zero_groups_kill_maps(&mut self) -> bool {
        let mut changed = false;
        for k in 0..6 {
            if !matches!(self.maps[k], MapSlot::Unknown) {
                continue;
            }
            let ends = [k, (k + 1) % 6];
            if let Some(&z) = ends.iter().find(|&&e| self.nodes[e].as_ref().is_some_and(FGAbelianGroup::is_zero)) {
                self.maps[k] = MapSlot::Zero;
                self.deductions.push(format!("{} = 0 ({} is 0)", map_name(k), self.labels[z]));
                changed = true;
            }
        }
        changed
    }

    /// Image of the map into node `k`.
    fn sub_of(&self, k: usize) -> Option<(FGAbelianGroup<T>, SubSource<T>)> {
        let (prev, prev2) = ((k + 5) % 6, (k + 4) % 6);
        if self.is_zero_map(prev) {
            return Some((FGAbelianGroup::zero(), SubSource::Zero));
        }
        if self.is_zero_map(prev2) {
            return self.nodes[prev].clone().map(|g| (g, SubSource::Node));
        }
        self.known_map(prev2).map(|h| {
            let p = cokernel(h);
            (p.target().clone(), SubSource::Coker(p))
        })
    }

    /// Image of the map out of node `k`.
    fn quot_of(&self, k: usize) -> Option<(FGAbelianGroup<T>, QuotSource<T>)> {
        let next = (k + 1) % 6;
        if self.is_zero_map(k) {
            return Some((FGAbelianGroup::zero(), QuotSource::Zero));
        }
        if self.is_zero_map(next) {
            return self.nodes[next].clone().map(|g| (g, QuotSource::Node));
        }
        self.known_map(next).map(|h| {
            let i = kernel(h);
            (i.source().clone(), QuotSource::Kernel(i))
        })
    }

    fn resolve_extensions(&mut self, ambiguous: &mut Vec<AmbiguousReport>) -> Result<bool, SixTermFailure> {
        let mut changed = false;
        for k in 0..6 {
            if self.nodes[k].is_some() {
                continue;
            }
            let (Some((sub, ss)), Some((quot, qs))) = (self.sub_of(k), self.quot_of(k)) else { continue };
            let ext = Extension { sub: sub.clone(), quotient: quot.clone() };
            match solve_extension(&ext) {
                Ok(split) => {
                    let why = format!("0 -> {} -> {} -> {} -> 0", sub, self.labels[k], quot);
                    changed |= self.set_node(k, split.middle.clone(), why)?;
                    self.resolved[k] = Some(Resolved { sub: ss, quot: qs, split });
                }
                Err(report) => {
                    if !ambiguous.contains(&report) {
                        ambiguous.push(report);
                    }
                }
            }
        }
        Ok(changed)
    }

    fn property(&self, k: usize) -> MapProperty {
        if self.is_zero_map(k) {
            return MapProperty::Zero;
        }
        match (self.is_zero_map(k + 5), self.is_zero_map(k + 1)) {
            (true, true) => MapProperty::Iso,
            (true, false) => MapProperty::Injective,
            (false, true) => MapProperty::Surjective,
            (false, false) => MapProperty::Unconstrained,
        }
    }

    fn witness(&self, k: usize) -> Option<GroupHom<T>> {
        let (src, tgt) = (self.nodes[k].clone()?, self.nodes[(k + 1) % 6].clone()?);
        let incoming = self.resolved[(k + 1) % 6].as_ref().map(|r| match &r.sub {
            SubSource::Zero => Some(GroupHom::zero(src.clone(), tgt.clone())),
            SubSource::Node => Some(r.split.inclusion.clone()),
            SubSource::Coker(p) => r.split.inclusion.compose(p).ok(),
        });
        let outgoing = self.resolved[k].as_ref().map(|r| match &r.quot {
            QuotSource::Zero => Some(GroupHom::zero(src.clone(), tgt.clone())),
            QuotSource::Node => Some(r.split.projection.clone()),
            QuotSource::Kernel(i) => i.compose(&r.split.projection).ok(),
        });
        match (incoming.flatten(), outgoing.flatten()) {
            (Some(a), Some(b)) => (a == b).then_some(a),
            (Some(a), None) | (None, Some(a)) => Some(a),
            (None, None) => (self.property(k) == MapProperty::Iso && src == tgt).then(|| GroupHom::identity(src)),
        }
    }
}

/// Forced deduction on a six-term exact sequence.
///
/// Zero groups make their maps zero. For an unknown node `X` the image of
/// the incoming map and the image of the outgoing map are read off from the
/// neighbouring data; a free quotient splits the resulting extension. After
/// a fixed point, representatives are chosen for unknown maps where the
/// extension structure provides one, exactness is re-checked on every node
/// with two concrete neighbouring maps, and the Euler characteristic must
/// vanish.
pub fn solve_sixterm<T: Scalar>(st: &SixTerm<T>) -> Result<SixTermSolution<T>, SixTermFailure> {
    let mut s = State {
        labels: st.labels.clone(),
        nodes: st.nodes.clone().map(|n| match n {
            NodeSlot::Known(g) => Some(g),
            NodeSlot::Unknown => None,
        }),
        maps: st.maps.clone(),
        resolved: Default::default(),
        deductions: Vec::new(),
    };
    let mut ambiguous = Vec::new();
    loop {
        let mut changed = s.fill_from_known_maps()?;
        changed |= s.zero_groups_kill_maps();
        changed |= s.resolve_extensions(&mut ambiguous)?;
        if !changed {
            break;
        }
    }
    let unresolved: Vec<String> = (0..6).filter(|&k| s.nodes[k].is_none()).map(|k| s.labels[k].clone()).collect();
    if !unresolved.is_empty() {
        return Err(SixTermFailure::Underdetermined(UnderdeterminedReport {
            unresolved,
            ambiguous,
            deductions: s.deductions,
        }));
    }
    let properties: [MapProperty; 6] = std::array::from_fn(|k| s.property(k));
    for (k, p) in properties.iter().enumerate() {
        if matches!(p, MapProperty::Injective | MapProperty::Surjective | MapProperty::Iso) {
            s.deductions.push(format!("{} is {}", map_name(k), p));
        }
    }
    let nodes: [FGAbelianGroup<T>; 6] = std::array::from_fn(|k| s.nodes[k].clone().expect("resolved"));
    let mut witnessed = [false; 6];
    let mut families = Vec::new();
    let mut maps = s.maps.clone();
    for k in 0..6 {
        if !matches!(maps[k], MapSlot::Unknown) {
            continue;
        }
        if let Some(w) = s.witness(k) {
            let sign_only = properties[k] == MapProperty::Iso && nodes[k] == FGAbelianGroup::free(1);
            families.push(if sign_only {
                format!("{}: iso Z -> Z, determined up to sign (+/- id)", map_name(k))
            } else {
                format!("{}: representative {}; determined up to automorphisms", map_name(k), w.matrix())
            });
            maps[k] = MapSlot::Known(w);
            witnessed[k] = true;
        }
    }
    let concrete = |k: usize| -> Option<GroupHom<T>> {
        match &maps[k % 6] {
            MapSlot::Known(h) => Some(h.clone()),
            MapSlot::Zero => Some(GroupHom::zero(nodes[k % 6].clone(), nodes[(k + 1) % 6].clone())),
            MapSlot::Unknown => None,
        }
    };
    let mut exact_checked = Vec::new();
    for k in 0..6 {
        if let (Some(a), Some(b)) = (concrete(k + 5), concrete(k)) {
            let ok = is_exact_at(&a, &b).map_err(|e| SixTermFailure::Inconsistent(e.to_string()))?;
            if !ok {
                return Err(SixTermFailure::Inconsistent(format!("not exact at {}", s.labels[k])));
            }
            exact_checked.push(k);
        }
    }
    let solution = SixTermSolution {
        labels: s.labels,
        nodes,
        maps,
        witnessed,
        properties,
        deductions: s.deductions,
        families,
        exact_checked,
    };
    if solution.euler_characteristic() != 0 {
        return Err(SixTermFailure::Inconsistent("alternating rank sum is nonzero".into()));
    }
    Ok(solution)
}

impl<T: Scalar> fmt::Display for SixTermSolution<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..6 {
            let map = match &self.maps[k] {
                MapSlot::Zero => "0".to_string(),
                MapSlot::Known(h) if self.witnessed[k] => format!("{} (representative)", h.matrix()),
                MapSlot::Known(h) => h.matrix().to_string(),
                MapSlot::Unknown => "?".to_string(),
            };
            writeln!(f, "{:>6} = {:<12} --{}: {}-->", self.labels[k], self.nodes[k].to_string(), map_name(k), map)?;
        }
        Ok(())
    }
}
