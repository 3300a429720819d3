//! Text and JSON document formats read and written by the tool.
//!
//! Presentation documents are line oriented:
//!
//! ```text
//! # comment
//! presentation su_q(2)
//! level 2
//! ring laurent(q)
//! generators one, zero, u[1..2,1..2]
//! relation det[1,2]: u[1,1]*u[2,2] - q*u[1,2]*u[2,1] - 1
//! norm u[1,1] <= 1
//! ```
//!
//! `relations su_q` stands in for the full generated relation family of
//! `C(SU_q(level))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::Ratio;
use qgauge_core::abgrp::{FGAbelianGroup, GroupHom, MapSlot, Matrix, NodeSlot, SixTerm};
use qgauge_core::ncalg::GenSymbol;
use qgauge_core::qpres::{self, NormBound, Presentation, PresentationTower, Relation};
use qgauge_core::towers::{GroupTower, TailPattern};
use serde::{Deserialize, Serialize};

use crate::parse::{parse_expression_checked, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for DocError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, DocError> {
    Err(DocError { line, message: message.into() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Laurent,
    Int,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Laurent => "laurent(q)",
            Ring::Int => "int",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationBlock {
    Listed(Vec<Relation>),
    SuQFamily,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationDoc {
    pub name: String,
    pub level: usize,
    pub ring: Ring,
    /// Sorted, `one` and `zero` included.
    pub generators: Vec<GenSymbol>,
    pub relations: RelationBlock,
    pub norms: Vec<NormBound>,
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn parse_range(s: &str, line: usize) -> Result<(u32, u32), DocError> {
    let num = |t: &str| t.trim().parse::<u32>().or_else(|_| err(line, format!("bad index '{}'", t.trim())));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return err(line, format!("empty range {}..{}", a, b));
            }
            Ok((a, b))
        }
        None => {
            let v = num(s)?;
            Ok((v, v))
        }
    }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Expands `u[1..2,3]`, `x`, `one` into generator symbols.
fn parse_generator_item(item: &str, line: usize) -> Result<Vec<GenSymbol>, DocError> {
    match item {
        "one" => return Ok(vec![GenSymbol::one()]),
        "zero" => return Ok(vec![GenSymbol::zero()]),
        _ => {}
    }
    let (name, rest) = match item.find('[') {
        Some(k) => (&item[..k], Some(&item[k..])),
        None => (item, None),
    };
    if !is_ident(name) || name == "q" {
        return err(line, format!("bad generator name '{}'", name));
    }
    let Some(rest) = rest else {
        return Ok(vec![GenSymbol::new(name, &[])]);
    };
    let Some(inner) = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')) else {
        return err(line, format!("bad generator '{}'", item));
    };
    let mut combos: Vec<Vec<u32>> = vec![Vec::new()];
    for part in inner.split(',') {
        let (a, b) = parse_range(part, line)?;
        combos = combos
            .into_iter()
            .flat_map(|c| {
                (a..=b).map(move |v| {
                    let mut c = c.clone();
                    c.push(v);
                    c
                })
            })
            .collect();
    }
    Ok(combos.into_iter().map(|idx| GenSymbol::new(name, &idx)).collect())
}

fn parse_rational(s: &str, line: usize) -> Result<Ratio<i64>, DocError> {
    Ratio::from_str(s.trim()).or_else(|_| err(line, format!("bad norm bound '{}'", s.trim())))
}

fn sort_generators(gens: &mut Vec<GenSymbol>) {
    for g in [GenSymbol::one(), GenSymbol::zero()] {
        if !gens.contains(&g) {
            gens.push(g);
        }
    }
    gens.sort_by(|a, b| b.cmp(a));
    gens.dedup();
}

impl PresentationDoc {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        let mut name = None;
        let mut level = None;
        let mut ring = Ring::Laurent;
        let mut generators = Vec::new();
        let mut raw_relations: Vec<(usize, String, String)> = Vec::new();
        let mut family = false;
        let mut raw_norms: Vec<(usize, String, Ratio<i64>)> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            let rest = rest.trim();
            match key {
                "presentation" => {
                    if rest.is_empty() {
                        return err(line, "missing presentation name");
                    }
                    name = Some(rest.to_string());
                }
                "level" => {
                    level = Some(rest.parse::<usize>().or_else(|_| err(line, format!("bad level '{}'", rest)))?);
                }
                "ring" => {
                    ring = match rest {
                        "laurent(q)" => Ring::Laurent,
                        "int" => Ring::Int,
                        _ => return err(line, format!("unknown ring '{}'", rest)),
                    }
                }
                "generators" => {
                    for item in split_top_level(rest) {
                        if item.is_empty() {
                            return err(line, "empty generator entry");
                        }
                        generators.extend(parse_generator_item(item, line)?);
                    }
                }
                "relation" => {
                    let Some((id, expr)) = rest.split_once(':') else {
                        return err(line, "expected 'relation ID: EXPR'");
                    };
                    if id.trim().is_empty() {
                        return err(line, "missing relation id");
                    }
                    raw_relations.push((line, id.trim().to_string(), expr.to_string()));
                }
                "relations" => {
                    if rest != "su_q" {
                        return err(line, format!("unknown relation family '{}'", rest));
                    }
                    family = true;
                }
                "norm" => {
                    let Some((g, bound)) = rest.split_once("<=") else {
                        return err(line, "expected 'norm GENERATOR <= BOUND'");
                    };
                    raw_norms.push((line, g.trim().to_string(), parse_rational(bound, line)?));
                }
                _ => return err(line, format!("unknown directive '{}'", key)),
            }
        }
        let Some(name) = name else { return err(0, "missing 'presentation' line") };
        let Some(level) = level else { return err(0, "missing 'level' line") };
        sort_generators(&mut generators);
        let known: BTreeSet<GenSymbol> = generators.iter().cloned().collect();
        let is_known = |g: &GenSymbol| known.contains(&g.unstarred());
        let relations = if family {
            if !raw_relations.is_empty() {
                return err(raw_relations[0].0, "explicit relations cannot be combined with 'relations su_q'");
            }
            if level < 2 {
                return err(0, "'relations su_q' needs level >= 2");
            }
            if generators != qpres::suq_level(level).generators() {
                return err(0, format!("generators do not match su_q({})", level));
            }
            RelationBlock::SuQFamily
        } else {
            let mut seen = BTreeSet::new();
            let mut rels = Vec::new();
            for (line, id, expr) in raw_relations {
                if !seen.insert(id.clone()) {
                    return err(line, format!("duplicate relation id '{}'", id));
                }
                let poly = parse_expression_checked(&expr, ring == Ring::Laurent, &is_known)
                    .map_err(|e: ParseError| DocError { line, message: format!("relation {}: {}", id, e) })?;
                if poly.is_zero() {
                    return err(line, format!("relation {} is zero", id));
                }
                rels.push(Relation { id, poly });
            }
            RelationBlock::Listed(rels)
        };
        let mut norms = Vec::new();
        for (line, g, bound) in raw_norms {
            let gen = parse_expression_checked(&g, false, &is_known)
                .ok()
                .and_then(|p| p.generators().into_iter().next().filter(|_| p.len() == 1 && p.max_word_len() == 1));
            match gen {
                Some(gen) if !gen.is_scalar() => norms.push(NormBound { generator: gen, bound }),
                _ => return err(line, format!("'{}' is not a known generator", g)),
            }
        }
        Ok(PresentationDoc { name, level, ring, generators, relations, norms })
    }

    /// Builds the document for `pres`. Generated families are kept compact
    /// unless `explicit` is set.
    pub fn from_presentation(pres: &Presentation, explicit: bool) -> Self {
        let relations = if pres.is_generated() && !explicit {
            RelationBlock::SuQFamily
        } else {
            RelationBlock::Listed(pres.relations().to_vec())
        };
        PresentationDoc {
            name: pres.name().to_string(),
            level: pres.level(),
            ring: Ring::Laurent,
            generators: pres.generators().to_vec(),
            relations,
            norms: pres.norm_relations().to_vec(),
        }
    }

    pub fn to_presentation(&self) -> Result<Presentation, qpres::QpresError> {
        match &self.relations {
            RelationBlock::SuQFamily => qpres::build_suq(self.level),
            RelationBlock::Listed(rels) => {
                Presentation::new(&self.name, self.level, self.generators.clone(), rels.clone(), self.norms.clone())
            }
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(s, "presentation {}", self.name).unwrap();
        writeln!(s, "level {}", self.level).unwrap();
        writeln!(s, "ring {}", self.ring).unwrap();
        writeln!(s, "generators {}", render_generators(&self.generators)).unwrap();
        match &self.relations {
            RelationBlock::SuQFamily => writeln!(s, "relations su_q").unwrap(),
            RelationBlock::Listed(rels) => {
                for r in rels {
                    writeln!(s, "relation {}: {}", r.id, r.poly).unwrap();
                }
            }
        }
        for nb in &self.norms {
            writeln!(s, "norm {} <= {}", nb.generator, nb.bound).unwrap();
        }
        s
    }
}

/// Groups indexed generators by name and writes full rectangular index
/// sets as ranges.
fn render_generators(gens: &[GenSymbol]) -> String {
    let mut items = Vec::new();
    for special in [GenSymbol::one(), GenSymbol::zero()] {
        if gens.contains(&special) {
            items.push(special.to_string());
        }
    }
    let mut by_name: BTreeMap<(String, usize), Vec<Vec<u32>>> = BTreeMap::new();
    let mut order = Vec::new();
    for g in gens.iter().filter(|g| !g.is_scalar()) {
        let key = (g.name().to_string(), g.indices().len());
        if !by_name.contains_key(&key) {
            order.push(key.clone());
        }
        by_name.entry(key).or_default().push(g.indices().to_vec());
    }
    order.sort();
    for key in order {
        let mut idx = by_name.remove(&key).unwrap_or_default();
        idx.sort();
        let (name, arity) = key;
        if arity == 0 {
            items.push(name);
            continue;
        }
        let bounds: Vec<(u32, u32)> = (0..arity)
            .map(|a| {
                let lo = idx.iter().map(|v| v[a]).min().unwrap_or(0);
                let hi = idx.iter().map(|v| v[a]).max().unwrap_or(0);
                (lo, hi)
            })
            .collect();
        let full: usize = bounds.iter().map(|(a, b)| (b - a + 1) as usize).product();
        if full == idx.len() && idx.len() > 1 {
            let parts: Vec<String> =
                bounds.iter().map(|(a, b)| if a == b { a.to_string() } else { format!("{}..{}", a, b) }).collect();
            items.push(format!("{}[{}]", name, parts.join(",")));
        } else {
            for v in idx {
                items.push(GenSymbol::new(&name, &v).to_string());
            }
        }
    }
    items.join(", ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TowerFamily {
    SuQ,
    W,
}

/// A presentation tower description:
///
/// ```text
/// tower w
/// family w
/// sections naive
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerDoc {
    pub name: String,
    pub family: TowerFamily,
    pub naive_sections: bool,
}

impl TowerDoc {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        let (mut name, mut family, mut sections) = (None, None, None);
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            let rest = rest.trim();
            match key {
                "tower" => name = Some(rest.to_string()),
                "family" => {
                    family = Some(match rest {
                        "su_q" => TowerFamily::SuQ,
                        "w" => TowerFamily::W,
                        _ => return err(line, format!("unknown tower family '{}'", rest)),
                    })
                }
                "sections" => {
                    sections = Some(match rest {
                        "naive" => true,
                        "none" => false,
                        _ => return err(line, format!("unknown sections '{}'", rest)),
                    })
                }
                _ => return err(line, format!("unknown directive '{}'", key)),
            }
        }
        let Some(family) = family else { return err(0, "missing 'family' line") };
        let name = name.unwrap_or_else(|| match family {
            TowerFamily::SuQ => "su_q".into(),
            TowerFamily::W => "w".into(),
        });
        let naive_sections = sections.unwrap_or(family == TowerFamily::W);
        if family == TowerFamily::W && !naive_sections {
            return err(0, "the w family always carries its sections");
        }
        Ok(TowerDoc { name, family, naive_sections })
    }

    pub fn render(&self) -> String {
        let family = match self.family {
            TowerFamily::SuQ => "su_q",
            TowerFamily::W => "w",
        };
        let sections = if self.naive_sections { "naive" } else { "none" };
        format!("tower {}\nfamily {}\nsections {}\n", self.name, family, sections)
    }

    pub fn build(&self, lo: usize, hi: usize) -> Result<PresentationTower, qpres::QpresError> {
        match self.family {
            TowerFamily::SuQ => qpres::suq_tower(lo, hi, self.naive_sections),
            TowerFamily::W => qpres::w_tower(lo, hi),
        }
    }
}

/// JSON form of a group tower: groups in the usual text notation, maps as
/// integer matrices, `maps[k]` running from level `start + k + 1` down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTowerDoc {
    pub name: String,
    pub start: usize,
    pub groups: Vec<String>,
    pub maps: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub tail: Option<TailPattern>,
}

fn parse_group(s: &str) -> Result<FGAbelianGroup<i64>, DocError> {
    s.parse().map_err(|e| DocError { line: 0, message: format!("group '{}': {}", s, e) })
}

fn to_matrix(rows: &[Vec<i64>], cols: usize) -> Result<Matrix<i64>, DocError> {
    if rows.iter().any(|r| r.len() != cols) {
        return err(0, format!("matrix rows must all have {} entries", cols));
    }
    Ok(Matrix::from_rows_with_cols(rows.to_vec(), cols))
}

impl GroupTowerDoc {
    pub fn from_tower(t: &GroupTower<i64>) -> Self {
        GroupTowerDoc {
            name: t.name().to_string(),
            start: t.levels().0,
            groups: t.groups().iter().map(ToString::to_string).collect(),
            maps: t.maps().iter().map(|m| m.matrix().to_rows()).collect(),
            tail: t.tail(),
        }
    }

    pub fn to_tower(&self) -> Result<GroupTower<i64>, DocError> {
        let groups = self.groups.iter().map(|g| parse_group(g)).collect::<Result<Vec<_>, _>>()?;
        if self.maps.len() + 1 != groups.len() {
            return err(
                0,
                format!(
                    "{} groups need {} maps, found {}",
                    groups.len(),
                    groups.len().saturating_sub(1),
                    self.maps.len()
                ),
            );
        }
        let mut maps = Vec::new();
        for (k, rows) in self.maps.iter().enumerate() {
            let (src, tgt) = (&groups[k + 1], &groups[k]);
            let m = to_matrix(rows, src.num_generators())?;
            let h = GroupHom::new(src.clone(), tgt.clone(), m)
                .map_err(|e| DocError { line: 0, message: format!("map {}: {}", k, e) })?;
            maps.push(h);
        }
        GroupTower::new(&self.name, self.start, groups, maps, self.tail)
            .map_err(|e| DocError { line: 0, message: e.to_string() })
    }
}

/// Pair of K_0 and K_1 towers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTowerDoc {
    pub k0: GroupTowerDoc,
    pub k1: GroupTowerDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapEntry {
    Matrix(Vec<Vec<i64>>),
    Keyword(String),
}

/// JSON form of a six-term exact sequence: six nodes (group text or
/// `null` for unknown) and six maps (`"zero"`, `"unknown"` or a matrix).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SixTermDoc {
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    pub nodes: Vec<Option<String>>,
    pub maps: Vec<MapEntry>,
}

impl SixTermDoc {
    pub fn to_sixterm(&self) -> Result<SixTerm<i64>, DocError> {
        if self.nodes.len() != 6 || self.maps.len() != 6 {
            return err(0, "a six-term sequence needs exactly 6 nodes and 6 maps");
        }
        let nodes: Vec<NodeSlot<i64>> = self
            .nodes
            .iter()
            .map(|n| match n {
                Some(s) => parse_group(s).map(NodeSlot::Known),
                None => Ok(NodeSlot::Unknown),
            })
            .collect::<Result<_, _>>()?;
        let mut maps = Vec::new();
        for (k, m) in self.maps.iter().enumerate() {
            let slot = match m {
                MapEntry::Keyword(w) if w == "zero" => MapSlot::Zero,
                MapEntry::Keyword(w) if w == "unknown" => MapSlot::Unknown,
                MapEntry::Keyword(w) => return err(0, format!("map {}: unknown keyword '{}'", k, w)),
                MapEntry::Matrix(rows) => {
                    let (NodeSlot::Known(src), NodeSlot::Known(tgt)) = (&nodes[k], &nodes[(k + 1) % 6]) else {
                        return err(0, format!("map {}: a matrix needs both endpoints known", k));
                    };
                    let m = to_matrix(rows, src.num_generators())?;
                    if m.rows() != tgt.num_generators() {
                        return err(0, format!("map {}: expected {} rows", k, tgt.num_generators()));
                    }
                    let h = GroupHom::new(src.clone(), tgt.clone(), m)
                        .map_err(|e| DocError { line: 0, message: format!("map {}: {}", k, e) })?;
                    MapSlot::Known(h)
                }
            };
            maps.push(slot);
        }
        let nodes: [NodeSlot<i64>; 6] =
            nodes.try_into().map_err(|_| DocError { line: 0, message: "six nodes".into() })?;
        let maps: [MapSlot<i64>; 6] = maps.try_into().map_err(|_| DocError { line: 0, message: "six maps".into() })?;
        let mut st = SixTerm::new(nodes, maps);
        match &self.labels {
            Some(l) if l.len() == 6 => st.labels = std::array::from_fn(|k| l[k].clone()),
            Some(_) => return err(0, "labels must have 6 entries"),
            None => {}
        }
        Ok(st)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
# toy
presentation toy
level 1
ring int
generators one, zero, x, u[1..2,1]
relation r1: x*x - 1   # involution
relation r2: u[1,1]*u[2,1] - u[2,1]*u[1,1]
norm x <= 1
norm u[1,1] <= 3/2
";

    #[test]
    fn parses_small_document() {
        let d = PresentationDoc::parse(SMALL).unwrap();
        assert_eq!(d.name, "toy");
        assert_eq!(d.ring, Ring::Int);
        assert_eq!(d.generators.len(), 5);
        assert_eq!(d.norms[1].bound, Ratio::new(3, 2));
        let p = d.to_presentation().unwrap();
        assert_eq!(p.relation_count(), 2);
        let again = PresentationDoc::parse(&d.render()).unwrap();
        assert_eq!(again, d);
        assert_eq!(again.render(), d.render());
    }

    #[test]
    fn rejects_bad_documents() {
        let bad = |s: &str| PresentationDoc::parse(s).unwrap_err();
        assert!(bad("presentation p\n").message.contains("level"));
        assert_eq!(bad("presentation p\nlevel 1\ngenerators x\nrelation r: y\n").line, 4);
        assert!(bad("presentation p\nlevel 1\nring int\ngenerators x\nrelation r: q*x\n").message.contains("integer"));
        assert!(bad("presentation p\nlevel 1\nfoo\n").message.contains("unknown directive"));
        assert!(bad("presentation p\nlevel 1\ngenerators x\nrelation r: x - x\n").message.contains("zero"));
        assert!(bad("presentation p\nlevel 1\ngenerators x\nnorm y <= 1\n").message.contains("not a known"));
        assert!(bad("presentation p\nlevel 1\ngenerators u[2..1]\n").message.contains("empty range"));
        assert!(bad("presentation p\nlevel 3\ngenerators x\nrelations su_q\n").message.contains("match"));
    }

    #[test]
    fn suq_round_trip_both_forms() {
        for n in 2..=3 {
            let p = qpres::build_suq(n).unwrap();
            for explicit in [false, true] {
                let d = PresentationDoc::from_presentation(&p, explicit);
                let text = d.render();
                assert!(text.contains(&format!("generators one, zero, u[1..{n},1..{n}]")));
                let back = PresentationDoc::parse(&text).unwrap();
                assert_eq!(back, d);
                let q = back.to_presentation().unwrap();
                assert_eq!(q.relations(), p.relations());
            }
        }
    }

    #[test]
    fn tower_doc() {
        let d = TowerDoc::parse("tower w\nfamily w\nsections naive\n").unwrap();
        assert_eq!(TowerDoc::parse(&d.render()).unwrap(), d);
        assert!(TowerDoc::parse("family w\nsections none\n").is_err());
        let s = TowerDoc::parse("family su_q\n").unwrap();
        assert!(!s.naive_sections);
        assert!(!s.build(2, 3).unwrap().has_sections());
    }

    #[test]
    fn group_tower_json() {
        let json = r#"{"name":"t","start":1,"groups":["Z","Z^2"],"maps":[[[1,1]]],"tail":"constant"}"#;
        let d: GroupTowerDoc = serde_json::from_str(json).unwrap();
        assert!(d.to_tower().is_err(), "Z -> Z^2 tail is not constant");
        let json = r#"{"name":"t","start":1,"groups":["Z","Z^2"],"maps":[[[1,1]]]}"#;
        let d: GroupTowerDoc = serde_json::from_str(json).unwrap();
        let t = d.to_tower().unwrap();
        assert_eq!(GroupTowerDoc::from_tower(&t), d);
    }

    #[test]
    fn sixterm_json() {
        let json =
            r#"{"nodes":["Z",null,"Z","Z",null,"0"],"maps":["unknown","unknown","zero","unknown","unknown","zero"]}"#;
        let d: SixTermDoc = serde_json::from_str(json).unwrap();
        assert!(d.to_sixterm().is_ok());
        let bad = r#"{"nodes":["Z",null,"Z","Z",null,"0"],"maps":[[[1]],"unknown","zero","unknown","unknown","zero"]}"#;
        assert!(serde_json::from_str::<SixTermDoc>(bad).unwrap().to_sixterm().is_err());
    }
}
