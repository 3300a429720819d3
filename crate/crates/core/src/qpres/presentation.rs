use std::fmt;
use std::sync::{Arc, OnceLock};

use num_rational::Ratio;

use super::esymbol::{count_inversions, permutations};
use super::QpresError;
use crate::ncalg::{GenSymbol, RewriteRule, Word};
use crate::{LaurentInt, Poly, Rules};

/// A named algebraic relation `poly = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub id: String,
    pub poly: Poly,
}

/// A norm bound `‖g‖ <= bound`. Carried as metadata only; never rewritten.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormBound {
    pub generator: GenSymbol,
    pub bound: Ratio<i64>,
}

#[derive(Clone, Debug)]
enum RelationSource {
    Stored(Vec<Relation>),
    /// Unitarity plus every determinant row of `C(SU_q(n))`, generated on demand.
    SuQ,
}

/// Generators with algebraic and norm relations.
#[derive(Debug)]
pub struct Presentation {
    name: String,
    level: usize,
    generators: Vec<GenSymbol>,
    norm_relations: Vec<NormBound>,
    source: RelationSource,
    materialized: OnceLock<Vec<Relation>>,
    rules: OnceLock<Result<Rules, QpresError>>,
}

impl Presentation {
    /// A presentation with explicitly listed relations. Relations must be
    /// normalized, nonzero and of tensor degree 1.
    pub fn new(
        name: &str,
        level: usize,
        mut generators: Vec<GenSymbol>,
        relations: Vec<Relation>,
        norm_relations: Vec<NormBound>,
    ) -> Result<Self, QpresError> {
        for g in [GenSymbol::one(), GenSymbol::zero()] {
            if !generators.contains(&g) {
                generators.push(g);
            }
        }
        generators.sort_by(|a, b| b.cmp(a));
        generators.dedup();
        for r in &relations {
            if r.poly.degree() != 1 {
                return Err(QpresError::BadRelation(r.id.clone(), "tensor degree must be 1".into()));
            }
            if r.poly.is_zero() {
                return Err(QpresError::BadRelation(r.id.clone(), "normalizes to zero".into()));
            }
            if let Some(g) = r.poly.generators().into_iter().find(|g| !generators.contains(g)) {
                return Err(QpresError::UnknownGenerator(g.to_string()));
            }
        }
        for nb in &norm_relations {
            if !generators.contains(&nb.generator) {
                return Err(QpresError::UnknownGenerator(nb.generator.to_string()));
            }
        }
        Ok(Presentation {
            name: name.to_string(),
            level,
            generators,
            norm_relations,
            source: RelationSource::Stored(relations),
            materialized: OnceLock::new(),
            rules: OnceLock::new(),
        })
    }

    pub(crate) fn suq(n: usize) -> Self {
        let mut generators = vec![GenSymbol::one(), GenSymbol::zero()];
        for i in 1..=n as u32 {
            for j in 1..=n as u32 {
                generators.push(GenSymbol::matrix("u", i, j));
            }
        }
        generators.sort_by(|a, b| b.cmp(a));
        Presentation {
            name: format!("su_q({})", n),
            level: n,
            generators,
            norm_relations: Vec::new(),
            source: RelationSource::SuQ,
            materialized: OnceLock::new(),
            rules: OnceLock::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Generators in descending letter precedence, `one` and `zero` included.
    pub fn generators(&self) -> &[GenSymbol] {
        &self.generators
    }

    pub fn has_generator(&self, g: &GenSymbol) -> bool {
        self.generators.contains(&g.unstarred())
    }

    pub fn norm_relations(&self) -> &[NormBound] {
        &self.norm_relations
    }

    pub fn norm_bound(&self, g: &GenSymbol) -> Option<Ratio<i64>> {
        self.norm_relations.iter().find(|nb| nb.generator == *g).map(|nb| nb.bound)
    }

    /// True when the relations are the generated `SU_q(n)` family rather than a stored list.
    pub fn is_generated(&self) -> bool {
        matches!(self.source, RelationSource::SuQ)
    }

    pub fn relation_count(&self) -> usize {
        match &self.source {
            RelationSource::Stored(v) => v.len(),
            RelationSource::SuQ => 2 * self.level * self.level + self.level.pow(self.level as u32),
        }
    }

    /// The `idx`-th algebraic relation, generated on demand for `SU_q`.
    pub fn relation(&self, idx: usize) -> Relation {
        match &self.source {
            RelationSource::Stored(v) => v[idx].clone(),
            RelationSource::SuQ => suq_relation(self.level, idx),
        }
    }

    /// All algebraic relations, materialized and cached on first use.
    pub fn relations(&self) -> &[Relation] {
        match &self.source {
            RelationSource::Stored(v) => v,
            RelationSource::SuQ => {
                self.materialized.get_or_init(|| (0..self.relation_count()).map(|i| self.relation(i)).collect())
            }
        }
    }

    /// The relations oriented as rewrite rules (cached).
    pub fn rules(&self) -> Result<&Rules, QpresError> {
        self.rules
            .get_or_init(|| {
                let rules = self
                    .relations()
                    .iter()
                    .map(|r| RewriteRule::orient(&r.id, &r.poly))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Rules::new(rules))
            })
            .as_ref()
            .map_err(Clone::clone)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (level {}, {} generators, {} relations, {} norm bounds)",
            self.name,
            self.level,
            self.generators.len(),
            self.relation_count(),
            self.norm_relations.len()
        )
    }
}

fn u(i: u32, j: u32) -> GenSymbol {
    GenSymbol::matrix("u", i, j)
}

fn delta(i: u32, j: u32) -> Poly {
    if i == j {
        Poly::unit(1)
    } else {
        Poly::zero(1)
    }
}

/// Decodes a row index into the tuple `(j_1, …, j_n)`, first entry most significant.
fn row_tuple(n: usize, mut idx: usize) -> Vec<u32> {
    let mut t = vec![0u32; n];
    for slot in t.iter_mut().rev() {
        *slot = (idx % n) as u32 + 1;
        idx /= n;
    }
    t
}

fn fmt_tuple(t: &[u32]) -> String {
    t.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Relation `idx` of `C(SU_q(n))`: first the `n²` row-unitarity relations,
/// then the `n²` column-unitarity relations, then the `n^n` determinant rows
/// in lexicographic order of the row tuple.
pub(crate) fn suq_relation(n: usize, idx: usize) -> Relation {
    let nn = n * n;
    if idx < 2 * nn {
        let (col, k) = (idx >= nn, idx % nn);
        let (i, j) = ((k / n) as u32 + 1, (k % n) as u32 + 1);
        let mut p = -&delta(i, j);
        for k in 1..=n as u32 {
            let w = if col { Word(vec![u(k, i).star(), u(k, j)]) } else { Word(vec![u(i, k), u(j, k).star()]) };
            p = &p + &Poly::word(w);
        }
        let id = if col { format!("unitary_col[{},{}]", i, j) } else { format!("unitary_row[{},{}]", i, j) };
        return Relation { id, poly: p };
    }
    let row = row_tuple(n, idx - 2 * nn);
    Relation { id: format!("det[{}]", fmt_tuple(&row)), poly: determinant_row(n, &row) }
}

/// `Σ_σ E_σ u_{j1 σ1} … u_{jn σn} − E_j · 1`.
pub(crate) fn determinant_row(n: usize, row: &[u32]) -> Poly {
    let mut terms = Vec::new();
    for sigma in permutations(n) {
        let c = LaurentInt::neg_q_pow(count_inversions(&sigma) as i64);
        let w = Word(row.iter().zip(&sigma).map(|(&j, &i)| u(j, i)).collect());
        terms.push((vec![w], c));
    }
    let mut distinct = row.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() == n {
        terms.push((vec![Word::unit()], -LaurentInt::neg_q_pow(count_inversions(row) as i64)));
    }
    Poly::from_raw(1, terms)
}

/// Shared handle used by morphisms and towers.
pub type PresentationRef = Arc<Presentation>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_decoding() {
        assert_eq!(row_tuple(2, 0), vec![1, 1]);
        assert_eq!(row_tuple(2, 1), vec![1, 2]);
        assert_eq!(row_tuple(3, 26), vec![3, 3, 3]);
    }

    #[test]
    fn determinant_rows_n2() {
        assert_eq!(determinant_row(2, &[1, 2]).to_string(), "u[1,1]*u[2,2] - q*u[1,2]*u[2,1] - 1");
        assert_eq!(determinant_row(2, &[1, 1]).to_string(), "u[1,1]*u[1,2] - q*u[1,2]*u[1,1]");
        assert_eq!(determinant_row(2, &[2, 1]).to_string(), "u[2,1]*u[1,2] - q*u[2,2]*u[1,1] + q");
    }

    #[test]
    fn unitarity_n2() {
        let p = Presentation::suq(2);
        assert_eq!(p.relation(0).id, "unitary_row[1,1]");
        assert_eq!(p.relation(0).poly.to_string(), "u[1,1]*u[1,1]' + u[1,2]*u[1,2]' - 1");
        assert_eq!(p.relation(5).id, "unitary_col[1,2]");
        assert_eq!(p.relation(5).poly.to_string(), "u[1,1]'*u[1,2] + u[2,1]'*u[2,2]");
    }

    #[test]
    fn stored_presentation_validation() {
        let g = GenSymbol::new("x", &[]);
        let bad = Relation { id: "r".into(), poly: Poly::generator(GenSymbol::new("y", &[])) };
        assert!(matches!(
            Presentation::new("p", 1, vec![g.clone()], vec![bad], vec![]),
            Err(QpresError::UnknownGenerator(_))
        ));
        let zero = Relation { id: "z".into(), poly: Poly::zero(1) };
        assert!(matches!(
            Presentation::new("p", 1, vec![g.clone()], vec![zero], vec![]),
            Err(QpresError::BadRelation(..))
        ));
        let ok = Presentation::new("p", 1, vec![g], vec![], vec![]).unwrap();
        assert_eq!(ok.generators().len(), 3);
    }
}
