use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use super::laurent::Laurent;
use super::poly::{Monomial, TensorPoly};
use super::symbol::{GenSymbol, Word};
use super::AlgebraError;
use crate::scalar::Scalar;

/// Default bound on rewrite steps.
pub const DEFAULT_STEP_LIMIT: usize = 1_000_000;

/// An oriented relation `lhs -> rhs` with every monomial of `rhs` strictly
/// below `lhs` in the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule<T: Scalar> {
    lhs: Word,
    rhs: TensorPoly<T>,
    origin: String,
}

impl<T: Scalar> RewriteRule<T> {
    /// Orients a degree-1 relation `r = 0` at its leading monomial. The
    /// leading coefficient must be a unit `±q^k`.
    pub fn orient(origin: &str, relation: &TensorPoly<T>) -> Result<Self, AlgebraError> {
        if relation.degree() != 1 {
            return Err(AlgebraError::DegreeMismatch { left: 1, right: relation.degree() });
        }
        let (lead, c) = relation.leading().ok_or_else(|| AlgebraError::ZeroRelation(origin.to_string()))?;
        let lhs = lead[0].clone();
        if lhs.is_empty() {
            return Err(AlgebraError::ScalarRelation(origin.to_string()));
        }
        let inv = c
            .inverse()
            .ok_or_else(|| AlgebraError::NonUnitLeading { relation: origin.to_string(), coefficient: c.to_string() })?;
        let normalized = relation.scale(&inv);
        let lead_term = TensorPoly::word(lhs.clone());
        let rhs = -&(&normalized - &lead_term);
        Ok(RewriteRule { lhs, rhs, origin: origin.to_string() })
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &TensorPoly<T> {
        &self.rhs
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    /// `lhs - rhs`, a unit multiple of the originating relation.
    pub fn relation(&self) -> TensorPoly<T> {
        &TensorPoly::word(self.lhs.clone()) - &self.rhs
    }
}

impl<T: Scalar> fmt::Display for RewriteRule<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}  [{}]", self.lhs, self.rhs, self.origin)
    }
}

/// An indexed, ordered collection of rules.
#[derive(Clone, Debug, Default)]
pub struct RuleSet<T: Scalar> {
    rules: Vec<RewriteRule<T>>,
    by_first: HashMap<GenSymbol, Vec<usize>>,
}

impl<T: Scalar> RuleSet<T> {
    pub fn new(rules: Vec<RewriteRule<T>>) -> Self {
        let mut by_first: HashMap<GenSymbol, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            by_first.entry(r.lhs.letters()[0].clone()).or_default().push(i);
        }
        RuleSet { rules, by_first }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new())
    }

    pub fn rules(&self) -> &[RewriteRule<T>] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Leftmost `(position, rule index)` matching inside `w`.
    fn first_match(&self, w: &Word) -> Option<(usize, usize)> {
        let letters = w.letters();
        for pos in 0..letters.len() {
            if let Some(cands) = self.by_first.get(&letters[pos]) {
                for &ri in cands {
                    let lhs = self.rules[ri].lhs.letters();
                    if pos + lhs.len() <= letters.len() && &letters[pos..pos + lhs.len()] == lhs {
                        return Some((pos, ri));
                    }
                }
            }
        }
        None
    }
}

/// One rule application: `coeff * (prefix · relation · suffix)` was
/// subtracted in leg `leg` of `monomial`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep<T: Scalar> {
    pub monomial: Monomial,
    pub leg: usize,
    pub pos: usize,
    pub rule: usize,
    pub coeff: Laurent<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStatus<T: Scalar> {
    ReducedToZero,
    NormalForm(TensorPoly<T>),
    /// The step budget ran out; carries the partially reduced value.
    StepLimit(TensorPoly<T>),
}

#[derive(Clone, Debug)]
pub struct ReductionOutcome<T: Scalar> {
    pub status: ReductionStatus<T>,
    pub steps: usize,
    pub trace: Vec<TraceStep<T>>,
}

impl<T: Scalar> ReductionOutcome<T> {
    pub fn is_zero(&self) -> bool {
        matches!(self.status, ReductionStatus::ReducedToZero)
    }

    /// What is left after reduction (zero when reduced to zero).
    pub fn remainder(&self, degree: usize) -> TensorPoly<T> {
        match &self.status {
            ReductionStatus::ReducedToZero => TensorPoly::zero(degree),
            ReductionStatus::NormalForm(p) | ReductionStatus::StepLimit(p) => p.clone(),
        }
    }
}

fn embed<T: Scalar>(monomial: &Monomial, leg: usize, pos: usize, rule: &RewriteRule<T>) -> TensorPoly<T> {
    let w = &monomial[leg];
    let prefix = w.slice(0, pos);
    let suffix = w.slice(pos + rule.lhs.len(), w.len());
    let mut out = TensorPoly::zero(monomial.len());
    for (rl, rc) in rule.relation().terms() {
        let mut legs = monomial.clone();
        legs[leg] = prefix.concat(&rl[0]).concat(&suffix);
        out.add_normalized(legs, rc.clone());
    }
    out
}

/// Reduces every leg against the same rule set.
pub fn reduce<T: Scalar>(p: &TensorPoly<T>, rules: &RuleSet<T>, step_limit: usize) -> ReductionOutcome<T> {
    let per_leg = vec![rules; p.degree()];
    reduce_legwise(p, &per_leg, step_limit)
}

/// Reduces leg `i` against `per_leg[i]`.
///
/// Each step rewrites the leftmost occurrence in the order-greatest
/// reducible monomial; ties between rules go to the lowest rule index.
pub fn reduce_legwise<T: Scalar>(p: &TensorPoly<T>, per_leg: &[&RuleSet<T>], step_limit: usize) -> ReductionOutcome<T> {
    assert_eq!(per_leg.len(), p.degree(), "one rule set per tensor leg");
    let mut cur = p.clone();
    let mut trace = Vec::new();
    let mut steps = 0;
    loop {
        let found = cur.terms().rev().find_map(|(legs, c)| {
            legs.iter()
                .enumerate()
                .find_map(|(l, w)| per_leg[l].first_match(w).map(|(pos, ri)| (legs.clone(), c.clone(), l, pos, ri)))
        });
        let Some((monomial, coeff, leg, pos, rule)) = found else {
            let status = if cur.is_zero() { ReductionStatus::ReducedToZero } else { ReductionStatus::NormalForm(cur) };
            return ReductionOutcome { status, steps, trace };
        };
        if steps >= step_limit {
            return ReductionOutcome { status: ReductionStatus::StepLimit(cur), steps, trace };
        }
        let delta = embed(&monomial, leg, pos, &per_leg[leg].rules[rule]).scale(&coeff);
        cur = &cur - &delta;
        trace.push(TraceStep { monomial, leg, pos, rule, coeff });
        steps += 1;
    }
}

/// Replays a trace as relation-multiple subtractions and checks that it
/// reproduces `original` exactly.
pub fn replay_trace<T: Scalar>(
    original: &TensorPoly<T>,
    outcome: &ReductionOutcome<T>,
    per_leg: &[&RuleSet<T>],
) -> bool {
    let d = original.degree();
    let mut acc = outcome.remainder(d);
    for s in &outcome.trace {
        if s.leg >= d || s.rule >= per_leg[s.leg].rules.len() {
            return false;
        }
        let rule = &per_leg[s.leg].rules[s.rule];
        if s.monomial[s.leg].slice(s.pos, (s.pos + rule.lhs.len()).min(s.monomial[s.leg].len())) != rule.lhs {
            return false;
        }
        if s.coeff.is_zero() {
            return false;
        }
        acc = &acc + &embed(&s.monomial, s.leg, s.pos, rule).scale(&s.coeff);
    }
    acc == *original
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    type P = TensorPoly<i64>;
    type L = Laurent<i64>;

    fn u(i: u32, j: u32) -> P {
        P::generator(GenSymbol::matrix("u", i, j))
    }

    fn det2() -> P {
        // u11 u22 - q u12 u21 - 1
        &(&(&u(1, 1) * &u(2, 2)) - &(&u(1, 2) * &u(2, 1)).scale(&L::q())) - &P::unit(1)
    }

    #[test]
    fn orient_determinant() {
        let r = RewriteRule::orient("det[1,2]", &det2()).unwrap();
        assert_eq!(r.lhs().to_string(), "u[1,1]*u[2,2]");
        assert_eq!(r.rhs().to_string(), "q*u[1,2]*u[2,1] + 1");
        assert_eq!(r.relation(), det2());
    }

    #[test]
    fn orient_rejects_non_unit() {
        let bad = &u(1, 1).scale(&L::constant(2)) - &P::unit(1);
        assert!(matches!(RewriteRule::orient("bad", &bad), Err(AlgebraError::NonUnitLeading { .. })));
        assert!(matches!(RewriteRule::orient("z", &P::zero(1)), Err(AlgebraError::ZeroRelation(_))));
        assert!(matches!(RewriteRule::orient("s", &P::unit(1)), Err(AlgebraError::ScalarRelation(_))));
    }

    #[test]
    fn reduces_relation_to_zero_in_one_step() {
        let rules = RuleSet::new(vec![RewriteRule::orient("det[1,2]", &det2()).unwrap()]);
        let out = reduce(&det2(), &rules, DEFAULT_STEP_LIMIT);
        assert!(out.is_zero());
        assert_eq!(out.steps, 1);
        assert!(replay_trace(&det2(), &out, &[&rules]));
    }

    #[test]
    fn zero_polynomial_takes_no_steps() {
        let out = reduce(&P::zero(1), &RuleSet::empty(), 10);
        assert!(out.is_zero());
        assert_eq!(out.steps, 0);
    }

    #[test]
    fn step_limit_is_a_value() {
        let rules = RuleSet::new(vec![RewriteRule::orient("det[1,2]", &det2()).unwrap()]);
        let p = &(&u(1, 1) * &u(2, 2)) * &(&u(1, 1) * &u(2, 2));
        let out = reduce(&p, &rules, 1);
        assert!(matches!(out.status, ReductionStatus::StepLimit(_)));
        assert!(replay_trace(&p, &out, &[&rules]));
        let full = reduce(&p, &rules, 100);
        assert!(matches!(full.status, ReductionStatus::NormalForm(_)));
        assert!(replay_trace(&p, &full, &[&rules]));
    }

    #[test]
    fn legwise_rules() {
        let rules = RuleSet::new(vec![RewriteRule::orient("det[1,2]", &det2()).unwrap()]);
        let empty = RuleSet::empty();
        let p = det2().tensor(&det2());
        let only_first = reduce_legwise(&p, &[&rules, &empty], 100);
        assert!(only_first.is_zero());
        assert!(replay_trace(&p, &only_first, &[&rules, &empty]));
        let q = P::unit(1).tensor(&det2());
        let none = reduce_legwise(&q, &[&rules, &empty], 100);
        assert!(!none.is_zero());
        assert!(L::one() == q.coefficient(&[Word::unit(), Word::unit()]).scale(&-1));
    }

    #[test]
    fn tampered_trace_fails_replay() {
        let rules = RuleSet::new(vec![RewriteRule::orient("det[1,2]", &det2()).unwrap()]);
        let mut out = reduce(&det2(), &rules, 10);
        out.trace[0].coeff = L::q();
        assert!(!replay_trace(&det2(), &out, &[&rules]));
    }
}
