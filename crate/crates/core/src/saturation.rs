//! Given-clause saturation.
//!
//! Otter-style loop: a clause picked from the passive set is simplified by
//! the active unit equations, dropped if redundant, then used to simplify the
//! active set and to generate inferences with it.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::clause::{Atom, Head, HornClause};
use crate::kbo;
use crate::problem::{ClauseRole, NamedClause};
use crate::rules::{self, Detail, Inferred, RewriteIndex, Site};
use crate::term::{FunId, Signature, Substitution, Term, Var};
use crate::tstp::{Derivation, Justification, Step};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Strategy {
    /// Picks by age, then by weight, in this ratio.
    pub age: u32,
    pub weight: u32,
    pub use_ordering: bool,
    pub max_clauses: usize,
    pub max_time: Duration,
}

impl Strategy {
    pub fn new(age: u32, weight: u32, use_ordering: bool) -> Strategy {
        assert!(age + weight > 0, "age:weight ratio 0:0");
        Strategy {
            age,
            weight,
            use_ordering,
            max_clauses: 10_000,
            max_time: Duration::from_secs(10),
        }
    }

    pub fn with_budget(mut self, max_clauses: usize, max_time: Duration) -> Strategy {
        self.max_clauses = max_clauses;
        self.max_time = max_time;
        self
    }
}

/// `1:4o` is age:weight 1:4 with ordering, `1:1u` without.
impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = if self.use_ordering { 'o' } else { 'u' };
        write!(f, "{}:{}{}", self.age, self.weight, o)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad strategy `{0}`: expected AGE:WEIGHT followed by `o` (ordered) or `u` (unordered)")]
pub struct StrategyParseError(String);

impl FromStr for Strategy {
    type Err = StrategyParseError;

    fn from_str(s: &str) -> Result<Strategy, StrategyParseError> {
        let bad = || StrategyParseError(s.to_string());
        let (ratio, ordered) = match s.strip_suffix('o') {
            Some(r) => (r, true),
            None => (s.strip_suffix('u').ok_or_else(bad)?, false),
        };
        let (a, w) = ratio.split_once(':').ok_or_else(bad)?;
        let age: u32 = a.parse().map_err(|_| bad())?;
        let weight: u32 = w.parse().map_err(|_| bad())?;
        if age + weight == 0 {
            return Err(bad());
        }
        Ok(Strategy::new(age, weight, ordered))
    }
}

pub fn default_portfolio() -> Vec<Strategy> {
    vec![
        Strategy::new(1, 1, false),
        Strategy::new(1, 4, true),
        Strategy::new(4, 1, true),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Refutation(Derivation),
    Saturated,
    BudgetExhausted,
}

impl Outcome {
    pub fn is_refutation(&self) -> bool {
        matches!(self, Outcome::Refutation(_))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub generated: usize,
    pub kept: usize,
    pub selected: usize,
    pub active: usize,
}

#[derive(Clone, Debug)]
enum Just {
    Input { name: String, role: ClauseRole },
    Inference { rule: &'static str, parents: Vec<usize> },
}

#[derive(Clone, Debug)]
struct Record {
    clause: HornClause,
    just: Just,
}

/// What one iteration of the loop did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepResult {
    /// The clause selected this round, after simplification, or `None` when it
    /// turned out redundant.
    Selected(Option<HornClause>),
    Refuted,
    Saturated,
    BudgetExhausted,
}

pub struct ProverState<'a> {
    sig: &'a Signature,
    strategy: Strategy,
    records: Vec<Record>,
    active: Vec<usize>,
    passive_age: BTreeSet<usize>,
    passive_weight: BTreeSet<(usize, usize)>,
    picks: u64,
    start: Instant,
    empty: Option<usize>,
    stats: Stats,
    /// Canonical forms of every clause ever made passive.
    seen: HashSet<HornClause>,
    /// Active unit equations, for forward demodulation.
    rewrites: RewriteIndex,
}

/// Renumbers variables 0.. by first occurrence.
fn normalize(c: &HornClause) -> HornClause {
    let mut ren = Substitution::new();
    for (i, v) in c.vars().iter().enumerate() {
        ren.insert(*v, Term::Var(Var::new(i as u32, v.sort)));
    }
    c.apply(&ren)
}

impl<'a> ProverState<'a> {
    pub fn new(sig: &'a Signature, clauses: &[NamedClause], strategy: Strategy) -> ProverState<'a> {
        let mut st = ProverState {
            sig,
            strategy,
            records: Vec::new(),
            active: Vec::new(),
            passive_age: BTreeSet::new(),
            passive_weight: BTreeSet::new(),
            picks: 0,
            start: Instant::now(),
            empty: None,
            stats: Stats::default(),
            seen: HashSet::new(),
            rewrites: RewriteIndex::new(),
        };
        for nc in clauses {
            let idx = st.push_record(
                nc.clause.clone(),
                Just::Input {
                    name: nc.name.clone(),
                    role: nc.role,
                },
            );
            st.add_passive(idx);
        }
        st
    }

    pub fn stats(&self) -> Stats {
        Stats {
            active: self.active.len(),
            ..self.stats.clone()
        }
    }

    fn push_record(&mut self, clause: HornClause, just: Just) -> usize {
        self.records.push(Record { clause, just });
        let idx = self.records.len() - 1;
        if self.empty.is_none() && self.records[idx].clause.is_empty_clause() {
            self.empty = Some(idx);
        }
        idx
    }

    fn add_passive(&mut self, idx: usize) {
        self.stats.kept += 1;
        let w = self.records[idx].clause.weight();
        self.passive_age.insert(idx);
        self.passive_weight.insert((w, idx));
    }

    fn remove_passive(&mut self, idx: usize) {
        let w = self.records[idx].clause.weight();
        self.passive_age.remove(&idx);
        self.passive_weight.remove(&(w, idx));
    }

    fn pick(&mut self) -> Option<usize> {
        let cycle = u64::from(self.strategy.age + self.strategy.weight);
        let by_age = self.picks % cycle < u64::from(self.strategy.age);
        self.picks += 1;
        let idx = if by_age {
            *self.passive_age.iter().next()?
        } else {
            self.passive_weight.iter().next()?.1
        };
        self.remove_passive(idx);
        Some(idx)
    }

    fn out_of_budget(&self) -> bool {
        self.stats.kept > self.strategy.max_clauses || self.start.elapsed() > self.strategy.max_time
    }

    /// Runs until refutation, saturation, budget exhaustion or cancellation.
    pub fn run(&mut self, cancel: Option<&AtomicBool>) -> Outcome {
        loop {
            if cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
                return Outcome::BudgetExhausted;
            }
            match self.step() {
                StepResult::Selected(_) => {}
                StepResult::Refuted => return Outcome::Refutation(self.derivation()),
                StepResult::Saturated => return Outcome::Saturated,
                StepResult::BudgetExhausted => return Outcome::BudgetExhausted,
            }
        }
    }

    pub fn step(&mut self) -> StepResult {
        if self.empty.is_some() {
            return StepResult::Refuted;
        }
        if self.out_of_budget() {
            return StepResult::BudgetExhausted;
        }
        let Some(given) = self.pick() else {
            return StepResult::Saturated;
        };
        self.stats.selected += 1;
        let Some(given) = self.simplify(given) else {
            return StepResult::Selected(None);
        };
        if self.empty.is_some() {
            return StepResult::Refuted;
        }
        self.backward(given);
        self.active.push(given);
        self.rewrites.insert(given, &self.records[given].clause);
        self.generate(given);
        if self.empty.is_some() {
            return StepResult::Refuted;
        }
        StepResult::Selected(Some(self.records[given].clause.clone()))
    }


    /// Forward simplification. Returns the record of the simplified clause, or
    /// `None` when it is redundant.
    fn simplify(&mut self, mut idx: usize) -> Option<usize> {
        while let Some((u, next)) = self.rewrites.rewrite(self.sig, &self.records[idx].clause) {
            idx = self.push_record(
                normalize(&next),
                Just::Inference {
                    rule: "forward_demodulation",
                    parents: vec![idx, u],
                },
            );
        }
        idx = self.dedup(idx);
        let c = &self.records[idx].clause;
        if c.is_tautology() {
            return None;
        }
        if self
            .active
            .iter()
            .any(|&a| rules::subsumes(self.sig, &self.records[a].clause, c))
        {
            return None;
        }
        Some(idx)
    }

    /// Removes repeated body atoms one factoring step at a time.
    fn dedup(&mut self, mut idx: usize) -> usize {
        loop {
            let body = self.records[idx].clause.body();
            let mut pair = None;
            'find: for j in 0..body.len() {
                for i in 0..j {
                    if body[i].same_modulo_symmetry(&body[j]) {
                        pair = Some((i, j, body[i] != body[j]));
                        break 'find;
                    }
                }
            }
            let Some((i, j, flipped)) = pair else {
                return idx;
            };
            let inf = rules::factoring(self.sig, &self.records[idx].clause, i, j, flipped)
                .expect("identical atoms unify");
            idx = self.push_record(
                inf.conclusion,
                Just::Inference {
                    rule: "factoring",
                    parents: vec![idx],
                },
            );
        }
    }

    /// Backward subsumption and demodulation by the new active clause.
    fn backward(&mut self, given: usize) {
        let g = self.records[given].clause.clone();
        let unit = g.unit_equation().is_some();
        let mut rewritten = Vec::new();
        let mut removed = Vec::new();
        let sig = self.sig;
        let records = &self.records;
        self.active.retain(|&a| {
            let c = &records[a].clause;
            if rules::subsumes(sig, &g, c) {
                removed.push(a);
                return false;
            }
            if unit {
                if let Some(next) = rules::demodulate(sig, &g, c) {
                    rewritten.push((a, next));
                    return false;
                }
            }
            true
        });
        for &(a, _) in &rewritten {
            self.rewrites.remove(a);
        }
        for a in removed {
            self.rewrites.remove(a);
        }
        for (a, next) in rewritten {
            let idx = self.push_record(
                normalize(&next),
                Just::Inference {
                    rule: "backward_demodulation",
                    parents: vec![a, given],
                },
            );
            self.add_passive(idx);
        }
    }

    fn generate(&mut self, given: usize) {
        let sig = self.sig;
        let g = self.records[given].clause.clone();
        let mut out: Vec<(&'static str, Vec<usize>, Inferred)> = Vec::new();
        for &a in &self.active.clone() {
            let c = &self.records[a].clause;
            self.resolutions(&g, c, given, a, &mut out);
            self.superpositions(&g, c, given, a, &mut out);
            if a != given {
                self.resolutions(c, &g, a, given, &mut out);
                self.superpositions(c, &g, a, given, &mut out);
            }
        }
        for i in 0..g.body().len() {
            for j in 0..g.body().len() {
                if i == j {
                    continue;
                }
                for &flipped in flips(&g.body()[j]) {
                    if let Ok(inf) = rules::factoring(sig, &g, i, j, flipped) {
                        out.push(("factoring", vec![given], inf));
                    }
                }
            }
            if let Ok(inf) = rules::equality_resolution(sig, &g, i) {
                out.push(("equality_resolution", vec![given], inf));
            }
        }
        if let Some((Term::App(f, xs), Term::App(h, _))) = g.unit_equation().or_else(|| match g.head() {
            Head::Atom(Atom::Eq(l, r)) => Some((l, r)),
            _ => None,
        }) {
            if sig.is_constructor(*f) && sig.is_constructor(*h) {
                if f == h {
                    for k in 0..xs.len() {
                        if let Ok(inf) = rules::injectivity(sig, &g, k) {
                            out.push(("injectivity", vec![given], inf));
                        }
                    }
                } else if let Ok(inf) = rules::distinctness(sig, &g) {
                    out.push(("distinctness", vec![given], inf));
                }
            }
        }
        for (rule, parents, inf) in out {
            self.stats.generated += 1;
            let c = normalize(&inf.conclusion);
            if c.is_tautology() {
                continue;
            }
            let idx = self.push_record(c, Just::Inference { rule, parents });
            if self.empty.is_some() {
                return;
            }
            let Some(idx) = self.simplify(idx) else {
                continue;
            };
            if self.empty.is_some() {
                return;
            }
            if self.seen.insert(self.records[idx].clause.canonical()) {
                self.add_passive(idx);
            }
        }
    }

    fn resolutions(
        &self,
        left: &HornClause,
        right: &HornClause,
        li: usize,
        ri: usize,
        out: &mut Vec<(&'static str, Vec<usize>, Inferred)>,
    ) {
        if !matches!(left.head(), Head::Atom(_)) {
            return;
        }
        for (i, b) in right.body().iter().enumerate() {
            for &flipped in flips(b) {
                if let Ok(inf) = rules::resolution(self.sig, left, right, i, flipped) {
                    out.push(("resolution", vec![li, ri], inf));
                }
            }
        }
    }

    fn superpositions(
        &self,
        eq: &HornClause,
        target: &HornClause,
        ei: usize,
        ti: usize,
        out: &mut Vec<(&'static str, Vec<usize>, Inferred)>,
    ) {
        let Head::Atom(Atom::Eq(l, r)) = eq.head() else { return };
        let usable = |flipped: bool| {
            let (from, to) = if flipped { (r, l) } else { (l, r) };
            !(self.strategy.use_ordering && kbo::greater(to, from))
        };
        for loc in rules::superposition_locations(eq, target) {
            if !usable(loc.flipped) {
                continue;
            }
            let from = if loc.flipped { r } else { l };
            let atom = match loc.site {
                Site::Head => match target.head() {
                    Head::Atom(a) => a,
                    _ => continue,
                },
                Site::Body(i) => &target.body()[i],
            };
            if let (Some(f), Some(sub)) = (from.head(), atom.subterm_at(&loc.position)) {
                if sub.head() != Some(f) {
                    continue;
                }
            }
            let Ok(inf) = rules::superposition(self.sig, eq, target, &loc) else {
                continue;
            };
            if self.strategy.use_ordering && !self.ordered_ok(&inf) {
                continue;
            }
            out.push(("superposition", vec![ei, ti], inf));
        }
    }

    /// Rewrites must not go from smaller to larger, and must happen in a side
    /// of an equation that is not smaller than the other side. Both premises'
    /// literals must also be maximal in their instantiated clauses.
    fn ordered_ok(&self, inf: &Inferred) -> bool {
        let Detail::Superposition { site, from, to, atom, paths, .. } = &inf.detail else {
            return true;
        };
        let site_ok = match site {
            Site::Head => maximal(&inf.premises[1], &inf.sigma, None, true),
            Site::Body(i) => maximal(&inf.premises[1], &inf.sigma, Some(*i), false),
        };
        if !site_ok || !maximal(&inf.premises[0], &inf.sigma, None, true) {
            return false;
        }
        if kbo::greater(to, from) {
            return false;
        }
        if let (Atom::Eq(l, r), Some(side)) = (atom, paths[0].first()) {
            let (this, other) = if *side == 0 { (l, r) } else { (r, l) };
            if kbo::greater(other, this) {
                return false;
            }
        }
        true
    }

    /// The ancestors of the empty clause, numbered 1.. in creation order.
    pub fn derivation(&self) -> Derivation {
        match self.empty {
            Some(root) => self.ancestors(root),
            None => Derivation::default(),
        }
    }

    /// Every clause made so far, in creation order.
    pub fn clauses(&self) -> impl Iterator<Item = &HornClause> {
        self.records.iter().map(|r| &r.clause)
    }

    /// Derivation of the first clause made so far that is a variant of `c`.
    pub fn derivation_of(&self, c: &HornClause) -> Option<Derivation> {
        let want = c.canonical();
        let root = self.records.iter().position(|r| r.clause.canonical() == want)?;
        Some(self.ancestors(root))
    }

    fn ancestors(&self, root: usize) -> Derivation {
        let mut used = vec![false; self.records.len()];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            if std::mem::replace(&mut used[i], true) {
                continue;
            }
            if let Just::Inference { parents, .. } = &self.records[i].just {
                stack.extend(parents);
            }
        }
        let mut ids = vec![0usize; self.records.len()];
        let mut steps = Vec::new();
        for (i, rec) in self.records.iter().enumerate() {
            if !used[i] {
                continue;
            }
            let id = steps.len() + 1;
            ids[i] = id;
            let (role, justification) = match &rec.just {
                Just::Input { name, role } => match role {
                    ClauseRole::NegatedGoal => ("negated_conjecture", Justification::NegatedConjecture),
                    ClauseRole::Hypothesis => ("hypothesis", Justification::Input(name.clone())),
                    ClauseRole::Axiom => ("axiom", Justification::Input(name.clone())),
                },
                Just::Inference { rule, parents } => (
                    "plain",
                    Justification::Inference {
                        rule: rule.to_string(),
                        premises: parents.iter().map(|p| ids[*p]).collect(),
                    },
                ),
            };
            steps.push(Step {
                id,
                name: format!("c{id}"),
                role: role.to_string(),
                clause: rec.clause.clone(),
                justification,
            });
        }
        Derivation { steps }
    }
}

/// A literal as a multiset of terms: `s = t` is `{s, t}` and `s ≠ t` is
/// `{s, s, t, t}`. A predicate atom `P(t)` stands for `P(t) = ⊤` with `P`
/// above every function symbol; `⊤` is below every term, so it can be left out.
fn literal_terms(a: &Atom, negative: bool) -> Vec<Term> {
    let mut m = match a {
        Atom::Eq(s, t) => vec![s.clone(), t.clone()],
        Atom::Pred(p, args) => vec![Term::App(FunId(u32::MAX - p.0), args.clone())],
    };
    if negative {
        m.extend(m.clone());
    }
    m
}

fn multiset_greater(m: &[Term], n: &[Term]) -> bool {
    let mut m: Vec<&Term> = m.iter().collect();
    let mut n: Vec<&Term> = n.iter().collect();
    m.retain(|x| match n.iter().position(|y| y == x) {
        Some(k) => {
            n.swap_remove(k);
            false
        }
        None => true,
    });
    // m and n now hold the differences
    if m.is_empty() {
        return false;
    }
    n.iter().all(|y| m.iter().any(|x| kbo::greater(x, y)))
}

/// Whether the literal at `index` (the head when `None`) of `σ(c)` is not
/// smaller than any other literal, or not smaller or equal when `strict`.
fn maximal(c: &HornClause, sigma: &Substitution, index: Option<usize>, strict: bool) -> bool {
    let c = c.apply(sigma);
    let lits: Vec<(&Atom, bool)> = c
        .body()
        .iter()
        .map(|a| (a, true))
        .chain(match c.head() {
            Head::Atom(a) => Some((a, false)),
            _ => None,
        })
        .collect();
    let at = index.unwrap_or(c.body().len());
    let Some(&(a, neg)) = lits.get(at) else {
        return true;
    };
    let l = literal_terms(a, neg);
    lits.iter().enumerate().filter(|(k, _)| *k != at).all(|(_, &(b, bneg))| {
        let m = literal_terms(b, bneg);
        if multiset_greater(&m, &l) {
            return false;
        }
        !(strict && is_same_multiset(&m, &l))
    })
}

fn is_same_multiset(m: &[Term], n: &[Term]) -> bool {
    let mut n: Vec<&Term> = n.iter().collect();
    m.len() == n.len()
        && m.iter().all(|x| match n.iter().position(|y| *y == x) {
            Some(k) => {
                n.swap_remove(k);
                true
            }
            None => false,
        })
}

fn flips(a: &Atom) -> &'static [bool] {
    match a {
        Atom::Eq(l, r) if l != r => &[false, true],
        _ => &[false],
    }
}

#[derive(Clone, Debug)]
pub struct SaturationResult {
    pub outcome: Outcome,
    pub stats: Stats,
    pub elapsed: Duration,
}

pub fn saturate(sig: &Signature, clauses: &[NamedClause], strategy: &Strategy) -> SaturationResult {
    saturate_cancellable(sig, clauses, strategy, None)
}

pub fn saturate_cancellable(
    sig: &Signature,
    clauses: &[NamedClause],
    strategy: &Strategy,
    cancel: Option<&AtomicBool>,
) -> SaturationResult {
    let mut st = ProverState::new(sig, clauses, strategy.clone());
    let outcome = st.run(cancel);
    SaturationResult {
        outcome,
        stats: st.stats(),
        elapsed: st.start.elapsed(),
    }
}

#[derive(Clone, Debug)]
pub struct PortfolioResult {
    /// Index of the strategy whose result is reported in `outcome`.
    pub winner: Option<usize>,
    pub outcome: Outcome,
    pub runs: Vec<SaturationResult>,
}

/// Runs the strategies, in parallel unless `sequential`. A refutation wins;
/// among several, the lowest strategy index. Without one, `Saturated` is
/// reported if any strategy saturated.
pub fn run_portfolio(
    sig: &Signature,
    clauses: &[NamedClause],
    strategies: &[Strategy],
    sequential: bool,
) -> PortfolioResult {
    assert!(!strategies.is_empty(), "empty portfolio");
    let runs: Vec<SaturationResult> = if sequential {
        let mut runs = Vec::new();
        for s in strategies {
            let r = saturate(sig, clauses, s);
            let done = r.outcome.is_refutation();
            runs.push(r);
            if done {
                break;
            }
        }
        runs
    } else {
        let cancel = AtomicBool::new(false);
        std::thread::scope(|scope| {
            let handles: Vec<_> = strategies
                .iter()
                .map(|s| {
                    let cancel = &cancel;
                    scope.spawn(move || {
                        let r = saturate_cancellable(sig, clauses, s, Some(cancel));
                        if r.outcome.is_refutation() {
                            cancel.store(true, Ordering::Relaxed);
                        }
                        r
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("prover thread panicked"))
                .collect()
        })
    };
    let winner = runs
        .iter()
        .position(|r| r.outcome.is_refutation())
        .or_else(|| runs.iter().position(|r| r.outcome == Outcome::Saturated));
    let outcome = match winner {
        Some(i) => runs[i].outcome.clone(),
        None => Outcome::BudgetExhausted,
    };
    PortfolioResult { winner, outcome, runs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{clausify, parse_problem};

    fn prove(text: &str, s: &Strategy) -> Outcome {
        let p = parse_problem(text).unwrap();
        let c = clausify(&p);
        saturate(&p.signature, &c.clauses, s).outcome
    }

    #[test]
    fn strategy_names() {
        let s: Strategy = "1:4o".parse().unwrap();
        assert_eq!(s, Strategy::new(1, 4, true));
        assert_eq!(s.to_string(), "1:4o");
        assert!("0:0o".parse::<Strategy>().is_err());
        assert!("1:4".parse::<Strategy>().is_err());
    }

    #[test]
    fn transitivity_chain() {
        let text = "(declare-sort S 0)(declare-const a S)(declare-const b S)(declare-const c S)\
            (assert (! (forall () (= a b)) :named h1))(assert (! (forall () (= b c)) :named h2))\
            (assert-not (! (= a c) :named g))";
        for s in default_portfolio() {
            match prove(text, &s) {
                Outcome::Refutation(d) => assert!(d.is_refutation()),
                other => panic!("{s}: {other:?}"),
            }
        }
    }

    #[test]
    fn unprovable_saturates() {
        let text = "(declare-sort S 0)(declare-const a S)(declare-const b S)(declare-fun P (S) Bool)\
            (assert (! (forall () (P a)) :named h))(assert-not (! (P b) :named g))";
        assert_eq!(prove(text, &Strategy::new(1, 4, true)), Outcome::Saturated);
    }

    #[test]
    fn portfolio_picks_first_success() {
        let text = "(declare-sort S 0)(declare-const a S)(declare-const b S)\
            (assert (! (forall () (= a b)) :named h))(assert-not (! (= b a) :named g))";
        let p = parse_problem(text).unwrap();
        let c = clausify(&p);
        let r = run_portfolio(&p.signature, &c.clauses, &default_portfolio(), true);
        assert_eq!(r.winner, Some(0));
        assert_eq!(r.runs.len(), 1);
        let par = run_portfolio(&p.signature, &c.clauses, &default_portfolio(), false);
        assert!(par.outcome.is_refutation());
    }

    #[test]
    fn budget() {
        // P(a), P(x) → P(f(x)) never saturates
        let text = "(declare-sort S 0)(declare-const a S)(declare-const b S)(declare-fun f (S) S)\
            (declare-fun P (S) Bool)(assert (! (forall () (P a)) :named h))\
            (assert (! (forall ((x S)) (=> (P x) (P (f x)))) :named step))(assert-not (! (P b) :named g))";
        let s = Strategy::new(1, 1, false).with_budget(200, Duration::from_secs(5));
        assert_eq!(prove(text, &s), Outcome::BudgetExhausted);
    }
}
