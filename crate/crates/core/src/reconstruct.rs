//! Re-derives each step of a transformed derivation as a concrete rule
//! instance and turns it into a kernel-checked proof term.
//!
//! For a step `C` obtained from premises `P₁ … Pₙ` the search recomputes a
//! conclusion `K = σ(…)` with the rule functions, then matches `K` onto `C`
//! with `θ`. Premise variables are instantiated with `θ(σ(x))`; variables
//! that disappear from `K` get a witness.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::clause::{Atom, Head, HornClause};
use crate::kernel::{self, AtomContext, CheckContext, Def, Formula, ProofScript, ProofTerm};
use crate::problem::Problem;
use crate::rules::{self, Detail, Inferred, Location, MatchMode, RuleError};
use crate::term::{Signature, SortId, Substitution, Term, Var};
use crate::tstp::{Derivation, Justification, Step};

/// The mechanical choices that reproduce a step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Choice {
    /// The step restates its single source.
    Identity,
    /// The transformed negated goal `G → G`.
    Tautology,
    /// `left` indexes the premise whose head is resolved away.
    Resolution { left: usize, index: usize, flipped: bool },
    Factoring { kept: usize, dropped: usize, flipped: bool },
    EqualityResolution { index: usize },
    /// `eq` indexes the premise supplying the equation; the other is rewritten.
    Superposition { eq: usize, location: Location },
    Injectivity { arg: usize },
    Distinctness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: String,
    /// Premise step ids in derivation order; empty for inputs.
    pub premises: Vec<usize>,
    pub choice: Choice,
    pub unifier: Substitution,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReconstructError {
    #[error("step {step}: unsupported inference `{rule}`")]
    UnsupportedRule { step: usize, rule: String },
    #[error("step {step}: no instance of `{rule}` found ({explored} candidates explored)")]
    NoInstanceFound { step: usize, rule: String, explored: usize },
    #[error("step {step}: unknown input `{name}`")]
    UnknownInput { step: usize, name: String },
    #[error("step {step}: premise {premise} is not an earlier step")]
    MissingPremise { step: usize, premise: usize },
    #[error("step {step}: clause has a ⊥ head; transform the derivation first")]
    FalsumHead { step: usize },
    #[error("the derivation does not end in the goal")]
    NotGoal,
}

/// Rule names grouped by the search they trigger.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Identity,
    Resolution,
    Factoring,
    EqualityResolution,
    Superposition,
    Injectivity,
    Distinctness,
}

fn family(rule: &str) -> Option<Family> {
    Some(match rule {
        "input" | "axiom" | "cnf_transformation" | "flattening" => Family::Identity,
        "resolution" | "subsumption_resolution" => Family::Resolution,
        "factoring" | "duplicate_literal_removal" => Family::Factoring,
        "equality_resolution" | "trivial_inequality_removal" => Family::EqualityResolution,
        "superposition" | "demodulation" | "forward_demodulation" | "backward_demodulation" => Family::Superposition,
        "injectivity" => Family::Injectivity,
        "distinctness" => Family::Distinctness,
        _ => return None,
    })
}

pub fn is_supported(rule: &str) -> bool {
    family(rule).is_some()
}

fn flips(a: Option<&Atom>) -> &'static [bool] {
    match a {
        Some(Atom::Eq(..)) => &[false, true],
        _ => &[false],
    }
}

/// Every choice for `rule` over `sources`, in search order: premises in the
/// given order, body atoms left to right, positions leftmost-outermost, the
/// stored orientation before the flipped one. Superposition first tries
/// single-occurrence rewrites, then all occurrences.
fn choices(fam: Family, sources: &[HornClause]) -> Vec<Choice> {
    let mut out = Vec::new();
    match fam {
        Family::Identity => {
            if sources.len() == 1 {
                out.push(Choice::Identity);
            }
        }
        Family::Resolution => {
            if sources.len() == 2 {
                for left in 0..2 {
                    let right = &sources[1 - left];
                    for (index, a) in right.body().iter().enumerate() {
                        for &flipped in flips(Some(a)) {
                            out.push(Choice::Resolution { left, index, flipped });
                        }
                    }
                }
            }
        }
        Family::Factoring => {
            if let [c] = sources {
                let n = c.body().len();
                for kept in 0..n {
                    for dropped in 0..n {
                        if kept != dropped {
                            for &flipped in flips(c.body().get(dropped)) {
                                out.push(Choice::Factoring { kept, dropped, flipped });
                            }
                        }
                    }
                }
            }
        }
        Family::EqualityResolution => {
            if let [c] = sources {
                out.extend((0..c.body().len()).map(|index| Choice::EqualityResolution { index }));
            }
        }
        Family::Superposition => {
            let pairs: Vec<(usize, usize)> = match sources.len() {
                1 => vec![(0, 0)],
                2 => vec![(0, 1), (1, 0)],
                _ => Vec::new(),
            };
            for all in [false, true] {
                for &(eq, target) in &pairs {
                    for mut location in rules::superposition_locations(&sources[eq], &sources[target]) {
                        location.all_occurrences = all;
                        out.push(Choice::Superposition { eq, location });
                    }
                }
            }
        }
        Family::Injectivity => {
            if let [c] = sources {
                if let Head::Atom(Atom::Eq(Term::App(_, xs), _)) = c.head() {
                    out.extend((0..xs.len()).map(|arg| Choice::Injectivity { arg }));
                }
            }
        }
        Family::Distinctness => {
            if sources.len() == 1 {
                out.push(Choice::Distinctness);
            }
        }
    }
    out
}

/// A recomputed conclusion with what is needed to build its proof.
struct Candidate {
    conclusion: HornClause,
    sigma: Substitution,
    /// Renamed premises, each paired with the source index it came from.
    premises: Vec<(usize, HornClause)>,
    detail: Option<Detail>,
}

fn apply_choice(sig: &Signature, choice: &Choice, sources: &[HornClause]) -> Result<Candidate, RuleError> {
    let from = |inf: Inferred, order: &[usize]| Candidate {
        conclusion: inf.conclusion,
        sigma: inf.sigma,
        premises: order.iter().copied().zip(inf.premises).collect(),
        detail: Some(inf.detail),
    };
    Ok(match choice {
        Choice::Identity => Candidate {
            conclusion: sources[0].clone(),
            sigma: Substitution::new(),
            premises: vec![(0, sources[0].clone())],
            detail: None,
        },
        Choice::Tautology => return Err(RuleError::BadPosition),
        Choice::Resolution { left, index, flipped } => {
            let right = 1 - left;
            from(
                rules::resolution(sig, &sources[*left], &sources[right], *index, *flipped)?,
                &[*left, right],
            )
        }
        Choice::Factoring { kept, dropped, flipped } => {
            from(rules::factoring(sig, &sources[0], *kept, *dropped, *flipped)?, &[0])
        }
        Choice::EqualityResolution { index } => from(rules::equality_resolution(sig, &sources[0], *index)?, &[0]),
        Choice::Superposition { eq, location } => {
            let target = if sources.len() == 1 { 0 } else { 1 - eq };
            from(
                rules::superposition(sig, &sources[*eq], &sources[target], location)?,
                &[*eq, target],
            )
        }
        Choice::Injectivity { arg } => from(rules::injectivity(sig, &sources[0], *arg)?, &[0]),
        Choice::Distinctness => from(rules::distinctness(sig, &sources[0])?, &[0]),
    })
}

fn adapt_head(k: HornClause, target: &HornClause) -> HornClause {
    match target.head() {
        Head::Goal(g) => k.with_goal_head(g),
        _ => k,
    }
}

/// The transformed negated goal: one body atom, the goal as head.
fn is_tautology_step(c: &HornClause) -> bool {
    match (c.body(), c.head()) {
        ([b], Head::Goal(g)) => b.same_modulo_symmetry(g),
        _ => false,
    }
}

/// Replays an instance without search. For `Tautology` the result is the
/// clause itself when it has the expected shape.
pub fn replay(
    sig: &Signature,
    instance: &RuleInstance,
    sources: &[HornClause],
    target: &HornClause,
) -> Result<HornClause, RuleError> {
    if instance.choice == Choice::Tautology {
        return if is_tautology_step(target) {
            Ok(target.clone())
        } else {
            Err(RuleError::BadPosition)
        };
    }
    let cand = apply_choice(sig, &instance.choice, sources)?;
    Ok(adapt_head(cand.conclusion, target))
}

/// `K` and `C` agree up to renaming, bodies as multisets.
pub fn is_variant(sig: &Signature, k: &HornClause, c: &HornClause) -> bool {
    k.body().len() == c.body().len() && rules::match_clause(sig, k, c, MatchMode::Variant).is_some()
}

/// Where a step's premises come from.
pub struct Sources {
    pub names: Vec<String>,
    pub clauses: Vec<HornClause>,
    pub ids: Vec<usize>,
}

/// How a step is read before searching.
enum Plan {
    Tautology,
    Search(Family),
}

fn plan(step: &Step) -> Result<Plan, ReconstructError> {
    match &step.justification {
        Justification::NegatedConjecture => Ok(Plan::Tautology),
        Justification::Input(_) => Ok(Plan::Search(Family::Identity)),
        Justification::Inference { rule, .. } => match family(rule) {
            Some(f) => Ok(Plan::Search(f)),
            None => Err(ReconstructError::UnsupportedRule {
                step: step.id,
                rule: rule.clone(),
            }),
        },
    }
}

fn rule_name(step: &Step) -> String {
    match &step.justification {
        Justification::NegatedConjecture => "negated_conjecture".into(),
        Justification::Input(_) => "input".into(),
        Justification::Inference { rule, .. } => rule.clone(),
    }
}

/// Resolves the premises of a step against the problem and earlier steps.
pub fn sources(
    d: &Derivation,
    p: &Problem,
    step: &Step,
    names: &HashMap<usize, String>,
) -> Result<Sources, ReconstructError> {
    let mut s = Sources {
        names: Vec::new(),
        clauses: Vec::new(),
        ids: Vec::new(),
    };
    match &step.justification {
        Justification::NegatedConjecture => {}
        Justification::Input(name) => {
            let c = p.premise(name).ok_or_else(|| ReconstructError::UnknownInput {
                step: step.id,
                name: name.clone(),
            })?;
            s.names.push(name.clone());
            s.clauses.push(c);
        }
        Justification::Inference { premises, .. } => {
            for &id in premises {
                let prem = d
                    .step(id)
                    .filter(|_| id < step.id)
                    .ok_or(ReconstructError::MissingPremise { step: step.id, premise: id })?;
                s.names.push(names.get(&id).cloned().unwrap_or_else(|| format!("step-{id}")));
                s.clauses.push(prem.clause.clone());
                s.ids.push(id);
            }
        }
    }
    Ok(s)
}

/// First rule instance whose conclusion is a variant of `target` (bodies
/// compared as multisets). Used to validate steps without building terms.
pub fn find_instance(
    sig: &Signature,
    rule: &str,
    sources: &[HornClause],
    ids: &[usize],
    target: &HornClause,
) -> Result<RuleInstance, usize> {
    let Some(fam) = family(rule) else {
        return Err(0);
    };
    let cs = choices(fam, sources);
    let n = cs.len();
    for choice in cs {
        let Ok(cand) = apply_choice(sig, &choice, sources) else {
            continue;
        };
        let k = adapt_head(cand.conclusion, target);
        if is_variant(sig, &k, target) {
            return Ok(RuleInstance {
                rule: rule.to_string(),
                premises: ids.to_vec(),
                choice,
                unifier: cand.sigma,
            });
        }
    }
    Err(n)
}

/// Chooses a term of `sort`: an in-scope variable, then a constant, then the
/// first ground term of depth two. `None` means a hole has to be left.
pub fn find_witness(sig: &Signature, sort: SortId, scope: &[Var]) -> Option<Term> {
    if let Some(v) = scope.iter().find(|v| v.sort == sort) {
        return Some(Term::Var(*v));
    }
    let constant = |s: SortId| {
        sig.functions()
            .find(|(_, f)| f.arity() == 0 && f.result_sort == s)
            .map(|(id, _)| Term::constant(id))
    };
    if let Some(c) = constant(sort) {
        return Some(c);
    }
    sig.functions()
        .filter(|(_, f)| f.arity() > 0 && f.result_sort == sort)
        .find_map(|(id, f)| {
            let args: Option<Vec<Term>> = f.arg_sorts.iter().map(|s| constant(*s)).collect();
            args.map(|a| Term::App(id, a))
        })
}

/// Builds the body of a step proof under `AllIntro(C.vars) Lam(l₀ …)`.
struct Builder<'a> {
    sig: &'a Signature,
    target: &'a HornClause,
    hyps: &'a [String],
    /// On renamed premise variables.
    tau: Substitution,
    /// `θ` with witnesses, on terms already instantiated by `σ`.
    theta: Substitution,
}

impl Builder<'_> {
    fn lookup(&self, a: &Atom) -> Option<ProofTerm> {
        let body = self.target.body();
        if let Some(j) = body.iter().position(|b| b == a) {
            return Some(ProofTerm::r(&self.hyps[j]));
        }
        let j = body.iter().position(|b| b.same_modulo_symmetry(a))?;
        Some(ProofTerm::sym(ProofTerm::r(&self.hyps[j])))
    }

    fn tau_atom(&self, a: &Atom) -> Atom {
        a.apply(&self.tau)
    }

    /// `inst name τ(x̄)` applied to a proof of each body atom; `given`
    /// overrides the proof at one index.
    fn premise(&self, name: &str, c: &HornClause, given: Option<(usize, ProofTerm)>) -> Option<ProofTerm> {
        let inst = ProofTerm::inst(
            ProofTerm::r(name),
            c.vars().iter().map(|v| self.tau.apply(&Term::Var(*v))),
        );
        let mut given = given;
        let mut args = Vec::new();
        for (i, a) in c.body().iter().enumerate() {
            match given.take() {
                Some((j, p)) if j == i => args.push(p),
                other => {
                    given = other;
                    args.push(self.lookup(&self.tau_atom(a))?);
                }
            }
        }
        Some(ProofTerm::app(inst, args))
    }

    fn head_of(c: &HornClause) -> Option<&Atom> {
        match c.head() {
            Head::Atom(a) | Head::Goal(a) => Some(a),
            Head::Falsum => None,
        }
    }

    /// Turns a proof of `have` into one of `want`, inserting `sym` if needed.
    fn coerce(p: ProofTerm, have: &Atom, want: &Atom) -> Option<ProofTerm> {
        if have == want {
            Some(p)
        } else if have.flip() == *want {
            Some(ProofTerm::sym(p))
        } else {
            None
        }
    }

    fn build(&self, cand: &Candidate, names: &[String]) -> Option<ProofTerm> {
        let want = Self::head_of(self.target)?;
        let prem = |k: usize| &cand.premises[k];
        let (p, have) = match &cand.detail {
            None => {
                let (src, c) = prem(0);
                let p = self.premise(&names[*src], c, None)?;
                (p, self.tau_atom(Self::head_of(c)?))
            }
            Some(Detail::Resolution { index, flipped }) => {
                let (ls, l) = prem(0);
                let (rs, r) = prem(1);
                let lp = self.premise(&names[*ls], l, None)?;
                let lp = if *flipped { ProofTerm::sym(lp) } else { lp };
                let p = self.premise(&names[*rs], r, Some((*index, lp)))?;
                (p, self.tau_atom(Self::head_of(r)?))
            }
            Some(Detail::Factoring { .. }) => {
                let (s, c) = prem(0);
                (self.premise(&names[*s], c, None)?, self.tau_atom(Self::head_of(c)?))
            }
            Some(Detail::EqualityResolution { index }) => {
                let (s, c) = prem(0);
                let Atom::Eq(l, _) = &c.body()[*index] else {
                    return None;
                };
                let refl = ProofTerm::Refl(self.tau.apply(l));
                let p = self.premise(&names[*s], c, Some((*index, refl)))?;
                (p, self.tau_atom(Self::head_of(c)?))
            }
            Some(Detail::Superposition {
                site,
                flipped,
                from,
                to,
                atom,
                paths,
            }) => {
                let (es, e) = prem(0);
                let (ts, t) = prem(1);
                let ep = self.premise(&names[*es], e, None)?;
                // a proof of τ(from) = τ(to)
                let ep = if *flipped { ProofTerm::sym(ep) } else { ep };
                let from = self.theta.apply(from);
                let to = self.theta.apply(to);
                let sort = self.sig.sort_of(&from);
                let atom = atom.apply(&self.theta);
                match site {
                    rules::Site::Head => {
                        let mut p = self.premise(&names[*ts], t, None)?;
                        let mut cur = atom;
                        for path in paths {
                            let ctx = AtomContext::at(&cur, path, sort)?;
                            cur = cur.replace_at(path, &to)?;
                            p = ProofTerm::rw(ep.clone(), p, ctx);
                        }
                        (p, cur)
                    }
                    rules::Site::Body(i) => {
                        let mut rewritten = atom.clone();
                        for path in paths {
                            rewritten = rewritten.replace_at(path, &to)?;
                        }
                        let mut p = self.lookup(&rewritten)?;
                        let mut cur = rewritten;
                        for path in paths {
                            let ctx = AtomContext::at(&cur, path, sort)?;
                            cur = cur.replace_at(path, &from)?;
                            p = ProofTerm::rw(ProofTerm::sym(ep.clone()), p, ctx);
                        }
                        let p = self.premise(&names[*ts], t, Some((*i, p)))?;
                        (p, self.tau_atom(Self::head_of(t)?))
                    }
                }
            }
            Some(Detail::Injectivity { arg }) => {
                let (s, c) = prem(0);
                let p = ProofTerm::Inj(Box::new(self.premise(&names[*s], c, None)?), *arg);
                let Some(Atom::Eq(Term::App(_, xs), Term::App(_, ys))) = Self::head_of(c) else {
                    return None;
                };
                let have = Atom::Eq(self.tau.apply(&xs[*arg]), self.tau.apply(&ys[*arg]));
                (p, have)
            }
            Some(Detail::Distinctness) => {
                let (s, c) = prem(0);
                let p = ProofTerm::Clash(Box::new(self.premise(&names[*s], c, None)?), want.clone());
                (p, want.clone())
            }
        };
        Self::coerce(p, &have, want)
    }
}

/// Variables of the instantiated premises that are not fixed by `θ`.
fn leftovers(cand: &Candidate, theta: &Substitution) -> Vec<Var> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (_, c) in &cand.premises {
        for v in c.vars() {
            for w in cand.sigma.apply(&Term::Var(*v)).vars() {
                if theta.get(w).is_none() && seen.insert(w) {
                    out.push(w);
                }
            }
        }
    }
    out
}

fn hyp_names(n: usize, taken: &dyn Fn(&str) -> bool) -> Vec<String> {
    (0..n)
        .map(|k| {
            let mut name = format!("l{k}");
            while taken(&name) {
                name.push('\'');
            }
            name
        })
        .collect()
}

enum Miss {
    NoFit,
    NoWitness,
}

/// Proof of `∀ C.vars. C.body → C.head` for one candidate.
fn candidate_term(
    sig: &Signature,
    cand: &Candidate,
    target: &HornClause,
    names: &[String],
    taken: &dyn Fn(&str) -> bool,
) -> Result<ProofTerm, Miss> {
    let k = adapt_head(cand.conclusion.clone(), target);
    let theta = rules::match_clause(sig, &k, target, MatchMode::Variant)
        .or_else(|| rules::match_clause(sig, &k, target, MatchMode::Subsumption))
        .ok_or(Miss::NoFit)?;
    let mut tau_theta = theta.clone();
    for v in leftovers(cand, &theta) {
        let w = find_witness(sig, v.sort, target.vars()).ok_or(Miss::NoWitness)?;
        tau_theta.insert(v, w);
    }
    // τ = θ' ∘ σ on the renamed premise variables
    let mut tau = Substitution::new();
    for (_, c) in &cand.premises {
        for v in c.vars() {
            tau.insert(*v, tau_theta.apply(&cand.sigma.apply(&Term::Var(*v))));
        }
    }
    let hyps = hyp_names(target.body().len(), taken);
    let b = Builder {
        sig,
        target,
        hyps: &hyps,
        tau,
        theta: tau_theta,
    };
    let body = b.build(cand, names).ok_or(Miss::NoFit)?;
    Ok(ProofTerm::alls(target.vars(), ProofTerm::lams(hyps, body)))
}

fn tautology_term(target: &HornClause, taken: &dyn Fn(&str) -> bool) -> Option<ProofTerm> {
    if !is_tautology_step(target) {
        return None;
    }
    let hyps = hyp_names(1, taken);
    let g = Builder::head_of(target)?;
    let body = Builder::coerce(ProofTerm::r(&hyps[0]), &target.body()[0], g)?;
    Some(ProofTerm::alls(target.vars(), ProofTerm::lams(hyps, body)))
}

/// A reconstructed step: the instance found and its proof term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepProof {
    pub step: usize,
    pub instance: RuleInstance,
    pub term: ProofTerm,
}

/// Searches for an instance of the step's rule whose proof term the kernel
/// accepts against the step clause. A step whose instance needs a witness of
/// an empty sort becomes a hole.
pub fn reconstruct_step(
    ctx: &CheckContext,
    step: &Step,
    src: &Sources,
) -> Result<StepProof, ReconstructError> {
    let sig = &ctx.sig;
    let target = &step.clause;
    let formula = Formula::from_clause(target).ok_or(ReconstructError::FalsumHead { step: step.id })?;
    let taken = |n: &str| ctx.contains(n);
    let accept = |t: &ProofTerm| match kernel::check(ctx, t, &formula) {
        Ok(()) => true,
        Err(e) => e.is_incomplete(),
    };
    let rule = rule_name(step);
    match plan(step)? {
        Plan::Tautology => {
            let term = tautology_term(target, &taken)
                .filter(|t| accept(t))
                .ok_or_else(|| ReconstructError::NoInstanceFound {
                    step: step.id,
                    rule: rule.clone(),
                    explored: 1,
                })?;
            Ok(StepProof {
                step: step.id,
                instance: RuleInstance {
                    rule,
                    premises: Vec::new(),
                    choice: Choice::Tautology,
                    unifier: Substitution::new(),
                },
                term,
            })
        }
        Plan::Search(fam) => {
            if fam == Family::Identity && src.names.len() == 1 {
                if let Some(p) = ctx.lookup(&src.names[0]) {
                    if p.alpha_eq(&formula.to_prop()) {
                        return Ok(StepProof {
                            step: step.id,
                            instance: RuleInstance {
                                rule,
                                premises: src.ids.clone(),
                                choice: Choice::Identity,
                                unifier: Substitution::new(),
                            },
                            term: ProofTerm::r(&src.names[0]),
                        });
                    }
                }
            }
            let cs = choices(fam, &src.clauses);
            let explored = cs.len();
            let mut needs_hole = None;
            for choice in cs {
                let Ok(cand) = apply_choice(sig, &choice, &src.clauses) else {
                    continue;
                };
                let k = adapt_head(cand.conclusion.clone(), target);
                if rules::match_clause(sig, &k, target, MatchMode::Subsumption).is_none() {
                    continue;
                }
                let instance = RuleInstance {
                    rule: rule.clone(),
                    premises: src.ids.clone(),
                    choice,
                    unifier: cand.sigma.clone(),
                };
                match candidate_term(sig, &cand, target, &src.names, &taken) {
                    Ok(term) if accept(&term) => {
                        return Ok(StepProof {
                            step: step.id,
                            instance,
                            term,
                        })
                    }
                    Ok(_) | Err(Miss::NoFit) => {}
                    Err(Miss::NoWitness) => {
                        if needs_hole.is_none() {
                            needs_hole = Some(instance);
                        }
                    }
                }
            }
            match needs_hole {
                Some(instance) => Ok(StepProof {
                    step: step.id,
                    instance,
                    term: ProofTerm::Hole(formula),
                }),
                None => Err(ReconstructError::NoInstanceFound {
                    step: step.id,
                    rule,
                    explored,
                }),
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub script: ProofScript,
    pub steps: Vec<StepProof>,
}

fn fresh_name(base: String, taken: &dyn Fn(&str) -> bool) -> String {
    let mut name = base;
    while taken(&name) {
        name.push('\'');
    }
    name
}

/// Reconstructs every step the final one depends on, in order, and closes
/// the script with a theorem proving the problem's goal.
pub fn reconstruct_derivation(d: &Derivation, p: &Problem) -> Result<Reconstruction, ReconstructError> {
    let last = d.last().ok_or(ReconstructError::NotGoal)?;
    let goal = &p.goal.atom;
    let final_head = match (last.clause.body(), last.clause.head()) {
        ([], Head::Goal(g)) if g.same_modulo_symmetry(goal) => g.clone(),
        _ => return Err(ReconstructError::NotGoal),
    };
    let mut ctx = CheckContext::from_problem(p);
    let used: Vec<usize> = d.used_ids();
    let mut names: HashMap<usize, String> = HashMap::new();
    {
        let mut chosen: BTreeSet<String> = BTreeSet::new();
        for &id in &used {
            let taken = |n: &str| ctx.contains(n) || chosen.contains(n) || n == p.goal.name;
            let name = fresh_name(format!("step-{id}"), &taken);
            chosen.insert(name.clone());
            names.insert(id, name);
        }
    }
    let mut defs = Vec::new();
    let mut steps = Vec::new();
    for &id in &used {
        let step = d.step(id).expect("used ids come from the derivation");
        let src = sources(d, p, step, &names)?;
        let proof = reconstruct_step(&ctx, step, &src)?;
        let formula = Formula::from_clause(&step.clause).ok_or(ReconstructError::FalsumHead { step: id })?;
        let name = names[&id].clone();
        ctx.insert(&name, formula.to_prop());
        defs.push(Def {
            name,
            formula,
            term: proof.term.clone(),
        });
        steps.push(proof);
    }
    let final_name = &names[&last.id];
    let term = Builder::coerce(ProofTerm::r(final_name), &final_head, goal).ok_or(ReconstructError::NotGoal)?;
    let theorem = Def {
        name: p.goal.name.clone(),
        formula: Formula::atom(goal.clone()),
        term,
    };
    Ok(Reconstruction {
        script: ProofScript { defs, theorem },
        steps,
    })
}
