//! From a refutation to a direct derivation of the goal.
//!
//! Every ⊥ head becomes the goal atom `G`, so the negated goal `G → ⊥` turns
//! into the tautology `G → G` and the empty clause into `→ G`. For Horn
//! inferences the rewritten step is still an instance of the same rule, which
//! [`validate_step`] confirms by re-running the search.

use thiserror::Error;

use crate::clause::{Atom, Head};
use crate::problem::Problem;
use crate::reconstruct::{self, RuleInstance};
use crate::term::Signature;
use crate::tstp::{Derivation, Justification, Step};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MalformedDerivation {
    #[error("the derivation does not end in the empty clause")]
    NotRefutation,
    #[error("the goal atom is not ground")]
    NonGroundGoal,
    #[error("step {0}: the negated goal is not a single-atom goal clause")]
    BadNegatedGoal(usize),
    #[error("step {step}: {reason}")]
    Invalid { step: usize, reason: String },
}

/// The goal atom as it appears in the derivation's negated goal, so that
/// `G → G` is literally a tautology. Falls back to `goal`.
pub fn goal_orientation(d: &Derivation, goal: &Atom) -> Result<Atom, MalformedDerivation> {
    for s in &d.steps {
        if s.justification == Justification::NegatedConjecture {
            return match (s.clause.body(), s.clause.head()) {
                ([g], Head::Falsum | Head::Goal(_)) if g.is_ground() => Ok(g.clone()),
                _ => Err(MalformedDerivation::BadNegatedGoal(s.id)),
            };
        }
    }
    Ok(goal.clone())
}

/// Replaces every ⊥ head with `G`, taking `G`'s orientation from the negated
/// goal. Steps and premises are otherwise unchanged; already transformed
/// derivations come back equal.
pub fn friedmanize(d: &Derivation, goal: &Atom) -> Result<Derivation, MalformedDerivation> {
    if !goal.is_ground() {
        return Err(MalformedDerivation::NonGroundGoal);
    }
    let last_ok = d.last().is_some_and(|s| {
        s.clause.body().is_empty() && matches!(s.clause.head(), Head::Falsum | Head::Goal(_))
    });
    if !last_ok {
        return Err(MalformedDerivation::NotRefutation);
    }
    let g = goal_orientation(d, goal)?;
    let steps = d
        .steps
        .iter()
        .map(|s| Step {
            clause: s.clause.with_goal_head(&g),
            ..s.clone()
        })
        .collect();
    Ok(Derivation { steps })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid(RuleInstance),
    Invalid(String),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid(_))
    }
}

/// Whether the step's clause is, up to renaming and with bodies as multisets,
/// the conclusion of some instance of its rule.
pub fn validate_step(sig: &Signature, d: &Derivation, p: &Problem, id: usize) -> Validity {
    let Some(step) = d.step(id) else {
        return Validity::Invalid(format!("no step {id}"));
    };
    let c = &step.clause;
    match &step.justification {
        Justification::NegatedConjecture => match (c.body(), c.head()) {
            ([b], Head::Goal(g)) if b.same_modulo_symmetry(g) => Validity::Valid(RuleInstance {
                rule: "negated_conjecture".into(),
                premises: Vec::new(),
                choice: reconstruct::Choice::Tautology,
                unifier: Default::default(),
            }),
            ([b], Head::Falsum) if b.same_modulo_symmetry(&p.goal.atom) => Validity::Valid(RuleInstance {
                rule: "negated_conjecture".into(),
                premises: Vec::new(),
                choice: reconstruct::Choice::Identity,
                unifier: Default::default(),
            }),
            _ => Validity::Invalid("negated goal is neither G → ⊥ nor G → G".into()),
        },
        Justification::Input(name) => match p.premise(name) {
            Some(src) if reconstruct::is_variant(sig, &src, c) => Validity::Valid(RuleInstance {
                rule: "input".into(),
                premises: Vec::new(),
                choice: reconstruct::Choice::Identity,
                unifier: Default::default(),
            }),
            Some(_) => Validity::Invalid(format!("clause differs from input `{name}`")),
            None => Validity::Invalid(format!("unknown input `{name}`")),
        },
        Justification::Inference { rule, premises } => {
            if !reconstruct::is_supported(rule) {
                return Validity::Invalid(format!("unsupported inference `{rule}`"));
            }
            let mut sources = Vec::new();
            for &q in premises {
                match d.step(q) {
                    Some(s) if q < id => sources.push(s.clause.clone()),
                    _ => return Validity::Invalid(format!("premise {q} is not an earlier step")),
                }
            }
            match reconstruct::find_instance(sig, rule, &sources, premises, c) {
                Ok(inst) => Validity::Valid(inst),
                Err(n) => Validity::Invalid(format!("no instance of `{rule}` among {n} candidates")),
            }
        }
    }
}

/// Validates every step, reporting the first invalid one.
pub fn validate(sig: &Signature, d: &Derivation, p: &Problem) -> Result<Vec<RuleInstance>, MalformedDerivation> {
    d.steps
        .iter()
        .map(|s| match validate_step(sig, d, p, s.id) {
            Validity::Valid(i) => Ok(i),
            Validity::Invalid(reason) => Err(MalformedDerivation::Invalid { step: s.id, reason }),
        })
        .collect()
}
