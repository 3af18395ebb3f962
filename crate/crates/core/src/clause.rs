//! Atoms, equations and Horn clauses.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::term::{match_term, PredId, Signature, SortError, Substitution, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Pred(PredId, Vec<Term>),
    Eq(Term, Term),
}

impl Atom {
    pub fn eq(lhs: Term, rhs: Term) -> Atom {
        Atom::Eq(lhs, rhs)
    }

    pub fn is_equation(&self) -> bool {
        matches!(self, Atom::Eq(..))
    }

    /// Equations swap sides; predicates are returned unchanged.
    pub fn flip(&self) -> Atom {
        match self {
            Atom::Eq(l, r) => Atom::Eq(r.clone(), l.clone()),
            other => other.clone(),
        }
    }

    /// Equal up to the symmetry of equations.
    pub fn same_modulo_symmetry(&self, other: &Atom) -> bool {
        match (self, other) {
            (Atom::Eq(a, b), Atom::Eq(c, d)) => (a == c && b == d) || (a == d && b == c),
            _ => self == other,
        }
    }

    /// Argument terms; an equation has its two sides.
    pub fn args(&self) -> Vec<&Term> {
        match self {
            Atom::Pred(_, args) => args.iter().collect(),
            Atom::Eq(l, r) => vec![l, r],
        }
    }

    pub fn apply(&self, s: &Substitution) -> Atom {
        match self {
            Atom::Pred(p, args) => Atom::Pred(*p, args.iter().map(|a| s.apply(a)).collect()),
            Atom::Eq(l, r) => Atom::Eq(s.apply(l), s.apply(r)),
        }
    }

    pub fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Atom {
        match self {
            Atom::Pred(p, args) => Atom::Pred(*p, args.iter().map(&mut *f).collect()),
            Atom::Eq(l, r) => Atom::Eq(f(l), f(r)),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.args().into_iter().all(Term::is_ground)
    }

    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        for t in self.args() {
            t.collect_vars(out);
        }
    }

    pub fn weight(&self) -> usize {
        1 + self.args().into_iter().map(Term::weight).sum::<usize>()
    }

    /// Subterm at an atom-level path: the first index picks the argument
    /// (0 = left side, 1 = right side for equations).
    pub fn subterm_at(&self, path: &[usize]) -> Option<&Term> {
        let (i, rest) = path.split_first()?;
        self.args().get(*i)?.subterm_at(rest)
    }

    pub fn replace_at(&self, path: &[usize], with: &Term) -> Option<Atom> {
        let (i, rest) = path.split_first()?;
        match self {
            Atom::Pred(p, args) => {
                let inner = args.get(*i)?.replace_at(rest, with)?;
                let mut args = args.clone();
                args[*i] = inner;
                Some(Atom::Pred(*p, args))
            }
            Atom::Eq(l, r) => match i {
                0 => Some(Atom::Eq(l.replace_at(rest, with)?, r.clone())),
                1 => Some(Atom::Eq(l.clone(), r.replace_at(rest, with)?)),
                _ => None,
            },
        }
    }

    /// Non-variable subterm positions, argument by argument, each pre-order.
    pub fn positions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (i, t) in self.args().into_iter().enumerate() {
            for mut p in t.positions() {
                p.insert(0, i);
                out.push(p);
            }
        }
        out
    }

    pub fn occurrences(&self, needle: &Term) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (i, t) in self.args().into_iter().enumerate() {
            for mut p in t.occurrences(needle) {
                p.insert(0, i);
                out.push(p);
            }
        }
        out
    }

    pub fn check(&self, sig: &Signature) -> Result<(), SortError> {
        match self {
            Atom::Pred(p, args) => {
                let sym = sig.predicate(*p);
                if sym.arg_sorts.len() != args.len() {
                    return Err(SortError::Arity {
                        name: sym.name.clone(),
                        expected: sym.arg_sorts.len(),
                        found: args.len(),
                    });
                }
                for (a, want) in args.iter().zip(&sym.arg_sorts) {
                    let got = sig.check_term(a)?;
                    if got != *want {
                        return Err(sig.mismatch(*want, got));
                    }
                }
                Ok(())
            }
            Atom::Eq(l, r) => {
                let ls = sig.check_term(l)?;
                let rs = sig.check_term(r)?;
                if ls != rs {
                    return Err(sig.mismatch(ls, rs));
                }
                Ok(())
            }
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> AtomDisplay<'a> {
        AtomDisplay { sig, atom: self }
    }
}

/// Both orientations of an equation (deduplicated when they coincide); a
/// predicate atom yields itself.
pub fn equation_orientations(a: &Atom) -> Vec<Atom> {
    match a {
        Atom::Eq(l, r) if l != r => vec![a.clone(), a.flip()],
        _ => vec![a.clone()],
    }
}

/// One-way matching of atoms, trying both orientations of `pattern` when it is
/// an equation. Calls `k` for every extension of `subst`; stops at the first
/// `true`.
pub fn match_atom_with(
    sig: &Signature,
    pattern: &Atom,
    target: &Atom,
    subst: &Substitution,
    k: &mut dyn FnMut(Substitution) -> bool,
) -> bool {
    match (pattern, target) {
        (Atom::Pred(p, pa), Atom::Pred(q, qa)) => {
            if p != q {
                return false;
            }
            let mut s = subst.clone();
            pa.iter().zip(qa).all(|(a, b)| match_term(sig, a, b, &mut s)) && k(s)
        }
        (Atom::Eq(l, r), Atom::Eq(tl, tr)) => {
            let mut s = subst.clone();
            if match_term(sig, l, tl, &mut s) && match_term(sig, r, tr, &mut s) && k(s) {
                return true;
            }
            let mut s = subst.clone();
            match_term(sig, l, tr, &mut s) && match_term(sig, r, tl, &mut s) && k(s)
        }
        _ => false,
    }
}

pub struct AtomDisplay<'a> {
    sig: &'a Signature,
    atom: &'a Atom,
}

impl fmt::Display for AtomDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.atom {
            Atom::Eq(l, r) => write!(f, "{} = {}", self.sig.display(l), self.sig.display(r)),
            Atom::Pred(p, args) => {
                write!(f, "{}", self.sig.predicate(*p).name)?;
                if !args.is_empty() {
                    write!(f, "(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{}", self.sig.display(a))?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Head {
    Atom(Atom),
    Falsum,
    /// The ground goal atom standing in for a former ⊥.
    Goal(Atom),
}

impl Head {
    pub fn atom(&self) -> Option<&Atom> {
        match self {
            Head::Atom(a) | Head::Goal(a) => Some(a),
            Head::Falsum => None,
        }
    }

    pub fn apply(&self, s: &Substitution) -> Head {
        match self {
            Head::Atom(a) => Head::Atom(a.apply(s)),
            // goal atoms are ground
            other => other.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseKind {
    Definite,
    Goal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClauseError {
    #[error(transparent)]
    Sort(#[from] SortError),
    #[error("variable X{0} is not bound by the clause prefix")]
    UnboundVar(u32),
    #[error("goal atom must be ground")]
    NonGroundGoal,
}

/// `∀ vars. body₁ ∧ … ∧ bodyₙ → head`.
///
/// Body order is kept for printing; the calculus treats it as a multiset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HornClause {
    vars: Vec<Var>,
    body: Vec<Atom>,
    head: Head,
}

impl HornClause {
    /// Validating constructor. The prefix is the variables in order of first
    /// occurrence (body, then head).
    pub fn new(sig: &Signature, body: Vec<Atom>, head: Head) -> Result<HornClause, ClauseError> {
        let c = HornClause::from_parts(body, head);
        c.check(sig)?;
        Ok(c)
    }

    /// Validating constructor with an explicit prefix, which may contain
    /// variables that do not occur.
    pub fn with_vars(
        sig: &Signature,
        vars: Vec<Var>,
        body: Vec<Atom>,
        head: Head,
    ) -> Result<HornClause, ClauseError> {
        let occurring = HornClause::from_parts(body.clone(), head.clone()).vars;
        if let Some(v) = occurring.iter().find(|v| !vars.contains(v)) {
            return Err(ClauseError::UnboundVar(v.id));
        }
        let c = HornClause { vars, body, head };
        c.check(sig)?;
        Ok(c)
    }

    /// Unchecked construction for rule conclusions, which are well-sorted by
    /// construction.
    pub(crate) fn from_parts(body: Vec<Atom>, head: Head) -> HornClause {
        let mut vars = Vec::new();
        for a in &body {
            a.collect_vars(&mut vars);
        }
        if let Some(a) = head.atom() {
            a.collect_vars(&mut vars);
        }
        HornClause { vars, body, head }
    }

    fn check(&self, sig: &Signature) -> Result<(), ClauseError> {
        for a in &self.body {
            a.check(sig)?;
        }
        match &self.head {
            Head::Atom(a) => a.check(sig)?,
            Head::Goal(a) => {
                a.check(sig)?;
                if !a.is_ground() {
                    return Err(ClauseError::NonGroundGoal);
                }
            }
            Head::Falsum => {}
        }
        Ok(())
    }

    pub fn fact(atom: Atom) -> HornClause {
        HornClause::from_parts(Vec::new(), Head::Atom(atom))
    }

    pub fn empty() -> HornClause {
        HornClause::from_parts(Vec::new(), Head::Falsum)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn body(&self) -> &[Atom] {
        &self.body
    }

    pub fn head(&self) -> &Head {
        &self.head
    }

    pub fn classify(&self) -> ClauseKind {
        match self.head {
            Head::Atom(_) => ClauseKind::Definite,
            Head::Falsum | Head::Goal(_) => ClauseKind::Goal,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn is_empty_clause(&self) -> bool {
        self.body.is_empty() && self.head == Head::Falsum
    }

    /// Unit equation `→ l = r`.
    pub fn unit_equation(&self) -> Option<(&Term, &Term)> {
        match (&self.head, self.body.is_empty()) {
            (Head::Atom(Atom::Eq(l, r)), true) => Some((l, r)),
            _ => None,
        }
    }

    pub fn weight(&self) -> usize {
        self.body.iter().map(Atom::weight).sum::<usize>() + self.head.atom().map_or(1, Atom::weight)
    }

    pub fn max_var_id(&self) -> Option<u32> {
        self.vars.iter().map(|v| v.id).max()
    }

    pub fn var_set(&self) -> BTreeSet<Var> {
        self.vars.iter().copied().collect()
    }

    pub fn apply(&self, s: &Substitution) -> HornClause {
        HornClause::from_parts(
            self.body.iter().map(|a| a.apply(s)).collect(),
            self.head.apply(s),
        )
    }

    /// Adds `offset` to every variable id.
    pub fn shift_vars(&self, offset: u32) -> HornClause {
        let mut shift = |t: &Term| t.shift_vars(offset);
        HornClause {
            vars: self.vars.iter().map(|v| Var::new(v.id + offset, v.sort)).collect(),
            body: self.body.iter().map(|a| a.map_terms(&mut shift)).collect(),
            head: match &self.head {
                Head::Atom(a) => Head::Atom(a.map_terms(&mut shift)),
                other => other.clone(),
            },
        }
    }

    /// Drops body atoms that repeat an earlier one up to equation symmetry.
    pub fn dedup_body(mut self) -> HornClause {
        let mut kept: Vec<Atom> = Vec::with_capacity(self.body.len());
        for a in self.body.drain(..) {
            if !kept.iter().any(|k| k.same_modulo_symmetry(&a)) {
                kept.push(a);
            }
        }
        HornClause::from_parts(kept, self.head)
    }

    /// The head is trivially true, or already among the premises.
    pub fn is_tautology(&self) -> bool {
        match &self.head {
            Head::Atom(Atom::Eq(l, r)) if l == r => true,
            Head::Atom(a) => self.body.iter().any(|b| b.same_modulo_symmetry(a)),
            _ => false,
        }
    }

    /// Replaces a ⊥ head by the boxed goal atom; other heads are kept.
    pub fn with_goal_head(&self, goal: &Atom) -> HornClause {
        match self.head {
            Head::Falsum => HornClause {
                vars: self.vars.clone(),
                body: self.body.clone(),
                head: Head::Goal(goal.clone()),
            },
            _ => self.clone(),
        }
    }

    /// A variant with variables renumbered 0.. by first occurrence after
    /// sorting atoms by a variable-blind key. Equal results imply the clauses are
    /// renamings of each other.
    pub fn canonical(&self) -> HornClause {
        fn blind(t: &Term) -> Term {
            match t {
                Term::Var(v) => Term::Var(Var::new(0, v.sort)),
                Term::App(f, args) => Term::App(*f, args.iter().map(blind).collect()),
            }
        }
        fn orient(a: &Atom) -> Atom {
            match a {
                Atom::Eq(l, r) if blind(r) < blind(l) => a.flip(),
                _ => a.clone(),
            }
        }
        let key = |a: &Atom| orient(a).map_terms(&mut |t| blind(t));
        let mut body: Vec<Atom> = self.body.iter().map(orient).collect();
        body.sort_by_key(|a| key(a));
        let head = match &self.head {
            Head::Atom(a) => Head::Atom(orient(a)),
            other => other.clone(),
        };
        let draft = HornClause::from_parts(body, head);
        let mut ren = Substitution::new();
        for (i, v) in draft.vars.iter().enumerate() {
            ren.insert(*v, Term::Var(Var::new(i as u32, v.sort)));
        }
        let mut out = draft.apply(&ren);
        out.body.sort();
        out
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> ClauseDisplay<'a> {
        ClauseDisplay { sig, clause: self }
    }
}

pub struct ClauseDisplay<'a> {
    sig: &'a Signature,
    clause: &'a HornClause,
}

impl fmt::Display for ClauseDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.clause.body.iter().enumerate() {
            if i > 0 {
                write!(f, " & ")?;
            }
            write!(f, "{}", a.display(self.sig))?;
        }
        if !self.clause.body.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "-> ")?;
        match &self.clause.head {
            Head::Atom(a) => write!(f, "{}", a.display(self.sig)),
            Head::Falsum => write!(f, "$false"),
            Head::Goal(a) => write!(f, "[{}]", a.display(self.sig)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{FunId, SortId};

    struct Fx {
        sig: Signature,
        s: SortId,
        zero: FunId,
        plus: FunId,
        u: FunId,
        v: FunId,
        p: PredId,
    }

    fn fx() -> Fx {
        let mut sig = Signature::new();
        let s = sig.add_sort("V").unwrap();
        let zero = sig.add_function("ze", vec![], s).unwrap();
        let plus = sig.add_function("plus", vec![s, s], s).unwrap();
        let u = sig.add_function("u", vec![], s).unwrap();
        let v = sig.add_function("v", vec![], s).unwrap();
        let p = sig.add_predicate("P", vec![s]).unwrap();
        Fx { sig, s, zero, plus, u, v, p }
    }

    #[test]
    fn classify_definite_and_goal() {
        let f = fx();
        let a = Term::constant(f.u);
        let b = Term::constant(f.v);
        let fact = HornClause::new(&f.sig, vec![], Head::Atom(Atom::eq(a.clone(), b.clone()))).unwrap();
        assert_eq!(fact.classify(), ClauseKind::Definite);
        let goal = HornClause::new(
            &f.sig,
            vec![Atom::eq(Term::constant(f.zero), a.clone())],
            Head::Falsum,
        )
        .unwrap();
        assert_eq!(goal.classify(), ClauseKind::Goal);
        let rule = HornClause::new(
            &f.sig,
            vec![Atom::Pred(f.p, vec![a.clone()]), Atom::Pred(f.p, vec![b.clone()])],
            Head::Atom(Atom::Pred(f.p, vec![Term::constant(f.zero)])),
        )
        .unwrap();
        assert_eq!(rule.classify(), ClauseKind::Definite);
    }

    #[test]
    fn groundness() {
        let f = fx();
        let (u, v) = (Term::constant(f.u), Term::constant(f.v));
        let e = HornClause::new(
            &f.sig,
            vec![],
            Head::Atom(Atom::eq(v.clone(), Term::App(f.plus, vec![u, v]))),
        )
        .unwrap();
        assert!(e.is_ground());
        let x = Term::Var(Var::new(0, f.s));
        let neutl = HornClause::new(
            &f.sig,
            vec![],
            Head::Atom(Atom::eq(Term::App(f.plus, vec![Term::constant(f.zero), x.clone()]), x)),
        )
        .unwrap();
        assert!(!neutl.is_ground());
        assert_eq!(neutl.vars().len(), 1);
    }

    #[test]
    fn orientations() {
        let f = fx();
        let (u, v) = (Term::constant(f.u), Term::constant(f.v));
        let e = Atom::eq(u.clone(), v.clone());
        assert_eq!(equation_orientations(&e), vec![e.clone(), Atom::eq(v, u.clone())]);
        let p = Atom::Pred(f.p, vec![u.clone()]);
        assert_eq!(equation_orientations(&p), vec![p.clone()]);
        let t = Atom::eq(u.clone(), u);
        assert_eq!(equation_orientations(&t).len(), 1);
    }

    #[test]
    fn constructor_rejects_bad_sorts() {
        let mut f = fx();
        let w = f.sig.add_sort("W").unwrap();
        let c = f.sig.add_function("c", vec![], w).unwrap();
        let bad = HornClause::new(
            &f.sig,
            vec![],
            Head::Atom(Atom::eq(Term::constant(c), Term::constant(f.u))),
        );
        assert!(matches!(bad, Err(ClauseError::Sort(_))));
        let x = Var::new(0, f.s);
        let unbound = HornClause::with_vars(
            &f.sig,
            vec![],
            vec![],
            Head::Atom(Atom::Pred(f.p, vec![Term::Var(x)])),
        );
        assert_eq!(unbound, Err(ClauseError::UnboundVar(0)));
        let goal = HornClause::new(&f.sig, vec![], Head::Goal(Atom::Pred(f.p, vec![Term::Var(x)])));
        assert_eq!(goal, Err(ClauseError::NonGroundGoal));
    }

    #[test]
    fn canonical_identifies_renamings() {
        let f = fx();
        let x = Term::Var(Var::new(3, f.s));
        let y = Term::Var(Var::new(7, f.s));
        let c1 = HornClause::new(
            &f.sig,
            vec![Atom::Pred(f.p, vec![x.clone()])],
            Head::Atom(Atom::eq(x.clone(), Term::App(f.plus, vec![x.clone(), y.clone()]))),
        )
        .unwrap();
        let c2 = c1.shift_vars(10);
        assert_eq!(c1.canonical(), c2.canonical());
    }
}
