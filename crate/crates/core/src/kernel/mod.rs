//! Proof terms for Horn formulas and the checker that certifies them.
//!
//! The checker is bidirectional: `Lam` and `AllIntro` are checked against an
//! expected proposition, everything else synthesises one. Equations are
//! compared structurally; there is no conversion.

mod check;
mod surface;

use std::collections::{BTreeSet, HashMap};

use crate::clause::{Atom, Head, HornClause};
use crate::problem::Problem;
use crate::term::{Signature, SortId, Substitution, Term, Var};

pub use check::{check, check_script, node_formulas, KernelError, KernelErrorKind};
pub use surface::{emit_surface, emit_term, parse_surface, prop_text, SurfaceError};

/// Reserved variable id marking the hole of a one-hole context.
pub const HOLE_ID: u32 = u32::MAX;

/// Variable ids at or above this are reserved for the kernel.
pub(crate) const RESERVED_IDS: u32 = HOLE_ID - (1 << 20);

pub fn hole(sort: SortId) -> Term {
    Term::Var(Var::new(HOLE_ID, sort))
}

/// `∀ vars. body₁ → … → bodyₙ → head`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    pub vars: Vec<Var>,
    pub body: Vec<Atom>,
    pub head: Atom,
}

impl Formula {
    pub fn atom(head: Atom) -> Formula {
        Formula {
            vars: Vec::new(),
            body: Vec::new(),
            head,
        }
    }

    /// `None` for a ⊥ head, which has no constructive reading here.
    pub fn from_clause(c: &HornClause) -> Option<Formula> {
        let head = match c.head() {
            Head::Atom(a) | Head::Goal(a) => a.clone(),
            Head::Falsum => return None,
        };
        Some(Formula {
            vars: c.vars().to_vec(),
            body: c.body().to_vec(),
            head,
        })
    }

    pub fn to_prop(&self) -> Prop {
        let mut p = Prop::Atom(self.head.clone());
        for a in self.body.iter().rev() {
            p = Prop::Imp(a.clone(), Box::new(p));
        }
        for v in self.vars.iter().rev() {
            p = Prop::Forall(*v, Box::new(p));
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Prop {
    Atom(Atom),
    Imp(Atom, Box<Prop>),
    Forall(Var, Box<Prop>),
}

impl Prop {
    pub fn free_vars(&self) -> BTreeSet<Var> {
        match self {
            Prop::Atom(a) => atom_vars(a),
            Prop::Imp(a, p) => {
                let mut s = atom_vars(a);
                s.extend(p.free_vars());
                s
            }
            Prop::Forall(v, p) => {
                let mut s = p.free_vars();
                s.retain(|w| w.id != v.id);
                s
            }
        }
    }

    fn max_id(&self) -> u32 {
        match self {
            Prop::Atom(a) => atom_max_id(a),
            Prop::Imp(a, p) => atom_max_id(a).max(p.max_id()),
            Prop::Forall(v, p) => v.id.max(p.max_id()),
        }
    }

    /// Capture-avoiding `self[x := t]`.
    pub fn instantiate(&self, x: Var, t: &Term) -> Prop {
        let fv: BTreeSet<u32> = t.vars().iter().map(|v| v.id).collect();
        let mut next = self.max_id().max(t.max_var_id().unwrap_or(0)).max(x.id) + 1;
        self.subst(x, t, &fv, &mut next)
    }

    fn subst(&self, x: Var, t: &Term, fv: &BTreeSet<u32>, next: &mut u32) -> Prop {
        let mut s = Substitution::new();
        s.insert(x, t.clone());
        match self {
            Prop::Atom(a) => Prop::Atom(a.apply(&s)),
            Prop::Imp(a, p) => Prop::Imp(a.apply(&s), Box::new(p.subst(x, t, fv, next))),
            Prop::Forall(y, p) => {
                if y.id == x.id {
                    return self.clone();
                }
                if fv.contains(&y.id) {
                    let fresh = Var::new(*next, y.sort);
                    *next += 1;
                    let renamed = p.subst(*y, &Term::Var(fresh), &BTreeSet::new(), next);
                    Prop::Forall(fresh, Box::new(renamed.subst(x, t, fv, next)))
                } else {
                    Prop::Forall(*y, Box::new(p.subst(x, t, fv, next)))
                }
            }
        }
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Prop) -> bool {
        self.debruijn(0) == other.debruijn(0)
    }

    fn debruijn(&self, depth: u32) -> Prop {
        match self {
            Prop::Atom(a) => Prop::Atom(a.clone()),
            Prop::Imp(a, p) => Prop::Imp(a.clone(), Box::new(p.debruijn(depth))),
            Prop::Forall(v, p) => {
                let b = Var::new(HOLE_ID - 1 - depth, v.sort);
                let mut s = Substitution::new();
                s.insert(*v, Term::Var(b));
                let body = p.rename_free(&s).debruijn(depth + 1);
                Prop::Forall(b, Box::new(body))
            }
        }
    }

    /// Applies a variable-to-variable map to free occurrences; the caller
    /// guarantees no capture (targets are fresh).
    fn rename_free(&self, s: &Substitution) -> Prop {
        match self {
            Prop::Atom(a) => Prop::Atom(a.apply(s)),
            Prop::Imp(a, p) => Prop::Imp(a.apply(s), Box::new(p.rename_free(s))),
            Prop::Forall(v, p) => {
                let mut inner = Substitution::new();
                for (w, t) in s.iter() {
                    if w.id != v.id {
                        inner.insert(w, t.clone());
                    }
                }
                Prop::Forall(*v, Box::new(p.rename_free(&inner)))
            }
        }
    }
}

fn atom_vars(a: &Atom) -> BTreeSet<Var> {
    let mut v = Vec::new();
    a.collect_vars(&mut v);
    v.into_iter().collect()
}

fn atom_max_id(a: &Atom) -> u32 {
    a.args()
        .into_iter()
        .filter_map(|t| t.max_var_id())
        .max()
        .unwrap_or(0)
}

/// A term with exactly one occurrence of the hole variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermContext(pub Term);

/// An atom with exactly one occurrence of the hole variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AtomContext(pub Atom);

fn plug_term(t: &Term, with: &Term) -> Term {
    match t {
        Term::Var(v) if v.id == HOLE_ID => with.clone(),
        Term::Var(_) => t.clone(),
        Term::App(f, args) => Term::App(*f, args.iter().map(|a| plug_term(a, with)).collect()),
    }
}

fn hole_count(t: &Term) -> usize {
    match t {
        Term::Var(v) => usize::from(v.id == HOLE_ID),
        Term::App(_, args) => args.iter().map(hole_count).sum(),
    }
}

impl TermContext {
    pub fn plug(&self, with: &Term) -> Term {
        plug_term(&self.0, with)
    }

    pub fn holes(&self) -> usize {
        hole_count(&self.0)
    }

    pub fn is_identity(&self) -> bool {
        matches!(&self.0, Term::Var(v) if v.id == HOLE_ID)
    }
}

impl AtomContext {
    pub fn plug(&self, with: &Term) -> Atom {
        self.0.map_terms(&mut |t| plug_term(t, with))
    }

    pub fn holes(&self) -> usize {
        self.0.args().into_iter().map(hole_count).sum()
    }

    /// The context of `atom` with a hole at `path`.
    pub fn at(atom: &Atom, path: &[usize], sort: SortId) -> Option<AtomContext> {
        atom.replace_at(path, &hole(sort)).map(AtomContext)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProofTerm {
    Ref(String),
    Lam(String, Box<ProofTerm>),
    App(Box<ProofTerm>, Box<ProofTerm>),
    AllIntro(Var, Box<ProofTerm>),
    AllElim(Box<ProofTerm>, Term),
    Refl(Term),
    Sym(Box<ProofTerm>),
    Trans(Box<ProofTerm>, Box<ProofTerm>),
    Cong(TermContext, Box<ProofTerm>),
    /// From `l = r` and `ctx[l]`, `ctx[r]`.
    Rw(Box<ProofTerm>, Box<ProofTerm>, AtomContext),
    Hole(Formula),
    /// From `c(s̄) = c(t̄)`, `sᵢ = tᵢ`.
    Inj(Box<ProofTerm>, usize),
    /// From `c(s̄) = d(t̄)` with distinct constructors, any atom.
    Clash(Box<ProofTerm>, Atom),
}

impl ProofTerm {
    pub fn r(name: &str) -> ProofTerm {
        ProofTerm::Ref(name.to_string())
    }

    pub fn app(f: ProofTerm, args: impl IntoIterator<Item = ProofTerm>) -> ProofTerm {
        args.into_iter()
            .fold(f, |acc, a| ProofTerm::App(Box::new(acc), Box::new(a)))
    }

    pub fn inst(p: ProofTerm, terms: impl IntoIterator<Item = Term>) -> ProofTerm {
        terms
            .into_iter()
            .fold(p, |acc, t| ProofTerm::AllElim(Box::new(acc), t))
    }

    pub fn lams(names: impl IntoIterator<Item = String>, body: ProofTerm) -> ProofTerm {
        let names: Vec<String> = names.into_iter().collect();
        names
            .into_iter()
            .rev()
            .fold(body, |acc, n| ProofTerm::Lam(n, Box::new(acc)))
    }

    pub fn alls(vars: &[Var], body: ProofTerm) -> ProofTerm {
        vars.iter()
            .rev()
            .fold(body, |acc, v| ProofTerm::AllIntro(*v, Box::new(acc)))
    }

    pub fn sym(p: ProofTerm) -> ProofTerm {
        ProofTerm::Sym(Box::new(p))
    }

    pub fn rw(e: ProofTerm, p: ProofTerm, ctx: AtomContext) -> ProofTerm {
        ProofTerm::Rw(Box::new(e), Box::new(p), ctx)
    }

    /// Immediate subterms, in a fixed order.
    pub fn children(&self) -> Vec<&ProofTerm> {
        match self {
            ProofTerm::Ref(_) | ProofTerm::Refl(_) | ProofTerm::Hole(_) => Vec::new(),
            ProofTerm::Lam(_, b) | ProofTerm::AllIntro(_, b) | ProofTerm::AllElim(b, _) => vec![b],
            ProofTerm::Sym(p) | ProofTerm::Cong(_, p) | ProofTerm::Inj(p, _) | ProofTerm::Clash(p, _) => vec![p],
            ProofTerm::App(f, a) | ProofTerm::Trans(f, a) | ProofTerm::Rw(f, a, _) => vec![f, a],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(ProofTerm::size).sum::<usize>()
    }

    /// Holes, outermost first.
    pub fn holes(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        self.collect_holes(&mut out);
        out
    }

    fn collect_holes<'a>(&'a self, out: &mut Vec<&'a Formula>) {
        if let ProofTerm::Hole(f) = self {
            out.push(f);
        }
        for c in self.children() {
            c.collect_holes(out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Def {
    pub name: String,
    pub formula: Formula,
    pub term: ProofTerm,
}

/// Named lemma definitions in dependency order, then the theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub defs: Vec<Def>,
    pub theorem: Def,
}

#[derive(Clone, Debug)]
pub struct CheckContext {
    pub sig: Signature,
    globals: HashMap<String, Prop>,
}

impl CheckContext {
    pub fn new(sig: Signature) -> CheckContext {
        CheckContext {
            sig,
            globals: HashMap::new(),
        }
    }

    /// Axioms and hypotheses of a problem as named formulas.
    pub fn from_problem(p: &Problem) -> CheckContext {
        let mut ctx = CheckContext::new(p.signature.clone());
        for ax in &p.axioms {
            let f = Formula::from_clause(&ax.clause).expect("axioms are definite");
            ctx.globals.insert(ax.name.clone(), f.to_prop());
        }
        for h in &p.hypotheses {
            ctx.globals.insert(h.name.clone(), Formula::atom(h.atom.clone()).to_prop());
        }
        ctx
    }

    pub fn lookup(&self, name: &str) -> Option<&Prop> {
        self.globals.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.globals.contains_key(name)
    }

    pub(crate) fn insert(&mut self, name: &str, p: Prop) {
        self.globals.insert(name.to_string(), p);
    }
}

fn normalize_step(t: ProofTerm) -> ProofTerm {
    match t {
        ProofTerm::Sym(p) => match *p {
            ProofTerm::Sym(q) => *q,
            ProofTerm::Refl(t) => ProofTerm::Refl(t),
            other => ProofTerm::Sym(Box::new(other)),
        },
        ProofTerm::Trans(p, q) => match (*p, *q) {
            (ProofTerm::Refl(_), q) => q,
            (p, ProofTerm::Refl(_)) => p,
            (p, q) => ProofTerm::Trans(Box::new(p), Box::new(q)),
        },
        ProofTerm::Cong(ctx, p) if ctx.is_identity() => *p,
        other => other,
    }
}

/// Bottom-up rewriting with `sym (sym p) → p`, `sym (refl t) → refl t`,
/// `trans refl p → p`, `trans p refl → p` and `cong id p → p`. One pass
/// reaches the fixed point since every rule only removes nodes at the root of
/// already normal children.
pub fn normalize_light(t: &ProofTerm) -> ProofTerm {
    let b = |p: &ProofTerm| Box::new(normalize_light(p));
    let rebuilt = match t {
        ProofTerm::Ref(_) | ProofTerm::Refl(_) | ProofTerm::Hole(_) => t.clone(),
        ProofTerm::Lam(h, p) => ProofTerm::Lam(h.clone(), b(p)),
        ProofTerm::App(f, a) => ProofTerm::App(b(f), b(a)),
        ProofTerm::AllIntro(v, p) => ProofTerm::AllIntro(*v, b(p)),
        ProofTerm::AllElim(p, w) => ProofTerm::AllElim(b(p), w.clone()),
        ProofTerm::Sym(p) => ProofTerm::Sym(b(p)),
        ProofTerm::Trans(p, q) => ProofTerm::Trans(b(p), b(q)),
        ProofTerm::Cong(c, p) => ProofTerm::Cong(c.clone(), b(p)),
        ProofTerm::Rw(e, p, c) => ProofTerm::Rw(b(e), b(p), c.clone()),
        ProofTerm::Inj(p, i) => ProofTerm::Inj(b(p), *i),
        ProofTerm::Clash(p, a) => ProofTerm::Clash(b(p), a.clone()),
    };
    normalize_step(rebuilt)
}

pub fn normalize_script(s: &ProofScript) -> ProofScript {
    let n = |d: &Def| Def {
        term: normalize_light(&d.term),
        ..d.clone()
    };
    ProofScript {
        defs: s.defs.iter().map(n).collect(),
        theorem: n(&s.theorem),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::FunId;

    fn x(i: u32) -> Term {
        Term::Var(Var::new(i, SortId(0)))
    }

    #[test]
    fn alpha_equivalence() {
        let a = Term::constant(FunId(0));
        let p = Prop::Forall(Var::new(0, SortId(0)), Box::new(Prop::Atom(Atom::Eq(x(0), a.clone()))));
        let q = Prop::Forall(Var::new(5, SortId(0)), Box::new(Prop::Atom(Atom::Eq(x(5), a.clone()))));
        assert!(p.alpha_eq(&q));
        let r = Prop::Forall(Var::new(5, SortId(0)), Box::new(Prop::Atom(Atom::Eq(a, x(5)))));
        assert!(!p.alpha_eq(&r));
    }

    #[test]
    fn instantiation_avoids_capture() {
        // (∀x1. x0 = x1)[x0 := x1] must not capture
        let p = Prop::Forall(Var::new(1, SortId(0)), Box::new(Prop::Atom(Atom::Eq(x(0), x(1)))));
        let q = p.instantiate(Var::new(0, SortId(0)), &x(1));
        match q {
            Prop::Forall(v, body) => {
                assert_ne!(v.id, 1);
                assert_eq!(*body, Prop::Atom(Atom::Eq(x(1), Term::Var(v))));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn normalization() {
        let p = ProofTerm::r("p");
        assert_eq!(normalize_light(&ProofTerm::sym(ProofTerm::sym(p.clone()))), p);
        let t = ProofTerm::Trans(Box::new(ProofTerm::Refl(x(0))), Box::new(p.clone()));
        assert_eq!(normalize_light(&t), p);
        let nested = ProofTerm::sym(ProofTerm::sym(ProofTerm::sym(ProofTerm::sym(p.clone()))));
        assert_eq!(normalize_light(&nested), p);
        assert_eq!(normalize_light(&ProofTerm::sym(ProofTerm::Refl(x(0)))), ProofTerm::Refl(x(0)));
        let id = ProofTerm::Cong(TermContext(hole(SortId(0))), Box::new(p.clone()));
        assert_eq!(normalize_light(&id), p);
        assert_eq!(normalize_light(&ProofTerm::sym(p.clone())), ProofTerm::sym(p));
    }
}
