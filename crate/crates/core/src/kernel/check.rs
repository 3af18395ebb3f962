use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::{prop_text, AtomContext, CheckContext, Formula, ProofScript, ProofTerm, Prop, TermContext, HOLE_ID};
use crate::clause::Atom;
use crate::term::{Signature, SortError, Term, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelErrorKind {
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("duplicate definition `{0}`")]
    DuplicateName(String),
    #[error("expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },
    #[error("expected an implication, found {0}")]
    NotImplication(String),
    #[error("expected a universal formula, found {0}")]
    NotUniversal(String),
    #[error("expected an equation, found {0}")]
    NotEquation(String),
    #[error("middle terms differ: {0} vs {1}")]
    Endpoints(String, String),
    #[error("context has {0} holes, expected exactly one")]
    Context(usize),
    #[error("ill-sorted: {0}")]
    Sort(String),
    #[error("variable x{0} is not in scope")]
    Scope(u32),
    #[error("x{0} violates the eigenvariable condition")]
    Eigenvariable(u32),
    #[error("cannot infer the formula of a lambda; annotate it")]
    CannotInfer,
    #[error("`{0}` is not a constructor application")]
    NotConstructor(String),
    #[error("both sides have constructor `{0}`")]
    SameConstructor(String),
    #[error("argument {index} out of range for `{name}`")]
    Index { name: String, index: usize },
    #[error("definition formula is not closed")]
    Open,
    #[error("incomplete proof: {} hole(s), first {}", .0.len(), .0[0])]
    IncompleteProof(Vec<String>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("at {path}: {kind}")]
pub struct KernelError {
    pub path: String,
    pub kind: KernelErrorKind,
}

impl KernelError {
    pub fn is_incomplete(&self) -> bool {
        matches!(self.kind, KernelErrorKind::IncompleteProof(_))
    }
}

struct Checker<'a> {
    ctx: &'a CheckContext,
    vars: Vec<Var>,
    hyps: Vec<(String, Atom)>,
    path: Vec<String>,
    holes: Vec<String>,
    /// Formula of each visited node, keyed by node address.
    seen: Option<HashMap<usize, Prop>>,
}

type R<T> = Result<T, KernelError>;

impl<'a> Checker<'a> {
    fn new(ctx: &'a CheckContext, root: String) -> Checker<'a> {
        Checker {
            ctx,
            vars: Vec::new(),
            hyps: Vec::new(),
            path: vec![root],
            holes: Vec::new(),
            seen: None,
        }
    }

    fn sig(&self) -> &Signature {
        &self.ctx.sig
    }

    fn fail<T>(&self, kind: KernelErrorKind) -> R<T> {
        Err(KernelError {
            path: self.path.join("/"),
            kind,
        })
    }

    fn show(&self, p: &Prop) -> String {
        prop_text(self.sig(), p)
    }

    fn sub<T>(&mut self, seg: &str, f: impl FnOnce(&mut Self) -> R<T>) -> R<T> {
        self.path.push(seg.to_string());
        let out = f(self);
        if out.is_ok() {
            self.path.pop();
        }
        out
    }

    fn sort_err<T>(&self, e: SortError) -> R<T> {
        self.fail(KernelErrorKind::Sort(e.to_string()))
    }

    fn scoped_term(&self, t: &Term) -> R<()> {
        for v in t.vars() {
            if !self.vars.contains(&v) {
                return self.fail(KernelErrorKind::Scope(v.id));
            }
        }
        if let Err(e) = self.sig().check_term(t) {
            return self.sort_err(e);
        }
        Ok(())
    }

    fn scoped_atom(&self, a: &Atom) -> R<()> {
        for t in a.args() {
            self.scoped_term(t)?;
        }
        if let Err(e) = a.check(self.sig()) {
            return self.sort_err(e);
        }
        Ok(())
    }

    fn scoped_prop(&self, p: &Prop) -> R<()> {
        let fv = p.free_vars();
        if let Some(v) = fv.iter().find(|v| !self.vars.contains(v)) {
            return self.fail(KernelErrorKind::Scope(v.id));
        }
        self.prop_sorts(p)
    }

    fn prop_sorts(&self, p: &Prop) -> R<()> {
        let atom = |a: &Atom| a.check(self.sig()).or_else(|e| self.sort_err(e));
        match p {
            Prop::Atom(a) => atom(a),
            Prop::Imp(a, q) => {
                atom(a)?;
                self.prop_sorts(q)
            }
            Prop::Forall(_, q) => self.prop_sorts(q),
        }
    }

    fn equation(&self, p: Prop) -> R<(Term, Term)> {
        match p {
            Prop::Atom(Atom::Eq(l, r)) => Ok((l, r)),
            other => self.fail(KernelErrorKind::NotEquation(self.show(&other))),
        }
    }

    fn context_term(&self, c: &TermContext) -> R<()> {
        let n = c.holes();
        if n != 1 {
            return self.fail(KernelErrorKind::Context(n));
        }
        for v in c.0.vars() {
            if v.id != HOLE_ID && !self.vars.contains(&v) {
                return self.fail(KernelErrorKind::Scope(v.id));
            }
        }
        Ok(())
    }

    fn context_atom(&self, c: &AtomContext) -> R<()> {
        let n = c.holes();
        if n != 1 {
            return self.fail(KernelErrorKind::Context(n));
        }
        let mut vs = Vec::new();
        c.0.collect_vars(&mut vs);
        for v in vs {
            if v.id != HOLE_ID && !self.vars.contains(&v) {
                return self.fail(KernelErrorKind::Scope(v.id));
            }
        }
        Ok(())
    }

    fn constructor_app<'t>(&self, t: &'t Term) -> R<(crate::term::FunId, &'t [Term])> {
        match t {
            Term::App(f, args) if self.sig().is_constructor(*f) => Ok((*f, args)),
            _ => self.fail(KernelErrorKind::NotConstructor(self.sig().display(t).to_string())),
        }
    }

    fn note(&mut self, t: &ProofTerm, p: &Prop) {
        if let Some(seen) = &mut self.seen {
            seen.insert(t as *const ProofTerm as usize, p.clone());
        }
    }

    fn infer(&mut self, t: &ProofTerm) -> R<Prop> {
        let p = self.infer_node(t)?;
        self.note(t, &p);
        Ok(p)
    }

    fn infer_node(&mut self, t: &ProofTerm) -> R<Prop> {
        match t {
            ProofTerm::Ref(name) => {
                if let Some((_, a)) = self.hyps.iter().rev().find(|(h, _)| h == name) {
                    return Ok(Prop::Atom(a.clone()));
                }
                match self.ctx.lookup(name) {
                    Some(p) => Ok(p.clone()),
                    None => self.fail(KernelErrorKind::UnknownName(name.clone())),
                }
            }
            ProofTerm::Lam(..) => self.fail(KernelErrorKind::CannotInfer),
            ProofTerm::App(f, a) => {
                let ft = self.sub("fun", |c| c.infer(f))?;
                match ft {
                    Prop::Imp(prem, concl) => {
                        self.sub("arg", |c| c.check(a, &Prop::Atom(prem)))?;
                        Ok(*concl)
                    }
                    other => self.fail(KernelErrorKind::NotImplication(self.show(&other))),
                }
            }
            ProofTerm::AllIntro(v, body) => {
                self.eigenvariable(*v)?;
                self.vars.push(*v);
                let p = self.sub(&format!("all x{}", v.id), |c| c.infer(body));
                self.vars.pop();
                Ok(Prop::Forall(*v, Box::new(p?)))
            }
            ProofTerm::AllElim(p, w) => {
                let pt = self.sub("inst", |c| c.infer(p))?;
                match pt {
                    Prop::Forall(x, body) => {
                        self.scoped_term(w)?;
                        let ws = self.sig().sort_of(w);
                        if ws != x.sort {
                            let e = self.sig().mismatch(x.sort, ws);
                            return self.sort_err(e);
                        }
                        Ok(body.instantiate(x, w))
                    }
                    other => self.fail(KernelErrorKind::NotUniversal(self.show(&other))),
                }
            }
            ProofTerm::Refl(t) => {
                self.scoped_term(t)?;
                Ok(Prop::Atom(Atom::Eq(t.clone(), t.clone())))
            }
            ProofTerm::Sym(p) => {
                let pt = self.sub("sym", |c| c.infer(p))?;
                let (l, r) = self.equation(pt)?;
                Ok(Prop::Atom(Atom::Eq(r, l)))
            }
            ProofTerm::Trans(p, q) => {
                let pt = self.sub("trans.0", |c| c.infer(p))?;
                let (a, b) = self.equation(pt)?;
                let qt = self.sub("trans.1", |c| c.infer(q))?;
                let (b2, d) = self.equation(qt)?;
                if b != b2 {
                    let s = self.sig();
                    return self.fail(KernelErrorKind::Endpoints(
                        s.display(&b).to_string(),
                        s.display(&b2).to_string(),
                    ));
                }
                Ok(Prop::Atom(Atom::Eq(a, d)))
            }
            ProofTerm::Cong(ctx, p) => {
                self.context_term(ctx)?;
                let pt = self.sub("cong", |c| c.infer(p))?;
                let (l, r) = self.equation(pt)?;
                let (cl, cr) = (ctx.plug(&l), ctx.plug(&r));
                for t in [&cl, &cr] {
                    if let Err(e) = self.sig().check_term(t) {
                        return self.sort_err(e);
                    }
                }
                Ok(Prop::Atom(Atom::Eq(cl, cr)))
            }
            ProofTerm::Rw(e, p, ctx) => {
                self.context_atom(ctx)?;
                let et = self.sub("rw.eq", |c| c.infer(e))?;
                let (l, r) = self.equation(et)?;
                let from = Prop::Atom(ctx.plug(&l));
                self.sub("rw.target", |c| c.check(p, &from))?;
                let to = ctx.plug(&r);
                if let Err(e) = to.check(self.sig()) {
                    return self.sort_err(e);
                }
                Ok(Prop::Atom(to))
            }
            ProofTerm::Hole(f) => {
                let p = f.to_prop();
                self.scoped_prop(&p)?;
                self.holes.push(self.path.join("/"));
                Ok(p)
            }
            ProofTerm::Inj(p, i) => {
                let pt = self.sub("inj", |c| c.infer(p))?;
                let (l, r) = self.equation(pt)?;
                let (f, xs) = self.constructor_app(&l)?;
                let (g, ys) = self.constructor_app(&r)?;
                let name = self.sig().function(f).name.clone();
                if f != g {
                    return self.fail(KernelErrorKind::NotEquation(format!(
                        "{} = {}",
                        name,
                        self.sig().function(g).name
                    )));
                }
                if *i >= xs.len() {
                    return self.fail(KernelErrorKind::Index { name, index: *i });
                }
                Ok(Prop::Atom(Atom::Eq(xs[*i].clone(), ys[*i].clone())))
            }
            ProofTerm::Clash(p, a) => {
                let pt = self.sub("clash", |c| c.infer(p))?;
                let (l, r) = self.equation(pt)?;
                let (f, _) = self.constructor_app(&l)?;
                let (g, _) = self.constructor_app(&r)?;
                if f == g {
                    return self.fail(KernelErrorKind::SameConstructor(self.sig().function(f).name.clone()));
                }
                self.scoped_atom(a)?;
                Ok(Prop::Atom(a.clone()))
            }
        }
    }

    fn eigenvariable(&self, v: Var) -> R<()> {
        if v.id >= super::RESERVED_IDS || self.vars.iter().any(|w| w.id == v.id) {
            return self.fail(KernelErrorKind::Eigenvariable(v.id));
        }
        if v.sort.0 as usize >= self.sig().sort_count() {
            return self.fail(KernelErrorKind::Sort(format!("unknown sort for x{}", v.id)));
        }
        Ok(())
    }

    fn check(&mut self, t: &ProofTerm, expected: &Prop) -> R<()> {
        if matches!(t, ProofTerm::Lam(..) | ProofTerm::AllIntro(..)) {
            self.note(t, expected);
        }
        match (t, expected) {
            (ProofTerm::Lam(h, body), Prop::Imp(a, rest)) => {
                self.hyps.push((h.clone(), a.clone()));
                let out = self.sub(&format!("fun {h}"), |c| c.check(body, rest));
                self.hyps.pop();
                out
            }
            (ProofTerm::Lam(..), other) => self.fail(KernelErrorKind::NotImplication(self.show(other))),
            (ProofTerm::AllIntro(v, body), Prop::Forall(x, rest)) => {
                self.eigenvariable(*v)?;
                if v.sort != x.sort {
                    let e = self.sig().mismatch(x.sort, v.sort);
                    return self.sort_err(e);
                }
                let inner = rest.instantiate(*x, &Term::Var(*v));
                self.vars.push(*v);
                let out = self.sub(&format!("all x{}", v.id), |c| c.check(body, &inner));
                self.vars.pop();
                out
            }
            (ProofTerm::AllIntro(..), other) => self.fail(KernelErrorKind::NotUniversal(self.show(other))),
            _ => {
                let found = self.infer(t)?;
                if found.alpha_eq(expected) {
                    Ok(())
                } else {
                    self.fail(KernelErrorKind::Mismatch {
                        expected: self.show(expected),
                        found: self.show(&found),
                    })
                }
            }
        }
    }

    fn finish(self) -> R<()> {
        if self.holes.is_empty() {
            Ok(())
        } else {
            Err(KernelError {
                path: self.holes[0].clone(),
                kind: KernelErrorKind::IncompleteProof(self.holes),
            })
        }
    }
}

fn closed(ctx: &CheckContext, name: &str, f: &Formula) -> R<Prop> {
    let p = f.to_prop();
    let c = Checker::new(ctx, name.to_string());
    if !p.free_vars().is_empty() {
        return c.fail(KernelErrorKind::Open);
    }
    c.prop_sorts(&p)?;
    Ok(p)
}

/// Checks `t` against a closed formula. Holes are reported only once the
/// rest of the term has checked.
pub fn check(ctx: &CheckContext, t: &ProofTerm, expected: &Formula) -> Result<(), KernelError> {
    let p = closed(ctx, "term", expected)?;
    let mut c = Checker::new(ctx, "term".into());
    c.check(t, &p)?;
    c.finish()
}

/// Checks every definition in order, each seeing the earlier ones, then the
/// theorem. Holes from all definitions are collected into one report.
pub fn check_script(ctx: &CheckContext, script: &ProofScript) -> Result<(), KernelError> {
    let mut ctx = ctx.clone();
    let mut holes = Vec::new();
    let mut names = BTreeSet::new();
    for d in script.defs.iter().chain(std::iter::once(&script.theorem)) {
        if ctx.contains(&d.name) || !names.insert(d.name.clone()) {
            return Err(KernelError {
                path: d.name.clone(),
                kind: KernelErrorKind::DuplicateName(d.name.clone()),
            });
        }
        let p = closed(&ctx, &d.name, &d.formula)?;
        let mut c = Checker::new(&ctx, d.name.clone());
        c.check(&d.term, &p)?;
        holes.extend(c.holes);
        ctx.insert(&d.name, p);
    }
    if holes.is_empty() {
        Ok(())
    } else {
        Err(KernelError {
            path: holes[0].clone(),
            kind: KernelErrorKind::IncompleteProof(holes),
        })
    }
}

/// Checks `script` and returns, per definition (theorem last), the formula
/// proved by every node of its term in preorder.
pub fn node_formulas(ctx: &CheckContext, script: &ProofScript) -> Result<Vec<Vec<Prop>>, KernelError> {
    check_script(ctx, script)?;
    let mut ctx = ctx.clone();
    let mut out = Vec::new();
    for d in script.defs.iter().chain(std::iter::once(&script.theorem)) {
        let p = closed(&ctx, &d.name, &d.formula)?;
        let mut c = Checker::new(&ctx, d.name.clone());
        c.seen = Some(HashMap::new());
        c.check(&d.term, &p)?;
        let seen = c.seen.take().unwrap_or_default();
        let mut props = Vec::new();
        let mut stack = vec![&d.term];
        while let Some(t) = stack.pop() {
            let key = t as *const ProofTerm as usize;
            props.push(seen[&key].clone());
            stack.extend(t.children().into_iter().rev());
        }
        out.push(props);
        ctx.insert(&d.name, p);
    }
    Ok(out)
}
