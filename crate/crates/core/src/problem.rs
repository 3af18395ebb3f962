//! Problems in the supported SMT-LIB subset: parsing, printing and clausification.
//!
//! The subset covers `declare-sort`, `declare-fun`, `declare-const`,
//! single `declare-datatype`, named `assert`s of universally quantified Horn
//! implications over `=` (and declared predicates), and one named `assert-not`
//! carrying the ground goal atom.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::clause::{Atom, HornClause, Head};
use crate::sexp::{self, Sexp, Span};
use crate::term::{FunId, PredId, Signature, SortId, SymbolRef, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub name: String,
    /// Binder names; variable `i` of the clause has id `i`.
    pub var_names: Vec<String>,
    pub clause: HornClause,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub atom: Atom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Goal {
    pub name: String,
    pub atom: Atom,
}

/// One top-level declaration, in source order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decl {
    Sort(SortId),
    Datatype(SortId),
    Function(FunId),
    Predicate(PredId),
    Axiom(usize),
    Hypothesis(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub signature: Signature,
    pub axioms: Vec<Axiom>,
    pub hypotheses: Vec<Hypothesis>,
    pub goal: Goal,
    /// Declaration order, used to print the problem back faithfully. The goal
    /// always comes last.
    pub order: Vec<Decl>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProblemErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("`{name}` expects {expected} arguments, found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("sort mismatch: expected `{expected}`, found `{found}`")]
    SortMismatch { expected: String, found: String },
    #[error("not a Horn formula: {0}")]
    NonHorn(String),
    #[error("missing assert-not goal")]
    MissingGoal,
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("more than one assert-not goal")]
    DuplicateGoal,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{span}: {kind}")]
pub struct ProblemError {
    pub span: Span,
    pub kind: ProblemErrorKind,
}

fn err<T>(span: Span, kind: ProblemErrorKind) -> Result<T, ProblemError> {
    Err(ProblemError { span, kind })
}

fn syntax<T>(span: Span, msg: impl Into<String>) -> Result<T, ProblemError> {
    err(span, ProblemErrorKind::Syntax(msg.into()))
}

const BOOL: &str = "Bool";

pub fn parse_problem(text: &str) -> Result<Problem, ProblemError> {
    let exprs = sexp::parse_all(text).map_err(|e| ProblemError {
        span: e.span,
        kind: ProblemErrorKind::Syntax(e.message),
    })?;
    let mut p = Parser {
        sig: Signature::new(),
        axioms: Vec::new(),
        hypotheses: Vec::new(),
        goal: None,
        order: Vec::new(),
        names: HashSet::new(),
    };
    let mut last_span = Span::default();
    for e in &exprs {
        last_span = e.span();
        p.command(e)?;
    }
    let goal = match p.goal {
        Some(g) => g,
        None => return err(last_span, ProblemErrorKind::MissingGoal),
    };
    Ok(Problem {
        signature: p.sig,
        axioms: p.axioms,
        hypotheses: p.hypotheses,
        goal,
        order: p.order,
    })
}

struct Parser {
    sig: Signature,
    axioms: Vec<Axiom>,
    hypotheses: Vec<Hypothesis>,
    goal: Option<Goal>,
    order: Vec<Decl>,
    names: HashSet<String>,
}

fn atom_of(e: &Sexp) -> Result<&str, ProblemError> {
    match e.as_atom() {
        Some(a) => Ok(a),
        None => syntax(e.span(), "expected a name"),
    }
}

fn check_identifier(e: &Sexp) -> Result<&str, ProblemError> {
    let name = atom_of(e)?;
    if name.starts_with(|c: char| c.is_ascii_digit()) {
        return syntax(e.span(), format!("identifier `{name}` starts with a digit"));
    }
    Ok(name)
}

impl Parser {
    fn command(&mut self, e: &Sexp) -> Result<(), ProblemError> {
        let span = e.span();
        let items = match e.as_list() {
            Some(items) if !items.is_empty() => items,
            _ => return syntax(span, "expected a command"),
        };
        let head = atom_of(&items[0])?;
        match head {
            "declare-sort" => {
                if items.len() != 3 {
                    return syntax(span, "declare-sort takes a name and an arity");
                }
                let name = check_identifier(&items[1])?;
                if atom_of(&items[2])? != "0" {
                    return err(span, ProblemErrorKind::Unsupported("sorts with parameters".into()));
                }
                let id = self.sig.add_sort(name).map_err(|_| ProblemError {
                    span,
                    kind: ProblemErrorKind::DuplicateName(name.into()),
                })?;
                self.order.push(Decl::Sort(id));
            }
            "declare-fun" => {
                if items.len() != 4 {
                    return syntax(span, "declare-fun takes a name, argument sorts and a result sort");
                }
                let name = check_identifier(&items[1])?;
                let args = match items[2].as_list() {
                    Some(a) => a
                        .iter()
                        .map(|s| self.sort(s))
                        .collect::<Result<Vec<_>, _>>()?,
                    None => return syntax(items[2].span(), "expected argument sort list"),
                };
                self.declare_symbol(span, name, args, &items[3])?;
            }
            "declare-const" => {
                if items.len() != 3 {
                    return syntax(span, "declare-const takes a name and a sort");
                }
                let name = check_identifier(&items[1])?;
                self.declare_symbol(span, name, Vec::new(), &items[2])?;
            }
            "declare-datatype" => self.datatype(span, items)?,
            "declare-datatypes" => {
                return err(
                    span,
                    ProblemErrorKind::Unsupported("mutually recursive datatypes".into()),
                )
            }
            "assert" => self.assertion(span, items)?,
            "assert-not" => self.goal(span, items)?,
            "set-logic" | "set-info" | "set-option" | "check-sat" | "exit" => {}
            other => {
                return err(span, ProblemErrorKind::Unsupported(format!("command `{other}`")))
            }
        }
        Ok(())
    }

    fn declare_symbol(
        &mut self,
        span: Span,
        name: &str,
        args: Vec<SortId>,
        result: &Sexp,
    ) -> Result<(), ProblemError> {
        let dup = |_| ProblemError {
            span,
            kind: ProblemErrorKind::DuplicateName(name.into()),
        };
        if result.as_atom() == Some(BOOL) {
            let id = self.sig.add_predicate(name, args).map_err(dup)?;
            self.order.push(Decl::Predicate(id));
        } else {
            let res = self.sort(result)?;
            let id = self.sig.add_function(name, args, res).map_err(dup)?;
            self.order.push(Decl::Function(id));
        }
        Ok(())
    }

    fn sort(&self, e: &Sexp) -> Result<SortId, ProblemError> {
        let name = atom_of(e)?;
        self.sig.lookup_sort(name).ok_or(ProblemError {
            span: e.span(),
            kind: ProblemErrorKind::UnknownSort(name.into()),
        })
    }

    fn datatype(&mut self, span: Span, items: &[Sexp]) -> Result<(), ProblemError> {
        if items.len() != 3 {
            return syntax(span, "declare-datatype takes a name and a constructor list");
        }
        let name = check_identifier(&items[1])?;
        let dt = self.sig.add_datatype(name).map_err(|_| ProblemError {
            span,
            kind: ProblemErrorKind::DuplicateName(name.into()),
        })?;
        let ctors = match items[2].as_list() {
            Some(c) if !c.is_empty() => c,
            _ => return syntax(items[2].span(), "expected a non-empty constructor list"),
        };
        for c in ctors {
            let parts = match c.as_list() {
                Some(p) if !p.is_empty() => p,
                _ => return syntax(c.span(), "constructor must be written `(name (field sort)*)`"),
            };
            let cname = check_identifier(&parts[0])?;
            let mut fields = Vec::new();
            for f in &parts[1..] {
                match f.as_list() {
                    Some([sel, sort]) => fields.push((check_identifier(sel)?.to_string(), self.sort(sort)?)),
                    _ => return syntax(f.span(), "field must be written `(selector sort)`"),
                }
            }
            self.sig.add_constructor(dt, cname, fields).map_err(|_| ProblemError {
                span: c.span(),
                kind: ProblemErrorKind::DuplicateName(cname.into()),
            })?;
        }
        self.order.push(Decl::Datatype(dt));
        Ok(())
    }

    /// `(! F :named n)`
    fn named<'e>(&mut self, e: &'e Sexp) -> Result<(&'e Sexp, String), ProblemError> {
        match e.as_list() {
            Some([bang, body, key, name]) if bang.as_atom() == Some("!") && key.as_atom() == Some(":named") => {
                let name = check_identifier(name)?.to_string();
                if !self.names.insert(name.clone()) {
                    return err(e.span(), ProblemErrorKind::DuplicateName(name));
                }
                Ok((body, name))
            }
            _ => syntax(e.span(), "expected `(! formula :named name)`"),
        }
    }

    fn assertion(&mut self, span: Span, items: &[Sexp]) -> Result<(), ProblemError> {
        if items.len() != 2 {
            return syntax(span, "assert takes one formula");
        }
        let (body, name) = self.named(&items[1])?;
        let (binders, matrix) = match body.as_list() {
            Some([q, bs, m]) if q.as_atom() == Some("forall") => {
                let bs = match bs.as_list() {
                    Some(bs) => bs,
                    None => return syntax(bs.span(), "expected binder list"),
                };
                (bs, m)
            }
            _ => (&[][..], body),
        };
        let mut scope = Vec::new();
        for (i, b) in binders.iter().enumerate() {
            match b.as_list() {
                Some([n, s]) => {
                    let vname = check_identifier(n)?.to_string();
                    let sort = self.sort(s)?;
                    scope.push((vname, Var::new(i as u32, sort)));
                }
                _ => return syntax(b.span(), "binder must be `(name sort)`"),
            }
        }
        let (body_atoms, head) = self.horn(matrix, &scope)?;
        if scope.is_empty() && body_atoms.is_empty() {
            if !head.is_ground() {
                return err(matrix.span(), ProblemErrorKind::NonHorn("free variable".into()));
            }
            self.hypotheses.push(Hypothesis { name, atom: head });
            self.order.push(Decl::Hypothesis(self.hypotheses.len() - 1));
        } else {
            let vars = scope.iter().map(|(_, v)| *v).collect();
            let clause = HornClause::with_vars(&self.sig, vars, body_atoms, Head::Atom(head))
                .map_err(|e| ProblemError {
                    span: matrix.span(),
                    kind: ProblemErrorKind::NonHorn(e.to_string()),
                })?;
            self.axioms.push(Axiom {
                name,
                var_names: scope.into_iter().map(|(n, _)| n).collect(),
                clause,
            });
            self.order.push(Decl::Axiom(self.axioms.len() - 1));
        }
        Ok(())
    }

    fn goal(&mut self, span: Span, items: &[Sexp]) -> Result<(), ProblemError> {
        if items.len() != 2 {
            return syntax(span, "assert-not takes one formula");
        }
        if self.goal.is_some() {
            return err(span, ProblemErrorKind::DuplicateGoal);
        }
        let (body, name) = self.named(&items[1])?;
        let atom = self.atom(body, &[])?;
        self.goal = Some(Goal { name, atom });
        Ok(())
    }

    /// `A`, `(=> A₁ … Aₙ H)` or `(=> (and A₁ … Aₙ) H)`.
    fn horn(&self, e: &Sexp, scope: &[(String, Var)]) -> Result<(Vec<Atom>, Atom), ProblemError> {
        match e.head() {
            Some("=>") => {
                let items = e.as_list().unwrap();
                if items.len() < 3 {
                    return syntax(e.span(), "implication needs premises and a conclusion");
                }
                let mut body = Vec::new();
                for prem in &items[1..items.len() - 1] {
                    if prem.head() == Some("and") {
                        for a in &prem.as_list().unwrap()[1..] {
                            body.push(self.atom(a, scope)?);
                        }
                    } else {
                        body.push(self.atom(prem, scope)?);
                    }
                }
                let head = self.atom(&items[items.len() - 1], scope)?;
                Ok((body, head))
            }
            _ => Ok((Vec::new(), self.atom(e, scope)?)),
        }
    }

    fn atom(&self, e: &Sexp, scope: &[(String, Var)]) -> Result<Atom, ProblemError> {
        let span = e.span();
        let (name, args): (&str, &[Sexp]) = match e {
            Sexp::Atom(a, _) => (a.as_str(), &[]),
            Sexp::List(items, _) => match items.split_first() {
                Some((h, rest)) => (atom_of(h)?, rest),
                None => return syntax(span, "empty atom"),
            },
        };
        match name {
            "=" => {
                if args.len() != 2 {
                    return err(span, ProblemErrorKind::Arity { name: "=".into(), expected: 2, found: args.len() });
                }
                let l = self.term(&args[0], scope)?;
                let r = self.term(&args[1], scope)?;
                let (ls, rs) = (self.sig.sort_of(&l), self.sig.sort_of(&r));
                if ls != rs {
                    return err(span, self.mismatch(ls, rs));
                }
                Ok(Atom::Eq(l, r))
            }
            "not" | "or" | "and" | "=>" | "exists" | "forall" | "false" | "true" | "distinct" => {
                err(span, ProblemErrorKind::NonHorn(format!("`{name}` in atom position")))
            }
            _ => match self.sig.lookup_symbol(name) {
                Some(SymbolRef::Pred(p)) => {
                    let want = self.sig.predicate(p).arg_sorts.clone();
                    let args = self.args(span, name, &want, args, scope)?;
                    Ok(Atom::Pred(p, args))
                }
                Some(SymbolRef::Fun(_)) => err(
                    span,
                    ProblemErrorKind::NonHorn(format!("term `{name}` used as a formula")),
                ),
                None => err(span, ProblemErrorKind::UnknownSymbol(name.into())),
            },
        }
    }

    fn args(
        &self,
        span: Span,
        name: &str,
        want: &[SortId],
        args: &[Sexp],
        scope: &[(String, Var)],
    ) -> Result<Vec<Term>, ProblemError> {
        if want.len() != args.len() {
            return err(span, ProblemErrorKind::Arity {
                name: name.into(),
                expected: want.len(),
                found: args.len(),
            });
        }
        let mut out = Vec::with_capacity(args.len());
        for (a, w) in args.iter().zip(want) {
            let t = self.term(a, scope)?;
            let got = self.sig.sort_of(&t);
            if got != *w {
                return err(a.span(), self.mismatch(*w, got));
            }
            out.push(t);
        }
        Ok(out)
    }

    fn term(&self, e: &Sexp, scope: &[(String, Var)]) -> Result<Term, ProblemError> {
        let span = e.span();
        match e {
            Sexp::Atom(name, _) => {
                if let Some((_, v)) = scope.iter().rev().find(|(n, _)| n == name) {
                    return Ok(Term::Var(*v));
                }
                self.app(span, name, &[], scope)
            }
            Sexp::List(items, _) => match items.split_first() {
                Some((h, rest)) => self.app(span, atom_of(h)?, rest, scope),
                None => syntax(span, "empty term"),
            },
        }
    }

    fn app(&self, span: Span, name: &str, args: &[Sexp], scope: &[(String, Var)]) -> Result<Term, ProblemError> {
        match self.sig.lookup_symbol(name) {
            Some(SymbolRef::Fun(f)) => {
                let want = self.sig.function(f).arg_sorts.clone();
                Ok(Term::App(f, self.args(span, name, &want, args, scope)?))
            }
            Some(SymbolRef::Pred(_)) => err(
                span,
                ProblemErrorKind::NonHorn(format!("predicate `{name}` used as a term")),
            ),
            None => err(span, ProblemErrorKind::UnknownSymbol(name.into())),
        }
    }

    fn mismatch(&self, expected: SortId, found: SortId) -> ProblemErrorKind {
        ProblemErrorKind::SortMismatch {
            expected: self.sig.sort(expected).name.clone(),
            found: self.sig.sort(found).name.clone(),
        }
    }
}

/// Prints a problem, one command per line. Declared constants are written in
/// application form `(c )`; nullary constructors are written bare.
pub fn emit_problem(p: &Problem) -> String {
    let sig = &p.signature;
    let mut out = String::new();
    for d in &p.order {
        match *d {
            Decl::Sort(s) => {
                let _ = writeln!(out, "(declare-sort {} 0)", sig.sort(s).name);
            }
            Decl::Datatype(s) => {
                let sort = sig.sort(s);
                let mut ctors = Vec::new();
                for c in sort.constructors.iter().flatten() {
                    let f = sig.function(c.fun);
                    let mut text = format!("({}", f.name);
                    for (field, fs) in c.fields.iter().zip(&f.arg_sorts) {
                        let _ = write!(text, " ({} {})", field, sig.sort(*fs).name);
                    }
                    text.push(')');
                    ctors.push(text);
                }
                let _ = writeln!(out, "(declare-datatype {} ({}))", sort.name, ctors.join(" "));
            }
            Decl::Function(f) => {
                let sym = sig.function(f);
                if sym.arg_sorts.is_empty() {
                    let _ = writeln!(out, "(declare-const {} {})", sym.name, sig.sort(sym.result_sort).name);
                } else {
                    let args: Vec<&str> = sym.arg_sorts.iter().map(|s| sig.sort(*s).name.as_str()).collect();
                    let _ = writeln!(
                        out,
                        "(declare-fun {} ({}) {})",
                        sym.name,
                        args.join(" "),
                        sig.sort(sym.result_sort).name
                    );
                }
            }
            Decl::Predicate(pr) => {
                let sym = sig.predicate(pr);
                let args: Vec<&str> = sym.arg_sorts.iter().map(|s| sig.sort(*s).name.as_str()).collect();
                let _ = writeln!(out, "(declare-fun {} ({}) {})", sym.name, args.join(" "), BOOL);
            }
            Decl::Axiom(i) => {
                let ax = &p.axioms[i];
                let names = |v: &Var| ax.var_names[v.id as usize].clone();
                let binders: Vec<String> = ax
                    .clause
                    .vars()
                    .iter()
                    .map(|v| format!("({} {})", names(v), sig.sort(v.sort).name))
                    .collect();
                let head = match ax.clause.head() {
                    Head::Atom(a) => smt_atom(sig, a, &names),
                    _ => unreachable!("axioms are definite"),
                };
                let matrix = if ax.clause.body().is_empty() {
                    head
                } else {
                    let prems: Vec<String> = ax.clause.body().iter().map(|a| smt_atom(sig, a, &names)).collect();
                    format!("(=> {} {})", prems.join(" "), head)
                };
                let _ = writeln!(
                    out,
                    "(assert (! (forall ({}) {}) :named {}))",
                    binders.join(" "),
                    matrix,
                    ax.name
                );
            }
            Decl::Hypothesis(i) => {
                let h = &p.hypotheses[i];
                let _ = writeln!(
                    out,
                    "(assert (! (forall () {}) :named {}))",
                    smt_atom(sig, &h.atom, &|v| format!("x{}", v.id)),
                    h.name
                );
            }
        }
    }
    let _ = writeln!(
        out,
        "(assert-not (! {} :named {}))",
        smt_atom(sig, &p.goal.atom, &|v| format!("x{}", v.id)),
        p.goal.name
    );
    out
}

pub fn smt_term(sig: &Signature, t: &Term, names: &dyn Fn(&Var) -> String) -> String {
    match t {
        Term::Var(v) => names(v),
        Term::App(f, args) => {
            let sym = sig.function(*f);
            if args.is_empty() {
                if sym.is_constructor {
                    sym.name.clone()
                } else {
                    format!("({} )", sym.name)
                }
            } else {
                let parts: Vec<String> = args.iter().map(|a| smt_term(sig, a, names)).collect();
                format!("({} {})", sym.name, parts.join(" "))
            }
        }
    }
}

pub fn smt_atom(sig: &Signature, a: &Atom, names: &dyn Fn(&Var) -> String) -> String {
    match a {
        Atom::Eq(l, r) => format!("(= {} {})", smt_term(sig, l, names), smt_term(sig, r, names)),
        Atom::Pred(p, args) => {
            let name = &sig.predicate(*p).name;
            if args.is_empty() {
                name.clone()
            } else {
                let parts: Vec<String> = args.iter().map(|t| smt_term(sig, t, names)).collect();
                format!("({} {})", name, parts.join(" "))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseRole {
    Axiom,
    Hypothesis,
    NegatedGoal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedClause {
    pub name: String,
    pub role: ClauseRole,
    pub clause: HornClause,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clausified {
    /// Axioms, then hypotheses, then the goal clause `G → ⊥`.
    pub clauses: Vec<NamedClause>,
    pub goal: Atom,
}

pub fn clausify(p: &Problem) -> Clausified {
    let mut clauses = Vec::with_capacity(p.axioms.len() + p.hypotheses.len() + 1);
    for ax in &p.axioms {
        clauses.push(NamedClause {
            name: ax.name.clone(),
            role: ClauseRole::Axiom,
            clause: ax.clause.clone(),
        });
    }
    for h in &p.hypotheses {
        clauses.push(NamedClause {
            name: h.name.clone(),
            role: ClauseRole::Hypothesis,
            clause: HornClause::fact(h.atom.clone()),
        });
    }
    clauses.push(NamedClause {
        name: p.goal.name.clone(),
        role: ClauseRole::NegatedGoal,
        clause: HornClause::from_parts(vec![p.goal.atom.clone()], Head::Falsum),
    });
    Clausified {
        clauses,
        goal: p.goal.atom.clone(),
    }
}

impl Problem {
    /// Looks up an axiom or hypothesis by name as a clause.
    pub fn premise(&self, name: &str) -> Option<HornClause> {
        if let Some(ax) = self.axioms.iter().find(|a| a.name == name) {
            return Some(ax.clause.clone());
        }
        self.hypotheses
            .iter()
            .find(|h| h.name == name)
            .map(|h| HornClause::fact(h.atom.clone()))
    }
}

/// Collapses whitespace so that two renderings of the same commands compare
/// equal: one command per line, single spaces, no space before `)` except in the
/// `(c )` form, which is kept.
pub fn normalize_text(text: &str) -> Result<String, sexp::SexpError> {
    fn render(e: &Sexp, out: &mut String) {
        match e {
            Sexp::Atom(a, _) => out.push_str(a),
            Sexp::List(items, _) => {
                out.push('(');
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    render(it, out);
                }
                if items.len() == 1 && items[0].as_atom().is_some() {
                    out.push(' ');
                }
                out.push(')');
            }
        }
    }
    let mut out = String::new();
    for e in sexp::parse_all(text)? {
        render(&e, &mut out);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAT: &str = "\
(declare-datatype nat ((ze) (su (n nat))))
(declare-fun add (nat nat) nat)
(assert (! (forall ((x nat)) (= (add ze x) x)) :named add-clause-1))
(assert (! (forall ((x nat)(y nat)) (= (add (su x) y) (su (add x y)))) :named add-clause-2))
(assert-not (! (= (add (su ze) ze) (su ze)) :named one-plus-zero))
";

    #[test]
    fn nat_listing_forms() {
        let p = parse_problem(NAT).unwrap();
        assert!(p.signature.sort(p.signature.lookup_sort("nat").unwrap()).is_datatype());
        assert_eq!(p.axioms.len(), 2);
        let out = emit_problem(&p);
        assert_eq!(normalize_text(&out).unwrap(), normalize_text(NAT).unwrap());
        assert!(out.contains("(declare-datatype nat ((ze) (su (n nat))))"));
        assert!(out.contains("(= (add ze x) x)"));
    }

    #[test]
    fn nullary_application_form() {
        let text = "(declare-sort S 0)(declare-const c S)(assert-not (! (= (c ) c) :named g))";
        let p = parse_problem(text).unwrap();
        let c = p.signature.lookup_function("c").unwrap();
        assert_eq!(p.goal.atom, Atom::Eq(Term::constant(c), Term::constant(c)));
    }

    #[test]
    fn no_axioms_emits_declarations_and_goal() {
        let text = "(declare-sort S 0)\n(declare-const c S)\n(assert-not (! (= (c ) (c )) :named g))\n";
        let p = parse_problem(text).unwrap();
        assert_eq!(emit_problem(&p), text);
    }

    fn kind(text: &str) -> ProblemErrorKind {
        parse_problem(text).unwrap_err().kind
    }

    #[test]
    fn diagnostics() {
        assert!(matches!(
            kind("(declare-sort S 0)(assert-not (! (= a a) :named g))"),
            ProblemErrorKind::UnknownSymbol(_)
        ));
        assert!(matches!(
            kind("(declare-sort S 0)(declare-fun f (S) S)(declare-const c S)(assert-not (! (= (f c c) c) :named g))"),
            ProblemErrorKind::Arity { .. }
        ));
        assert!(matches!(
            kind("(declare-sort S 0)(declare-sort T 0)(declare-const c S)(declare-const d T)(assert-not (! (= c d) :named g))"),
            ProblemErrorKind::SortMismatch { .. }
        ));
        assert!(matches!(
            kind("(declare-sort S 0)(declare-const c S)(assert (! (forall () (not (= c c))) :named a))(assert-not (! (= c c) :named g))"),
            ProblemErrorKind::NonHorn(_)
        ));
        assert_eq!(kind("(declare-sort S 0)"), ProblemErrorKind::MissingGoal);
        assert!(matches!(
            kind("(declare-sort S 0)(declare-const c S)(assert (! (forall () (= c c)) :named a))(assert-not (! (= c c) :named a))"),
            ProblemErrorKind::DuplicateName(_)
        ));
        assert!(matches!(
            kind("(declare-datatypes ((a 0)) (((x))))"),
            ProblemErrorKind::Unsupported(_)
        ));
    }

    #[test]
    fn error_carries_position() {
        let e = parse_problem("(declare-sort S 0)\n(declare-const c S)\n(assert-not (! (= c q) :named g))").unwrap_err();
        assert_eq!(e.span.line, 3);
        assert!(e.to_string().starts_with("3:"));
    }

    #[test]
    fn clausify_counts() {
        let p = parse_problem(NAT).unwrap();
        let c = clausify(&p);
        assert_eq!(c.clauses.len(), p.axioms.len() + p.hypotheses.len() + 1);
        assert_eq!(c.clauses.last().unwrap().role, ClauseRole::NegatedGoal);
        assert_eq!(c.clauses.last().unwrap().clause.head(), &Head::Falsum);
    }
}
