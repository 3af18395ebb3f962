//! The `.prf` surface syntax.
//!
//! ```text
//! script  ::= (def NAME FORMULA PROOF)* (theorem NAME FORMULA PROOF)
//! FORMULA ::= (forall ((x0 S) ..) MATRIX) | MATRIX
//! MATRIX  ::= (=> ATOM .. ATOM) | ATOM
//! PROOF   ::= NAME | (fun NAME .. PROOF) | (all (x0 S) .. PROOF)
//!           | (inst PROOF TERM ..) | (ap PROOF PROOF ..) | (refl TERM)
//!           | (sym PROOF) | (trans PROOF PROOF) | (cong (\h -> TERM) PROOF)
//!           | (rw PROOF PROOF (\h -> ATOM)) | (hole FORMULA)
//!           | (inj PROOF INDEX) | (clash PROOF ATOM)
//! ```
//!
//! Terms and atoms use the problem syntax. Variables are written `x<id>` and
//! the hole of a context is `h`.

use std::fmt::Write as _;

use thiserror::Error;

use super::{AtomContext, Def, Formula, ProofScript, ProofTerm, Prop, TermContext, HOLE_ID};
use crate::clause::Atom;
use crate::problem::{smt_atom, smt_term};
use crate::sexp::{self, Sexp, Span};
use crate::term::{Signature, SortId, SymbolRef, Term, Var};

const WIDTH: usize = 100;

fn var_name(v: &Var) -> String {
    if v.id == HOLE_ID {
        "h".into()
    } else {
        format!("x{}", v.id)
    }
}

fn term_text(sig: &Signature, t: &Term) -> String {
    smt_term(sig, t, &var_name)
}

fn atom_text(sig: &Signature, a: &Atom) -> String {
    smt_atom(sig, a, &var_name)
}

fn binder(sig: &Signature, v: &Var) -> String {
    format!("(x{} {})", v.id, sig.sort(v.sort).name)
}

/// Renders a proposition in formula syntax.
pub fn prop_text(sig: &Signature, p: &Prop) -> String {
    let mut vars = Vec::new();
    let mut cur = p;
    while let Prop::Forall(v, rest) = cur {
        vars.push(binder(sig, v));
        cur = rest;
    }
    let mut prems = Vec::new();
    while let Prop::Imp(a, rest) = cur {
        prems.push(atom_text(sig, a));
        cur = rest;
    }
    let last = match cur {
        Prop::Atom(a) => atom_text(sig, a),
        other => prop_text(sig, other),
    };
    let matrix = if prems.is_empty() {
        last
    } else {
        format!("(=> {} {})", prems.join(" "), last)
    };
    if vars.is_empty() {
        matrix
    } else {
        format!("(forall ({}) {})", vars.join(" "), matrix)
    }
}

fn formula_text(sig: &Signature, f: &Formula) -> String {
    prop_text(sig, &f.to_prop())
}

enum Doc {
    Text(String),
    List(Vec<Doc>),
}

fn list(items: Vec<Doc>) -> Doc {
    Doc::List(items)
}

fn text(s: impl Into<String>) -> Doc {
    Doc::Text(s.into())
}

impl Doc {
    fn flat(&self) -> String {
        match self {
            Doc::Text(s) => s.clone(),
            Doc::List(items) => {
                let parts: Vec<String> = items.iter().map(Doc::flat).collect();
                format!("({})", parts.join(" "))
            }
        }
    }

    fn render(&self, indent: usize, out: &mut String) {
        let flat = self.flat();
        match self {
            Doc::List(items) if indent + flat.chars().count() > WIDTH && items.len() > 1 => {
                out.push('(');
                out.push_str(&items[0].flat());
                for it in &items[1..] {
                    out.push('\n');
                    out.push_str(&" ".repeat(indent + 2));
                    it.render(indent + 2, out);
                }
                out.push(')');
            }
            _ => out.push_str(&flat),
        }
    }
}

fn doc(sig: &Signature, t: &ProofTerm) -> Doc {
    match t {
        ProofTerm::Ref(n) => text(n),
        ProofTerm::Lam(..) => {
            let mut items = vec![text("fun")];
            let mut cur = t;
            while let ProofTerm::Lam(h, b) = cur {
                items.push(text(h));
                cur = b;
            }
            items.push(doc(sig, cur));
            list(items)
        }
        ProofTerm::AllIntro(..) => {
            let mut items = vec![text("all")];
            let mut cur = t;
            while let ProofTerm::AllIntro(v, b) = cur {
                items.push(text(binder(sig, v)));
                cur = b;
            }
            items.push(doc(sig, cur));
            list(items)
        }
        ProofTerm::AllElim(..) => {
            let mut ws = Vec::new();
            let mut cur = t;
            while let ProofTerm::AllElim(p, w) = cur {
                ws.push(text(term_text(sig, w)));
                cur = p;
            }
            ws.reverse();
            let mut items = vec![text("inst"), doc(sig, cur)];
            items.extend(ws);
            list(items)
        }
        ProofTerm::App(..) => {
            let mut args = Vec::new();
            let mut cur = t;
            while let ProofTerm::App(f, a) = cur {
                args.push(doc(sig, a));
                cur = f;
            }
            args.reverse();
            let mut items = vec![text("ap"), doc(sig, cur)];
            items.extend(args);
            list(items)
        }
        ProofTerm::Refl(t) => list(vec![text("refl"), text(term_text(sig, t))]),
        ProofTerm::Sym(p) => list(vec![text("sym"), doc(sig, p)]),
        ProofTerm::Trans(p, q) => list(vec![text("trans"), doc(sig, p), doc(sig, q)]),
        ProofTerm::Cong(c, p) => list(vec![
            text("cong"),
            text(format!("(\\h -> {})", term_text(sig, &c.0))),
            doc(sig, p),
        ]),
        ProofTerm::Rw(e, p, c) => list(vec![
            text("rw"),
            doc(sig, e),
            doc(sig, p),
            text(format!("(\\h -> {})", atom_text(sig, &c.0))),
        ]),
        ProofTerm::Hole(f) => list(vec![text("hole"), text(formula_text(sig, f))]),
        ProofTerm::Inj(p, i) => list(vec![text("inj"), doc(sig, p), text(i.to_string())]),
        ProofTerm::Clash(p, a) => list(vec![text("clash"), doc(sig, p), text(atom_text(sig, a))]),
    }
}

pub fn emit_term(sig: &Signature, t: &ProofTerm) -> String {
    let mut out = String::new();
    doc(sig, t).render(0, &mut out);
    out
}

/// One block per definition, separated by blank lines, theorem last.
pub fn emit_surface(sig: &Signature, s: &ProofScript) -> String {
    let mut out = String::new();
    let mut block = |kw: &str, d: &Def| {
        let _ = writeln!(out, "({kw} {}\n  {}", d.name, formula_text(sig, &d.formula));
        out.push_str("  ");
        doc(sig, &d.term).render(2, &mut out);
        out.push_str(")\n\n");
    };
    for d in &s.defs {
        block("def", d);
    }
    block("theorem", &s.theorem);
    out.pop();
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{span}: {message}")]
pub struct SurfaceError {
    pub span: Span,
    pub message: String,
}

type R<T> = Result<T, SurfaceError>;

fn fail<T>(e: &Sexp, msg: impl Into<String>) -> R<T> {
    Err(SurfaceError {
        span: e.span(),
        message: msg.into(),
    })
}

struct Reader<'a> {
    sig: &'a Signature,
    scope: Vec<Var>,
}

impl Reader<'_> {
    fn atom_of<'e>(&self, e: &'e Sexp) -> R<&'e str> {
        match e.as_atom() {
            Some(a) => Ok(a),
            None => fail(e, "expected a name"),
        }
    }

    fn binder(&self, e: &Sexp) -> R<Var> {
        let parts = match e.as_list() {
            Some(p) if p.len() == 2 => p,
            _ => return fail(e, "expected a binder `(x<id> Sort)`"),
        };
        let name = self.atom_of(&parts[0])?;
        let id = match name.strip_prefix('x').and_then(|d| d.parse::<u32>().ok()) {
            Some(id) if id < HOLE_ID => id,
            _ => return fail(&parts[0], format!("bad variable name `{name}`")),
        };
        let sname = self.atom_of(&parts[1])?;
        match self.sig.lookup_sort(sname) {
            Some(s) => Ok(Var::new(id, s)),
            None => fail(&parts[1], format!("unknown sort `{sname}`")),
        }
    }

    fn lookup_var(&self, name: &str) -> Option<Var> {
        self.scope.iter().rev().find(|v| var_name(v) == name).copied()
    }

    /// `hole` is the sort to give `h`, or `None` when `h` is not allowed.
    fn term(&self, e: &Sexp, expected: Option<SortId>, hole: Option<&mut Option<SortId>>) -> R<Term> {
        let mut hole = hole;
        match e {
            Sexp::Atom(a, _) => {
                if a == "h" {
                    if let Some(slot) = hole.as_deref_mut() {
                        *slot = expected.or(*slot);
                        return Ok(Term::Var(Var::new(HOLE_ID, expected.unwrap_or(SortId(0)))));
                    }
                }
                if let Some(v) = self.lookup_var(a) {
                    return Ok(Term::Var(v));
                }
                match self.sig.lookup_symbol(a) {
                    Some(SymbolRef::Fun(f)) if self.sig.function(f).arity() == 0 => Ok(Term::constant(f)),
                    _ => fail(e, format!("unknown term `{a}`")),
                }
            }
            Sexp::List(items, _) => {
                let Some(head) = items.first() else {
                    return fail(e, "empty term");
                };
                let name = self.atom_of(head)?;
                let f = match self.sig.lookup_symbol(name) {
                    Some(SymbolRef::Fun(f)) => f,
                    _ => return fail(head, format!("unknown function `{name}`")),
                };
                let sym = self.sig.function(f);
                if sym.arity() != items.len() - 1 {
                    return fail(e, format!("`{name}` expects {} arguments", sym.arity()));
                }
                let sorts = sym.arg_sorts.clone();
                let mut args = Vec::new();
                for (a, s) in items[1..].iter().zip(sorts) {
                    args.push(self.term(a, Some(s), hole.as_deref_mut())?);
                }
                Ok(Term::App(f, args))
            }
        }
    }

    fn atom(&self, e: &Sexp, hole: Option<&mut Option<SortId>>) -> R<Atom> {
        let mut hole = hole;
        if let Some(a) = e.as_atom() {
            return match self.sig.lookup_symbol(a) {
                Some(SymbolRef::Pred(p)) if self.sig.predicate(p).arg_sorts.is_empty() => Ok(Atom::Pred(p, vec![])),
                _ => fail(e, format!("unknown predicate `{a}`")),
            };
        }
        let items = e.as_list().unwrap_or(&[]);
        let Some(head) = items.first() else {
            return fail(e, "empty atom");
        };
        let name = self.atom_of(head)?;
        if name == "=" {
            if items.len() != 3 {
                return fail(e, "`=` takes two arguments");
            }
            // read the side without the hole first so its sort can be used for `h`
            let (first, second) = if items[1].as_atom() == Some("h") { (2, 1) } else { (1, 2) };
            let a = self.term(&items[first], None, hole.as_deref_mut())?;
            let s = if a.as_var().map(|v| v.id) == Some(HOLE_ID) { None } else { Some(self.sig.sort_of(&a)) };
            let b = self.term(&items[second], s, hole.as_deref_mut())?;
            return Ok(if first == 1 { Atom::Eq(a, b) } else { Atom::Eq(b, a) });
        }
        let p = match self.sig.lookup_symbol(name) {
            Some(SymbolRef::Pred(p)) => p,
            _ => return fail(head, format!("unknown predicate `{name}`")),
        };
        let sorts = self.sig.predicate(p).arg_sorts.clone();
        if sorts.len() != items.len() - 1 {
            return fail(e, format!("`{name}` expects {} arguments", sorts.len()));
        }
        let mut args = Vec::new();
        for (a, s) in items[1..].iter().zip(sorts) {
            args.push(self.term(a, Some(s), hole.as_deref_mut())?);
        }
        Ok(Atom::Pred(p, args))
    }

    fn formula(&mut self, e: &Sexp) -> R<Formula> {
        let mut vars = Vec::new();
        let mut matrix = e;
        if e.head() == Some("forall") {
            let items = e.as_list().unwrap();
            if items.len() != 3 {
                return fail(e, "`forall` takes binders and a body");
            }
            let Some(bs) = items[1].as_list() else {
                return fail(&items[1], "expected a binder list");
            };
            for b in bs {
                vars.push(self.binder(b)?);
            }
            matrix = &items[2];
        }
        let depth = self.scope.len();
        self.scope.extend(vars.iter().copied());
        let out = self.matrix(matrix);
        self.scope.truncate(depth);
        let (body, head) = out?;
        Ok(Formula { vars, body, head })
    }

    fn matrix(&self, e: &Sexp) -> R<(Vec<Atom>, Atom)> {
        if e.head() == Some("=>") {
            let items = e.as_list().unwrap();
            if items.len() < 3 {
                return fail(e, "`=>` needs a premise and a conclusion");
            }
            let mut atoms = Vec::new();
            for a in &items[1..] {
                atoms.push(self.atom(a, None)?);
            }
            let head = atoms.pop().unwrap();
            Ok((atoms, head))
        } else {
            Ok((Vec::new(), self.atom(e, None)?))
        }
    }

    fn context<'e>(&self, e: &'e Sexp) -> R<&'e Sexp> {
        match e.as_list() {
            Some([lam, arrow, body]) if lam.as_atom() == Some("\\h") && arrow.as_atom() == Some("->") => Ok(body),
            _ => fail(e, "expected a context `(\\h -> ..)`"),
        }
    }

    fn args<'e>(&self, e: &'e Sexp, n: usize) -> R<&'e [Sexp]> {
        let items = e.as_list().unwrap();
        if items.len() != n + 1 {
            return fail(e, format!("`{}` takes {n} arguments", e.head().unwrap_or("")));
        }
        Ok(&items[1..])
    }

    fn proof(&mut self, e: &Sexp) -> R<ProofTerm> {
        let items = match e {
            Sexp::Atom(a, _) => return Ok(ProofTerm::Ref(a.clone())),
            Sexp::List(items, _) => items,
        };
        let Some(kw) = e.head() else {
            return fail(e, "expected a proof");
        };
        let b = Box::new;
        Ok(match kw {
            "fun" if items.len() >= 3 => {
                let mut names = Vec::new();
                for n in &items[1..items.len() - 1] {
                    names.push(self.atom_of(n)?.to_string());
                }
                ProofTerm::lams(names, self.proof(items.last().unwrap())?)
            }
            "all" if items.len() >= 3 => {
                let mut vars = Vec::new();
                for v in &items[1..items.len() - 1] {
                    vars.push(self.binder(v)?);
                }
                let depth = self.scope.len();
                self.scope.extend(vars.iter().copied());
                let body = self.proof(items.last().unwrap());
                self.scope.truncate(depth);
                ProofTerm::alls(&vars, body?)
            }
            "inst" if items.len() >= 3 => {
                let p = self.proof(&items[1])?;
                let mut ws = Vec::new();
                for w in &items[2..] {
                    ws.push(self.term(w, None, None)?);
                }
                ProofTerm::inst(p, ws)
            }
            "ap" if items.len() >= 3 => {
                let f = self.proof(&items[1])?;
                let mut args = Vec::new();
                for a in &items[2..] {
                    args.push(self.proof(a)?);
                }
                ProofTerm::app(f, args)
            }
            "refl" => ProofTerm::Refl(self.term(&self.args(e, 1)?[0], None, None)?),
            "sym" => ProofTerm::Sym(b(self.proof(&self.args(e, 1)?[0])?)),
            "trans" => {
                let a = self.args(e, 2)?;
                ProofTerm::Trans(b(self.proof(&a[0])?), b(self.proof(&a[1])?))
            }
            "cong" => {
                let a = self.args(e, 2)?;
                let mut slot = None;
                let ctx = self.term(self.context(&a[0])?, None, Some(&mut slot))?;
                ProofTerm::Cong(TermContext(ctx), b(self.proof(&a[1])?))
            }
            "rw" => {
                let a = self.args(e, 3)?;
                let mut slot = None;
                let ctx = self.atom(self.context(&a[2])?, Some(&mut slot))?;
                ProofTerm::Rw(b(self.proof(&a[0])?), b(self.proof(&a[1])?), AtomContext(ctx))
            }
            "hole" => ProofTerm::Hole(self.formula(&self.args(e, 1)?[0])?),
            "inj" => {
                let a = self.args(e, 2)?;
                let i = match self.atom_of(&a[1])?.parse::<usize>() {
                    Ok(i) => i,
                    Err(_) => return fail(&a[1], "expected an argument index"),
                };
                ProofTerm::Inj(b(self.proof(&a[0])?), i)
            }
            "clash" => {
                let a = self.args(e, 2)?;
                ProofTerm::Clash(b(self.proof(&a[0])?), self.atom(&a[1], None)?)
            }
            other => return fail(e, format!("unknown proof form `{other}`")),
        })
    }
}

pub fn parse_surface(text: &str, sig: &Signature) -> Result<ProofScript, SurfaceError> {
    let tops = sexp::parse_all(text).map_err(|e| SurfaceError {
        span: e.span,
        message: e.message,
    })?;
    let mut r = Reader {
        sig,
        scope: Vec::new(),
    };
    let mut defs = Vec::new();
    let mut theorem = None;
    for top in &tops {
        let kw = top.head();
        let items = match (kw, top.as_list()) {
            (Some("def" | "theorem"), Some(items)) if items.len() == 4 => items,
            _ => return fail(top, "expected `(def ..)` or `(theorem ..)`"),
        };
        if theorem.is_some() {
            return fail(top, "nothing may follow the theorem");
        }
        let d = Def {
            name: r.atom_of(&items[1])?.to_string(),
            formula: r.formula(&items[2])?,
            term: r.proof(&items[3])?,
        };
        if kw == Some("def") {
            defs.push(d);
        } else {
            theorem = Some(d);
        }
    }
    match theorem {
        Some(theorem) => Ok(ProofScript { defs, theorem }),
        None => Err(SurfaceError {
            span: Span::default(),
            message: "missing theorem".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::hole;

    fn sig() -> Signature {
        let mut s = Signature::new();
        let v = s.add_sort("V").unwrap();
        s.add_function("+", vec![v, v], v).unwrap();
        s.add_function("ze", vec![], v).unwrap();
        s
    }

    #[test]
    fn sym_of_ref() {
        let s = sig();
        assert_eq!(emit_term(&s, &ProofTerm::sym(ProofTerm::r("l0"))), "(sym l0)");
    }

    #[test]
    fn cong_context() {
        let s = sig();
        let plus = s.lookup_function("+").unwrap();
        let x1 = Term::Var(Var::new(1, SortId(0)));
        let ctx = TermContext(Term::App(plus, vec![hole(SortId(0)), x1]));
        let t = ProofTerm::Cong(ctx, Box::new(ProofTerm::r("p")));
        assert_eq!(emit_term(&s, &t), "(cong (\\h -> (+ h x1)) p)");
    }

    #[test]
    fn script_round_trip() {
        let s = sig();
        let ze = Term::constant(s.lookup_function("ze").unwrap());
        let x0 = Var::new(0, SortId(0));
        let f = Formula {
            vars: vec![x0],
            body: vec![Atom::Eq(Term::Var(x0), ze.clone())],
            head: Atom::Eq(ze.clone(), Term::Var(x0)),
        };
        let term = ProofTerm::alls(&[x0], ProofTerm::lams(["l0".to_string()], ProofTerm::sym(ProofTerm::r("l0"))));
        let script = ProofScript {
            defs: vec![Def {
                name: "step-1".into(),
                formula: f,
                term,
            }],
            theorem: Def {
                name: "goal".into(),
                formula: Formula::atom(Atom::Eq(ze.clone(), ze.clone())),
                term: ProofTerm::Refl(ze),
            },
        };
        let text = emit_surface(&s, &script);
        assert!(text.contains("(forall ((x0 V)) (=> (= x0 (ze )) (= (ze ) x0)))"));
        let back = parse_surface(&text, &s).unwrap();
        assert_eq!(back, script);
        assert_eq!(emit_surface(&s, &back), text);
    }
}
