//! Derivations in a small TSTP subset.
//!
//! Records have the shape `cnf(name, role, formula, source).` with an optional
//! fifth annotation list. Sources are `inference(rule, [..], [parents])`,
//! `file(path, name)` or the bare word `negated_conjecture`. Formulas are Horn
//! disjunctions (`~p(X) | X != a | q(X)`) or implications
//! (`(p(X) & X = a) => q(X)`), with `$false` for the empty head.
//!
//! A record whose annotation list contains `boxed` has the goal atom as its
//! head; this is how transformed derivations are written.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::clause::{Atom, Head, HornClause};
use crate::sexp::Span;
use crate::term::{Signature, SortId, SymbolRef, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Input(String),
    NegatedConjecture,
    Inference { rule: String, premises: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub id: usize,
    pub name: String,
    pub role: String,
    pub clause: HornClause,
    pub justification: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn step(&self, id: usize) -> Option<&Step> {
        self.index_of(id).map(|i| &self.steps[i])
    }

    pub fn index_of(&self, id: usize) -> Option<usize> {
        self.steps.binary_search_by_key(&id, |s| s.id).ok()
    }

    pub fn last(&self) -> Option<&Step> {
        self.steps.last()
    }

    /// Ends in the empty clause.
    pub fn is_refutation(&self) -> bool {
        self.last().is_some_and(|s| s.clause.is_empty_clause())
    }

    /// Ids of the steps the last one depends on, itself included, ascending.
    pub fn used_ids(&self) -> Vec<usize> {
        let mut used = vec![false; self.steps.len()];
        let mut stack: Vec<usize> = self.steps.len().checked_sub(1).into_iter().collect();
        while let Some(i) = stack.pop() {
            if used[i] {
                continue;
            }
            used[i] = true;
            if let Justification::Inference { premises, .. } = &self.steps[i].justification {
                for p in premises {
                    if let Some(j) = self.index_of(*p) {
                        stack.push(j);
                    }
                }
            }
        }
        self.steps
            .iter()
            .zip(used)
            .filter(|(_, u)| *u)
            .map(|(s, _)| s.id)
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TstpErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("premise `{0}` does not name an earlier step")]
    DanglingPremise(String),
    #[error("step ids must increase: {0} follows {1}")]
    NonMonotoneId(usize, usize),
    #[error("not a Horn clause: {0}")]
    NonHorn(String),
    #[error("cannot infer the sort of variable {0}")]
    UnsortedVar(String),
    #[error("ill-sorted clause: {0}")]
    Sort(String),
    #[error("unsupported source `{0}`")]
    UnsupportedSource(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{span}: {kind}")]
pub struct TstpError {
    pub span: Span,
    pub kind: TstpErrorKind,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Quoted(String),
    Upper(String),
    Dollar(String),
    Punct(&'static str),
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, TstpError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let bump = |i: &mut usize, col: &mut usize, n: usize| {
        *i += n;
        *col += n;
    };
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            bump(&mut i, &mut col, 1);
        } else if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c == '\'' {
            let mut s = String::new();
            bump(&mut i, &mut col, 1);
            loop {
                match chars.get(i) {
                    None | Some('\n') => {
                        return Err(TstpError {
                            span,
                            kind: TstpErrorKind::Syntax("unterminated quoted name".into()),
                        })
                    }
                    Some('\\') if i + 1 < chars.len() => {
                        s.push(chars[i + 1]);
                        bump(&mut i, &mut col, 2);
                    }
                    Some('\'') => {
                        bump(&mut i, &mut col, 1);
                        break;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        bump(&mut i, &mut col, 1);
                    }
                }
            }
            out.push((Tok::Quoted(s), span));
        } else if c.is_alphanumeric() || c == '_' || c == '$' {
            let start = i;
            bump(&mut i, &mut col, 1);
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                bump(&mut i, &mut col, 1);
            }
            let w: String = chars[start..i].iter().collect();
            let tok = if let Some(rest) = w.strip_prefix('$') {
                Tok::Dollar(rest.to_string())
            } else if c.is_uppercase() || c == '_' {
                Tok::Upper(w)
            } else {
                Tok::Word(w)
            };
            out.push((tok, span));
        } else {
            let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
            let p: &'static str = match two.as_str() {
                "!=" => "!=",
                "=>" => "=>",
                _ => match c {
                    '(' => "(",
                    ')' => ")",
                    '[' => "[",
                    ']' => "]",
                    ',' => ",",
                    '.' => ".",
                    '|' => "|",
                    '&' => "&",
                    '~' => "~",
                    '=' => "=",
                    _ => {
                        return Err(TstpError {
                            span,
                            kind: TstpErrorKind::Syntax(format!("unexpected character `{c}`")),
                        })
                    }
                },
            };
            bump(&mut i, &mut col, p.len());
            out.push((Tok::Punct(p), span));
        }
    }
    Ok(out)
}

/// Terms before sort resolution.
#[derive(Clone, Debug)]
enum Raw {
    Var(String),
    App(String, Vec<Raw>),
}

#[derive(Clone, Debug)]
enum RawAtom {
    Eq(Raw, Raw),
    Pred(Raw),
}

/// Generic annotation term.
#[derive(Clone, Debug)]
enum General {
    Word(String),
    App(String, Vec<General>),
    List(Vec<General>),
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    end: Span,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map_or(self.end, |(_, s)| *s)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, TstpError> {
        Err(TstpError {
            span: self.span(),
            kind: TstpErrorKind::Syntax(msg.into()),
        })
    }

    fn is(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Tok::Punct(q)) if *q == p)
    }

    fn expect(&mut self, p: &str) -> Result<(), TstpError> {
        if self.is(p) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected `{p}`"))
        }
    }

    fn name(&mut self) -> Result<String, TstpError> {
        match self.peek() {
            Some(Tok::Word(w)) | Some(Tok::Quoted(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => self.fail("expected a name"),
        }
    }

    fn term(&mut self) -> Result<Raw, TstpError> {
        match self.peek().cloned() {
            Some(Tok::Upper(v)) => {
                self.pos += 1;
                Ok(Raw::Var(v))
            }
            Some(Tok::Word(_)) | Some(Tok::Quoted(_)) => {
                let f = self.name()?;
                let mut args = Vec::new();
                if self.is("(") {
                    self.pos += 1;
                    loop {
                        args.push(self.term()?);
                        if self.is(",") {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                    self.expect(")")?;
                }
                Ok(Raw::App(f, args))
            }
            _ => self.fail("expected a term"),
        }
    }

    /// `Ok(None)` for `$false`. The flag is true for a negated literal.
    fn literal(&mut self) -> Result<Option<(bool, RawAtom)>, TstpError> {
        if let Some(Tok::Dollar(d)) = self.peek() {
            if d == "false" {
                self.pos += 1;
                return Ok(None);
            }
            return self.fail(format!("unsupported `${d}`"));
        }
        let mut neg = false;
        if self.is("~") {
            self.pos += 1;
            neg = true;
        }
        if self.is("(") {
            self.pos += 1;
            let inner = self.literal()?;
            self.expect(")")?;
            return match inner {
                Some((n, a)) => Ok(Some((n ^ neg, a))),
                None if !neg => Ok(None),
                None => self.fail("`~$false` is not supported"),
            };
        }
        let lhs = self.term()?;
        if self.is("=") || self.is("!=") {
            let ne = self.is("!=");
            self.pos += 1;
            let rhs = self.term()?;
            Ok(Some((neg ^ ne, RawAtom::Eq(lhs, rhs))))
        } else {
            Ok(Some((neg, RawAtom::Pred(lhs))))
        }
    }

    /// Returns (negative literals, positive literals), `$false` dropped.
    fn formula(&mut self) -> Result<(Vec<RawAtom>, Vec<RawAtom>), TstpError> {
        let mut neg = Vec::new();
        let mut pos = Vec::new();
        let save = self.pos;
        // `(A & B) => C` or `A => C`
        if let Ok(prems) = self.conjunction() {
            if self.is("=>") {
                self.pos += 1;
                neg.extend(prems);
                if let Some((n, a)) = self.literal()? {
                    if n {
                        return self.fail("negated conclusion in implication");
                    }
                    pos.push(a);
                }
                return Ok((neg, pos));
            }
        }
        self.pos = save;
        let parens = self.is("(") && self.disjunction_in_parens();
        if parens {
            self.pos += 1;
        }
        loop {
            if let Some((n, a)) = self.literal()? {
                if n {
                    neg.push(a)
                } else {
                    pos.push(a)
                }
            }
            if self.is("|") {
                self.pos += 1;
            } else {
                break;
            }
        }
        if parens {
            self.expect(")")?;
        }
        Ok((neg, pos))
    }

    /// Whether the `(` at the cursor opens a parenthesised disjunction rather
    /// than a single parenthesised literal.
    fn disjunction_in_parens(&self) -> bool {
        let mut depth = 0usize;
        for (t, _) in &self.toks[self.pos..] {
            match t {
                Tok::Punct("(") => depth += 1,
                Tok::Punct(")") => {
                    depth -= 1;
                    if depth == 0 {
                        return false;
                    }
                }
                Tok::Punct("|") if depth == 1 => return true,
                _ => {}
            }
        }
        false
    }

    fn conjunction(&mut self) -> Result<Vec<RawAtom>, TstpError> {
        let parens = self.is("(");
        if parens {
            self.pos += 1;
        }
        let mut out = Vec::new();
        loop {
            match self.literal()? {
                Some((false, a)) => out.push(a),
                _ => return self.fail("premise must be a positive atom"),
            }
            if self.is("&") {
                self.pos += 1;
            } else {
                break;
            }
        }
        if parens {
            self.expect(")")?;
        }
        Ok(out)
    }

    fn general(&mut self) -> Result<General, TstpError> {
        if self.is("[") {
            self.pos += 1;
            let mut items = Vec::new();
            if !self.is("]") {
                loop {
                    items.push(self.general()?);
                    if self.is(",") {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
            }
            self.expect("]")?;
            return Ok(General::List(items));
        }
        let w = match self.peek().cloned() {
            Some(Tok::Word(w)) | Some(Tok::Quoted(w)) | Some(Tok::Upper(w)) => w,
            Some(Tok::Dollar(w)) => format!("${w}"),
            _ => return self.fail("expected an annotation"),
        };
        self.pos += 1;
        if self.is("(") {
            self.pos += 1;
            let mut args = Vec::new();
            loop {
                args.push(self.general()?);
                if self.is(",") {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            self.expect(")")?;
            Ok(General::App(w, args))
        } else {
            Ok(General::Word(w))
        }
    }
}

struct RawStep {
    name: String,
    role: String,
    neg: Vec<RawAtom>,
    pos: Vec<RawAtom>,
    source: General,
    boxed: bool,
    span: Span,
}

/// Step id from a record name: its trailing digits, or `fallback`.
fn step_id(name: &str, fallback: usize) -> usize {
    let digits: String = name
        .chars()
        .rev()
        .take_while(|c| c.is_ascii_digit())
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    digits.parse().unwrap_or(fallback)
}

pub fn parse_tstp(text: &str, sig: &Signature) -> Result<Derivation, TstpError> {
    let toks = lex(text)?;
    let end = toks.last().map_or(Span { line: 1, col: 1 }, |(_, s)| *s);
    let mut p = Parser { toks, pos: 0, end };
    let mut raws = Vec::new();
    while p.peek().is_some() {
        let span = p.span();
        match p.peek() {
            Some(Tok::Word(w)) if w == "cnf" || w == "fof" => p.pos += 1,
            _ => return p.fail("expected `cnf(`"),
        }
        p.expect("(")?;
        let name = p.name()?;
        p.expect(",")?;
        let role = p.name()?;
        p.expect(",")?;
        let (neg, pos) = p.formula()?;
        p.expect(",")?;
        let source = p.general()?;
        let mut boxed = false;
        if p.is(",") {
            p.pos += 1;
            if let General::List(items) = p.general()? {
                boxed = items.iter().any(|g| matches!(g, General::Word(w) if w == "boxed"));
            }
        }
        p.expect(")")?;
        p.expect(".")?;
        raws.push(RawStep {
            name,
            role,
            neg,
            pos,
            source,
            boxed,
            span,
        });
    }

    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut steps: Vec<Step> = Vec::new();
    for (k, r) in raws.into_iter().enumerate() {
        let err = |kind| TstpError { span: r.span, kind };
        let id = step_id(&r.name, k + 1);
        if let Some(prev) = steps.last() {
            if id <= prev.id {
                return Err(err(TstpErrorKind::NonMonotoneId(id, prev.id)));
            }
        }
        let justification = match (&r.source, r.role.as_str()) {
            (_, "negated_conjecture") => Justification::NegatedConjecture,
            (General::Word(w), _) if w == "negated_conjecture" => Justification::NegatedConjecture,
            (General::App(f, args), _) if f == "file" => {
                let name = match args.get(1) {
                    Some(General::Word(n)) => n.clone(),
                    _ => r.name.clone(),
                };
                Justification::Input(name)
            }
            (General::App(f, args), _) if f == "inference" && args.len() == 3 => {
                let rule = match &args[0] {
                    General::Word(w) => w.clone(),
                    _ => return Err(err(TstpErrorKind::Syntax("rule name expected".into()))),
                };
                let parents = match &args[2] {
                    General::List(ps) => ps,
                    _ => return Err(err(TstpErrorKind::Syntax("parent list expected".into()))),
                };
                let mut premises = Vec::new();
                for par in parents {
                    match par {
                        General::Word(n) => match ids.get(n) {
                            Some(i) => premises.push(*i),
                            None => return Err(err(TstpErrorKind::DanglingPremise(n.clone()))),
                        },
                        _ => return Err(err(TstpErrorKind::Syntax("parent must be a name".into()))),
                    }
                }
                Justification::Inference { rule, premises }
            }
            (General::Word(w), _) | (General::App(w, _), _) => {
                return Err(err(TstpErrorKind::UnsupportedSource(w.clone())))
            }
            (General::List(_), _) => return Err(err(TstpErrorKind::Syntax("bad source".into()))),
        };
        if r.pos.len() > 1 {
            return Err(err(TstpErrorKind::NonHorn(format!(
                "{} positive literals",
                r.pos.len()
            ))));
        }
        let clause = build_clause(sig, &r.neg, r.pos.first(), r.boxed).map_err(|kind| TstpError { span: r.span, kind })?;
        ids.insert(r.name.clone(), id);
        steps.push(Step {
            id,
            name: r.name,
            role: r.role,
            clause,
            justification,
        });
    }
    Ok(Derivation { steps })
}

fn build_clause(
    sig: &Signature,
    neg: &[RawAtom],
    pos: Option<&RawAtom>,
    boxed: bool,
) -> Result<HornClause, TstpErrorKind> {
    // variable sorts, by propagation from symbol argument positions
    let mut sorts: HashMap<String, SortId> = HashMap::new();
    let all: Vec<&RawAtom> = neg.iter().chain(pos).collect();
    loop {
        let before = sorts.len();
        for a in &all {
            infer_atom(sig, a, &mut sorts)?;
        }
        if sorts.len() == before {
            break;
        }
    }
    let mut ids: HashMap<String, Var> = HashMap::new();
    let mut next = 0u32;
    let mut var = |name: &str| -> Result<Var, TstpErrorKind> {
        if let Some(v) = ids.get(name) {
            return Ok(*v);
        }
        let sort = match sorts.get(name) {
            Some(s) => *s,
            None if sig.sort_count() == 1 => SortId(0),
            None => return Err(TstpErrorKind::UnsortedVar(name.into())),
        };
        let v = Var::new(next, sort);
        next += 1;
        ids.insert(name.to_string(), v);
        Ok(v)
    };
    let mut body = Vec::new();
    for a in neg {
        body.push(to_atom(sig, a, &mut var)?);
    }
    let head = match pos {
        None => Head::Falsum,
        Some(a) => {
            let a = to_atom(sig, a, &mut var)?;
            if boxed {
                Head::Goal(a)
            } else {
                Head::Atom(a)
            }
        }
    };
    HornClause::new(sig, body, head).map_err(|e| TstpErrorKind::Sort(e.to_string()))
}

fn infer_atom(sig: &Signature, a: &RawAtom, sorts: &mut HashMap<String, SortId>) -> Result<(), TstpErrorKind> {
    match a {
        RawAtom::Eq(l, r) => {
            let ls = infer_term(sig, l, None, sorts)?;
            let rs = infer_term(sig, r, ls, sorts)?;
            if ls.is_none() {
                infer_term(sig, l, rs, sorts)?;
            }
        }
        RawAtom::Pred(Raw::App(name, args)) => match sig.lookup_symbol(name) {
            Some(SymbolRef::Pred(p)) => {
                let want = &sig.predicate(p).arg_sorts;
                for (t, s) in args.iter().zip(want) {
                    infer_term(sig, t, Some(*s), sorts)?;
                }
            }
            _ => return Err(TstpErrorKind::UnknownSymbol(name.clone())),
        },
        RawAtom::Pred(Raw::Var(v)) => return Err(TstpErrorKind::NonHorn(format!("variable {v} as a literal"))),
    }
    Ok(())
}

/// Records the sort of variables found under symbols; returns the sort of `t`
/// when known.
fn infer_term(
    sig: &Signature,
    t: &Raw,
    expected: Option<SortId>,
    sorts: &mut HashMap<String, SortId>,
) -> Result<Option<SortId>, TstpErrorKind> {
    match t {
        Raw::Var(v) => {
            if let (Some(s), false) = (expected, sorts.contains_key(v)) {
                sorts.insert(v.clone(), s);
            }
            Ok(sorts.get(v).copied().or(expected))
        }
        Raw::App(f, args) => {
            let fid = sig.lookup_function(f).ok_or_else(|| TstpErrorKind::UnknownSymbol(f.clone()))?;
            let sym = sig.function(fid);
            for (a, s) in args.iter().zip(&sym.arg_sorts) {
                infer_term(sig, a, Some(*s), sorts)?;
            }
            Ok(Some(sym.result_sort))
        }
    }
}

fn to_term(
    sig: &Signature,
    t: &Raw,
    var: &mut dyn FnMut(&str) -> Result<Var, TstpErrorKind>,
) -> Result<Term, TstpErrorKind> {
    match t {
        Raw::Var(v) => Ok(Term::Var(var(v)?)),
        Raw::App(f, args) => {
            let fid = sig.lookup_function(f).ok_or_else(|| TstpErrorKind::UnknownSymbol(f.clone()))?;
            let args = args.iter().map(|a| to_term(sig, a, var)).collect::<Result<_, _>>()?;
            Ok(Term::App(fid, args))
        }
    }
}

fn to_atom(
    sig: &Signature,
    a: &RawAtom,
    var: &mut dyn FnMut(&str) -> Result<Var, TstpErrorKind>,
) -> Result<Atom, TstpErrorKind> {
    match a {
        RawAtom::Eq(l, r) => Ok(Atom::Eq(to_term(sig, l, var)?, to_term(sig, r, var)?)),
        RawAtom::Pred(Raw::App(name, args)) => match sig.lookup_symbol(name) {
            Some(SymbolRef::Pred(p)) => {
                let args = args.iter().map(|t| to_term(sig, t, var)).collect::<Result<_, _>>()?;
                Ok(Atom::Pred(p, args))
            }
            _ => Err(TstpErrorKind::UnknownSymbol(name.clone())),
        },
        RawAtom::Pred(Raw::Var(v)) => Err(TstpErrorKind::NonHorn(format!("variable {v} as a literal"))),
    }
}

/// Quotes names outside `[a-z][A-Za-z0-9_]*`.
pub fn tstp_name(name: &str) -> String {
    let mut chars = name.chars();
    let plain = matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if plain {
        name.to_string()
    } else {
        let escaped = name.replace('\\', "\\\\").replace('\'', "\\'");
        format!("'{escaped}'")
    }
}

fn tstp_term(sig: &Signature, t: &Term, out: &mut String) {
    match t {
        Term::Var(v) => {
            let _ = write!(out, "X{}", v.id);
        }
        Term::App(f, args) => {
            out.push_str(&tstp_name(&sig.function(*f).name));
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    tstp_term(sig, a, out);
                }
                out.push(')');
            }
        }
    }
}

fn tstp_atom(sig: &Signature, a: &Atom, negated: bool, out: &mut String) {
    match a {
        Atom::Eq(l, r) => {
            tstp_term(sig, l, out);
            out.push_str(if negated { " != " } else { " = " });
            tstp_term(sig, r, out);
        }
        Atom::Pred(p, args) => {
            if negated {
                out.push('~');
            }
            out.push_str(&tstp_name(&sig.predicate(*p).name));
            if !args.is_empty() {
                out.push('(');
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    tstp_term(sig, t, out);
                }
                out.push(')');
            }
        }
    }
}

pub fn tstp_clause(sig: &Signature, c: &HornClause) -> String {
    let mut out = String::new();
    let mut lits = 0;
    for a in c.body() {
        if lits > 0 {
            out.push_str(" | ");
        }
        tstp_atom(sig, a, true, &mut out);
        lits += 1;
    }
    if let Some(h) = c.head().atom() {
        if lits > 0 {
            out.push_str(" | ");
        }
        tstp_atom(sig, h, false, &mut out);
        lits += 1;
    }
    if lits == 0 {
        out.push_str("$false");
    }
    out
}

pub fn emit_tstp(sig: &Signature, d: &Derivation) -> String {
    let mut names: HashMap<usize, &str> = HashMap::new();
    let mut out = String::new();
    for s in &d.steps {
        names.insert(s.id, &s.name);
        let source = match &s.justification {
            Justification::Input(n) => format!("file('input',{})", tstp_name(n)),
            Justification::NegatedConjecture => "negated_conjecture".to_string(),
            Justification::Inference { rule, premises } => {
                let ps: Vec<String> = premises
                    .iter()
                    .map(|p| tstp_name(names.get(p).copied().unwrap_or("?")))
                    .collect();
                format!("inference({},[],[{}])", rule, ps.join(","))
            }
        };
        let boxed = if matches!(s.clause.head(), Head::Goal(_)) { ", [boxed]" } else { "" };
        let _ = writeln!(
            out,
            "cnf({}, {}, {}, {}{}).",
            tstp_name(&s.name),
            s.role,
            tstp_clause(sig, &s.clause),
            source,
            boxed
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::parse_problem;

    fn sig() -> Signature {
        parse_problem(
            "(declare-sort V 0)(declare-fun plus (V V) V)(declare-fun neg (V) V)(declare-const ze V)\
             (declare-const u V)(declare-fun p (V) Bool)(assert-not (! (= u ze) :named g))",
        )
        .unwrap()
        .signature
    }

    #[test]
    fn records() {
        let s = sig();
        let text = "\
cnf(c1, axiom, plus(ze,X0) = X0, file('in', neutl)).
cnf(c2, axiom, plus(neg(X0),X0) = ze, file('in', negl)).
cnf(c3, axiom, plus(plus(X0,X1),X2) = plus(X0,plus(X1,X2)), file('in', assoc)).
cnf(c5, negated_conjecture, u != ze, negated_conjecture).
cnf(c6, plain, plus(neg(X0),plus(X0,X1)) = plus(ze,X1), inference(superposition,[],[c3,c2])).
cnf(c15, plain, $false, inference(resolution,[],[c6,c5])).
";
        let d = parse_tstp(text, &s).unwrap();
        assert_eq!(d.steps[0].justification, Justification::Input("neutl".into()));
        assert_eq!(d.steps[3].id, 5);
        assert_eq!(d.steps[3].justification, Justification::NegatedConjecture);
        assert_eq!(d.steps[3].clause.head(), &Head::Falsum);
        assert_eq!(
            d.steps[4].justification,
            Justification::Inference {
                rule: "superposition".into(),
                premises: vec![3, 2]
            }
        );
        assert!(d.is_refutation());
        let again = parse_tstp(&emit_tstp(&s, &d), &s).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn implication_form() {
        let s = sig();
        let d = parse_tstp("cnf(a1, axiom, (p(X) & X = u) => p(neg(X)), file(f, a)).", &s).unwrap();
        assert_eq!(d.steps[0].clause.body().len(), 2);
        let d = parse_tstp("cnf(a1, axiom, ~p(X) | ~p(u) | p(neg(X)), file(f, a)).", &s).unwrap();
        assert_eq!(d.steps[0].clause.body().len(), 2);
    }

    #[test]
    fn boxed_heads_round_trip() {
        let s = sig();
        let text = "cnf(c5, negated_conjecture, u != ze | u = ze, negated_conjecture, [boxed]).\n";
        let d = parse_tstp(text, &s).unwrap();
        assert!(matches!(d.steps[0].clause.head(), Head::Goal(_)));
        assert_eq!(emit_tstp(&s, &d), text);
    }

    #[test]
    fn errors() {
        let s = sig();
        let dangling = parse_tstp("cnf(c1, plain, u = ze, inference(resolution,[],[c0])).", &s).unwrap_err();
        assert!(matches!(dangling.kind, TstpErrorKind::DanglingPremise(_)));
        let two = parse_tstp("cnf(c1, axiom, u = ze | ze = u, file(f, a)).", &s).unwrap_err();
        assert!(matches!(two.kind, TstpErrorKind::NonHorn(_)));
        let order = parse_tstp("cnf(c2, axiom, u = ze, file(f, a)).\ncnf(c1, axiom, u = ze, file(f, b)).", &s)
            .unwrap_err();
        assert!(matches!(order.kind, TstpErrorKind::NonMonotoneId(1, 2)));
        assert_eq!(order.span.line, 2);
    }

    #[test]
    fn quoting() {
        assert_eq!(tstp_name("plus"), "plus");
        assert_eq!(tstp_name("vec._+_"), "'vec._+_'");
        assert_eq!(tstp_name("it's"), "'it\\'s'");
    }
}
