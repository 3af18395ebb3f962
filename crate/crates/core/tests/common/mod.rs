#![allow(dead_code)]

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use hornforge::clause::{Atom, Head};
use hornforge::cli;
use hornforge::kernel::{check_script, CheckContext, ProofScript, ProofTerm, Prop};
use hornforge::problem::{clausify, parse_problem, Problem};
use hornforge::saturation::{run_portfolio, Outcome, Strategy};
use hornforge::term::{PredId, Signature, Term, Var};
use hornforge::tstp::Derivation;

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn load(path: &Path) -> Problem {
    parse_problem(&read(path)).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Fixture problems, sorted by path.
pub fn problem_fixtures() -> Vec<PathBuf> {
    let mut out = Vec::new();
    for dir in [fixture(""), fixture("complex")] {
        for e in std::fs::read_dir(&dir).unwrap() {
            let p = e.unwrap().path();
            if p.extension().is_some_and(|x| x == "smt2") {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

pub fn refute(p: &Problem, strategies: &[Strategy]) -> Option<Derivation> {
    let c = clausify(p);
    match run_portfolio(&p.signature, &c.clauses, strategies, true).outcome {
        Outcome::Refutation(d) => Some(d),
        _ => None,
    }
}

/// Transform, reconstruct and check.
pub fn certify(d: &Derivation, p: &Problem) -> Result<ProofScript, String> {
    let (_, script) = cli::certify(d, p, false).map_err(|e| e.to_string())?;
    check_script(&CheckContext::from_problem(p), &script).map_err(|e| e.to_string())?;
    Ok(script)
}

// ---------------------------------------------------------------------------
// ground oracle: congruence closure over the subterm-closed term set plus
// forward chaining over the clauses

struct Closure {
    terms: Vec<Term>,
    index: HashMap<Term, usize>,
    parent: Vec<usize>,
}

impl Closure {
    fn new() -> Closure {
        Closure {
            terms: Vec::new(),
            index: HashMap::new(),
            parent: Vec::new(),
        }
    }

    fn add(&mut self, t: &Term) -> usize {
        if let Some(&i) = self.index.get(t) {
            return i;
        }
        if let Term::App(_, args) = t {
            for a in args {
                self.add(a);
            }
        }
        let i = self.terms.len();
        self.terms.push(t.clone());
        self.index.insert(t.clone(), i);
        self.parent.push(i);
        i
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn class(&mut self, t: &Term) -> usize {
        let i = self.index[t];
        self.find(i)
    }

    /// Merges and restores congruence. Returns whether anything changed.
    fn union(&mut self, a: &Term, b: &Term) -> bool {
        let (x, y) = (self.class(a), self.class(b));
        if x == y {
            return false;
        }
        self.parent[x] = y;
        loop {
            let mut merged = false;
            let mut sig: HashMap<(u32, Vec<usize>), usize> = HashMap::new();
            for i in 0..self.terms.len() {
                let Term::App(f, args) = self.terms[i].clone() else { continue };
                let key = (f.0, args.iter().map(|a| self.class(a)).collect());
                match sig.get(&key) {
                    Some(&j) => {
                        let (ci, cj) = (self.find(i), self.find(j));
                        if ci != cj {
                            self.parent[ci] = cj;
                            merged = true;
                        }
                    }
                    None => {
                        sig.insert(key, i);
                    }
                }
            }
            if !merged {
                return true;
            }
        }
    }
}

struct Model {
    cc: Closure,
    facts: Vec<(PredId, Vec<Term>)>,
}

impl Model {
    fn holds(&mut self, a: &Atom) -> bool {
        match a {
            Atom::Eq(l, r) => self.cc.class(l) == self.cc.class(r),
            Atom::Pred(p, args) => {
                let want: Vec<usize> = args.iter().map(|t| self.cc.class(t)).collect();
                let facts = self.facts.clone();
                facts.iter().any(|(q, xs)| {
                    q == p && xs.iter().zip(&want).all(|(x, &w)| self.cc.class(x) == w)
                })
            }
        }
    }

    /// Adds a derived atom; true when new.
    fn assert(&mut self, a: &Atom) -> bool {
        if self.holds(a) {
            return false;
        }
        match a {
            Atom::Eq(l, r) => self.cc.union(l, r),
            Atom::Pred(p, args) => {
                self.facts.push((*p, args.clone()));
                true
            }
        }
    }
}

/// Whether the goal of a ground problem follows from its clauses.
pub fn ground_entails(p: &Problem) -> bool {
    let mut clauses: Vec<(Vec<Atom>, Option<Atom>)> = p
        .axioms
        .iter()
        .map(|a| {
            assert!(a.clause.is_ground(), "oracle needs ground clauses");
            let head = match a.clause.head() {
                Head::Atom(h) | Head::Goal(h) => Some(h.clone()),
                Head::Falsum => None,
            };
            (a.clause.body().to_vec(), head)
        })
        .collect();
    clauses.extend(p.hypotheses.iter().map(|h| (Vec::new(), Some(h.atom.clone()))));
    let mut cc = Closure::new();
    let all_atoms = clauses
        .iter()
        .flat_map(|(b, h)| b.iter().chain(h.iter()))
        .chain(std::iter::once(&p.goal.atom));
    for a in all_atoms {
        for t in a.args() {
            cc.add(t);
        }
    }
    let mut m = Model { cc, facts: Vec::new() };
    loop {
        let mut changed = false;
        for (body, head) in &clauses {
            if body.iter().all(|a| m.holds(a)) {
                match head {
                    Some(h) => changed |= m.assert(h),
                    None => return true,
                }
            }
        }
        if !changed {
            return m.holds(&p.goal.atom);
        }
    }
}

// ---------------------------------------------------------------------------
// single-node mutations of proof terms

/// Terms that differ from `t` in one symbol: a function symbol swapped for
/// another of the same type, or a variable for another in `vars` of the same
/// sort. Hole variables are left alone.
pub fn term_mutants(sig: &Signature, t: &Term, vars: &[Var]) -> Vec<Term> {
    let mut out = Vec::new();
    match t {
        Term::Var(v) => {
            for w in vars {
                if w.id != v.id && w.sort == v.sort && v.id != hornforge::kernel::HOLE_ID {
                    out.push(Term::Var(*w));
                }
            }
        }
        Term::App(f, args) => {
            let fs = sig.function(*f);
            for (g, gs) in sig.functions() {
                if g != *f && gs.arg_sorts == fs.arg_sorts && gs.result_sort == fs.result_sort {
                    out.push(Term::App(g, args.clone()));
                }
            }
            for (i, a) in args.iter().enumerate() {
                for m in term_mutants(sig, a, vars) {
                    let mut args = args.clone();
                    args[i] = m;
                    out.push(Term::App(*f, args));
                }
            }
        }
    }
    out
}

fn atom_mutants(sig: &Signature, a: &Atom, vars: &[Var]) -> Vec<Atom> {
    let args: Vec<Term> = a.args().into_iter().cloned().collect();
    let mut out = Vec::new();
    for (i, t) in args.iter().enumerate() {
        for m in term_mutants(sig, t, vars) {
            let mut xs = args.clone();
            xs[i] = m;
            out.push(match a {
                Atom::Eq(..) => Atom::Eq(xs[0].clone(), xs[1].clone()),
                Atom::Pred(p, _) => Atom::Pred(*p, xs),
            });
        }
    }
    out
}

fn node_mutants(sig: &Signature, t: &ProofTerm, names: &[String], vars: &[Var]) -> Vec<ProofTerm> {
    use ProofTerm as P;
    let mut out = Vec::new();
    match t {
        P::Ref(n) => out.extend(names.iter().filter(|m| *m != n).map(|m| P::Ref(m.clone()))),
        P::Refl(s) => out.extend(term_mutants(sig, s, vars).into_iter().map(P::Refl)),
        P::AllElim(p, s) => out.extend(
            term_mutants(sig, s, vars)
                .into_iter()
                .map(|m| P::AllElim(p.clone(), m)),
        ),
        P::Sym(p) => out.push((**p).clone()),
        P::Trans(a, b) => {
            out.push((**a).clone());
            out.push((**b).clone());
            out.push(P::Trans(b.clone(), a.clone()));
        }
        P::Cong(c, p) => out.extend(
            term_mutants(sig, &c.0, vars)
                .into_iter()
                .map(|m| P::Cong(hornforge::kernel::TermContext(m), p.clone())),
        ),
        P::Rw(e, p, c) => {
            out.extend(
                atom_mutants(sig, &c.0, vars)
                    .into_iter()
                    .map(|m| P::Rw(e.clone(), p.clone(), hornforge::kernel::AtomContext(m))),
            );
            out.push(P::Rw(Box::new(P::Sym(e.clone())), p.clone(), c.clone()));
        }
        P::Inj(p, i) => out.extend((0..4).filter(|j| j != i).map(|j| P::Inj(p.clone(), j))),
        P::Clash(p, a) => out.extend(
            atom_mutants(sig, a, vars)
                .into_iter()
                .map(|m| P::Clash(p.clone(), m)),
        ),
        P::Lam(..) | P::App(..) | P::AllIntro(..) | P::Hole(_) => {}
    }
    out
}

/// Replaces the `k`-th node in preorder.
fn replace_nth(t: &ProofTerm, k: &mut usize, with: &ProofTerm) -> ProofTerm {
    use ProofTerm as P;
    if *k == 0 {
        *k = usize::MAX;
        return with.clone();
    }
    *k -= 1;
    let mut go = |p: &ProofTerm| Box::new(replace_nth(p, k, with));
    match t {
        P::Ref(_) | P::Refl(_) | P::Hole(_) => t.clone(),
        P::Lam(h, b) => P::Lam(h.clone(), go(b)),
        P::AllIntro(v, b) => P::AllIntro(*v, go(b)),
        P::AllElim(b, s) => P::AllElim(go(b), s.clone()),
        P::Sym(p) => P::Sym(go(p)),
        P::Cong(c, p) => P::Cong(c.clone(), go(p)),
        P::Inj(p, i) => P::Inj(go(p), *i),
        P::Clash(p, a) => P::Clash(go(p), a.clone()),
        P::App(f, a) => {
            let f = go(f);
            P::App(f, go(a))
        }
        P::Trans(f, a) => {
            let f = go(f);
            P::Trans(f, go(a))
        }
        P::Rw(f, a, c) => {
            let f = go(f);
            P::Rw(f, go(a), c.clone())
        }
    }
}

pub struct Mutant {
    pub def: usize,
    pub node: usize,
    pub script: ProofScript,
}

/// Every single-node mutant of every definition and of the theorem.
pub fn mutants(p: &Problem, script: &ProofScript) -> Vec<Mutant> {
    let sig = &p.signature;
    let mut globals: Vec<String> = p.axioms.iter().map(|a| a.name.clone()).collect();
    globals.extend(p.hypotheses.iter().map(|h| h.name.clone()));
    let defs: Vec<_> = script.defs.iter().chain(std::iter::once(&script.theorem)).collect();
    let mut out = Vec::new();
    for (d, def) in defs.iter().enumerate() {
        // preorder walk with the names and eigenvariables in scope
        let mut stack: Vec<(&ProofTerm, Vec<String>, Vec<Var>)> = vec![(&def.term, globals.clone(), Vec::new())];
        let mut node = 0;
        while let Some((t, names, vars)) = stack.pop() {
            for m in node_mutants(sig, t, &names, &vars) {
                let mut k = node;
                let term = replace_nth(&def.term, &mut k, &m);
                let mut s = script.clone();
                if d < script.defs.len() {
                    s.defs[d].term = term;
                } else {
                    s.theorem.term = term;
                }
                out.push(Mutant { def: d, node, script: s });
            }
            node += 1;
            let (mut names, mut vars) = (names, vars);
            match t {
                ProofTerm::Lam(h, _) => names.push(h.clone()),
                ProofTerm::AllIntro(v, _) => vars.push(*v),
                _ => {}
            }
            for c in t.children().into_iter().rev() {
                stack.push((c, names.clone(), vars.clone()));
            }
        }
        globals.push(def.name.clone());
    }
    out
}

pub fn props_differ(a: &Prop, b: &Prop) -> bool {
    !a.alpha_eq(b)
}

// ---------------------------------------------------------------------------
// unification against brute force over {a, f/1, g/2} and variables x, y, z

pub fn mgu_signature() -> Signature {
    let mut sig = Signature::new();
    let s = sig.add_sort("S").unwrap();
    sig.add_function("a", vec![], s).unwrap();
    sig.add_function("f", vec![s], s).unwrap();
    sig.add_function("g", vec![s, s], s).unwrap();
    sig
}

fn mgu_var(i: u32) -> Var {
    Var::new(i, hornforge::term::SortId(0))
}

fn app(f: u32, args: Vec<Term>) -> Term {
    Term::App(hornforge::term::FunId(f), args)
}

/// Terms of depth at most 2 over the signature above.
pub fn arb_term() -> impl proptest::strategy::Strategy<Value = Term> {
    use proptest::prelude::*;
    let leaf = prop_oneof![
        Just(app(0, vec![])),
        (0u32..3).prop_map(|i| Term::Var(mgu_var(i))),
    ];
    leaf.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| app(1, vec![t])),
            (inner.clone(), inner).prop_map(|(s, t)| app(2, vec![s, t])),
        ]
    })
}

fn ground_terms(depth: usize) -> Vec<Term> {
    let mut out = vec![app(0, vec![])];
    if depth == 0 {
        return out;
    }
    let below = ground_terms(depth - 1);
    for t in &below {
        out.push(app(1, vec![t.clone()]));
    }
    for s in &below {
        for t in &below {
            out.push(app(2, vec![s.clone(), t.clone()]));
        }
    }
    out
}

/// `mgu(s, t)` unifies, is idempotent and is more general than every ground
/// unifier with images of depth ≤ 2; failure means there is none.
pub fn check_mgu(sig: &Signature, s: &Term, t: &Term) -> Result<(), String> {
    use hornforge::term::{mgu, Substitution};
    let universe = ground_terms(2);
    let vars: Vec<Var> = (0..3).map(mgu_var).collect();
    let mut unifiers = Vec::new();
    for a in &universe {
        for b in &universe {
            for c in &universe {
                let mut th = Substitution::new();
                for (v, x) in vars.iter().zip([a, b, c]) {
                    th.bind(sig, *v, x.clone()).unwrap();
                }
                if th.apply(s) == th.apply(t) {
                    unifiers.push(th);
                }
            }
        }
    }
    let show = |x: &Term| sig.display(x).to_string();
    match mgu(sig, s, t) {
        Ok(sigma) => {
            if sigma.apply(s) != sigma.apply(t) {
                return Err(format!("mgu does not unify {} and {}", show(s), show(t)));
            }
            if !sigma.is_idempotent() {
                return Err(format!("mgu of {} and {} not idempotent", show(s), show(t)));
            }
            for th in &unifiers {
                for v in &vars {
                    let x = Term::Var(*v);
                    if th.apply(&sigma.apply(&x)) != th.apply(&x) {
                        return Err(format!("mgu of {} and {} not most general", show(s), show(t)));
                    }
                }
            }
        }
        Err(_) if !unifiers.is_empty() => {
            return Err(format!("mgu failed on unifiable {} and {}", show(s), show(t)));
        }
        Err(_) => {}
    }
    Ok(())
}
