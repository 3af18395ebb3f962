//! Seeded generators for random Horn problems, used by the test corpus and
//! the `random-problem` command.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::problem::{parse_problem, Problem};

#[derive(Clone, Debug)]
pub struct Bounds {
    pub constants: usize,
    pub functions: usize,
    pub max_arity: usize,
    pub predicates: usize,
    /// Axioms and hypotheses together.
    pub clauses: usize,
    pub max_body: usize,
    pub depth: usize,
    pub ground: bool,
    /// Declare a small datatype as well (exercises the printer).
    pub datatype: bool,
    /// Pick a goal that follows from the clauses instead of a random atom.
    pub entailed_goal: bool,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            constants: 6,
            functions: 4,
            max_arity: 2,
            predicates: 2,
            clauses: 8,
            max_body: 2,
            depth: 2,
            ground: false,
            datatype: false,
            entailed_goal: true,
        }
    }
}

impl Bounds {
    pub fn ground() -> Bounds {
        Bounds {
            ground: true,
            entailed_goal: false,
            ..Bounds::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum T {
    Var(usize),
    App(usize, Vec<T>),
}

#[derive(Clone, Debug)]
enum A {
    Eq(T, T),
    Pred(usize, T),
}

struct Gen<'a> {
    rng: ChaCha8Rng,
    b: &'a Bounds,
    consts: usize,
    /// Arity per function symbol.
    arities: Vec<usize>,
}

const VARS: [&str; 3] = ["x", "y", "z"];

impl Gen<'_> {
    fn term(&mut self, depth: usize, vars: usize) -> T {
        let leaf = depth == 0 || self.arities.is_empty() || self.rng.gen_bool(0.45);
        if leaf {
            if vars > 0 && self.rng.gen_bool(0.5) {
                T::Var(self.rng.gen_range(0..vars))
            } else {
                T::App(self.rng.gen_range(0..self.consts), Vec::new())
            }
        } else {
            let f = self.rng.gen_range(0..self.arities.len());
            let args = (0..self.arities[f]).map(|_| self.term(depth - 1, vars)).collect();
            T::App(self.consts + f, args)
        }
    }

    fn atom(&mut self, vars: usize) -> A {
        if self.b.predicates > 0 && self.rng.gen_bool(0.3) {
            let p = self.rng.gen_range(0..self.b.predicates);
            A::Pred(p, self.term(self.b.depth, vars))
        } else {
            A::Eq(self.term(self.b.depth, vars), self.term(self.b.depth, vars))
        }
    }

    fn name(&self, f: usize) -> String {
        if f < self.consts {
            format!("c{f}")
        } else {
            format!("f{}", f - self.consts)
        }
    }

    fn show_t(&self, t: &T) -> String {
        match t {
            T::Var(v) => VARS[*v].to_string(),
            T::App(f, args) if args.is_empty() => format!("({} )", self.name(*f)),
            T::App(f, args) => {
                let parts: Vec<String> = args.iter().map(|a| self.show_t(a)).collect();
                format!("({} {})", self.name(*f), parts.join(" "))
            }
        }
    }

    fn show_a(&self, a: &A) -> String {
        match a {
            A::Eq(l, r) => format!("(= {} {})", self.show_t(l), self.show_t(r)),
            A::Pred(p, t) => format!("(p{p} {})", self.show_t(t)),
        }
    }

    fn ground_term(&mut self) -> T {
        T::App(self.rng.gen_range(0..self.consts), Vec::new())
    }
}

fn subst_t(t: &T, s: &[T]) -> T {
    match t {
        T::Var(v) => s[*v].clone(),
        T::App(f, args) => T::App(*f, args.iter().map(|a| subst_t(a, s)).collect()),
    }
}

fn subst_a(a: &A, s: &[T]) -> A {
    match a {
        A::Eq(l, r) => A::Eq(subst_t(l, s), subst_t(r, s)),
        A::Pred(p, t) => A::Pred(*p, subst_t(t, s)),
    }
}

fn vars_t(t: &T, out: &mut Vec<usize>) {
    match t {
        T::Var(v) => {
            if !out.contains(v) {
                out.push(*v)
            }
        }
        T::App(_, args) => args.iter().for_each(|a| vars_t(a, out)),
    }
}

fn vars_a(a: &A, out: &mut Vec<usize>) {
    match a {
        A::Eq(l, r) => {
            vars_t(l, out);
            vars_t(r, out);
        }
        A::Pred(_, t) => vars_t(t, out),
    }
}

/// Replaces the first occurrence of `from` in `t`.
fn replace_t(t: &T, from: &T, to: &T, done: &mut bool) -> T {
    if !*done && t == from {
        *done = true;
        return to.clone();
    }
    match t {
        T::Var(_) => t.clone(),
        T::App(f, args) => T::App(*f, args.iter().map(|a| replace_t(a, from, to, done)).collect()),
    }
}

fn replace_a(a: &A, from: &T, to: &T) -> Option<A> {
    let mut done = false;
    let out = match a {
        A::Eq(l, r) => {
            let l2 = replace_t(l, from, to, &mut done);
            A::Eq(l2, replace_t(r, from, to, &mut done))
        }
        A::Pred(p, t) => A::Pred(*p, replace_t(t, from, to, &mut done)),
    };
    done.then_some(out)
}

/// SMT-LIB text of a random problem.
pub fn random_problem_text(seed: u64, b: &Bounds) -> String {
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        b,
        consts: 0,
        arities: Vec::new(),
    };
    g.consts = g.rng.gen_range(2..=b.constants.max(2));
    let nf = g.rng.gen_range(0..=b.functions);
    g.arities = (0..nf).map(|_| g.rng.gen_range(1..=b.max_arity.max(1))).collect();
    let mut out = String::new();
    let _ = writeln!(out, "(declare-sort S 0)");
    if b.datatype {
        let _ = writeln!(out, "(declare-datatype N ((zero) (succ (pred N))))");
    }
    for c in 0..g.consts {
        let _ = writeln!(out, "(declare-const c{c} S)");
    }
    for (i, &n) in g.arities.iter().enumerate() {
        let _ = writeln!(out, "(declare-fun f{i} ({}) S)", vec!["S"; n].join(" "));
    }
    for p in 0..b.predicates {
        let _ = writeln!(out, "(declare-fun p{p} (S) Bool)");
    }
    if b.datatype {
        let _ = writeln!(out, "(declare-fun len (S) N)");
    }
    let n = g.rng.gen_range(2..=b.clauses.max(2));
    let mut hyps: Vec<A> = Vec::new();
    let mut rules: Vec<(Vec<A>, A)> = Vec::new();
    for i in 0..n {
        let vars = if b.ground { 0 } else { g.rng.gen_range(0..=VARS.len()) };
        let nbody = g.rng.gen_range(0..=b.max_body);
        let body: Vec<A> = (0..nbody).map(|_| g.atom(vars)).collect();
        let head = g.atom(vars);
        let mut used = Vec::new();
        body.iter().for_each(|a| vars_a(a, &mut used));
        vars_a(&head, &mut used);
        used.sort();
        if used.is_empty() && body.is_empty() {
            let _ = writeln!(out, "(assert (! (forall () {}) :named h{i}))", g.show_a(&head));
            hyps.push(head);
            continue;
        }
        let binders: Vec<String> = used.iter().map(|v| format!("({} S)", VARS[*v])).collect();
        let matrix = if body.is_empty() {
            g.show_a(&head)
        } else {
            let parts: Vec<String> = body.iter().map(|a| g.show_a(a)).collect();
            format!("(=> {} {})", parts.join(" "), g.show_a(&head))
        };
        let _ = writeln!(out, "(assert (! (forall ({}) {}) :named a{i}))", binders.join(" "), matrix);
        rules.push((body, head));
    }
    if b.datatype {
        let _ = writeln!(out, "(assert (! (forall ((x S) (y S)) (=> (= x y) (= (succ (len x)) (succ (len y))))) :named dt))");
    }
    let goal = if b.entailed_goal {
        entailed_goal(&mut g, &rules, &mut hyps, &mut out)
    } else {
        let a = g.atom(0);
        if g.rng.gen_bool(0.3) {
            // bias towards goals that mention the clauses' terms
            hyps.choose(&mut g.rng).cloned().unwrap_or(a)
        } else {
            a
        }
    };
    let _ = writeln!(out, "(assert-not (! {} :named goal))", g.show_a(&goal));
    out
}

/// A ground consequence: an instance of a rule whose body is added as
/// hypotheses, rewritten once with a hypothesis equation when possible.
fn entailed_goal(g: &mut Gen, rules: &[(Vec<A>, A)], hyps: &mut Vec<A>, out: &mut String) -> A {
    let mut goal = match rules.choose(&mut g.rng) {
        Some((body, head)) => {
            let inst: Vec<T> = (0..VARS.len()).map(|_| g.ground_term()).collect();
            for (k, a) in body.iter().enumerate() {
                let a = subst_a(a, &inst);
                let _ = writeln!(out, "(assert (! (forall () {}) :named g{k}))", g.show_a(&a));
                hyps.push(a);
            }
            subst_a(head, &inst)
        }
        None => hyps.choose(&mut g.rng).cloned().unwrap_or_else(|| A::Eq(g.ground_term(), g.ground_term())),
    };
    let eqs: Vec<(T, T)> = hyps
        .iter()
        .filter_map(|a| match a {
            A::Eq(l, r) => Some((l.clone(), r.clone())),
            _ => None,
        })
        .collect();
    if let Some((l, r)) = eqs.choose(&mut g.rng) {
        let (from, to) = if g.rng.gen_bool(0.5) { (l, r) } else { (r, l) };
        if let Some(next) = replace_a(&goal, from, to) {
            goal = next;
        }
    }
    goal
}

pub fn random_problem(seed: u64, b: &Bounds) -> Problem {
    let text = random_problem_text(seed, b);
    parse_problem(&text).unwrap_or_else(|e| panic!("generated problem does not parse: {e}\n{text}"))
}
