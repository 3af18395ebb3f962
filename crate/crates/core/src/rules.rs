//! Inference rules of the Horn superposition calculus.
//!
//! Each generating rule takes explicit choices (body index, position,
//! orientation) and returns the conclusion together with the unifier and the
//! renamed-apart premises it was computed from, so that callers can replay or
//! certify the step.

use std::collections::HashMap;

use thiserror::Error;

use crate::clause::{match_atom_with, Atom, Head, HornClause};
use crate::kbo;
use crate::term::{match_term, mgu, FunId, Signature, Substitution, Term, Unifier, UnifyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("not unifiable: {0}")]
    NotUnifiable(#[from] UnifyError),
    #[error("premise is not a definite clause")]
    NotDefinite,
    #[error("premise head is not an equation")]
    NotEquation,
    #[error("body index {0} out of range")]
    BadIndex(usize),
    #[error("no subterm at the given position")]
    BadPosition,
    #[error("superposition into a variable")]
    VariablePosition,
    #[error("predicate atoms cannot be flipped")]
    NotFlippable,
    #[error("not a constructor equation")]
    NotConstructor,
}

/// Where a superposition rewrites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Site {
    Head,
    Body(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Location {
    pub site: Site,
    /// Atom-level path; the first index selects the argument.
    pub position: Vec<usize>,
    /// Use the equation right-to-left.
    pub flipped: bool,
    /// Rewrite every occurrence of the unified subterm in the atom, not just
    /// the one at `position`.
    pub all_occurrences: bool,
}

/// Rule-specific choices that a proof needs beyond the unifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Detail {
    Resolution { index: usize, flipped: bool },
    Factoring { kept: usize, dropped: usize, flipped: bool },
    EqualityResolution { index: usize },
    Superposition {
        site: Site,
        flipped: bool,
        /// Instantiated rewrite `σ(l) → σ(r)`.
        from: Term,
        to: Term,
        /// Instantiated target atom before rewriting.
        atom: Atom,
        /// Paths rewritten, in order, within `atom`.
        paths: Vec<Vec<usize>>,
    },
    Injectivity { arg: usize },
    Distinctness,
}

/// A computed rule instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inferred {
    pub conclusion: HornClause,
    pub sigma: Substitution,
    /// Premises after renaming apart, in argument order.
    pub premises: Vec<HornClause>,
    pub detail: Detail,
}

/// Shifts the variables of `second` above those of `first`.
pub fn rename_second(first: &HornClause, second: &HornClause) -> HornClause {
    match first.max_var_id() {
        Some(m) => second.shift_vars(m + 1),
        None => second.clone(),
    }
}

fn unify_atoms(sig: &Signature, a: &Atom, b: &Atom, flipped: bool) -> Result<Substitution, RuleError> {
    let mut u = Unifier::new(sig);
    match (a, b) {
        (Atom::Pred(p, xs), Atom::Pred(q, ys)) => {
            if flipped {
                return Err(RuleError::NotFlippable);
            }
            if p != q || xs.len() != ys.len() {
                return Err(UnifyError::Clash.into());
            }
            for (x, y) in xs.iter().zip(ys) {
                u.unify(x, y)?;
            }
        }
        (Atom::Eq(l, r), Atom::Eq(s, t)) => {
            let (s, t) = if flipped { (t, s) } else { (s, t) };
            u.unify(l, s)?;
            u.unify(r, t)?;
        }
        _ => return Err(UnifyError::Clash.into()),
    }
    Ok(u.finish())
}

fn definite_head(c: &HornClause) -> Result<&Atom, RuleError> {
    match c.head() {
        Head::Atom(a) => Ok(a),
        _ => Err(RuleError::NotDefinite),
    }
}

/// `C → P` and `P' ∧ D → Q` give `σ(C ∧ D → Q)` with `σ = mgu(P, P')`.
/// `flipped` matches an equation head against the reversed body equation.
pub fn resolution(
    sig: &Signature,
    left: &HornClause,
    right: &HornClause,
    index: usize,
    flipped: bool,
) -> Result<Inferred, RuleError> {
    let p = definite_head(left)?;
    let right = rename_second(left, right);
    let target = right.body().get(index).ok_or(RuleError::BadIndex(index))?;
    let sigma = unify_atoms(sig, p, target, flipped)?;
    let mut body: Vec<Atom> = left.body().iter().map(|a| a.apply(&sigma)).collect();
    body.extend(
        right
            .body()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, a)| a.apply(&sigma)),
    );
    let conclusion = HornClause::from_parts(body, right.head().apply(&sigma));
    Ok(Inferred {
        conclusion,
        sigma,
        premises: vec![left.clone(), right],
        detail: Detail::Resolution { index, flipped },
    })
}

/// Unifies body atoms `kept` and `dropped`, removing the latter.
pub fn factoring(
    sig: &Signature,
    c: &HornClause,
    kept: usize,
    dropped: usize,
    flipped: bool,
) -> Result<Inferred, RuleError> {
    let a = c.body().get(kept).ok_or(RuleError::BadIndex(kept))?;
    let b = c.body().get(dropped).ok_or(RuleError::BadIndex(dropped))?;
    if kept == dropped {
        return Err(RuleError::BadIndex(dropped));
    }
    let sigma = unify_atoms(sig, a, b, flipped)?;
    let body = c
        .body()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != dropped)
        .map(|(_, a)| a.apply(&sigma))
        .collect();
    Ok(Inferred {
        conclusion: HornClause::from_parts(body, c.head().apply(&sigma)),
        sigma,
        premises: vec![c.clone()],
        detail: Detail::Factoring { kept, dropped, flipped },
    })
}

/// Removes a body equation `s = t` after unifying its sides.
pub fn equality_resolution(sig: &Signature, c: &HornClause, index: usize) -> Result<Inferred, RuleError> {
    let (s, t) = match c.body().get(index) {
        Some(Atom::Eq(s, t)) => (s, t),
        Some(_) => return Err(RuleError::NotEquation),
        None => return Err(RuleError::BadIndex(index)),
    };
    let sigma = mgu(sig, s, t)?;
    let body = c
        .body()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != index)
        .map(|(_, a)| a.apply(&sigma))
        .collect();
    Ok(Inferred {
        conclusion: HornClause::from_parts(body, c.head().apply(&sigma)),
        sigma,
        premises: vec![c.clone()],
        detail: Detail::EqualityResolution { index },
    })
}

/// Rewrites a subterm of `target` with the head equation of `eq`.
pub fn superposition(
    sig: &Signature,
    eq: &HornClause,
    target: &HornClause,
    loc: &Location,
) -> Result<Inferred, RuleError> {
    let (l, r) = match definite_head(eq)? {
        Atom::Eq(l, r) if loc.flipped => (r, l),
        Atom::Eq(l, r) => (l, r),
        _ => return Err(RuleError::NotEquation),
    };
    let target = rename_second(eq, target);
    let atom = match loc.site {
        Site::Head => match target.head() {
            Head::Atom(a) => a,
            _ => return Err(RuleError::BadPosition),
        },
        Site::Body(i) => target.body().get(i).ok_or(RuleError::BadIndex(i))?,
    };
    let sub = atom.subterm_at(&loc.position).ok_or(RuleError::BadPosition)?;
    if sub.is_var() || loc.position.is_empty() {
        return Err(RuleError::VariablePosition);
    }
    let sigma = mgu(sig, l, sub)?;
    let from = sigma.apply(l);
    let to = sigma.apply(r);
    let inst = atom.apply(&sigma);
    let paths = if loc.all_occurrences {
        inst.occurrences(&from)
    } else {
        vec![loc.position.clone()]
    };
    let mut rewritten = inst.clone();
    for p in &paths {
        rewritten = rewritten.replace_at(p, &to).ok_or(RuleError::BadPosition)?;
    }
    let mut body: Vec<Atom> = eq.body().iter().map(|a| a.apply(&sigma)).collect();
    let head = match loc.site {
        Site::Head => {
            body.extend(target.body().iter().map(|a| a.apply(&sigma)));
            Head::Atom(rewritten)
        }
        Site::Body(i) => {
            for (j, a) in target.body().iter().enumerate() {
                body.push(if j == i { rewritten.clone() } else { a.apply(&sigma) });
            }
            target.head().apply(&sigma)
        }
    };
    Ok(Inferred {
        conclusion: HornClause::from_parts(body, head),
        sigma,
        premises: vec![eq.clone(), target],
        detail: Detail::Superposition {
            site: loc.site,
            flipped: loc.flipped,
            from,
            to,
            atom: inst,
            paths,
        },
    })
}

/// Every location in `target` where `eq` could superpose: sites head first,
/// then body left to right; positions leftmost-outermost; stored orientation
/// before the flipped one.
pub fn superposition_locations(eq: &HornClause, target: &HornClause) -> Vec<Location> {
    let orientations: &[bool] = match eq.head() {
        Head::Atom(Atom::Eq(l, r)) if l != r => &[false, true],
        Head::Atom(Atom::Eq(..)) => &[false],
        _ => return Vec::new(),
    };
    let mut sites: Vec<(Site, &Atom)> = Vec::new();
    if let Head::Atom(a) = target.head() {
        sites.push((Site::Head, a));
    }
    for (i, a) in target.body().iter().enumerate() {
        sites.push((Site::Body(i), a));
    }
    let mut out = Vec::new();
    for (site, atom) in sites {
        for position in atom.positions() {
            for &flipped in orientations {
                out.push(Location {
                    site,
                    position: position.clone(),
                    flipped,
                    all_occurrences: false,
                });
            }
        }
    }
    out
}

fn constructor_sides<'a>(sig: &Signature, c: &'a HornClause) -> Result<(&'a Term, &'a Term), RuleError> {
    match definite_head(c)? {
        Atom::Eq(l @ Term::App(f, _), r @ Term::App(g, _)) if sig.is_constructor(*f) && sig.is_constructor(*g) => {
            Ok((l, r))
        }
        _ => Err(RuleError::NotConstructor),
    }
}

/// `D → c(s̄) = c(t̄)` gives `D → sᵢ = tᵢ`.
pub fn injectivity(sig: &Signature, c: &HornClause, arg: usize) -> Result<Inferred, RuleError> {
    let (l, r) = constructor_sides(sig, c)?;
    match (l, r) {
        (Term::App(f, xs), Term::App(g, ys)) if f == g && arg < xs.len() => Ok(Inferred {
            conclusion: HornClause::from_parts(
                c.body().to_vec(),
                Head::Atom(Atom::Eq(xs[arg].clone(), ys[arg].clone())),
            ),
            sigma: Substitution::new(),
            premises: vec![c.clone()],
            detail: Detail::Injectivity { arg },
        }),
        _ => Err(RuleError::NotConstructor),
    }
}

/// `D → c(s̄) = d(t̄)` with distinct constructors gives `D → ⊥`.
pub fn distinctness(sig: &Signature, c: &HornClause) -> Result<Inferred, RuleError> {
    match constructor_sides(sig, c)? {
        (Term::App(f, _), Term::App(g, _)) if f != g => Ok(Inferred {
            conclusion: HornClause::from_parts(c.body().to_vec(), Head::Falsum),
            sigma: Substitution::new(),
            premises: vec![c.clone()],
            detail: Detail::Distinctness,
        }),
        _ => Err(RuleError::NotConstructor),
    }
}

/// One demodulation step with a unit equation: the leftmost-innermost subterm
/// of `target` that is an instance `θ(l)` with `θ(l) > θ(r)` is replaced by
/// `θ(r)`. Body atoms are scanned before the head. `None` when nothing applies.
pub fn demodulate(sig: &Signature, unit: &HornClause, target: &HornClause) -> Option<HornClause> {
    let (l, r) = unit.unit_equation()?;
    let unit = HornClause::fact(Atom::Eq(l.clone(), r.clone()));
    let unit = rename_second(target, &unit);
    let (l, r) = unit.unit_equation()?;
    let mut atoms: Vec<&Atom> = target.body().iter().collect();
    if let Some(h) = head_atom(target) {
        atoms.push(h);
    }
    for (k, atom) in atoms.iter().enumerate() {
        for position in innermost_positions(atom) {
            let sub = atom.subterm_at(&position).unwrap();
            for (from, to) in [(l, r), (r, l)] {
                let mut theta = Substitution::new();
                if !match_term(sig, from, sub, &mut theta) {
                    continue;
                }
                let rhs = theta.apply(to);
                if !rhs.vars().is_subset(&sub.vars()) || !kbo::greater(sub, &rhs) {
                    continue;
                }
                let rewritten = atom.replace_at(&position, &rhs).unwrap();
                let mut body = target.body().to_vec();
                let head = if k < body.len() {
                    body[k] = rewritten;
                    target.head().clone()
                } else {
                    Head::Atom(rewritten)
                };
                return Some(HornClause::from_parts(body, head));
            }
        }
    }
    None
}

struct RewriteRule {
    unit: usize,
    from: Term,
    to: Term,
    oriented: bool,
}

/// Unit equations keyed by the head symbol of the side they rewrite, for
/// demodulating with a whole active set at once.
#[derive(Default)]
pub struct RewriteIndex {
    by_head: HashMap<FunId, Vec<RewriteRule>>,
}

impl RewriteIndex {
    pub fn new() -> RewriteIndex {
        RewriteIndex::default()
    }

    /// Adds `c` under the id `unit` if it is a unit equation.
    pub fn insert(&mut self, unit: usize, c: &HornClause) {
        let Some((l, r)) = c.unit_equation() else { return };
        for (from, to) in [(l, r), (r, l)] {
            let Some(f) = from.head() else { continue };
            if !to.vars().is_subset(&from.vars()) || kbo::greater(to, from) {
                continue;
            }
            self.by_head.entry(f).or_default().push(RewriteRule {
                unit,
                from: from.clone(),
                to: to.clone(),
                oriented: kbo::greater(from, to),
            });
        }
    }

    pub fn remove(&mut self, unit: usize) {
        for rules in self.by_head.values_mut() {
            rules.retain(|r| r.unit != unit);
        }
    }

    /// The leftmost-innermost rewrite of `target` by any indexed unit, body
    /// before head. Returns the unit used and the rewritten clause; the step is
    /// the one `demodulate` makes with that unit.
    pub fn rewrite(&self, sig: &Signature, target: &HornClause) -> Option<(usize, HornClause)> {
        if self.by_head.is_empty() {
            return None;
        }
        let mut atoms: Vec<&Atom> = target.body().iter().collect();
        if let Some(h) = head_atom(target) {
            atoms.push(h);
        }
        let mut path = Vec::new();
        for (k, atom) in atoms.iter().enumerate() {
            for (i, t) in atom.args().into_iter().enumerate() {
                path.clear();
                path.push(i);
                if let Some((unit, rhs)) = self.visit(sig, t, &mut path) {
                    let rewritten = atom.replace_at(&path, &rhs).unwrap();
                    let mut body = target.body().to_vec();
                    let head = if k < body.len() {
                        body[k] = rewritten;
                        target.head().clone()
                    } else {
                        Head::Atom(rewritten)
                    };
                    return Some((unit, HornClause::from_parts(body, head)));
                }
            }
        }
        None
    }

    fn visit(&self, sig: &Signature, t: &Term, path: &mut Vec<usize>) -> Option<(usize, Term)> {
        let Term::App(f, args) = t else { return None };
        for (j, a) in args.iter().enumerate() {
            path.push(j);
            if let Some(found) = self.visit(sig, a, path) {
                return Some(found);
            }
            path.pop();
        }
        for rule in self.by_head.get(f)? {
            let mut theta = Substitution::new();
            if !match_term(sig, &rule.from, t, &mut theta) {
                continue;
            }
            let rhs = theta.apply(&rule.to);
            if rule.oriented || kbo::greater(t, &rhs) {
                return Some((rule.unit, rhs));
            }
        }
        None
    }
}

fn head_atom(c: &HornClause) -> Option<&Atom> {
    match c.head() {
        Head::Atom(a) => Some(a),
        _ => None,
    }
}

/// Non-variable positions, innermost first, left to right.
fn innermost_positions(a: &Atom) -> Vec<Vec<usize>> {
    let mut ps = a.positions();
    // post-order: a position comes after every position it is a prefix of
    ps.sort_by(|p, q| {
        let common = p.iter().zip(q).take_while(|(x, y)| x == y).count();
        match (p.get(common), q.get(common)) {
            (Some(x), Some(y)) => x.cmp(y),
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, None) => std::cmp::Ordering::Equal,
        }
    });
    ps
}

/// How `match_clause` compares bodies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchMode {
    /// Equal up to an injective variable renaming; bodies equal as sets.
    Variant,
    /// Any instance, body mapped into the other body.
    Subsumption,
}

/// Finds `θ` with `θ(general)` equal to (`Variant`) or embedded in
/// (`Subsumption`) `specific`, equations compared up to symmetry. Variables of
/// `specific` are treated as constants. Goal heads must coincide exactly.
pub fn match_clause(
    sig: &Signature,
    general: &HornClause,
    specific: &HornClause,
    mode: MatchMode,
) -> Option<Substitution> {
    if mode == MatchMode::Variant && general.vars().len() != specific.vars().len() {
        return None;
    }
    let mut found = None;
    let mut finish = |theta: Substitution| -> bool {
        if mode == MatchMode::Variant {
            if !theta.is_renaming() {
                return false;
            }
            let mapped: Vec<Atom> = general.body().iter().map(|a| a.apply(&theta)).collect();
            if !specific
                .body()
                .iter()
                .all(|b| mapped.iter().any(|m| m.same_modulo_symmetry(b)))
            {
                return false;
            }
        }
        found = Some(theta);
        true
    };
    let body = general.body();
    match (general.head(), specific.head()) {
        (Head::Atom(a), Head::Atom(b)) => {
            match_atom_with(sig, a, b, &Substitution::new(), &mut |s| {
                match_body(sig, body, specific.body(), s, &mut finish)
            });
        }
        (Head::Falsum, Head::Falsum) => {
            match_body(sig, body, specific.body(), Substitution::new(), &mut finish);
        }
        (Head::Goal(a), Head::Goal(b)) if a == b => {
            match_body(sig, body, specific.body(), Substitution::new(), &mut finish);
        }
        _ => {}
    }
    found
}

fn match_body(
    sig: &Signature,
    pats: &[Atom],
    targets: &[Atom],
    subst: Substitution,
    k: &mut dyn FnMut(Substitution) -> bool,
) -> bool {
    match pats.split_first() {
        None => k(subst),
        Some((p, rest)) => targets.iter().any(|t| {
            match_atom_with(sig, p, t, &subst, &mut |s| match_body(sig, rest, targets, s, k))
        }),
    }
}

/// `general` subsumes `specific` when an instance of it has the same head and
/// a body contained in the body of `specific` (as a multiset).
pub fn subsumes(sig: &Signature, general: &HornClause, specific: &HornClause) -> bool {
    if general.body().len() > specific.body().len() {
        return false;
    }
    let mut used = vec![false; specific.body().len()];
    let body = general.body();
    let mut k = |_s: Substitution| true;
    match (general.head(), specific.head()) {
        (Head::Atom(a), Head::Atom(b)) => match_atom_with(sig, a, b, &Substitution::new(), &mut |s| {
            multiset_body(sig, body, specific.body(), &mut used, s, &mut k)
        }),
        (Head::Falsum, Head::Falsum) => multiset_body(sig, body, specific.body(), &mut used, Substitution::new(), &mut k),
        (Head::Goal(a), Head::Goal(b)) if a == b => {
            multiset_body(sig, body, specific.body(), &mut used, Substitution::new(), &mut k)
        }
        _ => false,
    }
}

fn multiset_body(
    sig: &Signature,
    pats: &[Atom],
    targets: &[Atom],
    used: &mut Vec<bool>,
    subst: Substitution,
    k: &mut dyn FnMut(Substitution) -> bool,
) -> bool {
    let (p, rest) = match pats.split_first() {
        None => return k(subst),
        Some(x) => x,
    };
    for (i, t) in targets.iter().enumerate() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let ok = match_atom_with(sig, p, t, &subst, &mut |s| multiset_body(sig, rest, targets, used, s, k));
        used[i] = false;
        if ok {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{FunId, PredId, SortId, Var};

    struct Sig {
        sig: Signature,
        a: FunId,
        b: FunId,
        f: FunId,
        p: PredId,
        q: PredId,
    }

    fn sig() -> Sig {
        let mut sig = Signature::new();
        let s = sig.add_sort("S").unwrap();
        let a = sig.add_function("a", vec![], s).unwrap();
        let b = sig.add_function("b", vec![], s).unwrap();
        let f = sig.add_function("f", vec![s], s).unwrap();
        let p = sig.add_predicate("P", vec![s]).unwrap();
        let q = sig.add_predicate("Q", vec![s]).unwrap();
        Sig { sig, a, b, f, p, q }
    }

    fn x(i: u32) -> Term {
        Term::Var(Var::new(i, SortId(0)))
    }

    #[test]
    fn resolution_instance() {
        let s = sig();
        let a = Term::constant(s.a);
        let left = HornClause::fact(Atom::Pred(s.p, vec![a.clone()]));
        let right = HornClause::from_parts(vec![Atom::Pred(s.p, vec![x(0)])], Head::Atom(Atom::Pred(s.q, vec![x(0)])));
        let inf = resolution(&s.sig, &left, &right, 0, false).unwrap();
        assert_eq!(inf.conclusion, HornClause::fact(Atom::Pred(s.q, vec![a])));
    }

    #[test]
    fn resolution_to_empty_clause() {
        let s = sig();
        let g = Atom::Eq(Term::constant(s.a), Term::constant(s.b));
        let left = HornClause::fact(g.clone());
        let right = HornClause::from_parts(vec![g.flip()], Head::Falsum);
        assert!(resolution(&s.sig, &left, &right, 0, false).is_err());
        let inf = resolution(&s.sig, &left, &right, 0, true).unwrap();
        assert!(inf.conclusion.is_empty_clause());
    }

    #[test]
    fn factoring_and_equality_resolution() {
        let s = sig();
        let a = Term::constant(s.a);
        let c = HornClause::from_parts(
            vec![Atom::Pred(s.p, vec![x(0)]), Atom::Pred(s.p, vec![a.clone()])],
            Head::Atom(Atom::Pred(s.q, vec![x(0)])),
        );
        let inf = factoring(&s.sig, &c, 1, 0, false).unwrap();
        assert_eq!(
            inf.conclusion,
            HornClause::from_parts(vec![Atom::Pred(s.p, vec![a.clone()])], Head::Atom(Atom::Pred(s.q, vec![a.clone()])))
        );
        let fx = Term::App(s.f, vec![x(0)]);
        let fa = Term::App(s.f, vec![a.clone()]);
        let c = HornClause::from_parts(vec![Atom::Eq(fx, fa)], Head::Atom(Atom::Pred(s.p, vec![x(0)])));
        let inf = equality_resolution(&s.sig, &c, 0).unwrap();
        assert_eq!(inf.conclusion, HornClause::fact(Atom::Pred(s.p, vec![a])));
        let c = HornClause::from_parts(vec![Atom::Pred(s.p, vec![x(0)])], Head::Falsum);
        assert_eq!(equality_resolution(&s.sig, &c, 0).unwrap_err(), RuleError::NotEquation);
    }

    #[test]
    fn superposition_right() {
        let s = sig();
        let a = Term::constant(s.a);
        let b = Term::constant(s.b);
        // f(x) = x into P(f(a)) at [0]
        let eq = HornClause::fact(Atom::Eq(Term::App(s.f, vec![x(0)]), x(0)));
        let target = HornClause::fact(Atom::Pred(s.p, vec![Term::App(s.f, vec![a.clone()])]));
        let loc = Location {
            site: Site::Head,
            position: vec![0],
            flipped: false,
            all_occurrences: false,
        };
        let inf = superposition(&s.sig, &eq, &target, &loc).unwrap();
        assert_eq!(inf.conclusion, HornClause::fact(Atom::Pred(s.p, vec![a.clone()])));
        // into a variable position is rejected
        let target = HornClause::fact(Atom::Pred(s.p, vec![x(0)]));
        assert_eq!(
            superposition(&s.sig, &eq, &target, &loc).unwrap_err(),
            RuleError::VariablePosition
        );
        // all occurrences
        let eq = HornClause::fact(Atom::Eq(a.clone(), b.clone()));
        let target = HornClause::fact(Atom::Eq(Term::App(s.f, vec![a.clone()]), a.clone()));
        let loc = Location {
            site: Site::Head,
            position: vec![1],
            flipped: false,
            all_occurrences: true,
        };
        let inf = superposition(&s.sig, &eq, &target, &loc).unwrap();
        assert_eq!(inf.conclusion, HornClause::fact(Atom::Eq(Term::App(s.f, vec![b.clone()]), b)));
    }

    #[test]
    fn superposition_left_keeps_goal_head() {
        let s = sig();
        let a = Term::constant(s.a);
        let b = Term::constant(s.b);
        let g = Atom::Pred(s.q, vec![a.clone()]);
        let eq = HornClause::fact(Atom::Eq(a.clone(), b.clone()));
        let target = HornClause::from_parts(vec![Atom::Pred(s.p, vec![a.clone()])], Head::Goal(g.clone()));
        let loc = Location {
            site: Site::Body(0),
            position: vec![0],
            flipped: false,
            all_occurrences: false,
        };
        let inf = superposition(&s.sig, &eq, &target, &loc).unwrap();
        assert_eq!(inf.conclusion.head(), &Head::Goal(g));
        assert_eq!(inf.conclusion.body(), &[Atom::Pred(s.p, vec![b])]);
    }

    #[test]
    fn demodulation() {
        let s = sig();
        let a = Term::constant(s.a);
        let unit = HornClause::fact(Atom::Eq(Term::App(s.f, vec![x(0)]), x(0)));
        let target = HornClause::fact(Atom::Pred(s.p, vec![Term::App(s.f, vec![Term::App(s.f, vec![a.clone()])])]));
        let once = demodulate(&s.sig, &unit, &target).unwrap();
        assert_eq!(once, HornClause::fact(Atom::Pred(s.p, vec![Term::App(s.f, vec![a.clone()])])));
        let unorientable = HornClause::fact(Atom::Eq(x(0), x(1)));
        assert!(demodulate(&s.sig, &unorientable, &target).is_none());
        let plain = HornClause::fact(Atom::Pred(s.p, vec![a]));
        assert!(demodulate(&s.sig, &unit, &plain).is_none());
    }

    #[test]
    fn subsumption() {
        let s = sig();
        let a = Term::constant(s.a);
        let b = Term::constant(s.b);
        let q = Head::Atom(Atom::Pred(s.q, vec![b.clone()]));
        let general = HornClause::from_parts(vec![Atom::Pred(s.p, vec![x(0)])], q.clone());
        let specific = HornClause::from_parts(
            vec![Atom::Pred(s.p, vec![a.clone()]), Atom::Pred(s.q, vec![a.clone()])],
            q.clone(),
        );
        assert!(subsumes(&s.sig, &general, &specific));
        assert!(subsumes(&s.sig, &specific, &specific));
        let pa = HornClause::from_parts(vec![Atom::Pred(s.p, vec![a.clone()])], q.clone());
        let pb = HornClause::from_parts(vec![Atom::Pred(s.p, vec![b.clone()])], q);
        assert!(!subsumes(&s.sig, &pa, &pb));
        // multiset: two copies do not fit into one
        let double = HornClause::from_parts(
            vec![Atom::Pred(s.p, vec![x(0)]), Atom::Pred(s.p, vec![x(1)])],
            Head::Falsum,
        );
        let single = HornClause::from_parts(vec![Atom::Pred(s.p, vec![a])], Head::Falsum);
        assert!(!subsumes(&s.sig, &double, &single));
    }

    #[test]
    fn variants() {
        let s = sig();
        let c1 = HornClause::from_parts(
            vec![Atom::Pred(s.p, vec![x(0)])],
            Head::Atom(Atom::Eq(x(1), Term::App(s.f, vec![x(0)]))),
        );
        let c2 = HornClause::from_parts(
            vec![Atom::Pred(s.p, vec![x(7)])],
            Head::Atom(Atom::Eq(Term::App(s.f, vec![x(7)]), x(3))),
        );
        assert!(match_clause(&s.sig, &c1, &c2, MatchMode::Variant).is_some());
        let c3 = HornClause::from_parts(
            vec![Atom::Pred(s.p, vec![x(7)])],
            Head::Atom(Atom::Eq(Term::App(s.f, vec![x(7)]), x(7))),
        );
        assert!(match_clause(&s.sig, &c1, &c3, MatchMode::Variant).is_none());
        assert!(match_clause(&s.sig, &c1, &c3, MatchMode::Subsumption).is_some());
    }
}
