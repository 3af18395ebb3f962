//! Sorted first-order terms, signatures, substitutions and syntactic unification.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SortId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FunId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredId(pub u32);

/// A variable is identified by its number; the sort travels with it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub id: u32,
    pub sort: SortId,
}

impl Var {
    pub fn new(id: u32, sort: SortId) -> Var {
        Var { id, sort }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constructor {
    pub fun: FunId,
    /// Selector names as written in the datatype declaration.
    pub fields: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sort {
    pub name: String,
    /// `Some` iff the sort is an inductive datatype.
    pub constructors: Option<Vec<Constructor>>,
}

impl Sort {
    pub fn is_datatype(&self) -> bool {
        self.constructors.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSymbol {
    pub name: String,
    pub arg_sorts: Vec<SortId>,
    pub result_sort: SortId,
    pub is_constructor: bool,
}

impl FunctionSymbol {
    pub fn arity(&self) -> usize {
        self.arg_sorts.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateSymbol {
    pub name: String,
    pub arg_sorts: Vec<SortId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolRef {
    Fun(FunId),
    Pred(PredId),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("duplicate sort `{0}`")]
    DuplicateSort(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SortError {
    #[error("symbol `{name}` expects {expected} arguments, found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("sort mismatch: expected `{expected}`, found `{found}`")]
    Mismatch { expected: String, found: String },
    #[error("unknown function symbol #{0}")]
    UnknownSymbol(u32),
}

/// Sorts, function symbols and predicate symbols. Ids are indices in declaration
/// order, which also fixes the symbol precedence used by the term ordering.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    sorts: Vec<Sort>,
    functions: Vec<FunctionSymbol>,
    predicates: Vec<PredicateSymbol>,
    sort_names: HashMap<String, SortId>,
    symbol_names: HashMap<String, SymbolRef>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn add_sort(&mut self, name: &str) -> Result<SortId, SignatureError> {
        if self.sort_names.contains_key(name) {
            return Err(SignatureError::DuplicateSort(name.to_string()));
        }
        let id = SortId(self.sorts.len() as u32);
        self.sorts.push(Sort {
            name: name.to_string(),
            constructors: None,
        });
        self.sort_names.insert(name.to_string(), id);
        Ok(id)
    }

    /// Declares a datatype sort. Constructors are added afterwards with
    /// [`Signature::add_constructor`] so that they can mention the sort itself.
    pub fn add_datatype(&mut self, name: &str) -> Result<SortId, SignatureError> {
        let id = self.add_sort(name)?;
        self.sorts[id.0 as usize].constructors = Some(Vec::new());
        Ok(id)
    }

    pub fn add_constructor(
        &mut self,
        datatype: SortId,
        name: &str,
        fields: Vec<(String, SortId)>,
    ) -> Result<FunId, SignatureError> {
        let arg_sorts = fields.iter().map(|(_, s)| *s).collect();
        let fun = self.push_function(name, arg_sorts, datatype, true)?;
        let ctors = self.sorts[datatype.0 as usize]
            .constructors
            .get_or_insert_with(Vec::new);
        ctors.push(Constructor {
            fun,
            fields: fields.into_iter().map(|(n, _)| n).collect(),
        });
        Ok(fun)
    }

    pub fn add_function(
        &mut self,
        name: &str,
        arg_sorts: Vec<SortId>,
        result_sort: SortId,
    ) -> Result<FunId, SignatureError> {
        self.push_function(name, arg_sorts, result_sort, false)
    }

    fn push_function(
        &mut self,
        name: &str,
        arg_sorts: Vec<SortId>,
        result_sort: SortId,
        is_constructor: bool,
    ) -> Result<FunId, SignatureError> {
        if self.symbol_names.contains_key(name) {
            return Err(SignatureError::DuplicateSymbol(name.to_string()));
        }
        let id = FunId(self.functions.len() as u32);
        self.functions.push(FunctionSymbol {
            name: name.to_string(),
            arg_sorts,
            result_sort,
            is_constructor,
        });
        self.symbol_names.insert(name.to_string(), SymbolRef::Fun(id));
        Ok(id)
    }

    pub fn add_predicate(
        &mut self,
        name: &str,
        arg_sorts: Vec<SortId>,
    ) -> Result<PredId, SignatureError> {
        if self.symbol_names.contains_key(name) {
            return Err(SignatureError::DuplicateSymbol(name.to_string()));
        }
        let id = PredId(self.predicates.len() as u32);
        self.predicates.push(PredicateSymbol {
            name: name.to_string(),
            arg_sorts,
        });
        self.symbol_names.insert(name.to_string(), SymbolRef::Pred(id));
        Ok(id)
    }

    pub fn sort(&self, id: SortId) -> &Sort {
        &self.sorts[id.0 as usize]
    }

    pub fn function(&self, id: FunId) -> &FunctionSymbol {
        &self.functions[id.0 as usize]
    }

    pub fn predicate(&self, id: PredId) -> &PredicateSymbol {
        &self.predicates[id.0 as usize]
    }

    pub fn sorts(&self) -> impl Iterator<Item = (SortId, &Sort)> {
        self.sorts
            .iter()
            .enumerate()
            .map(|(i, s)| (SortId(i as u32), s))
    }

    pub fn functions(&self) -> impl Iterator<Item = (FunId, &FunctionSymbol)> {
        self.functions
            .iter()
            .enumerate()
            .map(|(i, f)| (FunId(i as u32), f))
    }

    pub fn predicates(&self) -> impl Iterator<Item = (PredId, &PredicateSymbol)> {
        self.predicates
            .iter()
            .enumerate()
            .map(|(i, p)| (PredId(i as u32), p))
    }

    pub fn sort_count(&self) -> usize {
        self.sorts.len()
    }

    pub fn function_count(&self) -> usize {
        self.functions.len()
    }

    pub fn lookup_sort(&self, name: &str) -> Option<SortId> {
        self.sort_names.get(name).copied()
    }

    pub fn lookup_symbol(&self, name: &str) -> Option<SymbolRef> {
        self.symbol_names.get(name).copied()
    }

    pub fn lookup_function(&self, name: &str) -> Option<FunId> {
        match self.lookup_symbol(name) {
            Some(SymbolRef::Fun(f)) => Some(f),
            _ => None,
        }
    }

    pub fn has_name(&self, name: &str) -> bool {
        self.sort_names.contains_key(name) || self.symbol_names.contains_key(name)
    }

    pub fn is_constructor(&self, f: FunId) -> bool {
        self.function(f).is_constructor
    }

    /// Sort of a term, assuming it is well-sorted.
    pub fn sort_of(&self, t: &Term) -> SortId {
        match t {
            Term::Var(v) => v.sort,
            Term::App(f, _) => self.function(*f).result_sort,
        }
    }

    /// Checks well-sortedness and returns the term's sort.
    pub fn check_term(&self, t: &Term) -> Result<SortId, SortError> {
        match t {
            Term::Var(v) => Ok(v.sort),
            Term::App(f, args) => {
                let sym = self
                    .functions
                    .get(f.0 as usize)
                    .ok_or(SortError::UnknownSymbol(f.0))?;
                if sym.arg_sorts.len() != args.len() {
                    return Err(SortError::Arity {
                        name: sym.name.clone(),
                        expected: sym.arg_sorts.len(),
                        found: args.len(),
                    });
                }
                for (arg, want) in args.iter().zip(&sym.arg_sorts) {
                    let got = self.check_term(arg)?;
                    if got != *want {
                        return Err(self.mismatch(*want, got));
                    }
                }
                Ok(sym.result_sort)
            }
        }
    }

    pub fn mismatch(&self, expected: SortId, found: SortId) -> SortError {
        SortError::Mismatch {
            expected: self.sort(expected).name.clone(),
            found: self.sort(found).name.clone(),
        }
    }

    pub fn display<'a>(&'a self, t: &'a Term) -> TermDisplay<'a> {
        TermDisplay { sig: self, term: t }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Var),
    App(FunId, Vec<Term>),
}

impl Term {
    pub fn constant(f: FunId) -> Term {
        Term::App(f, Vec::new())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<Var> {
        match self {
            Term::Var(v) => Some(*v),
            _ => None,
        }
    }

    pub fn head(&self) -> Option<FunId> {
        match self {
            Term::App(f, _) => Some(*f),
            Term::Var(_) => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn occurs(&self, v: Var) -> bool {
        match self {
            Term::Var(w) => w.id == v.id,
            Term::App(_, args) => args.iter().any(|a| a.occurs(v)),
        }
    }

    pub fn contains(&self, needle: &Term) -> bool {
        if self == needle {
            return true;
        }
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.contains(needle)),
        }
    }

    /// Symbol count: every function symbol and variable occurrence weighs 1.
    pub fn weight(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::weight).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.into_iter().collect()
    }

    pub fn max_var_id(&self) -> Option<u32> {
        match self {
            Term::Var(v) => Some(v.id),
            Term::App(_, args) => args.iter().filter_map(Term::max_var_id).max(),
        }
    }

    pub fn subterm_at(&self, path: &[usize]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => match self {
                Term::App(_, args) => args.get(*i)?.subterm_at(rest),
                Term::Var(_) => None,
            },
        }
    }

    /// Replaces the subterm at `path`; `None` when the path does not exist.
    pub fn replace_at(&self, path: &[usize], with: &Term) -> Option<Term> {
        match path.split_first() {
            None => Some(with.clone()),
            Some((i, rest)) => match self {
                Term::App(f, args) => {
                    let inner = args.get(*i)?.replace_at(rest, with)?;
                    let mut args = args.clone();
                    args[*i] = inner;
                    Some(Term::App(*f, args))
                }
                Term::Var(_) => None,
            },
        }
    }

    /// Paths to non-variable subterms, leftmost-outermost (pre-order).
    pub fn positions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.positions_into(&mut path, &mut out);
        out
    }

    fn positions_into(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if let Term::App(_, args) = self {
            out.push(path.clone());
            for (i, a) in args.iter().enumerate() {
                path.push(i);
                a.positions_into(path, out);
                path.pop();
            }
        }
    }

    /// Paths of every occurrence of `needle`, pre-order.
    pub fn occurrences(&self, needle: &Term) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.occurrences_into(needle, &mut path, &mut out);
        out
    }

    fn occurrences_into(&self, needle: &Term, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if self == needle {
            out.push(path.clone());
            return;
        }
        if let Term::App(_, args) = self {
            for (i, a) in args.iter().enumerate() {
                path.push(i);
                a.occurrences_into(needle, path, out);
                path.pop();
            }
        }
    }

    /// Replaces every occurrence of `from` by `to`.
    pub fn replace_all(&self, from: &Term, to: &Term) -> Term {
        if self == from {
            return to.clone();
        }
        match self {
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| a.replace_all(from, to)).collect()),
        }
    }

    /// Renames every variable by adding `offset` to its id.
    pub fn shift_vars(&self, offset: u32) -> Term {
        match self {
            Term::Var(v) => Term::Var(Var::new(v.id + offset, v.sort)),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| a.shift_vars(offset)).collect()),
        }
    }
}

pub struct TermDisplay<'a> {
    sig: &'a Signature,
    term: &'a Term,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var(v) => write!(f, "X{}", v.id),
            Term::App(g, args) => {
                write!(f, "{}", self.sig.function(*g).name)?;
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

/// Finite map from variables to terms.
///
/// Substitutions returned by [`mgu`] are idempotent. [`Substitution::compose`]
/// can produce a non-idempotent map; [`Substitution::apply`] is always a single
/// simultaneous pass.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    bindings: BTreeMap<u32, (Var, Term)>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    /// Builds a substitution, rejecting bindings whose term sort differs from the
    /// variable's sort.
    pub fn from_bindings(
        sig: &Signature,
        bindings: impl IntoIterator<Item = (Var, Term)>,
    ) -> Result<Substitution, SortError> {
        let mut s = Substitution::new();
        for (v, t) in bindings {
            s.bind(sig, v, t)?;
        }
        Ok(s)
    }

    pub fn bind(&mut self, sig: &Signature, v: Var, t: Term) -> Result<(), SortError> {
        let sort = sig.check_term(&t)?;
        if sort != v.sort {
            return Err(sig.mismatch(v.sort, sort));
        }
        self.bindings.insert(v.id, (v, t));
        Ok(())
    }

    /// Inserts without a sort check; callers guarantee sort preservation.
    pub(crate) fn insert(&mut self, v: Var, t: Term) {
        self.bindings.insert(v.id, (v, t));
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.bindings.get(&v.id).map(|(_, t)| t)
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Term)> {
        self.bindings.values().map(|(v, t)| (*v, t))
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.bindings.values().map(|(v, _)| *v)
    }

    pub fn apply(&self, t: &Term) -> Term {
        if self.bindings.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(v) => match self.bindings.get(&v.id) {
                Some((_, s)) => s.clone(),
                None => t.clone(),
            },
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    /// `compose(σ, τ)` behaves as "first τ, then σ".
    pub fn compose(sigma: &Substitution, tau: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in tau.iter() {
            let t2 = sigma.apply(t);
            if t2 != Term::Var(v) {
                out.insert(v, t2);
            }
        }
        for (v, t) in sigma.iter() {
            if tau.get(v).is_none() {
                out.insert(v, t.clone());
            }
        }
        out
    }

    pub fn is_idempotent(&self) -> bool {
        self.iter().all(|(_, t)| self.apply(t) == *t)
    }

    /// True when every binding maps to a distinct variable of the same sort.
    pub fn is_renaming(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.iter().all(|(v, t)| match t {
            Term::Var(w) => w.sort == v.sort && seen.insert(w.id),
            _ => false,
        })
    }

    /// Deref through triangular bindings. Used while unifying.
    fn walk<'a>(&'a self, mut t: &'a Term) -> &'a Term {
        while let Term::Var(v) = t {
            match self.bindings.get(&v.id) {
                Some((_, next)) => t = next,
                None => break,
            }
        }
        t
    }

    fn occurs_walk(&self, v: Var, t: &Term) -> bool {
        match self.walk(t) {
            Term::Var(w) => w.id == v.id,
            Term::App(_, args) => args.iter().any(|a| self.occurs_walk(v, a)),
        }
    }

    fn resolve(&self, t: &Term) -> Term {
        match self.walk(t) {
            Term::Var(v) => Term::Var(*v),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| self.resolve(a)).collect()),
        }
    }

    /// Turns a triangular substitution into idempotent solved form.
    fn solved(&self) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in self.iter() {
            out.insert(v, self.resolve(t));
        }
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnifyError {
    #[error("symbol clash")]
    Clash,
    #[error("occurs check failed")]
    Occurs,
    #[error("sort clash")]
    SortClash,
}

/// Robinson unification with occurs check. Variables never unify with terms of
/// a different sort.
pub fn mgu(sig: &Signature, s: &Term, t: &Term) -> Result<Substitution, UnifyError> {
    let mut u = Unifier::new(sig);
    u.unify(s, t)?;
    Ok(u.finish())
}

/// Incremental unifier; several pairs can be unified into one substitution.
pub struct Unifier<'a> {
    sig: &'a Signature,
    subst: Substitution,
}

impl<'a> Unifier<'a> {
    pub fn new(sig: &'a Signature) -> Unifier<'a> {
        Unifier {
            sig,
            subst: Substitution::new(),
        }
    }

    pub fn unify(&mut self, s: &Term, t: &Term) -> Result<(), UnifyError> {
        let mut stack = vec![(s.clone(), t.clone())];
        while let Some((a, b)) = stack.pop() {
            let a = self.subst.walk(&a).clone();
            let b = self.subst.walk(&b).clone();
            match (&a, &b) {
                (Term::Var(x), Term::Var(y)) if x.id == y.id => {}
                (Term::Var(x), _) => self.bind_var(*x, &b)?,
                (_, Term::Var(y)) => self.bind_var(*y, &a)?,
                (Term::App(f, fa), Term::App(g, ga)) => {
                    if f != g || fa.len() != ga.len() {
                        return Err(UnifyError::Clash);
                    }
                    for (x, y) in fa.iter().zip(ga.iter()).rev() {
                        stack.push((x.clone(), y.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    fn bind_var(&mut self, x: Var, t: &Term) -> Result<(), UnifyError> {
        if self.sig.sort_of(t) != x.sort {
            return Err(UnifyError::SortClash);
        }
        if self.subst.occurs_walk(x, t) {
            return Err(UnifyError::Occurs);
        }
        self.subst.insert(x, t.clone());
        Ok(())
    }

    pub fn finish(self) -> Substitution {
        self.subst.solved()
    }
}

/// One-way matching: extends `subst` so that `subst(pattern) == target`.
/// Variables of `target` are treated as constants.
pub fn match_term(
    sig: &Signature,
    pattern: &Term,
    target: &Term,
    subst: &mut Substitution,
) -> bool {
    match pattern {
        Term::Var(v) => match subst.get(*v) {
            Some(bound) => bound == target,
            None => {
                if sig.sort_of(target) != v.sort {
                    return false;
                }
                subst.insert(*v, target.clone());
                true
            }
        },
        Term::App(f, args) => match target {
            Term::App(g, targs) if f == g && args.len() == targs.len() => args
                .iter()
                .zip(targs)
                .all(|(p, t)| match_term(sig, p, t, subst)),
            _ => false,
        },
    }
}

/// Source of fresh variable ids, confined to one derivation context.
#[derive(Clone, Debug)]
pub struct FreshVars {
    next: u32,
}

impl FreshVars {
    pub fn new(start: u32) -> FreshVars {
        FreshVars { next: start }
    }

    /// Starts above every id in `used`.
    pub fn above<'a>(used: impl IntoIterator<Item = &'a Var>) -> FreshVars {
        let next = used.into_iter().map(|v| v.id + 1).max().unwrap_or(0);
        FreshVars { next }
    }

    pub fn fresh(&mut self, sort: SortId) -> Var {
        let v = Var::new(self.next, sort);
        self.next += 1;
        v
    }

    pub fn reserve_above(&mut self, id: u32) {
        if self.next <= id {
            self.next = id + 1;
        }
    }
}

/// Renaming for the right-hand variables so that they are disjoint from the left
/// ones. Non-clashing variables are left alone.
pub fn rename_apart(
    left: &BTreeSet<Var>,
    right: &BTreeSet<Var>,
    fresh: &mut FreshVars,
) -> Substitution {
    for v in left.iter().chain(right.iter()) {
        fresh.reserve_above(v.id);
    }
    let left_ids: BTreeSet<u32> = left.iter().map(|v| v.id).collect();
    let mut out = Substitution::new();
    for v in right {
        if left_ids.contains(&v.id) {
            let w = fresh.fresh(v.sort);
            out.insert(*v, Term::Var(w));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> (Signature, SortId, FunId, FunId, FunId, FunId) {
        let mut sig = Signature::new();
        let s = sig.add_sort("S").unwrap();
        let a = sig.add_function("a", vec![], s).unwrap();
        let b = sig.add_function("b", vec![], s).unwrap();
        let f = sig.add_function("f", vec![s, s], s).unwrap();
        let g = sig.add_function("g", vec![s], s).unwrap();
        (sig, s, a, b, f, g)
    }

    fn v(id: u32, s: SortId) -> Term {
        Term::Var(Var::new(id, s))
    }

    #[test]
    fn apply_identity_and_ground() {
        let (sig, s, a, b, f, _) = sig();
        let t = Term::App(f, vec![v(0, s), Term::constant(b)]);
        assert_eq!(Substitution::new().apply(&t), t);
        let ground = Term::App(f, vec![Term::constant(a), Term::constant(b)]);
        let sigma = Substitution::from_bindings(&sig, [(Var::new(0, s), Term::constant(a))]).unwrap();
        assert_eq!(sigma.apply(&ground), ground);
    }

    #[test]
    fn bind_rejects_sort_mismatch() {
        let mut sig = Signature::new();
        let s = sig.add_sort("S").unwrap();
        let t = sig.add_sort("T").unwrap();
        let c = sig.add_function("c", vec![], t).unwrap();
        let err = Substitution::from_bindings(&sig, [(Var::new(0, s), Term::constant(c))]);
        assert!(matches!(err, Err(SortError::Mismatch { .. })));
    }

    #[test]
    fn mgu_examples() {
        let (sig, s, a, b, f, g) = sig();
        let x = v(0, s);
        let y = v(1, s);
        assert!(mgu(&sig, &x, &x).unwrap().is_empty());
        assert_eq!(
            mgu(&sig, &x, &Term::App(g, vec![x.clone()])),
            Err(UnifyError::Occurs)
        );
        let l = Term::App(f, vec![x.clone(), Term::constant(a)]);
        let r = Term::App(f, vec![Term::constant(b), y.clone()]);
        let sigma = mgu(&sig, &l, &r).unwrap();
        assert_eq!(sigma.get(Var::new(0, s)), Some(&Term::constant(b)));
        assert_eq!(sigma.get(Var::new(1, s)), Some(&Term::constant(a)));
        assert_eq!(sigma.apply(&l), sigma.apply(&r));
        assert_eq!(
            mgu(&sig, &Term::constant(a), &Term::constant(b)),
            Err(UnifyError::Clash)
        );
    }

    #[test]
    fn mgu_never_crosses_sorts() {
        let mut sig = Signature::new();
        let s = sig.add_sort("S").unwrap();
        let t = sig.add_sort("T").unwrap();
        assert_eq!(mgu(&sig, &v(0, s), &v(1, t)), Err(UnifyError::SortClash));
    }

    #[test]
    fn mgu_is_idempotent_on_chains() {
        let (sig, s, a, _, f, _) = sig();
        // f(x, y) =? f(y, a) gives x -> a, y -> a
        let l = Term::App(f, vec![v(0, s), v(1, s)]);
        let r = Term::App(f, vec![v(1, s), Term::constant(a)]);
        let sigma = mgu(&sig, &l, &r).unwrap();
        assert!(sigma.is_idempotent());
        assert_eq!(sigma.apply(&l), sigma.apply(&r));
    }

    #[test]
    fn rename_apart_examples() {
        let s = SortId(0);
        let x = Var::new(0, s);
        let y = Var::new(1, s);
        let mut fresh = FreshVars::new(0);
        let left: BTreeSet<Var> = [x].into();
        let right: BTreeSet<Var> = [x, y].into();
        let ren = rename_apart(&left, &right, &mut fresh);
        assert_eq!(ren.len(), 1);
        let renamed = ren.apply(&Term::Var(x));
        assert!(matches!(renamed, Term::Var(w) if w.id > 1 && w.sort == s));
        assert!(ren.is_renaming());

        let disjoint = rename_apart(&[x].into(), &[y].into(), &mut fresh);
        assert!(disjoint.is_empty());
        assert!(rename_apart(&BTreeSet::new(), &BTreeSet::new(), &mut fresh).is_empty());
    }

    #[test]
    fn positions_are_preorder() {
        let (_, s, a, _, f, g) = sig();
        let t = Term::App(f, vec![Term::App(g, vec![Term::constant(a)]), v(0, s)]);
        assert_eq!(t.positions(), vec![vec![], vec![0], vec![0, 0]]);
        assert_eq!(t.replace_at(&[0, 0], &v(3, s)).unwrap().subterm_at(&[0, 0]), Some(&v(3, s)));
        assert!(t.replace_at(&[1, 0], &v(3, s)).is_none());
    }

    #[test]
    fn compose_is_sequential_application() {
        let (sig, s, a, _, f, g) = sig();
        let tau = Substitution::from_bindings(&sig, [(Var::new(0, s), Term::App(g, vec![v(1, s)]))]).unwrap();
        let sigma = Substitution::from_bindings(&sig, [(Var::new(1, s), Term::constant(a))]).unwrap();
        let t = Term::App(f, vec![v(0, s), v(1, s)]);
        let comp = Substitution::compose(&sigma, &tau);
        assert_eq!(comp.apply(&t), sigma.apply(&tau.apply(&t)));
    }
}
