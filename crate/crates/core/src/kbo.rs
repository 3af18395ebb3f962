//! Knuth–Bendix ordering with unit weights. Precedence follows declaration order:
//! a symbol declared later is greater.

use std::cmp::Ordering;

use crate::term::Term;

/// `Some(Greater)` when `s > t`, `Some(Less)` when `t > s`, `Some(Equal)` when
/// they are identical, `None` when incomparable.
pub fn compare(s: &Term, t: &Term) -> Option<Ordering> {
    if s == t {
        Some(Ordering::Equal)
    } else if greater(s, t) {
        Some(Ordering::Greater)
    } else if greater(t, s) {
        Some(Ordering::Less)
    } else {
        None
    }
}

pub fn greater(s: &Term, t: &Term) -> bool {
    let mut balance: Vec<(u32, i32)> = Vec::new();
    let ws = tally(s, 1, &mut balance);
    let wt = tally(t, -1, &mut balance);
    if balance.iter().any(|&(_, n)| n < 0) {
        return false;
    }
    match (s, t) {
        (Term::Var(_), _) => false,
        (Term::App(..), Term::Var(v)) => s.occurs(*v),
        (Term::App(f, sa), Term::App(g, ta)) => {
            if ws != wt {
                return ws > wt;
            }
            match f.cmp(g) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => match sa.iter().zip(ta).find(|(a, b)| a != b) {
                    Some((a, b)) => greater(a, b),
                    None => false,
                },
            }
        }
    }
}

/// Weight of `t`; adds `delta` per variable occurrence to `acc`.
fn tally(t: &Term, delta: i32, acc: &mut Vec<(u32, i32)>) -> usize {
    match t {
        Term::Var(v) => {
            match acc.iter_mut().find(|(id, _)| *id == v.id) {
                Some((_, n)) => *n += delta,
                None => acc.push((v.id, delta)),
            }
            1
        }
        Term::App(_, args) => 1 + args.iter().map(|a| tally(a, delta, acc)).sum::<usize>(),
    }
}
