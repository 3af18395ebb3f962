mod common;

use hornforge::kernel::{check_script, parse_surface, CheckContext, KernelErrorKind};

use common::load;

fn run(problem: &str, proof: &str) -> Result<(), KernelErrorKind> {
    let p = load(&common::fixture(problem));
    let script = parse_surface(proof, &p.signature).expect("proof parses");
    check_script(&CheckContext::from_problem(&p), &script).map_err(|e| e.kind)
}

#[test]
fn refl_proves_trivial_equation() {
    let p = "(def r (= a a) (refl a)) (theorem qa (= a a) r)";
    assert_eq!(run("unprovable.smt2", p), Ok(()));
}

#[test]
fn trans_of_sym_closes_a_loop() {
    let p = "(theorem t (= b b) (trans (sym ab) ab))";
    assert_eq!(run("unprovable.smt2", p), Ok(()));
}

#[test]
fn trans_with_mismatched_middle() {
    let p = "(theorem t (= a a) (trans ab ab))";
    assert!(matches!(run("unprovable.smt2", p), Err(KernelErrorKind::Endpoints(..))));
}

#[test]
fn sym_of_predicate_atom() {
    let p = "(theorem t (p a) (sym pa))";
    assert!(matches!(run("unprovable.smt2", p), Err(KernelErrorKind::NotEquation(_))));
}

#[test]
fn rewrite_under_predicate() {
    let p = "(theorem t (p b) (rw ab pa (\\h -> (p h))))";
    assert_eq!(run("unprovable.smt2", p), Ok(()));
    let p = "(theorem t (p b) (rw (sym ab) pa (\\h -> (p h))))";
    assert!(run("unprovable.smt2", p).is_err());
}

#[test]
fn modus_ponens_needs_the_premise() {
    let p = "(theorem t (q c) (ap pq (rw ab pa (\\h -> (p h)))))";
    assert_eq!(run("unprovable.smt2", p), Ok(()));
    let p = "(theorem t (q c) (ap pq pa))";
    assert!(matches!(run("unprovable.smt2", p), Err(KernelErrorKind::Mismatch { .. })));
}

#[test]
fn holes_are_incomplete() {
    let p = "(theorem t (q a) (hole (q a)))";
    match run("unprovable.smt2", p) {
        Err(KernelErrorKind::IncompleteProof(h)) => assert_eq!(h.len(), 1),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_hypothesis() {
    let p = "(theorem t (q a) qa-missing)";
    assert!(matches!(run("unprovable.smt2", p), Err(KernelErrorKind::UnknownName(_))));
}

#[test]
fn injectivity_and_clash() {
    let inj = "(def s (= (su a) (su b)) (rw (inst add-ze a) (rw (inst add-su ze a) h (\\h -> (= h (su b)))) \
               (\\h -> (= (su h) (su b))))) (theorem t (= a b) (inj s 0))";
    assert_eq!(run("nat_inject.smt2", inj), Ok(()));
    let bad = "(def s (= (su a) (su b)) (rw (inst add-ze a) (rw (inst add-su ze a) h (\\h -> (= h (su b)))) \
               (\\h -> (= (su h) (su b))))) (theorem t (= a b) (inj s 1))";
    assert!(matches!(run("nat_inject.smt2", bad), Err(KernelErrorKind::Index { .. })));
    let clash = "(def s (= (su (add a a)) ze) (rw (inst add-su a a) h (\\h -> (= h ze)))) (theorem t (even a) (clash s (even a)))";
    assert_eq!(run("nat_distinct.smt2", clash), Ok(()));
}

#[test]
fn forall_instantiation_is_sort_checked() {
    let p = "(theorem t (= (add ze a) a) (inst add-ze a))";
    assert_eq!(run("nat_inject.smt2", p), Ok(()));
    let p = "(theorem t (= (add ze a) a) (inst add-ze a a))";
    assert!(matches!(run("nat_inject.smt2", p), Err(KernelErrorKind::NotUniversal(_))));
}
