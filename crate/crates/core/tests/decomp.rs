mod common;

use std::collections::HashSet;

use proptest::prelude::*;

use common::{ab, binary_word, word};
use idealsync::aw::{suffix_prefix_match, FailureTable};
use idealsync::congruence::check_homomorphism;
use idealsync::corpus::random_scs;
use idealsync::decomp::{
    automaton_of_decomposition, extract_decomposition, verify_decomposition, Decomposition,
};
use idealsync::isomorphism::is_isomorphic;
use idealsync::lift::{lift, verify_lift};
use idealsync::synchro::{cerny_automaton, is_synchronizing, syn_language};
use idealsync::{Language, Limits, Semiautomaton};

fn corpus() -> Vec<Semiautomaton> {
    random_scs(11, 40, 5, &ab())
}

#[test]
fn extracted_parts_partition_the_reset_words() {
    let limits = Limits::default();
    for a in corpus() {
        let d = extract_decomposition(&a, &limits).unwrap();
        assert_eq!(d.len(), a.n_states());
        assert!(d.parts().iter().all(|p| !p.is_empty()));
        assert_eq!(d.union().unwrap(), syn_language(&a, &limits).unwrap());
        let report = verify_decomposition(&d, &limits).unwrap();
        assert!(report.passed(), "{:?}", report.checks);
        let back = automaton_of_decomposition(&d).unwrap();
        assert!(is_isomorphic(&back, &a).unwrap());
        assert_eq!(syn_language(&back, &limits).unwrap(), d.union().unwrap());
    }
}

#[test]
fn dropping_a_part_breaks_completeness() {
    let limits = Limits::default();
    let d = extract_decomposition(&cerny_automaton(3).unwrap(), &limits).unwrap();
    let smaller = d.without(0).unwrap();
    assert!(!verify_decomposition(&smaller, &limits).unwrap().passed());
    assert!(Decomposition::new(Vec::new()).is_err());
}

#[test]
fn merged_parts_fail_letter_closure() {
    let limits = Limits::default();
    let d = extract_decomposition(&cerny_automaton(3).unwrap(), &limits).unwrap();
    let merged = d.parts()[0].union(&d.parts()[1]).unwrap();
    let coarse = Decomposition::new(vec![merged, d.parts()[2].clone()]).unwrap();
    let report = verify_decomposition(&coarse, &limits).unwrap();
    assert!(report.checks.iter().any(|c| !c.passed));
}

#[test]
fn lifts_verify_on_the_corpus() {
    let limits = Limits::default();
    for a in corpus() {
        let r = lift(&a, &limits).unwrap();
        let (n, m) = (a.n_states(), r.word.len());
        let b = r.b.base();
        assert!(b.n_states() <= n * (m + 1));
        assert!(check_homomorphism(&r.phi, b, &a).unwrap().homomorphism);
        let covered: HashSet<usize> = r.phi.images.iter().copied().collect();
        assert_eq!(covered.len(), n);
        let report = verify_lift(&a, &r, &limits).unwrap();
        assert!(report.passed(), "{:?}", report.checks);
    }
}

proptest! {
    #[test]
    fn lifted_labels_follow_reset_words(seed in 0u64..50, tail in binary_word(7)) {
        let a = &random_scs(seed, 1, 5, &ab())[0];
        prop_assume!(is_synchronizing(a));
        let r = lift(a, &Limits::default()).unwrap();
        let w = &r.word;
        let reset = w.concat(&tail);
        let reached = r.b.base().run(r.b.initial(), &tail);
        let state = a.image(&a.full_set(), &reset).single().unwrap();
        let overlap = suffix_prefix_match(&reset, w).len();
        prop_assert_eq!(r.labels[reached], (state, overlap));
        prop_assert_eq!(FailureTable::new(w).run(w.len(), &tail), overlap);
        prop_assert_eq!(r.phi.images[reached], state);
    }
}

#[test]
fn lift_of_prefix_automaton() {
    let limits = Limits::default();
    let a = Language::principal_ideal(&word("ab"), &ab())
        .unwrap()
        .acceptor()
        .base()
        .clone();
    assert!(!a.is_strongly_connected());
    assert!(lift(&a, &limits).is_err());
}
