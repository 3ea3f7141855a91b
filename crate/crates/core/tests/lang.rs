mod common;

use proptest::prelude::*;

use common::{ab, acceptor, binary_word, semiautomaton, word};
use idealsync::aw::build_aw;
use idealsync::lang::BoolOp;
use idealsync::synchro::{cerny_automaton, syn_language};
use idealsync::{Language, Limits, Word};

proptest! {
    #[test]
    fn combine_matches_membership(x in acceptor(4), y in acceptor(4)) {
        let (l1, l2) = (Language::from_acceptor(&x), Language::from_acceptor(&y));
        let ops = [BoolOp::Intersection, BoolOp::Union, BoolOp::Difference];
        let combined: Vec<Language> = ops.iter().map(|&op| l1.combine(&l2, op).unwrap()).collect();
        let complement = l1.complement();
        for u in Word::all_up_to(2, 5) {
            let (p, q) = (x.accepts(&u), y.accepts(&u));
            prop_assert_eq!(combined[0].contains(&u), p && q);
            prop_assert_eq!(combined[1].contains(&u), p || q);
            prop_assert_eq!(combined[2].contains(&u), p && !q);
            prop_assert_eq!(complement.contains(&u), !p);
        }
    }

    #[test]
    fn equality_is_mutual_inclusion(x in acceptor(3), y in acceptor(3)) {
        let (l1, l2) = (Language::from_acceptor(&x), Language::from_acceptor(&y));
        let both = l1.includes(&l2).unwrap() && l2.includes(&l1).unwrap();
        prop_assert_eq!(l1.equals(&l2).unwrap(), both);
        prop_assert_eq!(l1 == l2, both);
    }

    #[test]
    fn reset_words_form_a_two_sided_ideal(a in semiautomaton(5)) {
        let limits = Limits::default();
        let syn = syn_language(&a, &limits).unwrap();
        if !syn.is_empty() {
            let kind = syn.ideal_kind(&limits).unwrap();
            prop_assert!(kind.two_sided);
        }
    }

    #[test]
    fn quotient_of_left_principal_is_prefix_language(w in proptest::collection::vec(0..2usize, 1..=6)) {
        let w = Word(w);
        let left = Language::left_principal(&w, &ab()).unwrap();
        let aw = Language::from_acceptor(&build_aw(&w, &ab()).unwrap());
        prop_assert_eq!(left.left_quotient(&w), aw);
    }

    #[test]
    fn quotients_match_membership(x in acceptor(4), w in binary_word(3)) {
        let l = Language::from_acceptor(&x);
        let (left, right) = (l.left_quotient(&w), l.right_quotient(&w));
        for u in Word::all_up_to(2, 4) {
            prop_assert_eq!(left.contains(&u), x.accepts(&w.concat(&u)));
            prop_assert_eq!(right.contains(&u), x.accepts(&u.concat(&w)));
        }
    }

    #[test]
    fn closures_match_membership(x in acceptor(3)) {
        let limits = Limits::default();
        let l = Language::from_acceptor(&x);
        let pre = l.prepend_closure(&limits).unwrap();
        let post = l.append_closure();
        for u in Word::all_up_to(2, 5) {
            let n = u.len();
            prop_assert_eq!(pre.contains(&u), (0..=n).any(|i| x.accepts(&u.suffix(n - i))));
            prop_assert_eq!(post.contains(&u), (0..=n).any(|i| x.accepts(&u.prefix(i))));
        }
    }
}

#[test]
fn cerny_four_resets_at_nine() {
    let syn = syn_language(&cerny_automaton(4).unwrap(), &Limits::default()).unwrap();
    let shortest = syn.shortest_word().unwrap();
    assert_eq!(shortest.len(), 9);
    assert!(Word::all_up_to(2, 8).all(|u| !syn.contains(&u)));
}

#[test]
fn right_quotient_of_suffix_language() {
    let l = Language::left_principal(&word("ab"), &ab()).unwrap();
    let q = l.right_quotient(&word("ab"));
    assert!(q.contains(&Word::empty()));
    assert!(q.contains(&word("a")));
    assert!(q.contains(&word("bab")));
    assert_eq!(q, Language::universal(&ab()));
}

#[test]
fn principal_ideal_kind() {
    let limits = Limits::default();
    let ideal = Language::principal_ideal(&word("aba"), &ab()).unwrap();
    let kind = ideal.ideal_kind(&limits).unwrap();
    assert!(kind.left && kind.right && kind.two_sided);
    let left = Language::left_principal(&word("aba"), &ab()).unwrap();
    let kind = left.ideal_kind(&limits).unwrap();
    assert!(kind.left && !kind.right);
    assert!(!Language::empty(&ab()).ideal_kind(&limits).unwrap().left);
}

#[test]
fn finiteness() {
    let single = Language::singleton(&word("abb"), &ab()).unwrap();
    assert!(single.is_finite());
    assert_eq!(single.max_length(), Some(3));
    assert!(!Language::universal(&ab()).is_finite());
    assert_eq!(Language::empty(&ab()).shortest_word(), None);
}
