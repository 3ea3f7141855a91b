mod common;

use std::collections::HashSet;

use proptest::prelude::*;

use common::{ab, nonempty_word, word};
use idealsync::aw::build_aw;
use idealsync::syntactic::{
    literal_formula, syntactic_complexity, transition_semigroup, word_classes, Transformation,
};
use idealsync::{Limits, Word};

// Semigroup size by closing the set of transformations of all words up to
// a length, until a length adds nothing new.
fn semigroup_size_by_words(w: &Word) -> usize {
    let acc = build_aw(w, &ab()).unwrap();
    let mut seen = HashSet::new();
    for len in 1.. {
        let before = seen.len();
        for u in Word::all_of_length(2, len) {
            seen.insert(Transformation::of_word(acc.base(), &u));
        }
        if seen.len() == before {
            return seen.len();
        }
    }
    unreachable!()
}

proptest! {
    #[test]
    fn semigroup_matches_word_closure(w in nonempty_word(5)) {
        let sg = transition_semigroup(&build_aw(&w, &ab()).unwrap(), &Limits::default()).unwrap();
        prop_assert_eq!(sg.len(), semigroup_size_by_words(&w));
        for (t, u) in sg.elements.iter().zip(&sg.witnesses) {
            prop_assert_eq!(&Transformation::of_word(sg.acceptor.base(), u), t);
        }
    }

    #[test]
    fn formula_matches_semigroup(w in nonempty_word(7)) {
        let r = syntactic_complexity(&w, &ab(), &Limits::default()).unwrap();
        prop_assert!(r.matches, "{:?}", r);
    }

    #[test]
    fn constants_and_class_members(w in nonempty_word(6)) {
        let acc = build_aw(&w, &ab()).unwrap();
        let sg = transition_semigroup(&acc, &Limits::default()).unwrap();
        let n = w.len();
        prop_assert_eq!(sg.elements.iter().filter(|t| t.is_constant()).count(), n + 1);

        let classes = word_classes(&w, &ab()).unwrap();
        let members: Vec<&Word> = classes
            .pref
            .difference(&classes.pref_syn_adjusted)
            .chain(&classes.fact)
            .chain(&classes.suff)
            .collect();
        let maps: Vec<Transformation> =
            members.iter().map(|u| Transformation::of_word(acc.base(), u)).collect();
        let distinct: HashSet<&Transformation> = maps.iter().collect();
        prop_assert_eq!(distinct.len(), maps.len());
        prop_assert!(maps.iter().all(|t| !t.is_constant()));
    }
}

#[test]
fn small_words() {
    let limits = Limits::default();
    for (w, size) in [("ab", 4), ("aba", 7)] {
        let r = syntactic_complexity(&word(w), &ab(), &limits).unwrap();
        assert_eq!((r.formula, r.oracle), (size, size));
        assert_eq!(literal_formula(&word(w), &ab()).unwrap(), size - 1);
    }
}
