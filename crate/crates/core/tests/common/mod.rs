#![allow(dead_code)]

use proptest::prelude::*;

use idealsync::{Acceptor, Alphabet, Semiautomaton, Word};

pub fn ab() -> Alphabet {
    Alphabet::latin(2)
}

pub fn word(s: &str) -> Word {
    ab().parse_word(s, false).unwrap()
}

pub fn semiautomaton(max_states: usize) -> impl Strategy<Value = Semiautomaton> {
    (1..=max_states).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n * 2)
            .prop_map(move |delta| Semiautomaton::new(ab(), n, delta).unwrap())
    })
}

pub fn acceptor(max_states: usize) -> impl Strategy<Value = Acceptor> {
    semiautomaton(max_states).prop_flat_map(|a| {
        let n = a.n_states();
        (Just(a), 0..n, proptest::collection::vec(any::<bool>(), n)).prop_map(|(a, q0, mask)| {
            let finals: Vec<usize> = (0..mask.len()).filter(|&q| mask[q]).collect();
            Acceptor::new(a, q0, &finals).unwrap()
        })
    })
}

pub fn binary_word(max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0..2usize, 0..=max_len).prop_map(Word)
}

pub fn nonempty_word(max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0..2usize, 1..=max_len).prop_map(Word)
}

/// A permutation of `0..n` drawn by shuffling.
pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

pub fn relabel_acceptor(acc: &Acceptor, perm: &[usize]) -> Acceptor {
    let base = acc.base().relabel(perm);
    let finals: Vec<usize> = acc.finals().iter().map(|&q| perm[q]).collect();
    Acceptor::new(base, perm[acc.initial()], &finals).unwrap()
}
