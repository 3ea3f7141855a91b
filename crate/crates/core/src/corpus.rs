//! Seeded test corpora.
//!
//! All random corpora draw from `ChaCha8Rng::seed_from_u64(seed)`, so a seed
//! fixes the corpus across platforms.

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Acceptor, Semiautomaton};
use crate::constants::sink;
use crate::lang::Language;
use crate::synchro::{is_synchronizing, semiautomaton_at, table_count};
use crate::word::Alphabet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random complete table.
pub fn random_semiautomaton(rng: &mut impl Rng, n: usize, alphabet: &Alphabet) -> Semiautomaton {
    let delta = (0..n * alphabet.len())
        .map(|_| rng.gen_range(0..n))
        .collect();
    Semiautomaton::new(alphabet.clone(), n, delta).expect("entries are in range")
}

/// `count` strongly connected synchronizing automata with 2..=`max_states`
/// states, by rejection sampling.
pub fn random_scs(
    seed: u64,
    count: usize,
    max_states: usize,
    alphabet: &Alphabet,
) -> Vec<Semiautomaton> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(2..=max_states);
        let a = random_semiautomaton(&mut rng, n, alphabet);
        if a.is_strongly_connected() && is_synchronizing(&a) {
            out.push(a);
        }
    }
    out
}

/// `count` random languages whose minimal acceptor has exactly `n` states.
pub fn random_minimal(seed: u64, count: usize, n: usize, alphabet: &Alphabet) -> Vec<Language> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let semi = random_semiautomaton(&mut rng, n, alphabet);
        let initial = rng.gen_range(0..n);
        let finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let acc = Acceptor::new(semi, initial, &finals).expect("states are in range");
        let lang = Language::from_acceptor(&acc);
        if lang.acceptor().n_states() == n {
            out.push(lang);
        }
    }
    out
}

/// Every language whose minimal acceptor has exactly `n` states, over
/// `alphabet`, listed once each in table order.
pub fn all_minimal(n: usize, alphabet: &Alphabet) -> Vec<Language> {
    let total = table_count(n, alphabet.len(), usize::MAX).expect("small instance");
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 0..total {
        let semi = semiautomaton_at(n, alphabet, i);
        for initial in 0..n {
            for mask in 0..1u32 << n {
                let finals: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 1).collect();
                let acc =
                    Acceptor::new(semi.clone(), initial, &finals).expect("states are in range");
                let lang = Language::from_acceptor(&acc);
                if lang.acceptor().n_states() == n && seen.insert(lang.clone()) {
                    out.push(lang);
                }
            }
        }
    }
    out
}

/// [`all_minimal`] restricted to acceptors with a non-accepting sink.
pub fn all_minimal_with_sink(n: usize, alphabet: &Alphabet) -> Vec<Language> {
    all_minimal(n, alphabet)
        .into_iter()
        .filter(|l| sink(l).is_some())
        .collect()
}
