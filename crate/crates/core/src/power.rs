//! On-the-fly subset constructions.
//!
//! Configurations are explored breadth-first from a start set and letters
//! are tried in alphabet order, so the first path found to any
//! configuration is the shortlex-least word reaching it.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::automaton::{Acceptor, Semiautomaton, StateSet};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// The reachable part of a subset construction: configuration `i` is
/// state `i` of `semi`, and configuration 0 is the start set.
#[derive(Debug, Clone)]
pub struct SubsetAutomaton {
    pub configs: Vec<StateSet>,
    pub semi: Semiautomaton,
}

impl SubsetAutomaton {
    /// An acceptor started at the start configuration.
    pub fn acceptor(&self, accept: impl Fn(&StateSet) -> bool) -> Acceptor {
        let finals = self.configs.iter().map(accept).collect();
        Acceptor::from_mask(self.semi.clone(), 0, finals)
    }
}

fn cap_error(cap: usize) -> Error {
    Error::Budget {
        what: "subset construction",
        limit: cap,
    }
}

/// Explores the configurations reachable from `start` under `step`.
pub fn explore<F>(
    alphabet: &Alphabet,
    start: StateSet,
    step: F,
    cap: usize,
) -> Result<SubsetAutomaton>
where
    F: Fn(&StateSet, Letter) -> StateSet,
{
    let k = alphabet.len();
    let mut ids: HashMap<StateSet, usize> = HashMap::from([(start.clone(), 0)]);
    let mut configs = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < configs.len() {
        for a in 0..k {
            let next = step(&configs[i], a);
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if configs.len() >= cap {
                        return Err(cap_error(cap));
                    }
                    let id = configs.len();
                    ids.insert(next.clone(), id);
                    configs.push(next);
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let semi = Semiautomaton::new(alphabet.clone(), configs.len(), delta)
        .expect("subset table is complete");
    Ok(SubsetAutomaton { configs, semi })
}

/// The power automaton of `a` restricted to configurations reachable from `start`.
pub fn power_from(a: &Semiautomaton, start: StateSet, cap: usize) -> Result<SubsetAutomaton> {
    explore(a.alphabet(), start, |s, l| a.image_letter(s, l), cap)
}

/// Shortlex-least word `u` with `goal(start.u)`, searching words of length
/// at most `max_len` when given.
pub fn shortest_word_to<G>(
    a: &Semiautomaton,
    start: StateSet,
    goal: G,
    max_len: Option<usize>,
    cap: usize,
) -> Result<Option<Word>>
where
    G: Fn(&StateSet) -> bool,
{
    if goal(&start) {
        return Ok(Some(Word::empty()));
    }
    // parent links: (parent index, letter)
    let mut nodes: Vec<(StateSet, usize, Letter, usize)> = vec![(start.clone(), usize::MAX, 0, 0)];
    let mut seen: HashSet<StateSet> = HashSet::from([start]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let depth = nodes[i].3;
        if max_len.is_some_and(|m| depth >= m) {
            continue;
        }
        for l in a.alphabet().letters() {
            let next = a.image_letter(&nodes[i].0, l);
            if seen.contains(&next) {
                continue;
            }
            if nodes.len() >= cap {
                return Err(cap_error(cap));
            }
            let hit = goal(&next);
            seen.insert(next.clone());
            nodes.push((next, i, l, depth + 1));
            let j = nodes.len() - 1;
            if hit {
                let mut letters = Vec::with_capacity(depth + 1);
                let mut cur = j;
                while nodes[cur].1 != usize::MAX {
                    letters.push(nodes[cur].2);
                    cur = nodes[cur].1;
                }
                letters.reverse();
                return Ok(Some(Word(letters)));
            }
            queue.push_back(j);
        }
    }
    Ok(None)
}
