//! Complete deterministic semiautomata and acceptors.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// A state of an automaton; ids are dense, `0..n_states`.
pub type State = usize;

/// A set of states, kept sorted and free of duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(Vec<State>);

impl StateSet {
    pub fn new<I: IntoIterator<Item = State>>(states: I) -> Self {
        let mut v: Vec<State> = states.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        StateSet(v)
    }

    pub fn empty() -> Self {
        StateSet(Vec::new())
    }

    pub fn singleton(q: State) -> Self {
        StateSet(vec![q])
    }

    pub fn full(n: usize) -> Self {
        StateSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, q: State) -> bool {
        self.0.binary_search(&q).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = State> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[State] {
        &self.0
    }

    pub fn is_subset_of(&self, other: &StateSet) -> bool {
        self.0.iter().all(|&q| other.contains(q))
    }

    /// The single member, if this is a singleton.
    pub fn single(&self) -> Option<State> {
        match self.0.as_slice() {
            [q] => Some(*q),
            _ => None,
        }
    }
}

impl FromIterator<State> for StateSet {
    fn from_iter<I: IntoIterator<Item = State>>(iter: I) -> Self {
        StateSet::new(iter)
    }
}

/// A complete deterministic transition system `(Q, Σ, δ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Semiautomaton {
    alphabet: Alphabet,
    n_states: usize,
    // row-major: delta[q * |Σ| + a]
    delta: Vec<State>,
}

impl Semiautomaton {
    /// Builds a semiautomaton from a row-major transition table.
    pub fn new(alphabet: Alphabet, n_states: usize, delta: Vec<State>) -> Result<Self> {
        if n_states == 0 {
            return Err(Error::precondition("an automaton needs at least one state"));
        }
        if delta.len() != n_states * alphabet.len() {
            return Err(Error::precondition("incomplete transition table"));
        }
        if let Some(&bad) = delta.iter().find(|&&t| t >= n_states) {
            return Err(Error::precondition(format!("state {bad} out of range")));
        }
        Ok(Semiautomaton {
            alphabet,
            n_states,
            delta,
        })
    }

    pub fn from_fn(
        alphabet: Alphabet,
        n_states: usize,
        f: impl Fn(State, Letter) -> State,
    ) -> Self {
        let k = alphabet.len();
        let delta = (0..n_states * k).map(|i| f(i / k, i % k)).collect();
        Semiautomaton::new(alphabet, n_states, delta).expect("transition function out of range")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn table(&self) -> &[State] {
        &self.delta
    }

    pub fn states(&self) -> std::ops::Range<State> {
        0..self.n_states
    }

    #[inline]
    pub fn step(&self, q: State, a: Letter) -> State {
        self.delta[q * self.alphabet.len() + a]
    }

    /// `δ(q, u)`, folding left to right.
    ///
    /// Panics if `u` contains a letter outside the alphabet; words coming
    /// from text are validated by [`Alphabet::parse_word`].
    pub fn run(&self, q: State, u: &Word) -> State {
        u.letters().iter().fold(q, |p, &a| self.step(p, a))
    }

    pub fn image_letter(&self, set: &StateSet, a: Letter) -> StateSet {
        set.iter().map(|q| self.step(q, a)).collect()
    }

    /// `H.u = {δ(q, u) | q ∈ H}`.
    pub fn image(&self, set: &StateSet, u: &Word) -> StateSet {
        set.iter().map(|q| self.run(q, u)).collect()
    }

    pub fn full_set(&self) -> StateSet {
        StateSet::full(self.n_states)
    }

    /// States reachable from `from`, as a membership vector.
    pub fn reachable_from(&self, from: State) -> Vec<bool> {
        let mut seen = vec![false; self.n_states];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            for a in self.alphabet.letters() {
                let t = self.step(q, a);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// States from which some state of `targets` is reachable.
    pub fn coreachable(&self, targets: &[bool]) -> Vec<bool> {
        let mut reverse = vec![Vec::new(); self.n_states];
        for q in self.states() {
            for a in self.alphabet.letters() {
                reverse[self.step(q, a)].push(q);
            }
        }
        let mut seen = targets.to_vec();
        let mut queue: VecDeque<State> = self.states().filter(|&q| targets[q]).collect();
        while let Some(q) = queue.pop_front() {
            for &p in &reverse[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// True iff the transition digraph is a single strongly connected component.
    pub fn is_strongly_connected(&self) -> bool {
        let mut root = vec![false; self.n_states];
        root[0] = true;
        self.reachable_from(0).iter().all(|&r| r) && self.coreachable(&root).iter().all(|&r| r)
    }

    /// The sub-automaton on `states` (which must be closed under every
    /// letter), relabelled so that `states[i]` becomes `i`.
    pub fn restrict(&self, states: &[State]) -> Result<Semiautomaton> {
        let mut new_id = vec![usize::MAX; self.n_states];
        for (i, &q) in states.iter().enumerate() {
            new_id[q] = i;
        }
        let mut delta = Vec::with_capacity(states.len() * self.n_letters());
        for &q in states {
            for a in self.alphabet.letters() {
                let t = new_id[self.step(q, a)];
                if t == usize::MAX {
                    return Err(Error::precondition(
                        "state set is not closed under the letters",
                    ));
                }
                delta.push(t);
            }
        }
        Semiautomaton::new(self.alphabet.clone(), states.len(), delta)
    }

    /// Renames state `q` to `perm[q]`.
    pub fn relabel(&self, perm: &[State]) -> Semiautomaton {
        let mut inv = vec![0; self.n_states];
        for (q, &p) in perm.iter().enumerate() {
            inv[p] = q;
        }
        Semiautomaton::from_fn(self.alphabet.clone(), self.n_states, |p, a| {
            perm[self.step(inv[p], a)]
        })
    }

    pub fn with_acceptance(self, initial: State, finals: &[State]) -> Result<Acceptor> {
        Acceptor::new(self, initial, finals)
    }
}

/// A semiautomaton with an initial state and a set of final states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Acceptor {
    base: Semiautomaton,
    initial: State,
    finals: Vec<bool>,
}

impl Acceptor {
    pub fn new(base: Semiautomaton, initial: State, finals: &[State]) -> Result<Self> {
        let n = base.n_states();
        if initial >= n {
            return Err(Error::precondition(format!(
                "initial state {initial} out of range"
            )));
        }
        let mut mask = vec![false; n];
        for &f in finals {
            if f >= n {
                return Err(Error::precondition(format!("final state {f} out of range")));
            }
            mask[f] = true;
        }
        Ok(Acceptor {
            base,
            initial,
            finals: mask,
        })
    }

    pub(crate) fn from_mask(base: Semiautomaton, initial: State, finals: Vec<bool>) -> Self {
        debug_assert!(initial < base.n_states() && finals.len() == base.n_states());
        Acceptor {
            base,
            initial,
            finals,
        }
    }

    pub fn base(&self) -> &Semiautomaton {
        &self.base
    }

    pub fn into_base(self) -> Semiautomaton {
        self.base
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.base.alphabet()
    }

    pub fn n_states(&self) -> usize {
        self.base.n_states()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn is_final(&self, q: State) -> bool {
        self.finals[q]
    }

    pub fn final_mask(&self) -> &[bool] {
        &self.finals
    }

    pub fn finals(&self) -> Vec<State> {
        self.base.states().filter(|&q| self.finals[q]).collect()
    }

    pub fn accepts(&self, u: &Word) -> bool {
        self.finals[self.base.run(self.initial, u)]
    }

    pub fn with_initial(&self, initial: State) -> Acceptor {
        assert!(initial < self.n_states());
        Acceptor {
            initial,
            ..self.clone()
        }
    }

    pub fn with_final_mask(&self, finals: Vec<bool>) -> Acceptor {
        assert_eq!(finals.len(), self.n_states());
        Acceptor {
            finals,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_state() -> Semiautomaton {
        // 0 -a-> 1, 0 -b-> 0, 1 -a,b-> 1
        Semiautomaton::new(Alphabet::latin(2), 2, vec![1, 0, 1, 1]).unwrap()
    }

    #[test]
    fn run_and_image() {
        let a = two_state();
        assert_eq!(a.run(0, &Word::empty()), 0);
        assert_eq!(a.run(0, &Word(vec![1, 1, 0])), 1);
        let q = a.full_set();
        assert_eq!(a.image(&q, &Word(vec![0])), StateSet::singleton(1));
        assert_eq!(a.image(&q, &Word(vec![1])), q);
    }

    #[test]
    fn strong_connectivity() {
        assert!(!two_state().is_strongly_connected());
        let one = Semiautomaton::new(Alphabet::latin(1), 1, vec![0]).unwrap();
        assert!(one.is_strongly_connected());
        let frozen = Semiautomaton::new(Alphabet::latin(2), 2, vec![0, 0, 1, 1]).unwrap();
        assert!(!frozen.is_strongly_connected());
        let cycle = Semiautomaton::new(Alphabet::latin(1), 3, vec![1, 2, 0]).unwrap();
        assert!(cycle.is_strongly_connected());
    }

    #[test]
    fn validation() {
        assert!(Semiautomaton::new(Alphabet::latin(2), 2, vec![1, 0, 1]).is_err());
        assert!(Semiautomaton::new(Alphabet::latin(2), 2, vec![1, 0, 1, 2]).is_err());
        assert!(Acceptor::new(two_state(), 2, &[]).is_err());
        assert!(Acceptor::new(two_state(), 0, &[5]).is_err());
    }

    #[test]
    fn accepts_words_containing_a() {
        let acc = two_state().with_acceptance(0, &[1]).unwrap();
        for u in Word::all_up_to(2, 3) {
            assert_eq!(acc.accepts(&u), u.letters().contains(&0), "{u:?}");
        }
    }

    #[test]
    fn relabel_preserves_structure() {
        let a = two_state();
        let b = a.relabel(&[1, 0]);
        assert_eq!(b.step(1, 0), 0);
        assert_eq!(b.step(0, 1), 0);
    }
}
