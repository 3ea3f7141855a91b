//! Isomorphism tests by synchronized breadth-first relabelling.

use std::collections::VecDeque;

use crate::automaton::{Acceptor, Semiautomaton, State};
use crate::error::{Error, Result};

struct Matcher<'a> {
    a: &'a Semiautomaton,
    b: &'a Semiautomaton,
    finals: Option<(&'a [bool], &'a [bool])>,
}

impl Matcher<'_> {
    // Propagates a root pairing along every letter. Returns false on a clash.
    fn anchor(
        &self,
        fwd: &mut [Option<State>],
        bwd: &mut [Option<State>],
        x: State,
        y: State,
    ) -> bool {
        if !self.assign(fwd, bwd, x, y) {
            return false;
        }
        let mut queue = VecDeque::from([(x, y)]);
        while let Some((p, q)) = queue.pop_front() {
            for l in self.a.alphabet().letters() {
                let (s, t) = (self.a.step(p, l), self.b.step(q, l));
                match fwd[s] {
                    Some(img) if img == t => {}
                    Some(_) => return false,
                    None => {
                        if !self.assign(fwd, bwd, s, t) {
                            return false;
                        }
                        queue.push_back((s, t));
                    }
                }
            }
        }
        true
    }

    fn assign(
        &self,
        fwd: &mut [Option<State>],
        bwd: &mut [Option<State>],
        x: State,
        y: State,
    ) -> bool {
        if bwd[y].is_some() || fwd[x].is_some() {
            return fwd[x] == Some(y) && bwd[y] == Some(x);
        }
        if let Some((fa, fb)) = self.finals {
            if fa[x] != fb[y] {
                return false;
            }
        }
        fwd[x] = Some(y);
        bwd[y] = Some(x);
        true
    }

    fn search(&self, fwd: &[Option<State>], bwd: &[Option<State>]) -> Option<Vec<State>> {
        let Some(x) = fwd.iter().position(Option::is_none) else {
            return Some(fwd.iter().map(|s| s.expect("complete")).collect());
        };
        for y in self.b.states().filter(|&y| bwd[y].is_none()) {
            let (mut f, mut g) = (fwd.to_vec(), bwd.to_vec());
            if self.anchor(&mut f, &mut g, x, y) {
                if let Some(found) = self.search(&f, &g) {
                    return Some(found);
                }
            }
        }
        None
    }
}

/// An isomorphism `A → B` as a state map, if one exists. Each unmatched
/// state of `A` is tried against every free state of `B` as a root anchor.
pub fn find_isomorphism(a: &Semiautomaton, b: &Semiautomaton) -> Result<Option<Vec<State>>> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if a.n_states() != b.n_states() {
        return Ok(None);
    }
    let m = Matcher { a, b, finals: None };
    let n = a.n_states();
    Ok(m.search(&vec![None; n], &vec![None; n]))
}

pub fn is_isomorphic(a: &Semiautomaton, b: &Semiautomaton) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// Acceptor isomorphism: initial states are the forced root pair and
/// finality must be preserved.
pub fn is_isomorphic_acceptor(a: &Acceptor, b: &Acceptor) -> Result<bool> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if a.n_states() != b.n_states() {
        return Ok(false);
    }
    let m = Matcher {
        a: a.base(),
        b: b.base(),
        finals: Some((a.final_mask(), b.final_mask())),
    };
    let n = a.n_states();
    let (mut f, mut g) = (vec![None; n], vec![None; n]);
    if !m.anchor(&mut f, &mut g, a.initial(), b.initial()) {
        return Ok(false);
    }
    Ok(m.search(&f, &g).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    #[test]
    fn relabelled_automata_are_isomorphic() {
        let a = Semiautomaton::new(Alphabet::latin(2), 4, vec![1, 0, 2, 1, 3, 2, 0, 3]).unwrap();
        let b = a.relabel(&[3, 1, 0, 2]);
        let iso = find_isomorphism(&a, &b).unwrap().unwrap();
        for q in a.states() {
            for l in 0..2 {
                assert_eq!(iso[a.step(q, l)], b.step(iso[q], l));
            }
        }
    }

    #[test]
    fn disconnected_components() {
        // two 1-cycles and a 2-cycle versus a 2-cycle and two 1-cycles
        let a = Semiautomaton::new(Alphabet::latin(1), 4, vec![0, 1, 3, 2]).unwrap();
        let b = Semiautomaton::new(Alphabet::latin(1), 4, vec![1, 0, 2, 3]).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
        let c = Semiautomaton::new(Alphabet::latin(1), 4, vec![1, 0, 3, 2]).unwrap();
        assert!(!is_isomorphic(&a, &c).unwrap());
    }

    #[test]
    fn acceptor_roots_are_initial_states() {
        let semi = Semiautomaton::new(Alphabet::latin(1), 2, vec![1, 0]).unwrap();
        let x = semi.clone().with_acceptance(0, &[0]).unwrap();
        let y = semi.clone().with_acceptance(1, &[1]).unwrap();
        let z = semi.with_acceptance(0, &[1]).unwrap();
        assert!(is_isomorphic_acceptor(&x, &y).unwrap());
        assert!(!is_isomorphic_acceptor(&x, &z).unwrap());
    }
}
