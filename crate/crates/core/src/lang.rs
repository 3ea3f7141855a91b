//! Regular languages as canonical minimal acceptors.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::automaton::{Acceptor, Semiautomaton, State, StateSet};
use crate::aw::FailureTable;
use crate::error::{Error, Result};
use crate::minimize::minimize;
use crate::power;
use crate::word::{Alphabet, Word};
use crate::Limits;

/// Boolean combination used by [`Language::combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    Intersection,
    Union,
    Difference,
}

impl BoolOp {
    fn apply(self, x: bool, y: bool) -> bool {
        match self {
            BoolOp::Intersection => x && y,
            BoolOp::Union => x || y,
            BoolOp::Difference => x && !y,
        }
    }
}

/// Which ideal properties a language has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdealKind {
    pub left: bool,
    pub right: bool,
    pub two_sided: bool,
}

/// A regular language, held as its canonical minimal acceptor. Two handles
/// over the same alphabet are equal iff they denote the same language.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Language {
    acc: Acceptor,
}

impl Language {
    pub fn from_acceptor(acc: &Acceptor) -> Self {
        Language { acc: minimize(acc) }
    }

    pub fn acceptor(&self) -> &Acceptor {
        &self.acc
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.acc.alphabet()
    }

    pub fn contains(&self, u: &Word) -> bool {
        self.acc.accepts(u)
    }

    /// Σ*.
    pub fn universal(alphabet: &Alphabet) -> Self {
        let semi = Semiautomaton::from_fn(alphabet.clone(), 1, |_, _| 0);
        Language {
            acc: Acceptor::from_mask(semi, 0, vec![true]),
        }
    }

    /// The empty language.
    pub fn empty(alphabet: &Alphabet) -> Self {
        Language::universal(alphabet).complement()
    }

    /// `{w}`.
    pub fn singleton(word: &Word, alphabet: &Alphabet) -> Result<Self> {
        alphabet.check_word(word)?;
        let n = word.len();
        // states 0..=n track the matched prefix, n + 1 is the sink
        let semi = Semiautomaton::from_fn(alphabet.clone(), n + 2, |q, a| {
            if q < n && word.letters()[q] == a {
                q + 1
            } else {
                n + 1
            }
        });
        Ok(Language::from_acceptor(&Acceptor::new(semi, 0, &[n])?))
    }

    fn same_alphabet(&self, other: &Language) -> Result<()> {
        if self.alphabet() == other.alphabet() {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    /// Product construction followed by canonical minimization.
    pub fn combine(&self, other: &Language, op: BoolOp) -> Result<Language> {
        self.same_alphabet(other)?;
        let (a, b) = (self.acc.base(), other.acc.base());
        let k = a.n_letters();
        let start = (self.acc.initial(), other.acc.initial());
        let mut ids: HashMap<(State, State), usize> = HashMap::from([(start, 0)]);
        let mut pairs = vec![start];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for l in 0..k {
                let next = (a.step(p, l), b.step(q, l));
                let id = *ids.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                delta.push(id);
            }
            i += 1;
        }
        let finals = pairs
            .iter()
            .map(|&(p, q)| op.apply(self.acc.is_final(p), other.acc.is_final(q)))
            .collect();
        let semi = Semiautomaton::new(self.alphabet().clone(), pairs.len(), delta)?;
        Ok(Language::from_acceptor(&Acceptor::from_mask(
            semi, 0, finals,
        )))
    }

    pub fn intersection(&self, other: &Language) -> Result<Language> {
        self.combine(other, BoolOp::Intersection)
    }

    pub fn union(&self, other: &Language) -> Result<Language> {
        self.combine(other, BoolOp::Union)
    }

    pub fn difference(&self, other: &Language) -> Result<Language> {
        self.combine(other, BoolOp::Difference)
    }

    pub fn complement(&self) -> Language {
        let flipped = self.acc.final_mask().iter().map(|f| !f).collect();
        // minimality and the canonical numbering survive flipping finals
        Language {
            acc: self.acc.with_final_mask(flipped),
        }
    }

    /// True iff `other ⊆ self`.
    pub fn includes(&self, other: &Language) -> Result<bool> {
        Ok(other.difference(self)?.is_empty())
    }

    pub fn equals(&self, other: &Language) -> Result<bool> {
        self.same_alphabet(other)?;
        Ok(self == other)
    }

    pub fn is_empty(&self) -> bool {
        !self.acc.final_mask().iter().any(|&f| f)
    }

    /// True iff no cycle of the trimmed acceptor lies on an accepting path.
    pub fn is_finite(&self) -> bool {
        let base = self.acc.base();
        let useful = base.coreachable(self.acc.final_mask());
        // Kahn's algorithm on the useful subgraph; leftovers mean a cycle
        let mut indegree = vec![0usize; base.n_states()];
        for q in base.states().filter(|&q| useful[q]) {
            for l in base.alphabet().letters() {
                let t = base.step(q, l);
                if useful[t] {
                    indegree[t] += 1;
                }
            }
        }
        let mut queue: VecDeque<State> = base
            .states()
            .filter(|&q| useful[q] && indegree[q] == 0)
            .collect();
        let mut removed = 0;
        while let Some(q) = queue.pop_front() {
            removed += 1;
            for l in base.alphabet().letters() {
                let t = base.step(q, l);
                if useful[t] {
                    indegree[t] -= 1;
                    if indegree[t] == 0 {
                        queue.push_back(t);
                    }
                }
            }
        }
        removed == useful.iter().filter(|&&u| u).count()
    }

    /// Length of the longest word, or `None` when the language is
    /// infinite. The empty language reports `Some(0)`.
    pub fn max_length(&self) -> Option<usize> {
        if !self.is_finite() {
            return None;
        }
        let base = self.acc.base();
        let useful = base.coreachable(self.acc.final_mask());
        // longest accepting path in the (acyclic) useful subgraph
        let mut memo: Vec<Option<usize>> = vec![None; base.n_states()];
        fn longest(
            q: State,
            acc: &Acceptor,
            useful: &[bool],
            memo: &mut Vec<Option<usize>>,
        ) -> usize {
            if let Some(v) = memo[q] {
                return v;
            }
            let base = acc.base();
            let mut best = 0;
            for a in base.alphabet().letters() {
                let t = base.step(q, a);
                if useful[t] {
                    best = best.max(1 + longest(t, acc, useful, memo));
                }
            }
            memo[q] = Some(best);
            best
        }
        if !useful[self.acc.initial()] {
            return Some(0);
        }
        Some(longest(self.acc.initial(), &self.acc, &useful, &mut memo))
    }

    /// The shortlex-least word of the language, if any.
    pub fn shortest_word(&self) -> Option<Word> {
        let base = self.acc.base();
        let start = StateSet::singleton(self.acc.initial());
        power::shortest_word_to(
            base,
            start,
            |s| self.acc.is_final(s.as_slice()[0]),
            None,
            usize::MAX,
        )
        .expect("uncapped search")
    }

    /// `w⁻¹L = {v : wv ∈ L}`.
    pub fn left_quotient(&self, w: &Word) -> Language {
        let q = self.acc.base().run(self.acc.initial(), w);
        Language::from_acceptor(&self.acc.with_initial(q))
    }

    /// `Lw⁻¹ = {v : vw ∈ L}`.
    pub fn right_quotient(&self, w: &Word) -> Language {
        let base = self.acc.base();
        let finals = base
            .states()
            .map(|q| self.acc.is_final(base.run(q, w)))
            .collect();
        Language::from_acceptor(&self.acc.with_final_mask(finals))
    }

    // Tracks the states reached by runs started at every position
    // (from position 1 on when `proper`).
    fn prefixed(&self, proper: bool, limits: &Limits) -> Result<Language> {
        let base = self.acc.base();
        let q0 = self.acc.initial();
        let start = if proper {
            StateSet::empty()
        } else {
            StateSet::singleton(q0)
        };
        let sub = power::explore(
            base.alphabet(),
            start,
            |s, a| s.iter().map(|q| base.step(q, a)).chain([q0]).collect(),
            limits.subset_cap,
        )?;
        Ok(Language::from_acceptor(
            &sub.acceptor(|s| s.iter().any(|q| self.acc.is_final(q))),
        ))
    }

    /// Σ*L.
    pub fn prepend_closure(&self, limits: &Limits) -> Result<Language> {
        self.prefixed(false, limits)
    }

    /// Σ⁺L.
    pub fn prepend_plus(&self, limits: &Limits) -> Result<Language> {
        self.prefixed(true, limits)
    }

    // Pairs (state, flag) where the flag records that some proper prefix
    // was accepted.
    fn suffixed(&self, proper: bool) -> Language {
        let base = self.acc.base();
        let n = base.n_states();
        let semi = Semiautomaton::from_fn(base.alphabet().clone(), 2 * n, |s, a| {
            let (q, seen) = (s % n, s >= n);
            let seen = seen || self.acc.is_final(q);
            base.step(q, a) + if seen { n } else { 0 }
        });
        let finals = (0..2 * n)
            .map(|s| s >= n || (!proper && self.acc.is_final(s)))
            .collect();
        Language::from_acceptor(&Acceptor::from_mask(semi, self.acc.initial(), finals))
    }

    /// LΣ*.
    pub fn append_closure(&self) -> Language {
        self.suffixed(false)
    }

    /// LΣ⁺.
    pub fn append_plus(&self) -> Language {
        self.suffixed(true)
    }

    /// Right ideal iff the final states are closed under every letter; left
    /// ideal iff Σ*L = L. Both verdicts require a non-empty language.
    pub fn ideal_kind(&self, limits: &Limits) -> Result<IdealKind> {
        if self.is_empty() {
            return Ok(IdealKind {
                left: false,
                right: false,
                two_sided: false,
            });
        }
        let base = self.acc.base();
        let right = base.states().filter(|&q| self.acc.is_final(q)).all(|q| {
            base.alphabet()
                .letters()
                .all(|a| self.acc.is_final(base.step(q, a)))
        });
        let left = self.prepend_closure(limits)? == *self;
        Ok(IdealKind {
            left,
            right,
            two_sided: left && right,
        })
    }

    /// Σ*wΣ*: the prefix-matching automaton of `w` with an absorbing
    /// accepting sink on a full match.
    pub fn principal_ideal(w: &Word, alphabet: &Alphabet) -> Result<Language> {
        let table = checked_table(w, alphabet)?;
        let n = w.len();
        let semi = Semiautomaton::from_fn(alphabet.clone(), n + 1, |q, a| {
            if q == n {
                n
            } else {
                table.step(q, a)
            }
        });
        Ok(Language::from_acceptor(&Acceptor::new(semi, 0, &[n])?))
    }

    /// Σ*w on the same prefix states, without the sink.
    pub fn left_principal(w: &Word, alphabet: &Alphabet) -> Result<Language> {
        let table = checked_table(w, alphabet)?;
        let n = w.len();
        let semi = Semiautomaton::from_fn(alphabet.clone(), n + 1, |q, a| table.step(q, a));
        Ok(Language::from_acceptor(&Acceptor::new(semi, 0, &[n])?))
    }
}

fn checked_table(w: &Word, alphabet: &Alphabet) -> Result<FailureTable> {
    if w.is_empty() {
        return Err(Error::precondition("the generating word must be non-empty"));
    }
    alphabet.check_word(w)?;
    Ok(FailureTable::new(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::latin(2)
    }

    fn word(s: &str) -> Word {
        ab().parse_word(s, false).unwrap()
    }

    #[test]
    fn complement_laws() {
        let l = Language::principal_ideal(&word("ab"), &ab()).unwrap();
        assert!(l.intersection(&l.complement()).unwrap().is_empty());
        assert_eq!(
            l.union(&l.complement()).unwrap(),
            Language::universal(&ab())
        );
    }

    #[test]
    fn containing_ab_implies_containing_a() {
        let with_ab = Language::principal_ideal(&word("ab"), &ab()).unwrap();
        let with_a = Language::principal_ideal(&word("a"), &ab()).unwrap();
        // oracle: no binary word of length ≤ 4 contains ab but not a
        for u in Word::all_up_to(2, 4) {
            if word("ab").is_factor_of(&u) {
                assert!(word("a").is_factor_of(&u));
            }
        }
        assert!(with_ab.difference(&with_a).unwrap().is_empty());
        assert!(with_a.includes(&with_ab).unwrap());
        assert!(Language::universal(&ab()).includes(&with_ab).unwrap());
    }

    #[test]
    fn finiteness() {
        let l = Language::left_principal(&word("ab"), &ab()).unwrap();
        assert!(!l.is_finite());
        assert!(Language::singleton(&word("aba"), &ab())
            .unwrap()
            .is_finite());
        assert!(Language::empty(&ab()).is_finite());
        assert!(!Language::universal(&ab()).is_finite());
        let three = Language::singleton(&word("aba"), &ab())
            .unwrap()
            .union(&Language::singleton(&word("b"), &ab()).unwrap())
            .unwrap();
        assert_eq!(three.max_length(), Some(3));
        assert_eq!(l.max_length(), None);
    }

    #[test]
    fn shortest_words() {
        let l = Language::principal_ideal(&word("abb"), &ab()).unwrap();
        assert_eq!(l.shortest_word(), Some(word("abb")));
        assert_eq!(Language::empty(&ab()).shortest_word(), None);
        assert_eq!(
            Language::universal(&ab()).shortest_word(),
            Some(Word::empty())
        );
    }

    #[test]
    fn quotients() {
        let l = Language::left_principal(&word("ab"), &ab()).unwrap();
        assert_eq!(l.left_quotient(&Word::empty()), l);
        let r = l.right_quotient(&word("ab"));
        // oracle: v ∈ Lw⁻¹ iff vw ends with w, i.e. always
        for v in Word::all_up_to(2, 3) {
            assert!(r.contains(&v));
        }
        assert_eq!(r, Language::universal(&ab()));
        let rb = l.right_quotient(&word("b"));
        for v in Word::all_up_to(2, 4) {
            assert_eq!(rb.contains(&v), l.contains(&v.concat(&word("b"))));
        }
    }

    #[test]
    fn ideal_kinds() {
        let limits = Limits::default();
        let two = Language::principal_ideal(&word("aba"), &ab()).unwrap();
        assert_eq!(
            two.ideal_kind(&limits).unwrap(),
            IdealKind {
                left: true,
                right: true,
                two_sided: true
            }
        );
        let left = Language::left_principal(&word("ab"), &ab()).unwrap();
        assert!(!left.contains(&word("aba")));
        assert_eq!(
            left.ideal_kind(&limits).unwrap(),
            IdealKind {
                left: true,
                right: false,
                two_sided: false
            }
        );
        assert!(!Language::empty(&ab()).ideal_kind(&limits).unwrap().left);
    }

    #[test]
    fn principal_constructions() {
        let l = Language::principal_ideal(&word("aba"), &ab()).unwrap();
        assert_eq!(l.acceptor().n_states(), 4);
        assert!(!l.contains(&Word::empty()));
        assert!(l.contains(&word("aba")));
        let left = Language::left_principal(&word("ab"), &ab()).unwrap();
        assert!(left.contains(&word("bab")));
        assert!(!left.contains(&word("aba")));
        assert!(Language::principal_ideal(&Word::empty(), &ab()).is_err());
    }

    #[test]
    fn closures_match_definitions() {
        let limits = Limits::default();
        let l = Language::singleton(&word("ab"), &ab()).unwrap();
        let pre = l.prepend_closure(&limits).unwrap();
        let pre_plus = l.prepend_plus(&limits).unwrap();
        let post = l.append_closure();
        let post_plus = l.append_plus();
        for u in Word::all_up_to(2, 5) {
            let ends = word("ab").is_suffix_of(&u);
            let starts = word("ab").is_prefix_of(&u);
            assert_eq!(pre.contains(&u), ends);
            assert_eq!(pre_plus.contains(&u), ends && u.len() > 2);
            assert_eq!(post.contains(&u), starts);
            assert_eq!(post_plus.contains(&u), starts && u.len() > 2);
        }
    }

    #[test]
    fn alphabet_mismatch() {
        let l = Language::universal(&ab());
        let m = Language::universal(&Alphabet::latin(1));
        assert_eq!(l.union(&m), Err(Error::AlphabetMismatch));
        assert_eq!(l.equals(&m), Err(Error::AlphabetMismatch));
    }
}
