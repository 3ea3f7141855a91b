//! Reset left regular decompositions.
//!
//! A strongly connected synchronizing automaton splits its reset words by
//! landing state: `I_q = {u : Q·u = {q}}`. The family is a set of disjoint
//! left ideals closed under letters (`I_i·a ⊆ I_j` for some `j`) and
//! complete in the sense that `I·u ⊆ I_i` forces `u ∈ I`, where `I` is the
//! union. Conversely such a family defines an automaton on its indices.

use std::collections::{HashMap, HashSet};

use crate::automaton::{Acceptor, Semiautomaton, State, StateSet};
use crate::error::{Error, Result};
use crate::lang::Language;
use crate::power;
use crate::synchro::is_synchronizing;
use crate::word::{Alphabet, Word};
use crate::{Check, Limits};

/// Parts indexed by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    alphabet: Alphabet,
    parts: Vec<Language>,
}

impl Decomposition {
    pub fn new(parts: Vec<Language>) -> Result<Self> {
        let alphabet = parts
            .first()
            .ok_or_else(|| Error::InvalidDecomposition("no parts".into()))?
            .alphabet()
            .clone();
        if parts.iter().any(|p| *p.alphabet() != alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(Decomposition { alphabet, parts })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn parts(&self) -> &[Language] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The union of the parts.
    pub fn union(&self) -> Result<Language> {
        self.parts[1..]
            .iter()
            .try_fold(self.parts[0].clone(), |acc, p| acc.union(p))
    }

    /// The family without part `i`, re-indexed.
    pub fn without(&self, i: usize) -> Result<Decomposition> {
        let mut parts = self.parts.clone();
        parts.remove(i);
        Decomposition::new(parts)
    }
}

fn require_scs(a: &Semiautomaton) -> Result<()> {
    if !a.is_strongly_connected() {
        return Err(Error::precondition("automaton is not strongly connected"));
    }
    if !is_synchronizing(a) {
        return Err(Error::precondition("automaton is not synchronizing"));
    }
    Ok(())
}

/// `I_q = {u : Q·u = {q}}` for every state `q`.
pub fn extract_decomposition(a: &Semiautomaton, limits: &Limits) -> Result<Decomposition> {
    require_scs(a)?;
    let sub = power::power_from(a, a.full_set(), limits.subset_cap)?;
    let parts = a
        .states()
        .map(|q| {
            let target = StateSet::singleton(q);
            Language::from_acceptor(&sub.acceptor(|s| *s == target))
        })
        .collect();
    Decomposition::new(parts)
}

/// For each part and letter, the part that receives `I_i·a`, if any.
fn letter_targets(d: &Decomposition) -> Result<Vec<Option<usize>>> {
    let k = d.alphabet.len();
    let mut out = Vec::with_capacity(d.len() * k);
    for part in &d.parts {
        for a in d.alphabet.letters() {
            let letter = Word(vec![a]);
            let mut target = None;
            for (j, other) in d.parts.iter().enumerate() {
                if other.right_quotient(&letter).includes(part)? {
                    target = Some(j);
                    break;
                }
            }
            out.push(target);
        }
    }
    Ok(out)
}

// States of `inner` reached by the words of `outer`.
fn states_reached(outer: &Acceptor, inner: &Acceptor) -> Vec<State> {
    let (ob, ib) = (outer.base(), inner.base());
    let start = (outer.initial(), inner.initial());
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    let mut hit = HashSet::new();
    while let Some((p, q)) = stack.pop() {
        if outer.is_final(p) {
            hit.insert(q);
        }
        for a in ob.alphabet().letters() {
            let next = (ob.step(p, a), ib.step(q, a));
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    let mut v: Vec<State> = hit.into_iter().collect();
    v.sort_unstable();
    v
}

/// `{u : I·u ⊆ I_i}` for the union `I` of all parts.
fn absorbed_by(d: &Decomposition, i: usize, limits: &Limits) -> Result<Language> {
    let target = d.parts[i].acceptor();
    let start: StateSet = d
        .parts
        .iter()
        .flat_map(|p| states_reached(p.acceptor(), target))
        .collect();
    let base = target.base();
    let sub = power::power_from(base, start, limits.subset_cap)?;
    Ok(Language::from_acceptor(
        &sub.acceptor(|s| s.iter().all(|q| target.is_final(q))),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DecompositionReport {
    pub parts: usize,
    pub checks: Vec<Check>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks non-emptiness, disjointness, the left-ideal property, closure
/// under letters (condition i) and completeness (condition ii).
pub fn verify_decomposition(d: &Decomposition, limits: &Limits) -> Result<DecompositionReport> {
    let mut checks = Vec::new();

    let empty: Vec<usize> = (0..d.len()).filter(|&i| d.parts[i].is_empty()).collect();
    checks.push(match empty.first() {
        None => Check::new("non_empty", true),
        Some(i) => Check::with_detail("non_empty", false, format!("part {i} is empty")),
    });

    let mut overlap = None;
    'outer: for i in 0..d.len() {
        for j in i + 1..d.len() {
            if !d.parts[i].intersection(&d.parts[j])?.is_empty() {
                overlap = Some((i, j));
                break 'outer;
            }
        }
    }
    checks.push(match overlap {
        None => Check::new("disjoint", true),
        Some((i, j)) => {
            Check::with_detail("disjoint", false, format!("parts {i} and {j} intersect"))
        }
    });

    let mut not_left = None;
    for (i, p) in d.parts.iter().enumerate() {
        if !p.ideal_kind(limits)?.left {
            not_left = Some(i);
            break;
        }
    }
    checks.push(match not_left {
        None => Check::new("left_ideals", true),
        Some(i) => Check::with_detail(
            "left_ideals",
            false,
            format!("part {i} is not a left ideal"),
        ),
    });

    let targets = letter_targets(d)?;
    let k = d.alphabet.len();
    checks.push(match targets.iter().position(Option::is_none) {
        None => Check::new("letter_closure", true),
        Some(pos) => Check::with_detail(
            "letter_closure",
            false,
            format!(
                "part {} followed by `{}` lands in no part",
                pos / k,
                d.alphabet.token(pos % k)
            ),
        ),
    });

    let union = d.union()?;
    let mut escape = None;
    for i in 0..d.len() {
        let absorbed = absorbed_by(d, i, limits)?;
        let outside = absorbed.difference(&union)?;
        if let Some(u) = outside.shortest_word() {
            escape = Some((i, u));
            break;
        }
    }
    checks.push(match escape {
        None => Check::new("completeness", true),
        Some((i, u)) => Check::with_detail(
            "completeness",
            false,
            format!(
                "I·{} lies in part {i} but the word is not in I",
                d.alphabet.format_word(&u)
            ),
        ),
    });

    Ok(DecompositionReport {
        parts: d.len(),
        checks,
    })
}

/// The automaton on part indices with `i·a = j` iff `I_i·a ⊆ I_j`.
pub fn automaton_of_decomposition(d: &Decomposition) -> Result<Semiautomaton> {
    let targets = letter_targets(d)?;
    let k = d.alphabet.len();
    let mut delta = Vec::with_capacity(targets.len());
    for (pos, t) in targets.into_iter().enumerate() {
        let j = t.ok_or_else(|| {
            Error::InvalidDecomposition(format!(
                "part {} followed by `{}` lands in no part",
                pos / k,
                d.alphabet.token(pos % k)
            ))
        })?;
        delta.push(j);
    }
    Semiautomaton::new(d.alphabet.clone(), d.len(), delta)
}

/// Which part each of the given words falls into.
pub fn classify(d: &Decomposition, words: &[Word]) -> HashMap<Word, Option<usize>> {
    words
        .iter()
        .map(|w| (w.clone(), d.parts.iter().position(|p| p.contains(w))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aw::build_aw;
    use crate::isomorphism::is_isomorphic;
    use crate::synchro::{cerny_automaton, syn_language};

    fn ab() -> Alphabet {
        Alphabet::latin(2)
    }

    fn word(s: &str) -> Word {
        ab().parse_word(s, false).unwrap()
    }

    #[test]
    fn parts_of_a_ab() {
        let limits = Limits::default();
        let aw = build_aw(&word("ab"), &ab()).unwrap();
        let d = extract_decomposition(aw.base(), &limits).unwrap();
        // states are prefix lengths: ε = 0, a = 1, ab = 2
        assert!(d.parts()[1].contains(&word("a")));
        assert!(d.parts()[2].contains(&word("ab")));
        assert!(d.parts()[0].contains(&word("bb")));
        assert_eq!(
            d.union().unwrap(),
            syn_language(aw.base(), &limits).unwrap()
        );
        assert!(verify_decomposition(&d, &limits).unwrap().passed());
    }

    #[test]
    fn round_trip_on_c3() {
        let limits = Limits::default();
        let c = cerny_automaton(3).unwrap();
        let d = extract_decomposition(&c, &limits).unwrap();
        assert!(d.parts().iter().all(|p| !p.is_empty()));
        let report = verify_decomposition(&d, &limits).unwrap();
        assert!(report.passed(), "{:?}", report.checks);
        let back = automaton_of_decomposition(&d).unwrap();
        assert!(is_isomorphic(&back, &c).unwrap());
    }

    #[test]
    fn single_part() {
        let one = Alphabet::latin(1);
        let d = Decomposition::new(vec![Language::universal(&one)]).unwrap();
        assert!(verify_decomposition(&d, &Limits::default())
            .unwrap()
            .passed());
        assert_eq!(automaton_of_decomposition(&d).unwrap().n_states(), 1);
    }

    #[test]
    fn mutations_are_detected() {
        let limits = Limits::default();
        let c = cerny_automaton(3).unwrap();
        let d = extract_decomposition(&c, &limits).unwrap();
        let dropped = d.without(0).unwrap();
        assert!(!verify_decomposition(&dropped, &limits).unwrap().passed());
        let p = Language::left_principal(&word("a"), &ab()).unwrap();
        let q = Language::left_principal(&word("aa"), &ab()).unwrap();
        let overlapping = Decomposition::new(vec![p, q]).unwrap();
        let report = verify_decomposition(&overlapping, &limits).unwrap();
        assert!(
            !report
                .checks
                .iter()
                .find(|c| c.name == "disjoint")
                .unwrap()
                .passed
        );
    }
}
