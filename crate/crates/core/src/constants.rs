//! Schützenberger constants of a regular language, read off its minimal
//! acceptor.
//!
//! A word `u` is a constant of `L` when `u1·u·u2 ∈ L` and `u3·u·u4 ∈ L`
//! imply `u1·u·u4 ∈ L`. On the minimal acceptor this is a condition on the
//! image `Q·u`: at most two states when a non-accepting sink exists (one of
//! them the sink), a single state otherwise.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::automaton::{Semiautomaton, State, StateSet};
use crate::error::{Error, Result};
use crate::lang::Language;
use crate::power;
use crate::synchro::{is_synchronizing, syn_language};
use crate::word::Word;
use crate::Limits;

/// The non-accepting state fixed by every letter, if any.
pub fn sink(lang: &Language) -> Option<State> {
    let acc = lang.acceptor();
    let base = acc.base();
    base.states()
        .find(|&q| !acc.is_final(q) && base.alphabet().letters().all(|a| base.step(q, a) == q))
}

fn meets_threshold(set: &StateSet, sink: Option<State>) -> bool {
    match sink {
        Some(_) => set.len() <= 2,
        None => set.len() == 1,
    }
}

/// Whether `u` is a constant of `lang`.
pub fn is_constant(lang: &Language, u: &Word) -> bool {
    let base = lang.acceptor().base();
    meets_threshold(&base.image(&base.full_set(), u), sink(lang))
}

// Shortlex-least word sending {p, q} to a singleton or to a pair holding
// the sink, by breadth-first search in the pair automaton.
fn collapse_pair(base: &Semiautomaton, p: State, q: State, sink: Option<State>) -> Option<Word> {
    let done = |x: State, y: State| x == y || sink.is_some_and(|s| x == s || y == s);
    let norm = |x: State, y: State| (x.min(y), x.max(y));
    let start = norm(p, q);
    if done(start.0, start.1) {
        return Some(Word::empty());
    }
    let mut parent = vec![(start, usize::MAX, 0)];
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let ((x, y), _, _) = parent[i];
        for a in base.alphabet().letters() {
            let next = norm(base.step(x, a), base.step(y, a));
            if !seen.insert(next) {
                continue;
            }
            parent.push((next, i, a));
            let j = parent.len() - 1;
            if done(next.0, next.1) {
                let mut letters = Vec::new();
                let mut cur = j;
                while parent[cur].1 != usize::MAX {
                    letters.push(parent[cur].2);
                    cur = parent[cur].1;
                }
                letters.reverse();
                return Some(Word(letters));
            }
            queue.push_back(j);
        }
    }
    None
}

fn non_sink_pairs(n: usize, sink: Option<State>) -> impl Iterator<Item = (State, State)> {
    (0..n)
        .flat_map(move |p| (p + 1..n).map(move |q| (p, q)))
        .filter(move |&(p, q)| sink != Some(p) && sink != Some(q))
}

/// Decides whether `lang` has a constant: every pair of distinct non-sink
/// states must collapse, in the pair automaton, to a singleton or to a pair
/// containing the sink. Without a sink this is synchronizability.
pub fn has_constant(lang: &Language) -> bool {
    let base = lang.acceptor().base();
    let s = sink(lang);
    if s.is_none() {
        return is_synchronizing(base);
    }
    non_sink_pairs(base.n_states(), s).all(|(p, q)| collapse_pair(base, p, q, s).is_some())
}

/// Search of the power automaton from `Q` for an image meeting the threshold.
pub fn has_constant_oracle(lang: &Language, limits: &Limits) -> Result<bool> {
    let base = lang.acceptor().base();
    let s = sink(lang);
    let hit = power::shortest_word_to(
        base,
        base.full_set(),
        |set| meets_threshold(set, s),
        None,
        limits.subset_cap,
    )?;
    Ok(hit.is_some())
}

/// Builds a constant by repeatedly collapsing two distinct non-sink states
/// of the current image.
pub fn find_constant(lang: &Language) -> Option<Word> {
    let base = lang.acceptor().base();
    let s = sink(lang);
    let mut image = base.full_set();
    let mut witness = Word::empty();
    while !meets_threshold(&image, s) {
        let mut live = image.iter().filter(|&q| Some(q) != s);
        let (p, q) = (live.next()?, live.next()?);
        drop(live);
        let x = collapse_pair(base, p, q, s)?;
        image = base.image(&image, &x);
        witness = witness.concat(&x);
    }
    Some(witness)
}

fn threshold_language(lang: &Language, limits: &Limits, s: Option<State>) -> Result<Language> {
    let base = lang.acceptor().base();
    let sub = power::power_from(base, base.full_set(), limits.subset_cap)?;
    Ok(Language::from_acceptor(
        &sub.acceptor(|set| meets_threshold(set, s)),
    ))
}

/// C(L), the set of constants.
pub fn constants_language(lang: &Language, limits: &Limits) -> Result<Language> {
    threshold_language(lang, limits, sink(lang))
}

/// Partial reset words: `Q·u ⊆ {s, q}` for the sink `s` and some state `q`,
/// `q = s` allowed.
pub fn partial_syn_language(lang: &Language, limits: &Limits) -> Result<Language> {
    let s =
        sink(lang).ok_or_else(|| Error::precondition("the acceptor has no non-accepting sink"))?;
    threshold_language(lang, limits, Some(s))
}

fn live_states(lang: &Language) -> StateSet {
    let acc = lang.acceptor();
    let live = acc.base().coreachable(acc.final_mask());
    acc.base().states().filter(|&q| live[q]).collect()
}

/// Z(L) = {u : Σ*uΣ* ∩ L = ∅}: words after which no run from any state can
/// still reach a final state.
pub fn z_language(lang: &Language, limits: &Limits) -> Result<Language> {
    let base = lang.acceptor().base();
    let live = live_states(lang);
    let sub = power::explore(
        base.alphabet(),
        live.clone(),
        |set, a| {
            base.image_letter(set, a)
                .iter()
                .filter(|&q| live.contains(q))
                .collect()
        },
        limits.subset_cap,
    )?;
    Ok(Language::from_acceptor(&sub.acceptor(StateSet::is_empty)))
}

pub fn z_nonempty(lang: &Language, limits: &Limits) -> Result<bool> {
    Ok(!z_language(lang, limits)?.is_empty())
}

/// Some reachable state is dead; in a minimal acceptor that is the sink.
pub fn complement_contains_right_ideal(lang: &Language) -> bool {
    let acc = lang.acceptor();
    let base = acc.base();
    let live = base.coreachable(acc.final_mask());
    let reachable = base.reachable_from(acc.initial());
    base.states().any(|q| reachable[q] && !live[q])
}

/// A structural criterion next to the direct computation it should match.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CriterionCheck {
    pub criterion: bool,
    pub direct: bool,
}

impl CriterionCheck {
    pub fn agrees(&self) -> bool {
        self.criterion == self.direct
    }
}

fn syn_meets(lang: &Language, limits: &Limits) -> Result<Option<bool>> {
    let base = lang.acceptor().base();
    if !is_synchronizing(base) {
        return Ok(None);
    }
    let syn = syn_language(base, limits)?;
    Ok(Some(!lang.intersection(&syn)?.is_empty()))
}

/// Constants exist and the complement holds no right ideal, against
/// "synchronizing, and some word of L resets".
pub fn prop5_check(lang: &Language, limits: &Limits) -> Result<CriterionCheck> {
    Ok(CriterionCheck {
        criterion: has_constant(lang) && !complement_contains_right_ideal(lang),
        direct: syn_meets(lang, limits)? == Some(true),
    })
}

/// Z(L) is non-empty and the complement holds a right ideal, against
/// "synchronizing, and no word of L resets".
pub fn prop6_check(lang: &Language, limits: &Limits) -> Result<CriterionCheck> {
    Ok(CriterionCheck {
        criterion: z_nonempty(lang, limits)? && complement_contains_right_ideal(lang),
        direct: syn_meets(lang, limits)? == Some(false),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstantsReport {
    pub has_constant: bool,
    pub witness: Option<String>,
    pub sink: Option<State>,
    pub prop5: CriterionCheck,
    pub prop6: CriterionCheck,
    pub z_nonempty: bool,
}

pub fn constants_report(lang: &Language, limits: &Limits) -> Result<ConstantsReport> {
    let has = has_constant(lang);
    Ok(ConstantsReport {
        has_constant: has,
        witness: find_constant(lang).map(|w| lang.alphabet().format_word(&w)),
        sink: sink(lang),
        prop5: prop5_check(lang, limits)?,
        prop6: prop6_check(lang, limits)?,
        z_nonempty: z_nonempty(lang, limits)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::latin(2)
    }

    fn word(s: &str) -> Word {
        ab().parse_word(s, false).unwrap()
    }

    fn only_a() -> Language {
        Language::singleton(&word("a"), &ab()).unwrap()
    }

    // (aa)*a over {a}
    fn odd() -> Language {
        let one = Alphabet::latin(1);
        let semi = Semiautomaton::from_fn(one, 2, |q, _| 1 - q);
        Language::from_acceptor(&semi.with_acceptance(0, &[1]).unwrap())
    }

    #[test]
    fn constants_of_single_letter() {
        let l = only_a();
        assert!(sink(&l).is_some());
        assert!(is_constant(&l, &word("a")));
        assert!(has_constant(&l));
        let w = find_constant(&l).unwrap();
        assert!(is_constant(&l, &w));
        let c = constants_language(&l, &Limits::default()).unwrap();
        assert!(c.contains(&word("a")));
    }

    #[test]
    fn odd_lengths_have_no_constant() {
        let l = odd();
        assert_eq!(sink(&l), None);
        assert!(!is_constant(
            &l,
            &Alphabet::latin(1).parse_word("a", false).unwrap()
        ));
        assert!(!has_constant(&l));
        assert!(!has_constant_oracle(&l, &Limits::default()).unwrap());
        assert_eq!(find_constant(&l), None);
        // definitional counterexample: ε·a·ε, ε·a·a ∈ L but ε·a·a ∉ L fails
        let a = Alphabet::latin(1).parse_word("a", false).unwrap();
        assert!(l.contains(&a) && l.contains(&a.pow(3)) && !l.contains(&a.pow(2)));
    }

    #[test]
    fn z_and_right_ideals() {
        let limits = Limits::default();
        let l = only_a();
        assert!(z_nonempty(&l, &limits).unwrap());
        assert!(z_language(&l, &limits).unwrap().contains(&word("b")));
        assert!(complement_contains_right_ideal(&l));
        let left = Language::left_principal(&word("ab"), &ab()).unwrap();
        assert!(!complement_contains_right_ideal(&left));
        assert!(!z_nonempty(&Language::universal(&ab()), &limits).unwrap());
    }

    #[test]
    fn proposition_checks() {
        let limits = Limits::default();
        let aw = Language::from_acceptor(&crate::aw::build_aw(&word("aba"), &ab()).unwrap());
        let p5 = prop5_check(&aw, &limits).unwrap();
        assert_eq!(
            p5,
            CriterionCheck {
                criterion: true,
                direct: true
            }
        );
        let p6 = prop6_check(&only_a(), &limits).unwrap();
        assert_eq!(
            p6,
            CriterionCheck {
                criterion: true,
                direct: true
            }
        );
        let all = prop5_check(&Language::universal(&ab()), &limits).unwrap();
        assert_eq!(
            all,
            CriterionCheck {
                criterion: true,
                direct: true
            }
        );
    }

    #[test]
    fn sink_free_constants_are_reset_words() {
        let limits = Limits::default();
        let l = Language::left_principal(&word("ab"), &ab()).unwrap();
        let c = constants_language(&l, &limits).unwrap();
        assert_eq!(c, syn_language(l.acceptor().base(), &limits).unwrap());
        assert!(partial_syn_language(&l, &limits).is_err());
    }
}
