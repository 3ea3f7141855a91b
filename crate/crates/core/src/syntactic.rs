//! Transition semigroups and the syntactic complexity of `w⁻¹Σ*w`.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::automaton::{Acceptor, Semiautomaton, State};
use crate::aw::build_aw;
use crate::error::{Error, Result};
use crate::minimize::minimize;
use crate::word::{Alphabet, Word};
use crate::Limits;

/// A total self-map of a state set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation(pub Vec<State>);

impl Transformation {
    pub fn identity(n: usize) -> Self {
        Transformation((0..n).collect())
    }

    /// The action of `u` on `a`.
    pub fn of_word(a: &Semiautomaton, u: &Word) -> Self {
        Transformation(a.states().map(|q| a.run(q, u)).collect())
    }

    pub fn apply(&self, q: State) -> State {
        self.0[q]
    }

    /// First `self`, then `next`.
    pub fn then(&self, next: &Transformation) -> Transformation {
        Transformation(self.0.iter().map(|&q| next.0[q]).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn is_constant(&self) -> bool {
        self.rank() == 1
    }
}

/// The transition semigroup of a minimal acceptor, each element with its
/// shortlex-least witness word.
#[derive(Debug, Clone)]
pub struct Semigroup {
    pub acceptor: Acceptor,
    pub elements: Vec<Transformation>,
    pub witnesses: Vec<Word>,
}

impl Semigroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Closes the letter actions of the minimized acceptor under composition,
/// breadth-first. The identity appears only when a non-empty word realizes it.
pub fn transition_semigroup(acc: &Acceptor, limits: &Limits) -> Result<Semigroup> {
    let acceptor = minimize(acc);
    let semi = acceptor.base();
    let letters: Vec<Transformation> = semi
        .alphabet()
        .letters()
        .map(|l| Transformation::of_word(semi, &Word(vec![l])))
        .collect();
    let mut seen: HashSet<Transformation> = HashSet::new();
    let mut elements: Vec<Transformation> = Vec::new();
    let mut witnesses: Vec<Word> = Vec::new();
    let mut frontier: Vec<(Transformation, Word)> = letters
        .iter()
        .enumerate()
        .map(|(l, t)| (t.clone(), Word(vec![l])))
        .collect();
    // words of one length at a time, in lexicographic order
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (t, w) in frontier {
            if !seen.insert(t.clone()) {
                continue;
            }
            if elements.len() >= limits.semigroup_cap {
                return Err(Error::Budget {
                    what: "transition semigroup",
                    limit: limits.semigroup_cap,
                });
            }
            for (l, step) in letters.iter().enumerate() {
                let mut longer = w.clone();
                longer.push(l);
                next.push((t.then(step), longer));
            }
            elements.push(t);
            witnesses.push(w);
        }
        frontier = next;
    }
    Ok(Semigroup {
        acceptor,
        elements,
        witnesses,
    })
}

/// The combinatorial word classes of `w`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordClasses {
    /// Inner factors: `u` with `w = xuy`, `x` and `y` non-empty.
    pub fact: BTreeSet<Word>,
    /// Proper non-empty suffixes that are not inner factors.
    pub suff: BTreeSet<Word>,
    /// Proper non-empty prefixes that are neither suffixes nor inner factors.
    pub pref: BTreeSet<Word>,
    /// Members of `pref` that reset `A_w`.
    pub pref_syn_adjusted: BTreeSet<Word>,
}

pub fn word_classes(w: &Word, alphabet: &Alphabet) -> Result<WordClasses> {
    let aw = build_aw(w, alphabet)?;
    let n = w.len();
    let fact: BTreeSet<Word> = (2..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| w.factor(i, j))
        .collect();
    let suff: BTreeSet<Word> = (1..n)
        .map(|l| w.suffix(l))
        .filter(|s| !fact.contains(s))
        .collect();
    let pref: BTreeSet<Word> = (1..n)
        .map(|l| w.prefix(l))
        .filter(|p| !p.is_suffix_of(w) && !fact.contains(p))
        .collect();
    let semi = aw.base();
    let pref_syn_adjusted = pref
        .iter()
        .filter(|p| semi.image(&semi.full_set(), p).len() == 1)
        .cloned()
        .collect();
    Ok(WordClasses {
        fact,
        suff,
        pref,
        pref_syn_adjusted,
    })
}

/// Closed-form syntactic complexity next to the semigroup size it predicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    pub formula: usize,
    pub oracle: usize,
    pub pref: usize,
    pub fact: usize,
    pub suff: usize,
    pub subtrahend: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// `|w| + 1 + |pref| + |fact| + |suff| - |pref ∩ Syn(A_w)|` against the size
/// of the transition semigroup of `A_w`.
pub fn syntactic_complexity(
    w: &Word,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<ComplexityReport> {
    let classes = word_classes(w, alphabet)?;
    let (pref, fact, suff) = (classes.pref.len(), classes.fact.len(), classes.suff.len());
    let subtrahend = classes.pref_syn_adjusted.len();
    let formula = w.len() + 1 + pref + fact + suff - subtrahend;
    let oracle = transition_semigroup(&build_aw(w, alphabet)?, limits)?.len();
    Ok(ComplexityReport {
        formula,
        oracle,
        pref,
        fact,
        suff,
        subtrahend,
        matches: formula == oracle,
    })
}

/// The formula with the subtrahend read as all prefixes of `w` (including
/// `w`) that reset `A_w`.
pub fn literal_formula(w: &Word, alphabet: &Alphabet) -> Result<usize> {
    let classes = word_classes(w, alphabet)?;
    let aw = build_aw(w, alphabet)?;
    let semi = aw.base();
    let resetting = (1..=w.len())
        .filter(|&l| semi.image(&semi.full_set(), &w.prefix(l)).len() == 1)
        .count();
    Ok(w.len() + 1 + classes.pref.len() + classes.fact.len() + classes.suff.len() - resetting)
}
