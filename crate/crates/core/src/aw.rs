//! The suffix-prefix operator `u ∧_s w` and the automaton `A_w`.
//!
//! `A_w` has one state per prefix of `w` (state `i` is the prefix of length
//! `i`), reads a letter by appending it and keeping the longest suffix that
//! is again a prefix of `w`, and starts and accepts at the full prefix. It is
//! the minimal acceptor of `w⁻¹Σ*w`.

use serde::Serialize;

use crate::automaton::{Acceptor, Semiautomaton, State, StateSet};
use crate::error::{Error, Result};
use crate::isomorphism::is_isomorphic_acceptor;
use crate::minimize::minimize;
use crate::synchro;
use crate::word::{Alphabet, Letter, Word};
use crate::{Check, Limits};

/// The border table of a word: for each prefix length `i ≥ 1`, the length
/// of the longest proper suffix of `w[1..i]` that is also a prefix of `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureTable {
    word: Vec<Letter>,
    border: Vec<usize>,
}

impl FailureTable {
    pub fn new(w: &Word) -> Self {
        let word = w.letters().to_vec();
        let n = word.len();
        let mut border = vec![0; n + 1];
        for i in 1..n {
            let mut k = border[i];
            while k > 0 && word[k] != word[i] {
                k = border[k];
            }
            if word[k] == word[i] {
                k += 1;
            }
            border[i + 1] = k;
        }
        FailureTable { word, border }
    }

    pub fn word_len(&self) -> usize {
        self.word.len()
    }

    /// `failure(i)` for `1 ≤ i ≤ |w|`.
    pub fn failure(&self, i: usize) -> usize {
        assert!(
            i >= 1 && i <= self.word.len(),
            "failure is defined on 1..=|w|"
        );
        self.border[i]
    }

    /// Length of `(w[1..len]·a) ∧_s w`.
    pub fn step(&self, len: usize, a: Letter) -> usize {
        let n = self.word.len();
        let mut k = if len == n && n > 0 {
            self.border[n]
        } else {
            len
        };
        loop {
            if k < n && self.word[k] == a {
                return k + 1;
            }
            if k == 0 {
                return 0;
            }
            k = self.border[k];
        }
    }

    /// Length of `(w[1..len]·u) ∧_s w`.
    pub fn run(&self, len: usize, u: &Word) -> usize {
        u.letters().iter().fold(len, |k, &a| self.step(k, a))
    }
}

/// `u ∧_s w`: the longest suffix of `u` that is a prefix of `w`, computed
/// one letter at a time with the border table.
pub fn suffix_prefix_match(u: &Word, w: &Word) -> Word {
    let table = FailureTable::new(w);
    w.prefix(table.run(0, u))
}

/// `A_w` over `alphabet`, with state `i` the prefix of length `i` and the
/// full prefix `|w|` as initial and only final state.
pub fn build_aw(w: &Word, alphabet: &Alphabet) -> Result<Acceptor> {
    if w.is_empty() {
        return Err(Error::precondition("A_w needs a non-empty word"));
    }
    alphabet.check_word(w)?;
    let table = FailureTable::new(w);
    let n = w.len();
    let semi = Semiautomaton::from_fn(alphabet.clone(), n + 1, |q, a| table.step(q, a));
    Acceptor::new(semi, n, &[n])
}

#[derive(Debug, Clone, Serialize)]
pub struct AwReport {
    pub word: String,
    pub states: usize,
    /// Length of the shortest reset word.
    pub threshold: usize,
    pub shortest_reset: String,
    /// Length of the longest minimal reset word.
    pub longest_minimal_reset: Option<usize>,
    pub checks: Vec<Check>,
}

impl AwReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs the structural checks on `A_w`: size, minimality, strong
/// connectivity, `w` as a reset word, every word of length `|w|` resetting
/// with a state-independent target, finite generation, and the length bound
/// on minimal reset words.
pub fn verify_aw(w: &Word, alphabet: &Alphabet, limits: &Limits) -> Result<AwReport> {
    let acc = build_aw(w, alphabet)?;
    let semi = acc.base();
    let n = w.len();
    let k = alphabet.len();
    let mut checks = Vec::new();

    checks.push(Check::with_detail(
        "state_count",
        semi.n_states() == n + 1,
        format!("{} states", semi.n_states()),
    ));

    let min = minimize(&acc);
    checks.push(Check::new(
        "minimal",
        min.n_states() == acc.n_states() && is_isomorphic_acceptor(&min, &acc)?,
    ));

    checks.push(Check::new(
        "strongly_connected",
        semi.is_strongly_connected(),
    ));

    checks.push(Check::new(
        "w_resets",
        semi.image(&semi.full_set(), w) == StateSet::singleton(n),
    ));

    let total = k
        .checked_pow(n as u32)
        .filter(|&t| t <= limits.enumeration_budget);
    if total.is_none() {
        return Err(Error::Budget {
            what: "words of length |w|",
            limit: limits.enumeration_budget,
        });
    }
    let table = FailureTable::new(w);
    let mut long_ok = true;
    let mut detail = None;
    for u in Word::all_of_length(k, n) {
        let target = suffix_prefix_match(&u, w).len();
        let bad = semi
            .states()
            .find(|&q| semi.run(q, &u) != target || table.run(q, &u) != target);
        if let Some(q) = bad {
            long_ok = false;
            detail = Some(format!("{} from state {q}", alphabet.format_word(&u)));
            break;
        }
    }
    checks.push(Check {
        name: "length_w_words_reset",
        passed: long_ok,
        detail,
    });

    let fg = synchro::is_finitely_generated(semi, limits)?;
    checks.push(Check::new("finitely_generated", fg));

    let minimal = synchro::minimal_reset_words(semi, limits)?;
    let longest = minimal.max_length();
    checks.push(Check::with_detail(
        "minimal_reset_words_bounded",
        longest.is_some_and(|m| m <= n),
        format!("longest minimal reset word: {longest:?}"),
    ));

    let report = synchro::shortest_reset(semi, limits)?;
    let shortest = report.shortest.unwrap_or_default();
    Ok(AwReport {
        word: alphabet.format_word(w),
        states: semi.n_states(),
        threshold: shortest.len(),
        shortest_reset: alphabet.format_word(&shortest),
        longest_minimal_reset: longest,
        checks,
    })
}

/// `run(q_i, u)` in `A_w` as a prefix length, i.e. `|(w[1..i]·u) ∧_s w|`.
pub fn prefix_state(acc: &Acceptor, q: State, u: &Word) -> State {
    acc.base().run(q, u)
}
