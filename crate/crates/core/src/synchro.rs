//! Synchronization: pair and power automata, reset-word languages, maximal
//! fixed sets and deficiency, the bounded word searches built on them, Černý
//! fixtures and exhaustive enumeration of small semiautomata.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::automaton::{Semiautomaton, State, StateSet};
use crate::error::{Error, Result};
use crate::format::semiautomaton_to_aut;
use crate::lang::Language;
use crate::power;
use crate::word::{Alphabet, Word};
use crate::Limits;

/// True iff every pair of states can be merged, found by a backward search
/// over unordered pairs from the diagonal.
pub fn is_synchronizing(a: &Semiautomaton) -> bool {
    let n = a.n_states();
    if n <= 1 {
        return true;
    }
    let k = a.n_letters();
    // preimages[l * n + q] lists the states sent to q by letter l
    let mut preimages = vec![Vec::new(); k * n];
    for p in a.states() {
        for l in 0..k {
            preimages[l * n + a.step(p, l)].push(p);
        }
    }
    let mut merged = vec![false; n * n];
    let mut queue: Vec<(State, State)> = (0..n).map(|q| (q, q)).collect();
    let mut remaining = n * (n - 1) / 2;
    while let Some((p, q)) = queue.pop() {
        for l in 0..k {
            for &p0 in &preimages[l * n + p] {
                for &q0 in &preimages[l * n + q] {
                    let (x, y) = (p0.min(q0), p0.max(q0));
                    if x != y && !merged[x * n + y] {
                        merged[x * n + y] = true;
                        remaining -= 1;
                        if remaining == 0 {
                            return true;
                        }
                        queue.push((x, y));
                    }
                }
            }
        }
    }
    false
}

/// Words `u` with `|start·u| = 1`, as a language.
pub fn syn_language_from(a: &Semiautomaton, start: StateSet, limits: &Limits) -> Result<Language> {
    let sub = power::power_from(a, start, limits.subset_cap)?;
    Ok(Language::from_acceptor(&sub.acceptor(|s| s.len() == 1)))
}

/// Syn(A).
pub fn syn_language(a: &Semiautomaton, limits: &Limits) -> Result<Language> {
    syn_language_from(a, a.full_set(), limits)
}

#[derive(Debug, Clone)]
pub struct SynReport {
    pub synchronizing: bool,
    pub shortest: Option<Word>,
    pub threshold: Option<usize>,
    pub syn_language: Option<Language>,
}

/// The shortlex-least shortest reset word, found by breadth-first search
/// in the power automaton.
pub fn shortest_reset(a: &Semiautomaton, limits: &Limits) -> Result<SynReport> {
    if !is_synchronizing(a) {
        return Ok(SynReport {
            synchronizing: false,
            shortest: None,
            threshold: None,
            syn_language: None,
        });
    }
    let w = power::shortest_word_to(a, a.full_set(), |s| s.len() == 1, None, limits.subset_cap)?
        .expect("synchronizing automata have reset words");
    Ok(SynReport {
        synchronizing: true,
        threshold: Some(w.len()),
        shortest: Some(w),
        syn_language: None,
    })
}

/// [`shortest_reset`] together with the full reset-word language.
pub fn analyze(a: &Semiautomaton, limits: &Limits) -> Result<SynReport> {
    let mut report = shortest_reset(a, limits)?;
    report.syn_language = Some(syn_language(a, limits)?);
    Ok(report)
}

fn non_empty(u: &Word, what: &str) -> Result<()> {
    if u.is_empty() {
        Err(Error::precondition(format!("{what} must be non-empty")))
    } else {
        Ok(())
    }
}

/// `(m(u), k(u))`: the largest set fixed by `u` and the least `k` with
/// `Q·u^k = m(u)`.
pub fn maximal_fixed_set(a: &Semiautomaton, u: &Word) -> Result<(StateSet, usize)> {
    non_empty(u, "u")?;
    a.alphabet().check_word(u)?;
    let mut set = a.full_set();
    let mut k = 0;
    loop {
        let next = a.image(&set, u);
        if next == set {
            return Ok((set, k));
        }
        set = next;
        k += 1;
    }
}

/// `df(u) = |Q| - |Q·u|`.
pub fn deficiency(a: &Semiautomaton, u: &Word) -> usize {
    a.n_states() - a.image(&a.full_set(), u).len()
}

fn instance_dump(a: &Semiautomaton, words: &[(&str, &Word)]) -> String {
    let mut out = semiautomaton_to_aut(a);
    for (name, w) in words {
        out.push_str(&format!("{name} = {}\n", a.alphabet().format_word(w)));
    }
    out
}

/// The shortlex-least `τ` with `df(uτv) > df(u)`, given
/// `df(u) = df(v) = k > 1`; `τ` has at most `k + 1` letters.
///
/// `u` must not already be a reset word: deficiency cannot exceed `n - 1`.
pub fn extend_deficiency(a: &Semiautomaton, u: &Word, v: &Word, limits: &Limits) -> Result<Word> {
    non_empty(u, "u")?;
    non_empty(v, "v")?;
    a.alphabet().check_word(u)?;
    a.alphabet().check_word(v)?;
    let n = a.n_states();
    let k = deficiency(a, u);
    if deficiency(a, v) != k {
        return Err(Error::precondition("u and v must have equal deficiency"));
    }
    if k <= 1 {
        return Err(Error::precondition("the common deficiency must exceed 1"));
    }
    if k + 1 >= n {
        return Err(Error::precondition("u is already a reset word"));
    }
    if !is_synchronizing(a) {
        return Err(Error::precondition("automaton is not synchronizing"));
    }
    let start = a.image(&a.full_set(), u);
    let tau = power::shortest_word_to(
        a,
        start,
        |s| a.image(s, v).len() < n - k,
        Some(k + 1),
        limits.subset_cap,
    )?;
    tau.ok_or_else(|| {
        Error::TheoremViolation(format!(
            "no τ of length ≤ {} raises the deficiency {k}\n{}",
            k + 1,
            instance_dump(a, &[("u", u), ("v", v)])
        ))
    })
}

/// Outcome of the power/sandwich dichotomy for a word `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PowerVerdict {
    /// `v^k` is a reset word, `k = k(v)`.
    PowerResets { k: usize },
    /// `v^k τ v^k` is a reset word.
    Sandwich { k: usize, tau: Word },
}

impl PowerVerdict {
    /// The reset word the verdict claims.
    pub fn composite(&self, v: &Word) -> Word {
        match self {
            PowerVerdict::PowerResets { k } => v.pow(*k),
            PowerVerdict::Sandwich { k, tau } => v.pow(*k).concat(tau).concat(&v.pow(*k)),
        }
    }
}

/// Either `v^{k(v)}` resets, or a `τ` with `|τ| ≤ n - 1` makes
/// `v^{k(v)} τ v^{k(v)}` reset. Only defined for finitely generated
/// synchronizing automata.
pub fn theorem4_witness(a: &Semiautomaton, v: &Word, limits: &Limits) -> Result<PowerVerdict> {
    non_empty(v, "v")?;
    if !is_synchronizing(a) {
        return Err(Error::precondition("automaton is not synchronizing"));
    }
    if !is_finitely_generated(a, limits)? {
        return Err(Error::precondition("automaton is not finitely generated"));
    }
    let (fixed, k) = maximal_fixed_set(a, v)?;
    if fixed.len() == 1 {
        return Ok(PowerVerdict::PowerResets { k });
    }
    let vk = v.pow(k);
    let n = a.n_states();
    let start = a.image(&a.full_set(), &vk);
    let tau = power::shortest_word_to(
        a,
        start,
        |s| a.image(s, &vk).len() == 1,
        Some(n - 1),
        limits.subset_cap,
    )?;
    match tau {
        Some(tau) => Ok(PowerVerdict::Sandwich { k, tau }),
        None => Err(Error::TheoremViolation(format!(
            "neither v^{k} nor any v^{k} τ v^{k} with |τ| ≤ {} resets\n{}",
            n - 1,
            instance_dump(a, &[("v", v)])
        ))),
    }
}

/// Syn_min(A) = Syn \ (Σ⁺Syn ∪ SynΣ⁺): reset words none of whose proper
/// prefixes or suffixes reset.
pub fn minimal_reset_words(a: &Semiautomaton, limits: &Limits) -> Result<Language> {
    if !is_synchronizing(a) {
        return Err(Error::precondition("automaton is not synchronizing"));
    }
    let syn = syn_language(a, limits)?;
    let padded = syn.prepend_plus(limits)?.union(&syn.append_plus())?;
    syn.difference(&padded)
}

/// Syn(A) is finitely generated as an ideal iff Syn_min(A) is finite.
pub fn is_finitely_generated(a: &Semiautomaton, limits: &Limits) -> Result<bool> {
    Ok(minimal_reset_words(a, limits)?.is_finite())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixViolation {
    pub subset: Vec<State>,
    pub word: Word,
    pub fixed_set: Vec<State>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixProbe {
    pub finitely_generated: bool,
    pub subsets: usize,
    pub samples: usize,
    pub agreements: usize,
    pub violations: Vec<FixViolation>,
}

/// Compares Syn(S) with Syn(m(u)) for every reachable `S` with
/// `1 < |S| < |Q|` and up to `samples` non-empty words `u` fixing `S`
/// (shortlex, length at most `2|Q|`).
pub fn theorem8_probe(a: &Semiautomaton, samples: usize, limits: &Limits) -> Result<FixProbe> {
    if !is_synchronizing(a) {
        return Err(Error::precondition("automaton is not synchronizing"));
    }
    let n = a.n_states();
    let finitely_generated = is_finitely_generated(a, limits)?;
    let reachable = power::power_from(a, a.full_set(), limits.subset_cap)?;
    let mut cache: HashMap<StateSet, Language> = HashMap::new();
    let mut syn_of = |s: &StateSet| -> Result<Language> {
        if let Some(l) = cache.get(s) {
            return Ok(l.clone());
        }
        let l = syn_language_from(a, s.clone(), limits)?;
        cache.insert(s.clone(), l.clone());
        Ok(l)
    };
    let mut probe = FixProbe {
        finitely_generated,
        subsets: 0,
        samples: 0,
        agreements: 0,
        violations: Vec::new(),
    };
    for s in reachable
        .configs
        .iter()
        .filter(|s| s.len() > 1 && s.len() < n)
    {
        probe.subsets += 1;
        let fixing = Word::all_up_to(a.n_letters(), 2 * n)
            .skip(1)
            .filter(|u| a.image(s, u) == *s)
            .take(samples);
        for u in fixing {
            probe.samples += 1;
            let (m, _) = maximal_fixed_set(a, &u)?;
            if syn_of(s)? == syn_of(&m)? {
                probe.agreements += 1;
            } else {
                probe.violations.push(FixViolation {
                    subset: s.as_slice().to_vec(),
                    word: u,
                    fixed_set: m.as_slice().to_vec(),
                });
            }
        }
    }
    Ok(probe)
}

/// C_n over `a b`: `a` cycles the states, `b` sends 0 to 1 and fixes the rest.
pub fn cerny_automaton(n: usize) -> Result<Semiautomaton> {
    if n < 2 {
        return Err(Error::precondition("C_n needs n ≥ 2"));
    }
    Ok(Semiautomaton::from_fn(
        Alphabet::latin(2),
        n,
        |q, l| match l {
            0 => (q + 1) % n,
            _ if q == 0 => 1,
            _ => q,
        },
    ))
}

/// Number of complete tables with `n` states over `k` letters, if it fits
/// in `budget`.
pub fn table_count(n: usize, k: usize, budget: usize) -> Result<usize> {
    u32::try_from(n * k)
        .ok()
        .and_then(|e| n.checked_pow(e))
        .filter(|&t| t <= budget)
        .ok_or(Error::Budget {
            what: "semiautomaton enumeration",
            limit: budget,
        })
}

/// The `index`-th table in lexicographic order of the image sequence
/// `δ(0,a1) δ(0,a2) … δ(n-1,ak)`.
pub fn semiautomaton_at(n: usize, alphabet: &Alphabet, mut index: usize) -> Semiautomaton {
    let len = n * alphabet.len();
    let mut delta = vec![0; len];
    for slot in delta.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    Semiautomaton::new(alphabet.clone(), n, delta).expect("digits are in range")
}

/// Every complete table with `n` states, each exactly once, in
/// lexicographic order of the image sequence.
pub fn enumerate_semiautomata(
    n: usize,
    alphabet: &Alphabet,
    budget: usize,
) -> Result<impl Iterator<Item = Semiautomaton> + '_> {
    if n == 0 {
        return Err(Error::precondition("automata need at least one state"));
    }
    let total = table_count(n, alphabet.len(), budget)?;
    Ok((0..total).map(move |i| semiautomaton_at(n, alphabet, i)))
}

#[derive(Debug, Clone, Serialize)]
pub struct RcParameters {
    pub word: String,
    pub alphabet: Vec<String>,
    pub max_states: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RcWitness {
    pub states: usize,
    pub index: usize,
    pub aut: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RcSizeCount {
    pub states: usize,
    pub tables: usize,
    pub synchronizing: usize,
    pub witnesses: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RcCounts {
    pub per_size: Vec<RcSizeCount>,
    /// Smallest state count with a witness.
    pub reset_complexity: Option<usize>,
}

/// Exhaustive search for semiautomata whose reset-word language is Σ*wΣ*.
#[derive(Debug, Clone, Serialize)]
pub struct RcReport {
    pub query: &'static str,
    pub parameters: RcParameters,
    pub witnesses: Vec<RcWitness>,
    pub counts: RcCounts,
    pub elapsed_ms: u64,
}

/// Enumerates every table with 1..=`n_max` states and keeps those whose
/// reset-word language equals Σ*wΣ*. Tables are checked in parallel and
/// merged by index.
pub fn rc_search(w: &Word, alphabet: &Alphabet, n_max: usize, limits: &Limits) -> Result<RcReport> {
    let began = Instant::now();
    let target = Language::principal_ideal(w, alphabet)?;
    let totals = (1..=n_max)
        .map(|n| table_count(n, alphabet.len(), limits.enumeration_budget))
        .collect::<Result<Vec<_>>>()?;
    let mut witnesses = Vec::new();
    let mut per_size = Vec::new();
    for (n, &total) in (1..=n_max).zip(&totals) {
        let results: Vec<(usize, bool, bool)> = (0..total)
            .into_par_iter()
            .map(|i| {
                let a = semiautomaton_at(n, alphabet, i);
                if !is_synchronizing(&a) {
                    return Ok((i, false, false));
                }
                let hit = syn_language(&a, limits)? == target;
                Ok((i, true, hit))
            })
            .collect::<Result<_>>()?;
        let mut count = RcSizeCount {
            states: n,
            tables: total,
            synchronizing: 0,
            witnesses: 0,
        };
        for (i, sync, hit) in results {
            count.synchronizing += usize::from(sync);
            if hit {
                count.witnesses += 1;
                witnesses.push(RcWitness {
                    states: n,
                    index: i,
                    aut: semiautomaton_to_aut(&semiautomaton_at(n, alphabet, i)),
                });
            }
        }
        per_size.push(count);
    }
    let reset_complexity = per_size.iter().find(|c| c.witnesses > 0).map(|c| c.states);
    Ok(RcReport {
        query: "rc-search",
        parameters: RcParameters {
            word: alphabet.format_word(w),
            alphabet: alphabet.tokens().to_vec(),
            max_states: n_max,
        },
        witnesses,
        counts: RcCounts {
            per_size,
            reset_complexity,
        },
        elapsed_ms: began.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Word {
        Alphabet::latin(2).parse_word(s, false).unwrap()
    }

    #[test]
    fn trivial_cases() {
        let one = Semiautomaton::from_fn(Alphabet::latin(2), 1, |_, _| 0);
        assert!(is_synchronizing(&one));
        let r = shortest_reset(&one, &Limits::default()).unwrap();
        assert_eq!(r.threshold, Some(0));
        let perm =
            Semiautomaton::from_fn(Alphabet::latin(2), 2, |q, l| if l == 0 { 1 - q } else { q });
        assert!(!is_synchronizing(&perm));
        assert!(syn_language(&perm, &Limits::default()).unwrap().is_empty());
        assert_eq!(
            shortest_reset(&perm, &Limits::default()).unwrap().shortest,
            None
        );
    }

    #[test]
    fn cerny_thresholds() {
        let limits = Limits::default();
        for (n, t) in [(2, 1), (3, 4), (4, 9), (5, 16)] {
            let c = cerny_automaton(n).unwrap();
            assert!(is_synchronizing(&c));
            assert_eq!(shortest_reset(&c, &limits).unwrap().threshold, Some(t));
        }
    }

    #[test]
    fn fixed_sets_on_c4() {
        let c = cerny_automaton(4).unwrap();
        assert_eq!(
            maximal_fixed_set(&c, &word("a")).unwrap(),
            (StateSet::full(4), 0)
        );
        assert_eq!(
            maximal_fixed_set(&c, &word("b")).unwrap(),
            (StateSet::new([1, 2, 3]), 1)
        );
        assert_eq!(deficiency(&c, &Word::empty()), 0);
        assert_eq!(deficiency(&c, &word("b")), 1);
        assert!(maximal_fixed_set(&c, &Word::empty()).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let ab = Alphabet::latin(2);
        assert_eq!(enumerate_semiautomata(2, &ab, 1 << 20).unwrap().count(), 16);
        let all: Vec<_> = enumerate_semiautomata(3, &ab, 1 << 20).unwrap().collect();
        assert_eq!(all.len(), 729);
        assert!(all.windows(2).all(|p| p[0].table() < p[1].table()));
        assert!(enumerate_semiautomata(3, &ab, 100).is_err());
    }

    #[test]
    fn rc_search_for_ab() {
        let r = rc_search(&word("ab"), &Alphabet::latin(2), 3, &Limits::default()).unwrap();
        let w: Vec<usize> = r.counts.per_size.iter().map(|c| c.witnesses).collect();
        assert_eq!(w[0], 0);
        assert_eq!(w[1], 0);
        assert!(w[2] >= 1);
        assert_eq!(r.counts.reset_complexity, Some(3));
    }

    #[test]
    fn power_verdicts_reset() {
        let limits = Limits::default();
        let aw = crate::aw::build_aw(&word("aba"), &Alphabet::latin(2)).unwrap();
        for v in ["a", "b", "ab", "ba", "aba"] {
            let v = word(v);
            let verdict = theorem4_witness(aw.base(), &v, &limits).unwrap();
            let full = aw.base().full_set();
            assert_eq!(aw.base().image(&full, &verdict.composite(&v)).len(), 1);
        }
    }
}
