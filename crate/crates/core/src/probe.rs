//! Falsification probes for the Černý bound on concrete automata and on
//! the quotients of their lifts.

use serde::Serialize;

use crate::automaton::Semiautomaton;
use crate::congruence::{quotient, small_congruences};
use crate::error::{Error, Result};
use crate::format::semiautomaton_to_aut;
use crate::lift::lift;
use crate::synchro::shortest_reset;
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeEntry {
    pub states: usize,
    /// Length of a shortest reset word.
    pub threshold: usize,
    /// `(states - 1)²`.
    pub bound: usize,
    pub equality: bool,
    pub lifted_states: usize,
    /// Congruences of the lift small enough for the quotient test.
    pub congruences_checked: usize,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub automata: usize,
    pub equalities: usize,
    pub violations: usize,
    pub entries: Vec<ProbeEntry>,
}

/// For each automaton with `k` states: `(k - 1)² ≥ ‖Syn‖`. For its lift `B`
/// and every congruence of index `k'` with `(k' - 1)² < ‖Syn(B)‖`:
/// `‖Syn(B/ρ)‖ < ‖Syn(B)‖`.
pub fn cerny_probes(corpus: &[Semiautomaton], limits: &Limits) -> Result<ProbeReport> {
    let mut entries = Vec::with_capacity(corpus.len());
    for a in corpus {
        if a.n_states() > 8 {
            return Err(Error::precondition("probes are limited to 8 states"));
        }
        let k = a.n_states();
        let threshold = shortest_reset(a, limits)?
            .threshold
            .ok_or_else(|| Error::precondition("automaton is not synchronizing"))?;
        let bound = (k - 1) * (k - 1);
        let mut violations = Vec::new();
        if threshold > bound {
            violations.push(format!(
                "reset threshold {threshold} exceeds {bound}\n{}",
                semiautomaton_to_aut(a)
            ));
        }
        let lifted = lift(a, limits)?;
        let b = lifted.b.base();
        let lifted_threshold = lifted.word.len();
        let mut checked = 0;
        // largest index k' with (k' - 1)² < ‖Syn(B)‖
        let max_index = (1..)
            .take_while(|&i: &usize| (i - 1) * (i - 1) < lifted_threshold)
            .last();
        let small = match max_index {
            Some(m) => small_congruences(b, m, limits.congruence_budget)?,
            None => Vec::new(),
        };
        for rho in small {
            let index = rho.index();
            checked += 1;
            let q = quotient(b, &rho)?;
            // homomorphic images of synchronizing automata synchronize
            if let Some(t) = shortest_reset(&q, limits)?.threshold {
                if t >= lifted_threshold {
                    violations.push(format!(
                        "quotient of index {index} has threshold {t}, lift has {lifted_threshold}\n{}",
                        semiautomaton_to_aut(&q)
                    ));
                }
            }
        }
        entries.push(ProbeEntry {
            states: k,
            threshold,
            bound,
            equality: threshold == bound,
            lifted_states: b.n_states(),
            congruences_checked: checked,
            violations,
        });
    }
    Ok(ProbeReport {
        automata: entries.len(),
        equalities: entries.iter().filter(|e| e.equality).count(),
        violations: entries.iter().map(|e| e.violations.len()).sum(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synchro::cerny_automaton;

    #[test]
    fn cerny_family_hits_the_bound() {
        let corpus: Vec<_> = (3..=4).map(|n| cerny_automaton(n).unwrap()).collect();
        let r = cerny_probes(&corpus, &Limits::default()).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!(r.equalities, 2);
        assert!(r.entries.iter().all(|e| e.congruences_checked >= 1));
    }
}
