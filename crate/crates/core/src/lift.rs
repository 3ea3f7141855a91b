//! Lifting a strongly connected synchronizing automaton to an acceptor of
//! `w⁻¹Σ*w` that maps onto it.
//!
//! With `w` a shortest reset word, the reset words landing in state `i`
//! split further by their longest suffix that is a prefix of `w`. Each such
//! class is encoded as the pair (landing state, prefix length); the lifted
//! automaton is the reachable part of the product dynamics started from the
//! class of `w` itself, and the first projection is a homomorphism onto the
//! source.

use std::collections::HashMap;

use serde::Serialize;

use crate::automaton::{Acceptor, Semiautomaton, State, StateSet};
use crate::aw::FailureTable;
use crate::congruence::{check_homomorphism, kernel, quotient, StateMap};
use crate::error::{Error, Result};
use crate::isomorphism::is_isomorphic;
use crate::lang::Language;
use crate::synchro::{is_synchronizing, shortest_reset, syn_language};
use crate::word::Word;
use crate::{Check, Limits};

#[derive(Debug, Clone)]
pub struct LiftResult {
    /// The lifted acceptor; its initial state is its only final state.
    pub b: Acceptor,
    /// The reset word the lift is built from.
    pub word: Word,
    /// Projection from the lifted states onto the source states.
    pub phi: StateMap,
    /// (source state, prefix length) of every lifted state.
    pub labels: Vec<(State, usize)>,
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

/// Lifts `a` along its shortlex-least shortest reset word.
pub fn lift(a: &Semiautomaton, limits: &Limits) -> Result<LiftResult> {
    require_scs(a)?;
    let w = shortest_reset(a, limits)?
        .shortest
        .expect("synchronizing automata have reset words");
    lift_with_word(a, &w)
}

/// Lifts `a` along an arbitrary reset word `w`. Only a shortest `w` gives
/// the guarantees checked by [`verify_lift`].
pub fn lift_with_word(a: &Semiautomaton, w: &Word) -> Result<LiftResult> {
    require_scs(a)?;
    a.alphabet().check_word(w)?;
    let landing = a
        .image(&a.full_set(), w)
        .single()
        .ok_or_else(|| Error::precondition("the lifting word does not reset the automaton"))?;
    let table = FailureTable::new(w);
    let start = (landing, w.len());
    let k = a.n_letters();
    let mut ids: HashMap<(State, usize), usize> = HashMap::from([(start, 0)]);
    let mut labels = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < labels.len() {
        let (q, p) = labels[i];
        for l in 0..k {
            let next = (a.step(q, l), table.step(p, l));
            let id = *ids.entry(next).or_insert_with(|| {
                labels.push(next);
                labels.len() - 1
            });
            delta.push(id);
        }
        i += 1;
    }
    let semi = Semiautomaton::new(a.alphabet().clone(), labels.len(), delta)?;
    let b = Acceptor::new(semi, 0, &[0])?;
    let phi = StateMap {
        images: labels.iter().map(|&(q, _)| q).collect(),
    };
    Ok(LiftResult {
        b,
        word: w.clone(),
        phi,
        labels,
    })
}

/// `w⁻¹Σ*w`, which is Σ* for the empty word.
fn quotient_language(w: &Word, a: &Semiautomaton) -> Result<Language> {
    if w.is_empty() {
        return Ok(Language::universal(a.alphabet()));
    }
    Ok(Language::left_principal(w, a.alphabet())?.left_quotient(w))
}

/// Reset words `u` of `a` with `Q·u = {state}` and `|u ∧_s w| = prefix`.
pub fn class_language(
    a: &Semiautomaton,
    w: &Word,
    label: (State, usize),
    limits: &Limits,
) -> Result<Language> {
    let table = FailureTable::new(w);
    let start = (a.full_set(), 0usize);
    let k = a.n_letters();
    let mut ids: HashMap<(StateSet, usize), usize> = HashMap::from([(start.clone(), 0)]);
    let mut nodes = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        for l in 0..k {
            let (set, p) = &nodes[i];
            let next = (a.image_letter(set, l), table.step(*p, l));
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if nodes.len() >= limits.subset_cap {
                        return Err(Error::Budget {
                            what: "class construction",
                            limit: limits.subset_cap,
                        });
                    }
                    ids.insert(next.clone(), nodes.len());
                    nodes.push(next);
                    nodes.len() - 1
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let target = StateSet::singleton(label.0);
    let finals = nodes
        .iter()
        .map(|(s, p)| *s == target && *p == label.1)
        .collect();
    let semi = Semiautomaton::new(a.alphabet().clone(), nodes.len(), delta)?;
    Ok(Language::from_acceptor(&Acceptor::from_mask(
        semi, 0, finals,
    )))
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftReport {
    pub word: String,
    pub lifted_states: usize,
    pub checks: Vec<Check>,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks the lifted acceptor against its source: its language, the
/// reset-word inclusions Σ*wΣ* ⊆ Syn(B) ⊆ Syn(A), the projection as a
/// surjective homomorphism whose kernel quotient is `a`, equal shortest
/// reset lengths, and that every class is a left ideal.
pub fn verify_lift(a: &Semiautomaton, r: &LiftResult, limits: &Limits) -> Result<LiftReport> {
    let w = &r.word;
    let b = r.b.base();
    let mut checks = Vec::new();

    let lang = Language::from_acceptor(&r.b);
    checks.push(Check::new("language", lang == quotient_language(w, a)?));

    let syn_b = syn_language(b, limits)?;
    let syn_a = syn_language(a, limits)?;
    let principal = if w.is_empty() {
        Language::universal(a.alphabet())
    } else {
        Language::principal_ideal(w, a.alphabet())?
    };
    checks.push(Check::new(
        "principal_in_syn_b",
        syn_b.includes(&principal)?,
    ));
    checks.push(Check::new("syn_b_in_syn_a", syn_a.includes(&syn_b)?));

    let hom = check_homomorphism(&r.phi, b, a)?;
    checks.push(Check::new(
        "homomorphism",
        hom.homomorphism && hom.surjective,
    ));

    let iso = hom.homomorphism && is_isomorphic(&quotient(b, &kernel(&r.phi))?, a)?;
    checks.push(Check::new("quotient_isomorphic", iso));

    let len_a = syn_a.shortest_word().map(|u| u.len());
    let len_b = syn_b.shortest_word().map(|u| u.len());
    checks.push(Check::with_detail(
        "reset_lengths",
        len_a == Some(w.len()) && len_b == Some(w.len()),
        format!("source {len_a:?}, word {}, lifted {len_b:?}", w.len()),
    ));

    let mut bad_class = None;
    for &label in &r.labels {
        let class = class_language(a, w, label, limits)?;
        if !class.ideal_kind(limits)?.left {
            bad_class = Some(label);
            break;
        }
    }
    checks.push(match bad_class {
        None => Check::new("classes_left_ideals", true),
        Some((q, p)) => Check::with_detail(
            "classes_left_ideals",
            false,
            format!("class ({q}, {p}) is not a left ideal"),
        ),
    });

    Ok(LiftReport {
        word: a.alphabet().format_word(w),
        lifted_states: b.n_states(),
        checks,
    })
}
