//! Canonical minimization of acceptors.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{Acceptor, Semiautomaton, State};

/// Returns the minimal acceptor of `L[A]` with canonical numbering: states
/// are numbered in breadth-first order from the initial state, exploring
/// letters in alphabet order. Equal languages over the same alphabet give
/// structurally equal results.
pub fn minimize(acc: &Acceptor) -> Acceptor {
    let base = acc.base();
    let k = base.n_letters();
    let reachable = base.reachable_from(acc.initial());
    let live: Vec<State> = base.states().filter(|&q| reachable[q]).collect();

    // Moore refinement over reachable states.
    let mut class = vec![usize::MAX; base.n_states()];
    for &q in &live {
        class[q] = usize::from(acc.is_final(q));
    }
    let mut n_classes = 0;
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = vec![usize::MAX; base.n_states()];
        for &q in &live {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[q]);
            sig.extend((0..k).map(|a| class[base.step(q, a)]));
            let fresh = ids.len();
            next[q] = *ids.entry(sig).or_insert(fresh);
        }
        let count = ids.len();
        class = next;
        if count == n_classes {
            break;
        }
        n_classes = count;
    }

    // Canonical renumbering of the classes.
    let mut rep = vec![usize::MAX; n_classes];
    for &q in &live {
        if rep[class[q]] == usize::MAX {
            rep[class[q]] = q;
        }
    }
    let mut order = vec![usize::MAX; n_classes];
    let mut reps = Vec::with_capacity(n_classes);
    let start = class[acc.initial()];
    order[start] = 0;
    reps.push(rep[start]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for a in 0..k {
            let t = class[base.step(rep[c], a)];
            if order[t] == usize::MAX {
                order[t] = reps.len();
                reps.push(rep[t]);
                queue.push_back(t);
            }
        }
    }
    let (order, class) = (&order, &class);
    let delta = reps
        .iter()
        .flat_map(|&q| (0..k).map(move |a| order[class[base.step(q, a)]]))
        .collect();
    let finals = reps.iter().map(|&q| acc.is_final(q)).collect();
    let semi = Semiautomaton::new(base.alphabet().clone(), reps.len(), delta)
        .expect("minimized table is complete");
    Acceptor::from_mask(semi, 0, finals)
}
