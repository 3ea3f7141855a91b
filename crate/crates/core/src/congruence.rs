//! Congruences, quotients and homomorphisms of semiautomata.

use std::collections::{HashSet, VecDeque};

use crate::automaton::{Acceptor, Semiautomaton, State};
use crate::error::{Error, Result};

/// Largest state count accepted by [`enumerate_congruences`].
pub const MAX_ENUMERATION_STATES: usize = 10;

/// A partition of the state set, stored as a block label per state in
/// restricted-growth form (labels appear in increasing order of first use).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block_of: Vec<usize>,
    index: usize,
}

impl Partition {
    /// Canonicalizes arbitrary labels into restricted-growth form.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let block_of = labels
            .iter()
            .map(|l| {
                let fresh = map.len();
                *map.entry(*l).or_insert(fresh)
            })
            .collect();
        Partition {
            block_of,
            index: map.len(),
        }
    }

    /// Builds a partition from explicit blocks, which must be non-empty,
    /// disjoint and cover `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<State>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::precondition("empty block"));
            }
            for &q in block {
                if q >= n {
                    return Err(Error::precondition(format!("state {q} out of range")));
                }
                if labels[q] != usize::MAX {
                    return Err(Error::precondition(format!("state {q} lies in two blocks")));
                }
                labels[q] = b;
            }
        }
        if let Some(q) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::precondition(format!("state {q} lies in no block")));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn identity(n: usize) -> Self {
        Partition {
            block_of: (0..n).collect(),
            index: n,
        }
    }

    pub fn total(n: usize) -> Self {
        Partition {
            block_of: vec![0; n],
            index: 1,
        }
    }

    /// Number of blocks.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn n_states(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, q: State) -> usize {
        self.block_of[q]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    pub fn blocks(&self) -> Vec<Vec<State>> {
        let mut blocks = vec![Vec::new(); self.index];
        for (q, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(q);
        }
        blocks
    }
}

/// Checks the one-letter closure condition, which is equivalent to closure
/// under all words.
pub fn is_congruence(a: &Semiautomaton, p: &Partition) -> bool {
    if p.n_states() != a.n_states() {
        return false;
    }
    // compare every state with the first state of its block
    let mut rep = vec![usize::MAX; p.index()];
    for q in a.states() {
        let b = p.block_of(q);
        if rep[b] == usize::MAX {
            rep[b] = q;
            continue;
        }
        let r = rep[b];
        if a.alphabet()
            .letters()
            .any(|l| p.block_of(a.step(q, l)) != p.block_of(a.step(r, l)))
        {
            return false;
        }
    }
    true
}

/// `A/ρ`, with block `i` of `p` as state `i`.
pub fn quotient(a: &Semiautomaton, p: &Partition) -> Result<Semiautomaton> {
    if !is_congruence(a, p) {
        return Err(Error::precondition("partition is not a congruence"));
    }
    let blocks = p.blocks();
    Ok(Semiautomaton::from_fn(
        a.alphabet().clone(),
        p.index(),
        |b, l| p.block_of(a.step(blocks[b][0], l)),
    ))
}

/// `A/ρ = (Q/ρ, Σ, δ', [q0], F/ρ)`.
pub fn quotient_acceptor(acc: &Acceptor, p: &Partition) -> Result<Acceptor> {
    let base = quotient(acc.base(), p)?;
    let finals: Vec<State> = acc.finals().iter().map(|&f| p.block_of(f)).collect();
    Acceptor::new(base, p.block_of(acc.initial()), &finals)
}

/// Every congruence of index at most `max_index`, each exactly once, in
/// restricted-growth order. Refuses automata above
/// [`MAX_ENUMERATION_STATES`] states.
pub fn enumerate_congruences(a: &Semiautomaton, max_index: usize) -> Result<Vec<Partition>> {
    if max_index == 0 {
        return Err(Error::precondition("max_index must be at least 1"));
    }
    if a.n_states() > MAX_ENUMERATION_STATES {
        return Err(Error::Budget {
            what: "congruence enumeration state count",
            limit: MAX_ENUMERATION_STATES,
        });
    }
    let mut out = Vec::new();
    let mut labels = Vec::with_capacity(a.n_states());
    rg_extend(a, max_index, &mut labels, 0, &mut out);
    Ok(out)
}

fn rg_extend(
    a: &Semiautomaton,
    max_index: usize,
    labels: &mut Vec<usize>,
    used: usize,
    out: &mut Vec<Partition>,
) {
    let n = a.n_states();
    if labels.len() == n {
        let p = Partition {
            block_of: labels.clone(),
            index: used,
        };
        if is_congruence(a, &p) {
            out.push(p);
        }
        return;
    }
    let limit = (used + 1).min(max_index);
    for label in 0..limit {
        labels.push(label);
        if partial_consistent(a, labels) {
            rg_extend(a, max_index, labels, used.max(label + 1), out);
        }
        labels.pop();
    }
}

// Rejects a prefix assignment as soon as two same-block states have
// already-labelled successors in different blocks.
fn partial_consistent(a: &Semiautomaton, labels: &[usize]) -> bool {
    let m = labels.len();
    let q = m - 1;
    for p in 0..q {
        if labels[p] != labels[q] {
            continue;
        }
        for l in a.alphabet().letters() {
            let (s, t) = (a.step(p, l), a.step(q, l));
            if s < m && t < m && labels[s] != labels[t] {
                return false;
            }
        }
    }
    // successor pairs of earlier same-block pairs that just became comparable
    for p in 0..m {
        for r in (p + 1)..m {
            if labels[p] != labels[r] {
                continue;
            }
            for l in a.alphabet().letters() {
                let (s, t) = (a.step(p, l), a.step(r, l));
                if (s == q || t == q) && s < m && t < m && labels[s] != labels[t] {
                    return false;
                }
            }
        }
    }
    true
}

/// The smallest congruence containing `base` and the pair `(p, q)`.
pub fn join_pair(a: &Semiautomaton, base: &Partition, p: State, q: State) -> Partition {
    let n = a.n_states();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut pending = VecDeque::new();
    for block in base.blocks() {
        for w in block.windows(2) {
            pending.push_back((w[0], w[1]));
        }
    }
    pending.push_back((p, q));
    while let Some((x, y)) = pending.pop_front() {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx == ry {
            continue;
        }
        parent[rx] = ry;
        for l in a.alphabet().letters() {
            pending.push_back((a.step(x, l), a.step(y, l)));
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    Partition::from_labels(&labels)
}

/// All congruences of `a`, generated as joins of principal congruences
/// starting from the identity. Works beyond the restricted-growth cap as
/// long as the congruence lattice itself has at most `budget` elements.
pub fn congruence_lattice(a: &Semiautomaton, budget: usize) -> Result<Vec<Partition>> {
    let start = Partition::identity(a.n_states());
    let mut seen: HashSet<Partition> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(rho) = queue.pop_front() {
        let reps: Vec<State> = rho.blocks().iter().map(|b| b[0]).collect();
        for i in 0..reps.len() {
            for j in (i + 1)..reps.len() {
                let joined = join_pair(a, &rho, reps[i], reps[j]);
                if !seen.contains(&joined) {
                    if seen.len() >= budget {
                        return Err(Error::Budget {
                            what: "congruence lattice size",
                            limit: budget,
                        });
                    }
                    seen.insert(joined.clone());
                    queue.push_back(joined);
                }
            }
        }
        out.push(rho);
    }
    out.sort();
    Ok(out)
}

/// Every congruence of index at most `max_index`, for automata of any size.
///
/// States are visited in order; a state not yet tied to an earlier block
/// either joins one of the at most `max_index` blocks opened so far (the
/// join is closed under the letters) or opens a new block. Blocks opened
/// separately must stay separate, which makes each congruence appear once.
/// `budget` bounds the number of search nodes.
pub fn small_congruences(
    a: &Semiautomaton,
    max_index: usize,
    budget: usize,
) -> Result<Vec<Partition>> {
    if max_index == 0 {
        return Err(Error::precondition("max_index must be at least 1"));
    }
    let mut search = SmallSearch {
        a,
        max_index,
        budget,
        nodes: 0,
        out: Vec::new(),
    };
    search.visit(0, Partition::identity(a.n_states()), &mut Vec::new())?;
    search.out.sort();
    Ok(search.out)
}

struct SmallSearch<'a> {
    a: &'a Semiautomaton,
    max_index: usize,
    budget: usize,
    nodes: usize,
    out: Vec<Partition>,
}

impl SmallSearch<'_> {
    fn visit(&mut self, q: State, rho: Partition, minima: &mut Vec<State>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget {
                what: "congruence search",
                limit: self.budget,
            });
        }
        let n = self.a.n_states();
        if q == n {
            self.out.push(rho);
            return Ok(());
        }
        if minima.iter().any(|&m| rho.block_of(m) == rho.block_of(q)) {
            return self.visit(q + 1, rho, minima);
        }
        for i in 0..minima.len() {
            let joined = join_pair(self.a, &rho, minima[i], q);
            if separated(&joined, minima) {
                self.visit(q + 1, joined, minima)?;
            }
        }
        if minima.len() < self.max_index {
            minima.push(q);
            self.visit(q + 1, rho, minima)?;
            minima.pop();
        }
        Ok(())
    }
}

fn separated(rho: &Partition, minima: &[State]) -> bool {
    let mut blocks: Vec<usize> = minima.iter().map(|&m| rho.block_of(m)).collect();
    blocks.sort_unstable();
    blocks.windows(2).all(|w| w[0] != w[1])
}

/// A total map from the states of one semiautomaton to another's.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateMap {
    pub images: Vec<State>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomomorphismCheck {
    pub homomorphism: bool,
    pub surjective: bool,
}

/// Verifies `φ(δ(q, a)) = ξ(φ(q), a)` for every state and letter.
pub fn check_homomorphism(
    phi: &StateMap,
    a: &Semiautomaton,
    b: &Semiautomaton,
) -> Result<HomomorphismCheck> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if phi.images.len() != a.n_states() || phi.images.iter().any(|&t| t >= b.n_states()) {
        return Err(Error::precondition("state map does not match the automata"));
    }
    let homomorphism = a.states().all(|q| {
        a.alphabet()
            .letters()
            .all(|l| phi.images[a.step(q, l)] == b.step(phi.images[q], l))
    });
    let mut hit = vec![false; b.n_states()];
    for &t in &phi.images {
        hit[t] = true;
    }
    Ok(HomomorphismCheck {
        homomorphism,
        surjective: hit.iter().all(|&h| h),
    })
}

/// The partition of the source states by equal image.
pub fn kernel(phi: &StateMap) -> Partition {
    Partition::from_labels(&phi.images)
}

/// The sub-automaton `φ(A)` of `b`, states listed in increasing order.
pub fn image_subautomaton(phi: &StateMap, b: &Semiautomaton) -> Result<Semiautomaton> {
    let mut states = phi.images.clone();
    states.sort_unstable();
    states.dedup();
    b.restrict(&states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn brute_force(a: &Semiautomaton, max_index: usize) -> Vec<Partition> {
        // every restricted-growth string, unpruned
        let n = a.n_states();
        let mut out = Vec::new();
        let mut labels = vec![0usize; n];
        loop {
            let p = Partition::from_labels(&labels);
            if p.labels() == labels.as_slice() && p.index() <= max_index && is_congruence(a, &p) {
                out.push(p);
            }
            // odometer over 0..n per position
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                labels[i] += 1;
                if labels[i] < n {
                    break;
                }
                labels[i] = 0;
            }
        }
    }

    fn cerny4() -> Semiautomaton {
        Semiautomaton::from_fn(Alphabet::latin(2), 4, |q, l| match l {
            0 => (q + 1) % 4,
            _ => usize::from(q == 0) + q,
        })
    }

    #[test]
    fn identity_and_total_are_congruences() {
        let a = cerny4();
        assert!(is_congruence(&a, &Partition::identity(4)));
        assert!(is_congruence(&a, &Partition::total(4)));
        let q = quotient(&a, &Partition::identity(4)).unwrap();
        assert_eq!(q, a);
        assert_eq!(quotient(&a, &Partition::total(4)).unwrap().n_states(), 1);
    }

    #[test]
    fn quotient_rejects_non_congruence() {
        let a = cerny4();
        let p = Partition::from_blocks(4, &[vec![0, 1], vec![2], vec![3]]).unwrap();
        assert!(!is_congruence(&a, &p));
        assert!(quotient(&a, &p).is_err());
    }

    #[test]
    fn cerny_congruences_match_brute_force() {
        let a = cerny4();
        let fast = enumerate_congruences(&a, 4).unwrap();
        let slow = brute_force(&a, 4);
        assert_eq!(fast, slow);
        let lattice = congruence_lattice(&a, 1000).unwrap();
        assert_eq!(lattice, slow);
    }

    #[test]
    fn small_index_search_matches_both_enumerations() {
        let a = cerny4();
        let all = congruence_lattice(&a, 1000).unwrap();
        for m in 1..=4 {
            let mut rg = enumerate_congruences(&a, m).unwrap();
            rg.sort();
            let small = small_congruences(&a, m, 100_000).unwrap();
            assert_eq!(small, rg, "index ≤ {m}");
            let filtered: Vec<_> = all.iter().filter(|p| p.index() <= m).cloned().collect();
            assert_eq!(small, filtered);
        }
        // a 12-state cycle: the congruences are the cyclic residues mod divisors of 12
        let cycle = Semiautomaton::from_fn(Alphabet::latin(1), 12, |q, _| (q + 1) % 12);
        let found = small_congruences(&cycle, 4, 100_000).unwrap();
        let indices: Vec<usize> = found.iter().map(Partition::index).collect();
        assert_eq!(indices.len(), 4);
        assert!([1, 2, 3, 4].iter().all(|i| indices.contains(i)));
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 2], vec![1]]).is_ok());
    }

    #[test]
    fn homomorphism_checks() {
        let a = cerny4();
        let id = StateMap {
            images: (0..4).collect(),
        };
        assert_eq!(
            check_homomorphism(&id, &a, &a).unwrap(),
            HomomorphismCheck {
                homomorphism: true,
                surjective: true
            }
        );
        // 2 states: a swaps, b fixes; constant map to a non-fixed state fails
        let two = Semiautomaton::new(Alphabet::latin(2), 2, vec![1, 0, 0, 1]).unwrap();
        let constant = StateMap { images: vec![0, 0] };
        assert!(
            !check_homomorphism(&constant, &two, &two)
                .unwrap()
                .homomorphism
        );
        let other = Semiautomaton::new(Alphabet::latin(1), 2, vec![1, 0]).unwrap();
        assert_eq!(
            check_homomorphism(&constant, &two, &other),
            Err(Error::AlphabetMismatch)
        );
    }

    #[test]
    fn enumeration_refuses_large_inputs() {
        let big = Semiautomaton::from_fn(Alphabet::latin(1), 11, |q, _| (q + 1) % 11);
        assert!(matches!(
            enumerate_congruences(&big, 2),
            Err(Error::Budget { .. })
        ));
    }
}
