//! Ideal regular languages and synchronizing automata.
//!
//! The crate builds complete deterministic automata, turns them into
//! canonical language handles, and implements the constructions that tie
//! ideal languages to synchronizing automata: reset-word languages, the
//! prefix automaton `A_w` of `w⁻¹Σ*w`, syntactic complexity, Schützenberger
//! constants, reset left regular decompositions and the lifting of strongly
//! connected synchronizing automata. Every construction comes with a
//! brute-force cross-check that the test suites run at small scale.

pub mod automaton;
pub mod aw;
pub mod congruence;
pub mod constants;
pub mod corpus;
pub mod decomp;
pub mod error;
pub mod format;
pub mod isomorphism;
pub mod lang;
pub mod lift;
pub mod minimize;
pub mod power;
pub mod probe;
pub mod synchro;
pub mod syntactic;
pub mod word;

use serde::Serialize;

pub use automaton::{Acceptor, Semiautomaton, State, StateSet};
pub use error::{Error, Result};
pub use lang::{IdealKind, Language};
pub use word::{Alphabet, Letter, Word};

/// Limits that turn exponential blow-ups into clean refusals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of configurations in one subset construction.
    pub subset_cap: usize,
    /// Maximum size of a transition semigroup.
    pub semigroup_cap: usize,
    /// Maximum number of transition tables or words in an exhaustive search.
    pub enumeration_budget: usize,
    /// Maximum number of congruences, or congruence search nodes, for one automaton.
    pub congruence_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subset_cap: 1 << 20,
            semigroup_cap: 1_000_000,
            enumeration_budget: 1 << 24,
            congruence_budget: 100_000,
        }
    }
}

/// One named verdict inside a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &'static str, passed: bool) -> Self {
        Check {
            name,
            passed,
            detail: None,
        }
    }

    pub fn with_detail(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            passed,
            detail: Some(detail.into()),
        }
    }
}

/// Names of the failed checks.
pub fn failures(checks: &[Check]) -> Vec<&'static str> {
    checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name)
        .collect()
}
