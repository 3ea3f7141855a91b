//! The `.aut` text format and DOT export.
//!
//! ```text
//! # Černý automaton C_3
//! alphabet: a b
//! states: 3
//! initial: 0
//! finals: 2
//! table:
//! 0: 1 1
//! 1: 2 1
//! 2: 0 2
//! ```
//!
//! `#` starts a comment. Header lines come before `table:`; `initial` and
//! `finals` are optional, and a file without `initial` describes a bare
//! semiautomaton. The table lists `δ(id, letter)` in alphabet order, one row
//! per state.

use std::fmt::Write as _;

use crate::automaton::{Acceptor, Semiautomaton, State};
use crate::error::{Error, Result};
use crate::word::Alphabet;

/// Result of parsing a `.aut` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Automaton {
    Semi(Semiautomaton),
    Acceptor(Acceptor),
}

impl Automaton {
    pub fn base(&self) -> &Semiautomaton {
        match self {
            Automaton::Semi(s) => s,
            Automaton::Acceptor(a) => a.base(),
        }
    }

    pub fn to_aut(&self) -> String {
        match self {
            Automaton::Semi(s) => semiautomaton_to_aut(s),
            Automaton::Acceptor(a) => acceptor_to_aut(a),
        }
    }

    pub fn to_dot(&self) -> String {
        match self {
            Automaton::Semi(s) => render_dot(s, None),
            Automaton::Acceptor(a) => render_dot(a.base(), Some(a)),
        }
    }
}

#[derive(Default)]
struct Header {
    alphabet: Option<Alphabet>,
    states: Option<usize>,
    initial: Option<(usize, State)>,
    finals: Option<(usize, Vec<State>)>,
}

fn parse_id(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("expected a state id, found `{tok}`")))
}

fn check_range(q: State, n: usize, line: usize) -> Result<State> {
    if q < n {
        Ok(q)
    } else {
        Err(Error::parse(line, format!("state {q} out of range")))
    }
}

/// Parses `.aut` text.
pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let mut header = Header::default();
    let mut rows: Vec<Option<Vec<State>>> = Vec::new();
    let mut in_table = false;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, rest)) = content.split_once(':') else {
            return Err(Error::parse(line, format!("malformed header `{content}`")));
        };
        let key = key.trim();
        let values: Vec<&str> = rest.split_whitespace().collect();

        if in_table {
            let n = rows.len();
            let q = check_range(parse_id(key, line)?, n, line)?;
            if rows[q].is_some() {
                return Err(Error::parse(line, format!("duplicate row for state {q}")));
            }
            let k = header.alphabet.as_ref().map_or(0, Alphabet::len);
            if values.len() != k {
                return Err(Error::parse(
                    line,
                    format!(
                        "row for state {q} has {} entries, expected {k}",
                        values.len()
                    ),
                ));
            }
            let row = values
                .iter()
                .map(|t| check_range(parse_id(t, line)?, n, line))
                .collect::<Result<Vec<_>>>()?;
            rows[q] = Some(row);
            continue;
        }

        let duplicate = || Error::parse(line, format!("malformed header: `{key}` given twice"));
        match key {
            "alphabet" => {
                if header.alphabet.is_some() {
                    return Err(duplicate());
                }
                let alphabet = Alphabet::new(values.iter().copied())
                    .map_err(|e| Error::parse(line, format!("malformed header: {e}")))?;
                header.alphabet = Some(alphabet);
            }
            "states" => {
                if header.states.is_some() {
                    return Err(duplicate());
                }
                let [n] = values.as_slice() else {
                    return Err(Error::parse(
                        line,
                        "malformed header: `states` takes one count",
                    ));
                };
                let n = n
                    .parse::<usize>()
                    .ok()
                    .filter(|&n| n > 0)
                    .ok_or_else(|| Error::parse(line, "malformed header: bad state count"))?;
                header.states = Some(n);
            }
            "initial" => {
                if header.initial.is_some() {
                    return Err(duplicate());
                }
                let [q] = values.as_slice() else {
                    return Err(Error::parse(
                        line,
                        "malformed header: `initial` takes one state",
                    ));
                };
                header.initial = Some((line, parse_id(q, line)?));
            }
            "finals" => {
                if header.finals.is_some() {
                    return Err(duplicate());
                }
                let finals = values
                    .iter()
                    .map(|t| parse_id(t, line))
                    .collect::<Result<Vec<_>>>()?;
                header.finals = Some((line, finals));
            }
            "table" => {
                if !values.is_empty() {
                    return Err(Error::parse(
                        line,
                        "malformed header: `table:` takes no values",
                    ));
                }
                if header.alphabet.is_none() {
                    return Err(Error::parse(line, "malformed header: missing `alphabet`"));
                }
                let n = header
                    .states
                    .ok_or_else(|| Error::parse(line, "malformed header: missing `states`"))?;
                rows = vec![None; n];
                in_table = true;
            }
            other => {
                return Err(Error::parse(
                    line,
                    format!("malformed header: unknown key `{other}`"),
                ));
            }
        }
    }

    if !in_table {
        return Err(Error::parse(
            last_line.max(1),
            "malformed header: missing `table:`",
        ));
    }
    if let Some(q) = rows.iter().position(Option::is_none) {
        return Err(Error::parse(
            last_line,
            format!("incomplete transition table: no row for state {q}"),
        ));
    }
    let alphabet = header.alphabet.expect("checked at table:");
    let n = rows.len();
    let delta = rows.into_iter().flat_map(|r| r.expect("checked")).collect();
    let semi = Semiautomaton::new(alphabet, n, delta)
        .map_err(|e| Error::parse(last_line, e.to_string()))?;

    match (header.initial, header.finals) {
        (None, None) => Ok(Automaton::Semi(semi)),
        (None, Some((line, _))) => Err(Error::parse(
            line,
            "malformed header: `finals` without `initial`",
        )),
        (Some((line, q)), finals) => {
            let q = check_range(q, n, line)?;
            let (fline, finals) = finals.unwrap_or((line, Vec::new()));
            for &f in &finals {
                check_range(f, n, fline)?;
            }
            Ok(Automaton::Acceptor(Acceptor::new(semi, q, &finals)?))
        }
    }
}

fn write_table(out: &mut String, a: &Semiautomaton) {
    out.push_str("table:\n");
    for q in a.states() {
        let _ = write!(out, "{q}:");
        for l in a.alphabet().letters() {
            let _ = write!(out, " {}", a.step(q, l));
        }
        out.push('\n');
    }
}

pub fn semiautomaton_to_aut(a: &Semiautomaton) -> String {
    let mut out = format!("alphabet: {}\nstates: {}\n", a.alphabet(), a.n_states());
    write_table(&mut out, a);
    out
}

pub fn acceptor_to_aut(acc: &Acceptor) -> String {
    let a = acc.base();
    let mut out = format!(
        "alphabet: {}\nstates: {}\ninitial: {}\n",
        a.alphabet(),
        a.n_states(),
        acc.initial()
    );
    let finals = acc.finals();
    if !finals.is_empty() {
        let list: Vec<String> = finals.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "finals: {}", list.join(" "));
    }
    write_table(&mut out, a);
    out
}

fn escape(token: &str) -> String {
    token.replace('\\', "\\\\").replace('"', "\\\"")
}

fn render_dot(a: &Semiautomaton, acc: Option<&Acceptor>) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    for q in a.states() {
        let shape = match acc {
            Some(acc) if acc.is_final(q) => "doublecircle",
            _ => "circle",
        };
        let _ = writeln!(out, "  {q} [shape={shape}];");
    }
    if let Some(acc) = acc {
        out.push_str("  __start [shape=point, style=invis];\n");
        let _ = writeln!(out, "  __start -> {};", acc.initial());
    }
    for q in a.states() {
        for l in a.alphabet().letters() {
            let _ = writeln!(
                out,
                "  {q} -> {} [label=\"{}\"];",
                a.step(q, l),
                escape(a.alphabet().token(l))
            );
        }
    }
    out.push_str("}\n");
    out
}

pub fn semiautomaton_to_dot(a: &Semiautomaton) -> String {
    render_dot(a, None)
}

pub fn acceptor_to_dot(acc: &Acceptor) -> String {
    render_dot(acc.base(), Some(acc))
}
