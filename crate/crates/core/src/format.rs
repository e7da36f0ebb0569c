//! Plain-text machine files and DOT export.
//!
//! ```text
//! mealy adding
//! alphabet 0 1
//! states t 1
//! identity 1
//! t: 0 -> 1 1 ; 1 -> 0 t
//! 1: 0 -> 0 1 ; 1 -> 1 1
//! ```
//!
//! Each transition reads `<input> -> <output> <next>`. Lines starting with
//! `#` are comments.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::mealy::MealyMachine;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment lines with their 1-based numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Splits `keyword rest...`, checking the keyword.
pub(crate) fn keyword_line<'a>(line: usize, text: &'a str, keyword: &str) -> Result<&'a str> {
    match text.split_once(char::is_whitespace) {
        Some((k, rest)) if k == keyword => Ok(rest.trim()),
        None if text == keyword => Ok(""),
        _ => Err(perr(line, format!("expected `{keyword}`"))),
    }
}

pub fn parse_machine(text: &str) -> Result<MealyMachine> {
    let mut lines = content_lines(text);
    let mut next = |what: &str| lines.next().ok_or_else(|| perr(0, format!("missing {what}")));
    let (ln, l) = next("header")?;
    let name = keyword_line(ln, l, "mealy")?.to_string();
    if name.is_empty() || name.contains(char::is_whitespace) {
        return Err(perr(ln, "machine name must be one token"));
    }
    let (ln, l) = next("alphabet")?;
    let alphabet: Vec<String> =
        keyword_line(ln, l, "alphabet")?.split_whitespace().map(String::from).collect();
    let (ln, l) = next("states")?;
    let states: Vec<String> =
        keyword_line(ln, l, "states")?.split_whitespace().map(String::from).collect();
    let idx_state = |ln: usize, s: &str| {
        states.iter().position(|q| q == s).ok_or_else(|| perr(ln, format!("unknown state `{s}`")))
    };
    let idx_letter = |ln: usize, s: &str| {
        alphabet.iter().position(|a| a == s).ok_or_else(|| perr(ln, format!("unknown letter `{s}`")))
    };
    let mut identity = None;
    // rows[q][a] = (output, next) once declared
    type Row = Vec<Option<(usize, usize)>>;
    let mut rows: Vec<Option<Row>> = vec![None; states.len()];
    for (ln, l) in lines {
        if let Ok(rest) = keyword_line(ln, l, "identity") {
            if identity.is_some() {
                return Err(perr(ln, "identity declared twice"));
            }
            identity = Some(idx_state(ln, rest)?);
            continue;
        }
        let (head, body) = l.split_once(':').ok_or_else(|| perr(ln, "expected `<state>: ...`"))?;
        let q = idx_state(ln, head.trim())?;
        if rows[q].is_some() {
            return Err(perr(ln, format!("state `{}` defined twice", states[q])));
        }
        let mut row = vec![None; alphabet.len()];
        for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (input, rhs) = part.split_once("->").ok_or_else(|| perr(ln, "expected `->`"))?;
            let a = idx_letter(ln, input.trim())?;
            let rhs: Vec<&str> = rhs.split_whitespace().collect();
            let [out, target] = rhs[..] else {
                return Err(perr(ln, "expected `<in> -> <out> <next>`"));
            };
            if row[a].is_some() {
                return Err(perr(ln, format!("letter `{}` repeated", alphabet[a])));
            }
            row[a] = Some((idx_letter(ln, out)?, idx_state(ln, target)?));
        }
        rows[q] = Some(row);
    }
    let mut full = Vec::with_capacity(states.len());
    for (q, row) in rows.into_iter().enumerate() {
        let row = row.ok_or_else(|| perr(0, format!("state `{}` has no transitions", states[q])))?;
        let row: Option<Vec<_>> = row.into_iter().collect();
        full.push(row.ok_or_else(|| perr(0, format!("state `{}` is missing a letter", states[q])))?);
    }
    Ok(MealyMachine::new(alphabet, states, full, identity)?.with_name(name))
}

pub fn write_machine(m: &MealyMachine) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "mealy {}", m.name());
    let _ = writeln!(s, "alphabet {}", m.alphabet().join(" "));
    let _ = writeln!(s, "states {}", m.states().join(" "));
    if let Some(e) = m.identity_state() {
        let _ = writeln!(s, "identity {}", m.states()[e]);
    }
    for (q, name) in m.states().iter().enumerate() {
        let parts: Vec<String> = (0..m.degree())
            .map(|a| {
                let t = m.transition(q, a);
                format!("{} -> {} {}", m.alphabet()[a], m.alphabet()[t.output], m.states()[t.next])
            })
            .collect();
        let _ = writeln!(s, "{name}: {}", parts.join(" ; "));
    }
    s
}

/// Quotes a DOT identifier.
pub fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Transition diagram with one `in|out` edge per transition.
pub fn machine_dot(m: &MealyMachine) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", dot_id(m.name()));
    let _ = writeln!(s, "  rankdir=LR;");
    let _ = writeln!(s, "  node [shape=circle];");
    for name in m.states() {
        let _ = writeln!(s, "  {};", dot_id(name));
    }
    for (q, name) in m.states().iter().enumerate() {
        for a in 0..m.degree() {
            let t = m.transition(q, a);
            let label = format!("{}|{}", m.alphabet()[a], m.alphabet()[t.output]);
            let _ = writeln!(
                s,
                "  {} -> {} [label={}];",
                dot_id(name),
                dot_id(&m.states()[t.next]),
                dot_id(&label)
            );
        }
    }
    s.push_str("}\n");
    s
}
