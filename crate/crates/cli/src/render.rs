//! Shared output helpers. Every renderer returns the complete output text,
//! newline-terminated, so that identical inputs give identical bytes.

use std::fmt::Write;

use fsgroups::format::{machine_dot, write_machine};
use fsgroups::fsa::{acceptor_dot, write_acceptor, Acceptor};
use fsgroups::geometry::GrowthTable;
use fsgroups::MealyMachine;
use serde_json::{json, Value};

use crate::args::Format;
use crate::commands::{unsupported, Failure};

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn machine_value(m: &MealyMachine) -> Value {
    let rows: Vec<Value> = m
        .states()
        .iter()
        .enumerate()
        .map(|(q, name)| {
            let trans: Vec<Value> = (0..m.degree())
                .map(|a| {
                    let t = m.transition(q, a);
                    json!({
                        "input": m.alphabet()[a],
                        "output": m.alphabet()[t.output],
                        "next": m.states()[t.next],
                    })
                })
                .collect();
            json!({ "state": name, "transitions": trans })
        })
        .collect();
    json!({
        "name": m.name(),
        "alphabet": m.alphabet(),
        "states": m.states(),
        "identity": m.identity_state().map(|e| m.states()[e].clone()),
        "table": rows,
    })
}

/// A machine, optionally with a distinguished start state.
pub fn machine(cmd: &str, m: &MealyMachine, start: Option<usize>, f: Format) -> Result<String, Failure> {
    match f {
        Format::Text => {
            let mut s = write_machine(m);
            if let Some(q) = start {
                let _ = writeln!(s, "start {}", m.states()[q]);
            }
            Ok(s)
        }
        Format::Json => {
            let mut v = machine_value(m);
            v["start"] = json!(start.map(|q| m.states()[q].clone()));
            Ok(to_json(&v))
        }
        Format::Dot => Ok(machine_dot(m)),
        Format::Csv => Err(unsupported(cmd, f)),
    }
}

pub fn acceptor(cmd: &str, a: &Acceptor, f: Format) -> Result<String, Failure> {
    match f {
        Format::Text => Ok(write_acceptor(a)),
        Format::Dot => Ok(acceptor_dot(a)),
        _ => Err(unsupported(cmd, f)),
    }
}

pub fn growth(cmd: &str, t: &GrowthTable, f: Format) -> Result<String, Failure> {
    match f {
        Format::Text => {
            let mut s = String::from("radius sphere ball\n");
            for r in 0..t.spheres.len() {
                let _ = writeln!(s, "{r} {} {}", t.spheres[r], t.balls[r]);
            }
            if let Some(tr) = &t.truncated {
                let _ = writeln!(
                    s,
                    "truncated at radius {} of {}: {} cap {}",
                    t.radius(),
                    tr.requested_radius,
                    tr.reason,
                    tr.cap
                );
            }
            Ok(s)
        }
        Format::Csv => {
            let mut s = t.to_csv();
            if let Some(tr) = &t.truncated {
                let _ = writeln!(s, "# truncated: {} cap {}", tr.reason, tr.cap);
            }
            Ok(s)
        }
        Format::Json => Ok(to_json(&serde_json::to_value(t).expect("table serializes"))),
        Format::Dot => Err(unsupported(cmd, f)),
    }
}

pub fn bool_line(key: &str, b: bool) -> String {
    format!("{key}: {b}\n")
}
