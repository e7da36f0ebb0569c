use std::fmt::Write;
use std::path::Path;

use fsgroups::action::{Evaluator, Order};
use fsgroups::analysis::{
    activity_degree, injectivity_certificate, language_orbits, nucleus, path_counts, ActivityClass, Certificate,
    Language, NucleusResult, WordSpace,
};
use fsgroups::autostruct::surface::{SurfaceBall, SurfaceGroupPresentation};
use fsgroups::autostruct::{
    cannon_series, dehn_reduce, fellow_travel_check, make_unique, z2_distance, z2_structure, AutomaticStructure,
    FellowTravel,
};
use fsgroups::format::parse_machine;
use fsgroups::fsa::{parse_acceptor, MAIN};
use fsgroups::geometry::{
    cycle_graph, four_point_delta, grid_graph, growth_capped, is_level_transitive, schreier_graph, GrowthTable,
    Truncation, DEFAULT_GROWTH_RADIUS_CAP,
};
use fsgroups::mealy::inverse_name;
use fsgroups::{zoo, Error, GroupWord, MealyMachine};
use serde_json::{json, Value};

use crate::args::{Command, Format, LanguageKind};
use crate::render::{self, bool_line, to_json};

#[derive(Debug)]
pub enum Failure {
    /// Bad invocation: exit code 1.
    Usage(String),
    /// The library rejected the input or ran into a cap: exit code 2.
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = Result<String, Failure>;

pub fn unsupported(cmd: &str, f: Format) -> Failure {
    Failure::Usage(format!("`{cmd}` has no {f:?} output").to_lowercase())
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read `{path}`: {e}")))
}

/// A builtin name wins over a file of the same name.
fn load_machine(spec: &str) -> Result<MealyMachine, Failure> {
    if let Ok(entry) = zoo::builtin(spec) {
        return Ok(entry.machine);
    }
    if spec.trim_start().starts_with("f_n(") {
        // a malformed family index is a domain error, not a missing file
        return Err(zoo::builtin(spec).unwrap_err().into());
    }
    if Path::new(spec).is_file() {
        return Ok(parse_machine(&read_file(spec)?)?);
    }
    Err(Failure::Usage(format!("`{spec}` is neither a builtin machine nor a readable file")))
}

fn parse_word(text: &str) -> Result<GroupWord, Failure> {
    Ok(GroupWord::parse(text)?)
}

fn generators(m: &MealyMachine, gens: &Option<String>) -> Result<Vec<GroupWord>, Failure> {
    match gens {
        Some(list) => list.split(',').map(|w| parse_word(w.trim())).collect(),
        None => Ok(m
            .states()
            .iter()
            .enumerate()
            .filter(|&(q, _)| Some(q) != m.identity_state())
            .map(|(_, s)| GroupWord::generator(s))
            .collect()),
    }
}

fn word_text(w: &GroupWord) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.to_string()
    }
}

fn only_text_json(cmd: &str, f: Format) -> Result<(), Failure> {
    match f {
        Format::Text | Format::Json => Ok(()),
        _ => Err(unsupported(cmd, f)),
    }
}

pub fn run(cmd: Command) -> Out {
    match cmd {
        Command::Show { m, f } => render::machine("show", &load_machine(&m.machine)?, None, f.format),
        Command::Classify { m, f } => classify(&load_machine(&m.machine)?, f.format),
        Command::Min { m, state, f } => {
            let m = load_machine(&m.machine)?;
            let q = m.state_index(&state)?;
            let im = m.canonical(q).to_initial(m.alphabet())?;
            let min = im.machine().clone().with_name(format!("{}-min-{state}", m.name()));
            render::machine("min", &min, Some(im.start()), f.format)
        }
        Command::Prod { m, with, f } => {
            let (a, b) = (load_machine(&m.machine)?, load_machine(&with)?);
            render::machine("prod", &a.product(&b)?, None, f.format)
        }
        Command::Inv { m, f } => render::machine("inv", &load_machine(&m.machine)?.inverse()?, None, f.format),
        Command::Dual { m, f } => render::machine("dual", &load_machine(&m.machine)?.dual(), None, f.format),
        Command::Apply { m, state, input, f } => {
            only_text_json("apply", f.format)?;
            let m = load_machine(&m.machine)?;
            let q = m.state_index(&state)?;
            let (out, last) = m.run(q, &m.read_word(&input)?);
            let (out, last) = (m.write_word(&out), &m.states()[last]);
            Ok(match f.format {
                Format::Json => to_json(&json!({ "output": out, "final": last })),
                _ => format!("output: {out}\nfinal: {last}\n"),
            })
        }
        Command::Wp { m, w, cap, f } => {
            only_text_json("wp", f.format)?;
            let ev = Evaluator::new(&load_machine(&m.machine)?).with_cap(cap);
            let word = parse_word(&w.word)?;
            let id = ev.is_identity(&word)?;
            Ok(match f.format {
                Format::Json => to_json(&json!({ "word": word_text(&word), "identity": id })),
                _ => bool_line("identity", id),
            })
        }
        Command::Order { m, w, max_exp, cap, f } => {
            only_text_json("order", f.format)?;
            let ev = Evaluator::new(&load_machine(&m.machine)?).with_cap(cap);
            let word = parse_word(&w.word)?;
            let o = ev.order(&word, max_exp)?;
            Ok(match (f.format, o) {
                (Format::Json, Order::Finite(k)) => {
                    to_json(&json!({ "word": word_text(&word), "order": k, "max_exp": max_exp }))
                }
                (Format::Json, Order::UnknownBeyond(_)) => {
                    to_json(&json!({ "word": word_text(&word), "order": null, "max_exp": max_exp }))
                }
                (_, Order::Finite(k)) => format!("order: {k}\n"),
                (_, Order::UnknownBeyond(n)) => format!("order: unknown beyond {n} (max-exp {max_exp})\n"),
            })
        }
        Command::Wreath { m, w, f } => {
            only_text_json("wreath", f.format)?;
            let d = Evaluator::new(&load_machine(&m.machine)?).wreath_decompose(&parse_word(&w.word)?)?;
            Ok(match f.format {
                Format::Json => to_json(&json!({
                    "alphabet": d.alphabet,
                    "root": d.root_perm.iter().map(|&a| d.alphabet[a].clone()).collect::<Vec<_>>(),
                    "sections": d.sections.iter().map(word_text).collect::<Vec<_>>(),
                })),
                _ => d.to_string(),
            })
        }
        Command::Matrix { m, w, f } => {
            only_text_json("matrix", f.format)?;
            let d = Evaluator::new(&load_machine(&m.machine)?).wreath_decompose(&parse_word(&w.word)?)?;
            Ok(match f.format {
                Format::Json => to_json(&json!({ "alphabet": d.alphabet, "matrix": d.matrix() })),
                _ => format!("{}\n", d.render_matrix()),
            })
        }
        Command::Nucleus { m, cap, f } => nucleus_cmd(&load_machine(&m.machine)?, cap, f.format),
        Command::Activity { m, paths, f } => activity(&load_machine(&m.machine)?, paths, f.format),
        Command::Orbits { m, w, input, f } => {
            only_text_json("orbits", f.format)?;
            let m = load_machine(&m.machine)?;
            let orbit = Evaluator::new(&m).orbit_on_level(&parse_word(&w.word)?, &m.read_word(&input)?)?;
            let orbit: Vec<String> = orbit.iter().map(|u| m.write_word(u)).collect();
            Ok(match f.format {
                Format::Json => to_json(&json!({ "size": orbit.len(), "orbit": orbit })),
                _ => orbit.iter().map(|u| format!("{u}\n")).collect(),
            })
        }
        Command::Dualorbits { m, level, language, certify, f } => {
            dual_orbits(&load_machine(&m.machine)?, level, language, certify, f.format)
        }
        Command::Schreier { m, g, level, f } => {
            let m = load_machine(&m.machine)?;
            let graph = schreier_graph(&m, &generators(&m, &g.gens)?, level)?;
            match f.format {
                Format::Dot => Ok(graph.to_dot()),
                Format::Text => {
                    let mut s = format!("vertices: {}\nconnected: {}\n", graph.num_vertices(), graph.is_connected());
                    for v in 0..graph.num_vertices() {
                        let out: Vec<String> = graph.edges[v]
                            .iter()
                            .zip(&graph.generators)
                            .map(|(&t, gname)| format!("{gname}->{}", graph.vertex_name(t)))
                            .collect();
                        let _ = writeln!(s, "{}: {}", graph.vertex_name(v), out.join(" "));
                    }
                    Ok(s)
                }
                Format::Json => {
                    let vertices: Vec<String> = (0..graph.num_vertices()).map(|v| graph.vertex_name(v)).collect();
                    let mut edges = Vec::new();
                    for v in 0..graph.num_vertices() {
                        for (i, &t) in graph.edges[v].iter().enumerate() {
                            edges.push(json!({ "from": v, "to": t, "label": graph.generators[i] }));
                        }
                    }
                    Ok(to_json(&json!({
                        "level": graph.level,
                        "generators": graph.generators,
                        "vertices": vertices,
                        "edges": edges,
                        "connected": graph.is_connected(),
                    })))
                }
                Format::Csv => Err(unsupported("schreier", f.format)),
            }
        }
        Command::Growth { m, g, radius, cap, f } => {
            let m = load_machine(&m.machine)?;
            let gens = generators(&m, &g.gens)?;
            let capped = radius.min(DEFAULT_GROWTH_RADIUS_CAP);
            let mut t = growth_capped(&m, &gens, capped, cap)?;
            if capped < radius && t.truncated.is_none() {
                t.truncated = Some(Truncation {
                    requested_radius: radius,
                    cap: DEFAULT_GROWTH_RADIUS_CAP,
                    reason: "radius".into(),
                });
            }
            render::growth("growth", &t, f.format)
        }
        Command::Transitive { m, g, level, f } => {
            only_text_json("transitive", f.format)?;
            let m = load_machine(&m.machine)?;
            let gens = generators(&m, &g.gens)?;
            let flags = (1..=level).map(|n| is_level_transitive(&m, &gens, n)).collect::<Result<Vec<_>, _>>()?;
            Ok(match f.format {
                Format::Json => to_json(&json!({
                    "levels": flags.iter().enumerate().map(|(i, &t)| json!({ "level": i + 1, "transitive": t })).collect::<Vec<_>>(),
                    "transitive": flags.iter().all(|&t| t),
                })),
                _ => flags
                    .iter()
                    .enumerate()
                    .map(|(i, &t)| format!("level {}: {}\n", i + 1, if t { "transitive" } else { "not transitive" }))
                    .collect(),
            })
        }
        Command::Delta { cycle, grid, edges, machine, g, level, f } => {
            only_text_json("delta", f.format)?;
            let adj = if let Some(n) = cycle {
                cycle_graph(n)
            } else if let Some(spec) = grid {
                let (w, h) = spec
                    .split_once(['x', 'X'])
                    .and_then(|(w, h)| Some((w.trim().parse().ok()?, h.trim().parse().ok()?)))
                    .ok_or_else(|| Failure::Usage(format!("grid `{spec}` is not of the form WxH")))?;
                grid_graph(w, h)
            } else if let Some(path) = edges {
                edge_list(&read_file(&path)?)?
            } else if let Some(spec) = machine {
                let m = load_machine(&spec)?;
                let level = level.ok_or_else(|| Failure::Usage("--machine needs --level".into()))?;
                schreier_graph(&m, &generators(&m, &g.gens)?, level)?.undirected()
            } else {
                return Err(Failure::Usage("give one of --cycle, --grid, --edges, --machine".into()));
            };
            let delta = four_point_delta(&adj)?;
            Ok(match f.format {
                Format::Json => to_json(&json!({ "vertices": adj.len(), "delta": delta })),
                _ => format!("vertices: {}\ndelta: {delta}\n", adj.len()),
            })
        }
        Command::Zoo { name, f } => zoo_cmd(name, f.format),
        Command::Cayley { cyclic, table, f } => {
            let table = match (cyclic, table) {
                (Some(n), _) => zoo::cyclic_table(n),
                (None, Some(path)) => parse_table(&read_file(&path)?)?,
                (None, None) => return Err(Failure::Usage("give --cyclic or --table".into())),
            };
            render::machine("cayley", &zoo::cayley_machine(&table)?, None, f.format)
        }
        Command::Affine { matrix, vector, f } => {
            let a: Vec<Vec<i64>> = matrix.split(';').map(int_list).collect::<Result<_, _>>()?;
            let b = int_list(&vector)?;
            let im = zoo::affine_machine(&a, &b)?;
            render::machine("affine", im.machine(), Some(im.start()), f.format)
        }
        Command::AutoWp { s, w, f } => {
            only_text_json("auto-wp", f.format)?;
            let s = structure(&s.language, &s.multiplier)?;
            let word = s.read_word(&w.word)?;
            let nf = s.normal_form(&word)?;
            let id = nf == s.identity_normal_form()?;
            let nf_text = if nf.is_empty() { "1".to_string() } else { s.write_word(&nf) };
            Ok(match f.format {
                Format::Json => to_json(&json!({ "identity": id, "normal_form": nf_text })),
                _ => format!("identity: {id}\nnormal form: {nf_text}\n"),
            })
        }
        Command::AutoUnique { s, enumerate, f } => {
            let s = structure(&s.language, &s.multiplier)?;
            let u = make_unique(&s)?;
            match (f.format, enumerate) {
                (Format::Json, _) => {
                    let words = u.language().enumerate(MAIN, enumerate.unwrap_or(0))?;
                    Ok(to_json(&json!({
                        "states": u.language().num_states(),
                        "words": words.iter().map(|w| u.write_word(w)).collect::<Vec<_>>(),
                    })))
                }
                (Format::Text, Some(n)) => {
                    let mut out = render::acceptor("auto-unique", u.language(), f.format)?;
                    for w in u.language().enumerate(MAIN, n)? {
                        let _ = writeln!(out, "word {}", if w.is_empty() { "1".into() } else { u.write_word(&w) });
                    }
                    Ok(out)
                }
                _ => render::acceptor("auto-unique", u.language(), f.format),
            }
        }
        Command::Dehn { genus, w, f } => {
            only_text_json("dehn", f.format)?;
            let p = SurfaceGroupPresentation::new(genus)?;
            let r = dehn_reduce(&p, &p.read_word(&w.word)?);
            let text = if r.is_empty() { "1".to_string() } else { p.write_word(&r) };
            Ok(match f.format {
                Format::Json => to_json(&json!({ "reduced": text, "length": r.len(), "identity": r.is_empty() })),
                _ => format!("reduced: {text}\nidentity: {}\n", r.is_empty()),
            })
        }
        Command::Series { genus, terms, f } => {
            only_text_json("series", f.format)?;
            let c = cannon_series(genus, terms)?;
            let c: Vec<i64> =
                c.iter().map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("series coefficient"))).collect::<Result<_, _>>()?;
            Ok(match f.format {
                Format::Json => format!("{}\n", serde_json::to_string(&c).expect("integers serialize")),
                _ => format!("[{}]\n", c.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")),
            })
        }
        Command::SurfaceGrowth { genus, radius, cap, f } => {
            let p = SurfaceGroupPresentation::new(genus)?;
            let t: GrowthTable = SurfaceBall::new(&p, radius, cap).growth_table();
            render::growth("surface-growth", &t, f.format)
        }
        Command::FtCheck { k, len_max, f } => {
            only_text_json("ft-check", f.format)?;
            let s = z2_structure();
            let d = |u: &[usize], v: &[usize]| Ok(z2_distance(u, v));
            let r = fellow_travel_check(&s, k, len_max, &d)?;
            let show = |w: &[usize]| if w.is_empty() { "1".to_string() } else { s.write_word(w) };
            Ok(match (f.format, r) {
                (Format::Json, FellowTravel::Holds { pairs_checked }) => {
                    to_json(&json!({ "holds": true, "k": k, "len_max": len_max, "pairs_checked": pairs_checked }))
                }
                (Format::Json, FellowTravel::Counterexample { u, v, j }) => to_json(&json!({
                    "holds": false, "k": k, "len_max": len_max,
                    "counterexample": { "u": show(&u), "v": show(&v), "time": j },
                })),
                (_, FellowTravel::Holds { pairs_checked }) => {
                    format!("fellow travellers: holds for k={k} ({pairs_checked} pairs up to length {len_max})\n")
                }
                (_, FellowTravel::Counterexample { u, v, j }) => {
                    format!("fellow travellers: fails for k={k}\nu: {}\nv: {}\ntime: {j}\n", show(&u), show(&v))
                }
            })
        }
    }
}

fn classify(m: &MealyMachine, f: Format) -> Out {
    only_text_json("classify", f)?;
    let c = m.classify();
    Ok(match f {
        Format::Json => to_json(&serde_json::to_value(c).expect("classification serializes")),
        _ => [("invertible", c.invertible), ("reversible", c.reversible), ("bireversible", c.bireversible)]
            .iter()
            .map(|&(k, b)| bool_line(k, b))
            .collect(),
    })
}

fn nucleus_cmd(m: &MealyMachine, cap: usize, f: Format) -> Out {
    only_text_json("nucleus", f)?;
    Ok(match (nucleus(m, cap)?, f) {
        (NucleusResult::Contracting(n), Format::Json) => {
            let elements: Vec<Value> = (0..n.len())
                .map(|i| json!({ "name": n.name(i), "states": n.elements[i].num_states() }))
                .collect();
            to_json(&json!({ "contracting": true, "cap": cap, "size": n.len(), "elements": elements }))
        }
        (NucleusResult::Contracting(n), _) => {
            let mut s = format!("nucleus: {} elements\n", n.len());
            for i in 0..n.len() {
                let _ = writeln!(s, "{}", n.name(i));
            }
            s
        }
        (NucleusResult::NotContractingUpTo(c), Format::Json) => {
            to_json(&json!({ "contracting": false, "cap": c, "size": null, "elements": [] }))
        }
        (NucleusResult::NotContractingUpTo(c), _) => format!("not contracting up to cap {c}\n"),
    })
}

fn activity(m: &MealyMachine, paths: usize, f: Format) -> Out {
    only_text_json("activity", f)?;
    let class = activity_degree(m);
    let counts = path_counts(m, paths);
    Ok(match f {
        Format::Json => {
            let counts: Vec<u64> = counts
                .iter()
                .map(|&c| u64::try_from(c).map_err(|_| Error::Overflow("path count")))
                .collect::<Result<_, _>>()?;
            let degree = match class {
                ActivityClass::Polynomial(d) => json!(d),
                ActivityClass::Exponential => Value::Null,
            };
            to_json(&json!({
                "class": if degree.is_null() { "exponential" } else { "polynomial" },
                "degree": degree,
                "bounded": class.is_bounded(),
                "path_counts": counts,
            }))
        }
        _ => {
            let counts: Vec<String> = counts.iter().map(u128::to_string).collect();
            format!("activity: {class}\npaths: {}\n", counts.join(" "))
        }
    })
}

fn dual_orbits(m: &MealyMachine, level: usize, kind: LanguageKind, certify: bool, f: Format) -> Out {
    only_text_json("dualorbits", f)?;
    let lang = || match kind {
        LanguageKind::All => Language::All,
        LanguageKind::Adjacent => Language::AdjacentDistinct,
        LanguageKind::Reduced => Language::FreelyReduced,
    };
    let space = WordSpace::new(m, &lang())?;
    let orbits = language_orbits(m, &lang(), level)?;
    let mut out = String::new();
    for o in &orbits {
        let rep = o.iter().min().map(|w| space.render(w)).unwrap_or_default();
        match f {
            Format::Json => {
                let _ = writeln!(out, "{}", json!({ "size": o.len(), "representative": rep }));
            }
            _ => {
                let _ = writeln!(out, "orbit {}: {rep}", o.len());
            }
        }
    }
    if certify {
        let c = injectivity_certificate(m, &lang(), level)?;
        match (f, c) {
            (Format::Json, Certificate::Certified { orbits, words }) => {
                let _ = writeln!(out, "{}", json!({ "certified": true, "orbits": orbits, "words": words }));
            }
            (Format::Json, Certificate::Failed { orbit }) => {
                let _ = writeln!(out, "{}", json!({ "certified": false, "orbit": orbit }));
            }
            (_, Certificate::Certified { orbits, words }) => {
                let _ = writeln!(out, "certificate: passed ({orbits} orbits, {words} words)");
            }
            (_, Certificate::Failed { orbit }) => {
                let _ = writeln!(out, "certificate: failed on the orbit of {}", orbit.first().cloned().unwrap_or_default());
            }
        }
    }
    Ok(out)
}

fn zoo_cmd(name: Option<String>, f: Format) -> Out {
    let Some(name) = name else {
        only_text_json("zoo", f)?;
        let mut entries = Vec::new();
        for n in zoo::BUILTIN_NAMES {
            let e = if *n == "f_n(k)" { zoo::builtin("f_n(1)")? } else { zoo::builtin(n)? };
            entries.push((n.to_string(), e.note));
        }
        return Ok(match f {
            Format::Json => to_json(&json!(entries
                .iter()
                .map(|(n, note)| json!({ "name": n, "note": note }))
                .collect::<Vec<_>>())),
            _ => entries.iter().map(|(n, note)| format!("{n:<14}{note}\n")).collect(),
        });
    };
    let e = zoo::builtin(&name).map_err(|_| Failure::Usage(format!("`{name}` is not a builtin machine")))?;
    match f {
        Format::Text => {
            let mut s = render::machine("zoo", &e.machine, None, f)?;
            let _ = writeln!(s, "# {}", e.note);
            let _ = writeln!(s, "# generators: {}", e.generators.join(" "));
            for r in &e.relations {
                let _ = writeln!(s, "# relation: {r}");
            }
            Ok(s)
        }
        Format::Json => {
            let mut v = render::machine_value(&e.machine);
            v["note"] = json!(e.note);
            v["generators"] = json!(e.generators);
            v["relations"] = json!(e.relations.iter().map(word_text).collect::<Vec<_>>());
            Ok(to_json(&v))
        }
        _ => render::machine("zoo", &e.machine, None, f),
    }
}

fn int_list(text: &str) -> Result<Vec<i64>, Failure> {
    text.split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.trim().parse().map_err(|_| Failure::Usage(format!("`{t}` is not an integer"))))
        .collect()
}

fn parse_table(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse().map_err(|_| Failure::Usage(format!("`{t}` is not a table entry"))))
                .collect()
        })
        .collect()
}

/// One `u v` pair per line; vertices are `0..=max`.
fn edge_list(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    let mut pairs = Vec::new();
    for line in text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()) {
        let ends: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Failure::Usage(format!("`{t}` is not a vertex number"))))
            .collect::<Result<_, _>>()?;
        let [u, v] = ends[..] else {
            return Err(Failure::Usage(format!("edge line `{line}` needs two vertices")));
        };
        pairs.push((u, v));
    }
    let n = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let mut adj = vec![Vec::new(); n];
    for (u, v) in pairs {
        if u != v && !adj[u].contains(&v) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    Ok(adj)
}

/// Generators come from the language alphabet; `x` and `x^-1` are paired
/// by name and a letter with no partner is its own inverse.
fn structure(language: &Option<String>, multiplier: &Option<String>) -> Result<AutomaticStructure, Failure> {
    let (Some(l), Some(m)) = (language, multiplier) else {
        return Ok(z2_structure());
    };
    let language = parse_acceptor(&read_file(l)?)?;
    let multiplier = parse_acceptor(&read_file(m)?)?;
    let gens = language.alphabet().to_vec();
    let inverse = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let partner = g.strip_suffix("^-1").map(str::to_string).unwrap_or_else(|| inverse_name(g));
            gens.iter().position(|h| *h == partner).unwrap_or(i)
        })
        .collect();
    Ok(AutomaticStructure::new(gens, inverse, language, multiplier)?)
}
