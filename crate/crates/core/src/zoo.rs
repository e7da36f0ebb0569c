//! Built-in machines and the Cayley and affine constructions.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::mealy::{InitialMachine, MealyMachine};
use crate::words::{Endomorphism, GroupWord};

/// A named machine with the relations it is known to satisfy.
#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: String,
    pub machine: MealyMachine,
    /// Non-identity states.
    pub generators: Vec<String>,
    /// Words that evaluate to the identity.
    pub relations: Vec<GroupWord>,
    pub note: String,
}

/// Names accepted by [`builtin`]; `f_n(k)` takes any `k ≥ 1`.
pub const BUILTIN_NAMES: &[&str] = &[
    "adding",
    "grigorchuk",
    "aleshin_full",
    "gupta_sidki",
    "bs13",
    "lamplighter",
    "basilica",
    "e1",
    "f1",
    "f_n(k)",
];

type Edge<'a> = (&'a str, &'a str, &'a str);

/// Assembles a machine from `(state, [(in, out, next)])` lists.
fn build(
    name: &str,
    alphabet: &[&str],
    rows: &[(&str, Vec<Edge<'_>>)],
    identity: Option<&str>,
) -> MealyMachine {
    let states: Vec<String> = rows.iter().map(|(q, _)| q.to_string()).collect();
    let alphabet: Vec<String> = alphabet.iter().map(|a| a.to_string()).collect();
    let li = |a: &str| alphabet.iter().position(|x| x == a).expect("letter");
    let si = |q: &str| states.iter().position(|x| x == q).expect("state");
    let table = rows
        .iter()
        .map(|(_, edges)| {
            let mut row = vec![(0, 0); alphabet.len()];
            for &(i, o, n) in edges {
                row[li(i)] = (li(o), si(n));
            }
            row
        })
        .collect();
    MealyMachine::new(alphabet.clone(), states.clone(), table, identity.map(si))
        .expect("built-in machine is valid")
        .with_name(name)
}

fn identity_row(k: usize) -> Vec<Edge<'static>> {
    const L: [&str; 3] = ["0", "1", "2"];
    (0..k).map(|a| (L[a], L[a], "1")).collect()
}

fn words(texts: &[&str]) -> Vec<GroupWord> {
    texts.iter().map(|t| GroupWord::parse(t).expect("built-in word")).collect()
}

fn entry(machine: MealyMachine, relations: Vec<GroupWord>, note: &str) -> ZooEntry {
    let generators = machine
        .states()
        .iter()
        .enumerate()
        .filter(|&(q, _)| Some(q) != machine.identity_state())
        .map(|(_, s)| s.clone())
        .collect();
    ZooEntry { name: machine.name().to_string(), machine, generators, relations, note: note.into() }
}

pub fn adding() -> MealyMachine {
    build(
        "adding",
        &["0", "1"],
        &[("t", vec![("0", "1", "1"), ("1", "0", "t")]), ("1", identity_row(2))],
        Some("1"),
    )
}

fn grigorchuk_rows() -> Vec<(&'static str, Vec<Edge<'static>>)> {
    vec![
        ("a", vec![("0", "1", "1"), ("1", "0", "1")]),
        ("b", vec![("0", "0", "a"), ("1", "1", "c")]),
        ("c", vec![("0", "0", "a"), ("1", "1", "d")]),
        ("d", vec![("0", "0", "1"), ("1", "1", "b")]),
        ("1", identity_row(2)),
    ]
}

pub fn grigorchuk() -> MealyMachine {
    build("grigorchuk", &["0", "1"], &grigorchuk_rows(), Some("1"))
}

pub fn aleshin_full() -> MealyMachine {
    let mut rows = grigorchuk_rows();
    rows.push(("A", vec![("0", "0", "b"), ("1", "1", "u")]));
    rows.push(("B", vec![("0", "1", "1"), ("1", "0", "a")]));
    rows.push(("u", vec![("0", "0", "1"), ("1", "1", "d")]));
    build("aleshin_full", &["0", "1"], &rows, Some("1"))
}

pub fn gupta_sidki() -> MealyMachine {
    build(
        "gupta_sidki",
        &["0", "1", "2"],
        &[
            ("t", vec![("0", "0", "a"), ("1", "1", "a^-1"), ("2", "2", "t")]),
            ("t^-1", vec![("0", "0", "a^-1"), ("1", "1", "a"), ("2", "2", "t^-1")]),
            ("a", vec![("0", "1", "1"), ("1", "2", "1"), ("2", "0", "1")]),
            ("a^-1", vec![("0", "2", "1"), ("1", "0", "1"), ("2", "1", "1")]),
            ("1", identity_row(3)),
        ],
        Some("1"),
    )
}

pub fn bs13() -> MealyMachine {
    build(
        "bs13",
        &["0", "1"],
        &[
            ("3z", vec![("0", "0", "3z"), ("1", "1", "3z+1")]),
            ("3z+1", vec![("0", "1", "3z"), ("1", "0", "3z+2")]),
            ("3z+2", vec![("0", "0", "3z+1"), ("1", "1", "3z+2")]),
        ],
        None,
    )
}

pub fn lamplighter() -> MealyMachine {
    build(
        "lamplighter",
        &["0", "1"],
        &[
            ("p", vec![("0", "0", "p"), ("1", "1", "q")]),
            ("q", vec![("0", "1", "q"), ("1", "0", "p")]),
        ],
        None,
    )
}

pub fn basilica() -> MealyMachine {
    build(
        "basilica",
        &["0", "1"],
        &[
            ("a", vec![("0", "1", "1"), ("1", "0", "b")]),
            ("b", vec![("0", "0", "1"), ("1", "1", "a")]),
            ("1", identity_row(2)),
        ],
        Some("1"),
    )
}

pub fn e1() -> MealyMachine {
    build(
        "e1",
        &["0", "1"],
        &[
            ("a", vec![("0", "0", "b"), ("1", "1", "c")]),
            ("b", vec![("0", "0", "c"), ("1", "1", "b")]),
            ("c", vec![("0", "1", "a"), ("1", "0", "a")]),
        ],
        None,
    )
}

pub fn f1() -> MealyMachine {
    let mut m = f_n(1).expect("k = 1");
    m = m.with_name("f1");
    m
}

/// The `2k+1`-state machine: `a`, `b` as in `f1`, and a chain of copying
/// states `c → d1 → … → d(2k-2) → a`.
pub fn f_n(k: usize) -> Result<MealyMachine> {
    if k == 0 {
        return Err(Error::InvalidArgument("f_n needs k >= 1".into()));
    }
    let chain: Vec<String> = (1..=2 * k - 2).map(|i| format!("d{i}")).collect();
    let mut states: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
    states.extend(chain.iter().cloned());
    let mut rows = vec![vec![(1, 1), (0, 2)], vec![(1, 2), (0, 1)]];
    // c and the chain copy letters and step forward; the last one returns to a
    for i in 2..states.len() {
        let target = if i + 1 < states.len() { i + 1 } else { 0 };
        rows.push(vec![(0, target), (1, target)]);
    }
    Ok(MealyMachine::new(vec!["0".into(), "1".into()], states, rows, None)?.with_name(format!("f_n({k})")))
}

/// Base relators and substitution of the Grigorchuk presentation.
pub fn grigorchuk_presentation() -> (Vec<GroupWord>, Endomorphism) {
    let base = words(&["b c d", "a^2", "[d,d^a]", "[d,d^([a,c] a)]"]);
    let sigma = Endomorphism::parse("a -> a c a, b -> d, c -> b, d -> c").expect("rules");
    (base, sigma)
}

/// Base relators and substitution of the Basilica presentation. Iterating
/// gives `[b^p, (b^p)^(a^p)]` and `[a^2p, (a^2p)^(b^p)]` for `p = 2^n`.
pub fn basilica_presentation() -> (Vec<GroupWord>, Endomorphism) {
    let base = words(&["[b,b^a]", "[a^2,(a^2)^b]"]);
    let sigma = Endomorphism::parse("a -> b, b -> a^2").expect("rules");
    (base, sigma)
}

/// Lamplighter words: the shift `t` and the lamp `p⁻¹ q`.
pub fn lamplighter_relations(n_max: usize) -> Vec<GroupWord> {
    let lamp = GroupWord::parse("p^-1 q").expect("word");
    let t = GroupWord::generator("p");
    let mut out = vec![lamp.pow(2)];
    for n in 1..=n_max as i64 {
        out.push(GroupWord::commutator(&lamp, &GroupWord::conjugate(&lamp, &t.pow(n))));
    }
    out
}

/// The translation `t = 3z` and `a = (3z)⁻¹ (3z+1)`, acting as `+1`.
pub fn bs13_relation() -> GroupWord {
    let t = GroupWord::generator("3z");
    let a = GroupWord::parse("3z^-1 3z+1").expect("word");
    t.inverse().concat(&a).concat(&t).concat(&a.pow(-3))
}

pub fn builtin(name: &str) -> Result<ZooEntry> {
    let name = name.trim();
    if let Some(k) = name.strip_prefix("f_n(").and_then(|r| r.strip_suffix(')')) {
        let k: usize =
            k.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad f_n index `{k}`")))?;
        return Ok(entry(f_n(k)?, Vec::new(), "free group of rank 2k+1"));
    }
    Ok(match name {
        "adding" => entry(adding(), Vec::new(), "infinite cyclic; +1 on 2-adic integers, least significant bit first"),
        "grigorchuk" => entry(
            grigorchuk(),
            words(&["a^2", "b^2", "c^2", "d^2", "b c d", "(a d)^4"]),
            "infinite 2-group of intermediate growth",
        ),
        "aleshin_full" => entry(
            aleshin_full(),
            words(&["a^2", "b c d", "(a d)^4"]),
            "grigorchuk machine with the extra states A, B, u",
        ),
        "gupta_sidki" => entry(
            gupta_sidki(),
            words(&["a^3", "t^3"]),
            "infinite 3-group",
        ),
        "bs13" => entry(bs13(), vec![bs13_relation()], "z -> 3z + q on 2-adic integers; t^-1 a t = a^3"),
        "lamplighter" => entry(lamplighter(), lamplighter_relations(5), "cayley machine of Z/2"),
        "basilica" => {
            let (base, sigma) = basilica_presentation();
            entry(basilica(), crate::words::relator_family(&base, &sigma, 1), "weakly branch, contracting")
        }
        "e1" => entry(e1(), words(&["a^2", "b^2", "c^2"]), "free product of three groups of order 2"),
        "f1" => entry(f1(), Vec::new(), "free group on a, b, c"),
        _ => return Err(Error::InvalidArgument(format!("unknown builtin `{name}`"))),
    })
}

/// Checks that `table` is a group multiplication table on `0..n`.
pub fn check_group(table: &[Vec<usize>]) -> Result<usize> {
    let n = table.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(Error::NotAGroup("table is not square over its elements".into()));
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if table[table[x][y]][z] != table[x][table[y][z]] {
                    return Err(Error::NotAGroup(format!("({x}*{y})*{z} != {x}*({y}*{z})")));
                }
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    for x in 0..n {
        if !(0..n).any(|y| table[x][y] == e && table[y][x] == e) {
            return Err(Error::NotAGroup(format!("{x} has no inverse")));
        }
    }
    Ok(e)
}

/// Multiplication table of `Z/n`.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

/// States and letters are the group elements; `τ(q, a) = (qa, qa)`.
pub fn cayley_machine(table: &[Vec<usize>]) -> Result<MealyMachine> {
    check_group(table)?;
    let n = table.len();
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let rows = (0..n).map(|q| (0..n).map(|a| (table[q][a], table[q][a])).collect()).collect();
    let m = MealyMachine::new(names.clone(), names, rows, None)?.with_name(format!("cayley{n}"));
    let id = m.detect_identity();
    m.with_identity(id)
}

fn det_odd(a: &[Vec<i64>]) -> bool {
    // rank over GF(2)
    let n = a.len();
    let mut rows: Vec<u64> = a
        .iter()
        .map(|r| r.iter().enumerate().fold(0u64, |acc, (j, &x)| acc | ((x.rem_euclid(2) as u64) << j)))
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| rows[r] >> col & 1 == 1) else {
            return false;
        };
        rows.swap(col, p);
        for r in 0..n {
            if r != col && rows[r] >> col & 1 == 1 {
                rows[r] ^= rows[col];
            }
        }
    }
    true
}

fn offset_name(m: &[i64]) -> String {
    if m.iter().all(|&x| x == 0) {
        return "z".into();
    }
    if m.len() == 1 {
        return if m[0] > 0 { format!("z+{}", m[0]) } else { format!("z{}", m[0]) };
    }
    let parts: Vec<String> = m.iter().map(i64::to_string).collect();
    format!("z+{}", parts.join(";"))
}

/// Letter names of `{0,1}ⁿ`: letter `i` has coordinate `j` equal to bit `j`
/// of `i`, written in coordinate order.
pub fn affine_alphabet(n: usize) -> Vec<String> {
    (0..1usize << n).map(|i| (0..n).map(|j| if i >> j & 1 == 1 { '1' } else { '0' }).collect()).collect()
}

/// The map `z ↦ a z + b` on `Z₂ⁿ` as a machine over `{0,1}ⁿ`; states are
/// the maps `z ↦ a z + m` reachable from the start.
pub fn affine_machine(a: &[Vec<i64>], b: &[i64]) -> Result<InitialMachine> {
    let n = a.len();
    if n == 0 || n > 16 || a.iter().any(|r| r.len() != n) || b.len() != n {
        return Err(Error::InvalidArgument("matrix must be square, 1 <= n <= 16, with matching vector".into()));
    }
    if !det_odd(a) {
        return Err(Error::EvenDeterminant);
    }
    let k = 1usize << n;
    let letters: Vec<Vec<i64>> = (0..k).map(|i| (0..n).map(|j| (i >> j & 1) as i64).collect()).collect();
    let ax: Vec<Vec<i64>> = letters
        .iter()
        .map(|x| a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect())
        .collect();
    let reach = ax.iter().flatten().map(|v| v.abs() + 1).max().unwrap_or(1);
    let bound = b.iter().map(|v| v.abs()).max().unwrap_or(0).max(reach);
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut offsets = vec![b.to_vec()];
    index.insert(b.to_vec(), 0);
    let mut rows = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let m = offsets[s].clone();
        let mut row = Vec::with_capacity(k);
        for x in 0..k {
            let v: Vec<i64> = ax[x].iter().zip(&m).map(|(p, q)| p + q).collect();
            let y: Vec<i64> = v.iter().map(|c| c.rem_euclid(2)).collect();
            let next: Vec<i64> = v.iter().zip(&y).map(|(c, d)| (c - d) / 2).collect();
            if next.iter().any(|c| c.abs() > bound) {
                return Err(Error::CapExceeded { what: "affine offset norm", cap: bound as usize });
            }
            let out = y.iter().enumerate().fold(0usize, |acc, (j, &d)| acc | (d as usize) << j);
            let t = match index.get(&next) {
                Some(&t) => t,
                None => {
                    let t = offsets.len();
                    index.insert(next.clone(), t);
                    offsets.push(next);
                    queue.push_back(t);
                    t
                }
            };
            row.push((out, t));
        }
        // rows are produced in discovery order
        rows.push(row);
    }
    let names = offsets.iter().map(|m| offset_name(m)).collect();
    let machine = MealyMachine::new(affine_alphabet(n), names, rows, None)?.with_name("affine");
    let id = machine.detect_identity();
    InitialMachine::new(machine.with_identity(id)?, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adding_transitions() {
        let m = adding();
        assert_eq!(m.num_states(), 2);
        assert_eq!(m.transition(0, 1).output, 0);
        assert_eq!(m.transition(0, 1).next, 0);
        assert_eq!(m.transition(0, 0).output, 1);
        assert_eq!(m.transition(0, 0).next, 1);
    }

    #[test]
    fn builtins_are_invertible_and_named() {
        for name in ["adding", "grigorchuk", "aleshin_full", "gupta_sidki", "bs13", "lamplighter", "basilica", "e1", "f1", "f_n(3)"] {
            let e = builtin(name).unwrap();
            assert!(e.machine.is_invertible(), "{name}");
        }
        assert_eq!(builtin("f_n(3)").unwrap().machine.num_states(), 7);
        assert!(builtin("f_n(0)").is_err());
        assert!(builtin("nope").is_err());
        assert!(f1().same_table(&f_n(1).unwrap().with_name("f1")));
    }

    #[test]
    fn group_table_validation() {
        assert_eq!(check_group(&cyclic_table(4)), Ok(0));
        assert!(check_group(&[vec![0, 0], vec![0, 1]]).is_err());
        assert!(check_group(&[vec![0, 1], vec![1, 1]]).is_err());
        let trivial = cayley_machine(&cyclic_table(1)).unwrap();
        assert_eq!(trivial.identity_state(), Some(0));
    }

    #[test]
    fn affine_identity_and_translation() {
        let id = affine_machine(&[vec![1]], &[0]).unwrap();
        assert!(id.minimize().is_identity());
        let t = affine_machine(&[vec![1]], &[1]).unwrap();
        let add = InitialMachine::new(adding(), 0).unwrap();
        assert!(t.behavior_eq(&add).unwrap());
        assert_eq!(affine_machine(&[vec![2]], &[1]), Err(Error::EvenDeterminant));
        assert!(affine_machine(&[vec![1, 1], vec![1, 1]], &[0, 0]).is_err());
    }

    #[test]
    fn det_parity() {
        assert!(det_odd(&[vec![1, 2], vec![3, 1]]));
        assert!(!det_odd(&[vec![1, 3], vec![1, 1]]));
        assert!(det_odd(&[vec![-3]]));
    }
}
