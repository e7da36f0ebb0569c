//! Mealy machines: complete, deterministic, letter-to-letter transducers.
//!
//! A machine is a table `τ: Q × A → A × Q`. Started at a state it rewrites
//! input words letter by letter, which makes every state a
//! length-preserving transformation of `A*`.

mod canonical;
pub(crate) mod minimize;

pub use canonical::CanonicalMachine;
pub(crate) use canonical::recurrent;

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Index into a machine's alphabet.
pub type Letter = usize;
/// Index into a machine's state list.
pub type StateId = usize;

/// One edge of the transducer: read a letter, write `output`, go to `next`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub output: Letter,
    pub next: StateId,
}

/// Suffix marking a formal inverse in state names.
pub const INVERSE_SUFFIX: &str = "^-1";

/// Name of the formal inverse of `name`; inverting twice gives `name` back.
pub fn inverse_name(name: &str) -> String {
    match name.strip_suffix(INVERSE_SUFFIX) {
        Some(base) => base.to_string(),
        None => format!("{name}{INVERSE_SUFFIX}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MealyMachine {
    name: String,
    alphabet: Vec<String>,
    states: Vec<String>,
    table: Vec<Transition>,
    identity: Option<StateId>,
}

/// Outcome of [`MealyMachine::classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub invertible: bool,
    pub reversible: bool,
    pub bireversible: bool,
}

fn check_unique(names: &[String], what: &str) -> Result<()> {
    let mut seen = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if n.is_empty() || n.chars().any(char::is_whitespace) {
            return Err(Error::InvalidMachine(format!("{what} name `{n}` is empty or has whitespace")));
        }
        if seen.insert(n.as_str(), i).is_some() {
            return Err(Error::InvalidMachine(format!("duplicate {what} `{n}`")));
        }
    }
    Ok(())
}

impl MealyMachine {
    /// Builds a machine from one row per state; `rows[q][a] = (output, next)`.
    pub fn new(
        alphabet: Vec<String>,
        states: Vec<String>,
        rows: Vec<Vec<(Letter, StateId)>>,
        identity: Option<StateId>,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::InvalidMachine("empty alphabet".into()));
        }
        if states.is_empty() {
            return Err(Error::InvalidMachine("no states".into()));
        }
        check_unique(&alphabet, "letter")?;
        check_unique(&states, "state")?;
        if rows.len() != states.len() {
            return Err(Error::InvalidMachine(format!(
                "{} states but {} transition rows",
                states.len(),
                rows.len()
            )));
        }
        let k = alphabet.len();
        let mut table = Vec::with_capacity(states.len() * k);
        for (q, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidMachine(format!(
                    "state `{}` has {} transitions, expected {k}",
                    states[q],
                    row.len()
                )));
            }
            for &(output, next) in row {
                if output >= k {
                    return Err(Error::InvalidMachine(format!("output letter {output} out of range")));
                }
                if next >= states.len() {
                    return Err(Error::InvalidMachine(format!("target state {next} out of range")));
                }
                table.push(Transition { output, next });
            }
        }
        let m = MealyMachine { name: String::from("machine"), alphabet, states, table, identity };
        if let Some(e) = identity {
            if e >= m.states.len() || !m.is_identity_row(e) {
                return Err(Error::InvalidMachine(format!(
                    "declared identity state `{}` does not copy and loop",
                    m.states.get(e).map_or("?", String::as_str)
                )));
            }
        }
        Ok(m)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn degree(&self) -> usize {
        self.alphabet.len()
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn identity_state(&self) -> Option<StateId> {
        self.identity
    }

    #[inline]
    pub fn transition(&self, q: StateId, a: Letter) -> Transition {
        self.table[q * self.alphabet.len() + a]
    }

    #[inline]
    pub fn output(&self, q: StateId, a: Letter) -> Letter {
        self.transition(q, a).output
    }

    #[inline]
    pub fn next(&self, q: StateId, a: Letter) -> StateId {
        self.transition(q, a).next
    }

    pub fn letter_index(&self, name: &str) -> Result<Letter> {
        self.alphabet
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn state_index(&self, name: &str) -> Result<StateId> {
        self.states
            .iter()
            .position(|q| q == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    fn is_identity_row(&self, q: StateId) -> bool {
        (0..self.degree()).all(|a| self.transition(q, a) == Transition { output: a, next: q })
    }

    /// First state that copies every letter and loops, if any.
    pub fn detect_identity(&self) -> Option<StateId> {
        (0..self.num_states()).find(|&q| self.is_identity_row(q))
    }

    /// Parses a word over the alphabet. Whitespace-separated tokens are
    /// letters; without whitespace every character is a letter.
    pub fn read_word(&self, text: &str) -> Result<Vec<Letter>> {
        let text = text.trim();
        if text.chars().any(char::is_whitespace) {
            text.split_whitespace().map(|t| self.letter_index(t)).collect()
        } else {
            text.chars().map(|c| self.letter_index(c.encode_utf8(&mut [0; 4]))).collect()
        }
    }

    /// Inverse of [`read_word`](Self::read_word).
    pub fn write_word(&self, word: &[Letter]) -> String {
        let names = word.iter().map(|&a| self.alphabet[a].as_str());
        if self.alphabet.iter().all(|a| a.chars().count() == 1) {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(" ")
        }
    }

    /// Image of `word` under the transformation at `start`.
    pub fn apply(&self, start: StateId, word: &[Letter]) -> Result<Vec<Letter>> {
        let k = self.degree();
        if let Some(&bad) = word.iter().find(|&&a| a >= k) {
            return Err(Error::UnknownLetter(bad.to_string()));
        }
        Ok(self.run(start, word).0)
    }

    /// Image of `word` and the state reached after reading it.
    pub fn run(&self, start: StateId, word: &[Letter]) -> (Vec<Letter>, StateId) {
        let mut q = start;
        let out = word
            .iter()
            .map(|&a| {
                let t = self.transition(q, a);
                q = t.next;
                t.output
            })
            .collect();
        (out, q)
    }

    pub fn is_invertible(&self) -> bool {
        self.first_non_bijective_state().is_none()
    }

    fn first_non_bijective_state(&self) -> Option<StateId> {
        let k = self.degree();
        let mut hit = vec![false; k];
        (0..self.num_states()).find(|&q| {
            hit.iter_mut().for_each(|h| *h = false);
            (0..k).any(|a| std::mem::replace(&mut hit[self.output(q, a)], true))
        })
    }

    /// The machine with transitions `q⁻¹ · o = i · r⁻¹` wherever `q · i = o · r`.
    pub fn inverse(&self) -> Result<MealyMachine> {
        if let Some(q) = self.first_non_bijective_state() {
            return Err(Error::NotInvertible(self.states[q].clone()));
        }
        let k = self.degree();
        let mut rows = vec![vec![(0, 0); k]; self.num_states()];
        for (q, row) in rows.iter_mut().enumerate() {
            for a in 0..k {
                let t = self.transition(q, a);
                row[t.output] = (a, t.next);
            }
        }
        let states = self
            .states
            .iter()
            .enumerate()
            .map(|(q, n)| if Some(q) == self.identity { n.clone() } else { inverse_name(n) })
            .collect();
        Ok(MealyMachine::new(self.alphabet.clone(), states, rows, self.identity)?
            .with_name(inverse_name(&self.name)))
    }

    /// Composition machine on `Q × R`; state `(q, r)` applies `r` first, then `q`.
    pub fn product(&self, other: &MealyMachine) -> Result<MealyMachine> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let k = self.degree();
        let nr = other.num_states();
        let mut states = Vec::with_capacity(self.num_states() * nr);
        let mut rows = Vec::with_capacity(self.num_states() * nr);
        for q in 0..self.num_states() {
            for r in 0..nr {
                states.push(format!("({},{})", self.states[q], other.states[r]));
                rows.push(
                    (0..k)
                        .map(|i| {
                            let t1 = other.transition(r, i);
                            let t2 = self.transition(q, t1.output);
                            (t2.output, t2.next * nr + t1.next)
                        })
                        .collect(),
                );
            }
        }
        let identity = match (self.identity, other.identity) {
            (Some(e), Some(f)) => Some(e * nr + f),
            _ => None,
        };
        Ok(MealyMachine::new(self.alphabet.clone(), states, rows, identity)?
            .with_name(format!("{}*{}", self.name, other.name)))
    }

    /// States and letters exchanged: `i · q = r · o` wherever `q · i = o · r`.
    pub fn dual(&self) -> MealyMachine {
        let n = self.num_states();
        let rows = (0..self.degree())
            .map(|i| {
                (0..n)
                    .map(|q| {
                        let t = self.transition(q, i);
                        (t.next, t.output)
                    })
                    .collect()
            })
            .collect();
        let mut m = MealyMachine::new(self.states.clone(), self.alphabet.clone(), rows, None)
            .expect("dual of a valid machine is valid")
            .with_name(format!("{}^dual", self.name));
        m.identity = m.detect_identity();
        m
    }

    pub fn is_reversible(&self) -> bool {
        self.dual().is_invertible()
    }

    pub fn classify(&self) -> Classification {
        let invertible = self.is_invertible();
        let reversible = self.is_reversible();
        let bireversible = invertible
            && reversible
            && self.inverse().map(|inv| inv.dual().is_invertible()).unwrap_or(false);
        Classification { invertible, reversible, bireversible }
    }

    /// Canonical form of the transformation at `start`.
    pub fn canonical(&self, start: StateId) -> CanonicalMachine {
        let outs: Vec<u32> = self.table.iter().map(|t| t.output as u32).collect();
        let nexts: Vec<u32> = self.table.iter().map(|t| t.next as u32).collect();
        CanonicalMachine::from_tables(self.degree(), &outs, &nexts, start)
    }

    /// Canonical forms of all states, in state order.
    pub fn canonical_states(&self) -> Vec<CanonicalMachine> {
        (0..self.num_states()).map(|q| self.canonical(q)).collect()
    }

    /// Block id per state: equal ids iff equal behavior.
    pub fn equivalence_classes(&self) -> Vec<usize> {
        let outs: Vec<u32> = self.table.iter().map(|t| t.output as u32).collect();
        let nexts: Vec<u32> = self.table.iter().map(|t| t.next as u32).collect();
        minimize::refine(self.num_states(), self.degree(), &outs, &nexts)
    }

    /// States whose transformation is trivial: the largest set of states
    /// that copy every letter and only move within the set.
    pub fn identity_states(&self) -> Vec<bool> {
        let k = self.degree();
        let mut trivial: Vec<bool> =
            (0..self.num_states()).map(|q| (0..k).all(|a| self.output(q, a) == a)).collect();
        loop {
            let mut changed = false;
            for q in 0..self.num_states() {
                if trivial[q] && (0..k).any(|a| !trivial[self.next(q, a)]) {
                    trivial[q] = false;
                    changed = true;
                }
            }
            if !changed {
                return trivial;
            }
        }
    }

    /// Side-by-side union; state names must not collide.
    pub fn disjoint_union(&self, other: &MealyMachine) -> Result<MealyMachine> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let off = self.num_states();
        let mut states = self.states.clone();
        states.extend(other.states.iter().cloned());
        let rows = self
            .rows()
            .into_iter()
            .chain(other.rows().into_iter().map(|r| r.into_iter().map(|(o, n)| (o, n + off)).collect()))
            .collect();
        let identity = self.identity.or(other.identity.map(|e| e + off));
        Ok(MealyMachine::new(self.alphabet.clone(), states, rows, identity)?
            .with_name(format!("{}+{}", self.name, other.name)))
    }

    /// The machine on `Q ⊔ Q⁻¹` and the involution pairing each state with
    /// its inverse. States `0..|Q|` are the originals, in order. A state
    /// whose inverse already appears among the originals (under the name
    /// [`inverse_name`] gives) is paired with it instead of being copied,
    /// and the declared identity is its own inverse.
    pub fn with_inverses(&self) -> Result<(MealyMachine, Vec<StateId>)> {
        let inv = self.inverse()?;
        let n = self.num_states();
        let k = self.degree();
        let mut slot = vec![usize::MAX; n];
        let mut states = self.states.clone();
        for q in 0..n {
            if Some(q) == self.identity {
                slot[q] = q;
                continue;
            }
            let want = inverse_name(&self.states[q]);
            if let Ok(p) = self.state_index(&want) {
                if self.canonical(p) == inv.canonical(q) {
                    slot[q] = p;
                    continue;
                }
            }
            let mut name = want;
            while states.contains(&name) {
                name.push('\'');
            }
            slot[q] = states.len();
            states.push(name);
        }
        let mut rows = self.rows();
        let mut pair: Vec<StateId> = slot.clone();
        for q in 0..n {
            if slot[q] >= n {
                rows.push(
                    (0..k)
                        .map(|a| {
                            let t = inv.transition(q, a);
                            (t.output, slot[t.next])
                        })
                        .collect(),
                );
                pair.push(q);
            }
        }
        let m = MealyMachine::new(self.alphabet.clone(), states, rows, self.identity)?
            .with_name(format!("{}+inverse", self.name));
        Ok((m, pair))
    }

    /// Transition rows as `(output, next)` pairs.
    pub fn rows(&self) -> Vec<Vec<(Letter, StateId)>> {
        self.table
            .chunks(self.degree())
            .map(|r| r.iter().map(|t| (t.output, t.next)).collect())
            .collect()
    }

    /// Renames states; the new names must be distinct.
    pub fn with_state_names(&self, names: Vec<String>) -> Result<MealyMachine> {
        if names.len() != self.num_states() {
            return Err(Error::InvalidMachine("wrong number of state names".into()));
        }
        Ok(MealyMachine::new(self.alphabet.clone(), names, self.rows(), self.identity)?
            .with_name(self.name.clone()))
    }

    /// Same table with the declared identity state replaced.
    pub fn with_identity(&self, identity: Option<StateId>) -> Result<MealyMachine> {
        Ok(MealyMachine::new(self.alphabet.clone(), self.states.clone(), self.rows(), identity)?
            .with_name(self.name.clone()))
    }

    /// Structural equality up to the machine name and identity declaration.
    pub fn same_table(&self, other: &MealyMachine) -> bool {
        self.alphabet == other.alphabet && self.states == other.states && self.table == other.table
    }
}

/// A machine together with a start state: one transformation of `A*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialMachine {
    machine: MealyMachine,
    start: StateId,
}

impl InitialMachine {
    pub fn new(machine: MealyMachine, start: StateId) -> Result<Self> {
        if start >= machine.num_states() {
            return Err(Error::UnknownState(start.to_string()));
        }
        Ok(InitialMachine { machine, start })
    }

    pub fn named(machine: MealyMachine, start: &str) -> Result<Self> {
        let s = machine.state_index(start)?;
        Ok(InitialMachine { machine, start: s })
    }

    pub fn machine(&self) -> &MealyMachine {
        &self.machine
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn apply(&self, word: &[Letter]) -> Result<Vec<Letter>> {
        self.machine.apply(self.start, word)
    }

    pub fn minimize(&self) -> CanonicalMachine {
        self.machine.canonical(self.start)
    }

    /// Equality of transformations, decided on canonical forms.
    pub fn behavior_eq(&self, other: &InitialMachine) -> Result<bool> {
        if self.machine.alphabet != other.machine.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.minimize() == other.minimize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn adding() -> MealyMachine {
        MealyMachine::new(
            names(&["0", "1"]),
            names(&["t", "1"]),
            vec![vec![(1, 1), (0, 0)], vec![(0, 1), (1, 1)]],
            Some(1),
        )
        .unwrap()
        .with_name("adding")
    }

    fn odometer(word: &[Letter], add: u64) -> Vec<Letter> {
        let n = word.len();
        let v: u64 = word.iter().enumerate().map(|(i, &b)| (b as u64) << i).sum();
        let w = (v + add) & ((1u64 << n) - 1);
        (0..n).map(|i| ((w >> i) & 1) as Letter).collect()
    }

    #[test]
    fn adding_machine_transduces() {
        let m = adding();
        let w = m.read_word("111001").unwrap();
        assert_eq!(m.write_word(&m.apply(0, &w).unwrap()), "000101");
        assert_eq!(m.write_word(&m.apply(0, &[0, 0, 0]).unwrap()), "100");
        assert_eq!(m.apply(1, &w).unwrap(), w);
        assert!(matches!(m.read_word("102"), Err(Error::UnknownLetter(_))));
    }

    #[test]
    fn inverse_undoes_and_names_round_trip() {
        let m = adding();
        let inv = m.inverse().unwrap();
        assert_eq!(inv.states(), &names(&["t^-1", "1"]));
        let w = m.read_word("000101").unwrap();
        assert_eq!(m.write_word(&inv.apply(0, &w).unwrap()), "111001");
        let back = inv.inverse().unwrap();
        assert!(back.same_table(&m));
        assert_eq!(back.name(), "adding");
    }

    #[test]
    fn non_invertible_is_rejected() {
        let m = MealyMachine::new(names(&["0", "1"]), names(&["q"]), vec![vec![(0, 0), (0, 0)]], None)
            .unwrap();
        assert!(!m.is_invertible());
        assert_eq!(m.inverse(), Err(Error::NotInvertible("q".into())));
    }

    #[test]
    fn product_composes_right_factor_first() {
        let m = adding();
        let p = m.product(&m).unwrap();
        assert_eq!(p.num_states(), 4);
        let tt = p.state_index("(t,t)").unwrap();
        assert_eq!(p.write_word(&p.apply(tt, &m.read_word("110").unwrap()).unwrap()), "101");
        let t1 = InitialMachine::named(p.clone(), "(t,1)").unwrap();
        let t = InitialMachine::named(m.clone(), "t").unwrap();
        assert!(t1.behavior_eq(&t).unwrap());
        for len in 0..=6 {
            for v in 0..1u64 << len {
                let w: Vec<Letter> = (0..len).map(|i| ((v >> i) & 1) as Letter).collect();
                assert_eq!(p.apply(tt, &w).unwrap(), odometer(&w, 2));
            }
        }
    }

    #[test]
    fn dual_of_adding_machine() {
        let d = adding().dual();
        assert_eq!(d.states(), &names(&["0", "1"]));
        assert_eq!(d.alphabet(), &names(&["t", "1"]));
        // state 0: t|1 -> 1, 1|1 -> 0 ; state 1: t|t -> 0, 1|1 -> 1
        assert_eq!(d.rows(), vec![vec![(1, 1), (1, 0)], vec![(0, 0), (1, 1)]]);
        assert!(d.dual().same_table(&adding()));
    }

    #[test]
    fn identity_fixpoint_finds_undeclared_copies() {
        // e copies and moves to f, f copies and loops; g copies but moves to t
        let m = MealyMachine::new(
            names(&["0", "1"]),
            names(&["t", "e", "f", "g"]),
            vec![
                vec![(1, 1), (0, 0)],
                vec![(0, 2), (1, 2)],
                vec![(0, 2), (1, 2)],
                vec![(0, 0), (1, 1)],
            ],
            None,
        )
        .unwrap();
        assert_eq!(m.identity_states(), vec![false, true, true, false]);
    }

    #[test]
    fn with_inverses_shares_identity() {
        let (m, pair) = adding().with_inverses().unwrap();
        assert_eq!(m.states(), &names(&["t", "1", "t^-1"]));
        assert_eq!(pair, vec![2, 1, 0]);
        let t = m.canonical(0);
        let ti = m.canonical(2);
        assert!(t.then(&ti).is_identity());
    }

    #[test]
    fn bad_identity_declaration_fails() {
        let r = MealyMachine::new(names(&["0", "1"]), names(&["t"]), vec![vec![(1, 0), (0, 0)]], Some(0));
        assert!(matches!(r, Err(Error::InvalidMachine(_))));
    }
}
