//! Group elements given by words over machine states.
//!
//! Convention: the leftmost symbol of a word acts first. The word `q r`
//! sends `v` to `r · (q · v)`, and reading a word left to right along a
//! letter `x` yields the section word at `x`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::mealy::{CanonicalMachine, Letter, MealyMachine, StateId};
use crate::words::{Atom, GroupWord};

/// Default bound on the number of states of any intermediate product.
pub const DEFAULT_STATE_CAP: usize = 100_000;
/// Default exponent bound for [`order`].
pub const DEFAULT_MAX_EXP: u64 = 1 << 16;

/// Evaluates words over the states of one machine, caching the canonical
/// form of every generator and of its inverse.
#[derive(Clone, Debug)]
pub struct Evaluator {
    machine: MealyMachine,
    forward: Vec<CanonicalMachine>,
    backward: Option<Vec<CanonicalMachine>>,
    trivial: Vec<bool>,
    cap: usize,
}

impl Evaluator {
    pub fn new(machine: &MealyMachine) -> Self {
        let forward = machine.canonical_states();
        let backward = machine
            .is_invertible()
            .then(|| forward.iter().map(|c| c.inverse().expect("invertible machine")).collect());
        Evaluator {
            trivial: machine.identity_states(),
            machine: machine.clone(),
            forward,
            backward,
            cap: DEFAULT_STATE_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn machine(&self) -> &MealyMachine {
        &self.machine
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// State index of a symbol. The symbol `1` names the identity when no
    /// state is called that.
    fn lookup(&self, symbol: &str) -> Result<Option<StateId>> {
        match self.machine.state_index(symbol) {
            Ok(q) => Ok(Some(q)),
            Err(_) if symbol == "1" => Ok(None),
            Err(_) => Err(Error::UnknownSymbol(symbol.to_string())),
        }
    }

    /// Canonical form of one atom.
    pub fn atom(&self, a: &Atom) -> Result<CanonicalMachine> {
        let Some(q) = self.lookup(&a.symbol)? else {
            return Ok(CanonicalMachine::identity(self.machine.degree()));
        };
        if !a.inverse {
            return Ok(self.forward[q].clone());
        }
        match &self.backward {
            Some(b) => Ok(b[q].clone()),
            None => Err(Error::NotInvertible(self.machine.states()[q].clone())),
        }
    }

    /// Canonical form of the composite transformation.
    pub fn evaluate(&self, w: &GroupWord) -> Result<CanonicalMachine> {
        let mut acc = CanonicalMachine::identity(self.machine.degree());
        for a in w.atoms() {
            let g = self.atom(a)?;
            acc = self.compose(&acc, &g)?;
        }
        Ok(acc)
    }

    /// `first` then `then`, under the state cap.
    pub fn compose(&self, first: &CanonicalMachine, then: &CanonicalMachine) -> Result<CanonicalMachine> {
        if first.is_identity() {
            return Ok(then.clone());
        }
        if then.is_identity() {
            return Ok(first.clone());
        }
        first.then_capped(then, self.cap)
    }

    pub fn is_identity(&self, w: &GroupWord) -> Result<bool> {
        Ok(self.evaluate(w)?.is_identity())
    }

    /// Root permutation and section words, read off the machine table.
    pub fn wreath_decompose(&self, w: &GroupWord) -> Result<WreathDecomposition> {
        let m = &self.machine;
        let k = m.degree();
        let mut resolved = Vec::with_capacity(w.len());
        for a in w.atoms() {
            if let Some(q) = self.lookup(&a.symbol)? {
                if a.inverse && self.backward.is_none() {
                    return Err(Error::NotInvertible(m.states()[q].clone()));
                }
                resolved.push((q, a.inverse));
            }
        }
        let mut root_perm = Vec::with_capacity(k);
        let mut sections = Vec::with_capacity(k);
        for x in 0..k {
            let mut cur = x;
            let mut section = Vec::new();
            for &(q, inverse) in &resolved {
                let next = if inverse {
                    let i = (0..k).find(|&i| m.output(q, i) == cur).expect("invertible row");
                    let r = m.next(q, i);
                    cur = i;
                    r
                } else {
                    let t = m.transition(q, cur);
                    cur = t.output;
                    t.next
                };
                if !self.trivial[next] {
                    section.push(Atom::new(m.states()[next].clone(), inverse));
                }
            }
            root_perm.push(cur);
            sections.push(GroupWord::new(section));
        }
        Ok(WreathDecomposition { alphabet: m.alphabet().to_vec(), root_perm, sections })
    }

    /// Least `k ≤ max_exp` with `wᵏ = 1`, found by successive multiplication.
    pub fn order(&self, w: &GroupWord, max_exp: u64) -> Result<Order> {
        if max_exp == 0 {
            return Err(Error::InvalidArgument("max_exp must be at least 1".into()));
        }
        let g = self.evaluate(w)?;
        let mut acc = g.clone();
        for k in 1..=max_exp {
            if acc.is_identity() {
                return Ok(Order::Finite(k));
            }
            if k < max_exp {
                acc = self.compose(&acc, &g)?;
            }
        }
        Ok(Order::UnknownBeyond(max_exp))
    }

    /// `u, w·u, w²·u, …` up to the first repeat.
    pub fn orbit_on_level(&self, w: &GroupWord, u: &[Letter]) -> Result<Vec<Vec<Letter>>> {
        if let Some(&bad) = u.iter().find(|&&a| a >= self.machine.degree()) {
            return Err(Error::UnknownLetter(bad.to_string()));
        }
        let g = self.evaluate(w)?;
        let mut orbit = vec![u.to_vec()];
        loop {
            let next = g.apply(orbit.last().expect("nonempty"));
            if next == orbit[0] {
                return Ok(orbit);
            }
            orbit.push(next);
        }
    }
}

/// Result of an order search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    UnknownBeyond(u64),
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::UnknownBeyond(n) => write!(f, "unknown beyond {n}"),
        }
    }
}

/// One level of the wreath recursion: `g · (a v) = π(a) (sections[a] · v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathDecomposition {
    pub alphabet: Vec<String>,
    pub root_perm: Vec<Letter>,
    pub sections: Vec<GroupWord>,
}

impl WreathDecomposition {
    /// Permutation matrix with the section at `(i, π(i))`; `1` marks a
    /// trivial section and `0` an empty slot.
    pub fn matrix(&self) -> Vec<Vec<String>> {
        let k = self.root_perm.len();
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if self.root_perm[i] != j {
                            "0".to_string()
                        } else if self.sections[i].is_empty() {
                            "1".to_string()
                        } else {
                            self.sections[i].to_string()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn render_matrix(&self) -> String {
        let rows: Vec<String> =
            self.matrix().iter().map(|r| format!("[{}]", r.join(", "))).collect();
        format!("[{}]", rows.join(", "))
    }
}

impl fmt::Display for WreathDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm: Vec<&str> = self.root_perm.iter().map(|&a| self.alphabet[a].as_str()).collect();
        writeln!(f, "root: {}", perm.join(" "))?;
        for (a, s) in self.sections.iter().enumerate() {
            let s = if s.is_empty() { "1".to_string() } else { s.to_string() };
            writeln!(f, "section {}: {s}", self.alphabet[a])?;
        }
        Ok(())
    }
}

pub fn evaluate(m: &MealyMachine, w: &GroupWord) -> Result<CanonicalMachine> {
    Evaluator::new(m).evaluate(w)
}

pub fn is_identity(m: &MealyMachine, w: &GroupWord) -> Result<bool> {
    Evaluator::new(m).is_identity(w)
}

pub fn wreath_decompose(m: &MealyMachine, w: &GroupWord) -> Result<WreathDecomposition> {
    Evaluator::new(m).wreath_decompose(w)
}

pub fn matrix_form(m: &MealyMachine, w: &GroupWord) -> Result<String> {
    Ok(wreath_decompose(m, w)?.render_matrix())
}

pub fn order(m: &MealyMachine, w: &GroupWord, max_exp: u64) -> Result<Order> {
    Evaluator::new(m).order(w, max_exp)
}

pub fn orbit_on_level(m: &MealyMachine, w: &GroupWord, u: &[Letter]) -> Result<Vec<Vec<Letter>>> {
    Evaluator::new(m).orbit_on_level(w, u)
}

/// Word problem by exploring section words instead of building products.
///
/// A word is trivial iff every section word reachable from it acts
/// trivially on the first level. Section words are kept freely reduced with
/// trivial states dropped, so the search is finite.
#[derive(Clone, Debug)]
pub struct SectionSearch {
    signed: MealyMachine,
    pair: Vec<StateId>,
    trivial: Vec<bool>,
    cap: usize,
}

impl SectionSearch {
    pub fn new(m: &MealyMachine) -> Result<Self> {
        let (signed, pair) = m.with_inverses()?;
        let trivial = signed.identity_states();
        Ok(SectionSearch { signed, pair, trivial, cap: 1 << 22 })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// The machine on states and their inverses that words index into.
    pub fn signed_machine(&self) -> &MealyMachine {
        &self.signed
    }

    /// Index of `q` (or `q⁻¹`) in the signed machine.
    pub fn signed_state(&self, q: StateId, inverse: bool) -> StateId {
        if inverse {
            self.pair[q]
        } else {
            q
        }
    }

    /// Converts a group word to signed-state indices.
    pub fn resolve(&self, w: &GroupWord, original: &MealyMachine) -> Result<Vec<StateId>> {
        w.atoms()
            .iter()
            .map(|a| {
                let q = original
                    .state_index(&a.symbol)
                    .map_err(|_| Error::UnknownSymbol(a.symbol.clone()))?;
                Ok(self.signed_state(q, a.inverse))
            })
            .collect()
    }

    fn normalize(&self, word: &mut Vec<StateId>) {
        let mut out: Vec<StateId> = Vec::with_capacity(word.len());
        for &q in word.iter() {
            if self.trivial[q] {
                continue;
            }
            if out.last() == Some(&self.pair[q]) {
                out.pop();
            } else {
                out.push(q);
            }
        }
        *word = out;
    }

    /// Image of letter `x` under the word and the section word there.
    pub fn step(&self, word: &[StateId], x: Letter) -> (Letter, Vec<StateId>) {
        let mut cur = x;
        let mut section = Vec::with_capacity(word.len());
        for &q in word {
            let t = self.signed.transition(q, cur);
            cur = t.output;
            section.push(t.next);
        }
        (cur, section)
    }

    pub fn root_is_trivial(&self, word: &[StateId]) -> bool {
        (0..self.signed.degree()).all(|x| self.step(word, x).0 == x)
    }

    /// True iff the word over signed states is the identity.
    pub fn is_trivial(&self, word: &[StateId]) -> Result<bool> {
        let mut start = word.to_vec();
        self.normalize(&mut start);
        let mut seen: HashSet<Vec<StateId>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(w) = queue.pop_front() {
            for x in 0..self.signed.degree() {
                let (y, mut s) = self.step(&w, x);
                if y != x {
                    return Ok(false);
                }
                self.normalize(&mut s);
                if !s.is_empty() && !seen.contains(&s) {
                    if seen.len() >= self.cap {
                        return Err(Error::CapExceeded { what: "section words", cap: self.cap });
                    }
                    seen.insert(s.clone());
                    queue.push_back(s);
                }
            }
        }
        Ok(true)
    }
}

/// Canonical forms of the first `count` powers, memoized by exponent.
#[derive(Debug, Default)]
pub struct PowerCache {
    powers: HashMap<u64, CanonicalMachine>,
}

impl PowerCache {
    pub fn power(&mut self, ev: &Evaluator, g: &CanonicalMachine, k: u64) -> Result<CanonicalMachine> {
        if let Some(p) = self.powers.get(&k) {
            return Ok(p.clone());
        }
        let p = match k {
            0 => CanonicalMachine::identity(g.degree()),
            1 => g.clone(),
            _ => {
                let half = self.power(ev, g, k / 2)?;
                let sq = ev.compose(&half, &half)?;
                if k % 2 == 1 {
                    ev.compose(&sq, g)?
                } else {
                    sq
                }
            }
        };
        self.powers.insert(k, p.clone());
        Ok(p)
    }
}
