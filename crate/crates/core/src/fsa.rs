//! Finite acceptors with partial transition maps and labelled accepting sets.
//!
//! A missing transition rejects. Every acceptor carries a family of
//! accepting subsets keyed by label, so one automaton can hold all the
//! multiplier languages of an automatic structure. Single-language
//! acceptors use the label [`MAIN`].
//!
//! ```text
//! acceptor evens
//! alphabet 0 1
//! states e o
//! initial e
//! accept main: e
//! e: 0 -> e ; 1 -> o
//! o: 0 -> o ; 1 -> e
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::format::{content_lines, dot_id, keyword_line};
use crate::mealy::minimize::refine;

/// Label used by single-language acceptors.
pub const MAIN: &str = "main";

/// Padding symbol in the names of pair letters.
pub const PAD: &str = "_";

/// Deterministic acceptor; `None` transitions go to an implicit sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Acceptor {
    name: String,
    alphabet: Vec<String>,
    states: Vec<String>,
    /// `trans[q][a]`
    trans: Vec<Vec<Option<usize>>>,
    initial: usize,
    accepting: BTreeMap<String, Vec<bool>>,
}

fn check_names(what: &str, names: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for n in names {
        if n.is_empty() || n.contains(char::is_whitespace) {
            return Err(Error::InvalidAcceptor(format!("{what} name `{n}` must be one token")));
        }
        if !seen.insert(n) {
            return Err(Error::InvalidAcceptor(format!("{what} `{n}` declared twice")));
        }
    }
    Ok(())
}

impl Acceptor {
    pub fn new(
        alphabet: Vec<String>,
        states: Vec<String>,
        trans: Vec<Vec<Option<usize>>>,
        initial: usize,
        accepting: BTreeMap<String, Vec<usize>>,
    ) -> Result<Self> {
        check_names("letter", &alphabet)?;
        check_names("state", &states)?;
        let n = states.len();
        if n == 0 {
            return Err(Error::InvalidAcceptor("no states".into()));
        }
        if initial >= n {
            return Err(Error::InvalidAcceptor("initial state out of range".into()));
        }
        if trans.len() != n {
            return Err(Error::InvalidAcceptor("one transition row per state required".into()));
        }
        for row in &trans {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidAcceptor("transition row has the wrong length".into()));
            }
            if row.iter().flatten().any(|&t| t >= n) {
                return Err(Error::InvalidAcceptor("transition to an undeclared state".into()));
            }
        }
        let mut acc = BTreeMap::new();
        for (label, set) in accepting {
            if label.is_empty() || label.contains(char::is_whitespace) || label.contains(':') {
                return Err(Error::InvalidAcceptor(format!("bad label `{label}`")));
            }
            let mut bits = vec![false; n];
            for q in set {
                if q >= n {
                    return Err(Error::InvalidAcceptor(format!("label `{label}` names an undeclared state")));
                }
                bits[q] = true;
            }
            acc.insert(label, bits);
        }
        Ok(Acceptor { name: "acceptor".into(), alphabet, states, trans, initial, accepting: acc })
    }

    /// Builds an acceptor with states named by their index.
    pub fn from_table(
        alphabet: Vec<String>,
        trans: Vec<Vec<Option<usize>>>,
        initial: usize,
        accepting: BTreeMap<String, Vec<usize>>,
    ) -> Result<Self> {
        let states = (0..trans.len()).map(|q| format!("s{q}")).collect();
        Acceptor::new(alphabet, states, trans, initial, accepting)
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

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn step(&self, q: usize, a: usize) -> Option<usize> {
        self.trans[q][a]
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.accepting.keys().map(String::as_str)
    }

    pub fn has_label(&self, label: &str) -> bool {
        self.accepting.contains_key(label)
    }

    pub fn accepting(&self, label: &str) -> Result<&[bool]> {
        self.accepting.get(label).map(Vec::as_slice).ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    pub fn is_accepting(&self, label: &str, q: usize) -> Result<bool> {
        Ok(self.accepting(label)?[q])
    }

    pub fn letter_index(&self, name: &str) -> Result<usize> {
        self.alphabet.iter().position(|a| a == name).ok_or_else(|| Error::UnknownLetter(name.into()))
    }

    /// Parses whitespace-separated letter names.
    pub fn read_word(&self, text: &str) -> Result<Vec<usize>> {
        text.split_whitespace().map(|t| self.letter_index(t)).collect()
    }

    pub fn write_word(&self, word: &[usize]) -> String {
        word.iter().map(|&a| self.alphabet[a].as_str()).collect::<Vec<_>>().join(" ")
    }

    /// State reached on `word`, or `None` if it falls into the sink.
    pub fn run(&self, word: &[usize]) -> Option<usize> {
        word.iter().try_fold(self.initial, |q, &a| self.trans[q][a])
    }

    pub fn accepts(&self, label: &str, word: &[usize]) -> Result<bool> {
        let acc = self.accepting(label)?;
        Ok(self.run(word).is_some_and(|q| acc[q]))
    }

    /// Copy whose accepting family is the single set of `label`, renamed.
    pub fn select(&self, label: &str, as_label: &str) -> Result<Acceptor> {
        let bits = self.accepting(label)?.to_vec();
        let mut out = self.clone();
        out.accepting = BTreeMap::from([(as_label.to_string(), bits)]);
        Ok(out)
    }

    /// Adds or replaces a label.
    pub fn with_label(mut self, label: &str, states: &[usize]) -> Result<Acceptor> {
        let mut bits = vec![false; self.num_states()];
        for &q in states {
            if q >= bits.len() {
                return Err(Error::InvalidAcceptor(format!("label `{label}` names an undeclared state")));
            }
            bits[q] = true;
        }
        self.accepting.insert(label.to_string(), bits);
        Ok(self)
    }

    pub fn is_deterministic_complete(&self) -> bool {
        self.trans.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Equivalent acceptor with no missing transitions, adding a sink if
    /// needed.
    pub fn complete(&self) -> Acceptor {
        if self.is_deterministic_complete() {
            return self.clone();
        }
        let sink = self.num_states();
        let mut out = self.clone();
        for row in &mut out.trans {
            for t in row.iter_mut() {
                t.get_or_insert(sink);
            }
        }
        out.trans.push(vec![Some(sink); self.alphabet.len()]);
        let mut name = "sink".to_string();
        while out.states.contains(&name) {
            name.push('\'');
        }
        out.states.push(name);
        for bits in out.accepting.values_mut() {
            bits.push(false);
        }
        out
    }

    /// States reachable from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for &r in self.trans[q].iter().flatten() {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// States from which some word reaches an accepting state of any label.
    fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (q, row) in self.trans.iter().enumerate() {
            for &r in row.iter().flatten() {
                preds[r].push(q);
            }
        }
        let mut good = vec![false; n];
        let mut stack = Vec::new();
        for bits in self.accepting.values() {
            for q in 0..n {
                if bits[q] && !good[q] {
                    good[q] = true;
                    stack.push(q);
                }
            }
        }
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !good[p] {
                    good[p] = true;
                    stack.push(p);
                }
            }
        }
        good
    }

    /// Restriction to reachable states that can still accept; the initial
    /// state is always kept.
    pub fn trim(&self) -> Acceptor {
        let reach = self.reachable();
        let co = self.coreachable();
        let keep: Vec<bool> = (0..self.num_states()).map(|q| q == self.initial || (reach[q] && co[q])).collect();
        self.keep_states(&keep)
    }

    fn keep_states(&self, keep: &[bool]) -> Acceptor {
        let mut index = vec![None; self.num_states()];
        let mut states = Vec::new();
        for q in 0..self.num_states() {
            if keep[q] {
                index[q] = Some(states.len());
                states.push(self.states[q].clone());
            }
        }
        let trans = (0..self.num_states())
            .filter(|&q| keep[q])
            .map(|q| self.trans[q].iter().map(|t| t.and_then(|r| index[r])).collect())
            .collect();
        let accepting = self
            .accepting
            .iter()
            .map(|(l, bits)| (l.clone(), (0..self.num_states()).filter(|&q| keep[q]).map(|q| bits[q]).collect()))
            .collect();
        Acceptor {
            name: self.name.clone(),
            alphabet: self.alphabet.clone(),
            states,
            trans,
            initial: index[self.initial].expect("initial kept"),
            accepting,
        }
    }

    /// Minimal trimmed acceptor for the whole label family, with states
    /// numbered in breadth-first order.
    pub fn minimize(&self) -> Acceptor {
        let full = self.complete();
        let n = full.num_states();
        let k = full.alphabet.len();
        let mut sigs: HashMap<Vec<bool>, u32> = HashMap::new();
        let mut outputs = Vec::with_capacity(n * k);
        let mut nexts = Vec::with_capacity(n * k);
        for q in 0..n {
            let sig: Vec<bool> = full.accepting.values().map(|b| b[q]).collect();
            let next_id = sigs.len() as u32;
            let id = *sigs.entry(sig).or_insert(next_id);
            for a in 0..k {
                outputs.push(id);
                nexts.push(full.trans[q][a].expect("complete") as u32);
            }
        }
        let block = refine(n, k, &outputs, &nexts);
        let nb = block.iter().copied().max().map_or(0, |b| b + 1);
        let mut rep = vec![usize::MAX; nb];
        for q in 0..n {
            if rep[block[q]] == usize::MAX {
                rep[block[q]] = q;
            }
        }
        // BFS numbering of blocks from the initial block
        let mut order = vec![usize::MAX; nb];
        let mut queue = VecDeque::from([block[full.initial]]);
        order[block[full.initial]] = 0;
        let mut seq = vec![block[full.initial]];
        while let Some(b) = queue.pop_front() {
            for a in 0..k {
                let c = block[full.trans[rep[b]][a].expect("complete")];
                if order[c] == usize::MAX {
                    order[c] = seq.len();
                    seq.push(c);
                    queue.push_back(c);
                }
            }
        }
        let trans = seq
            .iter()
            .map(|&b| (0..k).map(|a| Some(order[block[full.trans[rep[b]][a].expect("complete")]])).collect())
            .collect();
        let accepting = full
            .accepting
            .iter()
            .map(|(l, bits)| (l.clone(), seq.iter().map(|&b| bits[rep[b]]).collect()))
            .collect();
        let states = (0..seq.len()).map(|i| format!("s{i}")).collect();
        Acceptor { name: self.name.clone(), alphabet: self.alphabet.clone(), states, trans, initial: 0, accepting }
            .trim()
    }

    /// Nondeterministic view of this acceptor.
    pub fn to_nfa(&self) -> Nfa {
        Nfa {
            alphabet: self.alphabet.clone(),
            trans: self.trans.iter().map(|row| row.iter().map(|t| t.iter().copied().collect()).collect()).collect(),
            initial: vec![self.initial],
            accepting: self.accepting.clone(),
        }
    }

    /// Shortest accepted word for `label`, least in letter order among
    /// the shortest; `None` if the language is empty.
    pub fn shortest_accepted(&self, label: &str) -> Result<Option<Vec<usize>>> {
        let acc = self.accepting(label)?;
        let n = self.num_states();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            if acc[q] {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, a)) = parent[cur] {
                    word.push(a);
                    cur = p;
                }
                word.reverse();
                return Ok(Some(word));
            }
            for a in 0..self.alphabet.len() {
                if let Some(r) = self.trans[q][a] {
                    if !seen[r] {
                        seen[r] = true;
                        parent[r] = Some((q, a));
                        queue.push_back(r);
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_empty(&self, label: &str) -> Result<bool> {
        Ok(self.shortest_accepted(label)?.is_none())
    }

    /// Accepted words of length at most `max_len` in shortlex order.
    pub fn enumerate(&self, label: &str, max_len: usize) -> Result<Vec<Vec<usize>>> {
        let acc = self.accepting(label)?;
        let alive = self.select(label, MAIN)?.coreachable();
        let mut out = Vec::new();
        let mut layer: Vec<(Vec<usize>, usize)> =
            if alive[self.initial] { vec![(Vec::new(), self.initial)] } else { Vec::new() };
        for len in 0..=max_len {
            out.extend(layer.iter().filter(|(_, q)| acc[*q]).map(|(w, _)| w.clone()));
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in &layer {
                for a in 0..self.alphabet.len() {
                    if let Some(r) = self.trans[*q][a] {
                        if alive[r] {
                            let mut w2 = w.clone();
                            w2.push(a);
                            next.push((w2, r));
                        }
                    }
                }
            }
            layer = next;
        }
        Ok(out)
    }
}

/// Nondeterministic acceptor with a set of initial states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    pub alphabet: Vec<String>,
    /// `trans[q][a]` lists the successors.
    pub trans: Vec<Vec<Vec<usize>>>,
    pub initial: Vec<usize>,
    pub accepting: BTreeMap<String, Vec<bool>>,
}

impl Nfa {
    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    /// Direct simulation over state sets.
    pub fn accepts(&self, label: &str, word: &[usize]) -> Result<bool> {
        let acc = self.accepting.get(label).ok_or_else(|| Error::UnknownLabel(label.into()))?;
        let mut cur: BTreeSet<usize> = self.initial.iter().copied().collect();
        for &a in word {
            cur = cur.iter().flat_map(|&q| self.trans[q][a].iter().copied()).collect();
        }
        Ok(cur.iter().any(|&q| acc[q]))
    }
}

/// Subset construction over reachable subsets. The empty subset is
/// represented by missing transitions.
pub fn determinize(nfa: &Nfa) -> Acceptor {
    let k = nfa.alphabet.len();
    let start: Vec<usize> = nfa.initial.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start];
    let mut trans: Vec<Vec<Option<usize>>> = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let next: BTreeSet<usize> = subsets[i].iter().flat_map(|&q| nfa.trans[q][a].iter().copied()).collect();
            if next.is_empty() {
                row.push(None);
                continue;
            }
            let next: Vec<usize> = next.into_iter().collect();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    index.insert(next.clone(), id);
                    subsets.push(next);
                    id
                }
            };
            row.push(Some(id));
        }
        trans.push(row);
        i += 1;
    }
    let accepting = nfa
        .accepting
        .iter()
        .map(|(l, bits)| (l.clone(), subsets.iter().map(|s| s.iter().any(|&q| bits[q])).collect()))
        .collect();
    let states = (0..subsets.len()).map(|q| format!("s{q}")).collect();
    Acceptor { name: "determinized".into(), alphabet: nfa.alphabet.clone(), states, trans, initial: 0, accepting }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Intersect,
    Union,
    Difference,
}

impl BoolOp {
    fn eval(self, x: bool, y: bool) -> bool {
        match self {
            BoolOp::Intersect => x && y,
            BoolOp::Union => x || y,
            BoolOp::Difference => x && !y,
        }
    }
}

/// Product acceptor for `L(a, la) op L(b, lb)` under the label [`MAIN`].
pub fn combine(a: &Acceptor, la: &str, b: &Acceptor, lb: &str, op: BoolOp) -> Result<Acceptor> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let acc_a = a.accepting(la)?;
    let acc_b = b.accepting(lb)?;
    let k = a.alphabet.len();
    type Pair = (Option<usize>, Option<usize>);
    let start: Pair = (Some(a.initial), Some(b.initial));
    let mut index: HashMap<Pair, usize> = HashMap::from([(start, 0)]);
    let mut pairs = vec![start];
    let mut trans = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        let mut row = Vec::with_capacity(k);
        for c in 0..k {
            let np = p.and_then(|p| a.trans[p][c]);
            let nq = q.and_then(|q| b.trans[q][c]);
            let dead = match op {
                BoolOp::Intersect => np.is_none() || nq.is_none(),
                BoolOp::Union => np.is_none() && nq.is_none(),
                BoolOp::Difference => np.is_none(),
            };
            if dead {
                row.push(None);
                continue;
            }
            let key = (np, nq);
            let id = *index.entry(key).or_insert_with(|| {
                pairs.push(key);
                pairs.len() - 1
            });
            row.push(Some(id));
        }
        trans.push(row);
        i += 1;
    }
    let bits: Vec<bool> = pairs
        .iter()
        .map(|&(p, q)| op.eval(p.is_some_and(|p| acc_a[p]), q.is_some_and(|q| acc_b[q])))
        .collect();
    let states = (0..pairs.len()).map(|q| format!("s{q}")).collect();
    Ok(Acceptor {
        name: format!("{}-{}", a.name, b.name),
        alphabet: a.alphabet.clone(),
        states,
        trans,
        initial: 0,
        accepting: BTreeMap::from([(MAIN.to_string(), bits)]),
    })
}

pub fn intersect(a: &Acceptor, la: &str, b: &Acceptor, lb: &str) -> Result<Acceptor> {
    combine(a, la, b, lb, BoolOp::Intersect)
}

pub fn union(a: &Acceptor, la: &str, b: &Acceptor, lb: &str) -> Result<Acceptor> {
    combine(a, la, b, lb, BoolOp::Union)
}

pub fn difference(a: &Acceptor, la: &str, b: &Acceptor, lb: &str) -> Result<Acceptor> {
    combine(a, la, b, lb, BoolOp::Difference)
}

/// Complement of `L(a, label)` within all words, under the label [`MAIN`].
pub fn complement(a: &Acceptor, label: &str) -> Result<Acceptor> {
    let full = a.complete();
    let bits = full.accepting(label)?.iter().map(|&x| !x).collect();
    let mut out = full;
    out.accepting = BTreeMap::from([(MAIN.to_string(), bits)]);
    Ok(out)
}

/// Accepts every word over the alphabet.
pub fn universal(alphabet: Vec<String>) -> Result<Acceptor> {
    let k = alphabet.len();
    Acceptor::new(alphabet, vec!["all".into()], vec![vec![Some(0); k]], 0, BTreeMap::from([(MAIN.into(), vec![0])]))
}

/// Accepts exactly the given words.
pub fn finite_language(alphabet: Vec<String>, words: &[Vec<usize>]) -> Result<Acceptor> {
    let k = alphabet.len();
    let mut trans: Vec<Vec<Option<usize>>> = vec![vec![None; k]];
    let mut finals = Vec::new();
    for w in words {
        let mut q = 0;
        for &a in w {
            if a >= k {
                return Err(Error::InvalidArgument(format!("letter index {a} out of range")));
            }
            q = match trans[q][a] {
                Some(r) => r,
                None => {
                    trans.push(vec![None; k]);
                    let r = trans.len() - 1;
                    trans[q][a] = Some(r);
                    r
                }
            };
        }
        finals.push(q);
    }
    Acceptor::from_table(alphabet, trans, 0, BTreeMap::from([(MAIN.into(), finals)]))
}

/// A letter of a padded pair word; padding is `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PaddedPairLetter {
    left: Option<usize>,
    right: Option<usize>,
}

impl PaddedPairLetter {
    pub fn new(left: Option<usize>, right: Option<usize>) -> Result<Self> {
        if left.is_none() && right.is_none() {
            return Err(Error::DoublePadding);
        }
        Ok(PaddedPairLetter { left, right })
    }

    pub fn left(self) -> Option<usize> {
        self.left
    }

    pub fn right(self) -> Option<usize> {
        self.right
    }

    /// Index in the pair alphabet over `n` base letters.
    pub fn index(self, n: usize) -> usize {
        self.left.unwrap_or(n) * (n + 1) + self.right.unwrap_or(n)
    }

    pub fn from_index(i: usize, n: usize) -> Result<Self> {
        let (l, r) = (i / (n + 1), i % (n + 1));
        if l > n {
            return Err(Error::InvalidArgument(format!("pair letter index {i} out of range")));
        }
        PaddedPairLetter::new((l < n).then_some(l), (r < n).then_some(r))
    }
}

/// Names `(a,b)` of all pair letters, indexed as in
/// [`PaddedPairLetter::index`]; padding is written [`PAD`].
pub fn pair_alphabet(base: &[String]) -> Vec<String> {
    let n = base.len();
    let name = |i: usize| if i < n { base[i].as_str() } else { PAD };
    let mut out = Vec::with_capacity((n + 1) * (n + 1) - 1);
    for l in 0..=n {
        for r in 0..=n {
            if l < n || r < n {
                out.push(format!("({},{})", name(l), name(r)));
            }
        }
    }
    out
}

/// Pads the shorter word at the end.
pub fn pad_pairs(u: &[usize], v: &[usize]) -> Vec<PaddedPairLetter> {
    (0..u.len().max(v.len()))
        .map(|i| PaddedPairLetter { left: u.get(i).copied(), right: v.get(i).copied() })
        .collect()
}

/// [`pad_pairs`] as indices into [`pair_alphabet`].
pub fn pad_pair_indices(u: &[usize], v: &[usize], n: usize) -> Vec<usize> {
    pad_pairs(u, v).into_iter().map(|p| p.index(n)).collect()
}

/// Shortlex comparison of words by letter index.
pub fn shortlex_cmp(u: &[usize], v: &[usize]) -> std::cmp::Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}

/// Pair acceptor for shortlex order, letters ranked by their position in
/// `alphabet`. Label [`MAIN`] accepts `u ≤ v`; label `gt` accepts `u > v`.
/// Badly padded pair words are rejected under both labels.
pub fn shortlex_pair_acceptor(alphabet: &[String]) -> Result<Acceptor> {
    let n = alphabet.len();
    const E: usize = 0;
    const LT: usize = 1;
    const GT: usize = 2;
    const US: usize = 3;
    const VS: usize = 4;
    let letters = pair_alphabet(alphabet);
    let mut trans = vec![vec![None; letters.len()]; 5];
    for l in 0..=n {
        for r in 0..=n {
            let Ok(p) = PaddedPairLetter::new((l < n).then_some(l), (r < n).then_some(r)) else {
                continue;
            };
            let c = p.index(n);
            match (p.left, p.right) {
                (None, Some(_)) => {
                    for s in [E, LT, GT, US] {
                        trans[s][c] = Some(US);
                    }
                }
                (Some(_), None) => {
                    for s in [E, LT, GT, VS] {
                        trans[s][c] = Some(VS);
                    }
                }
                (Some(x), Some(y)) => {
                    trans[E][c] = Some(match x.cmp(&y) {
                        std::cmp::Ordering::Less => LT,
                        std::cmp::Ordering::Equal => E,
                        std::cmp::Ordering::Greater => GT,
                    });
                    trans[LT][c] = Some(LT);
                    trans[GT][c] = Some(GT);
                }
                (None, None) => unreachable!(),
            }
        }
    }
    let states = ["eq", "lt", "gt", "u-short", "v-short"].map(String::from).to_vec();
    let accepting = BTreeMap::from([(MAIN.to_string(), vec![E, LT, US]), ("gt".to_string(), vec![GT, VS])]);
    Ok(Acceptor::new(letters, states, trans, E, accepting)?.with_name("shortlex"))
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses the acceptor text format. States without a transition line
/// reject every letter.
pub fn parse_acceptor(text: &str) -> Result<Acceptor> {
    let mut lines = content_lines(text);
    let mut next = |what: &str| lines.next().ok_or_else(|| perr(0, format!("missing {what}")));
    let (ln, l) = next("header")?;
    let name = keyword_line(ln, l, "acceptor")?.to_string();
    if name.is_empty() || name.contains(char::is_whitespace) {
        return Err(perr(ln, "acceptor name must be one token"));
    }
    let (ln, l) = next("alphabet")?;
    let alphabet: Vec<String> = keyword_line(ln, l, "alphabet")?.split_whitespace().map(String::from).collect();
    let (ln, l) = next("states")?;
    let states: Vec<String> = keyword_line(ln, l, "states")?.split_whitespace().map(String::from).collect();
    let idx_state =
        |ln: usize, s: &str| states.iter().position(|q| q == s).ok_or_else(|| perr(ln, format!("unknown state `{s}`")));
    let idx_letter = |ln: usize, s: &str| {
        alphabet.iter().position(|a| a == s).ok_or_else(|| perr(ln, format!("unknown letter `{s}`")))
    };
    let (ln, l) = next("initial")?;
    let initial = idx_state(ln, keyword_line(ln, l, "initial")?)?;
    let mut accepting: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut trans = vec![vec![None; alphabet.len()]; states.len()];
    let mut defined = vec![false; states.len()];
    for (ln, l) in lines {
        if let Ok(rest) = keyword_line(ln, l, "accept") {
            let (label, members) = rest.split_once(':').ok_or_else(|| perr(ln, "expected `accept <label>: ...`"))?;
            let label = label.trim().to_string();
            if label.is_empty() || label.contains(char::is_whitespace) {
                return Err(perr(ln, "label must be one token"));
            }
            if accepting.contains_key(&label) {
                return Err(perr(ln, format!("label `{label}` declared twice")));
            }
            let set = members.split_whitespace().map(|s| idx_state(ln, s)).collect::<Result<Vec<_>>>()?;
            accepting.insert(label, set);
            continue;
        }
        let (head, body) = l.split_once(':').ok_or_else(|| perr(ln, "expected `<state>: ...`"))?;
        let q = idx_state(ln, head.trim())?;
        if std::mem::replace(&mut defined[q], true) {
            return Err(perr(ln, format!("state `{}` defined twice", states[q])));
        }
        for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (input, target) = part.split_once("->").ok_or_else(|| perr(ln, "expected `->`"))?;
            let a = idx_letter(ln, input.trim())?;
            if trans[q][a].is_some() {
                return Err(perr(ln, format!("letter `{}` repeated", alphabet[a])));
            }
            trans[q][a] = Some(idx_state(ln, target.trim())?);
        }
    }
    Ok(Acceptor::new(alphabet, states, trans, initial, accepting)?.with_name(name))
}

pub fn write_acceptor(a: &Acceptor) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "acceptor {}", a.name);
    let _ = writeln!(s, "alphabet {}", a.alphabet.join(" "));
    let _ = writeln!(s, "states {}", a.states.join(" "));
    let _ = writeln!(s, "initial {}", a.states[a.initial]);
    for (label, bits) in &a.accepting {
        let members: Vec<&str> = (0..a.num_states()).filter(|&q| bits[q]).map(|q| a.states[q].as_str()).collect();
        let _ = writeln!(s, "accept {label}: {}", members.join(" "));
    }
    for (q, name) in a.states.iter().enumerate() {
        let parts: Vec<String> = (0..a.alphabet.len())
            .filter_map(|c| a.trans[q][c].map(|r| format!("{} -> {}", a.alphabet[c], a.states[r])))
            .collect();
        if !parts.is_empty() {
            let _ = writeln!(s, "{name}: {}", parts.join(" ; "));
        }
    }
    s
}

/// Transition diagram; parallel edges are merged into one comma-separated
/// label and accepting states list their labels.
pub fn acceptor_dot(a: &Acceptor) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", dot_id(&a.name));
    let _ = writeln!(s, "  rankdir=LR;");
    let _ = writeln!(s, "  __start [shape=point];");
    for (q, name) in a.states.iter().enumerate() {
        let labels: Vec<&str> = a.accepting.iter().filter(|(_, b)| b[q]).map(|(l, _)| l.as_str()).collect();
        if labels.is_empty() {
            let _ = writeln!(s, "  {} [shape=circle];", dot_id(name));
        } else {
            let _ = writeln!(
                s,
                "  {} [shape=doublecircle, xlabel={}];",
                dot_id(name),
                dot_id(&labels.join(","))
            );
        }
    }
    let _ = writeln!(s, "  __start -> {};", dot_id(&a.states[a.initial]));
    for (q, name) in a.states.iter().enumerate() {
        let mut edges: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
        for c in 0..a.alphabet.len() {
            if let Some(r) = a.trans[q][c] {
                edges.entry(r).or_default().push(&a.alphabet[c]);
            }
        }
        for (r, letters) in edges {
            let _ = writeln!(
                s,
                "  {} -> {} [label={}];",
                dot_id(name),
                dot_id(&a.states[r]),
                dot_id(&letters.join(", "))
            );
        }
    }
    s.push_str("}\n");
    s
}
