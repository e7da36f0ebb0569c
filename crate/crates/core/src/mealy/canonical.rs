//! Canonical forms of initial machines.
//!
//! A [`CanonicalMachine`] is minimized, restricted to the states reachable
//! from its start, and numbered in breadth-first order from the start using
//! the alphabet order. Two initial machines over the same alphabet define
//! the same transformation iff their canonical forms are equal, so the type
//! doubles as an exact hash key for group elements.

use std::collections::HashMap;

use super::minimize::refine;
use super::{InitialMachine, Letter, MealyMachine, StateId};
use crate::error::{Error, Result};

/// Minimal, reachable, BFS-numbered machine. State 0 is the start.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalMachine {
    degree: u32,
    // interleaved (output, next) per (state, letter)
    table: Box<[u32]>,
}

impl CanonicalMachine {
    /// The identity transformation over an alphabet of `degree` letters.
    pub fn identity(degree: usize) -> Self {
        let table: Vec<u32> = (0..degree as u32).flat_map(|a| [a, 0]).collect();
        CanonicalMachine { degree: degree as u32, table: table.into() }
    }

    /// Canonical form of the machine given by flat `outputs`/`nexts` tables
    /// started at `start`.
    pub(crate) fn from_tables(
        degree: usize,
        outputs: &[u32],
        nexts: &[u32],
        start: usize,
    ) -> CanonicalMachine {
        let k = degree;
        let n = outputs.len() / k.max(1);
        // restrict to the reachable part first
        let mut index = vec![u32::MAX; n];
        let mut order = vec![start];
        index[start] = 0;
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for a in 0..k {
                let t = nexts[s * k + a] as usize;
                if index[t] == u32::MAX {
                    index[t] = order.len() as u32;
                    order.push(t);
                }
            }
        }
        let m = order.len();
        let mut outs = Vec::with_capacity(m * k);
        let mut nxt = Vec::with_capacity(m * k);
        for &s in &order {
            for a in 0..k {
                outs.push(outputs[s * k + a]);
                nxt.push(index[nexts[s * k + a] as usize]);
            }
        }
        let blocks = refine(m, k, &outs, &nxt);
        let nblocks = blocks.iter().copied().max().map_or(0, |b| b + 1);
        let mut rep = vec![usize::MAX; nblocks];
        for (s, &b) in blocks.iter().enumerate() {
            if rep[b] == usize::MAX {
                rep[b] = s;
            }
        }
        let q_out: Vec<u32> =
            (0..nblocks).flat_map(|b| outs[rep[b] * k..(rep[b] + 1) * k].to_vec()).collect();
        let q_next: Vec<u32> = (0..nblocks)
            .flat_map(|b| {
                nxt[rep[b] * k..(rep[b] + 1) * k].iter().map(|&t| blocks[t as usize] as u32).collect::<Vec<_>>()
            })
            .collect();
        Self::renumbered(degree, &q_out, &q_next, blocks[0])
    }

    /// BFS renumbering of an already minimal machine.
    fn renumbered(degree: usize, outputs: &[u32], nexts: &[u32], start: usize) -> CanonicalMachine {
        let k = degree;
        let n = outputs.len() / k.max(1);
        let mut index = vec![u32::MAX; n];
        let mut order = vec![start];
        index[start] = 0;
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for a in 0..k {
                let t = nexts[s * k + a] as usize;
                if index[t] == u32::MAX {
                    index[t] = order.len() as u32;
                    order.push(t);
                }
            }
        }
        let mut table = Vec::with_capacity(order.len() * k * 2);
        for &s in &order {
            for a in 0..k {
                table.push(outputs[s * k + a]);
                table.push(index[nexts[s * k + a] as usize]);
            }
        }
        CanonicalMachine { degree: degree as u32, table: table.into() }
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn num_states(&self) -> usize {
        if self.degree == 0 {
            return 1;
        }
        self.table.len() / (2 * self.degree as usize)
    }

    #[inline]
    pub fn output(&self, state: StateId, letter: Letter) -> Letter {
        self.table[2 * (state * self.degree as usize + letter)] as usize
    }

    #[inline]
    pub fn next(&self, state: StateId, letter: Letter) -> StateId {
        self.table[2 * (state * self.degree as usize + letter) + 1] as usize
    }

    /// True iff this is the trivial transformation.
    pub fn is_identity(&self) -> bool {
        self.num_states() == 1 && (0..self.degree()).all(|a| self.output(0, a) == a)
    }

    /// Image of a word; letters must be below `degree`.
    pub fn apply(&self, word: &[Letter]) -> Vec<Letter> {
        let mut s = 0;
        word.iter()
            .map(|&a| {
                let o = self.output(s, a);
                s = self.next(s, a);
                o
            })
            .collect()
    }

    /// Image of a word together with the state reached.
    pub fn run(&self, word: &[Letter]) -> (Vec<Letter>, StateId) {
        let mut s = 0;
        let out = word
            .iter()
            .map(|&a| {
                let o = self.output(s, a);
                s = self.next(s, a);
                o
            })
            .collect();
        (out, s)
    }

    /// Permutation (or map, if not invertible) induced on the first level.
    pub fn root_map(&self) -> Vec<Letter> {
        (0..self.degree()).map(|a| self.output(0, a)).collect()
    }

    pub fn is_invertible(&self) -> bool {
        let k = self.degree();
        let mut seen = vec![false; k];
        (0..self.num_states()).all(|s| {
            seen.iter_mut().for_each(|x| *x = false);
            (0..k).all(|a| !std::mem::replace(&mut seen[self.output(s, a)], true))
        })
    }

    fn split_tables(&self) -> (Vec<u32>, Vec<u32>) {
        let outs = self.table.iter().step_by(2).copied().collect();
        let nexts = self.table.iter().skip(1).step_by(2).copied().collect();
        (outs, nexts)
    }

    /// Canonical form of the same machine started at `state`.
    pub fn section(&self, state: StateId) -> CanonicalMachine {
        if state == 0 {
            return self.clone();
        }
        let (outs, nexts) = self.split_tables();
        Self::renumbered(self.degree(), &outs, &nexts, state)
    }

    /// Canonical forms of every state of this machine, state 0 first.
    pub fn sections(&self) -> Vec<CanonicalMachine> {
        (0..self.num_states()).map(|s| self.section(s)).collect()
    }

    /// States that are endpoints of arbitrarily long paths, i.e. reachable
    /// from a cycle.
    pub fn recurrent_states(&self) -> Vec<StateId> {
        let n = self.num_states();
        let k = self.degree();
        let succ: Vec<Vec<usize>> =
            (0..n).map(|s| (0..k).map(|a| self.next(s, a)).collect()).collect();
        recurrent(&succ)
    }

    /// The inverse transformation.
    pub fn inverse(&self) -> Result<CanonicalMachine> {
        let k = self.degree();
        let n = self.num_states();
        let mut outs = vec![0u32; n * k];
        let mut nexts = vec![0u32; n * k];
        for s in 0..n {
            let mut hit = vec![false; k];
            for a in 0..k {
                let o = self.output(s, a);
                if std::mem::replace(&mut hit[o], true) {
                    return Err(Error::NotInvertible(format!("s{s}")));
                }
                outs[s * k + o] = a as u32;
                nexts[s * k + o] = self.next(s, a) as u32;
            }
        }
        Ok(Self::renumbered(k, &outs, &nexts, 0))
    }

    /// Composite transformation: `self` acts first, then `then`.
    pub fn then(&self, then: &CanonicalMachine) -> CanonicalMachine {
        self.then_capped(then, usize::MAX).expect("uncapped composition")
    }

    /// As [`then`](Self::then), failing once the product exceeds `cap` states.
    pub fn then_capped(&self, then: &CanonicalMachine, cap: usize) -> Result<CanonicalMachine> {
        assert_eq!(self.degree, then.degree, "composition across alphabets");
        let k = self.degree();
        let (n1, n2) = (self.num_states(), then.num_states());
        let mut outs: Vec<u32> = Vec::new();
        let mut nexts: Vec<u32> = Vec::new();
        let mut order: Vec<(u32, u32)> = vec![(0, 0)];
        let dense = n1.saturating_mul(n2) <= 1 << 22;
        let mut dense_index: Vec<u32> = if dense { vec![u32::MAX; n1 * n2] } else { Vec::new() };
        let mut sparse_index: HashMap<(u32, u32), u32> = HashMap::new();
        if dense {
            dense_index[0] = 0;
        } else {
            sparse_index.insert((0, 0), 0);
        }
        let mut head = 0;
        while head < order.len() {
            let (p, q) = order[head];
            head += 1;
            for a in 0..k {
                let b = self.output(p as usize, a);
                let p2 = self.next(p as usize, a) as u32;
                let c = then.output(q as usize, b);
                let q2 = then.next(q as usize, b) as u32;
                let fresh = order.len() as u32;
                let id = if dense {
                    let slot = &mut dense_index[p2 as usize * n2 + q2 as usize];
                    if *slot == u32::MAX {
                        *slot = fresh;
                    }
                    *slot
                } else {
                    *sparse_index.entry((p2, q2)).or_insert(fresh)
                };
                if id == fresh {
                    order.push((p2, q2));
                    if order.len() > cap {
                        return Err(Error::CapExceeded { what: "product machine states", cap });
                    }
                }
                outs.push(c as u32);
                nexts.push(id);
            }
        }
        Ok(Self::from_tables(k, &outs, &nexts, 0))
    }

    /// `self` composed with itself `exp` times.
    pub fn pow(&self, exp: u64) -> CanonicalMachine {
        let mut result = CanonicalMachine::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.then(&base);
            }
        }
        result
    }

    /// Expands to a full initial machine; states are named `s0, s1, ...`.
    pub fn to_initial(&self, alphabet: &[String]) -> Result<InitialMachine> {
        if alphabet.len() != self.degree() {
            return Err(Error::AlphabetMismatch);
        }
        let n = self.num_states();
        let rows: Vec<Vec<(usize, usize)>> = (0..n)
            .map(|s| (0..self.degree()).map(|a| (self.output(s, a), self.next(s, a))).collect())
            .collect();
        let identity = (0..n).find(|&s| {
            (0..self.degree()).all(|a| self.output(s, a) == a && self.next(s, a) == s)
        });
        let machine = MealyMachine::new(
            alphabet.to_vec(),
            (0..n).map(|s| format!("s{s}")).collect(),
            rows,
            identity,
        )?;
        InitialMachine::new(machine, 0)
    }

    /// Serialized key: degree then the interleaved table, little-endian.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + 4 * self.table.len());
        out.extend_from_slice(&self.degree.to_le_bytes());
        for x in self.table.iter() {
            out.extend_from_slice(&x.to_le_bytes());
        }
        out
    }
}

/// Nodes reachable from some cycle of the digraph.
pub(crate) fn recurrent(succ: &[Vec<usize>]) -> Vec<usize> {
    let n = succ.len();
    let comp = crate::graphutil::scc(succ);
    let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
    let mut size = vec![0usize; ncomp];
    for &c in &comp {
        size[c] += 1;
    }
    let mut cyclic = vec![false; n];
    for v in 0..n {
        if size[comp[v]] > 1 || succ[v].contains(&v) {
            cyclic[v] = true;
        }
    }
    let mut seen = cyclic.clone();
    let mut stack: Vec<usize> = (0..n).filter(|&v| cyclic[v]).collect();
    while let Some(v) = stack.pop() {
        for &w in &succ[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    (0..n).filter(|&v| seen[v]).collect()
}
