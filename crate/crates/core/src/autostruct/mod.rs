//! Automatic structures: a regular language of normal forms plus
//! multiplier acceptors on padded pairs, and the algorithms built on them.
//!
//! The multiplier carries one accepting label per generator `s`, accepting
//! the pairs `(u, v)` of normal forms with `u = v s`, and the label
//! [`IDENTITY_LABEL`] for pairs naming the same element.

pub mod surface;
pub mod z2;

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::fsa::{
    determinize, difference, pad_pair_indices, pair_alphabet, shortlex_pair_acceptor, Acceptor, Nfa,
    PaddedPairLetter, MAIN,
};

pub use surface::{
    cannon_series, dehn_reduce, surface_equal, surface_growth_bfs, SurfaceBall, SurfaceGroupPresentation,
};
pub use z2::{z2_difference_multiplier, z2_distance, z2_structure, z2_vector};

/// Multiplier label for equality of normal forms.
pub const IDENTITY_LABEL: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomaticStructure {
    generators: Vec<String>,
    inverse: Vec<usize>,
    language: Acceptor,
    multiplier: Acceptor,
}

impl AutomaticStructure {
    /// `generators` lists the letters in shortlex order and `inverse`
    /// pairs each with its inverse.
    pub fn new(generators: Vec<String>, inverse: Vec<usize>, language: Acceptor, multiplier: Acceptor) -> Result<Self> {
        let bad = |m: &str| Err(Error::MalformedStructure(m.into()));
        let n = generators.len();
        if inverse.len() != n || (0..n).any(|i| inverse[i] >= n || inverse[inverse[i]] != i) {
            return bad("inverse map is not an involution on the generators");
        }
        if language.alphabet() != generators.as_slice() {
            return bad("language alphabet differs from the generators");
        }
        if multiplier.alphabet() != pair_alphabet(&generators).as_slice() {
            return bad("multiplier alphabet is not the padded pair alphabet");
        }
        if !language.has_label(MAIN) {
            return bad("language has no `main` label");
        }
        for label in std::iter::once(IDENTITY_LABEL).chain(generators.iter().map(String::as_str)) {
            if !multiplier.has_label(label) {
                return Err(Error::MalformedStructure(format!("multiplier has no label `{label}`")));
            }
        }
        Ok(AutomaticStructure { generators, inverse, language, multiplier })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn inverse_of(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn language(&self) -> &Acceptor {
        &self.language
    }

    pub fn multiplier(&self) -> &Acceptor {
        &self.multiplier
    }

    pub fn with_language(&self, language: Acceptor) -> Result<Self> {
        AutomaticStructure::new(self.generators.clone(), self.inverse.clone(), language, self.multiplier.clone())
    }

    pub fn read_word(&self, text: &str) -> Result<Vec<usize>> {
        crate::words::GroupWord::parse(text)?
            .atoms()
            .iter()
            .map(|a| {
                let name = if a.inverse { format!("{}^-1", a.symbol) } else { a.symbol.clone() };
                self.generators.iter().position(|g| *g == name).ok_or(Error::UnknownSymbol(name))
            })
            .collect()
    }

    pub fn write_word(&self, word: &[usize]) -> String {
        word.iter().map(|&a| self.generators[a].as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn is_normal_form(&self, word: &[usize]) -> Result<bool> {
        self.language.accepts(MAIN, word)
    }

    /// Whether the multiplier accepts `(u, v)` under the label.
    pub fn multiplies(&self, u: &[usize], v: &[usize], label: &str) -> Result<bool> {
        self.multiplier.accepts(label, &pad_pair_indices(u, v, self.generators.len()))
    }

    fn label_of(&self, a: usize) -> &str {
        &self.generators[a]
    }

    /// Shortest normal form `v` with `(u, v)` accepted under the label.
    /// The second coordinate is explored breadth first, synchronized with
    /// the language automaton.
    pub fn successor(&self, u: &[usize], label: &str) -> Result<Vec<usize>> {
        let n = self.generators.len();
        let m_acc = self.multiplier.accepting(label)?;
        let l_acc = self.language.accepting(MAIN)?;
        // (position in u, multiplier state, language state, v finished)
        type Node = (usize, usize, usize, bool);
        let start: Node = (0, self.multiplier.initial(), self.language.initial(), false);
        // parent node and the letter read on the second coordinate
        type Back = Option<(usize, Option<usize>)>;
        let mut nodes: Vec<(Node, Back)> = vec![(start, None)];
        let mut index: HashMap<Node, usize> = HashMap::from([(start, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let ((pos, m, l, done), _) = nodes[i];
            if pos == u.len() && m_acc[m] && l_acc[l] {
                let mut v = Vec::new();
                let mut cur = i;
                while let Some((p, b)) = nodes[cur].1 {
                    v.extend(b);
                    cur = p;
                }
                v.reverse();
                return Ok(v);
            }
            let left = u.get(pos).copied();
            let mut choices: Vec<Option<usize>> = Vec::with_capacity(n + 1);
            if !done {
                choices.extend((0..n).map(Some));
            }
            if left.is_some() {
                choices.push(None);
            }
            for b in choices {
                let c = PaddedPairLetter::new(left, b)?.index(n);
                let Some(m2) = self.multiplier.step(m, c) else { continue };
                let l2 = match b {
                    Some(b) => match self.language.step(l, b) {
                        Some(l2) => l2,
                        None => continue,
                    },
                    None => l,
                };
                let node = (pos + usize::from(left.is_some()), m2, l2, b.is_none());
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(node) {
                    e.insert(nodes.len());
                    nodes.push((node, Some((i, b))));
                    queue.push_back(nodes.len() - 1);
                }
            }
        }
        Err(Error::MalformedStructure(format!(
            "no normal form follows `{}` under label `{label}`",
            self.write_word(u)
        )))
    }

    /// Normal form of the identity.
    pub fn identity_normal_form(&self) -> Result<Vec<usize>> {
        self.successor(&[], IDENTITY_LABEL)
    }

    /// Normal form of `w`, one multiplier step per letter. Step `i` looks
    /// for `w_i` with `w_{i-1} = w_i a_i⁻¹`, so it uses the label of the
    /// inverse letter with `w_{i-1}` as the known coordinate.
    pub fn normal_form(&self, w: &[usize]) -> Result<Vec<usize>> {
        let mut cur = self.identity_normal_form()?;
        for &a in w {
            if a >= self.generators.len() {
                return Err(Error::InvalidArgument(format!("letter index {a} out of range")));
            }
            cur = self.successor(&cur, self.label_of(self.inverse[a]))?;
        }
        Ok(cur)
    }

    /// Word problem in time quadratic in `|w|`.
    pub fn is_identity(&self, w: &[usize]) -> Result<bool> {
        Ok(self.normal_form(w)? == self.identity_normal_form()?)
    }

    /// Words of the language with length at most `max_len` whose
    /// identity-label partner is not unique among those words.
    pub fn uniqueness_violations(&self, max_len: usize) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
        let words = self.language.enumerate(MAIN, max_len)?;
        let mut out = Vec::new();
        for (i, u) in words.iter().enumerate() {
            for v in &words[i + 1..] {
                if self.multiplies(u, v, IDENTITY_LABEL)? {
                    out.push((u.clone(), v.clone()));
                }
            }
        }
        Ok(out)
    }
}

/// Restricts the language to shortlex-least representatives: a normal
/// form `u` is dropped when some normal form `v < u` is accepted with it
/// under the identity label. The multiplier is kept.
pub fn make_unique(s: &AutomaticStructure) -> Result<AutomaticStructure> {
    let n = s.generators.len();
    let sl = shortlex_pair_acceptor(&s.generators)?;
    let mult = &s.multiplier;
    let lang = &s.language;
    let m_acc = mult.accepting(IDENTITY_LABEL)?;
    let gt_acc = sl.accepting("gt")?;
    let l_acc = lang.accepting(MAIN)?;

    // product of the multiplier, the order acceptor, and L on the second
    // coordinate; a frozen language state once v has ended
    type Node = (usize, usize, usize);
    let start: Node = (mult.initial(), sl.initial(), lang.initial());
    let mut index: HashMap<Node, usize> = HashMap::from([(start, 0)]);
    let mut nodes = vec![start];
    // edges[p] = (pair letter, target)
    let mut edges: Vec<Vec<(PaddedPairLetter, usize)>> = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let (m, o, l) = nodes[i];
        let mut out = Vec::new();
        for c in 0..(n + 1) * (n + 1) - 1 {
            let p = PaddedPairLetter::from_index(c, n)?;
            let (Some(m2), Some(o2)) = (mult.step(m, c), sl.step(o, c)) else { continue };
            let l2 = match p.right() {
                Some(b) => match lang.step(l, b) {
                    Some(l2) => l2,
                    None => continue,
                },
                None => l,
            };
            let node = (m2, o2, l2);
            let id = *index.entry(node).or_insert_with(|| {
                nodes.push(node);
                nodes.len() - 1
            });
            out.push((p, id));
        }
        edges.push(out);
        i += 1;
    }
    let accept: Vec<bool> = nodes.iter().map(|&(m, o, l)| m_acc[m] && gt_acc[o] && l_acc[l]).collect();
    // nodes that reach acceptance by letters padded on the left only
    let mut tail = accept.clone();
    loop {
        let mut changed = false;
        for p in 0..nodes.len() {
            if !tail[p] && edges[p].iter().any(|&(c, q)| c.left().is_none() && tail[q]) {
                tail[p] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // project onto the first coordinate
    let mut trans = vec![vec![Vec::new(); n]; nodes.len()];
    for (p, out) in edges.iter().enumerate() {
        for &(c, q) in out {
            if let Some(a) = c.left() {
                trans[p][a].push(q);
            }
        }
    }
    let bad = determinize(&Nfa {
        alphabet: s.generators.clone(),
        trans,
        initial: vec![0],
        accepting: BTreeMap::from([(MAIN.to_string(), tail)]),
    });
    let kept = difference(lang, MAIN, &bad, MAIN)?.minimize().with_name(format!("{}-unique", lang.name()));
    s.with_language(kept)
}

/// Word-metric distance between the elements named by two words.
pub type Distance = dyn Fn(&[usize], &[usize]) -> Result<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FellowTravel {
    Holds { pairs_checked: usize },
    /// Prefixes of length `j` of `u` and `v` are farther apart than `k`.
    Counterexample { u: Vec<usize>, v: Vec<usize>, j: usize },
}

/// Checks that normal forms of length at most `len_max` whose endpoints
/// are at distance at most 1 stay within `k` of each other at every
/// time. `dist(g, h)` is the word-metric distance between the elements
/// named by two words.
pub fn fellow_travel_check(
    s: &AutomaticStructure,
    k: u64,
    len_max: usize,
    dist: &Distance,
) -> Result<FellowTravel> {
    let words = s.language.enumerate(MAIN, len_max)?;
    let mut checked = 0;
    for u in &words {
        for v in &words {
            if dist(u, v)? > 1 {
                continue;
            }
            checked += 1;
            for j in 1..u.len().max(v.len()) {
                let (pu, pv) = (&u[..j.min(u.len())], &v[..j.min(v.len())]);
                if dist(pu, pv)? > k {
                    return Ok(FellowTravel::Counterexample { u: u.clone(), v: v.clone(), j });
                }
            }
        }
    }
    Ok(FellowTravel::Holds { pairs_checked: checked })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_forms_in_z2() {
        let s = z2_structure();
        let w = s.read_word("x y x").unwrap();
        assert_eq!(s.write_word(&s.normal_form(&w).unwrap()), "x x y");
        assert!(s.is_identity(&s.read_word("x y x^-1 y^-1").unwrap()).unwrap());
        assert!(!s.is_identity(&s.read_word("x y").unwrap()).unwrap());
        assert!(s.is_identity(&s.read_word("x^3 y^-2 x^-3 y^2").unwrap()).unwrap());
        assert_eq!(s.identity_normal_form().unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn multiplier_labels() {
        let s = z2_structure();
        let r = |t: &str| s.read_word(t).unwrap();
        assert!(s.multiplies(&r("x"), &[], "x").unwrap());
        assert!(s.multiplies(&r("x y"), &r("x y"), IDENTITY_LABEL).unwrap());
        assert!(!s.multiplies(&r("x y"), &r("y x"), IDENTITY_LABEL).unwrap());
        assert!(s.is_normal_form(&r("x x y^-1")).unwrap());
        assert!(!s.is_normal_form(&r("x x^-1")).unwrap());
    }

    #[test]
    fn fellow_travel_depends_on_k() {
        let s = z2_structure();
        let d = |u: &[usize], v: &[usize]| Ok(z2_distance(u, v));
        assert!(matches!(fellow_travel_check(&s, 2, 6, &d).unwrap(), FellowTravel::Holds { .. }));
        assert!(matches!(fellow_travel_check(&s, 1, 6, &d).unwrap(), FellowTravel::Counterexample { .. }));
        assert!(matches!(fellow_travel_check(&s, 12, 6, &d).unwrap(), FellowTravel::Holds { .. }));
    }
}
