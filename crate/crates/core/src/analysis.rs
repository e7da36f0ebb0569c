//! Activity growth, nuclei, and orbits of the dual group on state words.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::action::{Evaluator, SectionSearch};
use crate::error::{Error, Result};
use crate::graphutil::scc;
use crate::mealy::{recurrent, CanonicalMachine, MealyMachine, StateId};
use crate::words::{Atom, GroupWord};

/// Growth class of the number of length-`n` paths that avoid trivial states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ActivityClass {
    Polynomial(usize),
    Exponential,
}

impl ActivityClass {
    pub fn is_bounded(self) -> bool {
        self == ActivityClass::Polynomial(0)
    }
}

impl fmt::Display for ActivityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActivityClass::Polynomial(0) => f.write_str("bounded (polynomial degree 0)"),
            ActivityClass::Polynomial(d) => write!(f, "polynomial degree {d}"),
            ActivityClass::Exponential => f.write_str("exponential"),
        }
    }
}

/// Digraph on the non-trivial states, one edge per transition.
fn nontrivial_graph(m: &MealyMachine) -> (Vec<StateId>, Vec<Vec<usize>>) {
    let trivial = m.identity_states();
    let nodes: Vec<StateId> = (0..m.num_states()).filter(|&q| !trivial[q]).collect();
    let mut index = vec![usize::MAX; m.num_states()];
    for (i, &q) in nodes.iter().enumerate() {
        index[q] = i;
    }
    let succ = nodes
        .iter()
        .map(|&q| {
            (0..m.degree())
                .map(|a| m.next(q, a))
                .filter(|&r| !trivial[r])
                .map(|r| index[r])
                .collect()
        })
        .collect();
    (nodes, succ)
}

/// Exponential iff some strongly connected component of the non-trivial
/// states has more edges than vertices; otherwise the degree is one less
/// than the longest chain of cycles.
pub fn activity_degree(m: &MealyMachine) -> ActivityClass {
    let (nodes, succ) = nontrivial_graph(m);
    let comp = scc(&succ);
    let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
    let mut verts = vec![0usize; ncomp];
    let mut edges = vec![0usize; ncomp];
    for v in 0..nodes.len() {
        verts[comp[v]] += 1;
        edges[comp[v]] += succ[v].iter().filter(|&&w| comp[w] == comp[v]).count();
    }
    if (0..ncomp).any(|c| edges[c] > verts[c]) {
        return ActivityClass::Exponential;
    }
    let cyclic: Vec<bool> = (0..ncomp).map(|c| edges[c] == verts[c]).collect();
    // component ids are in reverse topological order, so successors come first
    let mut chain = vec![0usize; ncomp];
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for v in 0..nodes.len() {
        members[comp[v]].push(v);
    }
    for c in 0..ncomp {
        let best = members[c]
            .iter()
            .flat_map(|&v| succ[v].iter())
            .filter(|&&w| comp[w] != c)
            .map(|&w| chain[comp[w]])
            .max()
            .unwrap_or(0);
        chain[c] = best + usize::from(cyclic[c]);
    }
    let longest = chain.into_iter().max().unwrap_or(0);
    ActivityClass::Polynomial(longest.saturating_sub(1))
}

/// Number of paths with `n` edges that start at any non-trivial state and
/// never visit a trivial one, for `n = 0..=n_max`.
pub fn path_counts(m: &MealyMachine, n_max: usize) -> Vec<u128> {
    let (nodes, succ) = nontrivial_graph(m);
    // ends[v] = number of paths of the current length ending at v
    let mut ends = vec![1u128; nodes.len()];
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        out.push(ends.iter().sum());
        if n == n_max {
            break;
        }
        let mut next = vec![0u128; nodes.len()];
        for (v, out_edges) in succ.iter().enumerate() {
            for &w in out_edges {
                next[w] = next[w].saturating_add(ends[v]);
            }
        }
        ends = next;
    }
    out
}

/// A finite set of group elements through which all long sections pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nucleus {
    /// Sorted canonical forms.
    pub elements: Vec<CanonicalMachine>,
    /// A short word for each element, when one was found.
    pub names: Vec<Option<GroupWord>>,
    pub generators: Vec<String>,
}

impl Nucleus {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &CanonicalMachine) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn name(&self, i: usize) -> String {
        match &self.names[i] {
            Some(w) if w.is_empty() => "1".into(),
            Some(w) => w.to_string(),
            None => format!("<{} states>", self.elements[i].num_states()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NucleusResult {
    Contracting(Nucleus),
    NotContractingUpTo(usize),
}

/// Default bound on the nucleus size.
pub const DEFAULT_NUCLEUS_CAP: usize = 10_000;

fn recurrent_sections(g: &CanonicalMachine) -> Vec<CanonicalMachine> {
    g.recurrent_states().into_iter().map(|s| g.section(s)).collect()
}

/// Closes the recurrent states of `M ⊔ M⁻¹` under taking recurrent
/// sections of pairwise products. Aborts once the set exceeds `cap`.
pub fn nucleus(m: &MealyMachine, cap: usize) -> Result<NucleusResult> {
    if cap == 0 {
        return Err(Error::InvalidArgument("nucleus cap must be at least 1".into()));
    }
    let (signed, _) = m.with_inverses()?;
    let degree = m.degree();
    let succ: Vec<Vec<usize>> =
        (0..signed.num_states()).map(|q| (0..degree).map(|a| signed.next(q, a)).collect()).collect();
    let mut set: BTreeSet<CanonicalMachine> =
        recurrent(&succ).into_iter().map(|q| signed.canonical(q)).collect();
    set.insert(CanonicalMachine::identity(degree));
    if set.len() > cap {
        return Ok(NucleusResult::NotContractingUpTo(cap));
    }
    let product_cap = crate::action::DEFAULT_STATE_CAP;
    let mut all: Vec<CanonicalMachine> = set.iter().cloned().collect();
    let mut fresh_from = 0;
    while fresh_from < all.len() {
        let fresh_end = all.len();
        let mut found: Vec<CanonicalMachine> = Vec::new();
        for i in 0..fresh_end {
            for j in 0..fresh_end {
                if i < fresh_from && j < fresh_from {
                    continue;
                }
                let p = match all[i].then_capped(&all[j], product_cap) {
                    Ok(p) => p,
                    Err(Error::CapExceeded { .. }) => return Ok(NucleusResult::NotContractingUpTo(cap)),
                    Err(e) => return Err(e),
                };
                for s in recurrent_sections(&p) {
                    if !set.contains(&s) {
                        set.insert(s.clone());
                        found.push(s);
                        if set.len() > cap {
                            return Ok(NucleusResult::NotContractingUpTo(cap));
                        }
                    }
                }
            }
        }
        fresh_from = fresh_end;
        all.extend(found);
    }
    let elements: Vec<CanonicalMachine> = set.into_iter().collect();
    let names = name_elements(m, &elements, 4)?;
    let generators = m
        .states()
        .iter()
        .enumerate()
        .filter(|&(q, _)| Some(q) != m.identity_state())
        .map(|(_, s)| s.clone())
        .collect();
    Ok(NucleusResult::Contracting(Nucleus { elements, names, generators }))
}

/// Shortlex-first words of length at most `max_len` over the non-trivial
/// states and their inverses that evaluate to each target.
pub fn name_elements(
    m: &MealyMachine,
    targets: &[CanonicalMachine],
    max_len: usize,
) -> Result<Vec<Option<GroupWord>>> {
    let ev = Evaluator::new(m);
    let trivial = m.identity_states();
    let mut letters: Vec<Atom> = Vec::new();
    for (q, name) in m.states().iter().enumerate() {
        if !trivial[q] {
            letters.push(Atom::new(name.clone(), false));
            if m.is_invertible() {
                letters.push(Atom::new(name.clone(), true));
            }
        }
    }
    let mut want: HashMap<&CanonicalMachine, usize> = targets.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut names: Vec<Option<GroupWord>> = vec![None; targets.len()];
    let mut layer: Vec<(Vec<Atom>, CanonicalMachine)> =
        vec![(Vec::new(), CanonicalMachine::identity(m.degree()))];
    let mut seen: BTreeSet<CanonicalMachine> = BTreeSet::new();
    seen.insert(CanonicalMachine::identity(m.degree()));
    for len in 0..=max_len {
        for (w, g) in &layer {
            if let Some(i) = want.remove(g) {
                names[i] = Some(GroupWord::new(w.clone()));
            }
        }
        if want.is_empty() || len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (w, g) in &layer {
            for a in &letters {
                if w.last().is_some_and(|b: &Atom| b.cancels(a)) {
                    continue;
                }
                let h = ev.compose(g, &ev.atom(a)?)?;
                if seen.insert(h.clone()) {
                    let mut w2 = w.clone();
                    w2.push(a.clone());
                    next.push((w2, h));
                }
            }
        }
        layer = next;
    }
    Ok(names)
}

/// True iff the recurrent states of `M × M` have exactly the behaviors of
/// the states of `M`, and (for invertible `M`) that set is closed under
/// inverses.
pub fn is_nuclear(m: &MealyMachine) -> Result<bool> {
    let own: BTreeSet<CanonicalMachine> = m.canonical_states().into_iter().collect();
    let sq = m.product(m)?;
    let succ: Vec<Vec<usize>> =
        (0..sq.num_states()).map(|q| (0..sq.degree()).map(|a| sq.next(q, a)).collect()).collect();
    let rec: BTreeSet<CanonicalMachine> = recurrent(&succ).into_iter().map(|q| sq.canonical(q)).collect();
    if rec != own {
        return Ok(false);
    }
    if m.is_invertible() {
        for g in &own {
            if !own.contains(&g.inverse()?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub type WordPredicate = dyn Fn(&[StateId]) -> bool + Sync;

/// Which state words are considered.
pub enum Language {
    /// Every word over `Q`.
    All,
    /// Words over `Q` with no letter repeated consecutively.
    AdjacentDistinct,
    /// Words over `Q ⊔ Q⁻¹` with no cancelling neighbours.
    FreelyReduced,
    /// Words over `Q` accepted by the predicate.
    Custom(Box<WordPredicate>),
}

impl fmt::Debug for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Language::All => "All",
            Language::AdjacentDistinct => "AdjacentDistinct",
            Language::FreelyReduced => "FreelyReduced",
            Language::Custom(_) => "Custom",
        })
    }
}

/// State words of one length together with the dual action on them.
pub struct WordSpace {
    search: SectionSearch,
    /// Machine whose states index the words.
    alphabet_machine: MealyMachine,
    signed: bool,
    inverse_of: Vec<StateId>,
}

impl WordSpace {
    pub fn new(m: &MealyMachine, lang: &Language) -> Result<Self> {
        let signed = matches!(lang, Language::FreelyReduced);
        let (alphabet_machine, inverse_of) = if signed {
            m.with_inverses()?
        } else {
            (m.clone(), (0..m.num_states()).collect())
        };
        if !alphabet_machine.is_reversible() {
            return Err(Error::NotReversible);
        }
        let search = SectionSearch::new(m)?;
        Ok(WordSpace { search, alphabet_machine, signed, inverse_of })
    }

    pub fn machine(&self) -> &MealyMachine {
        &self.alphabet_machine
    }

    /// Image of a word under the dual state (letter) `x`.
    pub fn act(&self, x: usize, word: &[StateId]) -> Vec<StateId> {
        let mut cur = x;
        word.iter()
            .map(|&q| {
                let t = self.alphabet_machine.transition(q, cur);
                cur = t.output;
                t.next
            })
            .collect()
    }

    pub fn render(&self, word: &[StateId]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter().map(|&q| self.alphabet_machine.states()[q].as_str()).collect::<Vec<_>>().join(" ")
    }

    /// Words of length `n` in the language, in lexicographic index order.
    pub fn words(&self, lang: &Language, n: usize) -> Vec<Vec<StateId>> {
        let k = self.alphabet_machine.num_states();
        let mut out = Vec::new();
        let mut w = Vec::with_capacity(n);
        self.extend(lang, n, k, &mut w, &mut out);
        out
    }

    fn extend(&self, lang: &Language, n: usize, k: usize, w: &mut Vec<StateId>, out: &mut Vec<Vec<StateId>>) {
        if w.len() == n {
            if let Language::Custom(p) = lang {
                if !p(w) {
                    return;
                }
            }
            out.push(w.clone());
            return;
        }
        for q in 0..k {
            let ok = match (lang, w.last()) {
                (Language::AdjacentDistinct, Some(&p)) => p != q,
                (Language::FreelyReduced, Some(&p)) => self.inverse_of[p] != q,
                _ => true,
            };
            if ok {
                w.push(q);
                self.extend(lang, n, k, w, out);
                w.pop();
            }
        }
    }

    /// Whether the word, read in the original machine, is the identity.
    pub fn is_trivial(&self, word: &[StateId]) -> Result<bool> {
        // signed indices coincide with those of the search's machine
        let resolved: Vec<StateId> = if self.signed {
            word.to_vec()
        } else {
            word.iter().map(|&q| self.search.signed_state(q, false)).collect()
        };
        if !self.search.root_is_trivial(&resolved) {
            return Ok(false);
        }
        self.search.is_trivial(&resolved)
    }
}

/// Orbits of the dual group on `L ∩ Qⁿ`, each sorted, ordered by their
/// least word. Fails if `L` is not invariant.
pub fn language_orbits(m: &MealyMachine, lang: &Language, n: usize) -> Result<Vec<Vec<Vec<StateId>>>> {
    let space = WordSpace::new(m, lang)?;
    orbits_in(&space, lang, n)
}

fn orbits_in(space: &WordSpace, lang: &Language, n: usize) -> Result<Vec<Vec<Vec<StateId>>>> {
    let words = space.words(lang, n);
    let index: HashMap<&[StateId], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let mut parent: Vec<usize> = (0..words.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, w) in words.iter().enumerate() {
        for x in 0..space.machine().degree() {
            let img = space.act(x, w);
            let Some(&j) = index.get(img.as_slice()) else {
                return Err(Error::NotInvariant { word: space.render(w), image: space.render(&img) });
            };
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Vec<StateId>>> = BTreeMap::new();
    for (i, w) in words.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(w.clone());
    }
    Ok(groups.into_values().collect())
}

/// Orbits of the dual group on all of `Qⁿ`.
pub fn dual_orbits(m: &MealyMachine, n: usize) -> Result<Vec<Vec<Vec<StateId>>>> {
    language_orbits(m, &Language::All, n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Every orbit has a nontrivial word; distinct words of the language
    /// at this length are distinct group elements.
    Certified { orbits: usize, words: usize },
    /// This orbit consists of trivial words only.
    Failed { orbit: Vec<String> },
}

/// Checks that every dual orbit of `L ∩ Qⁿ` contains a word that is not
/// the identity.
pub fn injectivity_certificate(m: &MealyMachine, lang: &Language, n: usize) -> Result<Certificate> {
    if !m.classify().bireversible {
        return Err(Error::NotReversible);
    }
    let space = WordSpace::new(m, lang)?;
    let orbits = orbits_in(&space, lang, n)?;
    let mut total = 0;
    for orbit in &orbits {
        total += orbit.len();
        let mut witnessed = false;
        for w in orbit {
            if !space.is_trivial(w)? {
                witnessed = true;
                break;
            }
        }
        if !witnessed {
            return Ok(Certificate::Failed { orbit: orbit.iter().map(|w| space.render(w)).collect() });
        }
    }
    Ok(Certificate::Certified { orbits: orbits.len(), words: total })
}

/// First freely reduced word of length `1..=max_len` over the chosen
/// states (and inverses) that is the identity, if any. Words are visited
/// depth first; the root permutation is tracked along the way so only
/// words fixing the first level reach the section search.
pub fn first_relation(m: &MealyMachine, generators: &[StateId], max_len: usize) -> Result<Option<GroupWord>> {
    let search = SectionSearch::new(m)?;
    let mut letters: Vec<(StateId, bool)> = Vec::new();
    for &q in generators {
        letters.push((q, false));
        letters.push((q, true));
    }
    let signed: Vec<StateId> = letters.iter().map(|&(q, i)| search.signed_state(q, i)).collect();
    let machine = search.signed_machine().clone();
    let k = machine.degree();
    let mut word: Vec<usize> = Vec::with_capacity(max_len);
    // perms[d][x] = image of x under the first d letters
    let mut perms: Vec<Vec<usize>> = vec![(0..k).collect()];
    let mut found = None;
    dfs_relations(&search, &machine, &signed, &letters, max_len, &mut word, &mut perms, &mut found)?;
    Ok(found.map(|w: Vec<usize>| {
        GroupWord::new(w.iter().map(|&i| Atom::new(m.states()[letters[i].0].clone(), letters[i].1)).collect())
    }))
}

#[allow(clippy::too_many_arguments)]
fn dfs_relations(
    search: &SectionSearch,
    machine: &MealyMachine,
    signed: &[StateId],
    letters: &[(StateId, bool)],
    max_len: usize,
    word: &mut Vec<usize>,
    perms: &mut Vec<Vec<usize>>,
    found: &mut Option<Vec<usize>>,
) -> Result<()> {
    if found.is_some() || word.len() == max_len {
        return Ok(());
    }
    for i in 0..letters.len() {
        if let Some(&last) = word.last() {
            // i ^ 1 is the inverse of i
            if last == (i ^ 1) {
                continue;
            }
        }
        let q = signed[i];
        let top = perms.last().expect("nonempty");
        let next: Vec<usize> = top.iter().map(|&c| machine.output(q, c)).collect();
        word.push(i);
        let fixes = next.iter().enumerate().all(|(x, &y)| x == y);
        if fixes {
            let w: Vec<StateId> = word.iter().map(|&j| signed[j]).collect();
            if search.is_trivial(&w)? {
                *found = Some(word.clone());
                return Ok(());
            }
        }
        perms.push(next);
        dfs_relations(search, machine, signed, letters, max_len, word, perms, found)?;
        perms.pop();
        word.pop();
        if found.is_some() {
            return Ok(());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn activity_of_small_machines() {
        assert_eq!(activity_degree(&zoo::adding()), ActivityClass::Polynomial(0));
        assert_eq!(activity_degree(&zoo::grigorchuk()), ActivityClass::Polynomial(0));
        assert_eq!(activity_degree(&zoo::lamplighter()), ActivityClass::Exponential);
        assert_eq!(path_counts(&zoo::adding(), 4), vec![1, 1, 1, 1, 1]);
        assert_eq!(path_counts(&zoo::lamplighter(), 3), vec![2, 4, 8, 16]);
    }

    #[test]
    fn chained_cycles_give_higher_degree() {
        // x loops and moves to y; y loops and moves to the identity
        let names = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let m = MealyMachine::new(
            names(&["0", "1"]),
            names(&["x", "y", "1"]),
            vec![vec![(1, 0), (0, 1)], vec![(1, 1), (0, 2)], vec![(0, 2), (1, 2)]],
            Some(2),
        )
        .unwrap();
        assert_eq!(activity_degree(&m), ActivityClass::Polynomial(1));
        let c = path_counts(&m, 6);
        assert_eq!(c, vec![2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn adding_nucleus() {
        let NucleusResult::Contracting(n) = nucleus(&zoo::adding(), 100).unwrap() else {
            panic!("adding machine is contracting");
        };
        assert_eq!(n.len(), 3);
        let mut names: Vec<String> = (0..n.len()).map(|i| n.name(i)).collect();
        names.sort();
        assert_eq!(names, vec!["1", "t", "t^-1"]);
    }

    #[test]
    fn nuclear_machines() {
        assert!(is_nuclear(&zoo::grigorchuk()).unwrap());
        assert!(is_nuclear(&zoo::gupta_sidki()).unwrap());
        assert!(!is_nuclear(&zoo::lamplighter()).unwrap());
    }

    #[test]
    fn trivial_orbit_fails_certificate() {
        let m = zoo::e1();
        let ev = Evaluator::new(&m);
        let names: Vec<String> = m.states().to_vec();
        let lang = Language::Custom(Box::new(move |w: &[StateId]| {
            let gw = GroupWord::new(w.iter().map(|&q| Atom::new(names[q].clone(), false)).collect());
            ev.is_identity(&gw).unwrap()
        }));
        assert!(matches!(injectivity_certificate(&m, &lang, 2).unwrap(), Certificate::Failed { .. }));
    }

    #[test]
    fn first_relation_finds_involutions() {
        let m = zoo::grigorchuk();
        let w = first_relation(&m, &[0], 4).unwrap().unwrap();
        assert_eq!(w.to_string(), "a a");
        let f = zoo::f1();
        assert_eq!(first_relation(&f, &[0, 1, 2], 4).unwrap(), None);
    }
}
