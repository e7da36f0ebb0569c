//! Level actions, Schreier graphs, ball growth, and the four-point
//! hyperbolicity defect of finite graphs.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::action::Evaluator;
use crate::error::{Error, Result};
use crate::format::dot_id;
use crate::mealy::{CanonicalMachine, Letter, MealyMachine};
use crate::words::GroupWord;

/// Action of a list of group elements on the words of one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierGraph {
    pub level: usize,
    pub alphabet: Vec<String>,
    pub generators: Vec<String>,
    /// `edges[v][i]` is the image of vertex `v` under generator `i`.
    pub edges: Vec<Vec<usize>>,
}

/// Index of a word over `k` letters, first letter most significant.
pub fn word_index(word: &[Letter], k: usize) -> usize {
    word.iter().fold(0, |acc, &a| acc * k + a)
}

pub fn index_word(mut i: usize, k: usize, n: usize) -> Vec<Letter> {
    let mut w = vec![0; n];
    for slot in w.iter_mut().rev() {
        *slot = i % k;
        i /= k;
    }
    w
}

impl SchreierGraph {
    pub fn num_vertices(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> String {
        let w = index_word(v, self.alphabet.len(), self.level);
        if w.is_empty() {
            return "ε".into();
        }
        let sep = if self.alphabet.iter().all(|a| a.chars().count() == 1) { "" } else { " " };
        w.iter().map(|&a| self.alphabet[a].as_str()).collect::<Vec<_>>().join(sep)
    }

    /// Symmetric adjacency lists without self-loops or repeats.
    pub fn undirected(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, out) in self.edges.iter().enumerate() {
            for &w in out {
                if v != w {
                    adj[v].push(w);
                    adj[w].push(v);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        is_connected(&self.undirected())
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {} {{", dot_id(&format!("schreier-{}", self.level)));
        for v in 0..self.num_vertices() {
            let _ = writeln!(s, "  {};", dot_id(&self.vertex_name(v)));
        }
        for (v, out) in self.edges.iter().enumerate() {
            for (i, &w) in out.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  {} -> {} [label={}];",
                    dot_id(&self.vertex_name(v)),
                    dot_id(&self.vertex_name(w)),
                    dot_id(&self.generators[i])
                );
            }
        }
        s.push_str("}\n");
        s
    }
}

fn evaluate_all(m: &MealyMachine, gens: &[GroupWord]) -> Result<Vec<CanonicalMachine>> {
    let ev = Evaluator::new(m);
    gens.iter().map(|g| ev.evaluate(g)).collect()
}

pub fn schreier_graph(m: &MealyMachine, gens: &[GroupWord], n: usize) -> Result<SchreierGraph> {
    let k = m.degree();
    let size = k
        .checked_pow(n as u32)
        .filter(|&s| s <= 1 << 24)
        .ok_or(Error::CapExceeded { what: "level size", cap: 1 << 24 })?;
    let elems = evaluate_all(m, gens)?;
    let edges = (0..size)
        .map(|v| {
            let w = index_word(v, k, n);
            elems.iter().map(|g| word_index(&g.apply(&w), k)).collect()
        })
        .collect();
    Ok(SchreierGraph {
        level: n,
        alphabet: m.alphabet().to_vec(),
        generators: gens.iter().map(|g| if g.is_empty() { "1".into() } else { g.to_string() }).collect(),
        edges,
    })
}

pub fn is_level_transitive(m: &MealyMachine, gens: &[GroupWord], n: usize) -> Result<bool> {
    Ok(schreier_graph(m, gens, n)?.is_connected())
}

fn is_connected(adj: &[Vec<usize>]) -> bool {
    if adj.is_empty() {
        return true;
    }
    bfs_distances(adj, 0).iter().all(|d| d.is_some())
}

fn bfs_distances(adj: &[Vec<usize>], src: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; adj.len()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("visited");
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Sphere and ball sizes up to some radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthTable {
    pub spheres: Vec<u64>,
    pub balls: Vec<u64>,
    /// Set when enumeration stopped early; the table then covers only the
    /// radii it lists.
    pub truncated: Option<Truncation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub requested_radius: usize,
    pub cap: usize,
    pub reason: String,
}

impl GrowthTable {
    pub fn from_spheres(spheres: Vec<u64>, truncated: Option<Truncation>) -> Self {
        let balls = spheres
            .iter()
            .scan(0u64, |acc, &s| {
                *acc += s;
                Some(*acc)
            })
            .collect();
        GrowthTable { spheres, balls, truncated }
    }

    pub fn radius(&self) -> usize {
        self.spheres.len().saturating_sub(1)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("radius,sphere,ball\n");
        for (r, (sp, b)) in self.spheres.iter().zip(&self.balls).enumerate() {
            let _ = writeln!(s, "{r},{sp},{b}");
        }
        s
    }
}

pub const DEFAULT_GROWTH_RADIUS_CAP: usize = 12;
pub const DEFAULT_GROWTH_ELEMENT_CAP: usize = 2_000_000;

/// Ball enumeration with the defaults for element count.
pub fn growth(m: &MealyMachine, gens: &[GroupWord], radius: usize) -> Result<GrowthTable> {
    growth_capped(m, gens, radius, DEFAULT_GROWTH_ELEMENT_CAP)
}

/// Breadth-first search over group elements keyed by canonical form. The
/// generating set is the given elements and their inverses, deduplicated,
/// with the identity dropped.
pub fn growth_capped(m: &MealyMachine, gens: &[GroupWord], radius: usize, cap: usize) -> Result<GrowthTable> {
    let ev = Evaluator::new(m);
    let mut set: Vec<CanonicalMachine> = Vec::new();
    for g in evaluate_all(m, gens)? {
        for h in [g.inverse()?, g] {
            if !h.is_identity() && !set.contains(&h) {
                set.push(h);
            }
        }
    }
    set.sort();
    let id = CanonicalMachine::identity(m.degree());
    let mut seen: HashSet<CanonicalMachine> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    let mut spheres = vec![1u64];
    for r in 1..=radius {
        let mut next = Vec::new();
        for g in &frontier {
            for s in &set {
                let h = match ev.compose(g, s) {
                    Ok(h) => h,
                    Err(Error::CapExceeded { cap, .. }) => {
                        let t = Truncation { requested_radius: radius, cap, reason: "element state count".into() };
                        return Ok(GrowthTable::from_spheres(spheres, Some(t)));
                    }
                    Err(e) => return Err(e),
                };
                if !seen.contains(&h) {
                    if seen.len() >= cap {
                        let t = Truncation { requested_radius: radius, cap, reason: "element count".into() };
                        return Ok(GrowthTable::from_spheres(spheres, Some(t)));
                    }
                    seen.insert(h.clone());
                    next.push(h);
                }
            }
        }
        spheres.push(next.len() as u64);
        frontier = next;
        if frontier.is_empty() {
            spheres.extend(std::iter::repeat_n(0, radius - r));
            break;
        }
    }
    Ok(GrowthTable::from_spheres(spheres, None))
}

/// Largest gap between the two biggest of the three pair-sums, over all
/// vertex quadruples with repetition. Zero exactly for graphs whose
/// metric is tree-like.
pub fn four_point_delta(adj: &[Vec<usize>]) -> Result<u32> {
    let n = adj.len();
    if n == 0 {
        return Ok(0);
    }
    let mut dist = vec![0u32; n * n];
    for s in 0..n {
        for (t, d) in bfs_distances(adj, s).into_iter().enumerate() {
            dist[s * n + t] = d.ok_or(Error::Disconnected)?;
        }
    }
    let d = |x: usize, y: usize| dist[x * n + y];
    let mut best = 0;
    for a in 0..n {
        for b in a..n {
            let ab = d(a, b);
            for c in b..n {
                let (ac, bc) = (d(a, c), d(b, c));
                for e in c..n {
                    let mut sums = [ab + d(c, e), ac + d(b, e), d(a, e) + bc];
                    sums.sort_unstable();
                    best = best.max(sums[2] - sums[1]);
                }
            }
        }
    }
    Ok(best)
}

/// Adjacency lists of the cycle on `n` vertices.
pub fn cycle_graph(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect()
}

/// Adjacency lists of the `w × h` grid.
pub fn grid_graph(w: usize, h: usize) -> Vec<Vec<usize>> {
    let id = |x: usize, y: usize| y * w + x;
    let mut adj = vec![Vec::new(); w * h];
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                adj[id(x, y)].push(id(x + 1, y));
                adj[id(x + 1, y)].push(id(x, y));
            }
            if y + 1 < h {
                adj[id(x, y)].push(id(x, y + 1));
                adj[id(x, y + 1)].push(id(x, y));
            }
        }
    }
    adj
}
