//! Fundamental groups of closed orientable surfaces of genus `g ≥ 2`,
//! presented on `a1, b1, …, ag, bg` with the single relator
//! `[a1,b1]⋯[ag,bg]`.
//!
//! Letters are indexed `2i` for generator `i` and `2i + 1` for its
//! inverse, so `l ^ 1` inverts a letter and the index order is the
//! shortlex order.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::{GrowthTable, Truncation};
use crate::words::GroupWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceGroupPresentation {
    genus: usize,
    names: Vec<String>,
    relator: Vec<usize>,
    /// Cyclic permutations of the relator, then of its inverse.
    cyclic: Vec<Vec<usize>>,
}

pub fn inverse_word(w: &[usize]) -> Vec<usize> {
    w.iter().rev().map(|&l| l ^ 1).collect()
}

pub fn free_reduce(w: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&(l ^ 1)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl SurfaceGroupPresentation {
    pub fn new(genus: usize) -> Result<Self> {
        if genus < 2 {
            return Err(Error::InvalidArgument("surface groups need genus at least 2".into()));
        }
        let mut names = Vec::with_capacity(4 * genus);
        for i in 1..=genus {
            for g in [format!("a{i}"), format!("b{i}")] {
                names.push(format!("{g}^-1"));
                names.insert(names.len() - 1, g);
            }
        }
        let mut relator = Vec::with_capacity(4 * genus);
        for i in 0..genus {
            let (a, b) = (4 * i, 4 * i + 2);
            relator.extend([a ^ 1, b ^ 1, a, b]);
        }
        let mut cyclic = Vec::with_capacity(8 * genus);
        for r in [relator.clone(), inverse_word(&relator)] {
            for k in 0..r.len() {
                cyclic.push(r[k..].iter().chain(&r[..k]).copied().collect());
            }
        }
        Ok(SurfaceGroupPresentation { genus, names, relator, cyclic })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Letter names in index order.
    pub fn letters(&self) -> &[String] {
        &self.names
    }

    pub fn relator(&self) -> &[usize] {
        &self.relator
    }

    pub fn cyclic_relators(&self) -> &[Vec<usize>] {
        &self.cyclic
    }

    pub fn read_word(&self, text: &str) -> Result<Vec<usize>> {
        GroupWord::parse(text)?
            .atoms()
            .iter()
            .map(|a| {
                let i = self.names.iter().position(|n| *n == a.symbol).ok_or(Error::UnknownSymbol(a.symbol.clone()))?;
                if i % 2 == 1 {
                    return Err(Error::UnknownSymbol(a.symbol.clone()));
                }
                Ok(i + usize::from(a.inverse))
            })
            .collect()
    }

    pub fn write_word(&self, w: &[usize]) -> String {
        w.iter().map(|&l| self.names[l].as_str()).collect::<Vec<_>>().join(" ")
    }

    /// Exponent sums of the generators; unchanged by the relator.
    pub fn abelianize(&self, w: &[usize]) -> Vec<i32> {
        let mut v = vec![0; 2 * self.genus];
        for &l in w {
            v[l / 2] += if l % 2 == 0 { 1 } else { -1 };
        }
        v
    }
}

/// Dehn's algorithm. At the leftmost position where some cyclic relator
/// `v1 v2` shares a prefix `v1` of length at least `2g + 1`, the longest
/// such `v1` (first relator on ties) is replaced by `v2⁻¹`; repeat until
/// no position qualifies. Each replacement shortens the word.
pub fn dehn_reduce(p: &SurfaceGroupPresentation, w: &[usize]) -> Vec<usize> {
    let min_len = 2 * p.genus + 1;
    let mut w = free_reduce(w);
    'outer: loop {
        for i in 0..w.len() {
            let mut best: Option<(usize, usize)> = None;
            for (r, rel) in p.cyclic.iter().enumerate() {
                let len = w[i..].iter().zip(rel).take_while(|(a, b)| a == b).count();
                if len >= min_len && best.is_none_or(|(l, _)| len > l) {
                    best = Some((len, r));
                }
            }
            if let Some((len, r)) = best {
                let replacement = inverse_word(&p.cyclic[r][len..]);
                let mut next = w[..i].to_vec();
                next.extend(replacement);
                next.extend_from_slice(&w[i + len..]);
                w = free_reduce(&next);
                continue 'outer;
            }
        }
        return w;
    }
}

pub fn surface_equal(p: &SurfaceGroupPresentation, u: &[usize], v: &[usize]) -> bool {
    let mut w = u.to_vec();
    w.extend(inverse_word(v));
    dehn_reduce(p, &w).is_empty()
}

/// Leading coefficients of the growth series, from the rational closed
/// form with numerator `1 + 2z + ⋯ + 2z^(2g-1) + z^(2g)` and denominator
/// `1 + (2-4g)z + ⋯ + (2-4g)z^(2g-1) + z^(2g)`.
pub fn cannon_series(genus: usize, terms: usize) -> Result<Vec<i128>> {
    if genus < 2 {
        return Err(Error::InvalidArgument("surface groups need genus at least 2".into()));
    }
    let d = 2 * genus;
    let middle = 2 - 4 * genus as i128;
    let num = |k: usize| -> i128 {
        match k {
            0 => 1,
            k if k < d => 2,
            k if k == d => 1,
            _ => 0,
        }
    };
    let den = |k: usize| -> i128 { if k == d { 1 } else { middle } };
    let mut c: Vec<i128> = Vec::with_capacity(terms + 1);
    for n in 0..=terms {
        let mut x = num(n);
        for k in 1..=n.min(d) {
            let t = den(k).checked_mul(c[n - k]).ok_or(Error::Overflow("growth series"))?;
            x = x.checked_sub(t).ok_or(Error::Overflow("growth series"))?;
        }
        c.push(x);
    }
    Ok(c)
}

/// Elements of a ball, stored as reduced words and bucketed by their
/// abelianization for equality tests.
#[derive(Clone, Debug)]
pub struct SurfaceBall {
    presentation: SurfaceGroupPresentation,
    /// `spheres[k]` holds representatives at distance exactly `k`.
    spheres: Vec<Vec<Vec<usize>>>,
    buckets: HashMap<Vec<i32>, Vec<(usize, usize)>>,
    truncated: Option<Truncation>,
}

pub const DEFAULT_SURFACE_CAP: usize = 200_000;

impl SurfaceBall {
    pub fn new(p: &SurfaceGroupPresentation, radius: usize, cap: usize) -> Self {
        let mut ball = SurfaceBall {
            presentation: p.clone(),
            spheres: vec![vec![Vec::new()]],
            buckets: HashMap::from([(p.abelianize(&[]), vec![(0, 0)])]),
            truncated: None,
        };
        let mut count = 1;
        for r in 1..=radius {
            let mut next: Vec<Vec<usize>> = Vec::new();
            for w in &ball.spheres[r - 1] {
                for l in 0..4 * p.genus {
                    let mut cand = w.clone();
                    cand.push(l);
                    let cand = dehn_reduce(p, &cand);
                    let key = p.abelianize(&cand);
                    let known = ball.buckets.get(&key).is_some_and(|list| {
                        list.iter().any(|&(s, i)| {
                            let other = if s < r { &ball.spheres[s][i] } else { &next[i] };
                            surface_equal(p, &cand, other)
                        })
                    });
                    if known {
                        continue;
                    }
                    if count >= cap {
                        ball.truncated =
                            Some(Truncation { requested_radius: radius, cap, reason: "element count".into() });
                        return ball;
                    }
                    ball.buckets.entry(key).or_default().push((r, next.len()));
                    next.push(cand);
                    count += 1;
                }
            }
            ball.spheres.push(next);
        }
        ball
    }

    pub fn radius(&self) -> usize {
        self.spheres.len() - 1
    }

    pub fn len(&self) -> usize {
        self.spheres.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn spheres(&self) -> &[Vec<Vec<usize>>] {
        &self.spheres
    }

    pub fn growth_table(&self) -> GrowthTable {
        GrowthTable::from_spheres(self.spheres.iter().map(|s| s.len() as u64).collect(), self.truncated.clone())
    }

    /// Word length of the element `w`, if it lies in the ball.
    pub fn length_of(&self, w: &[usize]) -> Option<usize> {
        let w = dehn_reduce(&self.presentation, w);
        let list = self.buckets.get(&self.presentation.abelianize(&w))?;
        list.iter()
            .find(|&&(s, i)| surface_equal(&self.presentation, &w, &self.spheres[s][i]))
            .map(|&(s, _)| s)
    }

    /// Distance between the elements named by `u` and `v`.
    pub fn distance(&self, u: &[usize], v: &[usize]) -> Result<u64> {
        let mut w = inverse_word(u);
        w.extend_from_slice(v);
        self.length_of(&w)
            .map(|d| d as u64)
            .ok_or_else(|| Error::Oracle(format!("distance exceeds the ball radius {}", self.radius())))
    }
}

/// Sphere sizes by breadth-first search with Dehn equality.
pub fn surface_growth_bfs(genus: usize, radius: usize) -> Result<GrowthTable> {
    let p = SurfaceGroupPresentation::new(genus)?;
    Ok(SurfaceBall::new(&p, radius, DEFAULT_SURFACE_CAP).growth_table())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_shape() {
        let p = SurfaceGroupPresentation::new(2).unwrap();
        assert_eq!(p.relator().len(), 8);
        assert_eq!(p.cyclic_relators().len(), 16);
        assert_eq!(p.write_word(p.relator()), "a1^-1 b1^-1 a1 b1 a2^-1 b2^-1 a2 b2");
        assert_eq!(p.letters()[..4], ["a1", "a1^-1", "b1", "b1^-1"]);
        assert!(SurfaceGroupPresentation::new(1).is_err());
    }

    #[test]
    fn dehn_examples() {
        let p = SurfaceGroupPresentation::new(2).unwrap();
        assert!(dehn_reduce(&p, p.relator()).is_empty());
        assert!(dehn_reduce(&p, &p.read_word("a1 a1^-1").unwrap()).is_empty());
        let ab = p.read_word("a1 b1").unwrap();
        assert_eq!(dehn_reduce(&p, &ab), ab);
        assert!(surface_equal(&p, p.relator(), &[]));
        assert!(!surface_equal(&p, &p.read_word("a1").unwrap(), &p.read_word("b1").unwrap()));
    }

    #[test]
    fn series_coefficients() {
        assert_eq!(cannon_series(2, 4).unwrap(), vec![1, 8, 56, 392, 2736]);
        assert_eq!(cannon_series(3, 1).unwrap(), vec![1, 12]);
        assert!(cannon_series(1, 3).is_err());
    }

    #[test]
    fn small_balls() {
        assert_eq!(surface_growth_bfs(2, 0).unwrap().spheres, vec![1]);
        assert_eq!(surface_growth_bfs(2, 1).unwrap().spheres, vec![1, 8]);
        let p = SurfaceGroupPresentation::new(2).unwrap();
        let ball = SurfaceBall::new(&p, 2, DEFAULT_SURFACE_CAP);
        let a = p.read_word("a1").unwrap();
        let b = p.read_word("b1").unwrap();
        assert_eq!(ball.distance(&a, &b).unwrap(), 2);
        assert_eq!(ball.distance(&a, &a).unwrap(), 0);
    }
}
