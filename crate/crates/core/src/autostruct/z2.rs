//! The free abelian group on `x, y` with normal forms `x^a y^b`.

use std::collections::{BTreeMap, HashMap};

use super::{AutomaticStructure, IDENTITY_LABEL};
use crate::fsa::{pair_alphabet, parse_acceptor, Acceptor, PaddedPairLetter};

const LANGUAGE: &str = include_str!("../../data/z2-language.fsa");
const MULTIPLIER: &str = include_str!("../../data/z2-multiplier.fsa");

/// Generator order `x, x^-1, y, y^-1`.
pub fn z2_generators() -> Vec<String> {
    ["x", "x^-1", "y", "y^-1"].map(String::from).to_vec()
}

pub fn z2_structure() -> AutomaticStructure {
    let language = parse_acceptor(LANGUAGE).expect("bundled language parses");
    let multiplier = parse_acceptor(MULTIPLIER).expect("bundled multiplier parses");
    AutomaticStructure::new(z2_generators(), vec![1, 0, 3, 2], language, multiplier)
        .expect("bundled structure is well formed")
}

fn step(a: usize) -> (i64, i64) {
    [(1, 0), (-1, 0), (0, 1), (0, -1)][a]
}

/// Image in `ℤ²` of a word over `x, x^-1, y, y^-1`.
pub fn z2_vector(word: &[usize]) -> (i64, i64) {
    word.iter().fold((0, 0), |(x, y), &a| {
        let (dx, dy) = step(a);
        (x + dx, y + dy)
    })
}

/// Word-metric distance between the elements named by two words.
pub fn z2_distance(u: &[usize], v: &[usize]) -> u64 {
    let (a, b) = (z2_vector(u), z2_vector(v));
    (a.0 - b.0).unsigned_abs() + (a.1 - b.1).unsigned_abs()
}

/// Multiplier that tracks the difference `u - v` of prefixes while it
/// stays within `radius` in the L¹ norm, for any language over the `ℤ²`
/// generators. Padding is checked: once a side is padded it stays padded.
pub fn z2_difference_multiplier(radius: i64) -> Acceptor {
    let gens = z2_generators();
    let n = gens.len();
    let letters = pair_alphabet(&gens);
    // phase 0: both running, 1: u ended, 2: v ended
    let mut keys: Vec<((i64, i64), u8)> = Vec::new();
    for phase in 0..3u8 {
        for dx in -radius..=radius {
            for dy in -(radius - dx.abs())..=(radius - dx.abs()) {
                keys.push(((dx, dy), phase));
            }
        }
    }
    let index: HashMap<((i64, i64), u8), usize> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let trans = keys
        .iter()
        .map(|&((dx, dy), phase)| {
            (0..letters.len())
                .map(|c| {
                    let p = PaddedPairLetter::from_index(c, n).expect("valid index");
                    let next_phase = match (p.left(), p.right()) {
                        (Some(_), Some(_)) if phase == 0 => 0,
                        (None, Some(_)) if phase != 2 => 1,
                        (Some(_), None) if phase != 1 => 2,
                        _ => return None,
                    };
                    let (ux, uy) = p.left().map_or((0, 0), step);
                    let (vx, vy) = p.right().map_or((0, 0), step);
                    index.get(&((dx + ux - vx, dy + uy - vy), next_phase)).copied()
                })
                .collect()
        })
        .collect();
    let states = keys.iter().map(|((dx, dy), ph)| format!("d{dx},{dy}/{ph}")).collect();
    let with_diff = |d: (i64, i64)| -> Vec<usize> {
        keys.iter().enumerate().filter(|(_, k)| k.0 == d).map(|(i, _)| i).collect()
    };
    let mut accepting = BTreeMap::from([(IDENTITY_LABEL.to_string(), with_diff((0, 0)))]);
    for (a, g) in gens.iter().enumerate() {
        accepting.insert(g.clone(), with_diff(step(a)));
    }
    let start = index[&((0, 0), 0)];
    Acceptor::new(letters, states, trans, start, accepting)
        .expect("difference multiplier is well formed")
        .with_name("z2-difference")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsa::MAIN;

    #[test]
    fn language_shape() {
        let s = z2_structure();
        let words = s.language().enumerate(MAIN, 1).unwrap();
        let shown: Vec<String> = words.iter().map(|w| s.write_word(w)).collect();
        assert_eq!(shown, vec!["", "x", "x^-1", "y", "y^-1"]);
        assert_eq!(s.language().shortest_accepted(MAIN).unwrap(), Some(vec![]));
    }

    #[test]
    fn multiplier_matches_vector_oracle() {
        let s = z2_structure();
        let words = s.language().enumerate(MAIN, 4).unwrap();
        for u in &words {
            for v in &words {
                let (du, dv) = (z2_vector(u), z2_vector(v));
                let diff = (du.0 - dv.0, du.1 - dv.1);
                assert_eq!(s.multiplies(u, v, IDENTITY_LABEL).unwrap(), diff == (0, 0));
                for (a, g) in s.generators().iter().enumerate() {
                    assert_eq!(s.multiplies(u, v, g).unwrap(), diff == step(a), "{u:?} {v:?} {g}");
                }
            }
        }
    }

    #[test]
    fn difference_multiplier_agrees_on_normal_forms() {
        let s = z2_structure();
        let d = s.with_language(s.language().clone()).unwrap();
        let wide = AutomaticStructure::new(z2_generators(), vec![1, 0, 3, 2], d.language().clone(), z2_difference_multiplier(2))
            .unwrap();
        let words = s.language().enumerate(MAIN, 3).unwrap();
        for u in &words {
            for v in &words {
                for g in std::iter::once(IDENTITY_LABEL).chain(["x", "x^-1", "y", "y^-1"]) {
                    assert_eq!(s.multiplies(u, v, g).unwrap(), wide.multiplies(u, v, g).unwrap());
                }
            }
        }
    }
}
