//! Fixed inputs shared by the benchmarks, so that runs are comparable.

use fsgroups::{Atom, GroupWord};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `count` words of exactly `len` atoms over `gens` and their inverses.
pub fn random_group_words(seed: u64, gens: &[&str], len: usize, count: usize) -> Vec<GroupWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            GroupWord::new(
                (0..len).map(|_| Atom::new(*gens.choose(&mut rng).expect("generators"), rng.gen_bool(0.5))).collect(),
            )
        })
        .collect()
}

/// `count` words of `len` letters drawn from `0..letters`.
pub fn random_letter_words(seed: u64, letters: usize, len: usize, count: usize) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..len).map(|_| rng.gen_range(0..letters)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_reproducible() {
        let a = random_group_words(1, &["a", "b"], 5, 3);
        assert_eq!(a, random_group_words(1, &["a", "b"], 5, 3));
        assert!(a.iter().all(|w| w.len() == 5));
        assert!(random_letter_words(2, 4, 7, 2).iter().flatten().all(|&x| x < 4));
    }
}
