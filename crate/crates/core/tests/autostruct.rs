use std::collections::BTreeMap;

use fsgroups::autostruct::surface::{free_reduce, inverse_word};
use fsgroups::autostruct::{
    cannon_series, dehn_reduce, fellow_travel_check, make_unique, surface_equal, surface_growth_bfs, z2_difference_multiplier,
    z2_distance, z2_structure, z2_vector, AutomaticStructure, FellowTravel, SurfaceGroupPresentation, IDENTITY_LABEL,
};
use fsgroups::fsa::{finite_language, pad_pairs, union, Acceptor, PaddedPairLetter, MAIN};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn padding_rule() {
    let p = |l: Option<usize>, r: Option<usize>| PaddedPairLetter::new(l, r).unwrap();
    // x = 0, y = 2
    assert_eq!(pad_pairs(&[0, 0], &[2]), vec![p(Some(0), Some(2)), p(Some(0), None)]);
    assert!(pad_pairs(&[], &[]).is_empty());
}

#[test]
fn word_problem_matches_vector_oracle() {
    let s = z2_structure();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let len = rng.gen_range(0..=50);
        let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..4)).collect();
        let nf = s.normal_form(&w).unwrap();
        assert!(s.is_normal_form(&nf).unwrap());
        assert_eq!(z2_vector(&nf), z2_vector(&w));
        assert_eq!(s.is_identity(&w).unwrap(), z2_vector(&w) == (0, 0));
    }
}

#[test]
fn z2_normal_forms_are_unique() {
    let s = z2_structure();
    assert!(s.uniqueness_violations(6).unwrap().is_empty());
    let words = s.language().enumerate(MAIN, 6).unwrap();
    let mut vectors: Vec<(i64, i64)> = words.iter().map(|w| z2_vector(w)).collect();
    let n = vectors.len();
    vectors.sort();
    vectors.dedup();
    assert_eq!(vectors.len(), n);
    // every vector with |a| + |b| <= 6 occurs
    assert_eq!(n, 1 + 2 * 6 * 7);
}

#[test]
fn make_unique_keeps_a_bijective_language() {
    let s = z2_structure();
    let u = make_unique(&s).unwrap();
    assert_eq!(u.language().enumerate(MAIN, 6).unwrap(), s.language().enumerate(MAIN, 6).unwrap());
    assert!(u.uniqueness_violations(6).unwrap().is_empty());
}

fn with_extra_word(extra: &str) -> AutomaticStructure {
    let s = z2_structure();
    let w = s.read_word(extra).unwrap();
    let extra = finite_language(s.generators().to_vec(), &[w]).unwrap();
    let lang = union(s.language(), MAIN, &extra, MAIN).unwrap();
    AutomaticStructure::new(s.generators().to_vec(), vec![1, 0, 3, 2], lang, z2_difference_multiplier(2)).unwrap()
}

#[test]
fn make_unique_drops_larger_duplicate() {
    let s = with_extra_word("y x");
    let yx = s.read_word("y x").unwrap();
    assert!(s.is_normal_form(&yx).unwrap());
    assert_eq!(s.uniqueness_violations(4).unwrap().len(), 1);
    let u = make_unique(&s).unwrap();
    assert!(!u.is_normal_form(&yx).unwrap());
    assert!(u.is_normal_form(&s.read_word("x y").unwrap()).unwrap());
    assert_eq!(u.language().enumerate(MAIN, 6).unwrap(), z2_structure().language().enumerate(MAIN, 6).unwrap());
}

#[test]
fn make_unique_on_empty_language() {
    let s = z2_structure();
    let empty = Acceptor::new(
        s.generators().to_vec(),
        vec!["dead".into()],
        vec![vec![None; 4]],
        0,
        BTreeMap::from([(MAIN.to_string(), vec![])]),
    )
    .unwrap();
    let u = make_unique(&s.with_language(empty).unwrap()).unwrap();
    assert!(u.language().is_empty(MAIN).unwrap());
}

#[test]
fn fellow_traveller_radius() {
    let s = z2_structure();
    let d = |u: &[usize], v: &[usize]| Ok(z2_distance(u, v));
    assert!(matches!(fellow_travel_check(&s, 2, 8, &d).unwrap(), FellowTravel::Holds { .. }));
    match fellow_travel_check(&s, 1, 8, &d).unwrap() {
        FellowTravel::Counterexample { u, v, j } => {
            assert!(z2_distance(&u, &v) <= 1);
            assert!(z2_distance(&u[..j.min(u.len())], &v[..j.min(v.len())]) > 1);
        }
        other => panic!("expected a counterexample, got {other:?}"),
    }
    assert!(matches!(fellow_travel_check(&s, 16, 8, &d).unwrap(), FellowTravel::Holds { .. }));
}

#[test]
fn identity_multiplier_rejects_non_normal_partner() {
    let s = z2_structure();
    let r = |t: &str| s.read_word(t).unwrap();
    assert!(!s.multiplies(&r("x y"), &r("y x"), IDENTITY_LABEL).unwrap());
}

#[test]
fn surface_growth_matches_series() {
    let t = surface_growth_bfs(2, 3).unwrap();
    let series = cannon_series(2, 3).unwrap();
    assert_eq!(t.spheres.iter().map(|&s| s as i128).collect::<Vec<_>>(), series);
    assert_eq!(t.balls[3], 457);
}

#[test]
fn series_growth_is_bounded_by_free_group() {
    for g in 2..=4 {
        let c = cannon_series(g, 12).unwrap();
        for n in 1..c.len() {
            assert!(c[n] > 0);
            if n >= 2 {
                assert!(c[n] <= c[n - 1] * (4 * g as i128 - 1));
            }
        }
    }
}

fn random_word(rng: &mut ChaCha8Rng, letters: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..letters)).collect()
}

#[test]
fn conjugated_relators_reduce_to_empty() {
    let p = SurfaceGroupPresentation::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let mut w = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let len = rng.gen_range(0..=4);
            let c = random_word(&mut rng, 8, len);
            let r = &p.cyclic_relators()[rng.gen_range(0..16)];
            w.extend(inverse_word(&c));
            w.extend(r);
            w.extend(&c);
        }
        assert!(dehn_reduce(&p, &w).is_empty(), "{}", p.write_word(&w));
    }
}

#[test]
fn inserting_relator_conjugates_preserves_elements() {
    let p = SurfaceGroupPresentation::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let u = random_word(&mut rng, 8, 6);
        let c = random_word(&mut rng, 8, 3);
        let mut wu = inverse_word(&c);
        wu.extend(p.relator());
        wu.extend(&c);
        wu.extend(&u);
        assert!(surface_equal(&p, &u, &wu));
    }
}

proptest! {
    #[test]
    fn dehn_output_is_reduced(w in proptest::collection::vec(0usize..8, 0..40)) {
        let p = SurfaceGroupPresentation::new(2).unwrap();
        let r = dehn_reduce(&p, &w);
        prop_assert!(r.len() <= free_reduce(&w).len());
        prop_assert_eq!(free_reduce(&r), r.clone());
        for i in 0..r.len() {
            for rel in p.cyclic_relators() {
                let common = r[i..].iter().zip(rel).take_while(|(a, b)| a == b).count();
                prop_assert!(common <= 4);
            }
        }
        prop_assert!(surface_equal(&p, &w, &r));
    }

    #[test]
    fn surface_equality_is_an_equivalence(
        u in proptest::collection::vec(0usize..8, 0..10),
        v in proptest::collection::vec(0usize..8, 0..10),
    ) {
        let p = SurfaceGroupPresentation::new(2).unwrap();
        prop_assert!(surface_equal(&p, &u, &u));
        prop_assert_eq!(surface_equal(&p, &u, &v), surface_equal(&p, &v, &u));
        let mut vr = v.clone();
        vr.extend(p.relator());
        prop_assert!(surface_equal(&p, &v, &vr));
        if surface_equal(&p, &u, &v) {
            prop_assert!(surface_equal(&p, &u, &vr));
        }
    }
}
