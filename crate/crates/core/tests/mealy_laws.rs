use fsgroups::format::{parse_machine, write_machine};
use fsgroups::zoo;
use fsgroups::MealyMachine;
use proptest::prelude::*;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Random invertible machine: every state permutes the letters.
fn arb_invertible() -> impl Strategy<Value = MealyMachine> {
    (1usize..=5, 1usize..=3).prop_flat_map(|(n, k)| {
        let perm = Just((0..k).collect::<Vec<usize>>()).prop_shuffle();
        proptest::collection::vec((perm, proptest::collection::vec(0..n, k)), n).prop_map(move |rows| {
            let rows = rows.into_iter().map(|(p, nx)| p.into_iter().zip(nx).collect()).collect();
            MealyMachine::new(names("", k), names("q", n), rows, None).unwrap()
        })
    })
}

fn all_words(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut layer = vec![vec![]];
    for _ in 0..len {
        layer = layer
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (0..k).map(move |a| {
                    let mut w2 = w.clone();
                    w2.push(a);
                    w2
                })
            })
            .collect();
    }
    layer
}

fn zoo_machines() -> Vec<MealyMachine> {
    let mut out: Vec<MealyMachine> = zoo::BUILTIN_NAMES
        .iter()
        .filter(|n| **n != "f_n(k)")
        .map(|n| zoo::builtin(n).unwrap().machine)
        .collect();
    out.push(zoo::f_n(2).unwrap());
    out
}

fn check_laws(m: &MealyMachine) -> Result<(), TestCaseError> {
    let k = m.degree();
    let words = all_words(k, 4.min(12 / k.max(1)));
    if m.is_invertible() {
        let inv = m.inverse().unwrap();
        prop_assert!(inv.inverse().unwrap().same_table(m));
        let prod = inv.product(m).unwrap();
        for q in 0..m.num_states() {
            let pq = q * m.num_states() + q;
            prop_assert!(prod.canonical(pq).is_identity());
            for w in &words {
                let there = m.apply(q, w).unwrap();
                prop_assert_eq!(&inv.apply(q, &there).unwrap(), w);
            }
        }
    }
    let sq = m.product(m).unwrap();
    for q in 0..m.num_states() {
        for r in 0..m.num_states() {
            for w in words.iter().take(20) {
                let expect = m.apply(q, &m.apply(r, w).unwrap()).unwrap();
                prop_assert_eq!(sq.apply(q * m.num_states() + r, w).unwrap(), expect);
            }
        }
    }
    prop_assert!(m.dual().dual().same_table(m));
    let c = m.classify();
    prop_assert_eq!(c.reversible, m.dual().is_invertible());
    prop_assert!(!c.bireversible || (c.invertible && c.reversible));
    let forms = m.canonical_states();
    for q in 0..m.num_states() {
        let again = forms[q].to_initial(m.alphabet()).unwrap().minimize();
        prop_assert_eq!(&again, &forms[q]);
        for r in 0..m.num_states() {
            let same = all_words(k, 6.min(14 / k.max(1)))
                .iter()
                .all(|w| m.apply(q, w).unwrap() == m.apply(r, w).unwrap());
            prop_assert_eq!(forms[q] == forms[r], same);
        }
    }
    let text = write_machine(m);
    prop_assert!(parse_machine(&text).unwrap().same_table(m));
    Ok(())
}

#[test]
fn zoo_machines_satisfy_algebra_laws() {
    for m in zoo_machines() {
        check_laws(&m).unwrap_or_else(|e| panic!("{}: {e}", m.name()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn random_machines_satisfy_algebra_laws(m in arb_invertible()) {
        check_laws(&m)?;
    }
}
