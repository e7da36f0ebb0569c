use std::collections::BTreeMap;

use fsgroups::fsa::{
    complement, determinize, difference, intersect, parse_acceptor, shortlex_cmp, union, write_acceptor, Acceptor, Nfa,
    MAIN,
};
use proptest::prelude::*;

fn bits() -> Vec<String> {
    vec!["0".into(), "1".into()]
}

fn words_up_to(max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for a in 0..2 {
                let mut w = out[i].clone();
                w.push(a);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

fn arb_nfa() -> impl Strategy<Value = Nfa> {
    (1usize..=4).prop_flat_map(|n| {
        (
            proptest::collection::vec(proptest::collection::vec(proptest::collection::vec(0..n, 0..=2), 2), n),
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec(0..n, 1..=2),
        )
            .prop_map(move |(trans, acc, initial)| Nfa {
                alphabet: bits(),
                trans,
                initial,
                accepting: BTreeMap::from([(MAIN.to_string(), acc)]),
            })
    })
}

fn arb_dfa() -> impl Strategy<Value = Acceptor> {
    (1usize..=4).prop_flat_map(|n| {
        (
            proptest::collection::vec(proptest::collection::vec(proptest::option::of(0..n), 2), n),
            proptest::collection::vec(0..n, 0..=n),
        )
            .prop_map(|(trans, acc)| {
                Acceptor::from_table(bits(), trans, 0, BTreeMap::from([(MAIN.to_string(), acc)])).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn determinize_and_minimize_preserve_membership(nfa in arb_nfa()) {
        let dfa = determinize(&nfa);
        let min = dfa.minimize();
        for w in words_up_to(8) {
            let expect = nfa.accepts(MAIN, &w).unwrap();
            prop_assert_eq!(dfa.accepts(MAIN, &w).unwrap(), expect);
            prop_assert_eq!(min.accepts(MAIN, &w).unwrap(), expect);
        }
        prop_assert!(min.num_states() <= dfa.num_states() + 1);
    }

    #[test]
    fn boolean_operations_match_sets(a in arb_dfa(), b in arb_dfa()) {
        let i = intersect(&a, MAIN, &b, MAIN).unwrap();
        let u = union(&a, MAIN, &b, MAIN).unwrap();
        let d = difference(&a, MAIN, &b, MAIN).unwrap();
        let ca = complement(&a, MAIN).unwrap();
        let cb = complement(&b, MAIN).unwrap();
        let cca = complement(&ca, MAIN).unwrap();
        let morgan = complement(&union(&ca, MAIN, &cb, MAIN).unwrap(), MAIN).unwrap();
        for w in words_up_to(8) {
            let (x, y) = (a.accepts(MAIN, &w).unwrap(), b.accepts(MAIN, &w).unwrap());
            prop_assert_eq!(i.accepts(MAIN, &w).unwrap(), x && y);
            prop_assert_eq!(u.accepts(MAIN, &w).unwrap(), x || y);
            prop_assert_eq!(d.accepts(MAIN, &w).unwrap(), x && !y);
            prop_assert_eq!(ca.accepts(MAIN, &w).unwrap(), !x);
            prop_assert_eq!(cca.accepts(MAIN, &w).unwrap(), x);
            prop_assert_eq!(morgan.accepts(MAIN, &w).unwrap(), x && y);
        }
    }

    #[test]
    fn enumerate_is_exact_and_sorted(a in arb_dfa()) {
        let listed = a.enumerate(MAIN, 6).unwrap();
        prop_assert!(listed.windows(2).all(|p| shortlex_cmp(&p[0], &p[1]).is_lt()));
        let expected: Vec<Vec<usize>> =
            words_up_to(6).into_iter().filter(|w| a.accepts(MAIN, w).unwrap()).collect();
        prop_assert_eq!(listed, expected.clone());
        match a.shortest_accepted(MAIN).unwrap() {
            Some(w) => prop_assert!(expected.first().is_none_or(|f| shortlex_cmp(&w, f).is_le())),
            None => prop_assert!(expected.is_empty()),
        }
    }

    #[test]
    fn text_format_round_trips(a in arb_dfa()) {
        let text = write_acceptor(&a);
        prop_assert_eq!(parse_acceptor(&text).unwrap(), a);
    }
}
