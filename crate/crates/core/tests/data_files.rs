use fsgroups::format::{parse_machine, write_machine};
use fsgroups::zoo;

const FILES: &[(&str, &str)] = &[
    ("adding", include_str!("../data/adding.mealy")),
    ("grigorchuk", include_str!("../data/grigorchuk.mealy")),
    ("aleshin_full", include_str!("../data/aleshin_full.mealy")),
    ("gupta_sidki", include_str!("../data/gupta_sidki.mealy")),
    ("bs13", include_str!("../data/bs13.mealy")),
    ("lamplighter", include_str!("../data/lamplighter.mealy")),
    ("basilica", include_str!("../data/basilica.mealy")),
    ("e1", include_str!("../data/e1.mealy")),
    ("f1", include_str!("../data/f1.mealy")),
    ("f_n(2)", include_str!("../data/f_n-2.mealy")),
];

#[test]
fn shipped_machine_files_match_builtins() {
    for (name, text) in FILES {
        let parsed = parse_machine(text).unwrap();
        let builtin = zoo::builtin(name).unwrap().machine;
        assert!(parsed.same_table(&builtin), "{name}");
        assert_eq!(parsed.identity_state(), builtin.identity_state(), "{name}");
        assert_eq!(write_machine(&parsed), *text, "{name}");
    }
}

#[test]
fn every_builtin_has_a_file() {
    for name in zoo::BUILTIN_NAMES.iter().filter(|n| **n != "f_n(k)") {
        assert!(FILES.iter().any(|(f, _)| f == name), "{name}");
    }
}
