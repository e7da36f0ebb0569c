use std::path::PathBuf;

use assert_cmd::cargo::cargo_bin_cmd;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = cargo_bin_cmd!("fsgroups").args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn ok(args: &[&str]) -> String {
    let r = run(args);
    assert_eq!(r.code, 0, "{args:?} failed: {}", r.stderr);
    r.stdout
}

fn schema(name: &str) -> jsonschema::Validator {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schemas", &format!("{name}.json")].iter().collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(name: &str, doc: &Value) {
    let v = schema(name);
    if let Err(e) = v.validate(doc) {
        panic!("{name}: {e}\n{doc:#}");
    }
}

#[test]
fn documented_invocations() {
    assert_eq!(ok(&["wp", "--machine", "grigorchuk", "--word", "a a"]), "identity: true\n");
    let nucleus = ok(&["nucleus", "--machine", "basilica"]);
    let mut lines = nucleus.lines();
    assert_eq!(lines.next(), Some("nucleus: 7 elements"));
    assert_eq!(lines.count(), 7);
    assert_eq!(ok(&["series", "--genus", "2", "--terms", "3"]), "[1, 8, 56, 392]\n");
    assert_eq!(ok(&["apply", "-m", "adding", "-s", "t", "-i", "111001"]), "output: 000101\nfinal: 1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["--version"]).code, 0);
    assert_eq!(run(&["wp", "--help"]).code, 0);
    assert_eq!(run(&[]).code, 1);
    assert_eq!(run(&["frobnicate"]).code, 1);
    assert_eq!(run(&["wp", "--machine", "grigorchuk"]).code, 1);
    assert_eq!(run(&["wp", "--machine", "no-such-machine", "--word", "a"]).code, 1);
    assert_eq!(run(&["show", "--machine", "adding", "--format", "csv"]).code, 1);
    assert_eq!(run(&["growth", "--machine", "adding", "--format", "dot"]).code, 1);

    let r = run(&["wp", "--machine", "grigorchuk", "--word", "a z"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error[unknown-symbol]"), "{}", r.stderr);

    let r = run(&["wp", "--machine", "lamplighter", "--word", "p q p q", "--cap", "1"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error[cap-exceeded]") && r.stderr.contains('1'), "{}", r.stderr);

    let r = run(&["series", "--genus", "1"]);
    assert_eq!(r.code, 2);
}

#[test]
fn machine_files() {
    let dir = tempfile::tempdir().unwrap();
    let reset = dir.path().join("reset.mealy");
    std::fs::write(&reset, "mealy reset\nalphabet 0 1\nstates r\nr: 0 -> 0 r ; 1 -> 0 r\n").unwrap();
    let reset = reset.to_str().unwrap();
    let r = run(&["inv", "--machine", reset]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error[not-invertible]"), "{}", r.stderr);
    assert!(ok(&["classify", "--machine", reset]).contains("invertible: false"));

    let broken = dir.path().join("broken.mealy");
    std::fs::write(&broken, "mealy broken\nalphabet 0 1\nstates r\nr: 0 -> 0 r\n").unwrap();
    let r = run(&["show", "--machine", broken.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error[parse]"), "{}", r.stderr);

    for name in ["adding", "grigorchuk", "bs13", "e1", "f_n(2)"] {
        let text = ok(&["show", "--machine", name]);
        let path = dir.path().join("copy.mealy");
        std::fs::write(&path, &text).unwrap();
        assert_eq!(ok(&["show", "--machine", path.to_str().unwrap()]), text, "{name}");
    }
}

#[test]
fn truncated_results_report_their_cap() {
    let out = ok(&["growth", "--machine", "basilica", "--radius", "6", "--cap", "20"]);
    assert!(out.contains("truncated") && out.contains("cap 20"), "{out}");
    let out = ok(&["growth", "--machine", "adding", "--radius", "14"]);
    assert!(out.contains("truncated at radius 12 of 14: radius cap 12"), "{out}");
    assert_eq!(ok(&["nucleus", "--machine", "lamplighter", "--cap", "500"]), "not contracting up to cap 500\n");
    assert!(ok(&["order", "--machine", "adding", "--word", "t", "--max-exp", "64"]).contains("max-exp 64"));
}

const JSON_CASES: &[(&str, &[&str])] = &[
    ("machine", &["show", "-m", "grigorchuk"]),
    ("machine", &["min", "-m", "aleshin_full", "-s", "A"]),
    ("machine", &["prod", "-m", "adding", "--with", "adding"]),
    ("machine", &["inv", "-m", "basilica"]),
    ("machine", &["dual", "-m", "e1"]),
    ("machine", &["cayley", "--cyclic", "3"]),
    ("machine", &["affine", "--matrix", "1,1;0,1", "--vector", "1,0"]),
    ("zoo-list", &["zoo"]),
    ("zoo-entry", &["zoo", "grigorchuk"]),
    ("classify", &["classify", "-m", "f1"]),
    ("apply", &["apply", "-m", "grigorchuk", "-s", "b", "-i", "0101"]),
    ("wp", &["wp", "-m", "gupta_sidki", "-w", "t^3"]),
    ("order", &["order", "-m", "grigorchuk", "-w", "a b"]),
    ("order", &["order", "-m", "adding", "-w", "t", "--max-exp", "8"]),
    ("wreath", &["wreath", "-m", "grigorchuk", "-w", "a b"]),
    ("matrix", &["matrix", "-m", "basilica", "-w", "a"]),
    ("nucleus", &["nucleus", "-m", "basilica"]),
    ("nucleus", &["nucleus", "-m", "lamplighter", "--cap", "200"]),
    ("activity", &["activity", "-m", "grigorchuk"]),
    ("activity", &["activity", "-m", "lamplighter"]),
    ("orbits", &["orbits", "-m", "adding", "-w", "t", "-i", "000"]),
    ("schreier", &["schreier", "-m", "grigorchuk", "-l", "3"]),
    ("growth", &["growth", "-m", "grigorchuk", "-r", "3"]),
    ("growth", &["surface-growth", "--genus", "2", "-r", "2"]),
    ("transitive", &["transitive", "-m", "basilica", "-l", "4"]),
    ("delta", &["delta", "--cycle", "8"]),
    ("delta", &["delta", "-m", "adding", "-l", "3"]),
    ("auto-wp", &["auto-wp", "-w", "x y x^-1 y^-1"]),
    ("auto-unique", &["auto-unique", "--enumerate", "2"]),
    ("dehn", &["dehn", "-w", "a1 b1 a1^-1"]),
    ("series", &["series", "--terms", "5"]),
    ("ft-check", &["ft-check", "-k", "2"]),
    ("ft-check", &["ft-check", "-k", "1"]),
];

#[test]
fn json_outputs_match_schemas() {
    for (name, args) in JSON_CASES {
        let mut args = args.to_vec();
        args.extend(["--format", "json"]);
        let out = ok(&args);
        let doc: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
        assert_valid(name, &doc);
    }
}

#[test]
fn schemas_reject_wrong_shapes() {
    let wp: Value = serde_json::from_str(&ok(&["wp", "-m", "adding", "-w", "t", "-f", "json"])).unwrap();
    assert!(!schema("delta").is_valid(&wp));
    assert!(!schema("wp").is_valid(&serde_json::json!({ "word": "t", "identity": "no" })));
}

#[test]
fn dual_orbit_lines_match_schema() {
    let out = ok(&["dualorbits", "-m", "e1", "-l", "3", "--language", "adjacent", "--certify", "-f", "json"]);
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    for doc in &lines {
        assert_valid("dualorbits-line", doc);
    }
    assert_eq!(lines[0]["size"], 12);
    assert_eq!(lines[1]["certified"], true);
}

#[test]
fn dot_outputs_parse() {
    let cases: &[&[&str]] = &[
        &["show", "-m", "grigorchuk"],
        &["show", "-m", "f_n(1)"],
        &["inv", "-m", "bs13"],
        &["dual", "-m", "e1"],
        &["cayley", "--cyclic", "4"],
        &["schreier", "-m", "basilica", "-l", "4"],
        &["schreier", "-m", "gupta_sidki", "-l", "2", "-g", "a,t^-1"],
        &["auto-unique"],
    ];
    for args in cases {
        let mut args = args.to_vec();
        args.extend(["--format", "dot"]);
        let out = ok(&args);
        if let Err(e) = dot_parser::ast::Graph::try_from(out.as_str()) {
            panic!("{args:?}: {e}\n{out}");
        }
    }
}

#[test]
fn repeated_runs_are_identical() {
    let cases: &[&[&str]] = &[
        &["nucleus", "-m", "basilica", "-f", "json"],
        &["growth", "-m", "grigorchuk", "-r", "5", "-f", "csv"],
        &["schreier", "-m", "grigorchuk", "-l", "4", "-f", "dot"],
        &["dualorbits", "-m", "f1", "-l", "2", "--language", "reduced"],
        &["auto-unique", "--enumerate", "3"],
        &["surface-growth", "-r", "2"],
        &["zoo", "-f", "json"],
    ];
    for args in cases {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
}

#[test]
fn edge_list_and_grid_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.txt");
    std::fs::write(&path, "# a 4-cycle\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    assert_eq!(ok(&["delta", "--edges", path.to_str().unwrap()]), "vertices: 4\ndelta: 2\n");
    assert_eq!(ok(&["delta", "--grid", "1x3"]), "vertices: 3\ndelta: 0\n");
    assert_eq!(run(&["delta", "--grid", "three"]).code, 1);
    std::fs::write(&path, "0 1\n2 3\n").unwrap();
    let r = run(&["delta", "--edges", path.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error[disconnected]"));
}

#[test]
fn structure_files_override_the_bundled_one() {
    let dir = tempfile::tempdir().unwrap();
    let data: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data"].iter().collect();
    let lang = data.join("z2-language.fsa");
    let mult = data.join("z2-multiplier.fsa");
    let args = |w: &'static str| {
        vec![
            "auto-wp".to_string(),
            "--language".into(),
            lang.to_str().unwrap().into(),
            "--multiplier".into(),
            mult.to_str().unwrap().into(),
            "-w".into(),
            w.into(),
        ]
    };
    let a: Vec<String> = args("y x x");
    let a: Vec<&str> = a.iter().map(String::as_str).collect();
    assert_eq!(ok(&a), "identity: false\nnormal form: x x y\n");
    assert_eq!(run(&["auto-wp", "--language", lang.to_str().unwrap(), "-w", "x"]).code, 1);
    let missing = dir.path().join("absent.fsa");
    let r = run(&["auto-wp", "--language", missing.to_str().unwrap(), "--multiplier", mult.to_str().unwrap(), "-w", "x"]);
    assert_eq!(r.code, 1);
}
