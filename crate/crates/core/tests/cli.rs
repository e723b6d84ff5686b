mod common;

use std::process::Command;

use abelian_automata::cli::run;
use abelian_automata::complete::{principal_from_matrix, LocationMap};
use abelian_automata::mealy::{parse_automaton, serialize_automaton};
use common::*;
use serde_json::Value;

fn abelaut(args: &[&str]) -> (i32, String, String) {
    abelaut_with_stdin(args, "")
}

fn abelaut_with_stdin(args: &[&str], input: &str) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("abelaut").chain(args.iter().copied());
    let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = abelaut(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn text(args: &[&str]) -> String {
    let (code, out, err) = abelaut(args);
    assert_eq!(code, 0, "{err}");
    out
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn transduce_text_and_json() {
    let aut = fixture_path("xyz.aut");
    let args = ["transduce", "--aut", &aut, "--state", "x", "--word", "0110"];
    assert_eq!(text(&args), "1100\n");
    assert_eq!(json(&args)["output"], "1100");
    let empty = ["transduce", "--aut", &aut, "--state", "x", "--word", "-"];
    assert_eq!(text(&empty).trim(), "-");
}

#[test]
fn check_and_gamma() {
    let a32 = fixture_path("a32.aut");
    assert!(text(&["check", "--aut", &a32]).contains("verdict: AbelianFreeCandidate\ngamma: -f0 + f1"));
    let report = json(&["check", "--aut", &a32]);
    assert_eq!(report["verdict"], "AbelianFreeCandidate");
    assert_eq!(report["gamma"], "-f0 + f1");

    let lamp = fixture_path("lamplighter.aut");
    let out = text(&["check", "--aut", &lamp]);
    assert!(out.starts_with("verdict: NotAbelian\nwitness: beta\n"));
    assert_eq!(json(&["check", "--aut", &lamp])["witness"]["state"], "beta");

    assert_eq!(text(&["gamma", "--aut", &a32]), "-f0 + f1\n");
    assert_eq!(json(&["gamma", "--aut", &a32])["gamma"], "-f0 + f1");
    let (code, _, err) = abelaut(&["gamma", "--aut", &fixture_path("identity.aut")]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: "));
}

#[test]
fn principal_round_trip_is_isomorphic() {
    let a32 = fixture_path("a32.aut");
    let out = text(&["principal", "--aut", &a32]);
    let machine = parse_automaton(&out).unwrap();
    assert_eq!(machine.len(), 7);

    // feed the printed machine back through the tool
    let (code, reprinted, err) =
        abelaut_with_stdin(&["transduce", "--aut", "-", "--state", "f-f1", "--word", "0110"], &out);
    assert_eq!(code, 0, "{err}");
    assert_eq!(reprinted.trim(), machine.transduce_label("f-f1", &"0110".parse().unwrap()).unwrap().to_string());

    let from_chi = parse_automaton(&text(&["principal", "--chi", "1/2,1,1"])).unwrap();
    let from_matrix = parse_automaton(&text(&["principal", "--matrix", &fixture_path("a.mat")])).unwrap();
    assert_eq!(serialize_automaton(&from_chi), serialize_automaton(&from_matrix));
    assert!(machine.find_isomorphism(&from_chi).is_some());

    let value = json(&["principal", "--aut", &a32]);
    assert_eq!(value["states"].as_array().unwrap().len(), 7);
    assert_eq!(value["transitions"].as_array().unwrap().len(), 14);
    assert_eq!(
        serialize_automaton(&from_matrix),
        serialize_automaton(&principal_from_matrix(&matrix_a(), 1000).unwrap())
    );
}

#[test]
fn principal_needs_exactly_one_source() {
    assert_eq!(abelaut(&["principal"]).0, 2);
    assert_eq!(abelaut(&["principal", "--chi", "1/2,1,1", "--matrix", "x.mat"]).0, 2);
}

#[test]
fn orbit_and_locate() {
    let mat = fixture_path("a.mat");
    let orbit = parse_automaton(&text(&["orbit", "--matrix", &mat, "--e", "3,2", "--v", "1,0"])).unwrap();
    assert_eq!(orbit.labels(), ["-2_-2", "0_1", "1_0"]);

    let args = ["locate", "--aut", &fixture_path("a32.aut"), "--matrix", &mat];
    let out = text(&args);
    let map: LocationMap = out.parse().unwrap();
    assert_eq!(map.e, v(&[3, 2]));
    let value = json(&args);
    assert_eq!(ints(&value["p"]), [3, 2]);
    assert_eq!(ints(&value["e"]), [3, 2]);
    assert_eq!(ints(&value["assignment"]["f1"]), [-2, -2]);
    assert_eq!(value["partial"], false);
}

#[test]
fn verify_accepts_and_rejects() {
    let dir = std::env::temp_dir().join(format!("abelaut-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (aut, mat) = (fixture_path("a32.aut"), fixture_path("a.mat"));
    let good = text(&["locate", "--aut", &aut, "--matrix", &mat]);
    let good_path = dir.join("good.map");
    std::fs::write(&good_path, &good).unwrap();
    let good_path = good_path.to_str().unwrap();
    assert_eq!(text(&["verify", "--aut", &aut, "--matrix", &mat, "--map", good_path, "--maxlen", "12"]), "true\n");
    assert_eq!(json(&["verify", "--aut", &aut, "--matrix", &mat, "--map", good_path])["verified"], true);

    let bad_path = dir.join("bad.map");
    std::fs::write(&bad_path, good.replace("(0,1)", "(0,3)")).unwrap();
    let (code, out, _) = abelaut(&["verify", "--aut", &aut, "--matrix", &mat, "--map", bad_path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("false\ncounterexample: state f0"));

    // the map may also come from stdin
    let (code, out, _) = abelaut_with_stdin(&["verify", "--aut", &aut, "--matrix", &mat, "--map", "-"], &good);
    assert_eq!((code, out.as_str()), (0, "true\n"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn embedding_and_fractions() {
    let mat = fixture_path("a.mat");
    assert_eq!(text(&["embed", "--matrix", &mat, "--p", "3,2", "--q", "-1,1", "--v", "1,0"]), "(1,1)\n");
    assert_eq!(ints(&json(&["embed", "--matrix", &mat, "--p", "3,2", "--q", "-1,1", "--v", "1,0"])["r"]), [1, 1]);
    let (code, _, err) = abelaut(&["embed", "--matrix", &mat, "--p", "3,2", "--q", "1", "--v", "1,0"]);
    assert_eq!(code, 1);
    assert!(err.contains("does not divide"));

    let frac = ["--v", "1,0", "--p", "3,2"];
    let mut eq = vec!["gtilde", "eq", "--matrix", &mat];
    eq.extend(frac);
    eq.extend(["--w", "1,1", "--q", "-1,1"]);
    assert_eq!(text(&eq), "true\n");
    assert_eq!(json(&eq)["equal"], true);

    let mut res = vec!["gtilde", "res", "--matrix", &mat];
    res.extend(frac);
    res.extend(["--bit", "0"]);
    assert_eq!(text(&res), "(0,1) / (3 + 2x)\noutput: 1\n");
    assert_eq!(json(&res)["output"], 1);

    let mut add = vec!["gtilde", "add", "--matrix", &mat];
    add.extend(frac);
    add.extend(["--w", "1,0", "--q", "1"]);
    assert_eq!(text(&add), "(4,2) / (3 + 2x)\n");
}

#[test]
fn analysis_commands() {
    let out = text(&["scc", "--matrix", &fixture_path("a.mat")]);
    assert!(out.contains("single_nonidentity_scc: true\n"));
    assert!(out.contains("witness: 1 0 1 1 1\n"));
    assert_eq!(text(&["scc", "--aut", &fixture_path("a32.aut")]), "component: f f0 f1\n");

    assert_eq!(text(&["pathpoly", "--word", "1n0"]), "0 -1 1 1\n");
    assert_eq!(ints(&json(&["pathpoly", "--word", "1n0"])["coefficients"]), [0, -1, 1, 1]);

    assert_eq!(text(&["witness", "--chi-star", "2,2,1"]), "1 0 1 1 1\n");
    assert_eq!(text(&["witness", "--chi-star", "-2,1", "--max-degree", "10"]), "none\n");
    assert_eq!(json(&["witness", "--chi-star", "-2,1", "--max-degree", "10"])["witness"], Value::Null);

    let out = text(&["infer", "--aut", &fixture_path("a32.aut")]);
    assert!(out.starts_with("chi: 1/2 + x + x^2\ndim 2\n-1 1\n-1/2 0\np: 3 + 2x\n"));
    let matches = json(&["infer", "--aut", &fixture_path("a32.aut")])["matches"].clone();
    assert_eq!(matches.as_array().unwrap().len(), 1);
    assert_eq!(matches[0]["chi"], serde_json::json!(["1/2", "1", "1"]));
}

#[test]
fn exit_codes() {
    assert_eq!(abelaut(&["--help"]).0, 0);
    assert_eq!(abelaut(&["--version"]).0, 0);
    assert_eq!(abelaut(&["frobnicate"]).0, 2);
    assert_eq!(abelaut(&["transduce", "--aut", "x", "--state", "x", "--word", "01", "--bogus"]).0, 2);
    let (code, _, err) = abelaut(&["transduce", "--aut", "/nonexistent.aut", "--state", "x", "--word", "0"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: "));
    let (code, _, err) = abelaut(&["transduce", "--aut", &fixture_path("xyz.aut"), "--state", "w", "--word", "0"]);
    assert_eq!(code, 1);
    assert!(err.contains('w'));
}

#[test]
fn binary_runs() {
    let output = Command::new(env!("CARGO_BIN_EXE_abelaut"))
        .args(["transduce", "--aut", &fixture_path("xyz.aut"), "--state", "x", "--word", "0110"])
        .output()
        .unwrap();
    assert!(output.status.success());
    assert_eq!(String::from_utf8(output.stdout).unwrap(), "1100\n");
    let output = Command::new(env!("CARGO_BIN_EXE_abelaut")).arg("nope").output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}
