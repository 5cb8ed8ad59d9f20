use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn equising_with(args: &[&str], env: &[(&str, &str)], stdin: &str) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_equising"));
    cmd.args(args)
        .env_remove("EQUISING_MAX_DEGREE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn equising(args: &[&str]) -> Run {
    equising_with(args, &[], "")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let r = equising(&full);
    let v = serde_json::from_str(r.stdout.trim()).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", r.stdout));
    (r.code, v)
}

const CORPUS: &[&str] = &[
    "2 3",
    "2 29",
    "3 7",
    "5 8",
    "4 6 13",
    "4 6 25",
    "4 10 21",
    "6 9 19",
    "8 12 26 53",
    "8 12 50 101",
];

#[test]
fn canonical_of_the_four_level_example() {
    let r = equising(&["canonical", "8", "12", "50", "101"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "((y^2-x^3)^2-x^11*y)^2-x^19*(y^2-x^3)");
}

#[test]
fn semigroup_of_canonical_round_trips() {
    for gens in CORPUS {
        let args: Vec<&str> = gens.split(' ').collect();
        let mut canon = vec!["canonical"];
        canon.extend(&args);
        let poly = equising(&canon).stdout.trim().to_string();
        let back = equising(&["semigroup-of", &poly]);
        assert_eq!(back.code, 0, "{gens}: {}", back.stderr);
        assert_eq!(back.stdout.trim(), *gens);
    }
}

#[test]
fn milnor_of_canonical_matches_conductor() {
    for gens in CORPUS {
        let args: Vec<&str> = gens.split(' ').collect();
        let mut v = vec!["validate"];
        v.extend(&args);
        let (code, report) = json(&v);
        assert_eq!(code, 0);
        let mut canon = vec!["canonical"];
        canon.extend(&args);
        let poly = equising(&canon).stdout.trim().to_string();
        let (code, mu) = json(&["milnor", &poly]);
        assert_eq!(code, 0);
        assert_eq!(mu["milnor"], report["conductor"], "{gens}");
    }
}

#[test]
fn enumerate_example() {
    let (code, v) = json(&["enumerate", "28", "--with-canonical"]);
    assert_eq!(code, 0);
    assert_eq!(v["milnor"], 28);
    let classes = v["classes"].as_array().unwrap();
    let got: Vec<(String, String)> = classes
        .iter()
        .map(|c| (c["generators"].to_string(), c["canonical"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(
        got,
        [
            ("[2,29]", "y^2-x^29"),
            ("[4,6,25]", "(y^2-x^3)^2-x^11*y"),
            ("[4,10,21]", "(y^2-x^5)^2-x^8*y"),
            ("[5,8]", "y^5-x^8"),
        ]
        .map(|(a, b)| (a.to_string(), b.to_string()))
    );
    assert_eq!(classes[0]["puiseuxPairs"].to_string(), "[[29,2]]");
    let (_, plain) = json(&["enumerate", "28"]);
    assert!(plain["classes"][0].get("canonical").is_none());
    let (code, odd) = json(&["enumerate", "7"]);
    assert_eq!((code, odd["classes"].as_array().unwrap().len()), (0, 0));
}

#[test]
fn exit_codes() {
    let r = equising(&["irreducible", "y^2-x^2"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("condition 2 fails at k=1"));
    assert_eq!(equising(&["irreducible", "y^5-x^8"]).code, 0);
    assert_eq!(equising(&["validate", "4", "6"]).code, 1);
    assert_eq!(equising(&["validate", "4", "-6"]).code, 1);
    assert_eq!(equising(&["validate", "4", "six"]).code, 2);
    assert_eq!(equising(&["canonical", "4", "6"]).code, 1);
    assert_eq!(equising(&["milnor", "y^2-x^2"]).code, 1);
    assert_eq!(equising(&["milnor", "y^2-+"]).code, 2);
    assert_eq!(equising(&["milnor", "2y^2-x^3"]).code, 2);
    assert_eq!(equising(&["frobnicate"]).code, 2);
    assert_eq!(equising(&["validate"]).code, 2);
    assert_eq!(equising(&["--help"]).code, 0);
}

#[test]
fn json_on_every_error_path() {
    for args in [
        &["validate", "4", "six"][..],
        &["canonical", "4", "6"],
        &["milnor", "y^2-x^2"],
        &["milnor", "y^2-+"],
        &["semigroup-of", "missing-file.poly"],
        &["frobnicate"],
        &["sample", "2", "3", "--seed", "minus"],
    ] {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let r = equising(&full);
        assert_ne!(r.code, 0, "{args:?}");
        let v: Value = serde_json::from_str(r.stdout.trim()).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(v["error"].is_string(), "{args:?}");
        assert_eq!(v["exitCode"], r.code);
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn validate_json_report() {
    let (code, v) = json(&["validate", "8,12,50,101"]);
    assert_eq!(code, 0);
    assert_eq!(v["conductor"], 156);
    assert_eq!(v["m"].to_string(), "[12,38,39]");
    let (code, v) = json(&["validate", "4", "6"]);
    assert_eq!(code, 1);
    assert_eq!(v["valid"], false);
    assert_eq!(v["failures"].to_string(), r#"["gcd-not-one"]"#);
}

#[test]
fn polynomial_sources() {
    let r = equising_with(&["milnor", "-"], &[], "(y^2-x^3)^2-x^11*y\n");
    assert_eq!((r.code, r.stdout.trim()), (0, "28"));
    let dir = std::env::temp_dir().join(format!("equising-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("curve.poly");
    std::fs::write(&file, "y^5 - x^8\n").unwrap();
    let r = equising(&["semigroup-of", file.to_str().unwrap()]);
    assert_eq!((r.code, r.stdout.trim()), (0, "5 8"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn degree_limit_from_environment() {
    let r = equising_with(&["milnor", "y^4-x^5"], &[("EQUISING_MAX_DEGREE", "3")], "");
    assert_eq!(r.code, 2);
    let r = equising_with(&["milnor", "y^4-x^5"], &[("EQUISING_MAX_DEGREE", "4")], "");
    assert_eq!((r.code, r.stdout.trim()), (0, "12"));
    let r = equising_with(&["milnor", "y^4-x^5"], &[("EQUISING_MAX_DEGREE", "lots")], "");
    assert_eq!(r.code, 2);
}

#[test]
fn sampling_is_seeded() {
    let a = equising(&["sample", "4", "6", "13", "--seed", "1", "--terms", "2"]);
    let b = equising(&["sample", "4", "6", "13", "--seed", "1", "--terms", "2"]);
    let default_seed = equising(&["sample", "4", "6", "13", "--terms", "2"]);
    let zero_seed = equising(&["sample", "4", "6", "13", "--seed", "0", "--terms", "2"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(default_seed.stdout, zero_seed.stdout);
    let back = equising(&["semigroup-of", a.stdout.trim()]);
    assert_eq!(back.stdout.trim(), "4 6 13");
}

#[test]
fn other_commands() {
    let (_, v) = json(&["intersect", "y^2-x^3", "y"]);
    assert_eq!(v["intersection"], 3);
    let (_, v) = json(&["intersect", "y^2-x^3", "y^2-x^3"]);
    assert_eq!(v["intersection"], "inf");
    let r = equising(&["puiseux", "8", "12", "50", "101"]);
    assert_eq!(r.stdout.trim(), "(3,2) (19,2) (39,2)");
    let (code, v) = json(&["generic", "2", "3", "--xdeg-bound", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["levels"][0]["constraints"][0]["rhs"], 6);
    assert_eq!(v["monomials"][0]["thetas"].to_string(), "[[4],[5],[6]]");
    let r = equising(&["generic", "8", "12", "50", "101"]);
    assert!(r.stdout.contains("8*t0+12*t1+50*t2 > 202"));
    let (code, v) = json(&["irreducible", "(y+x)^2-x^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["normalized"], true);
}
