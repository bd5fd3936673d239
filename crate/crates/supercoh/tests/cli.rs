use std::io::Write;

use serde_json::Value;
use supercoh::cli::run;
use supercoh::formats::{complex_from_value, complex_to_json, ComplexJson};
use supercoh_core::simplicial::corpus;

fn sc(args: &[&str]) -> supercoh::cli::Outcome {
    let mut full = vec!["supercoh"];
    full.extend_from_slice(args);
    run(full)
}

#[test]
fn rp2_ko_group_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rp2.json");
    let json = serde_json::to_string(&ComplexJson::of(&corpus::projective_plane())).unwrap();
    std::fs::File::create(&path).unwrap().write_all(json.as_bytes()).unwrap();
    let out = sc(&["brauer", "--complex", path.to_str().unwrap(), "--variant", "ko", "--op", "group"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "Z/8 ⊕ Z/4\n");
}

#[test]
fn point_cohomology_is_z() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("point.json");
    std::fs::write(&path, r#"{"vertex_count": 1, "maximal_simplices": [[0]]}"#).unwrap();
    let out = sc(&["cohomology", "--complex", path.to_str().unwrap(), "--deg", "0", "--mod", "0"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "Z\n"));
}

#[test]
fn corpus_round_trips_through_json() {
    for (name, x) in corpus::all() {
        let text = serde_json::to_string(&complex_to_json(&x)).unwrap();
        let back = complex_from_value(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(*back, *x, "{name}");
        assert_eq!(back.maximal_simplices(), x.maximal_simplices(), "{name}");
    }
}

#[test]
fn reports_are_deterministic() {
    let runs = [
        vec!["--json", "group", "--complex", "@klein", "--variant", "ko"],
        vec!["cohomology", "--complex", "@rp2xrp2", "--deg", "3", "--generators"],
        vec!["verify", "--suite", "all", "--samples", "3"],
        vec!["--json", "classify", "--op", "catalog"],
    ];
    for args in runs {
        let (a, b) = (sc(&args), sc(&args));
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(sc(&["frobnicate"]).code, 2);
    assert_eq!(sc(&["cohomology", "--complex", "{not json", "--deg", "0"]).code, 2);
    assert_eq!(sc(&["cohomology", "--complex", "@nowhere", "--deg", "0"]).code, 2);
    assert_eq!(sc(&["group", "--complex", "@rp2", "--variant", "kr"]).code, 2);
    // Invalid simplex and out-of-range cochain lengths are domain errors.
    let bad = r#"{"vertex_count": 2, "maximal_simplices": [[1, 0]]}"#;
    assert_eq!(sc(&["cohomology", "--complex", bad, "--deg", "0"]).code, 1);
    let short = r#"{"degree": 1, "modulus": 2, "values": [1]}"#;
    assert_eq!(sc(&["operations", "--complex", "@rp2", "--op", "class", "--x", short]).code, 1);
    assert_eq!(sc(&["--help"]).code, 0);
}

#[test]
fn cap_precedence() {
    // Only the flag is exercised here; the environment variable is covered
    // by the binary test to avoid mutating this process's environment.
    let out = sc(&["classify", "--pi0", "Z/8", "--pi1", "Z/2", "--cap", "1"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("exceeds cap"));
    let out = sc(&["classify", "--pi0", "Z/8", "--pi1", "Z/2", "--cap", "2"]);
    assert_eq!(out.code, 0);
}

#[test]
fn environment_cap_reaches_the_binary() {
    let bin = env!("CARGO_BIN_EXE_supercoh");
    let run = |cap: Option<&str>, extra: &[&str]| {
        let mut cmd = std::process::Command::new(bin);
        cmd.args(["classify", "--pi0", "Z/2 + Z/2", "--pi1", "Z/2"]).args(extra);
        match cap {
            Some(c) => cmd.env("SUPERCOH_CAP", c),
            None => cmd.env_remove("SUPERCOH_CAP"),
        };
        cmd.output().unwrap().status.code().unwrap()
    };
    assert_eq!(run(None, &[]), 0);
    assert_eq!(run(Some("3"), &[]), 1);
    assert_eq!(run(Some("3"), &["--cap", "4"]), 0);
    assert_eq!(run(Some("many"), &[]), 2);
}

#[test]
fn brauer_elements_in_both_encodings() {
    let by_coords = r#"{"coords": {"b": [1]}}"#;
    let out = sc(&["order", "--complex", "@rp2", "--variant", "ko", "--x", by_coords]);
    assert_eq!(out.stdout, "4\n");
    let json = sc(&["--json", "brauer", "--complex", "@rp2", "--variant", "ko", "--op", "add", "--x", by_coords, "--y", by_coords]);
    let v: Value = serde_json::from_str(&json.stdout).unwrap();
    let element = serde_json::to_string(&v["element"]).unwrap();
    // w ⊞ w has order 2 in the c slot.
    let out = sc(&["order", "--complex", "@rp2", "--variant", "ko", "--x", &element]);
    assert_eq!(out.stdout, "2\n");
    let out = sc(&["order", "--complex", "@rp2", "--variant", "ko", "--x", by_coords, "--cap", "3"]);
    assert_eq!(out.stdout, "above cap\n");
}

#[test]
fn operations_on_generators() {
    let out = sc(&["--json", "operations", "--complex", "@rp2", "--op", "bockstein", "--x", "gen:1:2:0"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["class"]["group"], "Z/2");
    assert_eq!(v["class"]["coordinates"], serde_json::json!([1]));
    let out = sc(&["operations", "--complex", "@t2", "--op", "cup", "--x", "gen:1:2:0", "--y", "gen:1:2:1"]);
    assert!(out.stdout.ends_with("class: [1] in Z/2\n"), "{}", out.stdout);
    assert_eq!(sc(&["operations", "--complex", "@t2", "--op", "cup", "--x", "gen:1:2:7", "--y", "gen:1:2:0"]).code, 1);
}

#[test]
fn dsv_verbs() {
    let odd = r#"{"field": "F5", "dim0": 0, "dim1": 1}"#;
    let out = sc(&["dsv", "--op", "swap", "--v", odd, "--w", odd]);
    assert_eq!(out.stdout, "swap is multiplication by 4\n");
    let acyclic = r#"{"field": "Q", "dim0": 1, "dim1": 1, "d0": [[1]], "d1": [[0]]}"#;
    assert_eq!(sc(&["dsv", "--op", "euler", "--v", acyclic]).stdout, "0\n");
    let chain = r#"{"field": "Q", "lowest": 0, "dims": [1, 2, 1], "boundaries": [[[1, 0]], [[0], [1]]]}"#;
    let out = sc(&["dsv", "--op", "epsilon", "--chain", chain]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("homology (0, 0)"), "{}", out.stdout);
    let not_square_zero = r#"{"field": "Q", "dim0": 1, "dim1": 1, "d0": [[1]], "d1": [[1]]}"#;
    assert_eq!(sc(&["dsv", "--op", "homology", "--v", not_square_zero]).code, 1);
}

#[test]
fn superline_and_classify_verbs() {
    assert_eq!(sc(&["superline", "--complex", "@point", "--op", "sign", "--x", "odd", "--y", "odd"]).stdout, "-1\n");
    assert_eq!(sc(&["superline", "--complex", "@rp2", "--flavor", "complex", "--op", "group"]).stdout, "Z/2 ⊕ Z/2\n");
    assert_eq!(sc(&["classify", "--op", "equivalent", "--d1", "cAlg_R", "--d2", r#"{"pi0": "Z/8", "pi1": [2], "q": [[1]]}"#]).stdout, "true\n");
    assert_eq!(sc(&["classify", "--op", "compatible", "--d1", "sphere", "--d2", "KO", "--phi0", "[[1]]", "--phi1", "[[1]]"]).stdout, "true\n");
}

#[test]
fn verify_table() {
    let out = sc(&["verify", "--samples", "2"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 1 + supercoh::verify::SUITES.len());
    assert!(lines[1..].iter().all(|l| l.ends_with("pass")));
    assert_eq!(sc(&["verify", "--suite", "nonsense"]).code, 2);
}
