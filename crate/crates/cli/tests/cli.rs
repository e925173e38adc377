use std::path::PathBuf;
use std::process::Command;

use augcat_cli::{run, Outcome};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn augcat(args: &[&str]) -> Outcome {
    run(std::iter::once("augcat").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut argv = vec!["--json"];
    argv.extend_from_slice(args);
    let out = augcat(&argv);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn augs_on_the_unknot() {
    let f = fixture("unknot_1.json");
    let out = augcat(&["augs", &f]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let doc = json(&["augs", &f]);
    assert_eq!(doc["status"], "pass");
    assert_eq!(doc["tables"]["count"], 1);
}

#[test]
fn trefoil_over_f4_has_more_augmentations() {
    let f = fixture("trefoil_4.json");
    assert_eq!(json(&["augs", &f])["tables"]["count"], 5);
    let f4 = json(&["augs", &f, "--field", "2"]);
    assert!(f4["tables"]["count"].as_u64().unwrap() > 5, "{f4}");
}

#[test]
fn compare_passes_on_trefoil() {
    let doc = json(&["compare", &fixture("trefoil_4.json")]);
    assert_eq!(doc["command"], "compare");
    assert_eq!(doc["status"], "pass");
    assert_eq!(doc["findings"], serde_json::json!([]));
}

#[test]
fn too_few_copies() {
    let out = augcat(&["loc-hom", &fixture("unknot_2.json"), "--source", "0", "--target", "0"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("insufficient-copies"), "{}", out.stdout);
    assert_eq!(augcat(&["compare", &fixture("unknot_1.json")]).code, 1);
}

#[test]
fn loc_hom_reports_stable_dims() {
    let doc = json(&["loc-hom", &fixture("trefoil_4.json"), "--source", "0", "--target", "0"]);
    assert_eq!(doc["status"], "pass", "{doc}");
    let text = doc.to_string();
    assert!(text.contains("witness"), "{text}");
}

#[test]
fn parse_errors_exit_two() {
    for name in ["undeclared_chord", "reducible_modulus", "version_2", "unknown_key"] {
        let f = fixture(&format!("broken/{name}.json"));
        let out = augcat(&["check", &f]);
        assert_eq!(out.code, 2, "{name}: {}", out.stdout);
        assert!(out.stderr.contains("line"), "{name}: {}", out.stderr);
        assert_eq!(json(&["check", &f])["status"], "error");
    }
}

#[test]
fn structural_violations_exit_one() {
    for name in [
        "degree_mismatch",
        "off_diagonal_unit",
        "omitted_minimum",
        "bad_minima",
        "relabel_asymmetric",
        "axiom3",
    ] {
        let out = augcat(&["check", &fixture(&format!("broken/{name}.json"))]);
        assert_eq!(out.code, 1, "{name}: {}", out.stdout);
    }
}

#[test]
fn every_command_passes_on_the_unknot() {
    let f = fixture("unknot_4.json");
    for cmd in [
        &["check"][..],
        &["twist", "--aug", "0"],
        &["ainf"],
        &["w-check"],
        &["h0"],
        &["compare"],
    ] {
        let mut argv = cmd.to_vec();
        argv.push(&f);
        let out = augcat(&argv);
        assert_eq!(out.code, 0, "{cmd:?}: {}{}", out.stdout, out.stderr);
    }
}

#[test]
fn json_is_byte_stable() {
    let f = fixture("stabilised_unknot_4.json");
    for cmd in ["h0", "compare", "augs"] {
        let a = augcat(&["--json", cmd, &f]).stdout;
        let b = augcat(&["--json", cmd, &f]).stdout;
        assert_eq!(a, b, "{cmd}");
    }
}

#[test]
fn seeded_ainf_is_reproducible() {
    let f = fixture("unknot_2.json");
    let a = augcat(&["--json", "--seed", "7", "ainf", &f]);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout, augcat(&["--json", "--seed", "7", "ainf", &f]).stdout);
}

#[test]
fn functor_check_on_families() {
    let cases = [
        ("unknot_4.json", "stabilised_unknot_4.json", "stabilisation_4.json"),
        ("trefoil_4.json", "trefoil_psi_4.json", "elementary_4.json"),
    ];
    for (a, b, f) in cases {
        let out = augcat(&[
            "functor-check",
            &fixture(a),
            &fixture(b),
            "--family",
            &fixture(&format!("families/{f}")),
        ]);
        assert_eq!(out.code, 0, "{f}: {}", out.stdout);
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(augcat(&["bogus"]).code, 2);
    assert_eq!(augcat(&["augs", &fixture("no_such_file.json")]).code, 2);
    assert_eq!(
        augcat(&["loc-hom", &fixture("trefoil_4.json"), "--source", "9", "--target", "0"]).code,
        2
    );
    assert_eq!(augcat(&["compare", &fixture("unknot_explicit_4.json")]).code, 2);
}

#[test]
fn binary_matches_library() {
    let f = fixture("unknot_1.json");
    let out = Command::new(env!("CARGO_BIN_EXE_augcat"))
        .args(["--json", "augs", &f])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        augcat(&["--json", "augs", &f]).stdout
    );
    let out = Command::new(env!("CARGO_BIN_EXE_augcat"))
        .args(["check", &fixture("broken/version_2.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
