mod common;

use augcat_core::bundled::fixture_files;
use augcat_core::format::{parse_family, parse_system, serialize_family, serialize_system, ErrorKind};
use common::{all_bundled, fixture_path};

fn read(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

#[test]
fn fixtures_are_current() {
    for (path, text) in fixture_files().unwrap() {
        assert_eq!(read(&path), text, "{path} is stale; rerun the gen_fixtures example");
    }
}

#[test]
fn round_trip_is_canonical() {
    for name in all_bundled() {
        let text = read(name);
        let sys = parse_system(&text).unwrap();
        let again = serialize_system(&sys).unwrap();
        assert_eq!(again, text, "{name}");
        let back = parse_system(&again).unwrap();
        for ((p, a), (q, b)) in sys.stored().zip(back.stored()) {
            assert_eq!(p, q);
            assert_eq!(a.chords(), b.chords());
            assert!(a.diff_by_name(b).is_none());
        }
    }
    for name in ["families/stabilisation_4.json", "families/elementary_4.json"] {
        let text = read(name);
        assert_eq!(serialize_family(&parse_family(&text).unwrap()), text);
    }
}

#[test]
fn parse_errors_are_located() {
    let cases = [
        (
            "broken/undeclared_chord.json",
            ErrorKind::Semantic,
            r#"differentials[0].map["a[1,1]"][2]"#,
            "b[1,1]",
        ),
        (
            "broken/reducible_modulus.json",
            ErrorKind::Semantic,
            "field.modulus",
            "reducible",
        ),
        ("broken/version_2.json", ErrorKind::Version, "version", "version 2"),
        (
            "broken/unknown_key.json",
            ErrorKind::Syntax,
            "morphisms",
            "unknown field",
        ),
    ];
    for (name, kind, path, needle) in cases {
        let text = read(name);
        let e = parse_system(&text).unwrap_err();
        assert_eq!(e.kind, kind, "{name}: {e}");
        assert_eq!(e.path, path, "{name}: {e}");
        assert!(e.message.contains(needle), "{name}: {e}");
        let line = text.lines().nth(e.line - 1).unwrap();
        assert!(e.column >= 1 && e.column <= line.chars().count() + 1, "{name}: {e}");
    }
}

#[test]
fn term_error_points_at_the_term() {
    let text = read("broken/undeclared_chord.json");
    let e = parse_system(&text).unwrap_err();
    let line: String = text
        .lines()
        .nth(e.line - 1)
        .unwrap()
        .chars()
        .skip(e.column - 1)
        .collect();
    assert!(line.starts_with('{'), "{line}");
}

#[test]
fn syntax_errors_carry_positions() {
    let e = parse_system("{\n  \"version\": 1,\n  \"field\": {\"degree\": 1,}\n}").unwrap_err();
    assert_eq!(e.kind, ErrorKind::Syntax);
    assert_eq!(e.line, 3);
    let e =
        parse_system(r#"{"version": 1, "field": {"degree": "one"}, "mode": "consistent", "copies": 1, "minima": []}"#)
            .unwrap_err();
    assert_eq!(e.path, "field.degree");
}

#[test]
fn structural_violations_parse_but_fail_checks() {
    let cases = [
        ("broken/degree_mismatch.json", "degree"),
        ("broken/off_diagonal_unit.json", "link-grading"),
        ("broken/omitted_minimum.json", "minima"),
        ("broken/bad_minima.json", "minima"),
        ("broken/relabel_asymmetric.json", "bijection"),
        ("broken/axiom3.json", "axiom-3"),
    ];
    for (name, code) in cases {
        let r = parse_system(&read(name)).unwrap().check();
        assert!(r.has(code), "{name}: {r}");
    }
}

#[test]
fn duplicate_names_rejected() {
    let text = read("unknot_explicit_4.json").replacen("\"name\": \"y[1,2]\"", "\"name\": \"x[1,2]\"", 1);
    let e = parse_system(&text).unwrap_err();
    assert!(e.message.contains("duplicate"), "{e}");
}
