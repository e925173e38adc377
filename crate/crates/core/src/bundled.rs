//! The single-copy DGAs behind the bundled fixtures and the step lists of the bundled
//! morphism families.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::dga::{pattern_name, RawFactor, RawTerm, SemiFreeDga};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::format::{serialize_family, serialize_system};
use crate::mcopy::{consistent_system, m_copy, CopyNames};
use crate::morphism::{elementary_auto, FamilySpec, Step};
use crate::poly::Poly;
use crate::system::DgaSystem;
use crate::Label;

/// Standard unknot: one chord `a` of degree 1, `∂a = 1 + t`.
pub fn unknot() -> SemiFreeDga {
    SemiFreeDga::builder(Field::F2)
        .component("t", 1, 1)
        .chord("a", 1, 1, 1)
        .diff("a", "1 + t")
        .build()
        .expect("unknot")
}

/// Right-handed trefoil.
pub fn trefoil() -> SemiFreeDga {
    SemiFreeDga::builder(Field::F2)
        .component("t", 1, 1)
        .chord("a1", 1, 1, 1)
        .chord("a2", 1, 1, 1)
        .chord("b1", 0, 1, 1)
        .chord("b2", 0, 1, 1)
        .chord("b3", 0, 1, 1)
        .diff("a1", "t + b1 + b3 + b1*b2*b3")
        .diff("a2", "1 + b1 + b3 + b3*b2*b1")
        .build()
        .expect("trefoil")
}

/// The unknot with a cancelling pair `∂e1 = e2`.
pub fn stabilised_unknot() -> SemiFreeDga {
    SemiFreeDga::builder(Field::F2)
        .component("t", 1, 1)
        .chord("a", 1, 1, 1)
        .chord("e1", 1, 1, 1)
        .chord("e2", 0, 1, 1)
        .diff("a", "1 + t")
        .diff("e1", "e2")
        .build()
        .expect("stabilised unknot")
}

/// The trefoil conjugated by `b1 ↦ b1 + b3`.
pub fn trefoil_psi() -> SemiFreeDga {
    SemiFreeDga::builder(Field::F2)
        .component("t", 1, 1)
        .chord("a1", 1, 1, 1)
        .chord("a2", 1, 1, 1)
        .chord("b1", 0, 1, 1)
        .chord("b2", 0, 1, 1)
        .chord("b3", 0, 1, 1)
        .diff("a1", "t + b1 + b1*b2*b3 + b3*b2*b3")
        .diff("a2", "1 + b1 + b3*b2*b1 + b3*b2*b3")
        .build()
        .expect("trefoil psi")
}

fn chord_term(name: String) -> RawTerm {
    RawTerm {
        coef: "1".into(),
        word: vec![RawFactor::Chord(name)],
    }
}

/// Steps taking the `m`-copy of [`unknot`] to the `m`-copy of [`stabilised_unknot`]:
/// stabilise every `e1[i,j], e2[i,j]`, then `e2[i,j] ↦ e2[i,j] + (Y E1 + E1 Y)_{ij}`.
pub fn stabilisation_family(copies: Label) -> Result<FamilySpec> {
    let mut spec = FamilySpec::new();
    for m in 1..=copies {
        let target = m_copy(&stabilised_unknot(), m, &CopyNames::default())?;
        let mut steps = Vec::new();
        for i in 1..=m {
            for j in 1..=m {
                steps.push(Step::Stabilise {
                    e1: pattern_name("e1", i, j),
                    e2: pattern_name("e2", i, j),
                    degree: 1,
                    c: i,
                    r: j,
                });
            }
        }
        for i in 1..=m {
            for j in 1..=m {
                let e1 = target.id_or_err(&pattern_name("e1", i, j))?;
                let e2 = target.id_or_err(&pattern_name("e2", i, j))?;
                let mut u = target.differential(e1).clone();
                u.add_term(crate::poly::Word::chord(e2), crate::field::Scalar::ONE);
                if u.is_zero() {
                    continue;
                }
                steps.push(Step::Elementary {
                    chord: pattern_name("e2", i, j),
                    x: vec![],
                    y: vec![],
                    u: target.raw_terms(&u),
                });
            }
        }
        spec.insert((1..=m).collect(), steps);
    }
    Ok(spec)
}

/// Steps `b1[i,j] ↦ b1[i,j] + b3[i,j]` taking the `m`-copy of [`trefoil`] to that of
/// [`trefoil_psi`].
pub fn elementary_family(copies: Label) -> FamilySpec {
    let mut spec = FamilySpec::new();
    for m in 1..=copies {
        let mut steps = Vec::new();
        for i in 1..=m {
            for j in 1..=m {
                steps.push(Step::Elementary {
                    chord: pattern_name("b1", i, j),
                    x: vec![],
                    y: vec![],
                    u: vec![chord_term(pattern_name("b3", i, j))],
                });
            }
        }
        spec.insert((1..=m).collect(), steps);
    }
    spec
}

/// The explicit-mode system listing every subset of a system separately.
pub fn explicit_from(sys: &DgaSystem) -> Result<DgaSystem> {
    let n = sys.copies;
    let mut dgas = BTreeMap::new();
    for mask in 1u32..(1 << n) {
        let p: Vec<Label> = (1..=n).filter(|l| mask & (1 << (l - 1)) != 0).collect();
        dgas.insert(p.clone(), (*sys.dga(&p)?).clone());
    }
    let mut minima = BTreeMap::new();
    for i in 1..n {
        minima.insert(i, sys.minima_names(i)?);
    }
    DgaSystem::explicit(n, dgas, minima, BTreeMap::new())
}

/// The 3-copy unknot system with `A^{[1..3]}` conjugated by `x[i,i+1] ↦ x[i,i+1] + a[i,i]*y[i,i+1]`.
/// The result still has `∂² = 0` but its restriction to `{i, i+1}` no longer matches `A^{[1,2]}`.
fn twisted_unknot_system(i: Label) -> Result<DgaSystem> {
    let names = CopyNames::default();
    let three = Arc::new(m_copy(&unknot(), 3, &names)?);
    let q = three.id_or_err(&pattern_name("x", i, i + 1))?;
    let u = three.parse_poly(&format!("{}*{}", pattern_name("a", i, i), pattern_name("y", i, i + 1)))?;
    let (f, _) = elementary_auto(&three, q, &Poly::one(), &Poly::one(), &u, None)?;
    let by_size = vec![
        m_copy(&unknot(), 1, &names)?,
        m_copy(&unknot(), 2, &names)?,
        (*f.target).clone(),
    ];
    DgaSystem::consistent(by_size, vec![names.y])
}

fn edit(text: &str, f: impl FnOnce(&mut Value)) -> String {
    let mut v: Value = serde_json::from_str(text).expect("generated fixtures are JSON");
    f(&mut v);
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn fixture_error(e: crate::format::FormatError) -> Error {
    Error::Contract(e.to_string())
}

/// Every bundled fixture as `(relative path, contents)`.
pub fn fixture_files() -> Result<Vec<(String, String)>> {
    let names = CopyNames::default();
    let mut out = Vec::new();
    let mut system = |path: &str, sys: &DgaSystem| -> Result<String> {
        let text = serialize_system(sys).map_err(fixture_error)?;
        out.push((path.to_string(), text.clone()));
        Ok(text)
    };
    let mut unknots = BTreeMap::new();
    for m in 1..=5 {
        let sys = consistent_system(&unknot(), m, &names)?;
        unknots.insert(m, system(&format!("unknot_{m}.json"), &sys)?);
    }
    system("trefoil_4.json", &consistent_system(&trefoil(), 4, &names)?)?;
    system("trefoil_psi_4.json", &consistent_system(&trefoil_psi(), 4, &names)?)?;
    system(
        "stabilised_unknot_4.json",
        &consistent_system(&stabilised_unknot(), 4, &names)?,
    )?;
    let explicit = system(
        "unknot_explicit_4.json",
        &explicit_from(&consistent_system(&unknot(), 4, &names)?)?,
    )?;
    system("broken/relabel_asymmetric.json", &twisted_unknot_system(2)?)?;
    system("broken/axiom3.json", &twisted_unknot_system(1)?)?;

    out.push((
        "families/stabilisation_4.json".into(),
        serialize_family(&stabilisation_family(4)?),
    ));
    out.push((
        "families/elementary_4.json".into(),
        serialize_family(&elementary_family(4)),
    ));

    let broken = |v: &mut Vec<(String, String)>, path: &str, text: String| v.push((format!("broken/{path}"), text));
    broken(
        &mut out,
        "degree_mismatch.json",
        edit(&unknots[&1], |v| v["generators"][0]["degree"] = json!(2)),
    );
    broken(
        &mut out,
        "off_diagonal_unit.json",
        edit(&unknots[&2], |v| {
            let terms = v["differentials"][1]["map"]["x[1,2]"]
                .as_array_mut()
                .expect("x[1,2] has terms");
            terms.push(json!({"coef": "1", "word": []}));
        }),
    );
    broken(
        &mut out,
        "undeclared_chord.json",
        edit(&unknots[&1], |v| {
            v["differentials"][0]["map"]["a[1,1]"]
                .as_array_mut()
                .expect("a[1,1] has terms")
                .push(json!({"coef": "1", "word": [{"chord": "b[1,1]"}]}));
        }),
    );
    broken(
        &mut out,
        "reducible_modulus.json",
        edit(&unknots[&1], |v| v["field"] = json!({"degree": 2, "modulus": "101"})),
    );
    broken(
        &mut out,
        "omitted_minimum.json",
        edit(&explicit, |v| {
            v["minima"]
                .as_array_mut()
                .expect("minima")
                .retain(|m| m["pair"] != json!(2));
        }),
    );
    broken(
        &mut out,
        "bad_minima.json",
        edit(&unknots[&3], |v| v["minima"] = json!([{"base": "x"}])),
    );
    broken(
        &mut out,
        "version_2.json",
        edit(&unknots[&1], |v| v["version"] = json!(2)),
    );
    broken(
        &mut out,
        "unknown_key.json",
        edit(&unknots[&1], |v| v["morphisms"] = json!([])),
    );
    Ok(out)
}
