#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use augcat_core::augment::Augmentation;
use augcat_core::dga::SemiFreeDga;
use augcat_core::field::{Field, Scalar};
use augcat_core::format::{load_family, load_system};
use augcat_core::morphism::FamilySpec;
use augcat_core::poly::{Poly, Word};
use augcat_core::system::DgaSystem;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> DgaSystem {
    load_system(&fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn family(name: &str) -> FamilySpec {
    load_family(&fixture_path(&format!("families/{name}"))).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub const CONSISTENT: [&str; 8] = [
    "unknot_1.json",
    "unknot_2.json",
    "unknot_3.json",
    "unknot_4.json",
    "unknot_5.json",
    "trefoil_4.json",
    "trefoil_psi_4.json",
    "stabilised_unknot_4.json",
];

pub const EXPLICIT: [&str; 1] = ["unknot_explicit_4.json"];

/// Systems with enough copies for the localisation stopping rule.
pub const LOCALISABLE: [&str; 5] = [
    "unknot_4.json",
    "unknot_5.json",
    "trefoil_4.json",
    "trefoil_psi_4.json",
    "stabilised_unknot_4.json",
];

pub fn all_bundled() -> Vec<&'static str> {
    CONSISTENT.iter().chain(EXPLICIT.iter()).copied().collect()
}

/// Schoolbook carry-less product reduced modulo `modulus`.
pub fn naive_mul(a: u32, b: u32, modulus: u32, degree: u32) -> u32 {
    let mut prod: u64 = 0;
    for i in 0..32 {
        if b >> i & 1 == 1 {
            prod ^= (a as u64) << i;
        }
    }
    for bit in (degree..64).rev() {
        if prod >> bit & 1 == 1 {
            prod ^= (modulus as u64) << (bit - degree);
        }
    }
    prod as u32
}

fn naive_inv(field: &Field, a: Scalar) -> Scalar {
    field
        .elements()
        .find(|&b| naive_mul(a.bits(), b.bits(), field.modulus(), field.degree()) == 1)
        .expect("units are invertible")
}

fn nmul(field: &Field, a: Scalar, b: Scalar) -> Scalar {
    Scalar::from_bits(naive_mul(a.bits(), b.bits(), field.modulus(), field.degree()))
}

/// Evaluates `p` with chord values `chords` and group generator values `groups`.
pub fn evaluate(field: &Field, p: &Poly, chords: &[Scalar], groups: &[Vec<Scalar>]) -> Scalar {
    let mut total = 0u32;
    for (w, c) in p.terms() {
        let mut v = c;
        for g in w.groups() {
            for (comp, l) in g.letters() {
                let x = groups[comp][(l.unsigned_abs() - 1) as usize];
                v = nmul(field, v, if l < 0 { naive_inv(field, x) } else { x });
            }
        }
        for &q in w.chords() {
            v = nmul(field, v, chords[q]);
        }
        total ^= v.bits();
    }
    Scalar::from_bits(total)
}

/// Every algebra map to the field vanishing on `∂`, found by trying all assignments of the
/// degree-0 diagonal chords and all unit values of the group generators.
pub fn brute_force_augs(dga: &SemiFreeDga) -> BTreeSet<Augmentation> {
    let field = dga.field();
    let slots: Vec<usize> = dga
        .chords()
        .iter()
        .enumerate()
        .filter(|(_, ch)| ch.degree == 0 && ch.c == ch.r)
        .map(|(q, _)| q)
        .collect();
    let ranks: Vec<usize> = dga.group().components().iter().map(|c| c.rank as usize).collect();
    let group_slots: usize = ranks.iter().sum();
    assert!(slots.len() + group_slots <= 20, "brute force is limited to 20 unknowns");
    let elems: Vec<Scalar> = field.elements().collect();
    let units: Vec<Scalar> = field.units().collect();
    let mut out = BTreeSet::new();
    let total_chord = elems.len().pow(slots.len() as u32);
    let total_group = units.len().pow(group_slots as u32);
    for mut ci in 0..total_chord {
        let mut chords = vec![Scalar::ZERO; dga.len()];
        for &q in &slots {
            chords[q] = elems[ci % elems.len()];
            ci /= elems.len();
        }
        for mut gi in 0..total_group {
            let groups: Vec<Vec<Scalar>> = ranks
                .iter()
                .map(|&r| {
                    (0..r)
                        .map(|_| {
                            let v = units[gi % units.len()];
                            gi /= units.len();
                            v
                        })
                        .collect()
                })
                .collect();
            if (0..dga.len()).all(|q| evaluate(field, dga.differential(q), &chords, &groups).is_zero()) {
                out.insert(Augmentation {
                    chords: chords.clone(),
                    groups,
                });
            }
        }
    }
    out
}

/// `∂` on a polynomial as `Σ (g_0 q_1 ⋯ g_{i-1}) ∂q_i (g_i ⋯ q_m g_m)`, built from products
/// of single factors.
pub fn leibniz_oracle(dga: &SemiFreeDga, p: &Poly) -> Poly {
    let field = dga.field();
    let mut out = Poly::zero();
    for (w, c) in p.terms() {
        let factors: Vec<Poly> = {
            let mut f = Vec::new();
            for (i, g) in w.groups().iter().enumerate() {
                f.push(Poly::monomial(Word::group(g.clone()), Scalar::ONE));
                if let Some(&q) = w.chords().get(i) {
                    f.push(Poly::chord(q));
                }
            }
            f
        };
        for (i, &q) in w.chords().iter().enumerate() {
            let at = 2 * i + 1;
            let mut acc = Poly::monomial(Word::unit(), c);
            for (k, f) in factors.iter().enumerate() {
                acc = acc.mul(if k == at { dga.differential(q) } else { f }, field);
            }
            out.add_assign(&acc);
        }
    }
    out
}

/// `m_k` on basis duals by expanding `Π (q_i + ε(q_i))` over every subset of kept factors
/// and matching the kept word against `inputs` read left to right.
pub fn expand_mk(dga: &SemiFreeDga, eps: &Augmentation, inputs: &[usize]) -> Vec<(usize, Scalar)> {
    let field = dga.field();
    if inputs.is_empty() || inputs.windows(2).any(|p| dga.chord(p[1]).c != dga.chord(p[0]).r) {
        return Vec::new();
    }
    let (first, last) = (dga.chord(inputs[0]).c, dga.chord(*inputs.last().unwrap()).r);
    let mut out = Vec::new();
    for q in 0..dga.len() {
        let ch = dga.chord(q);
        if ch.c != first || ch.r != last {
            continue;
        }
        let mut total = Scalar::ZERO;
        for (w, c) in dga.differential(q).terms() {
            let mut base = c;
            for g in w.groups() {
                for (comp, l) in g.letters() {
                    let x = eps.groups[comp][(l.unsigned_abs() - 1) as usize];
                    base = nmul(field, base, if l < 0 { naive_inv(field, x) } else { x });
                }
            }
            let n = w.chords().len();
            for mask in 0u32..1 << n {
                let kept: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| w.chords()[i]).collect();
                if kept != inputs {
                    continue;
                }
                let mut v = base;
                for i in (0..n).filter(|i| mask >> i & 1 == 0) {
                    v = nmul(field, v, eps.chords[w.chords()[i]]);
                }
                total = Scalar::from_bits(total.bits() ^ v.bits());
            }
        }
        if !total.is_zero() {
            out.push((q, total));
        }
    }
    out
}
