mod common;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use augcat_core::ainfty::{compare_with_oracle, AinfOps};
use augcat_core::augcat::{compare_constructions, AinfAudit, AugCat};
use augcat_core::augment::enumerate_augs;
use augcat_core::bundled::{trefoil, unknot};
use augcat_core::functor::functor_check;
use augcat_core::morphism::MorphismFamily;
use augcat_core::synthetic::{synthetic_batch, SyntheticParams};
use common::{all_bundled, brute_force_augs, family, fixture, leibniz_oracle, LOCALISABLE};

type Outcome = Result<String, String>;
type Audits = (Vec<(&'static str, AinfAudit)>, Duration);
type Criterion = (&'static str, fn() -> Outcome);

/// Oracle-free `check_ainf` on the full subset of each bundled system, with its wall time.
static AUDITS: OnceLock<Result<Audits, String>> = OnceLock::new();

fn audits() -> Result<&'static Audits, String> {
    AUDITS
        .get_or_init(|| {
            let t = Instant::now();
            let mut out = Vec::new();
            for name in all_bundled() {
                let sys = fixture(name);
                let cat = AugCat::new(&sys).map_err(|e| e.to_string())?;
                let subset: Vec<_> = (1..=sys.copies).collect();
                out.push((
                    name,
                    cat.check_ainf(&subset, 4, false).map_err(|e| format!("{name}: {e}"))?,
                ));
            }
            Ok((out, t.elapsed()))
        })
        .as_ref()
        .map_err(Clone::clone)
}

fn structural() -> Outcome {
    let mut slowest = Duration::ZERO;
    for name in all_bundled() {
        let t = Instant::now();
        let sys = fixture(name);
        let r = sys.check();
        if !r.passed() {
            return Err(format!("{name}: {r}"));
        }
        for (p, d) in sys.stored() {
            for q in 0..d.len() {
                if !leibniz_oracle(d, d.differential(q)).is_zero() {
                    return Err(format!("{name} A{p:?}: ∂∂{} ≠ 0", d.chord(q).name));
                }
                let (c, r) = (d.chord(q).c, d.chord(q).r);
                for (w, _) in d.differential(q).terms() {
                    let deg: i64 = w.chords().iter().map(|&x| d.chord(x).degree).sum();
                    if !d.grading().same(deg, d.chord(q).degree - 1) {
                        return Err(format!("{name}: degree of ∂{}", d.chord(q).name));
                    }
                    let mut at = c;
                    for &x in w.chords() {
                        if d.chord(x).c != at {
                            return Err(format!("{name}: ∂{} is not composable", d.chord(q).name));
                        }
                        at = d.chord(x).r;
                    }
                    if at != r && !(w.chords().is_empty() && c == r) {
                        return Err(format!("{name}: ∂{} ends at the wrong copy", d.chord(q).name));
                    }
                }
            }
        }
        let took = t.elapsed();
        if took > Duration::from_secs(5) {
            return Err(format!("{name} took {took:?}"));
        }
        slowest = slowest.max(took);
    }
    Ok(format!("{} systems, slowest {slowest:.2?}", all_bundled().len()))
}

fn ainf_relations() -> Outcome {
    let (audits, took) = audits()?;
    let (mut constants, mut augs) = (0, 0);
    for (name, audit) in audits {
        if !audit.relations.passed() {
            return Err(format!("{name}: {}", audit.relations));
        }
        constants += audit.structure_constants;
        augs += audit.augmentations;
    }
    if *took > Duration::from_secs(30) {
        return Err(format!("took {took:?}"));
    }
    Ok(format!(
        "{augs} diagonal augmentations, {constants} structure constants, {took:.2?}"
    ))
}

fn oracle() -> Outcome {
    let mut scopes = 0;
    for name in all_bundled() {
        let sys = fixture(name);
        let cat = AugCat::new(&sys).map_err(|e| e.to_string())?;
        let subset: Vec<_> = (1..=sys.copies).collect();
        let audit = cat.check_ainf(&subset, 4, true).map_err(|e| e.to_string())?;
        if !audit.oracle.passed() {
            return Err(format!("{name}: {}", audit.oracle));
        }
        scopes += audit.augmentations;
    }
    let batch = synthetic_batch(2024, 100, &SyntheticParams::default());
    for s in &batch {
        let ops = AinfOps::from_aug(&s.dga, &s.aug).map_err(|e| e.to_string())?;
        let r = compare_with_oracle(&ops, 4);
        if !r.passed() {
            return Err(format!("synthetic seed {}: {r}", s.seed));
        }
    }
    Ok(format!(
        "{scopes} bundled diagonal augmentations, {} synthetic DGAs",
        batch.len()
    ))
}

fn augmentation_counts() -> Outcome {
    let t = brute_force_augs(&trefoil());
    let u = brute_force_augs(&unknot());
    if t.len() != 5 || u.len() != 1 {
        return Err(format!("trefoil {}, unknot {}", t.len(), u.len()));
    }
    for (name, d, bf) in [("trefoil", trefoil(), t), ("unknot", unknot(), u)] {
        let found: std::collections::BTreeSet<_> = enumerate_augs(&d, true).into_iter().collect();
        if found != bf {
            return Err(format!("{name}: enumeration differs from brute force"));
        }
    }
    for name in all_bundled() {
        let sys = fixture(name);
        let d = sys.dga(&[1]).map_err(|e| e.to_string())?;
        let found: std::collections::BTreeSet<_> = enumerate_augs(&d, true).into_iter().collect();
        if found != brute_force_augs(&d) {
            return Err(format!("{name}: enumeration differs from brute force"));
        }
    }
    Ok("trefoil 5, unknot 1, enumeration = brute force".into())
}

fn w_cocycle() -> Outcome {
    let mut checked = 0;
    for name in all_bundled() {
        let sys = fixture(name);
        let cat = AugCat::new(&sys).map_err(|e| e.to_string())?;
        let r = cat.w_check_all();
        if !r.passed() {
            return Err(format!("{name}: {r}"));
        }
        checked += cat.augs.len() * (sys.copies as usize - 1);
    }
    Ok(format!("{checked} classes"))
}

fn localisable() -> Vec<&'static str> {
    LOCALISABLE.iter().copied().chain(["unknot_explicit_4.json"]).collect()
}

fn unit() -> Outcome {
    for name in localisable() {
        let sys = fixture(name);
        let cat = AugCat::new(&sys).map_err(|e| e.to_string())?;
        let h0 = cat.h0_category().map_err(|e| format!("{name}: {e}"))?;
        if !h0.unit.passed() {
            return Err(format!("{name}: {}", h0.unit));
        }
    }
    Ok(format!("{} systems", localisable().len()))
}

fn colimit() -> Outcome {
    let mut pairs = 0;
    for name in localisable() {
        let sys = fixture(name);
        let cat = AugCat::new(&sys).map_err(|e| e.to_string())?;
        for a in 0..cat.augs.len() {
            for b in 0..cat.augs.len() {
                let loc = cat.loc_hom(a, b).map_err(|e| format!("{name}: {e}"))?;
                if loc.witness > 3 || !loc.transitions.iter().all(|t| t.iso) {
                    return Err(format!("{name} ε{a} → ε{b}: witness {}", loc.witness));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} augmentation pairs"))
}

fn equivalence() -> Outcome {
    let mut pairs = 0;
    for name in LOCALISABLE {
        let sys = fixture(name);
        let cat = AugCat::new(&sys).map_err(|e| e.to_string())?;
        let cmp = compare_constructions(&cat);
        if !cmp.report.passed() {
            return Err(format!("{name}: {}", cmp.report));
        }
        pairs += cmp.pairs;
    }
    Ok(format!("{pairs} augmentation pairs"))
}

fn invariance() -> Outcome {
    let cases = [
        ("unknot_4.json", "stabilised_unknot_4.json", "stabilisation_4.json"),
        ("trefoil_4.json", "trefoil_psi_4.json", "elementary_4.json"),
    ];
    for (a, b, f) in cases {
        let (src, tgt) = (fixture(a), fixture(b));
        let fam = MorphismFamily::from_steps(&src, &tgt, &family(f)).map_err(|e| format!("{f}: {e}"))?;
        let audit = functor_check(&src, &tgt, &fam, 2).map_err(|e| format!("{f}: {e}"))?;
        if !audit.passed() {
            return Err(format!("{f}: {}", audit.report()));
        }
    }
    Ok(format!("{} families", cases.len()))
}

fn degree_law() -> Outcome {
    let mut constants = 0;
    for (name, audit) in &audits()?.0 {
        if !audit.degree.passed() {
            return Err(format!("{name}: {}", audit.degree));
        }
        constants += audit.structure_constants;
    }
    for s in synthetic_batch(2024, 100, &SyntheticParams::default()) {
        let ops = AinfOps::from_aug(&s.dga, &s.aug).map_err(|e| e.to_string())?;
        if !ops.degree_audit().passed() {
            return Err(format!("synthetic seed {}", s.seed));
        }
        constants += ops.table(usize::MAX).len();
    }
    Ok(format!("{constants} operations"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("structural soundness", structural),
        ("A∞ relations, k ≤ 4", ainf_relations),
        ("oracle equivalence", oracle),
        ("augmentation counts", augmentation_counts),
        ("m1(w) = 0", w_cocycle),
        ("[w] is the unit", unit),
        ("colimit stabilises", colimit),
        ("localised = consistent", equivalence),
        ("invariance on families", invariance),
        ("degree law", degree_law),
    ];
    let mut failed = 0;
    for (i, (label, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {label}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {label}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
