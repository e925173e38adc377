mod common;

use augcat_core::ainfty::{evaluate_orientations, AinfOps, CVect};
use augcat_core::augcat::AugCat;
use augcat_core::dga::SemiFreeDga;
use augcat_core::synthetic::{synthetic_batch, SyntheticParams};
use common::{expand_mk, fixture};

/// Every composable tuple of length `1..=kmax`.
fn composable_tuples(dga: &SemiFreeDga, kmax: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..dga.len()).map(|q| vec![q]).collect();
    while let Some(t) = stack.pop() {
        if t.len() < kmax {
            let r = dga.chord(*t.last().unwrap()).r;
            for q in (0..dga.len()).filter(|&q| dga.chord(q).c == r) {
                let mut next = t.clone();
                next.push(q);
                stack.push(next);
            }
        }
        out.push(t);
    }
    out
}

fn agrees_with_expansion(
    ops: &AinfOps,
    eps: &augcat_core::augment::Augmentation,
    kmax: usize,
) -> Result<usize, String> {
    let dga = ops.dga();
    let tuples = composable_tuples(dga, kmax);
    for t in &tuples {
        let mut want = CVect::zero();
        for (q, c) in expand_mk(dga, eps, t) {
            want.add(q, c);
        }
        let got = ops.mk(t);
        if got != want {
            let names: Vec<&str> = t.iter().map(|&q| dga.chord(q).name.as_str()).collect();
            return Err(format!(
                "m({names:?}) = {} but expansion gives {}",
                got.display(dga),
                want.display(dga)
            ));
        }
    }
    Ok(tuples.len())
}

#[test]
fn orientation_is_forward_only() {
    assert_eq!(evaluate_orientations(), (true, false));
}

#[test]
fn small_fixtures_pass_with_oracle() {
    for name in ["unknot_4.json", "stabilised_unknot_4.json", "unknot_explicit_4.json"] {
        let sys = fixture(name);
        let cat = AugCat::new(&sys).unwrap();
        let subset: Vec<_> = (1..=sys.copies).collect();
        let audit = cat.check_ainf(&subset, 4, true).unwrap();
        assert!(audit.relations.passed(), "{name}: {}", audit.relations);
        assert!(audit.degree.passed(), "{name}: {}", audit.degree);
        assert!(audit.oracle.passed(), "{name}: {}", audit.oracle);
        assert!(audit.structure_constants > 0);
    }
}

#[test]
fn operations_match_expansion_on_fixtures() {
    for name in [
        "unknot_4.json",
        "stabilised_unknot_4.json",
        "trefoil_4.json",
        "trefoil_psi_4.json",
    ] {
        let sys = fixture(name);
        let cat = AugCat::new(&sys).unwrap();
        for objs in [[0, 0, 0], [0, cat.augs.len() - 1, 0]] {
            let (dga, eps) = cat.diagonal(&[1, 2, 3], &objs).unwrap();
            let ops = AinfOps::from_aug(&dga, &eps).unwrap();
            if let Err(e) = agrees_with_expansion(&ops, &eps, 3) {
                panic!("{name} {objs:?}: {e}");
            }
        }
    }
}

#[test]
fn synthetic_dgas() {
    let params = SyntheticParams::default();
    let batch = synthetic_batch(77, 100, &params);
    assert_eq!(batch.len(), 100);
    for s in batch {
        assert!(s.dga.len() <= params.max_chords);
        let ops = AinfOps::from_aug(&s.dga, &s.aug).unwrap();
        let rel = ops.check_relations(4);
        assert!(rel.passed(), "seed {}: {rel}", s.seed);
        assert!(ops.degree_audit().passed(), "seed {}", s.seed);
        let oracle = augcat_core::ainfty::compare_with_oracle(&ops, 4);
        assert!(oracle.passed(), "seed {}: {oracle}", s.seed);
        if let Err(e) = agrees_with_expansion(&ops, &s.aug, 4) {
            panic!("seed {}: {e}", s.seed);
        }
    }
}
