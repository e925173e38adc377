mod common;

use std::collections::BTreeSet;

use augcat_core::augment::enumerate_augs;
use augcat_core::bundled::{stabilised_unknot, trefoil, unknot};
use augcat_core::field::Field;
use augcat_core::synthetic::{synthetic_batch, SyntheticParams};
use common::{all_bundled, brute_force_augs, fixture};

fn as_set(v: Vec<augcat_core::augment::Augmentation>) -> BTreeSet<augcat_core::augment::Augmentation> {
    v.into_iter().collect()
}

#[test]
fn counts_over_f2() {
    assert_eq!(brute_force_augs(&trefoil()).len(), 5);
    assert_eq!(brute_force_augs(&unknot()).len(), 1);
    assert_eq!(brute_force_augs(&stabilised_unknot()).len(), 1);
}

#[test]
fn enumeration_matches_brute_force_on_fixtures() {
    for name in all_bundled() {
        let sys = fixture(name);
        for subset in [vec![1], vec![1, 2]] {
            let Ok(d) = sys.dga(&subset) else { continue };
            assert_eq!(
                as_set(enumerate_augs(&d, true)),
                brute_force_augs(&d),
                "{name} A{subset:?}"
            );
        }
    }
}

#[test]
fn enumeration_matches_brute_force_over_f4() {
    let f4 = Field::new(2, None).unwrap();
    for d in [unknot(), trefoil(), stabilised_unknot()] {
        let d = d.with_field(f4).unwrap();
        assert_eq!(as_set(enumerate_augs(&d, true)), brute_force_augs(&d));
    }
}

#[test]
fn enumeration_matches_brute_force_on_synthetic() {
    for s in synthetic_batch(5000, 60, &SyntheticParams::default()) {
        let found = as_set(enumerate_augs(&s.dga, true));
        assert_eq!(found, brute_force_augs(&s.dga), "seed {}", s.seed);
        assert!(found.contains(&s.aug), "seed {}", s.seed);
    }
}
