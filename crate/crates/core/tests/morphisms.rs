mod common;

use std::sync::Arc;

use augcat_core::bundled::trefoil;
use augcat_core::dga::SemiFreeDga;
use augcat_core::field::Scalar;
use augcat_core::functor::functor_check;
use augcat_core::morphism::{destabilise, elementary_auto, stabilise, DgaMorphism, MorphismFamily};
use augcat_core::poly::{Poly, Word};
use common::{family, fixture};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random tame step out of `d`: an elementary automorphism, a stabilisation, or the
/// destabilisation of the most recent pair.
fn random_step(rng: &mut ChaCha8Rng, d: &Arc<SemiFreeDga>, pairs: &mut Vec<(String, String)>) -> Option<DgaMorphism> {
    match rng.gen_range(0..4) {
        0 => {
            let k = pairs.len();
            let (e1, e2) = (format!("e{k}"), format!("f{k}"));
            let deg = rng.gen_range(0..=1);
            let m = stabilise(d, &e1, &e2, deg, 1, 1).ok()?;
            pairs.push((e1, e2));
            Some(m)
        }
        1 if !pairs.is_empty() => {
            let (e1, e2) = pairs.last().cloned()?;
            let m = destabilise(d, &e1, &e2).ok()?;
            pairs.pop();
            Some(m)
        }
        _ => {
            let q = rng.gen_range(0..d.len());
            let deg = d.chord(q).degree;
            let mut u = Poly::zero();
            for _ in 0..rng.gen_range(1..=2) {
                let len = rng.gen_range(0..=2);
                let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..d.len())).collect();
                let word = Word::from_chords(&w);
                if !w.contains(&q) && d.word_degree(&word) == deg {
                    u.add_term(word, Scalar::ONE);
                }
            }
            if u.is_zero() {
                return None;
            }
            let (f, _) = elementary_auto(d, q, &Poly::one(), &Poly::one(), &u, None).ok()?;
            Some(f)
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn composites_are_chain_maps(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = Arc::new(trefoil());
        let mut total = DgaMorphism::identity(start.clone());
        let mut pairs = Vec::new();
        for _ in 0..6 {
            let Some(step) = random_step(&mut rng, &total.target, &mut pairs) else { continue };
            prop_assert!(step.verify_chain_map().passed());
            total = total.then(&step).unwrap();
            let r = total.verify_chain_map();
            prop_assert!(r.passed(), "{}", r);
            prop_assert!(total.compatibility().passed());
        }
    }
}

#[test]
fn bundled_families_are_compatible() {
    let (a, b) = (fixture("trefoil_4.json"), fixture("trefoil_psi_4.json"));
    let fam = MorphismFamily::from_steps(&a, &b, &family("elementary_4.json")).unwrap();
    assert_eq!(fam.maps.len(), 15);
    assert!(fam.check(&a, &b).passed());
    let (a, b) = (fixture("unknot_4.json"), fixture("stabilised_unknot_4.json"));
    let fam = MorphismFamily::from_steps(&a, &b, &family("stabilisation_4.json")).unwrap();
    assert!(fam.check(&a, &b).passed());
}

#[test]
fn broken_square_is_reported() {
    let (a, b) = (fixture("trefoil_4.json"), fixture("trefoil_psi_4.json"));
    let mut fam = MorphismFamily::from_steps(&a, &b, &family("elementary_4.json")).unwrap();
    let f = fam.maps[&vec![1, 2]].clone();
    let q = f.source.id("b1[1,1]").unwrap();
    let mut images = f.images.clone();
    images[q] = Poly::chord(f.target.id("b1[1,1]").unwrap());
    let bad = DgaMorphism::new(f.source.clone(), f.target.clone(), images, f.kind).unwrap();
    fam.maps.insert(vec![1, 2], bad);
    let r = fam.check(&a, &b);
    assert!(r.has("square"), "{r}");
    let audit = functor_check(&a, &b, &fam, 2).unwrap();
    assert!(!audit.passed());
}

#[test]
fn family_with_wrong_target_is_rejected() {
    let (a, b) = (fixture("trefoil_4.json"), fixture("trefoil_4.json"));
    assert!(MorphismFamily::from_steps(&a, &b, &family("elementary_4.json")).is_err());
}

#[test]
fn identity_functor_on_trefoil() {
    let sys = fixture("trefoil_4.json");
    let fam = MorphismFamily::identity(&sys).unwrap();
    let audit = functor_check(&sys, &sys, &fam, 2).unwrap();
    assert!(audit.passed(), "{}", audit.report());
    assert_eq!(audit.objects, vec![0, 1, 2, 3, 4]);
}
