//! Small random link-graded DGAs with an augmentation, for randomized oracle comparisons.
//!
//! A base DGA is assembled from pieces with `∂² = 0` by construction (cancelling pairs
//! `∂e = f`, cycles, products of two cycles) and then conjugated by a few random
//! elementary automorphisms `q ↦ q + u`. The augmentation is pulled back along the way.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::augment::{is_aug, Augmentation};
use crate::dga::{Chord, Grading, SemiFreeDga};
use crate::field::{Field, Scalar};
use crate::group::FreeProductSpec;
use crate::morphism::elementary_auto;
use crate::poly::{Poly, Word};
use crate::{ChordId, Label};

#[derive(Clone, Copy, Debug)]
pub struct SyntheticParams {
    pub max_chords: usize,
    pub max_word_len: usize,
    pub labels: Label,
    pub automorphisms: usize,
}

impl Default for SyntheticParams {
    fn default() -> Self {
        SyntheticParams {
            max_chords: 6,
            max_word_len: 3,
            labels: 2,
            automorphisms: 5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Synthetic {
    pub seed: u64,
    pub dga: Arc<SemiFreeDga>,
    pub aug: Augmentation,
}

fn unit(rng: &mut ChaCha8Rng, field: &Field) -> Scalar {
    let units: Vec<Scalar> = field.units().collect();
    *units.choose(rng).expect("fields have units")
}

fn base(rng: &mut ChaCha8Rng, field: Field, p: &SyntheticParams) -> SemiFreeDga {
    let n = rng.gen_range(2..=p.max_chords.max(2));
    let mut chords: Vec<Chord> = Vec::new();
    let mut diffs: Vec<Poly> = Vec::new();
    let label = |rng: &mut ChaCha8Rng| rng.gen_range(1..=p.labels);
    while chords.len() < n {
        let k = chords.len();
        let roll = rng.gen_range(0..4).min(2);
        let cycles: Vec<ChordId> = (0..k).filter(|&q| diffs[q].is_zero()).collect();
        let products: Vec<(ChordId, ChordId)> = cycles
            .iter()
            .flat_map(|&b| cycles.iter().map(move |&c| (b, c)))
            .filter(|&(b, c)| chords[b].r == chords[c].c && (chords[b].degree + chords[c].degree + 1).abs() <= 2)
            .collect();
        if roll == 0 && n - k >= 2 {
            let (c, r) = (label(rng), label(rng));
            let d = rng.gen_range(-1..=1);
            chords.push(Chord::new(format!("q{}", k + 1), d + 1, c, r));
            chords.push(Chord::new(format!("q{}", k + 2), d, c, r));
            diffs.push(Poly::monomial(Word::chord(k + 1), unit(rng, &field)));
            diffs.push(Poly::zero());
        } else if roll >= 1 && !products.is_empty() && (roll == 1 || rng.gen_bool(0.5)) {
            let &(b, c) = products.choose(rng).expect("nonempty");
            let degree = chords[b].degree + chords[c].degree + 1;
            chords.push(Chord::new(format!("q{}", k + 1), degree, chords[b].c, chords[c].r));
            diffs.push(Poly::monomial(Word::from_chords(&[b, c]), unit(rng, &field)));
        } else {
            chords.push(Chord::new(
                format!("q{}", k + 1),
                rng.gen_range(-1..=2),
                label(rng),
                label(rng),
            ));
            diffs.push(Poly::zero());
        }
    }
    SemiFreeDga::new(
        field,
        Grading::Integer,
        (1..=p.labels).collect(),
        FreeProductSpec::new(Vec::new()).expect("empty group"),
        chords,
        diffs,
    )
    .expect("base pieces are valid")
}

/// Words of length ≤ 2 avoiding `q`, composable for `q` and of degree `|q|`.
fn candidates(dga: &SemiFreeDga, q: ChordId) -> Vec<Word> {
    let ch = dga.chord(q);
    let others: Vec<ChordId> = (0..dga.len()).filter(|&x| x != q).collect();
    let mut words = vec![Word::unit()];
    words.extend(others.iter().map(|&x| Word::chord(x)));
    for &x in &others {
        for &y in &others {
            words.push(Word::from_chords(&[x, y]));
        }
    }
    words
        .into_iter()
        .filter(|w| dga.word_degree(w) == ch.degree && dga.is_composable_for(ch, w))
        .collect()
}

fn attempt(rng: &mut ChaCha8Rng, p: &SyntheticParams) -> Option<(Arc<SemiFreeDga>, Augmentation)> {
    let field = if rng.gen_bool(0.25) {
        Field::new(2, None).expect("F4")
    } else {
        Field::F2
    };
    let dga = base(rng, field, p);
    let mut aug = Augmentation::trivial(&dga);
    for _ in 0..8 {
        let mut trial = Augmentation::trivial(&dga);
        for (q, ch) in dga.chords().iter().enumerate() {
            if ch.degree == 0 && ch.c == ch.r && rng.gen_bool(0.5) {
                trial.chords[q] = unit(rng, &field);
            }
        }
        if is_aug(&dga, &trial) {
            aug = trial;
            break;
        }
    }
    let mut dga = Arc::new(dga);
    for _ in 0..rng.gen_range(0..=p.automorphisms) {
        let q = rng.gen_range(0..dga.len());
        let words = candidates(&dga, q);
        if words.is_empty() {
            continue;
        }
        let mut u = Poly::zero();
        for _ in 0..rng.gen_range(1..=2) {
            let w = words.choose(rng).expect("nonempty").clone();
            u.add_term(w, unit(rng, &field));
        }
        if u.is_zero() {
            continue;
        }
        let (_, inverse) = elementary_auto(&dga, q, &Poly::one(), &Poly::one(), &u, None).ok()?;
        aug = inverse.pull_back_aug(&aug);
        dga = inverse.source.clone();
    }
    let ok = dga.differentials().iter().all(|d| d.max_word_len() <= p.max_word_len)
        && dga.check().passed()
        && is_aug(&dga, &aug);
    ok.then_some((dga, aug))
}

/// A valid synthetic DGA determined by `seed`.
pub fn synthetic(seed: u64, params: &SyntheticParams) -> Synthetic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some((dga, aug)) = attempt(&mut rng, params) {
            return Synthetic { seed, dga, aug };
        }
    }
}

/// `count` synthetic DGAs from consecutive seeds starting at `seed`.
pub fn synthetic_batch(seed: u64, count: usize, params: &SyntheticParams) -> Vec<Synthetic> {
    (0..count as u64)
        .map(|k| synthetic(seed.wrapping_add(k), params))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::{compare_with_oracle, AinfOps};

    #[test]
    fn batch_is_valid_and_deterministic() {
        let p = SyntheticParams::default();
        let batch = synthetic_batch(7, 40, &p);
        let mut nonlinear = 0;
        for s in &batch {
            assert!(s.dga.len() <= 6);
            assert!(s.dga.check().passed());
            assert!(is_aug(&s.dga, &s.aug));
            if s.dga.differentials().iter().any(|d| d.max_word_len() >= 2) {
                nonlinear += 1;
            }
        }
        assert!(nonlinear > 5, "only {nonlinear} nonlinear differentials");
        let again = synthetic(batch[3].seed, &p);
        assert!(again.dga.diff_by_name(&batch[3].dga).is_none());
        assert_eq!(again.aug, batch[3].aug);
    }

    #[test]
    fn oracle_agrees_on_synthetic() {
        for s in synthetic_batch(100, 30, &SyntheticParams::default()) {
            let ops = AinfOps::from_aug(&s.dga, &s.aug).unwrap();
            let r = compare_with_oracle(&ops, 4);
            assert!(r.passed(), "seed {}: {r}", s.seed);
            assert!(ops.check_relations(4).passed(), "seed {}", s.seed);
        }
    }
}
