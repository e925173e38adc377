//! Noncommutative polynomials in chord generators with group-algebra coefficients,
//! plus the plain `k`-linear polynomials that twisted differentials live in.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Field, Scalar};
use crate::group::GroupElement;
use crate::ChordId;

/// A monomial `g_0 q_1 g_1 ... q_m g_m`. Identity group factors are stored, so
/// `groups.len() == chords.len() + 1` always holds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    chords: Vec<ChordId>,
    groups: Vec<GroupElement>,
}

impl Default for Word {
    fn default() -> Self {
        Word::unit()
    }
}

impl Word {
    pub fn unit() -> Self {
        Word {
            chords: Vec::new(),
            groups: vec![GroupElement::identity()],
        }
    }

    pub fn chord(q: ChordId) -> Self {
        Word {
            chords: vec![q],
            groups: vec![GroupElement::identity(), GroupElement::identity()],
        }
    }

    pub fn group(g: GroupElement) -> Self {
        Word {
            chords: Vec::new(),
            groups: vec![g],
        }
    }

    /// A word of chords with identity group factors.
    pub fn from_chords(chords: &[ChordId]) -> Self {
        Word {
            chords: chords.to_vec(),
            groups: vec![GroupElement::identity(); chords.len() + 1],
        }
    }

    /// Builds a word from explicit factors. Panics if the factor counts disagree.
    pub fn from_parts(chords: Vec<ChordId>, groups: Vec<GroupElement>) -> Self {
        assert_eq!(groups.len(), chords.len() + 1, "malformed word");
        Word { chords, groups }
    }

    pub fn chords(&self) -> &[ChordId] {
        &self.chords
    }

    pub fn groups(&self) -> &[GroupElement] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.chords.is_empty() && self.groups[0].is_identity()
    }

    /// True when every group factor is the identity.
    pub fn is_group_free(&self) -> bool {
        self.groups.iter().all(GroupElement::is_identity)
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut chords = Vec::with_capacity(self.chords.len() + other.chords.len());
        chords.extend_from_slice(&self.chords);
        chords.extend_from_slice(&other.chords);
        let mut groups = Vec::with_capacity(self.groups.len() + other.groups.len() - 1);
        groups.extend_from_slice(&self.groups[..self.groups.len() - 1]);
        groups.push(self.groups[self.groups.len() - 1].mul(&other.groups[0]));
        groups.extend_from_slice(&other.groups[1..]);
        Word { chords, groups }
    }

    /// Prefix up to (not including) chord `i`, ending with group factor `i`.
    pub fn prefix(&self, i: usize) -> Word {
        Word {
            chords: self.chords[..i].to_vec(),
            groups: self.groups[..=i].to_vec(),
        }
    }

    /// Suffix after chord `i`, starting with group factor `i + 1`.
    pub fn suffix(&self, i: usize) -> Word {
        Word {
            chords: self.chords[i + 1..].to_vec(),
            groups: self.groups[i + 1..].to_vec(),
        }
    }

    pub fn map_chords(&self, f: impl Fn(ChordId) -> ChordId) -> Word {
        Word {
            chords: self.chords.iter().map(|&q| f(q)).collect(),
            groups: self.groups.clone(),
        }
    }

    pub fn map_groups(&self, f: impl Fn(&GroupElement) -> GroupElement) -> Word {
        Word {
            chords: self.chords.clone(),
            groups: self.groups.iter().map(f).collect(),
        }
    }
}

/// A finite `k[G]`-combination of words. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Word, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(Word::unit(), Scalar::ONE)
    }

    pub fn chord(q: ChordId) -> Self {
        Poly::monomial(Word::chord(q), Scalar::ONE)
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, Scalar)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (w, c) in other.terms() {
            self.add_term(w.clone(), c);
        }
    }

    pub fn scale(&self, field: &Field, s: Scalar) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), field.mul(c, s));
        }
        out
    }

    pub fn mul(&self, other: &Poly, field: &Field) -> Poly {
        let mut out = Poly::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(u.mul(v), field.mul(a, b));
            }
        }
        out
    }

    /// Left and right multiplication by fixed words.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in self.terms() {
            out.add_term(left.mul(w).mul(right), c);
        }
        out
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).copied().unwrap_or(Scalar::ZERO)
    }

    /// Coefficient of the unit word.
    pub fn constant(&self) -> Scalar {
        self.coeff(&Word::unit())
    }

    pub fn contains_chord(&self, q: ChordId) -> bool {
        self.terms.keys().any(|w| w.chords.contains(&q))
    }

    /// Replaces every chord `q` by `images(q)` and multiplies out, keeping group factors.
    pub fn substitute(&self, field: &Field, images: &dyn Fn(ChordId) -> Poly) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in self.terms() {
            let mut acc = Poly::monomial(Word::group(w.groups[0].clone()), c);
            for (i, &q) in w.chords.iter().enumerate() {
                acc = acc.mul(&images(q), field);
                acc = acc.mul(
                    &Poly::monomial(Word::group(w.groups[i + 1].clone()), Scalar::ONE),
                    field,
                );
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in self.terms() {
            out.add_term(f(w), c);
        }
        out
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }
}

pub type KWord = Vec<ChordId>;

/// A `k`-linear combination of chord words, with group factors already evaluated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KPoly {
    terms: BTreeMap<KWord, Scalar>,
}

impl KPoly {
    pub fn zero() -> Self {
        KPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KWord, Scalar)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn add_term(&mut self, w: KWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &KPoly) {
        for (w, c) in other.terms() {
            self.add_term(w.clone(), c);
        }
    }

    pub fn coeff(&self, w: &[ChordId]) -> Scalar {
        self.terms.get(w).copied().unwrap_or(Scalar::ZERO)
    }

    pub fn constant(&self) -> Scalar {
        self.coeff(&[])
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Replaces each chord by its image and multiplies out.
    pub fn substitute(&self, field: &Field, images: &dyn Fn(ChordId) -> KPoly) -> KPoly {
        let mut out = KPoly::zero();
        for (w, c) in self.terms() {
            let mut acc = KPoly::zero();
            acc.add_term(Vec::new(), c);
            for &q in w {
                acc = acc.mul(&images(q), field);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }

    pub fn mul(&self, other: &KPoly, field: &Field) -> KPoly {
        let mut out = KPoly::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                let mut w = Vec::with_capacity(u.len() + v.len());
                w.extend_from_slice(u);
                w.extend_from_slice(v);
                out.add_term(w, field.mul(a, b));
            }
        }
        out
    }
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|q| format!("q{q}")).collect::<Vec<_>>().join("*")
                };
                if c.is_one() {
                    word
                } else {
                    format!("[{c}]{word}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_is_identity() {
        let f = Field::F2;
        let p = Poly::chord(0).add(&Poly::chord(1).mul(&Poly::chord(2), &f));
        assert_eq!(p.mul(&Poly::one(), &f), p);
        assert_eq!(Poly::one().mul(&p, &f), p);
    }

    #[test]
    fn product_of_chords() {
        let f = Field::F2;
        let p = Poly::chord(1).mul(&Poly::chord(2), &f);
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&Word::from_chords(&[1, 2])), Scalar::ONE);
    }

    #[test]
    fn characteristic_two_cancellation() {
        assert!(Poly::chord(3).add(&Poly::chord(3)).is_zero());
    }

    #[test]
    fn coefficients_are_order_sensitive() {
        let f = Field::F2;
        let p = Poly::chord(1).mul(&Poly::chord(2), &f).add(&Poly::chord(3));
        assert_eq!(p.coeff(&Word::from_chords(&[1, 2])), Scalar::ONE);
        assert_eq!(p.coeff(&Word::from_chords(&[2, 1])), Scalar::ZERO);
        assert_eq!(Poly::zero().coeff(&Word::from_chords(&[1])), Scalar::ZERO);
    }

    #[test]
    fn group_factors_merge() {
        let f = Field::F2;
        let t = GroupElement::generator(0, 1, false);
        let ti = GroupElement::generator(0, 1, true);
        let a = Poly::monomial(
            Word::from_parts(vec![5], vec![GroupElement::identity(), t]),
            Scalar::ONE,
        );
        let b = Poly::monomial(Word::group(ti), Scalar::ONE);
        assert_eq!(a.mul(&b, &f), Poly::chord(5));
    }

    fn arb_group() -> impl Strategy<Value = GroupElement> {
        prop::collection::vec((0usize..2, prop::sample::select(vec![-1, 1])), 0..3).prop_map(GroupElement::reduce)
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        (0usize..3).prop_flat_map(|n| {
            (
                prop::collection::vec(0usize..3, n),
                prop::collection::vec(arb_group(), n + 1),
            )
                .prop_map(|(c, g)| Word::from_parts(c, g))
        })
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((arb_word(), 1u32..4), 0..4).prop_map(|terms| {
            let mut p = Poly::zero();
            for (w, c) in terms {
                p.add_term(w, Scalar::from_bits(c));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn multiplication_associative_and_distributive(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let f = Field::new(2, None).unwrap();
            prop_assert_eq!(a.mul(&b, &f).mul(&c, &f), a.mul(&b.mul(&c, &f), &f));
            prop_assert_eq!(a.mul(&b.add(&c), &f), a.mul(&b, &f).add(&a.mul(&c, &f)));
            prop_assert_eq!(a.add(&b).mul(&c, &f), a.mul(&c, &f).add(&b.mul(&c, &f)));
        }

        #[test]
        fn scalar_inverse(bits in 1u32..256) {
            let f = Field::new(8, None).unwrap();
            let s = Scalar::from_bits(bits);
            prop_assert_eq!(f.mul(s, f.inv(s).unwrap()), Scalar::ONE);
        }
    }
}
