//! Free products of finitely generated free groups, in reduced-word normal form.

use std::fmt;

use crate::error::GroupError;
use crate::Label;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupComponent {
    pub name: String,
    /// Copy label of the Legendrian component this fundamental group belongs to.
    pub label: Label,
    pub rank: u32,
}

/// The coefficient group: a free product of free groups, one per component.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeProductSpec {
    components: Vec<GroupComponent>,
}

impl FreeProductSpec {
    pub fn new(components: Vec<GroupComponent>) -> Result<Self, GroupError> {
        for (i, c) in components.iter().enumerate() {
            if components[..i].iter().any(|d| d.name == c.name) {
                return Err(GroupError::DuplicateComponent(c.name.clone()));
            }
        }
        Ok(FreeProductSpec { components })
    }

    pub fn components(&self) -> &[GroupComponent] {
        &self.components
    }

    pub fn component(&self, index: usize) -> Option<&GroupComponent> {
        self.components.get(index)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| c.name == name)
    }

    /// Total number of free generators over all components.
    pub fn generator_count(&self) -> usize {
        self.components.iter().map(|c| c.rank as usize).sum()
    }

    /// Validates a raw syllable list and reduces it to normal form.
    pub fn element(&self, raw: &[(usize, Vec<i32>)]) -> Result<GroupElement, GroupError> {
        let mut letters = Vec::new();
        for (component, word) in raw {
            let comp = self
                .components
                .get(*component)
                .ok_or(GroupError::ComponentOutOfRange(*component))?;
            for &l in word {
                if l == 0 || l.unsigned_abs() > comp.rank {
                    return Err(GroupError::LetterOutOfRange {
                        component: comp.name.clone(),
                        letter: l,
                        rank: comp.rank,
                    });
                }
                letters.push((*component, l));
            }
        }
        Ok(GroupElement::reduce(letters))
    }

    pub fn validate(&self, g: &GroupElement) -> Result<(), GroupError> {
        for s in &g.syllables {
            let comp = self
                .components
                .get(s.component)
                .ok_or(GroupError::ComponentOutOfRange(s.component))?;
            for &l in &s.letters {
                if l == 0 || l.unsigned_abs() > comp.rank {
                    return Err(GroupError::LetterOutOfRange {
                        component: comp.name.clone(),
                        letter: l,
                        rank: comp.rank,
                    });
                }
            }
        }
        Ok(())
    }

    /// Group multiplication with both operands validated against this spec.
    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        self.validate(g).map_err(|_| GroupError::SpecMismatch)?;
        self.validate(h).map_err(|_| GroupError::SpecMismatch)?;
        Ok(g.mul(h))
    }

    /// Renders a group element in the factor notation accepted by the DGA parser:
    /// `t`, `t.2`, `t^-1`, joined by `*`.
    pub fn display(&self, g: &GroupElement) -> String {
        if g.is_identity() {
            return "1".to_string();
        }
        g.letters()
            .map(|(comp, l)| {
                let name = self
                    .components
                    .get(comp)
                    .map_or_else(|| format!("#{comp}"), |c| c.name.clone());
                let k = l.unsigned_abs();
                let base = if k == 1 { name } else { format!("{name}.{k}") };
                if l < 0 {
                    format!("{base}^-1")
                } else {
                    base
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Maximal run of letters from a single free factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub component: usize,
    /// Signed generator indices, `k` for the k-th generator and `-k` for its inverse.
    pub letters: Vec<i32>,
}

/// A reduced element of a free product of free groups. The empty syllable list is
/// the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    syllables: Vec<Syllable>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::default()
    }

    /// The generator `index` (1-based) of `component`, or its inverse when `inverse`.
    pub fn generator(component: usize, index: u32, inverse: bool) -> Self {
        let l = index as i32;
        GroupElement {
            syllables: vec![Syllable {
                component,
                letters: vec![if inverse { -l } else { l }],
            }],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Flattened `(component, letter)` sequence.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.syllables
            .iter()
            .flat_map(|s| s.letters.iter().map(move |&l| (s.component, l)))
    }

    /// Left-to-right stack reduction of an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = (usize, i32)>) -> Self {
        let mut stack: Vec<(usize, i32)> = Vec::new();
        for (c, l) in letters {
            if l == 0 {
                continue;
            }
            if stack.last() == Some(&(c, -l)) {
                stack.pop();
            } else {
                stack.push((c, l));
            }
        }
        Self::from_reduced_letters(stack)
    }

    fn from_reduced_letters(letters: Vec<(usize, i32)>) -> Self {
        let mut syllables: Vec<Syllable> = Vec::new();
        for (c, l) in letters {
            match syllables.last_mut() {
                Some(s) if s.component == c => s.letters.push(l),
                _ => syllables.push(Syllable {
                    component: c,
                    letters: vec![l],
                }),
            }
        }
        GroupElement { syllables }
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        if other.is_identity() {
            return self.clone();
        }
        if self.is_identity() {
            return other.clone();
        }
        Self::reduce(self.letters().chain(other.letters()))
    }

    pub fn inverse(&self) -> GroupElement {
        let letters: Vec<(usize, i32)> = self.letters().collect();
        Self::from_reduced_letters(letters.into_iter().rev().map(|(c, l)| (c, -l)).collect())
    }

    /// Components touched by this element.
    pub fn components(&self) -> impl Iterator<Item = usize> + '_ {
        self.syllables.iter().map(|s| s.component)
    }

    /// Applies `f` to every component index (used when relabelling copies).
    pub fn map_components(&self, f: impl Fn(usize) -> usize) -> GroupElement {
        GroupElement::reduce(self.letters().map(|(c, l)| (f(c), l)))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        for s in &self.syllables {
            write!(f, "g{}{:?}", s.component, s.letters)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec() -> FreeProductSpec {
        FreeProductSpec::new(vec![
            GroupComponent {
                name: "s".into(),
                label: 1,
                rank: 2,
            },
            GroupComponent {
                name: "t".into(),
                label: 2,
                rank: 1,
            },
        ])
        .unwrap()
    }

    #[test]
    fn inverse_cancels() {
        let s = spec();
        let g = s.element(&[(0, vec![1, 2, -1]), (1, vec![1])]).unwrap();
        assert!(g.mul(&g.inverse()).is_identity());
        assert!(g.inverse().mul(&g).is_identity());
    }

    #[test]
    fn reduction_inside_a_syllable() {
        // (comp 0: a) * (comp 0: a^-1 b) = (comp 0: b)
        let s = spec();
        let a = s.element(&[(0, vec![1])]).unwrap();
        let rest = s.element(&[(0, vec![-1, 2])]).unwrap();
        assert_eq!(a.mul(&rest), s.element(&[(0, vec![2])]).unwrap());
    }

    #[test]
    fn distinct_components_never_merge() {
        let s = spec();
        let a = s.element(&[(0, vec![1])]).unwrap();
        let c = s.element(&[(1, vec![1])]).unwrap();
        let p = a.mul(&c);
        assert_eq!(p.syllables().len(), 2);
    }

    #[test]
    fn cancellation_exposes_merge() {
        // a t t^-1 a = a^2 as a single syllable
        let s = spec();
        let g = s.element(&[(0, vec![1]), (1, vec![1, -1]), (0, vec![1])]).unwrap();
        assert_eq!(
            g.syllables(),
            &[Syllable {
                component: 0,
                letters: vec![1, 1]
            }]
        );
    }

    #[test]
    fn out_of_range_letters_rejected() {
        let s = spec();
        assert!(s.element(&[(1, vec![2])]).is_err());
        assert!(s.element(&[(2, vec![1])]).is_err());
        assert!(s.element(&[(0, vec![0])]).is_err());
    }

    #[test]
    fn duplicate_components_rejected() {
        let c = GroupComponent {
            name: "t".into(),
            label: 1,
            rank: 1,
        };
        assert!(FreeProductSpec::new(vec![c.clone(), c]).is_err());
    }

    fn reduce_right_to_left(letters: &[(usize, i32)]) -> GroupElement {
        let mut stack: Vec<(usize, i32)> = Vec::new();
        for &(c, l) in letters.iter().rev() {
            if stack.last() == Some(&(c, -l)) {
                stack.pop();
            } else {
                stack.push((c, l));
            }
        }
        stack.reverse();
        GroupElement::from_reduced_letters(stack)
    }

    fn is_reduced(g: &GroupElement) -> bool {
        let letters: Vec<_> = g.letters().collect();
        let no_cancel = letters.windows(2).all(|w| w[0] != (w[1].0, -w[1].1));
        let syl = g.syllables();
        let distinct = syl.windows(2).all(|w| w[0].component != w[1].component);
        no_cancel && distinct && syl.iter().all(|s| !s.letters.is_empty())
    }

    proptest! {
        #[test]
        fn reduction_is_confluent(raw in prop::collection::vec((0usize..2, prop::sample::select(vec![-2i32, -1, 1, 2])), 0..40)) {
            let letters: Vec<(usize, i32)> = raw.into_iter().map(|(c, l)| (c, if c == 1 { l.signum() } else { l })).collect();
            let left = GroupElement::reduce(letters.clone());
            let right = reduce_right_to_left(&letters);
            prop_assert_eq!(&left, &right);
            prop_assert!(is_reduced(&left));
        }

        #[test]
        fn multiplication_is_associative(
            a in prop::collection::vec((0usize..2, prop::sample::select(vec![-1, 1])), 0..10),
            b in prop::collection::vec((0usize..2, prop::sample::select(vec![-1, 1])), 0..10),
            c in prop::collection::vec((0usize..2, prop::sample::select(vec![-1, 1])), 0..10),
        ) {
            let (a, b, c) = (GroupElement::reduce(a), GroupElement::reduce(b), GroupElement::reduce(c));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}
