//! DGA morphisms: elementary automorphisms, stabilisations and destabilisations as
//! verified steps, their composites, and compatible families over systems.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::augment::Augmentation;
use crate::dga::{Chord, RawTerm, SemiFreeDga};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::{Poly, Word};
use crate::report::Report;
use crate::system::{DgaSystem, Mode};
use crate::{ChordId, Label};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismKind {
    Identity,
    Elementary,
    Tame,
    Stabilise,
    Destabilise,
    Composite,
}

/// An algebra map given on chords; group elements map to the group elements of the same
/// component names.
#[derive(Clone, Debug)]
pub struct DgaMorphism {
    pub source: Arc<SemiFreeDga>,
    pub target: Arc<SemiFreeDga>,
    /// source chord ↦ polynomial over the target
    pub images: Vec<Poly>,
    pub kind: MorphismKind,
    components: Vec<usize>,
}

fn component_map(source: &SemiFreeDga, target: &SemiFreeDga) -> Result<Vec<usize>> {
    source
        .group()
        .components()
        .iter()
        .map(|c| match target.group().index_of(&c.name) {
            Some(i) if target.group().components()[i].rank == c.rank => Ok(i),
            _ => Err(Error::ChainMap(format!(
                "group component {} has no counterpart in the target",
                c.name
            ))),
        })
        .collect()
}

impl DgaMorphism {
    pub fn new(
        source: Arc<SemiFreeDga>,
        target: Arc<SemiFreeDga>,
        images: Vec<Poly>,
        kind: MorphismKind,
    ) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::Contract(format!(
                "{} images for {} generators",
                images.len(),
                source.len()
            )));
        }
        if source.field() != target.field() {
            return Err(Error::Contract("source and target fields differ".into()));
        }
        let components = component_map(&source, &target)?;
        Ok(DgaMorphism {
            source,
            target,
            images,
            kind,
            components,
        })
    }

    pub fn identity(dga: Arc<SemiFreeDga>) -> Self {
        let images = (0..dga.len()).map(Poly::chord).collect();
        Self::new(dga.clone(), dga, images, MorphismKind::Identity).expect("identity is well formed")
    }

    /// Sends each chord to the target chord named `name_map(name)`.
    pub fn by_names(
        source: Arc<SemiFreeDga>,
        target: Arc<SemiFreeDga>,
        name_map: &dyn Fn(&str) -> String,
        kind: MorphismKind,
    ) -> Result<Self> {
        let images = source
            .chords()
            .iter()
            .map(|ch| target.id_or_err(&name_map(&ch.name)).map(Poly::chord))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images, kind)
    }

    /// Image of a source polynomial.
    pub fn apply(&self, p: &Poly) -> Poly {
        let moved = p.map_words(|w| w.map_groups(|g| g.map_components(|c| self.components[c])));
        moved.substitute(self.target.field(), &|q| self.images[q].clone())
    }

    pub fn image_of(&self, name: &str) -> Result<&Poly> {
        Ok(&self.images[self.source.id_or_err(name)?])
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &DgaMorphism) -> Result<DgaMorphism> {
        if !Arc::ptr_eq(&self.target, &next.source) && self.target.diff_by_name(&next.source).is_some() {
            return Err(Error::Contract("composed morphisms do not meet".into()));
        }
        let images = self.images.iter().map(|p| next.apply(p)).collect();
        let tame = |k: MorphismKind| {
            matches!(
                k,
                MorphismKind::Identity | MorphismKind::Elementary | MorphismKind::Tame
            )
        };
        let kind = match (self.kind, next.kind) {
            (MorphismKind::Identity, k) | (k, MorphismKind::Identity) => k,
            (a, b) if tame(a) && tame(b) => MorphismKind::Tame,
            _ => MorphismKind::Composite,
        };
        Self::new(self.source.clone(), next.target.clone(), images, kind)
    }

    /// `f ∂ = ∂ f` on every generator. Stops at the first divergence (in name order) and
    /// reports both sides.
    pub fn verify_chain_map(&self) -> Report {
        let mut report = Report::new();
        let src = &self.source;
        let mut order: Vec<ChordId> = (0..src.len()).collect();
        order.sort_by(|&a, &b| src.chord(a).name.cmp(&src.chord(b).name));
        for q in order {
            let lhs = self.apply(src.differential(q));
            let rhs = self.target.leibniz(&self.images[q]);
            if lhs != rhs {
                report.push(
                    "chain-map",
                    &src.chord(q).name,
                    format!(
                        "f(∂{0}) = {1} but ∂f({0}) = {2}",
                        src.chord(q).name,
                        self.target.fmt_poly(&lhs),
                        self.target.fmt_poly(&rhs)
                    ),
                );
                break;
            }
        }
        report
    }

    /// Degree preservation and the link-grading law on every image word.
    pub fn compatibility(&self) -> Report {
        let mut report = Report::new();
        let (src, tgt) = (&self.source, &self.target);
        for (q, ch) in src.chords().iter().enumerate() {
            for (w, _) in self.images[q].terms() {
                let deg = tgt.word_degree(w);
                if !tgt.grading().same(deg, ch.degree) {
                    report.push(
                        "degree",
                        &ch.name,
                        format!(
                            "image word {} has degree {deg}, expected {}",
                            tgt.fmt_word(w),
                            ch.degree
                        ),
                    );
                }
                if let Some((code, detail)) = tgt.link_violation(ch, w) {
                    report.push(code, &ch.name, format!("image {detail}"));
                }
            }
        }
        report.sort();
        report
    }

    /// `ε ∘ f` for an augmentation `ε` of the target.
    pub fn pull_back_aug(&self, eps: &Augmentation) -> Augmentation {
        let field = self.target.field();
        Augmentation {
            chords: self.images.iter().map(|p| eps.eval(field, p)).collect(),
            groups: self.components.iter().map(|&c| eps.groups[c].clone()).collect(),
        }
    }

    pub fn describe(&self) -> String {
        self.source
            .chords()
            .iter()
            .zip(&self.images)
            .filter(|(ch, p)| **p != Poly::chord(self.target.id(&ch.name).unwrap_or(usize::MAX)))
            .map(|(ch, p)| format!("{} ↦ {}", ch.name, self.target.fmt_poly(p)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// A unit coefficient `s·g`: a single term without chords.
fn unit_parts(p: &Poly) -> Option<(Word, Scalar)> {
    let mut terms = p.terms();
    let (w, c) = terms.next()?;
    (terms.next().is_none() && w.chords().is_empty()).then(|| (w.clone(), c))
}

fn unit_inverse(dga: &SemiFreeDga, p: &Poly) -> Result<Poly> {
    let (w, c) = unit_parts(p).ok_or_else(|| Error::Precondition(format!("{} is not a unit", dga.fmt_poly(p))))?;
    let inv = dga
        .field()
        .inv(c)
        .map_err(|_| Error::Precondition("zero coefficient is not invertible".into()))?;
    Ok(Poly::monomial(Word::group(w.groups()[0].inverse()), inv))
}

/// Conjugates `∂` by an automorphism: `∂'(q) = g(∂(g⁻¹(q)))`.
fn conjugate(dga: &SemiFreeDga, forward: &[Poly], backward: &[Poly]) -> Result<SemiFreeDga> {
    let field = dga.field();
    let g = |p: &Poly| p.substitute(field, &|q| forward[q].clone());
    let differential = backward.iter().map(|b| g(&dga.leibniz(b))).collect();
    SemiFreeDga::new(
        *field,
        dga.grading(),
        dga.labels().to_vec(),
        dga.group().clone(),
        dga.chords().to_vec(),
        differential,
    )
}

/// The elementary automorphism `q ↦ x q y + u`, with all other chords fixed, and its
/// inverse `q ↦ x⁻¹ (q + u) y⁻¹`. Without a `target` the differential is conjugated;
/// with one, the chain-map property is verified against it.
pub fn elementary_auto(
    dga: &Arc<SemiFreeDga>,
    q: ChordId,
    x: &Poly,
    y: &Poly,
    u: &Poly,
    target: Option<Arc<SemiFreeDga>>,
) -> Result<(DgaMorphism, DgaMorphism)> {
    let field = dga.field();
    let ch: &Chord = dga.chord(q);
    if u.contains_chord(q) {
        return Err(Error::Precondition(format!("u involves {} itself", ch.name)));
    }
    let (x_inv, y_inv) = (unit_inverse(dga, x)?, unit_inverse(dga, y)?);
    let core = x.mul(&Poly::chord(q), field).mul(y, field);
    let image = core.add(u);
    for (w, _) in image.terms() {
        if !dga.grading().same(dga.word_degree(w), ch.degree) {
            return Err(Error::Precondition(format!(
                "word {} of u has the wrong degree",
                dga.fmt_word(w)
            )));
        }
        if let Some((_, detail)) = dga.link_violation(ch, w) {
            return Err(Error::Precondition(format!("image of {}: {detail}", ch.name)));
        }
    }
    let mut forward: Vec<Poly> = (0..dga.len()).map(Poly::chord).collect();
    let mut backward = forward.clone();
    forward[q] = image;
    backward[q] = x_inv.mul(&Poly::chord(q).add(u), field).mul(&y_inv, field);
    let target = match target {
        Some(t) => t,
        None => Arc::new(conjugate(dga, &forward, &backward)?),
    };
    let f = DgaMorphism::new(dga.clone(), target.clone(), forward, MorphismKind::Elementary)?;
    let g = DgaMorphism::new(target, dga.clone(), backward, MorphismKind::Elementary)?;
    for (m, which) in [(&f, "elementary map"), (&g, "inverse")] {
        let r = m.verify_chain_map();
        if !r.passed() {
            return Err(Error::ChainMap(format!("{which}: {r}")));
        }
    }
    for (a, b, which) in [(&f, &g, "g∘f"), (&g, &f, "f∘g")] {
        let c = a.then(b)?;
        if (0..c.images.len()).any(|k| c.images[k] != Poly::chord(k)) {
            return Err(Error::ChainMap(format!("{which} is not the identity")));
        }
    }
    Ok((f, g))
}

/// Adds `e1` (degree `degree`) and `e2` (degree `degree − 1`) with `∂e1 = e2`, both of
/// bigrade `(c, r)`; the morphism is the inclusion.
pub fn stabilise(dga: &Arc<SemiFreeDga>, e1: &str, e2: &str, degree: i64, c: Label, r: Label) -> Result<DgaMorphism> {
    for n in [e1, e2] {
        if dga.id(n).is_some() || dga.group().index_of(n).is_some() {
            return Err(Error::DuplicateName(n.to_string()));
        }
    }
    if e1 == e2 {
        return Err(Error::DuplicateName(e1.to_string()));
    }
    let mut chords = dga.chords().to_vec();
    let mut differential = dga.differentials().to_vec();
    let n = chords.len();
    chords.push(Chord::new(e1, degree, c, r));
    chords.push(Chord::new(e2, degree - 1, c, r));
    differential.push(Poly::chord(n + 1));
    differential.push(Poly::zero());
    let target = SemiFreeDga::new(
        *dga.field(),
        dga.grading(),
        dga.labels().to_vec(),
        dga.group().clone(),
        chords,
        differential,
    )?;
    let images = (0..n).map(Poly::chord).collect();
    let f = DgaMorphism::new(dga.clone(), Arc::new(target), images, MorphismKind::Stabilise)?;
    let r = f.verify_chain_map();
    if !r.passed() {
        return Err(Error::ChainMap(r.to_string()));
    }
    Ok(f)
}

/// Removes a cancelling pair with `∂e1 = e2`, `∂e2 = 0`, neither appearing in any other
/// differential. The morphism is the projection sending both to 0.
pub fn destabilise(dga: &Arc<SemiFreeDga>, e1: &str, e2: &str) -> Result<DgaMorphism> {
    let (q1, q2) = (dga.id_or_err(e1)?, dga.id_or_err(e2)?);
    if dga.differential(q1) != &Poly::chord(q2) || !dga.differential(q2).is_zero() {
        return Err(Error::Precondition(format!(
            "{e1}, {e2} is not a cancelling pair with ∂{e1} = {e2}"
        )));
    }
    if let Some(k) = (0..dga.len()).find(|&k| {
        k != q1 && k != q2 && (dga.differential(k).contains_chord(q1) || dga.differential(k).contains_chord(q2))
    }) {
        return Err(Error::Precondition(format!(
            "∂{} involves {e1} or {e2}",
            dga.chord(k).name
        )));
    }
    let keep: Vec<ChordId> = (0..dga.len()).filter(|&k| k != q1 && k != q2).collect();
    let mut new_id = vec![usize::MAX; dga.len()];
    for (i, &k) in keep.iter().enumerate() {
        new_id[k] = i;
    }
    let chords = keep.iter().map(|&k| dga.chord(k).clone()).collect();
    let differential = keep
        .iter()
        .map(|&k| dga.differential(k).map_words(|w| w.map_chords(|x| new_id[x])))
        .collect();
    let target = SemiFreeDga::new(
        *dga.field(),
        dga.grading(),
        dga.labels().to_vec(),
        dga.group().clone(),
        chords,
        differential,
    )?;
    let images = (0..dga.len())
        .map(|k| {
            if new_id[k] == usize::MAX {
                Poly::zero()
            } else {
                Poly::chord(new_id[k])
            }
        })
        .collect();
    let f = DgaMorphism::new(dga.clone(), Arc::new(target), images, MorphismKind::Destabilise)?;
    let r = f.verify_chain_map();
    if !r.passed() {
        return Err(Error::ChainMap(r.to_string()));
    }
    Ok(f)
}

/// One step of a stable tame isomorphism, with polynomials in raw form so that they
/// can name generators introduced by earlier steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Elementary {
        chord: String,
        x: Vec<RawTerm>,
        y: Vec<RawTerm>,
        u: Vec<RawTerm>,
    },
    Stabilise {
        e1: String,
        e2: String,
        degree: i64,
        c: Label,
        r: Label,
    },
    Destabilise {
        e1: String,
        e2: String,
    },
}

/// Runs `steps` from `source`, verifying each one, and returns the composite.
pub fn build_from_steps(source: &Arc<SemiFreeDga>, steps: &[Step]) -> Result<DgaMorphism> {
    let mut acc = DgaMorphism::identity(source.clone());
    for (i, step) in steps.iter().enumerate() {
        let cur = acc.target.clone();
        let f = match step {
            Step::Elementary { chord, x, y, u } => {
                let q = cur.id_or_err(chord)?;
                let unit = |t: &[RawTerm]| -> Result<Poly> {
                    if t.is_empty() {
                        Ok(Poly::one())
                    } else {
                        cur.resolve_terms(t)
                    }
                };
                elementary_auto(&cur, q, &unit(x)?, &unit(y)?, &cur.resolve_terms(u)?, None)?.0
            }
            Step::Stabilise { e1, e2, degree, c, r } => stabilise(&cur, e1, e2, *degree, *c, *r)?,
            Step::Destabilise { e1, e2 } => destabilise(&cur, e1, e2)?,
        }
        .clone();
        acc = acc
            .then(&f)
            .map_err(|e| Error::ChainMap(format!("step {}: {e}", i + 1)))?;
    }
    Ok(acc)
}

/// Maps `f^P: A^P → B^P` indexed by subsets.
#[derive(Clone, Debug)]
pub struct MorphismFamily {
    pub maps: BTreeMap<Vec<Label>, DgaMorphism>,
}

/// Step lists per subset. For consistent systems only the subsets `[1..m]` are given and
/// the other subsets follow by relabelling.
pub type FamilySpec = BTreeMap<Vec<Label>, Vec<Step>>;

impl MorphismFamily {
    /// The identity family of a system on every subset it provides.
    pub fn identity(sys: &DgaSystem) -> Result<Self> {
        let mut maps = BTreeMap::new();
        for p in family_subsets(sys) {
            maps.insert(p.clone(), DgaMorphism::identity(sys.dga(&p)?));
        }
        Ok(MorphismFamily { maps })
    }

    /// Builds every `f^P` from its steps and re-targets it onto `B^P`, which must agree by
    /// names with the final DGA of the steps.
    pub fn from_steps(src: &DgaSystem, tgt: &DgaSystem, spec: &FamilySpec) -> Result<Self> {
        if src.copies != tgt.copies || src.mode != tgt.mode {
            return Err(Error::Contract(
                "source and target systems differ in copies or mode".into(),
            ));
        }
        let mut maps = BTreeMap::new();
        let mut built: BTreeMap<Vec<Label>, DgaMorphism> = BTreeMap::new();
        for p in family_subsets(src) {
            let key: Vec<Label> = match src.mode {
                Mode::Explicit => p.clone(),
                Mode::Consistent => (1..=p.len() as Label).collect(),
            };
            let base = match built.get(&key) {
                Some(f) => f.clone(),
                None => {
                    let steps = spec.get(&key).ok_or_else(|| Error::MissingSubset(key.clone()))?;
                    let f = build_from_steps(&src.dga(&key)?, steps)?;
                    let b = tgt.dga(&key)?;
                    if let Some(d) = f.target.diff_by_name(&b) {
                        return Err(Error::ChainMap(format!(
                            "steps for {key:?} do not end at the target DGA: {d}"
                        )));
                    }
                    let f = f.then(&DgaMorphism::by_names(
                        f.target.clone(),
                        b,
                        &|n| n.to_string(),
                        MorphismKind::Identity,
                    )?)?;
                    built.insert(key.clone(), f.clone());
                    f
                }
            };
            let f = if key == p {
                base
            } else {
                // consistent relabelling keeps generator indices
                DgaMorphism::new(src.dga(&p)?, tgt.dga(&p)?, base.images.clone(), base.kind)?
            };
            maps.insert(p, f);
        }
        Ok(MorphismFamily { maps })
    }

    /// Condition (1) on every map (chain map, degrees, link grading) and condition (2) on
    /// every nested pair `P ⊂ P'`: `ι_B ∘ f^P = f^{P'} ∘ ι_A` on generators.
    pub fn check(&self, src: &DgaSystem, tgt: &DgaSystem) -> Report {
        let mut report = Report::new();
        for p in family_subsets(src) {
            let Some(f) = self.maps.get(&p) else {
                report.push("missing", format!("{p:?}"), "no map for this subset");
                continue;
            };
            let scope = format!("{p:?}");
            report.extend_scoped(&scope, f.verify_chain_map());
            report.extend_scoped(&scope, f.compatibility());
        }
        let keys: Vec<&Vec<Label>> = self.maps.keys().collect();
        for &p in &keys {
            for &pp in &keys {
                if p.len() >= pp.len() || !p.iter().all(|l| pp.contains(l)) {
                    continue;
                }
                if let Err(e) = self.square(src, tgt, p, pp, &mut report) {
                    report.push("square", format!("{p:?} ⊂ {pp:?}"), e.to_string());
                }
            }
        }
        report
    }

    fn square(&self, src: &DgaSystem, tgt: &DgaSystem, p: &[Label], pp: &[Label], report: &mut Report) -> Result<()> {
        let (f, ff) = (&self.maps[p], &self.maps[pp]);
        let ia = src.inclusion(p, pp)?;
        let ib = tgt.inclusion(p, pp)?;
        let comps = component_map(&f.target, &ff.target)?;
        for q in 0..f.source.len() {
            let lhs = f.images[q].map_words(|w| w.map_chords(|x| ib[x]).map_groups(|g| g.map_components(|c| comps[c])));
            let rhs = &ff.images[ia[q]];
            if &lhs != rhs {
                report.push(
                    "square",
                    format!("{p:?} ⊂ {pp:?}"),
                    format!(
                        "{}: ι f = {} but f ι = {}",
                        f.source.chord(q).name,
                        ff.target.fmt_poly(&lhs),
                        ff.target.fmt_poly(rhs)
                    ),
                );
                break;
            }
        }
        Ok(())
    }
}

/// Subsets a family is indexed by: the stored ones in explicit mode, all of them otherwise.
pub fn family_subsets(sys: &DgaSystem) -> Vec<Vec<Label>> {
    match sys.mode {
        Mode::Explicit => sys.stored().map(|(p, _)| p.clone()).collect(),
        Mode::Consistent => (1..=sys.copies)
            .flat_map(|k| crate::system::subsets_of_size(sys.copies, k))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::enumerate_augs;
    use crate::field::Field;

    fn unknot() -> Arc<SemiFreeDga> {
        Arc::new(
            SemiFreeDga::builder(Field::F2)
                .component("t", 1, 1)
                .chord("a", 1, 1, 1)
                .diff("a", "1 + t")
                .build()
                .unwrap(),
        )
    }

    fn pair() -> Arc<SemiFreeDga> {
        Arc::new(
            SemiFreeDga::builder(Field::F2)
                .chord("p", 1, 1, 1)
                .chord("b", 0, 1, 1)
                .chord("c", 0, 1, 1)
                .diff("p", "1 + b*c")
                .build()
                .unwrap(),
        )
    }

    #[test]
    fn trivial_elementary_is_identity() {
        let d = unknot();
        let (f, g) = elementary_auto(&d, 0, &Poly::one(), &Poly::one(), &Poly::zero(), None).unwrap();
        assert_eq!(f.images, vec![Poly::chord(0)]);
        assert_eq!(g.images, vec![Poly::chord(0)]);
        assert!(f.target.diff_by_name(&d).is_none());
    }

    #[test]
    fn shift_of_degree_zero_chord() {
        let d = pair();
        let b = d.id("b").unwrap();
        let (f, _) = elementary_auto(&d, b, &Poly::one(), &Poly::one(), &Poly::one(), None).unwrap();
        let p = f.target.id("p").unwrap();
        assert_eq!(f.target.fmt_poly(f.target.differential(p)), "1 + b*c + c");
        assert!(f.verify_chain_map().passed());
        assert_eq!(enumerate_augs(&d, true).len(), enumerate_augs(&f.target, true).len());
    }

    #[test]
    fn u_with_q_rejected() {
        let d = pair();
        let b = d.id("b").unwrap();
        let u = d.parse_poly("b*c").unwrap();
        assert!(matches!(
            elementary_auto(&d, b, &Poly::one(), &Poly::one(), &u, None),
            Err(Error::Precondition(_))
        ));
        let zero = Poly::zero();
        assert!(elementary_auto(&d, b, &zero, &Poly::one(), &Poly::zero(), None).is_err());
    }

    #[test]
    fn group_unit_coefficients() {
        let d = unknot();
        let t = d.parse_poly("t").unwrap();
        let (f, g) = elementary_auto(&d, 0, &t, &Poly::one(), &Poly::zero(), None).unwrap();
        assert_eq!(f.target.fmt_poly(f.target.differential(0)), "1 + t^-1");
        assert_eq!(f.target.fmt_poly(&g.images[0]), "t^-1*a");
    }

    #[test]
    fn stabilise_then_destabilise() {
        let d = unknot();
        let s = stabilise(&d, "e1", "e2", 1, 1, 1).unwrap();
        assert_eq!(s.target.len(), 3);
        assert!(s.target.check().passed());
        assert_eq!(enumerate_augs(&s.target, true).len(), 1);
        let back = destabilise(&s.target, "e1", "e2").unwrap();
        let round = s.then(&back).unwrap();
        assert!(round.target.diff_by_name(&d).is_none());
        assert_eq!(round.images, vec![Poly::chord(0)]);
        assert!(stabilise(&d, "a", "e2", 1, 1, 1).is_err());
    }

    #[test]
    fn destabilise_needs_isolated_pair() {
        let d = Arc::new(
            SemiFreeDga::builder(Field::F2)
                .chord("e1", 1, 1, 1)
                .chord("e2", 0, 1, 1)
                .chord("z", 1, 1, 1)
                .diff("e1", "e2")
                .diff("z", "e2")
                .build()
                .unwrap(),
        );
        assert!(destabilise(&d, "e1", "e2").is_err());
    }

    #[test]
    fn corrupted_image_is_named() {
        let d = pair();
        let mut f = DgaMorphism::identity(d.clone());
        let b = d.id("b").unwrap();
        f.images[b] = Poly::zero();
        let r = f.verify_chain_map();
        assert!(r.has("chain-map"));
        assert_eq!(r.findings[0].subject, "p");
    }

    #[test]
    fn steps_compose() {
        let d = pair();
        let steps = vec![
            Step::Stabilise {
                e1: "e1".into(),
                e2: "e2".into(),
                degree: 1,
                c: 1,
                r: 1,
            },
            Step::Elementary {
                chord: "b".into(),
                x: vec![],
                y: vec![],
                u: vec![RawTerm {
                    coef: "1".into(),
                    word: vec![],
                }],
            },
            Step::Destabilise {
                e1: "e1".into(),
                e2: "e2".into(),
            },
        ];
        let f = build_from_steps(&d, &steps).unwrap();
        assert_eq!(f.kind, MorphismKind::Composite);
        assert!(f.verify_chain_map().passed());
        assert_eq!(f.target.len(), 3);
        assert_eq!(f.target.fmt_poly(f.image_of("b").unwrap()), "1 + b");
    }
}
