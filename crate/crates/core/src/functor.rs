//! The `A∞`-functor `O_B → O_A` induced by a compatible family `f^P: A^P → B^P`, and its
//! audits: object bijection, functor equations, quasi-isomorphism on homs and `[w'] ↦ [w]`.

use std::collections::{BTreeMap, HashMap};

use crate::ainfty::CVect;
use crate::augcat::{tuples, AugCat, HomData, Object};
use crate::augment::{kleibniz, twist, twist_poly, Augmentation};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::morphism::{DgaMorphism, MorphismFamily};
use crate::poly::{KPoly, KWord};
use crate::report::Report;
use crate::system::{DgaSystem, Mode};
use crate::{ChordId, Label};

/// `f_ε = φ_{ε_B} ∘ f ∘ φ_{ε_A}^{-1}` on the chords of `A^P`, with `ε_A = ε_B ∘ f`.
#[derive(Clone, Debug)]
pub struct TwistedMap {
    pub images: Vec<KPoly>,
    /// input word over `B^P` ↦ outputs `(q in A^P, coefficient)`
    index: HashMap<KWord, Vec<(ChordId, Scalar)>>,
}

impl TwistedMap {
    /// Fails if a constant term survives, i.e. `ε_A` is not `ε_B ∘ f`.
    pub fn new(f: &DgaMorphism, eps_a: &Augmentation, eps_b: &Augmentation) -> Result<Self> {
        let mut images = Vec::with_capacity(f.images.len());
        for (q, p) in f.images.iter().enumerate() {
            let mut img = twist_poly(&f.target, eps_b, p);
            let c = img.constant();
            if c != eps_a.chord(q) {
                return Err(Error::ConstantTerm(format!(
                    "f_ε({}) has constant term {c}, ε_A = {}",
                    f.source.chord(q).name,
                    eps_a.chord(q)
                )));
            }
            img.add_term(Vec::new(), c);
            images.push(img);
        }
        let mut index: HashMap<KWord, Vec<(ChordId, Scalar)>> = HashMap::new();
        for (q, img) in images.iter().enumerate() {
            for (w, c) in img.terms() {
                index.entry(w.clone()).or_default().push((q, c));
            }
        }
        Ok(TwistedMap { images, index })
    }

    /// `F_k(x_1, ..., x_k) = Σ_q ⟨f_ε(q), x_1 ⋯ x_k⟩ q^∨` on basis duals.
    pub fn fk(&self, inputs: &[ChordId]) -> CVect {
        let mut out = CVect::zero();
        if let Some(outs) = self.index.get(inputs) {
            for &(q, c) in outs {
                out.add(q, c);
            }
        }
        out
    }

    /// `F_1` on a cochain.
    pub fn f1(&self, v: &CVect, field: &Field) -> CVect {
        let mut out = CVect::zero();
        for (x, c) in v.entries() {
            out.add_scaled(&self.fk(&[x]), c, field);
        }
        out
    }

    pub fn max_arity(&self) -> usize {
        self.index.keys().map(Vec::len).max().unwrap_or(0)
    }
}

fn truncate(p: &KPoly, kmax: usize) -> KPoly {
    let mut out = KPoly::zero();
    for (w, c) in p.terms() {
        if w.len() <= kmax {
            out.add_term(w.clone(), c);
        }
    }
    out
}

/// Outcome of [`functor_check`]. Each part is reported separately.
#[derive(Clone, Debug)]
pub struct FunctorAudit {
    /// target augmentation index ↦ source augmentation index
    pub objects: Vec<usize>,
    pub source_objects: usize,
    pub family: Report,
    pub object_map: Report,
    pub equations: Report,
    pub quasi_iso: Report,
    pub w: Report,
    pub tuples: usize,
    pub homs: usize,
}

impl FunctorAudit {
    pub fn passed(&self) -> bool {
        [
            &self.family,
            &self.object_map,
            &self.equations,
            &self.quasi_iso,
            &self.w,
        ]
        .iter()
        .all(|r| r.passed())
    }

    pub fn report(&self) -> Report {
        let mut out = Report::new();
        for r in [
            &self.family,
            &self.object_map,
            &self.equations,
            &self.quasi_iso,
            &self.w,
        ] {
            out.extend(r.clone());
        }
        out
    }
}

/// Subsets over which the functor equations are audited: `[1..m]` in consistent mode
/// (the others are relabellings), every stored subset in explicit mode.
fn audit_subsets(sys: &DgaSystem, max_size: usize) -> Vec<Vec<Label>> {
    match sys.mode {
        Mode::Consistent => (2..=sys.copies.min(max_size as Label))
            .map(|m| (1..=m).collect())
            .collect(),
        Mode::Explicit => sys
            .stored()
            .map(|(p, _)| p.clone())
            .filter(|p| p.len() >= 2 && p.len() <= max_size)
            .collect(),
    }
}

/// Audits the functor `F: O_B → O_A` induced by `fam` (maps `A^P → B^P`, `A = src`,
/// `B = tgt`). Functor equations are checked on words of length `≤ kmax` over subsets of
/// size `≤ kmax + 1`.
pub fn functor_check(src: &DgaSystem, tgt: &DgaSystem, fam: &MorphismFamily, kmax: usize) -> Result<FunctorAudit> {
    let family = fam.check(src, tgt);
    let cat_a = AugCat::new(src)?;
    let cat_b = AugCat::new(tgt)?;
    let field = src.field;
    let f1 = fam.maps.get(&vec![1]).ok_or(Error::MissingSubset(vec![1]))?;

    let mut object_map = Report::new();
    let mut objects = Vec::with_capacity(cat_b.augs.len());
    for (b, eps) in cat_b.augs.iter().enumerate() {
        let pulled = f1.pull_back_aug(eps);
        match cat_a.augs.iter().position(|a| *a == pulled) {
            Some(a) => objects.push(a),
            None => {
                object_map.push("objects", format!("ε{b}"), "ε ∘ f is not an augmentation of the source");
                objects.push(usize::MAX);
            }
        }
    }
    let mut seen = objects.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != objects.len() || objects.len() != cat_a.augs.len() {
        object_map.push(
            "objects",
            "augmentations",
            format!(
                "ε ↦ ε ∘ f is not a bijection: {} target, {} source, {} distinct images",
                cat_b.augs.len(),
                cat_a.augs.len(),
                seen.len()
            ),
        );
    }
    let mut audit = FunctorAudit {
        objects: objects.clone(),
        source_objects: cat_a.augs.len(),
        family,
        object_map,
        equations: Report::new(),
        quasi_iso: Report::new(),
        w: Report::new(),
        tuples: 0,
        homs: 0,
    };
    if !audit.family.passed() || !audit.object_map.passed() {
        return Ok(audit);
    }

    for p in audit_subsets(src, kmax + 1) {
        let f = fam.maps.get(&p).ok_or_else(|| Error::MissingSubset(p.clone()))?;
        for objs in tuples(cat_b.augs.len(), p.len()) {
            audit.tuples += 1;
            let mapped: Vec<usize> = objs.iter().map(|&b| objects[b]).collect();
            let (_, eps_b) = cat_b.diagonal(&p, &objs)?;
            let (_, eps_a) = cat_a.diagonal(&p, &mapped)?;
            let subject = format!("{p:?} {objs:?}");
            if f.pull_back_aug(&eps_b) != eps_a {
                audit
                    .equations
                    .push("objects", subject, "diagonal of ε ∘ f differs from ε_B ∘ f");
                continue;
            }
            let fe = match TwistedMap::new(f, &eps_a, &eps_b) {
                Ok(fe) => fe,
                Err(e) => {
                    audit.equations.push("constant", subject, e.to_string());
                    continue;
                }
            };
            let ta = twist(&f.source, &eps_a)?;
            let tb = twist(&f.target, &eps_b)?;
            for q in 0..f.source.len() {
                let lhs = truncate(&ta.images[q].substitute(&field, &|x| fe.images[x].clone()), kmax);
                let rhs = truncate(&kleibniz(&field, &tb.images, &fe.images[q]), kmax);
                if lhs != rhs {
                    audit.equations.push(
                        "functor-equation",
                        subject.clone(),
                        format!(
                            "at {}: f_ε ∂_ε = {} but ∂_ε f_ε = {}",
                            f.source.chord(q).name,
                            f.target.fmt_kpoly(&lhs),
                            f.target.fmt_kpoly(&rhs)
                        ),
                    );
                    break;
                }
            }
        }
    }

    let n = src.copies;
    let pairs: Vec<(Label, Label)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    for &(i, j) in &pairs {
        let f = fam.maps.get(&vec![i, j]).ok_or(Error::MissingSubset(vec![i, j]))?;
        for b in 0..cat_b.augs.len() {
            for b2 in 0..cat_b.augs.len() {
                audit.homs += 1;
                let (a, a2) = (objects[b], objects[b2]);
                let hb = cat_b.hom_data(Object { copy: i, aug: b }, Object { copy: j, aug: b2 })?;
                let ha = cat_a.hom_data(Object { copy: i, aug: a }, Object { copy: j, aug: a2 })?;
                let (_, eps_b) = cat_b.diagonal(&[i, j], &[b, b2])?;
                let (_, eps_a) = cat_a.diagonal(&[i, j], &[a, a2])?;
                let fe = TwistedMap::new(f, &eps_a, &eps_b)?;
                let subject = format!("({i},ε{b}) → ({j},ε{b2})");
                if let Err(e) = quasi_iso(&cat_a, &fe, &hb, &ha) {
                    audit.quasi_iso.push("quasi-iso", subject.clone(), e);
                }
                if j == i + 1 && b == b2 {
                    if let Err(e) = w_check(&cat_a, &cat_b, &fe, &ha, a, b, i) {
                        audit.w.push("w-class", subject, e);
                    }
                }
            }
        }
    }
    Ok(audit)
}

fn quasi_iso(cat_a: &AugCat, fe: &TwistedMap, hb: &HomData, ha: &HomData) -> Result<(), String> {
    let field = cat_a.field();
    let basis = &ha.complex.basis;
    let map = |v: &CVect| -> Result<CVect> {
        let out = fe.f1(v, &field);
        let mut kept = CVect::zero();
        for (q, c) in out.entries() {
            if basis.contains(&q) {
                kept.add(q, c);
            }
        }
        Ok(kept)
    };
    let ms = cat_a.induced(hb, ha, &map).map_err(|e| e.to_string())?;
    let bad: BTreeMap<i64, (usize, usize)> = ms
        .iter()
        .filter(|(_, m)| m.rows() != m.cols() || !m.is_invertible(&field))
        .map(|(&d, m)| (d, (m.rows(), m.cols())))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(format!(
            "H*F_1 is not invertible in degrees (degree, rows, cols) {bad:?}"
        ))
    }
}

fn w_check(
    cat_a: &AugCat,
    cat_b: &AugCat,
    fe: &TwistedMap,
    ha: &HomData,
    a: usize,
    b: usize,
    i: Label,
) -> Result<(), String> {
    let field = cat_a.field();
    let wb = cat_b.w_class(b, i).map_err(|e| e.to_string())?.cochain;
    let wa = cat_a.w_class(a, i).map_err(|e| e.to_string())?.cochain;
    let image = fe.f1(&wb, &field);
    let lhs = ha.classify(0, &image).map_err(|e| e.to_string())?;
    let rhs = ha.classify(0, &wa).map_err(|e| e.to_string())?;
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("[F_1(w')] = {lhs:?} but [w] = {rhs:?}"))
    }
}
