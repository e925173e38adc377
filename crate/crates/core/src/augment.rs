//! Augmentations, their enumeration, and the twisted differential `∂_ε`.

use std::collections::HashMap;

use crate::dga::SemiFreeDga;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::group::GroupElement;
use crate::poly::{KPoly, Poly, Word};
use crate::report::Report;
use crate::ChordId;

/// Values of an algebra map `A → k` on generators. Chord values are indexed by
/// [`ChordId`]; group values by component and then generator (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Augmentation {
    pub chords: Vec<Scalar>,
    pub groups: Vec<Vec<Scalar>>,
}

impl Augmentation {
    /// Sends every chord to 0 and every group generator to 1.
    pub fn trivial(dga: &SemiFreeDga) -> Self {
        Augmentation {
            chords: vec![Scalar::ZERO; dga.len()],
            groups: dga
                .group()
                .components()
                .iter()
                .map(|c| vec![Scalar::ONE; c.rank as usize])
                .collect(),
        }
    }

    pub fn chord(&self, q: ChordId) -> Scalar {
        self.chords[q]
    }

    fn shape_matches(&self, dga: &SemiFreeDga) -> bool {
        self.chords.len() == dga.len()
            && self.groups.len() == dga.group().components().len()
            && self
                .groups
                .iter()
                .zip(dga.group().components())
                .all(|(v, c)| v.len() == c.rank as usize)
    }

    pub fn eval_group(&self, field: &Field, g: &GroupElement) -> Scalar {
        let mut acc = Scalar::ONE;
        for (comp, l) in g.letters() {
            let v = self.groups[comp][(l.unsigned_abs() - 1) as usize];
            let v = if l < 0 {
                field.inv(v).expect("group values are units")
            } else {
                v
            };
            acc = field.mul(acc, v);
        }
        acc
    }

    pub fn eval_word(&self, field: &Field, w: &Word) -> Scalar {
        let mut acc = Scalar::ONE;
        for &q in w.chords() {
            acc = field.mul(acc, self.chords[q]);
            if acc.is_zero() {
                return acc;
            }
        }
        for g in w.groups() {
            acc = field.mul(acc, self.eval_group(field, g));
        }
        acc
    }

    pub fn eval(&self, field: &Field, p: &Poly) -> Scalar {
        let mut acc = Scalar::ZERO;
        for (w, c) in p.terms() {
            acc += field.mul(c, self.eval_word(field, w));
        }
        acc
    }

    /// Human-readable assignment of the nonzero chord values and all group values.
    pub fn describe(&self, dga: &SemiFreeDga) -> String {
        let mut parts: Vec<String> = dga
            .chords()
            .iter()
            .enumerate()
            .filter(|(q, _)| !self.chords[*q].is_zero())
            .map(|(q, ch)| format!("{}={}", ch.name, self.chords[q]))
            .collect();
        for (comp, vals) in dga.group().components().iter().zip(&self.groups) {
            for (i, v) in vals.iter().enumerate() {
                let name = if comp.rank == 1 {
                    comp.name.clone()
                } else {
                    format!("{}.{}", comp.name, i + 1)
                };
                parts.push(format!("{name}={v}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(", ")
        }
    }
}

/// Every violated augmentation axiom.
pub fn aug_violations(dga: &SemiFreeDga, eps: &Augmentation) -> Report {
    let mut report = Report::new();
    let field = dga.field();
    if !eps.shape_matches(dga) {
        report.push("shape", "augmentation", "value vector does not match the DGA");
        return report;
    }
    for (q, ch) in dga.chords().iter().enumerate() {
        let v = eps.chords[q];
        if !field.contains(v) {
            report.push("field", &ch.name, format!("value {v} is not in {field}"));
        } else if ch.degree != 0 && !v.is_zero() {
            report.push(
                "degree",
                &ch.name,
                format!("nonzero value on a degree-{} generator", ch.degree),
            );
        }
    }
    for (comp, vals) in dga.group().components().iter().zip(&eps.groups) {
        for v in vals {
            if v.is_zero() || !field.contains(*v) {
                report.push("group", &comp.name, format!("value {v} is not a unit of {field}"));
            }
        }
    }
    if !report.passed() {
        return report;
    }
    for (q, ch) in dga.chords().iter().enumerate() {
        let v = eps.eval(field, dga.differential(q));
        if !v.is_zero() {
            report.push("relation", &ch.name, format!("ε(∂{}) = {v}", ch.name));
        }
    }
    report
}

pub fn is_aug(dga: &SemiFreeDga, eps: &Augmentation) -> bool {
    aug_violations(dga, eps).passed()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Unknown {
    Chord(ChordId),
    Group(usize, usize),
}

/// One monomial of a relation after dropping everything known to vanish.
#[derive(Clone, Debug)]
struct Monomial {
    coef: Scalar,
    /// (unknown index, signed power contribution of one factor)
    factors: Vec<(usize, i32)>,
}

struct Search<'a> {
    field: &'a Field,
    unknowns: Vec<Unknown>,
    relations: Vec<Vec<Monomial>>,
    by_unknown: Vec<Vec<usize>>,
    domain: Vec<Vec<Scalar>>,
    order: Vec<usize>,
    found: Vec<Vec<Scalar>>,
}

impl Search<'_> {
    fn eval_monomial(&self, m: &Monomial, values: &[Option<Scalar>]) -> Option<Scalar> {
        let mut acc = m.coef;
        for &(u, s) in &m.factors {
            let v = values[u]?;
            let v = if s < 0 { self.field.inv(v).ok()? } else { v };
            acc = self.field.mul(acc, v);
        }
        Some(acc)
    }

    /// Splits a relation as `a·u + b` in its single unassigned unknown `u`, if it is
    /// linear in `u`.
    fn linear_in(&self, rel: &[Monomial], u: usize, values: &[Option<Scalar>]) -> Option<(Scalar, Scalar)> {
        let mut a = Scalar::ZERO;
        let mut b = Scalar::ZERO;
        for m in rel {
            let occ: Vec<i32> = m.factors.iter().filter(|f| f.0 == u).map(|f| f.1).collect();
            match occ.as_slice() {
                [] => b += self.eval_monomial(m, values)?,
                [1] => {
                    let mut acc = m.coef;
                    for &(x, s) in &m.factors {
                        if x == u {
                            continue;
                        }
                        let v = values[x]?;
                        let v = if s < 0 { self.field.inv(v).ok()? } else { v };
                        acc = self.field.mul(acc, v);
                    }
                    a += acc;
                }
                _ => return None,
            }
        }
        Some((a, b))
    }

    /// Returns false on contradiction. Forced assignments are appended to `trail`.
    fn propagate(&self, values: &mut [Option<Scalar>], trail: &mut Vec<usize>, touched: Vec<usize>) -> bool {
        let mut queue = touched;
        while let Some(r) = queue.pop() {
            let rel = &self.relations[r];
            let open: Vec<usize> = {
                let mut v: Vec<usize> = rel
                    .iter()
                    .flat_map(|m| m.factors.iter().map(|f| f.0))
                    .filter(|&u| values[u].is_none())
                    .collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            match open.as_slice() {
                [] => {
                    let mut total = Scalar::ZERO;
                    for m in rel {
                        total += self.eval_monomial(m, values).expect("all assigned");
                    }
                    if !total.is_zero() {
                        return false;
                    }
                }
                [u] => {
                    let Some((a, b)) = self.linear_in(rel, *u, values) else {
                        continue;
                    };
                    if a.is_zero() {
                        if !b.is_zero() {
                            return false;
                        }
                        continue;
                    }
                    let v = self.field.div(b, a).expect("a is nonzero");
                    if !self.domain[*u].contains(&v) {
                        return false;
                    }
                    values[*u] = Some(v);
                    trail.push(*u);
                    queue.extend(self.by_unknown[*u].iter().copied());
                }
                _ => {}
            }
        }
        true
    }

    fn run(&mut self, values: &mut Vec<Option<Scalar>>, depth: usize) {
        let Some(&u) = self.order[depth..].iter().find(|&&u| values[u].is_none()) else {
            self.found.push(values.iter().map(|v| v.expect("complete")).collect());
            return;
        };
        let next = self.order.iter().position(|&x| x == u).unwrap();
        for v in self.domain[u].clone() {
            values[u] = Some(v);
            let mut trail = vec![u];
            if self.propagate(values, &mut trail, self.by_unknown[u].clone()) {
                self.run(values, next + 1);
            }
            for x in trail {
                values[x] = None;
            }
        }
    }
}

/// All augmentations of `dga` over its field, in lexicographic order of the value vector.
/// With `respect_link_grading`, off-diagonal chords are forced to 0.
pub fn enumerate_augs(dga: &SemiFreeDga, respect_link_grading: bool) -> Vec<Augmentation> {
    let field = dga.field();
    let mut unknowns = Vec::new();
    let mut slot: HashMap<Unknown, usize> = HashMap::new();
    for (q, ch) in dga.chords().iter().enumerate() {
        if ch.degree == 0 && (!respect_link_grading || ch.is_diagonal()) {
            slot.insert(Unknown::Chord(q), unknowns.len());
            unknowns.push(Unknown::Chord(q));
        }
    }
    for (ci, comp) in dga.group().components().iter().enumerate() {
        for k in 0..comp.rank as usize {
            slot.insert(Unknown::Group(ci, k), unknowns.len());
            unknowns.push(Unknown::Group(ci, k));
        }
    }
    let mut relations = Vec::new();
    let mut constant_failure = false;
    for q in 0..dga.len() {
        let mut rel = Vec::new();
        'terms: for (w, c) in dga.differential(q).terms() {
            let mut factors = Vec::new();
            for &x in w.chords() {
                match slot.get(&Unknown::Chord(x)) {
                    Some(&u) => factors.push((u, 1)),
                    None => continue 'terms,
                }
            }
            for g in w.groups() {
                for (comp, l) in g.letters() {
                    let u = slot[&Unknown::Group(comp, (l.unsigned_abs() - 1) as usize)];
                    factors.push((u, l.signum()));
                }
            }
            rel.push(Monomial { coef: c, factors });
        }
        if rel.is_empty() {
            continue;
        }
        if rel.iter().all(|m| m.factors.is_empty()) {
            let total = rel.iter().fold(Scalar::ZERO, |a, m| a + m.coef);
            if !total.is_zero() {
                constant_failure = true;
            }
            continue;
        }
        relations.push(rel);
    }
    if constant_failure {
        return Vec::new();
    }
    let mut by_unknown = vec![Vec::new(); unknowns.len()];
    let mut count = vec![0usize; unknowns.len()];
    for (r, rel) in relations.iter().enumerate() {
        for m in rel {
            for &(u, _) in &m.factors {
                count[u] += 1;
                if by_unknown[u].last() != Some(&r) {
                    by_unknown[u].push(r);
                }
            }
        }
    }
    let domain: Vec<Vec<Scalar>> = unknowns
        .iter()
        .map(|u| match u {
            Unknown::Chord(_) => field.elements().collect(),
            Unknown::Group(..) => field.units().collect(),
        })
        .collect();
    let mut order: Vec<usize> = (0..unknowns.len()).collect();
    order.sort_by(|&a, &b| count[b].cmp(&count[a]).then(a.cmp(&b)));
    let mut search = Search {
        field,
        unknowns,
        relations,
        by_unknown,
        domain,
        order,
        found: Vec::new(),
    };
    let mut values = vec![None; search.unknowns.len()];
    search.run(&mut values, 0);
    let mut out: Vec<Augmentation> = search
        .found
        .iter()
        .map(|vals| {
            let mut eps = Augmentation::trivial(dga);
            for (u, &v) in search.unknowns.iter().zip(vals) {
                match *u {
                    Unknown::Chord(q) => eps.chords[q] = v,
                    Unknown::Group(c, k) => eps.groups[c][k] = v,
                }
            }
            eps
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The twisted differential `∂_ε = φ_ε ∂ φ_ε^{-1}` on `A^ε_+`, as `k`-polynomials.
#[derive(Clone, Debug)]
pub struct Twisted<'a> {
    pub dga: &'a SemiFreeDga,
    pub aug: Augmentation,
    pub images: Vec<KPoly>,
}

/// Evaluates group factors through `eps` and substitutes `x ↦ x + ε(x)` in one polynomial.
pub fn twist_poly(dga: &SemiFreeDga, eps: &Augmentation, p: &Poly) -> KPoly {
    let field = dga.field();
    let mut out = KPoly::zero();
    for (w, c) in p.terms() {
        let mut coef = c;
        for g in w.groups() {
            coef = field.mul(coef, eps.eval_group(field, g));
        }
        // expand the product of (x_i + ε(x_i)); chords with ε = 0 contribute only x_i
        let mut partial: Vec<(Vec<ChordId>, Scalar)> = vec![(Vec::new(), coef)];
        for &x in w.chords() {
            let e = eps.chords[x];
            let mut next = Vec::with_capacity(partial.len() * 2);
            for (word, s) in partial {
                if !e.is_zero() {
                    next.push((word.clone(), field.mul(s, e)));
                }
                let mut word = word;
                word.push(x);
                next.push((word, s));
            }
            partial = next;
        }
        for (word, s) in partial {
            out.add_term(word, s);
        }
    }
    out
}

/// Leibniz extension of a `k`-linear differential given on generators.
pub fn kleibniz(field: &Field, images: &[KPoly], p: &KPoly) -> KPoly {
    let mut out = KPoly::zero();
    for (w, c) in p.terms() {
        for (i, &q) in w.iter().enumerate() {
            for (u, s) in images[q].terms() {
                let mut word = Vec::with_capacity(w.len() + u.len());
                word.extend_from_slice(&w[..i]);
                word.extend_from_slice(u);
                word.extend_from_slice(&w[i + 1..]);
                out.add_term(word, field.mul(c, s));
            }
        }
    }
    out
}

/// Builds `∂_ε` without re-verifying `∂_ε² = 0`. The constant-term check still runs.
pub fn twist_unchecked<'a>(dga: &'a SemiFreeDga, eps: &Augmentation) -> Result<Twisted<'a>> {
    let mut images = Vec::with_capacity(dga.len());
    for q in 0..dga.len() {
        let img = twist_poly(dga, eps, dga.differential(q));
        if !img.constant().is_zero() {
            return Err(Error::ConstantTerm(dga.chord(q).name.clone()));
        }
        images.push(img);
    }
    Ok(Twisted {
        dga,
        aug: eps.clone(),
        images,
    })
}

/// Builds `∂_ε` and asserts both that no constant term survives and that `∂_ε² = 0`.
pub fn twist<'a>(dga: &'a SemiFreeDga, eps: &Augmentation) -> Result<Twisted<'a>> {
    let t = twist_unchecked(dga, eps)?;
    t.verify_square()?;
    Ok(t)
}

impl Twisted<'_> {
    pub fn image(&self, q: ChordId) -> &KPoly {
        &self.images[q]
    }

    pub fn field(&self) -> &Field {
        self.dga.field()
    }

    pub fn verify_square(&self) -> Result<()> {
        for q in 0..self.images.len() {
            if !kleibniz(self.field(), &self.images, &self.images[q]).is_zero() {
                return Err(Error::TwistNotDifferential(self.dga.chord(q).name.clone()));
            }
        }
        Ok(())
    }

    /// Longest chord word in any twisted image.
    pub fn max_word_len(&self) -> usize {
        self.images.iter().map(KPoly::max_word_len).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> SemiFreeDga {
        SemiFreeDga::builder(Field::F2)
            .component("t", 1, 1)
            .chord("a1", 1, 1, 1)
            .chord("a2", 1, 1, 1)
            .chord("b1", 0, 1, 1)
            .chord("b2", 0, 1, 1)
            .chord("b3", 0, 1, 1)
            .diff("a1", "t + b1 + b3 + b1*b2*b3")
            .diff("a2", "1 + b1 + b3 + b3*b2*b1")
            .build()
            .unwrap()
    }

    #[test]
    fn unit_differential_has_no_augmentation() {
        let d = SemiFreeDga::builder(Field::F2)
            .chord("a", 1, 1, 1)
            .diff("a", "1")
            .build()
            .unwrap();
        assert!(enumerate_augs(&d, true).is_empty());
    }

    #[test]
    fn unknot_has_one_augmentation() {
        let d = SemiFreeDga::builder(Field::F2)
            .component("t", 1, 1)
            .chord("a", 1, 1, 1)
            .diff("a", "1 + t")
            .build()
            .unwrap();
        let augs = enumerate_augs(&d, true);
        assert_eq!(augs.len(), 1);
        assert_eq!(augs[0].groups, vec![vec![Scalar::ONE]]);
        let t = twist(&d, &augs[0]).unwrap();
        assert!(t.image(0).is_zero());
    }

    #[test]
    fn trefoil_has_five_augmentations() {
        let d = trefoil();
        let augs = enumerate_augs(&d, true);
        assert_eq!(augs.len(), 5);
        for a in &augs {
            assert!(is_aug(&d, a));
            twist(&d, a).unwrap();
        }
    }

    #[test]
    fn twist_of_product() {
        let d = SemiFreeDga::builder(Field::F2)
            .chord("a", 1, 1, 1)
            .chord("b", 0, 1, 1)
            .chord("c", 0, 1, 1)
            .diff("a", "b*c + 1")
            .build()
            .unwrap();
        let mut eps = Augmentation::trivial(&d);
        eps.chords[1] = Scalar::ONE;
        eps.chords[2] = Scalar::ONE;
        assert!(is_aug(&d, &eps));
        let t = twist(&d, &eps).unwrap();
        assert_eq!(d.fmt_kpoly(t.image(0)), "b + b*c + c");
    }

    #[test]
    fn non_augmentations_rejected() {
        let d = SemiFreeDga::builder(Field::F2)
            .chord("a", 1, 1, 1)
            .chord("b", 0, 1, 1)
            .diff("a", "b")
            .build()
            .unwrap();
        assert!(is_aug(&d, &Augmentation::trivial(&d)));
        let mut eps = Augmentation::trivial(&d);
        eps.chords[1] = Scalar::ONE;
        assert!(!is_aug(&d, &eps));
        assert!(matches!(twist(&d, &eps), Err(Error::ConstantTerm(_))));
    }

    #[test]
    fn extension_field_counts() {
        // ∂a = b^3 + 1 over F_4: b ranges over the cube roots of unity
        let d = SemiFreeDga::builder(Field::new(2, None).unwrap())
            .chord("a", 1, 1, 1)
            .chord("b", 0, 1, 1)
            .diff("a", "b*b*b + 1")
            .build()
            .unwrap();
        assert_eq!(enumerate_augs(&d, true).len(), 3);
    }
}
