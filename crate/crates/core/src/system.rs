//! Systems of semi-free DGAs indexed by copy subsets, in explicit or consistent form.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::augment::{aug_violations, Augmentation};
use crate::dga::{pattern_name, Chord, Grading, SemiFreeDga};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{FreeProductSpec, GroupComponent};
use crate::report::Report;
use crate::{ChordId, Label};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Explicit,
    Consistent,
}

/// Designated minimum chords between adjacent copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Minima {
    /// Base names; the chords for the pair `(i, i+1)` are `base[i,i+1]`.
    Consistent(Vec<String>),
    /// Chord names in `A^{{i,i+1}}`, keyed by `i`.
    Explicit(BTreeMap<Label, Vec<String>>),
}

/// `(from, to) ↦ (source name ↦ target name)` for explicit-mode inclusions.
pub type InclusionOverrides = BTreeMap<(Vec<Label>, Vec<Label>), BTreeMap<String, String>>;

/// Splits a component name `name[i]` into its parts.
pub fn split_index(name: &str) -> Option<(&str, Label)> {
    let open = name.find('[')?;
    let inner = name[open + 1..].strip_suffix(']')?;
    Some((&name[..open], inner.trim().parse().ok()?))
}

/// Renames labels along `from[k] ↦ to[k]`, rewriting pattern names `base[c,r]` and
/// component names `name[i]` to match.
pub fn relabel_patterned(dga: &SemiFreeDga, from: &[Label], to: &[Label]) -> Result<SemiFreeDga> {
    let map: HashMap<Label, Label> = from.iter().copied().zip(to.iter().copied()).collect();
    for l in dga.labels() {
        if !map.contains_key(l) {
            return Err(Error::UnknownLabel(*l));
        }
    }
    let lm = |l: Label| map[&l];
    let components = dga
        .group()
        .components()
        .iter()
        .map(|c| GroupComponent {
            name: match split_index(&c.name) {
                Some((base, i)) if i == c.label => format!("{base}[{}]", lm(i)),
                _ => c.name.clone(),
            },
            label: lm(c.label),
            rank: c.rank,
        })
        .collect();
    let renamed = dga.relabel(&lm, &|ch: &Chord| match ch.base() {
        Some(base) => pattern_name(base, lm(ch.c), lm(ch.r)),
        None => ch.name.clone(),
    })?;
    renamed.with_group(FreeProductSpec::new(components)?)
}

/// Identification of the single-copy DGA `A^{{1}}` with `A^{{i}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyIdent {
    /// chord of `A^{{1}}` ↦ chord of `A^{{i}}`
    pub chords: Vec<ChordId>,
    /// group component of `A^{{1}}` ↦ component of `A^{{i}}`
    pub components: Vec<usize>,
}

#[derive(Debug)]
pub struct DgaSystem {
    pub field: Field,
    pub grading: Grading,
    pub copies: Label,
    pub mode: Mode,
    /// Explicit mode: one DGA per listed subset. Consistent mode: keyed by `[1..m]`.
    dgas: BTreeMap<Vec<Label>, Arc<SemiFreeDga>>,
    pub minima: Minima,
    /// Explicit mode generator maps `(P, P') ↦ {name in A^P ↦ name in A^{P'}}`; pairs
    /// without an entry map generators by name.
    inclusions: InclusionOverrides,
    cache: Mutex<HashMap<Vec<Label>, Arc<SemiFreeDga>>>,
}

impl Clone for DgaSystem {
    fn clone(&self) -> Self {
        DgaSystem {
            field: self.field,
            grading: self.grading,
            copies: self.copies,
            mode: self.mode,
            dgas: self.dgas.clone(),
            minima: self.minima.clone(),
            inclusions: self.inclusions.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl DgaSystem {
    /// `by_size[m - 1]` is the DGA on labels `1..=m`.
    pub fn consistent(by_size: Vec<SemiFreeDga>, minima: Vec<String>) -> Result<Self> {
        let first = by_size.first().ok_or(Error::EmptySubset)?;
        let (field, grading) = (*first.field(), first.grading());
        let mut dgas = BTreeMap::new();
        for (k, d) in by_size.into_iter().enumerate() {
            let labels: Vec<Label> = (1..=k as Label + 1).collect();
            if d.labels() != labels.as_slice() {
                return Err(Error::Contract(format!(
                    "DGA for {} copies has labels {:?}",
                    k + 1,
                    d.labels()
                )));
            }
            Self::same_ring(field, grading, &d)?;
            dgas.insert(labels, Arc::new(d));
        }
        Ok(DgaSystem {
            field,
            grading,
            copies: dgas.len() as Label,
            mode: Mode::Consistent,
            dgas,
            minima: Minima::Consistent(minima),
            inclusions: BTreeMap::new(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn explicit(
        copies: Label,
        dgas: BTreeMap<Vec<Label>, SemiFreeDga>,
        minima: BTreeMap<Label, Vec<String>>,
        inclusions: InclusionOverrides,
    ) -> Result<Self> {
        let first = dgas.values().next().ok_or(Error::EmptySubset)?;
        let (field, grading) = (*first.field(), first.grading());
        let mut out = BTreeMap::new();
        for (p, d) in dgas {
            if p.iter().any(|&l| l == 0 || l > copies) || d.labels() != p.as_slice() {
                return Err(Error::Contract(format!(
                    "DGA for subset {p:?} has labels {:?}",
                    d.labels()
                )));
            }
            Self::same_ring(field, grading, &d)?;
            out.insert(p, Arc::new(d));
        }
        Ok(DgaSystem {
            field,
            grading,
            copies,
            mode: Mode::Explicit,
            dgas: out,
            minima: Minima::Explicit(minima),
            inclusions,
            cache: Mutex::new(HashMap::new()),
        })
    }

    fn same_ring(field: Field, grading: Grading, d: &SemiFreeDga) -> Result<()> {
        if *d.field() != field || d.grading() != grading {
            return Err(Error::Contract(
                "DGAs of one system must share field and grading".into(),
            ));
        }
        Ok(())
    }

    /// The stored DGAs: subsets in explicit mode, `[1..m]` in consistent mode.
    pub fn stored(&self) -> impl Iterator<Item = (&Vec<Label>, &Arc<SemiFreeDga>)> {
        self.dgas.iter()
    }

    pub fn inclusion_overrides(&self) -> &InclusionOverrides {
        &self.inclusions
    }

    fn normalise(&self, subset: &[Label]) -> Result<Vec<Label>> {
        let mut p = subset.to_vec();
        p.sort_unstable();
        p.dedup();
        if p.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&l) = p.iter().find(|&&l| l == 0 || l > self.copies) {
            return Err(Error::UnknownLabel(l));
        }
        Ok(p)
    }

    /// `A^P`. In consistent mode this relabels `A^{[|P|]}` along the order-preserving bijection.
    pub fn dga(&self, subset: &[Label]) -> Result<Arc<SemiFreeDga>> {
        let p = self.normalise(subset)?;
        match self.mode {
            Mode::Explicit => self.dgas.get(&p).cloned().ok_or(Error::MissingSubset(p)),
            Mode::Consistent => {
                let m = p.len() as Label;
                let base: Vec<Label> = (1..=m).collect();
                let stored = self.dgas.get(&base).ok_or_else(|| Error::MissingSubset(p.clone()))?;
                if p == base {
                    return Ok(stored.clone());
                }
                if let Some(d) = self.cache.lock().expect("cache lock").get(&p) {
                    return Ok(d.clone());
                }
                let d = Arc::new(relabel_patterned(stored, &base, &p)?);
                self.cache.lock().expect("cache lock").insert(p, d.clone());
                Ok(d)
            }
        }
    }

    /// Generator map `A^P → A^{P'}` as chord ids.
    pub fn inclusion(&self, from: &[Label], to: &[Label]) -> Result<Vec<ChordId>> {
        let (p, pp) = (self.normalise(from)?, self.normalise(to)?);
        if !p.iter().all(|l| pp.contains(l)) {
            return Err(Error::Precondition(format!("{p:?} is not a subset of {pp:?}")));
        }
        let (a, b) = (self.dga(&p)?, self.dga(&pp)?);
        let overrides = self.inclusions.get(&(p.clone(), pp.clone()));
        a.chords()
            .iter()
            .map(|ch| {
                let target = overrides.and_then(|m| m.get(&ch.name)).unwrap_or(&ch.name);
                b.id(target).ok_or_else(|| {
                    Error::Contract(format!("inclusion {p:?} → {pp:?}: {} has no image {target}", ch.name))
                })
            })
            .collect()
    }

    /// Names of the designated minima of the pair `(i, i+1)`, as chords of `A^{{i,i+1}}`.
    pub fn minima_names(&self, i: Label) -> Result<Vec<String>> {
        match &self.minima {
            Minima::Consistent(bases) => Ok(bases.iter().map(|b| pattern_name(b, i, i + 1)).collect()),
            Minima::Explicit(map) => map
                .get(&i)
                .cloned()
                .ok_or_else(|| Error::Precondition(format!("no minima designated for the pair ({i},{})", i + 1))),
        }
    }

    /// Canonical identification of `A^{{1}}` with `A^{{i}}`: by pattern names when every
    /// chord and component is patterned, otherwise by declaration order. The result is
    /// verified to carry one differential onto the other.
    pub fn copy_ident(&self, i: Label) -> Result<CopyIdent> {
        let a1 = self.dga(&[1])?;
        let ai = self.dga(&[i])?;
        let by_pattern = || -> Option<CopyIdent> {
            let chords = a1
                .chords()
                .iter()
                .map(|ch| ai.id(&pattern_name(ch.base()?, i, i)))
                .collect::<Option<Vec<_>>>()?;
            let components = a1
                .group()
                .components()
                .iter()
                .map(|c| {
                    let (base, l) = split_index(&c.name)?;
                    (l == 1).then_some(())?;
                    ai.group().index_of(&format!("{base}[{i}]"))
                })
                .collect::<Option<Vec<_>>>()?;
            Some(CopyIdent { chords, components })
        };
        let ident = match by_pattern() {
            Some(id) => id,
            None => CopyIdent {
                chords: (0..a1.len()).collect(),
                components: (0..a1.group().components().len()).collect(),
            },
        };
        let fail = |why: String| Error::Contract(format!("copy 1 and copy {i} are not canonically identified: {why}"));
        if ai.len() != a1.len() || ai.group().components().len() != a1.group().components().len() {
            return Err(fail("different numbers of generators".into()));
        }
        for (q, ch) in a1.chords().iter().enumerate() {
            if ai.chord(ident.chords[q]).degree != ch.degree {
                return Err(fail(format!("degree of {}", ch.name)));
            }
        }
        for (c, comp) in a1.group().components().iter().enumerate() {
            if ai.group().components()[ident.components[c]].rank != comp.rank {
                return Err(fail(format!("rank of {}", comp.name)));
            }
        }
        for q in 0..a1.len() {
            let mapped = a1.differential(q).map_words(|w| {
                w.map_chords(|x| ident.chords[x])
                    .map_groups(|g| g.map_components(|c| ident.components[c]))
            });
            if &mapped != ai.differential(ident.chords[q]) {
                return Err(fail(format!("differential of {}", a1.chord(q).name)));
            }
        }
        Ok(ident)
    }

    /// Transports an augmentation of `A^{{1}}` to `A^{{i}}`.
    pub fn transport(&self, i: Label, eps: &Augmentation) -> Result<Augmentation> {
        let ai = self.dga(&[i])?;
        let ident = self.copy_ident(i)?;
        let mut out = Augmentation::trivial(&ai);
        for (q, &v) in eps.chords.iter().enumerate() {
            out.chords[ident.chords[q]] = v;
        }
        for (c, vals) in eps.groups.iter().enumerate() {
            out.groups[ident.components[c]] = vals.clone();
        }
        Ok(out)
    }

    /// The diagonal augmentation of `A^P` assembled from augmentations of `A^{{1}}`,
    /// one per label of `P` in increasing order.
    pub fn diagonal_aug(&self, subset: &[Label], parts: &[&Augmentation]) -> Result<(Arc<SemiFreeDga>, Augmentation)> {
        let p = self.normalise(subset)?;
        if p.len() != parts.len() {
            return Err(Error::Precondition(format!(
                "{} augmentations for {} copies",
                parts.len(),
                p.len()
            )));
        }
        let a1 = self.dga(&[1])?;
        let big = self.dga(&p)?;
        let mut eps = Augmentation::trivial(&big);
        for (&l, part) in p.iter().zip(parts) {
            let r = aug_violations(&a1, part);
            if !r.passed() {
                return Err(Error::NotAugmentation(format!("part for copy {l}: {}", r.findings[0])));
            }
            let local = self.transport(l, part)?;
            let al = self.dga(&[l])?;
            let inc = self.inclusion(&[l], &p)?;
            for (q, &v) in local.chords.iter().enumerate() {
                eps.chords[inc[q]] = v;
            }
            for (c, comp) in al.group().components().iter().enumerate() {
                let target = big
                    .group()
                    .index_of(&comp.name)
                    .ok_or_else(|| Error::Contract(format!("component {} missing from {p:?}", comp.name)))?;
                eps.groups[target] = local.groups[c].clone();
            }
        }
        let r = aug_violations(&big, &eps);
        if !r.passed() {
            return Err(Error::NotAugmentation(format!("diagonal on {p:?}: {}", r.findings[0])));
        }
        Ok((big, eps))
    }

    /// Verifies every system axiom; see the module docs of each check for the codes used.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        for (p, d) in &self.dgas {
            report.extend_scoped(&format!("A{p:?}"), d.check());
        }
        match self.mode {
            Mode::Explicit => self.check_explicit(&mut report),
            Mode::Consistent => self.check_consistent(&mut report),
        }
        self.check_minima(&mut report);
        report
    }

    fn check_explicit(&self, report: &mut Report) {
        for l in 1..=self.copies {
            if !self.dgas.contains_key(&vec![l]) {
                report.push("missing", format!("A[{l}]"), "every single copy must be present");
            }
        }
        let keys: Vec<&Vec<Label>> = self.dgas.keys().collect();
        for &p in &keys {
            for &pp in &keys {
                if p.len() >= pp.len() || !p.iter().all(|l| pp.contains(l)) {
                    continue;
                }
                let subject = format!("{p:?} ⊂ {pp:?}");
                match self.inclusion_image(p, pp) {
                    Ok(renamed) => {
                        let sub = self.dgas[pp].subalgebra(p).expect("p is a subset");
                        if let Some(diff) = renamed.diff_by_name(&sub) {
                            report.push("axiom-3", &subject, format!("A^P is not isomorphic to A^P'_P: {diff}"));
                        }
                    }
                    Err(e) => report.push("inclusion", &subject, e.to_string()),
                }
                for &ppp in &keys {
                    if pp.len() >= ppp.len() || !pp.iter().all(|l| ppp.contains(l)) {
                        continue;
                    }
                    let (Ok(f), Ok(g), Ok(h)) =
                        (self.inclusion(p, pp), self.inclusion(pp, ppp), self.inclusion(p, ppp))
                    else {
                        continue;
                    };
                    if f.iter().map(|&x| g[x]).collect::<Vec<_>>() != h {
                        report.push(
                            "functoriality",
                            format!("{p:?} ⊂ {pp:?} ⊂ {ppp:?}"),
                            "inclusion maps do not compose",
                        );
                    }
                }
            }
        }
    }

    /// `A^P` renamed along the inclusion into `A^{P'}`, after checking that the map is
    /// injective, preserves degrees and labels, and hits every chord of `A^{P'}_P`.
    fn inclusion_image(&self, p: &[Label], pp: &[Label]) -> Result<SemiFreeDga> {
        let map = self.inclusion(p, pp)?;
        let (a, b) = (&self.dgas[p], &self.dgas[pp]);
        let mut hit = vec![false; b.len()];
        for (q, &x) in map.iter().enumerate() {
            let (s, t) = (a.chord(q), b.chord(x));
            if (s.degree, s.c, s.r) != (t.degree, t.c, t.r) {
                return Err(Error::Contract(format!(
                    "{} ↦ {} changes degree or labels",
                    s.name, t.name
                )));
            }
            if std::mem::replace(&mut hit[x], true) {
                return Err(Error::Contract(format!("{} is hit twice", t.name)));
            }
        }
        for (x, ch) in b.chords().iter().enumerate() {
            if p.contains(&ch.c) && p.contains(&ch.r) && !hit[x] {
                return Err(Error::Contract(format!("{} is not in the image", ch.name)));
            }
        }
        a.relabel(&|l| l, &|ch: &Chord| {
            b.chord(map[a.id(&ch.name).expect("own chord")]).name.clone()
        })
    }

    fn check_consistent(&self, report: &mut Report) {
        for (p, d) in &self.dgas {
            for ch in d.chords() {
                if ch.base().is_none() {
                    report.push(
                        "pattern",
                        format!("A{p:?}"),
                        format!("{} is not named base[c,r] after its labels", ch.name),
                    );
                }
            }
            for c in d.group().components() {
                if split_index(&c.name).map(|(_, l)| l) != Some(c.label) {
                    report.push(
                        "pattern",
                        format!("A{p:?}"),
                        format!("component {} is not named name[label]", c.name),
                    );
                }
            }
        }
        if !report.passed() {
            return;
        }
        let sizes: Vec<Label> = self.dgas.keys().map(|k| k.len() as Label).collect();
        for &m in &sizes {
            let big = &self.dgas[&(1..=m).collect::<Vec<_>>()];
            for &mm in sizes.iter().filter(|&&mm| mm < m) {
                let target = &self.dgas[&(1..=mm).collect::<Vec<_>>()];
                for subset in subsets_of_size(m, mm) {
                    let initial = subset.iter().copied().eq(1..=mm);
                    let code = if initial { "axiom-3" } else { "bijection" };
                    let subject = format!("{subset:?} ⊂ [1..{m}]");
                    let sub = big.subalgebra(&subset).expect("subset of labels");
                    let base: Vec<Label> = (1..=mm).collect();
                    match relabel_patterned(&sub, &subset, &base) {
                        Ok(rel) => {
                            if let Some(diff) = rel.diff_by_name(target) {
                                report.push(code, &subject, diff);
                            }
                        }
                        Err(e) => report.push(code, &subject, e.to_string()),
                    }
                }
            }
        }
    }

    fn check_minima(&self, report: &mut Report) {
        let expected = self.grading.reduce(-1);
        for i in 1..self.copies {
            let pair = [i, i + 1];
            let names = match self.minima_names(i) {
                Ok(n) => n,
                Err(_) => {
                    report.push("minima", format!("({i},{})", i + 1), "no minima designated");
                    continue;
                }
            };
            let Ok(d) = self.dga(&pair) else { continue };
            if names.is_empty() {
                report.push("minima", format!("({i},{})", i + 1), "empty minima designation");
            }
            for n in names {
                match d.id(&n) {
                    None => report.push("minima", format!("({i},{})", i + 1), format!("unknown chord {n}")),
                    Some(q) => {
                        let ch = d.chord(q);
                        if (ch.c, ch.r) != (i, i + 1) || ch.degree != expected {
                            report.push(
                                "minima",
                                format!("({i},{})", i + 1),
                                format!(
                                    "{n} has bigrade ({},{}) and dual degree {}, expected ({i},{}) and 0",
                                    ch.c,
                                    ch.r,
                                    ch.degree + 1,
                                    i + 1
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
}

/// All subsets of `1..=m` of size `k`, in lexicographic order.
pub fn subsets_of_size(m: Label, k: Label) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: Label, m: Label, k: Label, cur: &mut Vec<Label>, out: &mut Vec<Vec<Label>>) {
        if cur.len() as Label == k {
            out.push(cur.clone());
            return;
        }
        for l in start..=m {
            cur.push(l);
            rec(l + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(1, m, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerated() {
        assert_eq!(subsets_of_size(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets_of_size(4, 0), vec![Vec::<Label>::new()]);
    }

    #[test]
    fn component_names() {
        assert_eq!(split_index("t[3]"), Some(("t", 3)));
        assert_eq!(split_index("t"), None);
    }
}
