//! Semi-free DGAs over `k[G]` with integer or mod-2 gradings and link gradings.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::group::{FreeProductSpec, GroupComponent, GroupElement};
use crate::poly::{KPoly, Poly, Word};
use crate::report::Report;
use crate::{ChordId, Label};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    Integer,
    Mod2,
}

impl Grading {
    pub fn reduce(self, d: i64) -> i64 {
        match self {
            Grading::Integer => d,
            Grading::Mod2 => d.rem_euclid(2),
        }
    }

    pub fn same(self, a: i64, b: i64) -> bool {
        self.reduce(a) == self.reduce(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chord {
    pub name: String,
    pub degree: i64,
    pub c: Label,
    pub r: Label,
}

impl Chord {
    pub fn new(name: impl Into<String>, degree: i64, c: Label, r: Label) -> Self {
        Chord {
            name: name.into(),
            degree,
            c,
            r,
        }
    }

    /// For pattern names `base[c,r]` whose labels agree with the chord, the base name.
    pub fn base(&self) -> Option<&str> {
        let (base, c, r) = split_pattern(&self.name)?;
        (c == self.c && r == self.r).then_some(base)
    }

    pub fn is_diagonal(&self) -> bool {
        self.c == self.r
    }
}

/// Splits `base[c,r]` into its parts.
pub fn split_pattern(name: &str) -> Option<(&str, Label, Label)> {
    let open = name.find('[')?;
    let inner = name[open + 1..].strip_suffix(']')?;
    let (c, r) = inner.split_once(',')?;
    Some((&name[..open], c.trim().parse().ok()?, r.trim().parse().ok()?))
}

pub fn pattern_name(base: &str, c: Label, r: Label) -> String {
    format!("{base}[{c},{r}]")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiFreeDga {
    field: Field,
    grading: Grading,
    labels: Vec<Label>,
    group: FreeProductSpec,
    chords: Vec<Chord>,
    index: HashMap<String, ChordId>,
    differential: Vec<Poly>,
}

impl SemiFreeDga {
    /// Assembles a DGA, validating names, labels and coefficients. The algebraic laws
    /// (`∂² = 0`, degrees, link grading) are left to [`SemiFreeDga::check`].
    pub fn new(
        field: Field,
        grading: Grading,
        labels: Vec<Label>,
        group: FreeProductSpec,
        chords: Vec<Chord>,
        differential: Vec<Poly>,
    ) -> Result<Self> {
        let mut labels = labels;
        labels.sort_unstable();
        labels.dedup();
        if labels.is_empty() {
            return Err(Error::EmptySubset);
        }
        if differential.len() != chords.len() {
            return Err(Error::Contract(format!(
                "{} differentials for {} generators",
                differential.len(),
                chords.len()
            )));
        }
        for comp in group.components() {
            if !labels.contains(&comp.label) {
                return Err(Error::UnknownLabel(comp.label));
            }
        }
        let mut index = HashMap::new();
        let mut chords = chords;
        for (i, ch) in chords.iter_mut().enumerate() {
            if group.index_of(&ch.name).is_some() || index.insert(ch.name.clone(), i).is_some() {
                return Err(Error::DuplicateName(ch.name.clone()));
            }
            for l in [ch.c, ch.r] {
                if !labels.contains(&l) {
                    return Err(Error::UnknownLabel(l));
                }
            }
            ch.degree = grading.reduce(ch.degree);
        }
        for p in &differential {
            for (w, c) in p.terms() {
                field.check(c)?;
                for &q in w.chords() {
                    if q >= chords.len() {
                        return Err(Error::Contract(format!("chord index {q} out of range")));
                    }
                }
                for g in w.groups() {
                    group.validate(g)?;
                }
            }
        }
        Ok(SemiFreeDga {
            field,
            grading,
            labels,
            group,
            chords,
            index,
            differential,
        })
    }

    /// Single-label DGA with no group, convenient for small examples.
    pub fn builder(field: Field) -> DgaBuilder {
        DgaBuilder {
            field,
            grading: Grading::Integer,
            labels: Vec::new(),
            components: Vec::new(),
            chords: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn group(&self) -> &FreeProductSpec {
        &self.group
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn chord(&self, q: ChordId) -> &Chord {
        &self.chords[q]
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<ChordId> {
        self.index.get(name).copied()
    }

    pub fn id_or_err(&self, name: &str) -> Result<ChordId> {
        self.id(name).ok_or_else(|| Error::UnknownChord(name.to_string()))
    }

    pub fn differential(&self, q: ChordId) -> &Poly {
        &self.differential[q]
    }

    pub fn differentials(&self) -> &[Poly] {
        &self.differential
    }

    /// Chords with `c = i` and `r = j`, in declaration order.
    pub fn hom_basis(&self, i: Label, j: Label) -> Vec<ChordId> {
        (0..self.chords.len())
            .filter(|&q| self.chords[q].c == i && self.chords[q].r == j)
            .collect()
    }

    pub fn word_degree(&self, w: &Word) -> i64 {
        w.chords().iter().map(|&q| self.chords[q].degree).sum()
    }

    /// Extends `∂` to `p` by the Leibniz rule; group elements are closed.
    pub fn leibniz(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in p.terms() {
            for (i, &q) in w.chords().iter().enumerate() {
                let d = &self.differential[q];
                if d.is_zero() {
                    continue;
                }
                let term = d.sandwich(&w.prefix(i), &w.suffix(i));
                out.add_assign(&term.scale(&self.field, c));
            }
        }
        out
    }

    /// Labels seen at each group-factor position of a word of `∂q`, assuming the word
    /// is composable for `q`.
    fn factor_labels(&self, q: &Chord, w: &Word) -> Vec<Label> {
        let chords = w.chords();
        let mut out = Vec::with_capacity(chords.len() + 1);
        out.push(chords.first().map_or(q.c, |&x| self.chords[x].c));
        for &x in chords {
            out.push(self.chords[x].r);
        }
        out
    }

    /// Composable from `c(q)` to `r(q)`. The empty word is composable iff `c(q) = r(q)`.
    pub fn is_composable_for(&self, q: &Chord, w: &Word) -> bool {
        let ch = w.chords();
        match (ch.first(), ch.last()) {
            (None, _) => q.c == q.r,
            (Some(&first), Some(&last)) => {
                self.chords[first].c == q.c
                    && self.chords[last].r == q.r
                    && ch.windows(2).all(|p| self.chords[p[1]].c == self.chords[p[0]].r)
            }
            _ => unreachable!(),
        }
    }

    /// The link-grading law for one word attached to `q` (a word of `∂q`, or of the
    /// image of `q` under a morphism): composability, then group-factor labels.
    pub fn link_violation(&self, q: &Chord, w: &Word) -> Option<(&'static str, String)> {
        if !self.is_composable_for(q, w) {
            let detail = if w.is_empty() {
                format!(
                    "off-diagonal generator ({},{}) has a unit or group-only term {}",
                    q.c,
                    q.r,
                    self.fmt_word(w)
                )
            } else {
                format!("word {} is not composable from {} to {}", self.fmt_word(w), q.c, q.r)
            };
            return Some(("link-grading", detail));
        }
        let labels = self.factor_labels(q, w);
        for (g, &l) in w.groups().iter().zip(&labels) {
            for comp in g.components() {
                let cl = self.group.components()[comp].label;
                if cl != l {
                    return Some((
                        "group-label",
                        format!(
                            "word {}: factor of component {} (label {cl}) sits at label {l}",
                            self.fmt_word(w),
                            self.group.components()[comp].name
                        ),
                    ));
                }
            }
        }
        None
    }

    /// Verifies `∂² = 0`, the degree law and the link-grading law for every generator.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let mut order: Vec<ChordId> = (0..self.chords.len()).collect();
        order.sort_by(|&a, &b| self.chords[a].name.cmp(&self.chords[b].name));
        for q in order {
            let chord = &self.chords[q];
            let d = &self.differential[q];
            for (w, _) in d.terms() {
                let deg = self.word_degree(w);
                if !self.grading.same(deg, chord.degree - 1) {
                    report.push(
                        "degree",
                        &chord.name,
                        format!(
                            "word {} has degree {deg}, expected {}",
                            self.fmt_word(w),
                            self.grading.reduce(chord.degree - 1)
                        ),
                    );
                }
                if let Some((code, detail)) = self.link_violation(chord, w) {
                    report.push(code, &chord.name, detail);
                }
            }
            let dd = self.leibniz(d);
            if !dd.is_zero() {
                report.push("d-squared", &chord.name, format!("∂∂ = {}", self.fmt_poly(&dd)));
            }
        }
        report
    }

    /// The quotient `A_π` by the ideal of chords whose labels lie in different blocks.
    pub fn quotient(&self, partition: &[Vec<Label>]) -> Result<SemiFreeDga> {
        let mut seen = BTreeSet::new();
        let mut block = HashMap::new();
        for (b, part) in partition.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &l in part {
                if !self.labels.contains(&l) {
                    return Err(Error::UnknownLabel(l));
                }
                if !seen.insert(l) {
                    return Err(Error::InvalidPartition(format!("label {l} appears twice")));
                }
                block.insert(l, b);
            }
        }
        if seen.len() != self.labels.len() {
            return Err(Error::InvalidPartition("blocks do not cover every label".into()));
        }
        let keep: Vec<bool> = self.chords.iter().map(|ch| block[&ch.c] == block[&ch.r]).collect();
        Ok(self.restrict(&keep, self.labels.clone(), self.group.clone()))
    }

    /// The subalgebra `A_I`: generators with both labels in `I`, differential taken modulo
    /// the partition `I ⊔ I^c`.
    pub fn subalgebra(&self, subset: &[Label]) -> Result<SemiFreeDga> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        for l in subset {
            if !self.labels.contains(l) {
                return Err(Error::UnknownLabel(*l));
            }
        }
        let keep: Vec<bool> = self
            .chords
            .iter()
            .map(|ch| subset.contains(&ch.c) && subset.contains(&ch.r))
            .collect();
        let components: Vec<GroupComponent> = self
            .group
            .components()
            .iter()
            .filter(|c| subset.contains(&c.label))
            .cloned()
            .collect();
        let group = FreeProductSpec::new(components).expect("subset of distinct components");
        Ok(self.restrict(&keep, subset.to_vec(), group))
    }

    fn restrict(&self, keep: &[bool], labels: Vec<Label>, group: FreeProductSpec) -> SemiFreeDga {
        let mut new_id = vec![usize::MAX; self.chords.len()];
        let mut chords = Vec::new();
        for (q, ch) in self.chords.iter().enumerate() {
            if keep[q] {
                new_id[q] = chords.len();
                chords.push(ch.clone());
            }
        }
        let comp_map: Vec<Option<usize>> = self
            .group
            .components()
            .iter()
            .map(|c| group.index_of(&c.name))
            .collect();
        let mut differential = Vec::new();
        for (q, d) in self.differential.iter().enumerate() {
            if !keep[q] {
                continue;
            }
            let mut p = Poly::zero();
            for (w, c) in d.terms() {
                if w.chords().iter().any(|&x| !keep[x]) {
                    continue;
                }
                let mut ok = true;
                let groups: Vec<GroupElement> = w
                    .groups()
                    .iter()
                    .map(|g| {
                        GroupElement::reduce(g.letters().filter_map(|(comp, l)| match comp_map[comp] {
                            Some(n) => Some((n, l)),
                            None => {
                                ok = false;
                                None
                            }
                        }))
                    })
                    .collect();
                if !ok {
                    continue;
                }
                let chords_new = w.chords().iter().map(|&x| new_id[x]).collect();
                p.add_term(Word::from_parts(chords_new, groups), c);
            }
            differential.push(p);
        }
        SemiFreeDga::new(self.field, self.grading, labels, group, chords, differential)
            .expect("restriction of a valid DGA is valid")
    }

    /// Same DGA over a different field. Only allowed when every coefficient is 0 or 1.
    pub fn with_field(&self, field: Field) -> Result<SemiFreeDga> {
        for p in &self.differential {
            for (_, c) in p.terms() {
                if !c.is_one() {
                    return Err(Error::Precondition(format!(
                        "coefficient {c} has no canonical image in {field}"
                    )));
                }
            }
        }
        let mut out = self.clone();
        out.field = field;
        Ok(out)
    }

    /// Renames labels and generators. `label_map` must be injective on the labels;
    /// `name_map` gives each new generator name.
    pub fn relabel(
        &self,
        label_map: &dyn Fn(Label) -> Label,
        name_map: &dyn Fn(&Chord) -> String,
    ) -> Result<SemiFreeDga> {
        let labels = self.labels.iter().map(|&l| label_map(l)).collect();
        let components = self
            .group
            .components()
            .iter()
            .map(|c| GroupComponent {
                name: c.name.clone(),
                label: label_map(c.label),
                rank: c.rank,
            })
            .collect();
        let chords = self
            .chords
            .iter()
            .map(|ch| Chord::new(name_map(ch), ch.degree, label_map(ch.c), label_map(ch.r)))
            .collect();
        SemiFreeDga::new(
            self.field,
            self.grading,
            labels,
            FreeProductSpec::new(components)?,
            chords,
            self.differential.clone(),
        )
    }

    /// Replaces group components wholesale (names and labels), keeping indices.
    pub fn with_group(&self, group: FreeProductSpec) -> Result<SemiFreeDga> {
        SemiFreeDga::new(
            self.field,
            self.grading,
            self.labels.clone(),
            group,
            self.chords.clone(),
            self.differential.clone(),
        )
    }

    /// Compares two DGAs by generator names: degrees, labels and differentials.
    /// Group components are matched by name. Returns the first difference found.
    pub fn diff_by_name(&self, other: &SemiFreeDga) -> Option<String> {
        if self.labels != other.labels {
            return Some(format!("labels {:?} vs {:?}", self.labels, other.labels));
        }
        if self.chords.len() != other.chords.len() {
            return Some(format!("{} vs {} generators", self.chords.len(), other.chords.len()));
        }
        let mut map = vec![0; self.chords.len()];
        for (q, ch) in self.chords.iter().enumerate() {
            let Some(p) = other.id(&ch.name) else {
                return Some(format!("generator {} missing", ch.name));
            };
            let o = &other.chords[p];
            if (o.degree, o.c, o.r) != (ch.degree, ch.c, ch.r) {
                return Some(format!(
                    "generator {}: (degree, c, r) = ({}, {}, {}) vs ({}, {}, {})",
                    ch.name, ch.degree, ch.c, ch.r, o.degree, o.c, o.r
                ));
            }
            map[q] = p;
        }
        let mut comp_map = Vec::new();
        for c in self.group.components() {
            match other.group.index_of(&c.name) {
                Some(i) if other.group.components()[i].rank == c.rank => comp_map.push(i),
                _ => return Some(format!("group component {} differs", c.name)),
            }
        }
        if other.group.components().len() != comp_map.len() {
            return Some("group components differ".into());
        }
        for (q, ch) in self.chords.iter().enumerate() {
            let mapped = self.differential[q].map_words(|w| {
                w.map_chords(|x| map[x])
                    .map_groups(|g| g.map_components(|c| comp_map[c]))
            });
            let theirs = &other.differential[map[q]];
            if &mapped != theirs {
                return Some(format!(
                    "∂{} = {} vs {}",
                    ch.name,
                    self.fmt_poly(&self.differential[q]),
                    other.fmt_poly(theirs)
                ));
            }
        }
        None
    }

    pub fn fmt_word(&self, w: &Word) -> String {
        let mut parts = Vec::new();
        for (i, g) in w.groups().iter().enumerate() {
            if !g.is_identity() {
                parts.push(self.group.display(g));
            }
            if let Some(&q) = w.chords().get(i) {
                parts.push(self.chords.get(q).map_or_else(|| format!("#{q}"), |c| c.name.clone()));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn fmt_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        p.terms()
            .map(|(w, c)| {
                if c.is_one() {
                    self.fmt_word(w)
                } else {
                    format!("{{{c}}}{}", self.fmt_word(w))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn fmt_kword(&self, w: &[ChordId]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&q| self.chords[q].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn fmt_kpoly(&self, p: &KPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        p.terms()
            .map(|(w, c)| {
                if c.is_one() {
                    self.fmt_kword(w)
                } else {
                    format!("{{{c}}}{}", self.fmt_kword(w))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the compact notation used in tests and generators: terms separated by `+`,
    /// factors by `*`; a factor is a generator name, `1`, or a group generator written
    /// `component`, `component.k` or either with a trailing `^-1`. A term may start with a
    /// `{bits}` coefficient.
    pub fn parse_poly(&self, text: &str) -> Result<Poly> {
        parse_poly_with(text, &self.field, &|name| self.id(name), &self.group)
    }
}

/// One term of a polynomial as written in system files: a bit-string coefficient and a
/// word of chord and group factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTerm {
    #[serde(default = "one_bits")]
    pub coef: String,
    pub word: Vec<RawFactor>,
}

fn one_bits() -> String {
    "1".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum RawFactor {
    Chord(String),
    Group(Vec<RawSyllable>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSyllable {
    pub component: String,
    pub letters: Vec<i32>,
}

impl SemiFreeDga {
    /// Resolves raw terms against this DGA's generators and group.
    pub fn resolve_terms(&self, terms: &[RawTerm]) -> Result<Poly> {
        resolve_terms_with(terms, &self.field, &|n| self.id(n), &self.group)
    }

    /// Canonical raw form: terms in polynomial order, one group factor per reduced element.
    pub fn raw_terms(&self, p: &Poly) -> Vec<RawTerm> {
        p.terms()
            .map(|(w, c)| {
                let mut word = Vec::new();
                for (i, g) in w.groups().iter().enumerate() {
                    if !g.is_identity() {
                        word.push(RawFactor::Group(
                            g.syllables()
                                .iter()
                                .map(|s| RawSyllable {
                                    component: self.group.components()[s.component].name.clone(),
                                    letters: s.letters.clone(),
                                })
                                .collect(),
                        ));
                    }
                    if let Some(&q) = w.chords().get(i) {
                        word.push(RawFactor::Chord(self.chords[q].name.clone()));
                    }
                }
                RawTerm {
                    coef: c.to_string(),
                    word,
                }
            })
            .collect()
    }
}

pub(crate) fn resolve_terms_with(
    terms: &[RawTerm],
    field: &Field,
    lookup: &dyn Fn(&str) -> Option<ChordId>,
    group: &FreeProductSpec,
) -> Result<Poly> {
    let mut p = Poly::zero();
    for t in terms {
        let coef = field.parse_scalar(&t.coef)?;
        let mut w = Word::unit();
        for f in &t.word {
            match f {
                RawFactor::Chord(n) => {
                    let q = lookup(n).ok_or_else(|| Error::UnknownChord(n.clone()))?;
                    w = w.mul(&Word::chord(q));
                }
                RawFactor::Group(syllables) => {
                    let mut raw = Vec::new();
                    for s in syllables {
                        let ci = group
                            .index_of(&s.component)
                            .ok_or_else(|| crate::error::GroupError::UnknownComponent(s.component.clone()))?;
                        raw.push((ci, s.letters.clone()));
                    }
                    w = w.mul(&Word::group(group.element(&raw)?));
                }
            }
        }
        p.add_term(w, coef);
    }
    Ok(p)
}

pub(crate) fn parse_poly_with(
    text: &str,
    field: &Field,
    lookup: &dyn Fn(&str) -> Option<ChordId>,
    group: &FreeProductSpec,
) -> Result<Poly> {
    let mut p = Poly::zero();
    let text = text.trim();
    if text == "0" || text.is_empty() {
        return Ok(p);
    }
    for term in text.split('+') {
        let mut term = term.trim();
        let mut coef = Scalar::ONE;
        if let Some(rest) = term.strip_prefix('{') {
            let (bits, rest) = rest
                .split_once('}')
                .ok_or_else(|| Error::Contract(format!("unclosed coefficient in {term:?}")))?;
            coef = field.parse_scalar(bits)?;
            term = rest.trim();
        }
        let mut w = Word::unit();
        for factor in term.split('*').map(str::trim) {
            if factor == "1" {
                continue;
            }
            if let Some(q) = lookup(factor) {
                w = w.mul(&Word::chord(q));
                continue;
            }
            let (base, inverse) = match factor.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (factor, false),
            };
            let (comp, index) = match base.rsplit_once('.') {
                Some((c, i)) if i.parse::<u32>().is_ok() => (c, i.parse().unwrap()),
                _ => (base, 1),
            };
            let ci = group
                .index_of(comp)
                .ok_or_else(|| Error::UnknownChord(factor.to_string()))?;
            let g = GroupElement::generator(ci, index, inverse);
            group.validate(&g)?;
            w = w.mul(&Word::group(g));
        }
        p.add_term(w, coef);
    }
    Ok(p)
}

/// Incremental construction of small DGAs by name.
#[derive(Clone, Debug)]
pub struct DgaBuilder {
    field: Field,
    grading: Grading,
    labels: Vec<Label>,
    components: Vec<GroupComponent>,
    chords: Vec<Chord>,
    diffs: Vec<(String, String)>,
}

impl DgaBuilder {
    pub fn grading(mut self, g: Grading) -> Self {
        self.grading = g;
        self
    }

    pub fn labels(mut self, labels: &[Label]) -> Self {
        self.labels = labels.to_vec();
        self
    }

    pub fn component(mut self, name: &str, label: Label, rank: u32) -> Self {
        self.components.push(GroupComponent {
            name: name.into(),
            label,
            rank,
        });
        self
    }

    pub fn chord(mut self, name: &str, degree: i64, c: Label, r: Label) -> Self {
        self.chords.push(Chord::new(name, degree, c, r));
        self
    }

    /// Differential in the notation of [`SemiFreeDga::parse_poly`].
    pub fn diff(mut self, name: &str, text: &str) -> Self {
        self.diffs.push((name.into(), text.into()));
        self
    }

    pub fn build(self) -> Result<SemiFreeDga> {
        let mut labels = self.labels;
        if labels.is_empty() {
            labels = self.chords.iter().flat_map(|c| [c.c, c.r]).collect();
            labels.extend(self.components.iter().map(|c| c.label));
            if labels.is_empty() {
                labels.push(1);
            }
        }
        let group = FreeProductSpec::new(self.components)?;
        let n = self.chords.len();
        let shell = SemiFreeDga::new(
            self.field,
            self.grading,
            labels,
            group,
            self.chords,
            vec![Poly::zero(); n],
        )?;
        let mut differential = vec![Poly::zero(); n];
        for (name, text) in &self.diffs {
            let q = shell.id_or_err(name)?;
            differential[q] = shell.parse_poly(text)?;
        }
        SemiFreeDga::new(
            shell.field,
            shell.grading,
            shell.labels,
            shell.group,
            shell.chords,
            differential,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unknot() -> SemiFreeDga {
        SemiFreeDga::builder(Field::F2)
            .component("t", 1, 1)
            .chord("a", 1, 1, 1)
            .diff("a", "1 + t")
            .build()
            .unwrap()
    }

    #[test]
    fn leibniz_basics() {
        let d = SemiFreeDga::builder(Field::F2)
            .chord("q1", 0, 1, 1)
            .chord("q2", 1, 1, 1)
            .diff("q2", "1")
            .build()
            .unwrap();
        assert!(d.leibniz(&Poly::one()).is_zero());
        let p = d.parse_poly("q1*q2").unwrap();
        assert_eq!(d.leibniz(&p), d.parse_poly("q1").unwrap());
    }

    #[test]
    fn unknot_passes() {
        assert!(unknot().check().passed());
    }

    #[test]
    fn degree_mismatch_is_named() {
        let d = SemiFreeDga::builder(Field::F2)
            .chord("a", 1, 1, 1)
            .chord("b", 1, 1, 1)
            .diff("a", "b")
            .build()
            .unwrap();
        let r = d.check();
        assert!(r.has("degree"));
        assert!(r.findings[0].detail.contains("word b"));
    }

    #[test]
    fn off_diagonal_unit_term_rejected() {
        let d = SemiFreeDga::builder(Field::F2)
            .chord("a", 1, 1, 2)
            .diff("a", "1")
            .build()
            .unwrap();
        assert!(d.check().has("link-grading"));
    }

    #[test]
    fn misplaced_group_factor_rejected() {
        let d = SemiFreeDga::builder(Field::F2)
            .component("t1", 1, 1)
            .component("t2", 2, 1)
            .chord("a", 1, 1, 2)
            .chord("b", 0, 1, 2)
            .diff("a", "t2*b")
            .build()
            .unwrap();
        assert!(d.check().has("group-label"));
        let ok = SemiFreeDga::builder(Field::F2)
            .component("t1", 1, 1)
            .component("t2", 2, 1)
            .chord("a", 1, 1, 2)
            .chord("b", 0, 1, 2)
            .diff("a", "t1*b*t2")
            .build()
            .unwrap();
        assert!(ok.check().passed(), "{}", ok.check());
    }

    #[test]
    fn d_squared_violation_detected() {
        let d = SemiFreeDga::builder(Field::F2)
            .chord("a", 2, 1, 1)
            .chord("b", 1, 1, 1)
            .diff("a", "b")
            .diff("b", "1")
            .build()
            .unwrap();
        assert!(d.check().has("d-squared"));
    }

    #[test]
    fn mod2_grading_reduces_degrees() {
        let d = SemiFreeDga::builder(Field::F2)
            .grading(Grading::Mod2)
            .chord("a", 3, 1, 1)
            .chord("b", 0, 1, 1)
            .diff("a", "b")
            .build()
            .unwrap();
        assert!(d.check().passed());
        assert_eq!(d.chord(0).degree, 1);
    }

    #[test]
    fn quotient_and_subalgebra() {
        let d = SemiFreeDga::builder(Field::F2)
            .chord("a", 1, 1, 3)
            .chord("b", 0, 1, 2)
            .chord("c", 0, 2, 3)
            .chord("e", 0, 1, 3)
            .diff("a", "b*c + e")
            .build()
            .unwrap();
        assert!(d.check().passed());
        let q = d.quotient(&[vec![1, 3], vec![2]]).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.fmt_poly(q.differential(q.id("a").unwrap())), "e");
        let s = d.subalgebra(&[1, 3]).unwrap();
        assert!(s.diff_by_name(&q.subalgebra(&[1, 3]).unwrap()).is_none());
        assert!(d.quotient(&[vec![1, 2, 3]]).unwrap().diff_by_name(&d).is_none());
        assert!(d.subalgebra(&[]).is_err());
        assert!(d.quotient(&[vec![1], vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn pattern_names() {
        assert_eq!(split_pattern("a1[2,3]"), Some(("a1", 2, 3)));
        assert_eq!(split_pattern("a1"), None);
        assert_eq!(Chord::new("x[1,2]", 0, 1, 2).base(), Some("x"));
        assert_eq!(Chord::new("x[1,2]", 0, 1, 3).base(), None);
    }
}
