//! The JSON system and family file formats (see `FORMAT.md`): loading with key-path and
//! line/column diagnostics, and canonical serialization.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dga::{pattern_name, resolve_terms_with, split_pattern, Chord, Grading, RawTerm, SemiFreeDga};
use crate::field::{bits_to_string, parse_bits, Field};
use crate::group::{FreeProductSpec, GroupComponent};
use crate::morphism::{FamilySpec, Step};
use crate::poly::Poly;
use crate::system::{split_index, DgaSystem, Minima, Mode};
use crate::Label;

pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub version: u32,
    pub field: FieldSpec,
    #[serde(default)]
    pub grading: GradingSpec,
    pub mode: ModeSpec,
    pub copies: Label,
    #[serde(default)]
    pub components: Vec<ComponentSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<PatternSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differentials: Vec<SizeSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dgas: Vec<DgaSpec>,
    pub minima: Vec<MinimaSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inclusions: Vec<InclusionSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum GradingSpec {
    #[default]
    #[serde(rename = "Z")]
    Integer,
    #[serde(rename = "Z/2")]
    Mod2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeSpec {
    Explicit,
    Consistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub id: String,
    pub pi1_rank: u32,
    /// Explicit mode only: the copy label of the component.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copy: Option<Label>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pairs {
    All,
    Upper,
}

/// Consistent mode: the generators `base[i,j]` for the chosen pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternSpec {
    pub base: String,
    pub pairs: Pairs,
    pub degree: i64,
}

/// Consistent mode: the differential of `A^{[1..copies]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SizeSpec {
    pub copies: Label,
    pub map: BTreeMap<String, Vec<RawTerm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i64,
    pub c: Label,
    pub r: Label,
}

/// Explicit mode: one DGA per subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgaSpec {
    pub subset: Vec<Label>,
    pub generators: Vec<GeneratorSpec>,
    pub differentials: BTreeMap<String, Vec<RawTerm>>,
}

/// `{"base": name}` in consistent mode, `{"pair": i, "chords": [...]}` in explicit mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinimaSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<Label>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chords: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InclusionSpec {
    pub from: Vec<Label>,
    pub to: Vec<Label>,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub version: u32,
    pub maps: Vec<FamilyMapSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyMapSpec {
    pub subset: Vec<Label>,
    pub steps: Vec<StepSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StepSpec {
    Elementary {
        chord: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        x: Vec<RawTerm>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
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

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Io,
    Syntax,
    Version,
    Semantic,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Io => "io",
            ErrorKind::Syntax => "syntax",
            ErrorKind::Version => "version",
            ErrorKind::Semantic => "semantic",
        })
    }
}

/// A load failure with the offending key path and its position in the source text.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{kind} error at {path} (line {line}, column {column}): {message}")]
pub struct FormatError {
    pub kind: ErrorKind,
    pub path: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Seg {
    Key(String),
    Index(usize),
}

fn show_path(path: &[Seg]) -> String {
    if path.is_empty() {
        return "$".into();
    }
    let mut out = String::new();
    for s in path {
        match s {
            Seg::Index(i) => out.push_str(&format!("[{i}]")),
            Seg::Key(k) if !k.is_empty() && k.chars().all(|c| c.is_alphanumeric() || c == '_') => {
                if !out.is_empty() {
                    out.push('.');
                }
                out.push_str(k);
            }
            Seg::Key(k) => out.push_str(&format!("[{k:?}]")),
        }
    }
    out
}

/// Byte offset of the value at `path`, found by scanning the raw JSON text.
struct Scan<'a> {
    b: &'a [u8],
    i: usize,
}

impl Scan<'_> {
    fn ws(&mut self) {
        while self.i < self.b.len() && self.b[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn string(&mut self) -> Option<String> {
        if self.b.get(self.i) != Some(&b'"') {
            return None;
        }
        let start = self.i;
        self.i += 1;
        while self.i < self.b.len() {
            match self.b[self.i] {
                b'\\' => self.i += 2,
                b'"' => {
                    self.i += 1;
                    return serde_json::from_slice(&self.b[start..self.i]).ok();
                }
                _ => self.i += 1,
            }
        }
        None
    }

    fn skip(&mut self) -> Option<()> {
        self.ws();
        match *self.b.get(self.i)? {
            b'"' => {
                self.string()?;
            }
            open @ (b'{' | b'[') => {
                let close = if open == b'{' { b'}' } else { b']' };
                self.i += 1;
                loop {
                    self.ws();
                    if *self.b.get(self.i)? == close {
                        self.i += 1;
                        break;
                    }
                    if open == b'{' {
                        self.string()?;
                        self.ws();
                        self.i += 1;
                    }
                    self.skip()?;
                    self.ws();
                    if *self.b.get(self.i)? == b',' {
                        self.i += 1;
                    }
                }
            }
            _ => {
                while self.i < self.b.len()
                    && !matches!(self.b[self.i], b',' | b'}' | b']')
                    && !self.b[self.i].is_ascii_whitespace()
                {
                    self.i += 1;
                }
            }
        }
        Some(())
    }

    fn find(&mut self, path: &[Seg]) -> Option<usize> {
        self.ws();
        let Some((head, rest)) = path.split_first() else {
            return Some(self.i);
        };
        match (*self.b.get(self.i)?, head) {
            (b'{', Seg::Key(k)) => {
                self.i += 1;
                loop {
                    self.ws();
                    if *self.b.get(self.i)? == b'}' {
                        return None;
                    }
                    let key = self.string()?;
                    self.ws();
                    self.i += 1;
                    if &key == k {
                        return self.find(rest);
                    }
                    self.skip()?;
                    self.ws();
                    if *self.b.get(self.i)? == b',' {
                        self.i += 1;
                    }
                }
            }
            (b'[', Seg::Index(n)) => {
                self.i += 1;
                for _ in 0..*n {
                    self.skip()?;
                    self.ws();
                    if *self.b.get(self.i)? != b',' {
                        return None;
                    }
                    self.i += 1;
                }
                self.find(rest)
            }
            _ => None,
        }
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Builds errors located in one source text.
struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, kind: ErrorKind, path: &[Seg], message: impl fmt::Display) -> FormatError {
        // fall back to the longest prefix that can be found
        let mut offset = 0;
        for n in (0..=path.len()).rev() {
            if let Some(o) = (Scan {
                b: self.text.as_bytes(),
                i: 0,
            })
            .find(&path[..n])
            {
                offset = o;
                break;
            }
        }
        let (line, column) = line_col(self.text, offset);
        FormatError {
            kind,
            path: show_path(path),
            line,
            column,
            message: message.to_string(),
        }
    }
}

fn key(k: &str) -> Seg {
    Seg::Key(k.to_string())
}

fn deserialize<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        FormatError {
            kind: ErrorKind::Syntax,
            path: if path == "." { "$".into() } else { path },
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|e| FormatError {
        kind: ErrorKind::Io,
        path: "$".into(),
        line: 0,
        column: 0,
        message: format!("{}: {e}", path.display()),
    })
}

pub fn load_system(path: &Path) -> Result<DgaSystem, FormatError> {
    parse_system(&read(path)?)
}

/// Syntax, then structure: names, labels, fields and coefficients. The algebraic laws are
/// left to [`DgaSystem::check`].
pub fn parse_system(text: &str) -> Result<DgaSystem, FormatError> {
    let file: SystemFile = deserialize(text)?;
    build_system(&file, &Ctx { text })
}

/// Builds a system from an already parsed file; diagnostics carry key paths only.
pub fn system_from_file(file: &SystemFile) -> Result<DgaSystem, FormatError> {
    build_system(file, &Ctx { text: "" })
}

fn build_system(file: &SystemFile, cx: &Ctx) -> Result<DgaSystem, FormatError> {
    if file.version != VERSION {
        return Err(cx.err(
            ErrorKind::Version,
            &[key("version")],
            format!("unsupported version {} (expected {VERSION})", file.version),
        ));
    }
    let modulus = match &file.field.modulus {
        Some(m) => Some(parse_bits(m).map_err(|e| cx.err(ErrorKind::Semantic, &[key("field"), key("modulus")], e))?),
        None => None,
    };
    let field = Field::new(file.field.degree, modulus).map_err(|e| {
        let at = if file.field.modulus.is_some() {
            "modulus"
        } else {
            "degree"
        };
        cx.err(ErrorKind::Semantic, &[key("field"), key(at)], e)
    })?;
    let grading = match file.grading {
        GradingSpec::Integer => Grading::Integer,
        GradingSpec::Mod2 => Grading::Mod2,
    };
    if file.copies == 0 {
        return Err(cx.err(ErrorKind::Semantic, &[key("copies")], "at least one copy is required"));
    }
    let mut seen = std::collections::HashSet::new();
    for (k, c) in file.components.iter().enumerate() {
        if !seen.insert(&c.id) {
            return Err(cx.err(
                ErrorKind::Semantic,
                &[key("components"), Seg::Index(k), key("id")],
                format!("duplicate component id {:?}", c.id),
            ));
        }
    }
    match file.mode {
        ModeSpec::Consistent => build_consistent(file, field, grading, cx),
        ModeSpec::Explicit => build_explicit(file, field, grading, cx),
    }
}

fn resolve_map(
    map: &BTreeMap<String, Vec<RawTerm>>,
    shell: &SemiFreeDga,
    at: &[Seg],
    cx: &Ctx,
) -> Result<Vec<Poly>, FormatError> {
    let mut differential = vec![Poly::zero(); shell.len()];
    for (name, terms) in map {
        let mut here = at.to_vec();
        here.push(key(name));
        let q = shell.id(name).ok_or_else(|| {
            cx.err(
                ErrorKind::Semantic,
                &here,
                format!("differential of undeclared generator {name:?}"),
            )
        })?;
        for (t, term) in terms.iter().enumerate() {
            let p = resolve_terms_with(
                std::slice::from_ref(term),
                shell.field(),
                &|n| shell.id(n),
                shell.group(),
            )
            .map_err(|e| {
                let mut p = here.clone();
                p.push(Seg::Index(t));
                cx.err(
                    ErrorKind::Semantic,
                    &p,
                    format!("term {}: {e}", serde_json::to_string(term).unwrap_or_default()),
                )
            })?;
            differential[q].add_assign(&p);
        }
    }
    Ok(differential)
}

fn shell_dga(
    field: Field,
    grading: Grading,
    labels: Vec<Label>,
    comps: Vec<GroupComponent>,
    chords: Vec<Chord>,
    at: &[Seg],
    cx: &Ctx,
) -> Result<SemiFreeDga, FormatError> {
    let n = chords.len();
    let group = FreeProductSpec::new(comps).map_err(|e| cx.err(ErrorKind::Semantic, at, e))?;
    SemiFreeDga::new(field, grading, labels, group, chords, vec![Poly::zero(); n])
        .map_err(|e| cx.err(ErrorKind::Semantic, at, e))
}

fn with_differential(
    shell: SemiFreeDga,
    differential: Vec<Poly>,
    at: &[Seg],
    cx: &Ctx,
) -> Result<SemiFreeDga, FormatError> {
    SemiFreeDga::new(
        *shell.field(),
        shell.grading(),
        shell.labels().to_vec(),
        shell.group().clone(),
        shell.chords().to_vec(),
        differential,
    )
    .map_err(|e| cx.err(ErrorKind::Semantic, at, e))
}

fn build_consistent(file: &SystemFile, field: Field, grading: Grading, cx: &Ctx) -> Result<DgaSystem, FormatError> {
    for (k, c) in file.components.iter().enumerate() {
        if c.copy.is_some() {
            return Err(cx.err(
                ErrorKind::Semantic,
                &[key("components"), Seg::Index(k), key("copy")],
                "consistent-mode components are instantiated on every copy and take no copy label",
            ));
        }
    }
    for k in ["dgas", "inclusions"] {
        let present = if k == "dgas" {
            !file.dgas.is_empty()
        } else {
            !file.inclusions.is_empty()
        };
        if present {
            return Err(cx.err(
                ErrorKind::Semantic,
                &[key(k)],
                format!("{k:?} is only allowed in explicit mode"),
            ));
        }
    }
    let mut bases = std::collections::HashSet::new();
    for (k, g) in file.generators.iter().enumerate() {
        if !bases.insert(&g.base) || g.base.contains(['[', ']', ',']) {
            return Err(cx.err(
                ErrorKind::Semantic,
                &[key("generators"), Seg::Index(k), key("base")],
                format!("invalid or duplicate base name {:?}", g.base),
            ));
        }
    }
    let mut sizes: BTreeMap<Label, usize> = BTreeMap::new();
    for (k, s) in file.differentials.iter().enumerate() {
        if s.copies == 0 || s.copies > file.copies || sizes.insert(s.copies, k).is_some() {
            return Err(cx.err(
                ErrorKind::Semantic,
                &[key("differentials"), Seg::Index(k), key("copies")],
                format!("copies = {} is out of range or repeated", s.copies),
            ));
        }
    }
    let mut by_size = Vec::new();
    for m in 1..=file.copies {
        let k = *sizes.get(&m).ok_or_else(|| {
            cx.err(
                ErrorKind::Semantic,
                &[key("differentials")],
                format!("no differential for {m} copies"),
            )
        })?;
        let at = [key("differentials"), Seg::Index(k)];
        let mut chords = Vec::new();
        for g in &file.generators {
            for i in 1..=m {
                for j in 1..=m {
                    if g.pairs == Pairs::All || i < j {
                        chords.push(Chord::new(pattern_name(&g.base, i, j), g.degree, i, j));
                    }
                }
            }
        }
        let comps = file
            .components
            .iter()
            .flat_map(|c| {
                (1..=m).map(move |i| GroupComponent {
                    name: format!("{}[{i}]", c.id),
                    label: i,
                    rank: c.pi1_rank,
                })
            })
            .collect();
        let shell = shell_dga(field, grading, (1..=m).collect(), comps, chords, &at, cx)?;
        let mut map_at = at.to_vec();
        map_at.push(key("map"));
        let d = resolve_map(&file.differentials[k].map, &shell, &map_at, cx)?;
        by_size.push(with_differential(shell, d, &at, cx)?);
    }
    let mut minima = Vec::new();
    for (k, s) in file.minima.iter().enumerate() {
        match (&s.base, s.pair, &s.chords) {
            (Some(b), None, None) if bases.contains(b) || file.copies == 1 => minima.push(b.clone()),
            _ => {
                return Err(cx.err(
                    ErrorKind::Semantic,
                    &[key("minima"), Seg::Index(k)],
                    "consistent-mode minima are {\"base\": <declared base name>}",
                ))
            }
        }
    }
    DgaSystem::consistent(by_size, minima).map_err(|e| cx.err(ErrorKind::Semantic, &[], e))
}

fn build_explicit(file: &SystemFile, field: Field, grading: Grading, cx: &Ctx) -> Result<DgaSystem, FormatError> {
    if !file.generators.is_empty() || !file.differentials.is_empty() {
        let k = if file.generators.is_empty() {
            "differentials"
        } else {
            "generators"
        };
        return Err(cx.err(
            ErrorKind::Semantic,
            &[key(k)],
            "explicit mode lists generators and differentials under \"dgas\"",
        ));
    }
    for (k, c) in file.components.iter().enumerate() {
        match c.copy {
            Some(l) if (1..=file.copies).contains(&l) => {}
            _ => {
                return Err(cx.err(
                    ErrorKind::Semantic,
                    &[key("components"), Seg::Index(k), key("copy")],
                    "explicit-mode components need a copy label in 1..=copies",
                ))
            }
        }
    }
    let mut dgas = BTreeMap::new();
    for (k, spec) in file.dgas.iter().enumerate() {
        let at = [key("dgas"), Seg::Index(k)];
        let mut subset = spec.subset.clone();
        subset.sort_unstable();
        subset.dedup();
        if subset.len() != spec.subset.len() || subset.is_empty() || subset.iter().any(|&l| l == 0 || l > file.copies) {
            return Err(cx.err(
                ErrorKind::Semantic,
                &[key("dgas"), Seg::Index(k), key("subset")],
                "invalid copy subset",
            ));
        }
        let chords: Vec<Chord> = spec
            .generators
            .iter()
            .map(|g| Chord::new(g.name.clone(), g.degree, g.c, g.r))
            .collect();
        for (n, g) in spec.generators.iter().enumerate() {
            if !subset.contains(&g.c) || !subset.contains(&g.r) {
                return Err(cx.err(
                    ErrorKind::Semantic,
                    &[key("dgas"), Seg::Index(k), key("generators"), Seg::Index(n)],
                    format!("generator {:?} has labels outside {subset:?}", g.name),
                ));
            }
        }
        let comps = file
            .components
            .iter()
            .filter(|c| c.copy.is_some_and(|l| subset.contains(&l)))
            .map(|c| GroupComponent {
                name: c.id.clone(),
                label: c.copy.expect("checked"),
                rank: c.pi1_rank,
            })
            .collect();
        let shell = shell_dga(field, grading, subset.clone(), comps, chords, &at, cx)?;
        let mut map_at = at.to_vec();
        map_at.push(key("differentials"));
        let d = resolve_map(&spec.differentials, &shell, &map_at, cx)?;
        if dgas.insert(subset, with_differential(shell, d, &at, cx)?).is_some() {
            return Err(cx.err(
                ErrorKind::Semantic,
                &[key("dgas"), Seg::Index(k), key("subset")],
                "subset listed twice",
            ));
        }
    }
    let mut minima: BTreeMap<Label, Vec<String>> = BTreeMap::new();
    for (k, s) in file.minima.iter().enumerate() {
        match (&s.base, s.pair, &s.chords) {
            (None, Some(i), Some(names)) if i >= 1 && i < file.copies => {
                minima.entry(i).or_default().extend(names.iter().cloned());
            }
            _ => {
                return Err(cx.err(
                    ErrorKind::Semantic,
                    &[key("minima"), Seg::Index(k)],
                    "explicit-mode minima are {\"pair\": i, \"chords\": [names in A^{i,i+1}]}",
                ))
            }
        }
    }
    let mut inclusions = BTreeMap::new();
    for (k, inc) in file.inclusions.iter().enumerate() {
        let (mut from, mut to) = (inc.from.clone(), inc.to.clone());
        from.sort_unstable();
        to.sort_unstable();
        let at = [key("inclusions"), Seg::Index(k)];
        let (Some(a), Some(b)) = (dgas.get(&from), dgas.get(&to)) else {
            return Err(cx.err(
                ErrorKind::Semantic,
                &at,
                "inclusion between subsets that are not listed",
            ));
        };
        for (x, y) in &inc.map {
            if a.id(x).is_none() || b.id(y).is_none() {
                let mut p = at.to_vec();
                p.extend([key("map"), key(x)]);
                return Err(cx.err(ErrorKind::Semantic, &p, format!("unknown generator in {x:?} ↦ {y:?}")));
            }
        }
        inclusions.insert((from, to), inc.map.clone());
    }
    DgaSystem::explicit(file.copies, dgas, minima, inclusions).map_err(|e| cx.err(ErrorKind::Semantic, &[], e))
}

fn field_spec(field: &Field) -> FieldSpec {
    FieldSpec {
        degree: field.degree(),
        modulus: (field.degree() > 1).then(|| bits_to_string(field.modulus())),
    }
}

fn grading_spec(g: Grading) -> GradingSpec {
    match g {
        Grading::Integer => GradingSpec::Integer,
        Grading::Mod2 => GradingSpec::Mod2,
    }
}

fn diff_map(dga: &SemiFreeDga) -> BTreeMap<String, Vec<RawTerm>> {
    dga.chords()
        .iter()
        .enumerate()
        .map(|(q, ch)| (ch.name.clone(), dga.raw_terms(dga.differential(q))))
        .collect()
}

/// The file describing `sys`. Consistent systems must use pattern names throughout.
pub fn system_to_file(sys: &DgaSystem) -> Result<SystemFile, FormatError> {
    let fail = |m: String| FormatError {
        kind: ErrorKind::Semantic,
        path: "$".into(),
        line: 0,
        column: 0,
        message: m,
    };
    let mut file = SystemFile {
        version: VERSION,
        field: field_spec(&sys.field),
        grading: grading_spec(sys.grading),
        mode: match sys.mode {
            Mode::Consistent => ModeSpec::Consistent,
            Mode::Explicit => ModeSpec::Explicit,
        },
        copies: sys.copies,
        components: Vec::new(),
        generators: Vec::new(),
        differentials: Vec::new(),
        dgas: Vec::new(),
        minima: Vec::new(),
        inclusions: Vec::new(),
    };
    match &sys.minima {
        Minima::Consistent(bases) => {
            let (_, top) = sys.stored().last().ok_or_else(|| fail("empty system".into()))?;
            let (_, one) = sys.stored().next().expect("nonempty");
            for c in one.group().components() {
                let (id, _) =
                    split_index(&c.name).ok_or_else(|| fail(format!("component {} is not patterned", c.name)))?;
                file.components.push(ComponentSpec {
                    id: id.to_string(),
                    pi1_rank: c.rank,
                    copy: None,
                });
            }
            for ch in top.chords() {
                let (base, _, _) =
                    split_pattern(&ch.name).ok_or_else(|| fail(format!("generator {} is not patterned", ch.name)))?;
                match file.generators.iter_mut().find(|g| g.base == base) {
                    Some(g) => {
                        if ch.c >= ch.r {
                            g.pairs = Pairs::All;
                        }
                    }
                    None => file.generators.push(PatternSpec {
                        base: base.to_string(),
                        pairs: if ch.c < ch.r { Pairs::Upper } else { Pairs::All },
                        degree: ch.degree,
                    }),
                }
            }
            for (p, d) in sys.stored() {
                file.differentials.push(SizeSpec {
                    copies: p.len() as Label,
                    map: diff_map(d),
                });
            }
            file.minima = bases
                .iter()
                .map(|b| MinimaSpec {
                    base: Some(b.clone()),
                    pair: None,
                    chords: None,
                })
                .collect();
        }
        Minima::Explicit(by_pair) => {
            for (p, d) in sys.stored() {
                for c in d.group().components() {
                    if !file.components.iter().any(|x| x.id == c.name) {
                        file.components.push(ComponentSpec {
                            id: c.name.clone(),
                            pi1_rank: c.rank,
                            copy: Some(c.label),
                        });
                    }
                }
                file.dgas.push(DgaSpec {
                    subset: p.clone(),
                    generators: d
                        .chords()
                        .iter()
                        .map(|ch| GeneratorSpec {
                            name: ch.name.clone(),
                            degree: ch.degree,
                            c: ch.c,
                            r: ch.r,
                        })
                        .collect(),
                    differentials: diff_map(d),
                });
            }
            file.minima = by_pair
                .iter()
                .map(|(&i, names)| MinimaSpec {
                    base: None,
                    pair: Some(i),
                    chords: Some(names.clone()),
                })
                .collect();
            file.inclusions = sys
                .inclusion_overrides()
                .iter()
                .map(|((from, to), map)| InclusionSpec {
                    from: from.clone(),
                    to: to.clone(),
                    map: map.clone(),
                })
                .collect();
        }
    }
    Ok(file)
}

/// Canonical pretty-printed JSON with a trailing newline.
pub fn serialize_system(sys: &DgaSystem) -> Result<String, FormatError> {
    let file = system_to_file(sys)?;
    Ok(serde_json::to_string_pretty(&file).expect("serializable") + "\n")
}

pub fn load_family(path: &Path) -> Result<FamilySpec, FormatError> {
    parse_family(&read(path)?)
}

pub fn parse_family(text: &str) -> Result<FamilySpec, FormatError> {
    let file: FamilyFile = deserialize(text)?;
    let cx = Ctx { text };
    if file.version != VERSION {
        return Err(cx.err(
            ErrorKind::Version,
            &[key("version")],
            format!("unsupported version {} (expected {VERSION})", file.version),
        ));
    }
    let mut spec = FamilySpec::new();
    for (k, m) in file.maps.iter().enumerate() {
        let mut subset = m.subset.clone();
        subset.sort_unstable();
        let steps = m
            .steps
            .iter()
            .map(|s| match s.clone() {
                StepSpec::Elementary { chord, x, y, u } => Step::Elementary { chord, x, y, u },
                StepSpec::Stabilise { e1, e2, degree, c, r } => Step::Stabilise { e1, e2, degree, c, r },
                StepSpec::Destabilise { e1, e2 } => Step::Destabilise { e1, e2 },
            })
            .collect();
        if spec.insert(subset, steps).is_some() {
            return Err(cx.err(
                ErrorKind::Semantic,
                &[key("maps"), Seg::Index(k), key("subset")],
                "subset listed twice",
            ));
        }
    }
    Ok(spec)
}

pub fn serialize_family(spec: &FamilySpec) -> String {
    let file = FamilyFile {
        version: VERSION,
        maps: spec
            .iter()
            .map(|(p, steps)| FamilyMapSpec {
                subset: p.clone(),
                steps: steps
                    .iter()
                    .map(|s| match s.clone() {
                        Step::Elementary { chord, x, y, u } => StepSpec::Elementary { chord, x, y, u },
                        Step::Stabilise { e1, e2, degree, c, r } => StepSpec::Stabilise { e1, e2, degree, c, r },
                        Step::Destabilise { e1, e2 } => StepSpec::Destabilise { e1, e2 },
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled::unknot;
    use crate::mcopy::{consistent_system, CopyNames};

    #[test]
    fn consistent_round_trip() {
        let sys = consistent_system(&unknot(), 3, &CopyNames::default()).unwrap();
        let text = serialize_system(&sys).unwrap();
        let back = parse_system(&text).unwrap();
        assert_eq!(serialize_system(&back).unwrap(), text);
        for ((p, a), (q, b)) in sys.stored().zip(back.stored()) {
            assert_eq!(p, q);
            assert!(a.diff_by_name(b).is_none());
            assert_eq!(a.chords(), b.chords());
        }
    }

    #[test]
    fn locates_semantic_errors() {
        let text = r#"{
  "version": 1,
  "field": {"degree": 1},
  "mode": "consistent",
  "copies": 1,
  "components": [],
  "generators": [{"base": "a", "pairs": "all", "degree": 1}],
  "differentials": [
    {"copies": 1, "map": {"a[1,1]": [{"coef": "1", "word": [{"chord": "b[1,1]"}]}]}}
  ],
  "minima": []
}"#;
        let e = parse_system(text).unwrap_err();
        assert_eq!(e.kind, ErrorKind::Semantic);
        assert_eq!(e.path, r#"differentials[0].map["a[1,1]"][0]"#);
        assert_eq!((e.line, e.column), (9, 38));
        assert!(e.message.contains("b[1,1]"), "{}", e.message);
    }

    #[test]
    fn unknown_keys_and_versions() {
        let e = parse_system(
            r#"{"version": 1, "field": {"degree": 1}, "mode": "consistent", "copies": 1, "minima": [], "extra": 0}"#,
        )
        .unwrap_err();
        assert_eq!(e.kind, ErrorKind::Syntax);
        assert!(e.message.contains("extra"));
        let e =
            parse_system(r#"{"version": 2, "field": {"degree": 1}, "mode": "consistent", "copies": 1, "minima": []}"#)
                .unwrap_err();
        assert_eq!(e.kind, ErrorKind::Version);
        let e = parse_system(r#"{"version": 1, "field": {"degree": 2, "modulus": "101"}, "mode": "consistent", "copies": 1, "minima": []}"#).unwrap_err();
        assert_eq!(e.path, "field.modulus");
        assert!(e.message.contains("reducible"));
    }
}
