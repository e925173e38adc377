//! The `augcat` command line: subcommands over system files, rendered as text or as a
//! JSON report document.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use augcat_core::ainfty::{compare_with_oracle, AinfOps};
use augcat_core::augcat::{compare_constructions, AugCat, ConsistentCat};
use augcat_core::augment::{enumerate_augs, twist};
use augcat_core::field::Field;
use augcat_core::format::{load_family, load_system, FormatError};
use augcat_core::functor::functor_check;
use augcat_core::linalg::{Matrix, Vector};
use augcat_core::morphism::MorphismFamily;
use augcat_core::report::{Finding, Report};
use augcat_core::synthetic::{synthetic_batch, SyntheticParams};
use augcat_core::system::{DgaSystem, Mode};
use augcat_core::{Error, Label};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "augcat", version, about = "Checks augmentation categories of DGA systems")]
pub struct Cli {
    /// Emit a JSON report document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized property tests (ainf runs synthetic oracle comparisons).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest arity for A∞ relations and functor equations.
    #[arg(long, global = true, default_value_t = 4)]
    pub kmax: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structural checks: ∂² = 0, degrees, link grading, system axioms.
    Check { file: PathBuf },
    /// Augmentations of the single-copy DGA.
    Augs {
        file: PathBuf,
        /// Field override `e` or `e:modulus` (modulus as a bit-string).
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = 1)]
        copy: Label,
    },
    /// The twisted differential of the single-copy DGA.
    Twist {
        file: PathBuf,
        #[arg(long)]
        aug: usize,
    },
    /// A∞ relations, degree law and oracle agreement for every diagonal augmentation.
    Ainf { file: PathBuf },
    /// The w-classes are cocycles.
    WCheck { file: PathBuf },
    /// The localised hom between two augmentations.
    LocHom {
        file: PathBuf,
        #[arg(long)]
        source: usize,
        #[arg(long)]
        target: usize,
    },
    /// H^0 composition tables and the unit checks for [w].
    H0 { file: PathBuf },
    /// Localised against consistent construction.
    Compare { file: PathBuf },
    /// The functor induced by a morphism family.
    FunctorCheck {
        src: PathBuf,
        tgt: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDoc {
    pub command: String,
    pub status: String,
    pub findings: Vec<Finding>,
    pub tables: Map<String, Value>,
}

impl ReportDoc {
    fn new(command: &str) -> Self {
        ReportDoc {
            command: command.into(),
            status: "pass".into(),
            findings: Vec::new(),
            tables: Map::new(),
        }
    }

    fn add(&mut self, report: Report) {
        self.findings.extend(report.findings);
    }

    fn table(&mut self, key: &str, v: Value) {
        self.tables.insert(key.into(), v);
    }

    pub fn exit_code(&self) -> i32 {
        match self.status.as_str() {
            "pass" => EXIT_PASS,
            "fail" => EXIT_VIOLATION,
            _ => EXIT_INPUT,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.status);
        for f in &self.findings {
            out.push_str(&format!("  {f}\n"));
        }
        for (k, v) in &self.tables {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

/// Exit code and rendered output.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Violation(String, String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::AugmentationIndex { .. } | Error::UnknownLabel(_) | Error::MissingSubset(_) | Error::Field(_) => {
                Failure::Input(e.to_string())
            }
            Error::InsufficientCopies(_) => Failure::Violation("insufficient-copies".into(), e.to_string()),
            Error::NotCocycle(_) => Failure::Violation("w-cocycle".into(), e.to_string()),
            Error::NotAugmentation(_) => Failure::Violation("augmentation".into(), e.to_string()),
            _ => Failure::Violation("violation".into(), e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn dims_json(d: &BTreeMap<i64, usize>) -> Value {
    Value::Object(d.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn vector_json(v: &Vector) -> Value {
    json!(v.iter().map(|s| s.to_string()).collect::<Vec<_>>())
}

fn matrix_json(m: &Matrix) -> Value {
    json!((0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn load(path: &Path) -> Res<DgaSystem> {
    Ok(load_system(path)?)
}

/// Commands past `check` assume the axioms; a system failing them is a violation.
fn load_valid(path: &Path, doc: &mut ReportDoc) -> Res<Option<DgaSystem>> {
    let sys = load(path)?;
    let r = sys.check();
    if r.passed() {
        Ok(Some(sys))
    } else {
        doc.add(r);
        Ok(None)
    }
}

fn parse_field(text: &str) -> Res<Field> {
    let (e, m) = match text.split_once(':') {
        Some((e, m)) => (e, Some(m)),
        None => (text, None),
    };
    let degree: u32 = e
        .parse()
        .map_err(|_| Failure::Input(format!("invalid field degree {e:?}")))?;
    let modulus = match m {
        Some(m) => Some(augcat_core::field::parse_bits(m).map_err(|e| Failure::Input(e.to_string()))?),
        None => None,
    };
    Field::new(degree, modulus).map_err(|e| Failure::Input(e.to_string()))
}

fn check(doc: &mut ReportDoc, file: &Path) -> Res<()> {
    let sys = load(file)?;
    doc.add(sys.check());
    doc.table(
        "mode",
        json!(if sys.mode == Mode::Consistent {
            "consistent"
        } else {
            "explicit"
        }),
    );
    doc.table("copies", json!(sys.copies));
    let sizes: Map<String, Value> = sys.stored().map(|(p, d)| (format!("{p:?}"), json!(d.len()))).collect();
    doc.table("generators", Value::Object(sizes));
    Ok(())
}

fn augs(doc: &mut ReportDoc, file: &Path, field: Option<&str>, copy: Label) -> Res<()> {
    let Some(sys) = load_valid(file, doc)? else {
        return Ok(());
    };
    let mut dga = (*sys.dga(&[copy])?).clone();
    if let Some(f) = field {
        dga = dga
            .with_field(parse_field(f)?)
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    let list = enumerate_augs(&dga, true);
    doc.table(
        "field",
        json!({"degree": dga.field().degree(), "modulus": augcat_core::field::bits_to_string(dga.field().modulus())}),
    );
    doc.table("count", json!(list.len()));
    doc.table(
        "augmentations",
        json!(list.iter().map(|a| a.describe(&dga)).collect::<Vec<_>>()),
    );
    Ok(())
}

fn twist_cmd(doc: &mut ReportDoc, file: &Path, aug: usize) -> Res<()> {
    let Some(sys) = load_valid(file, doc)? else {
        return Ok(());
    };
    let cat = AugCat::new(&sys)?;
    let eps = cat.augs.get(aug).ok_or(Error::AugmentationIndex {
        index: aug,
        count: cat.augs.len(),
    })?;
    let t = twist(&cat.single, eps)?;
    if let Err(e) = t.verify_square() {
        doc.findings.push(Finding {
            code: "twist-square".into(),
            subject: format!("ε{aug}"),
            detail: e.to_string(),
        });
    }
    doc.table("augmentation", json!(eps.describe(&cat.single)));
    let d: Map<String, Value> = cat
        .single
        .chords()
        .iter()
        .enumerate()
        .map(|(q, ch)| (ch.name.clone(), json!(cat.single.fmt_kpoly(t.image(q)))))
        .collect();
    doc.table("differential", Value::Object(d));
    Ok(())
}

fn ainf(doc: &mut ReportDoc, file: &Path, kmax: usize, seed: Option<u64>) -> Res<()> {
    let Some(sys) = load_valid(file, doc)? else {
        return Ok(());
    };
    let cat = AugCat::new(&sys)?;
    let all: Vec<Label> = (1..=sys.copies).collect();
    let audit = cat.check_ainf(&all, kmax, true)?;
    doc.add(audit.relations.clone());
    doc.add(audit.degree.clone());
    doc.add(audit.oracle.clone());
    doc.table("objects", json!(cat.augs.len()));
    doc.table("diagonal_augmentations", json!(audit.augmentations));
    doc.table("structure_constants", json!(audit.structure_constants));
    if sys.mode == Mode::Consistent && sys.copies >= 2 {
        let cc = ConsistentCat::new(&cat)?;
        doc.add(cc.check_relations(kmax)?);
        doc.table("consistent_arity", json!(kmax.min(sys.copies as usize - 1)));
    }
    if let Some(seed) = seed {
        let mut constants = 0;
        let batch = synthetic_batch(seed, 100, &SyntheticParams::default());
        for s in &batch {
            let ops = AinfOps::from_aug(&s.dga, &s.aug)?;
            constants += ops.table(kmax).len();
            doc.add(ops.check_relations(kmax));
            let mut r = Report::new();
            r.extend_scoped(&format!("synthetic seed {}", s.seed), compare_with_oracle(&ops, kmax));
            doc.add(r);
        }
        doc.table(
            "synthetic",
            json!({"seed": seed, "count": batch.len(), "structure_constants": constants}),
        );
    }
    Ok(())
}

fn w_check(doc: &mut ReportDoc, file: &Path) -> Res<()> {
    let Some(sys) = load_valid(file, doc)? else {
        return Ok(());
    };
    let cat = AugCat::new(&sys)?;
    doc.add(cat.w_check_all());
    let mut classes = Map::new();
    for a in 0..cat.augs.len() {
        for i in 1..sys.copies {
            if let Ok(w) = cat.w_class(a, i) {
                let d = sys.dga(&[i, i + 1])?;
                classes.insert(format!("ε{a} ({i},{})", i + 1), json!(w.cochain.display(&d)));
            }
        }
    }
    doc.table("w", Value::Object(classes));
    Ok(())
}

fn loc_hom(doc: &mut ReportDoc, file: &Path, a: usize, b: usize) -> Res<()> {
    let Some(sys) = load_valid(file, doc)? else {
        return Ok(());
    };
    let cat = AugCat::new(&sys)?;
    let loc = cat.loc_hom(a, b)?;
    if let Some(r) = &loc.precomposition {
        doc.add(r.clone());
    }
    let dims: Map<String, Value> = loc.dims.iter().map(|(j, d)| (j.to_string(), dims_json(d))).collect();
    doc.table("dims", Value::Object(dims));
    let transitions: Vec<Value> = loc
        .transitions
        .iter()
        .map(|t| {
            let m: Map<String, Value> = t
                .matrices
                .iter()
                .map(|(d, m)| (d.to_string(), matrix_json(m)))
                .collect();
            json!({"from": t.from, "iso": t.iso, "matrices": m})
        })
        .collect();
    doc.table("transitions", json!(transitions));
    doc.table("witness", json!(loc.witness));
    doc.table("stable", dims_json(&loc.stable_dims()));
    Ok(())
}

fn h0(doc: &mut ReportDoc, file: &Path) -> Res<()> {
    let Some(sys) = load_valid(file, doc)? else {
        return Ok(());
    };
    let cat = AugCat::new(&sys)?;
    let data = cat.h0_category()?;
    doc.add(data.unit.clone());
    doc.add(data.associativity.clone());
    doc.add(data.formal_unit.clone());
    doc.table("identification", json!(data.identification));
    let dims: Map<String, Value> = data
        .dims
        .iter()
        .map(|((a, b), d)| (format!("{a},{b}"), dims_json(d)))
        .collect();
    doc.table("dims", Value::Object(dims));
    let w: Map<String, Value> = data.w.iter().map(|(a, v)| (a.to_string(), vector_json(v))).collect();
    doc.table("w", Value::Object(w));
    let tables: Map<String, Value> = data
        .tables
        .iter()
        .map(|((a, b, c), t)| {
            let rows: Vec<Vec<Value>> = t.iter().map(|row| row.iter().map(vector_json).collect()).collect();
            (format!("{a},{b},{c}"), json!(rows))
        })
        .collect();
    doc.table("compositions", Value::Object(tables));
    Ok(())
}

fn compare(doc: &mut ReportDoc, file: &Path) -> Res<()> {
    let Some(sys) = load_valid(file, doc)? else {
        return Ok(());
    };
    if sys.mode != Mode::Consistent {
        return Err(Failure::Input("compare needs a consistent-mode system".into()));
    }
    let cat = AugCat::new(&sys)?;
    let cmp = compare_constructions(&cat);
    doc.add(cmp.report.clone());
    doc.table("pairs", json!(cmp.pairs));
    let dims: Map<String, Value> = cmp
        .dims
        .iter()
        .map(|((a, b), (l, c))| {
            (
                format!("{a},{b}"),
                json!({"localised": dims_json(l), "consistent": dims_json(c)}),
            )
        })
        .collect();
    doc.table("dims", Value::Object(dims));
    Ok(())
}

fn functor(doc: &mut ReportDoc, src: &Path, tgt: &Path, family: &Path, kmax: usize) -> Res<()> {
    let Some(a) = load_valid(src, doc)? else { return Ok(()) };
    let Some(b) = load_valid(tgt, doc)? else { return Ok(()) };
    let spec = load_family(family)?;
    let fam = MorphismFamily::from_steps(&a, &b, &spec)?;
    let audit = functor_check(&a, &b, &fam, kmax)?;
    doc.add(audit.report());
    doc.table("objects", json!(audit.objects));
    doc.table("source_objects", json!(audit.source_objects));
    doc.table("equation_tuples", json!(audit.tuples));
    doc.table("homs", json!(audit.homs));
    doc.table("maps", json!(fam.maps.len()));
    Ok(())
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Augs { .. } => "augs",
        Command::Twist { .. } => "twist",
        Command::Ainf { .. } => "ainf",
        Command::WCheck { .. } => "w-check",
        Command::LocHom { .. } => "loc-hom",
        Command::H0 { .. } => "h0",
        Command::Compare { .. } => "compare",
        Command::FunctorCheck { .. } => "functor-check",
    }
}

/// Runs one command line (including the program name) to completion.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut doc = ReportDoc::new(name(&cli.command));
    let result = match &cli.command {
        Command::Check { file } => check(&mut doc, file),
        Command::Augs { file, field, copy } => augs(&mut doc, file, field.as_deref(), *copy),
        Command::Twist { file, aug } => twist_cmd(&mut doc, file, *aug),
        Command::Ainf { file } => ainf(&mut doc, file, cli.kmax, cli.seed),
        Command::WCheck { file } => w_check(&mut doc, file),
        Command::LocHom { file, source, target } => loc_hom(&mut doc, file, *source, *target),
        Command::H0 { file } => h0(&mut doc, file),
        Command::Compare { file } => compare(&mut doc, file),
        Command::FunctorCheck { src, tgt, family } => functor(&mut doc, src, tgt, family, cli.kmax),
    };
    let mut stderr = String::new();
    match result {
        Ok(()) => {
            doc.status = if doc.findings.is_empty() { "pass" } else { "fail" }.into();
        }
        Err(Failure::Violation(code, detail)) => {
            doc.findings.push(Finding {
                code,
                subject: doc.command.clone(),
                detail,
            });
            doc.status = "fail".into();
        }
        Err(Failure::Input(msg)) => {
            doc.findings.push(Finding {
                code: "input".into(),
                subject: doc.command.clone(),
                detail: msg.clone(),
            });
            doc.status = "error".into();
            doc.tables.clear();
            stderr = format!("error: {msg}\n");
        }
    }
    let stdout = if cli.json { doc.render_json() } else { doc.render_text() };
    Outcome {
        code: doc.exit_code(),
        stdout,
        stderr,
    }
}
