//! The pre-augmentation category of a system, its `w`-classes, the cohomology-level
//! localisation by colimit, the consistent construction, and their comparison.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::ainfty::{dual_degree, AinfOps, CVect, HomComplex, HomologyTable};
use crate::augment::{enumerate_augs, twist_poly, Augmentation};
use crate::dga::{pattern_name, SemiFreeDga};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Vector};
use crate::report::Report;
use crate::system::{DgaSystem, Mode};
use crate::{ChordId, Label};

/// An object `(i, ε)`; `aug` indexes the augmentations of `A^{{1}}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Object {
    pub copy: Label,
    pub aug: usize,
}

/// A composition input: a cochain, or the strict unit of an endomorphism hom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomInput {
    Unit,
    Cochain(CVect),
}

/// A hom complex together with its cohomology and the DGA its basis lives in.
#[derive(Clone, Debug)]
pub struct HomData {
    pub dga: Arc<SemiFreeDga>,
    pub complex: HomComplex,
    pub homology: HomologyTable,
}

impl HomData {
    pub fn dense(&self, v: &CVect) -> Vector {
        v.to_dense(&self.complex.basis)
    }

    pub fn cochain(&self, v: &[Scalar]) -> CVect {
        CVect::from_dense(&self.complex.basis, v)
    }

    /// Coordinates of the class of a degree-`deg` cocycle.
    pub fn classify(&self, deg: i64, v: &CVect) -> Result<Vector> {
        let dense = self.dense(v);
        self.homology.classify(deg, &dense).ok_or_else(|| {
            Error::NotDifferential(format!(
                "{} is not a cocycle of C^∨_{}{}",
                v.display(&self.dga),
                self.complex.bigrade.0,
                self.complex.bigrade.1
            ))
        })
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.homology.groups.keys().copied().collect()
    }
}

/// `w_{ε,i} = Σ p^∨` over the minima of the pair `(i, i+1)`, certified closed.
#[derive(Clone, Debug)]
pub struct WClass {
    pub pair: (Label, Label),
    pub aug: usize,
    /// Cochain in `A^{{i,i+1}}`.
    pub cochain: CVect,
}

/// A transition `H*O((1,ε),(j,ε')) → H*O((1,ε),(j+1,ε'))`, `x ↦ m_2(x, w_{ε',j})`.
#[derive(Clone, Debug)]
pub struct Transition {
    pub from: Label,
    pub matrices: BTreeMap<i64, Matrix>,
    pub iso: bool,
}

/// The localised hom `H* Aug_+(ε, ε')` as a stabilised colimit.
#[derive(Clone, Debug)]
pub struct LocHom {
    pub source: usize,
    pub target: usize,
    /// `H*O((1,ε),(j,ε'))` dimensions for every computed `j`.
    pub dims: BTreeMap<Label, BTreeMap<i64, usize>>,
    pub transitions: Vec<Transition>,
    pub witness: Label,
    pub stable: HomData,
    /// Dimensions agree with `m_2(w, -)` pre-composition audits (`None` when `M` is too small).
    pub precomposition: Option<Report>,
}

impl LocHom {
    pub fn stable_dims(&self) -> BTreeMap<i64, usize> {
        self.stable.homology.dims()
    }
}

/// How homs on different copy pairs are identified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Identification {
    /// Chords `base[i,j]` ↔ `base[1,2]`.
    Pattern,
    /// No identification available; the unit check degrades to an isomorphism check.
    None,
}

/// Graded dimensions, degree ↦ dimension.
pub type Dims = BTreeMap<i64, usize>;

/// `(a, b, c) ↦ table[i][j]` = coordinates of `x_i ∘ y_j` in `H^0(a, c)`.
pub type H0Tables = BTreeMap<(usize, usize, usize), Vec<Vec<Vector>>>;

/// `H^0` composition data on the stable representatives of the `(1,2)` homs.
#[derive(Clone, Debug)]
pub struct H0Data {
    pub identification: Identification,
    pub dims: BTreeMap<(usize, usize), BTreeMap<i64, usize>>,
    /// `(a, b, c) ↦ table[i][j]` = coordinates of `x_i ∘ y_j` in `H^0(a, c)`.
    pub tables: H0Tables,
    /// Coordinates of `[w_a]` in `H^0(a, a)`.
    pub w: BTreeMap<usize, Vector>,
    pub unit: Report,
    pub associativity: Report,
    pub formal_unit: Report,
}

/// The pre-augmentation category of a system and everything built on it.
pub struct AugCat<'s> {
    pub sys: &'s DgaSystem,
    pub single: Arc<SemiFreeDga>,
    pub augs: Vec<Augmentation>,
}

impl<'s> AugCat<'s> {
    /// Objects are the augmentations of `A^{{1}}` over the system's field.
    pub fn new(sys: &'s DgaSystem) -> Result<Self> {
        let single = sys.dga(&[1])?;
        let augs = enumerate_augs(&single, true);
        Ok(AugCat { sys, single, augs })
    }

    pub fn field(&self) -> Field {
        self.sys.field
    }

    fn aug(&self, a: usize) -> Result<&Augmentation> {
        self.augs.get(a).ok_or(Error::AugmentationIndex {
            index: a,
            count: self.augs.len(),
        })
    }

    /// `A^P` with the diagonal augmentation built from objects `objs` (one per label).
    pub fn diagonal(&self, subset: &[Label], objs: &[usize]) -> Result<(Arc<SemiFreeDga>, Augmentation)> {
        let parts = objs.iter().map(|&a| self.aug(a)).collect::<Result<Vec<_>>>()?;
        self.sys.diagonal_aug(subset, &parts)
    }

    /// `O((i,ε),(j,ε'))`.
    pub fn preaug_hom(&self, src: Object, dst: Object) -> Result<HomComplex> {
        self.aug(src.aug)?;
        self.aug(dst.aug)?;
        if src.copy > dst.copy {
            return Err(Error::Precondition(format!(
                "no homs from copy {} down to copy {}",
                src.copy, dst.copy
            )));
        }
        if src.copy == dst.copy {
            return Ok(if src.aug == dst.aug {
                HomComplex::unit_line(self.field(), src.copy)
            } else {
                HomComplex::zero(self.field(), src.copy, dst.copy)
            });
        }
        Ok(self.hom_data(src, dst)?.complex)
    }

    /// Hom complex and cohomology for `i < j`, in `A^{{i,j}}`.
    pub fn hom_data(&self, src: Object, dst: Object) -> Result<HomData> {
        if src.copy >= dst.copy {
            return Err(Error::Precondition("hom data needs i < j".into()));
        }
        let (dga, eps) = self.diagonal(&[src.copy, dst.copy], &[src.aug, dst.aug])?;
        let ops = AinfOps::from_aug(&dga, &eps)?;
        let complex = ops.hom_complex(src.copy, dst.copy);
        let homology = complex.homology()?;
        Ok(HomData {
            dga: dga.clone(),
            complex,
            homology,
        })
    }

    /// Composition `m_k` in `O` along objects of increasing copy, with strict units.
    /// Cochain inputs are given in the DGA of their own pair `A^{{i_r, i_{r+1}}}`; the
    /// output lives in `A^{{i_1, i_{k+1}}}`.
    pub fn preaug_compose(&self, objs: &[Object], inputs: &[HomInput]) -> Result<HomInput> {
        if objs.len() != inputs.len() + 1 || inputs.is_empty() {
            return Err(Error::Precondition("k inputs need k + 1 objects".into()));
        }
        let units = inputs.iter().filter(|x| matches!(x, HomInput::Unit)).count();
        for (r, x) in inputs.iter().enumerate() {
            let (s, t) = (objs[r], objs[r + 1]);
            let ok = match x {
                HomInput::Unit => s == t,
                HomInput::Cochain(_) => s.copy < t.copy,
            };
            if !ok {
                return Err(Error::Precondition(format!(
                    "input {} does not fit objects ({}, {}) → ({}, {})",
                    r + 1,
                    s.copy,
                    s.aug,
                    t.copy,
                    t.aug
                )));
            }
        }
        if units > 0 {
            return Ok(match (inputs.len(), units) {
                (2, 1) => inputs
                    .iter()
                    .find(|x| matches!(x, HomInput::Cochain(_)))
                    .cloned()
                    .expect("one cochain"),
                (2, 2) => HomInput::Unit,
                _ => HomInput::Cochain(CVect::zero()),
            });
        }
        let labels: Vec<Label> = objs.iter().map(|o| o.copy).collect();
        let augs: Vec<usize> = objs.iter().map(|o| o.aug).collect();
        let (big, eps) = self.diagonal(&labels, &augs)?;
        let ops = AinfOps::from_aug(&big, &eps)?;
        let lifted = inputs
            .iter()
            .enumerate()
            .map(|(r, x)| match x {
                HomInput::Cochain(v) => self.lift(v, &[labels[r], labels[r + 1]], &labels),
                HomInput::Unit => unreachable!(),
            })
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&CVect> = lifted.iter().collect();
        let out = ops.mk_vec(&refs);
        let out = self.restrict(&out, &labels, &[labels[0], labels[labels.len() - 1]])?;
        Ok(HomInput::Cochain(out))
    }

    /// Moves a cochain along the inclusion `A^P → A^{P'}`.
    pub fn lift(&self, v: &CVect, from: &[Label], to: &[Label]) -> Result<CVect> {
        let map = self.sys.inclusion(from, to)?;
        let mut out = CVect::zero();
        for (q, c) in v.entries() {
            out.add(map[q], c);
        }
        Ok(out)
    }

    /// Inverse of [`AugCat::lift`] on cochains supported in the image.
    pub fn restrict(&self, v: &CVect, from: &[Label], to: &[Label]) -> Result<CVect> {
        let map = self.sys.inclusion(to, from)?;
        let inverse: HashMap<ChordId, ChordId> = map.iter().enumerate().map(|(q, &x)| (x, q)).collect();
        let mut out = CVect::zero();
        for (x, c) in v.entries() {
            let q = inverse
                .get(&x)
                .ok_or_else(|| Error::Contract(format!("cochain leaves the image of A{to:?} in A{from:?}")))?;
            out.add(*q, c);
        }
        Ok(out)
    }

    /// Builds `w_{ε,i}` and certifies `m_1(w) = 0` and degree 0.
    pub fn w_class(&self, a: usize, i: Label) -> Result<WClass> {
        let pair = [i, i + 1];
        let (dga, eps) = self.diagonal(&pair, &[a, a])?;
        let names = self.sys.minima_names(i)?;
        let mut w = CVect::zero();
        for n in &names {
            let q = dga.id_or_err(n)?;
            let ch = dga.chord(q);
            if (ch.c, ch.r) != (i, i + 1) || !dga.grading().same(dual_degree(ch), 0) {
                return Err(Error::NotCocycle(format!(
                    "minimum {n} has bigrade ({},{}) and degree {}",
                    ch.c,
                    ch.r,
                    dual_degree(ch)
                )));
            }
            w.add(q, Scalar::ONE);
        }
        if w.is_zero() {
            return Err(Error::NotCocycle(format!("no minima for the pair ({i},{})", i + 1)));
        }
        let ops = AinfOps::from_aug(&dga, &eps)?;
        let dw = ops.mk_vec(&[&w]);
        if !dw.is_zero() {
            return Err(Error::NotCocycle(format!(
                "m_1(w) = {} for augmentation {a} on ({i},{})",
                dw.display(&dga),
                i + 1
            )));
        }
        Ok(WClass {
            pair: (i, i + 1),
            aug: a,
            cochain: w,
        })
    }

    /// `m_1(w) = 0` for every augmentation and every adjacent pair.
    pub fn w_check_all(&self) -> Report {
        let mut report = Report::new();
        for a in 0..self.augs.len() {
            for i in 1..self.sys.copies {
                if let Err(e) = self.w_class(a, i) {
                    report.push("w-cocycle", format!("ε{a}, ({i},{})", i + 1), e.to_string());
                }
            }
        }
        report
    }

    /// Matrices of `H(src) → H(dst)` induced by a cochain map given on basis cochains.
    pub fn induced(
        &self,
        src: &HomData,
        dst: &HomData,
        map: &dyn Fn(&CVect) -> Result<CVect>,
    ) -> Result<BTreeMap<i64, Matrix>> {
        let mut degs: Vec<i64> = src.degrees();
        degs.extend(dst.degrees());
        degs.sort_unstable();
        degs.dedup();
        let mut out = BTreeMap::new();
        for d in degs {
            let reps = src.homology.reps(d);
            let rows = dst.homology.dim_in(d);
            let mut m = Matrix::zeros(rows, reps.len());
            for (col, rep) in reps.iter().enumerate() {
                let image = map(&src.cochain(rep))?;
                let coords = dst.classify(d, &image)?;
                for (row, &v) in coords.iter().enumerate() {
                    m.set(row, col, v);
                }
            }
            out.insert(d, m);
        }
        Ok(out)
    }

    fn all_invertible(&self, ms: &BTreeMap<i64, Matrix>) -> bool {
        ms.values().all(|m| m.is_invertible(&self.field()))
    }

    /// `x ↦ m_2(x, w_{ε',j})` from copy pair `(1, j)` to `(1, j+1)`, computed in `A^{{1,j,j+1}}`.
    pub fn transition(&self, a: usize, b: usize, j: Label, src: &HomData, dst: &HomData) -> Result<Transition> {
        let labels = [1, j, j + 1];
        let (big, eps) = self.diagonal(&labels, &[a, b, b])?;
        let ops = AinfOps::from_aug(&big, &eps)?;
        let w = self.lift(&self.w_class(b, j)?.cochain, &[j, j + 1], &labels)?;
        let map = |x: &CVect| -> Result<CVect> {
            let x = self.lift(x, &[1, j], &labels)?;
            self.restrict(&ops.mk_vec(&[&x, &w]), &labels, &[1, j + 1])
        };
        let matrices = self.induced(src, dst, &map)?;
        let iso = self.all_invertible(&matrices);
        Ok(Transition { from: j, matrices, iso })
    }

    /// Stabilised colimit of `H*O((1,ε),(j,ε'))` over `j ≥ 2`. Certifies stabilisation once
    /// two consecutive transitions are isomorphisms; all transitions up to `M` are audited.
    pub fn loc_hom(&self, a: usize, b: usize) -> Result<LocHom> {
        self.aug(a)?;
        self.aug(b)?;
        let m = self.sys.copies;
        let mut data = BTreeMap::new();
        let mut dims = BTreeMap::new();
        for j in 2..=m {
            let h = self.hom_data(Object { copy: 1, aug: a }, Object { copy: j, aug: b })?;
            dims.insert(j, h.homology.dims());
            data.insert(j, h);
        }
        let mut transitions = Vec::new();
        for j in 2..m {
            transitions.push(self.transition(a, b, j, &data[&j], &data[&(j + 1)])?);
        }
        let witness = transitions
            .windows(2)
            .find(|p| p[0].iso && p[1].iso)
            .map(|p| p[0].from)
            .ok_or_else(|| {
                Error::InsufficientCopies(format!(
                    "no two consecutive isomorphic transitions within {m} copies for ε{a} → ε{b}"
                ))
            })?;
        let precomposition = if m >= 3 {
            Some(self.precomposition_audit(a, b, &data)?)
        } else {
            None
        };
        Ok(LocHom {
            source: a,
            target: b,
            dims,
            transitions,
            witness,
            stable: data.remove(&witness).expect("witness is a computed copy"),
            precomposition,
        })
    }

    /// `y ↦ m_2(w_{ε,1}, y)` from `(2, j)` to `(1, j)` should be an isomorphism for `j ≥ 3`.
    fn precomposition_audit(&self, a: usize, b: usize, data: &BTreeMap<Label, HomData>) -> Result<Report> {
        let mut report = Report::new();
        let w = self.w_class(a, 1)?.cochain;
        for j in 3..=self.sys.copies {
            let src = self.hom_data(Object { copy: 2, aug: a }, Object { copy: j, aug: b })?;
            let labels = [1, 2, j];
            let (big, eps) = self.diagonal(&labels, &[a, a, b])?;
            let ops = AinfOps::from_aug(&big, &eps)?;
            let wl = self.lift(&w, &[1, 2], &labels)?;
            let map = |y: &CVect| -> Result<CVect> {
                let y = self.lift(y, &[2, j], &labels)?;
                self.restrict(&ops.mk_vec(&[&wl, &y]), &labels, &[1, j])
            };
            let ms = self.induced(&src, &data[&j], &map)?;
            if !self.all_invertible(&ms) {
                report.push(
                    "precomposition",
                    format!("ε{a} → ε{b}, j = {j}"),
                    "m_2(w, -) is not an isomorphism H*O((2,ε),(j,ε')) → H*O((1,ε),(j,ε'))",
                );
            }
        }
        Ok(report)
    }

    /// Moves a cochain on chords of bigrade `(i, j)` of `from` to bigrade `(k, l)` of `to`
    /// by base names.
    fn pattern_move(from: &SemiFreeDga, v: &CVect, to: &SemiFreeDga, k: Label, l: Label) -> Option<CVect> {
        let mut out = CVect::zero();
        for (q, c) in v.entries() {
            let base = from.chord(q).base()?;
            out.add(to.id(&pattern_name(base, k, l))?, c);
        }
        Some(out)
    }

    /// Whether chords of bigrade `(i, j)` of `from` correspond bijectively by base name to
    /// chords of bigrade `(k, l)` of `to`.
    fn pattern_bijective(from: &SemiFreeDga, ij: (Label, Label), to: &SemiFreeDga, kl: (Label, Label)) -> bool {
        let src = from.hom_basis(ij.0, ij.1);
        let dst = to.hom_basis(kl.0, kl.1);
        src.len() == dst.len()
            && src.iter().all(|&q| {
                from.chord(q)
                    .base()
                    .and_then(|b| to.id(&pattern_name(b, kl.0, kl.1)))
                    .is_some_and(|x| to.chord(x).degree == from.chord(q).degree)
            })
    }

    /// Pattern identification is usable when every hom `(i, j)` of `A^{{1,2,3}}` matches `(1, 2)`.
    pub fn identification(&self) -> Result<Identification> {
        if self.sys.copies < 3 {
            return Ok(Identification::None);
        }
        let d12 = self.sys.dga(&[1, 2])?;
        let d123 = self.sys.dga(&[1, 2, 3])?;
        let ok = [(1, 2), (2, 3), (1, 3)].iter().all(|&p| {
            Self::pattern_bijective(&d123, p, &d12, (1, 2)) && Self::pattern_bijective(&d12, (1, 2), &d123, p)
        });
        Ok(if ok {
            Identification::Pattern
        } else {
            Identification::None
        })
    }

    /// `H^0` composition tables, unit checks for `[w]`, associativity, and the formal unit.
    pub fn h0_category(&self) -> Result<H0Data> {
        if self.sys.copies < 3 {
            return Err(Error::InsufficientCopies(
                "H^0 composition needs at least 3 copies".into(),
            ));
        }
        let n = self.augs.len();
        let ident = self.identification()?;
        let mut homs = BTreeMap::new();
        let mut dims = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                let loc = self.loc_hom(a, b)?;
                if loc.witness != 2 {
                    return Err(Error::InsufficientCopies(format!(
                        "ε{a} → ε{b} stabilises only from copy {}; H^0 tables use copy pair (1,2)",
                        loc.witness
                    )));
                }
                dims.insert((a, b), loc.stable_dims());
                homs.insert((a, b), loc.stable);
            }
        }
        let d123 = self.sys.dga(&[1, 2, 3])?;
        let mut unit = Report::new();
        let mut w = BTreeMap::new();
        for a in 0..n {
            let wc = self.w_class(a, 1)?;
            w.insert(a, homs[&(a, a)].classify(0, &wc.cochain)?);
        }
        for a in 0..n {
            for b in 0..n {
                let h = &homs[&(a, b)];
                for (side, objs) in [("right", [a, b, b]), ("left", [a, a, b])] {
                    let (big, eps) = self.diagonal(&[1, 2, 3], &objs)?;
                    let ops = AinfOps::from_aug(&big, &eps)?;
                    let map = |x: &CVect| -> Result<CVect> {
                        let out = if side == "right" {
                            let x = self.lift(x, &[1, 2], &[1, 2, 3])?;
                            let wl = self.lift(&self.w_class(b, 2)?.cochain, &[2, 3], &[1, 2, 3])?;
                            ops.mk_vec(&[&x, &wl])
                        } else {
                            let x = Self::pattern_move(&h.dga, x, &big, 2, 3)
                                .ok_or_else(|| Error::Contract("no pattern identification".into()))?;
                            let wl = self.lift(&self.w_class(a, 1)?.cochain, &[1, 2], &[1, 2, 3])?;
                            ops.mk_vec(&[&wl, &x])
                        };
                        match ident {
                            Identification::Pattern => Self::pattern_move(&big, &out, &h.dga, 1, 2)
                                .ok_or_else(|| Error::Contract("no pattern identification".into())),
                            Identification::None => self.restrict(&out, &[1, 2, 3], &[1, 3]),
                        }
                    };
                    let subject = format!("ε{a} → ε{b}, {side} action of [w]");
                    match ident {
                        Identification::Pattern => match self.induced(h, h, &map) {
                            Ok(ms) => {
                                for (d, m) in ms {
                                    if m != Matrix::identity(m.cols()) {
                                        unit.push("unit", &subject, format!("not the identity in degree {d}"));
                                    }
                                }
                            }
                            Err(e) => unit.push("unit", &subject, e.to_string()),
                        },
                        Identification::None => {
                            if side == "left" {
                                // without names the (2,3) hom cannot be matched to (1,2)
                                continue;
                            }
                            let dst = self.hom_data(Object { copy: 1, aug: a }, Object { copy: 3, aug: b })?;
                            match self.induced(h, &dst, &map) {
                                Ok(ms) if self.all_invertible(&ms) => {}
                                Ok(_) => unit.push("unit", &subject, "not an isomorphism"),
                                Err(e) => unit.push("unit", &subject, e.to_string()),
                            }
                        }
                    }
                }
            }
        }
        let mut tables = BTreeMap::new();
        let mut associativity = Report::new();
        if ident == Identification::Pattern {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let (big, eps) = self.diagonal(&[1, 2, 3], &[a, b, c])?;
                        let ops = AinfOps::from_aug(&big, &eps)?;
                        let (hab, hbc, hac) = (&homs[&(a, b)], &homs[&(b, c)], &homs[&(a, c)]);
                        let mut table = Vec::new();
                        for x in hab.homology.reps(0) {
                            let xl = self.lift(&hab.cochain(x), &[1, 2], &[1, 2, 3])?;
                            let mut row = Vec::new();
                            for y in hbc.homology.reps(0) {
                                let yl = Self::pattern_move(&hbc.dga, &hbc.cochain(y), &d123, 2, 3)
                                    .ok_or_else(|| Error::Contract("no pattern identification".into()))?;
                                let z = ops.mk_vec(&[&xl, &yl]);
                                let z = Self::pattern_move(&big, &z, &hac.dga, 1, 2)
                                    .ok_or_else(|| Error::Contract("no pattern identification".into()))?;
                                row.push(hac.classify(0, &z)?);
                            }
                            table.push(row);
                        }
                        tables.insert((a, b, c), table);
                    }
                }
            }
            associativity = audit_associativity(&self.field(), n, &tables);
            for a in 0..n {
                let t = &tables[&(a, a, a)];
                let ww = apply_table(&self.field(), t, &w[&a], &w[&a], w[&a].len());
                if ww != w[&a] {
                    unit.push("unit", format!("ε{a}"), "[w]∘[w] ≠ [w]");
                }
            }
        }
        let formal_unit = self.formal_unit_audit(&homs)?;
        Ok(H0Data {
            identification: ident,
            dims,
            tables,
            w,
            unit,
            associativity,
            formal_unit,
        })
    }

    /// Strict unitality of the formal unit line: `m_2(1, x) = m_2(x, 1) = x`, higher `m_k` vanish.
    fn formal_unit_audit(&self, homs: &BTreeMap<(usize, usize), HomData>) -> Result<Report> {
        let mut report = Report::new();
        for (&(a, b), h) in homs {
            let (s, t) = (Object { copy: 1, aug: a }, Object { copy: 2, aug: b });
            for q in &h.complex.basis {
                let x = HomInput::Cochain(CVect::basis(*q));
                let left = self.preaug_compose(&[s, s, t], &[HomInput::Unit, x.clone()])?;
                let right = self.preaug_compose(&[s, t, t], &[x.clone(), HomInput::Unit])?;
                let higher = self.preaug_compose(&[s, s, t, t], &[HomInput::Unit, x.clone(), HomInput::Unit])?;
                if left != x || right != x || higher != HomInput::Cochain(CVect::zero()) {
                    report.push("formal-unit", format!("ε{a} → ε{b}"), "strict unit laws fail");
                }
            }
        }
        Ok(report)
    }

    /// Verifies the `A∞` relations, the degree law and oracle agreement on `A^P` for every
    /// diagonal augmentation.
    pub fn check_ainf(&self, subset: &[Label], kmax: usize, oracle: bool) -> Result<AinfAudit> {
        let mut audit = AinfAudit::default();
        let n = self.augs.len();
        let size = subset.len();
        let mut objs = vec![0usize; size];
        loop {
            let (dga, eps) = self.diagonal(subset, &objs)?;
            let ops = AinfOps::from_aug(&dga, &eps)?;
            let scope = format!("A{subset:?} ε{objs:?}");
            audit.relations.extend_scoped(&scope, ops.check_relations(kmax));
            audit.degree.extend_scoped(&scope, ops.degree_audit());
            if oracle {
                audit
                    .oracle
                    .extend_scoped(&scope, crate::ainfty::compare_with_oracle(&ops, kmax));
            }
            audit.augmentations += 1;
            audit.structure_constants += ops.table(kmax).len();
            // next tuple in lexicographic order
            let mut k = size;
            loop {
                if k == 0 {
                    return Ok(audit);
                }
                k -= 1;
                objs[k] += 1;
                if objs[k] < n {
                    break;
                }
                objs[k] = 0;
            }
        }
    }
}

/// Results of [`AugCat::check_ainf`].
#[derive(Clone, Debug, Default)]
pub struct AinfAudit {
    pub augmentations: usize,
    pub structure_constants: usize,
    pub relations: Report,
    pub degree: Report,
    pub oracle: Report,
}

impl AinfAudit {
    pub fn passed(&self) -> bool {
        self.relations.passed() && self.degree.passed() && self.oracle.passed()
    }
}

fn apply_table(field: &Field, table: &[Vec<Vector>], x: &[Scalar], y: &[Scalar], out_dim: usize) -> Vector {
    let mut out = vec![Scalar::ZERO; out_dim];
    for (i, &xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let s = field.mul(xi, yj);
            for (p, &v) in table[i][j].iter().enumerate() {
                out[p] += field.mul(s, v);
            }
        }
    }
    out
}

/// `(x∘y)∘z = x∘(y∘z)` on all basis triples of all object quadruples.
pub fn audit_associativity(field: &Field, n: usize, tables: &H0Tables) -> Report {
    let mut report = Report::new();
    let dim = |a: usize, b: usize| tables[&(a, b, b)].len();
    let unit_vec = |k: usize, d: usize| {
        let mut v = vec![Scalar::ZERO; d];
        v[k] = Scalar::ONE;
        v
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let (dab, dbc, dcd, dac, dbd, dad) =
                        (dim(a, b), dim(b, c), dim(c, d), dim(a, c), dim(b, d), dim(a, d));
                    for i in 0..dab {
                        for j in 0..dbc {
                            for k in 0..dcd {
                                let xy =
                                    apply_table(field, &tables[&(a, b, c)], &unit_vec(i, dab), &unit_vec(j, dbc), dac);
                                let left = apply_table(field, &tables[&(a, c, d)], &xy, &unit_vec(k, dcd), dad);
                                let yz =
                                    apply_table(field, &tables[&(b, c, d)], &unit_vec(j, dbc), &unit_vec(k, dcd), dbd);
                                let right = apply_table(field, &tables[&(a, b, d)], &unit_vec(i, dab), &yz, dad);
                                if left != right {
                                    report.push(
                                        "associativity",
                                        format!("ε{a} → ε{b} → ε{c} → ε{d}"),
                                        format!("basis triple ({i}, {j}, {k})"),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

/// The consistent-sequence category: homs are `C^∨_{12}` of `A^{(2)}`, and `m_k` comes
/// from `A^{(k+1)}` with chords identified by pattern names.
pub struct ConsistentCat<'s> {
    pub cat: &'s AugCat<'s>,
    /// Hom basis: chords of bigrade (1,2) in `A^{(2)}`, with their base names.
    basis: Vec<ChordId>,
    base_index: HashMap<String, usize>,
    d2: Arc<SemiFreeDga>,
}

/// Structure constants of one `m_k` on a fixed object tuple: input base indices ↦ outputs.
pub type CatTable = HashMap<Vec<usize>, Vec<(usize, Scalar)>>;

impl<'s> ConsistentCat<'s> {
    pub fn new(cat: &'s AugCat<'s>) -> Result<Self> {
        if cat.sys.mode != Mode::Consistent {
            return Err(Error::Precondition(
                "the consistent construction needs a consistent system".into(),
            ));
        }
        if cat.sys.copies < 2 {
            return Err(Error::InsufficientCopies(
                "the consistent construction needs at least 2 copies".into(),
            ));
        }
        let r = cat.sys.check();
        if !r.passed() {
            return Err(Error::Precondition(format!(
                "system fails its axioms: {}",
                r.findings[0]
            )));
        }
        let d2 = cat.sys.dga(&[1, 2])?;
        let basis = d2.hom_basis(1, 2);
        let base_index = basis
            .iter()
            .enumerate()
            .map(|(k, &q)| (d2.chord(q).base().expect("consistent names").to_string(), k))
            .collect();
        Ok(ConsistentCat {
            cat,
            basis,
            base_index,
            d2,
        })
    }

    /// `hom(ε, ε')` with its cohomology.
    pub fn hom(&self, a: usize, b: usize) -> Result<HomData> {
        self.cat
            .hom_data(Object { copy: 1, aug: a }, Object { copy: 2, aug: b })
    }

    /// `m_k` structure constants for objects `objs` (`k = objs.len() - 1`), read from
    /// `A^{(k+1)}` on consecutive chords `base[r, r+1]` with output `base[1, k+1]`.
    pub fn table(&self, objs: &[usize]) -> Result<CatTable> {
        let m = objs.len() as Label;
        let labels: Vec<Label> = (1..=m).collect();
        let (big, eps) = self.cat.diagonal(&labels, objs)?;
        let mut out: CatTable = HashMap::new();
        for q in big.hom_basis(1, m) {
            let Some(&qi) = big.chord(q).base().and_then(|b| self.base_index.get(b)) else {
                continue;
            };
            let img = twist_poly(&big, &eps, big.differential(q));
            'words: for (w, c) in img.terms() {
                if w.len() as Label != m - 1 {
                    continue;
                }
                let mut key = Vec::with_capacity(w.len());
                for (r, &x) in w.iter().enumerate() {
                    let ch = big.chord(x);
                    if (ch.c, ch.r) != (r as Label + 1, r as Label + 2) {
                        continue 'words;
                    }
                    match ch.base().and_then(|b| self.base_index.get(b)) {
                        Some(&k) => key.push(k),
                        None => continue 'words,
                    }
                }
                out.entry(key).or_default().push((qi, c));
            }
        }
        Ok(out)
    }

    pub fn hom_dim(&self) -> usize {
        self.basis.len()
    }

    /// Degree of the hom basis element with index `k`.
    pub fn degree(&self, k: usize) -> i64 {
        dual_degree(self.d2.chord(self.basis[k]))
    }

    /// `A∞` relations of the consistent category on every object tuple of length `≤ kmax + 1`,
    /// plus the degree law on every table entry.
    pub fn check_relations(&self, kmax: usize) -> Result<Report> {
        let n_obj = self.cat.augs.len();
        let field = self.cat.field();
        let max_len = (kmax + 1).min(self.cat.sys.copies as usize);
        let mut tables: HashMap<Vec<usize>, CatTable> = HashMap::new();
        let mut report = Report::new();
        for len in 2..=max_len {
            for objs in tuples(n_obj, len) {
                let t = self.table(&objs)?;
                for (key, outs) in &t {
                    let input: i64 = key.iter().map(|&k| self.degree(k)).sum();
                    for &(q, _) in outs {
                        if !self.cat.sys.grading.same(self.degree(q), input + 2 - key.len() as i64) {
                            report.push(
                                "degree-law",
                                format!("ε{objs:?}"),
                                format!("m_{} output degree", key.len()),
                            );
                        }
                    }
                }
                tables.insert(objs, t);
            }
        }
        for len in 2..=max_len {
            let n = len - 1;
            for objs in tuples(n_obj, len) {
                let mut acc: HashMap<(Vec<usize>, usize), Scalar> = HashMap::new();
                for r in 0..n {
                    for s in 1..=n - r {
                        let mut outer_objs = objs[..=r].to_vec();
                        outer_objs.extend_from_slice(&objs[r + s..]);
                        let inner = &tables[&objs[r..=r + s].to_vec()];
                        let outer = &tables[&outer_objs];
                        let mut producing: HashMap<usize, Vec<(&Vec<usize>, Scalar)>> = HashMap::new();
                        for (u, outs) in inner {
                            for &(y, c) in outs {
                                producing.entry(y).or_default().push((u, c));
                            }
                        }
                        for (wd, outs) in outer {
                            let Some(list) = producing.get(&wd[r]) else { continue };
                            for &(u, c2) in list {
                                let mut tuple = wd[..r].to_vec();
                                tuple.extend_from_slice(u);
                                tuple.extend_from_slice(&wd[r + 1..]);
                                for &(q, c1) in outs {
                                    *acc.entry((tuple.clone(), q)).or_insert(Scalar::ZERO) += field.mul(c1, c2);
                                }
                            }
                        }
                    }
                }
                let mut bad: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                bad.sort();
                for ((tuple, q), c) in bad {
                    report.push(
                        "ainf-relation",
                        format!("ε{objs:?}"),
                        format!("inputs {tuple:?}: coefficient {c} on output {q}"),
                    );
                }
            }
        }
        Ok(report)
    }

    /// `H^0` composition tables of the consistent category on `(1,2)` representatives.
    pub fn h0_tables(&self) -> Result<H0Tables> {
        let n = self.cat.augs.len();
        let homs: BTreeMap<(usize, usize), HomData> = tuples(n, 2)
            .into_iter()
            .map(|p| Ok(((p[0], p[1]), self.hom(p[0], p[1])?)))
            .collect::<Result<_>>()?;
        let mut out = BTreeMap::new();
        for objs in tuples(n, 3) {
            let (a, b, c) = (objs[0], objs[1], objs[2]);
            let t = self.table(&objs)?;
            let (hab, hbc, hac) = (&homs[&(a, b)], &homs[&(b, c)], &homs[&(a, c)]);
            let field = self.cat.field();
            let mut table = Vec::new();
            for x in hab.homology.reps(0) {
                let mut row = Vec::new();
                for y in hbc.homology.reps(0) {
                    let mut z = vec![Scalar::ZERO; self.basis.len()];
                    for (i, &xi) in x.iter().enumerate() {
                        for (j, &yj) in y.iter().enumerate() {
                            let s = field.mul(xi, yj);
                            if s.is_zero() {
                                continue;
                            }
                            if let Some(outs) = t.get(&vec![i, j]) {
                                for &(q, c) in outs {
                                    z[q] += field.mul(s, c);
                                }
                            }
                        }
                    }
                    let zc = CVect::from_dense(&self.basis, &z);
                    row.push(hac.classify(0, &zc)?);
                }
                table.push(row);
            }
            out.insert((a, b, c), table);
        }
        Ok(out)
    }
}

/// All tuples in `{0..n}^len`, lexicographic.
pub fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// Localised `H^0` composition computed through transitions only: `y ∈ H(1,2; b, c)` is
/// moved to `H(2,3; b, c)` by solving `m_2(w_{b,1}, y') = m_2(y, w_{c,2})`, composed with
/// `x`, and brought back along the inverse transition.
pub fn localised_h0_tables(cat: &AugCat, locs: &BTreeMap<(usize, usize), LocHom>) -> Result<H0Tables> {
    let n = cat.augs.len();
    let field = cat.field();
    let labels = [1, 2, 3];
    let mut out = BTreeMap::new();
    for objs in tuples(n, 3) {
        let (a, b, c) = (objs[0], objs[1], objs[2]);
        let (hab, hbc, hac) = (&locs[&(a, b)].stable, &locs[&(b, c)].stable, &locs[&(a, c)].stable);
        let h13_bc = cat.hom_data(Object { copy: 1, aug: b }, Object { copy: 3, aug: c })?;
        let h23_bc = cat.hom_data(Object { copy: 2, aug: b }, Object { copy: 3, aug: c })?;
        let h13_ac = cat.hom_data(Object { copy: 1, aug: a }, Object { copy: 3, aug: c })?;
        let t_bc = &locs[&(b, c)].transitions[0];
        let t_ac = &locs[&(a, c)].transitions[0];
        // P: H(2,3; b,c) → H(1,3; b,c), y ↦ m_2(w_{b,1}, y)
        let (big_p, eps_p) = cat.diagonal(&labels, &[b, b, c])?;
        let ops_p = AinfOps::from_aug(&big_p, &eps_p)?;
        let wb = cat.lift(&cat.w_class(b, 1)?.cochain, &[1, 2], &labels)?;
        let pmap = |y: &CVect| -> Result<CVect> {
            let y = cat.lift(y, &[2, 3], &labels)?;
            cat.restrict(&ops_p.mk_vec(&[&wb, &y]), &labels, &[1, 3])
        };
        let p = cat.induced(&h23_bc, &h13_bc, &pmap)?;
        let (big, eps) = cat.diagonal(&labels, &[a, b, c])?;
        let ops = AinfOps::from_aug(&big, &eps)?;
        let mut table = Vec::new();
        for x in hab.homology.reps(0) {
            let xl = cat.lift(&hab.cochain(x), &[1, 2], &labels)?;
            let mut row = Vec::new();
            for (j, _) in hbc.homology.reps(0).iter().enumerate() {
                let ty = t_bc.matrices[&0].column(j);
                let y23 = p[&0]
                    .solve(&ty, &field)
                    .ok_or_else(|| Error::Contract("pre-composition with w is not onto".into()))?;
                let rep = combine(&field, h23_bc.homology.reps(0), &y23, h23_bc.complex.dim());
                let yl = cat.lift(&h23_bc.cochain(&rep), &[2, 3], &labels)?;
                let z = cat.restrict(&ops.mk_vec(&[&xl, &yl]), &labels, &[1, 3])?;
                let z13 = h13_ac.classify(0, &z)?;
                let z12 = t_ac.matrices[&0]
                    .solve(&z13, &field)
                    .ok_or_else(|| Error::Contract("transition is not onto".into()))?;
                row.push(z12);
            }
            table.push(row);
        }
        let _ = hac;
        out.insert((a, b, c), table);
    }
    Ok(out)
}

fn combine(field: &Field, reps: &[Vector], coords: &[Scalar], dim: usize) -> Vector {
    let mut v = vec![Scalar::ZERO; dim];
    for (rep, &c) in reps.iter().zip(coords) {
        for (k, &x) in rep.iter().enumerate() {
            v[k] += field.mul(c, x);
        }
    }
    v
}

/// Summary of [`compare_constructions`].
#[derive(Clone, Debug, Default)]
pub struct Comparison {
    pub pairs: usize,
    pub dims: BTreeMap<(usize, usize), (Dims, Dims)>,
    pub report: Report,
}

/// Localised homs against consistent homs: graded dimensions on every ordered pair, and
/// `H^0` composition tables (transition-identified versus pattern-identified).
pub fn compare_constructions(cat: &AugCat) -> Comparison {
    let mut cmp = Comparison::default();
    let consistent = match ConsistentCat::new(cat) {
        Ok(c) => c,
        Err(e) => {
            cmp.report.push("consistent", "system", e.to_string());
            return cmp;
        }
    };
    let n = cat.augs.len();
    let mut locs = BTreeMap::new();
    for p in tuples(n, 2) {
        let (a, b) = (p[0], p[1]);
        cmp.pairs += 1;
        let loc = match cat.loc_hom(a, b) {
            Ok(l) => l,
            Err(e) => {
                cmp.report.push("localisation", format!("ε{a} → ε{b}"), e.to_string());
                continue;
            }
        };
        let cons = match consistent.hom(a, b) {
            Ok(h) => h.homology.dims(),
            Err(e) => {
                cmp.report.push("consistent", format!("ε{a} → ε{b}"), e.to_string());
                continue;
            }
        };
        let ld = loc.stable_dims();
        if ld != cons {
            cmp.report.push(
                "dimensions",
                format!("ε{a} → ε{b}"),
                format!("localised {ld:?} vs consistent {cons:?}"),
            );
        }
        if loc.witness != 2 {
            cmp.report.push(
                "witness",
                format!("ε{a} → ε{b}"),
                format!("stabilises from copy {}", loc.witness),
            );
        }
        cmp.dims.insert((a, b), (ld, cons));
        locs.insert((a, b), loc);
    }
    if !cmp.report.passed() {
        return cmp;
    }
    let loc_tables = match localised_h0_tables(cat, &locs) {
        Ok(t) => t,
        Err(e) => {
            cmp.report.push("h0-table", "localised", e.to_string());
            return cmp;
        }
    };
    let cons_tables = match consistent.h0_tables() {
        Ok(t) => t,
        Err(e) => {
            cmp.report.push("h0-table", "consistent", e.to_string());
            return cmp;
        }
    };
    for (key, t) in &loc_tables {
        if cons_tables.get(key) != Some(t) {
            cmp.report.push(
                "h0-table",
                format!("ε{} → ε{} → ε{}", key.0, key.1, key.2),
                "composition tables differ",
            );
        }
    }
    cmp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcopy::{consistent_system, CopyNames};

    fn unknot_sys(m: Label) -> DgaSystem {
        let single = SemiFreeDga::builder(Field::F2)
            .component("t", 1, 1)
            .chord("a", 1, 1, 1)
            .diff("a", "1 + t")
            .build()
            .unwrap();
        consistent_system(&single, m, &CopyNames::default()).unwrap()
    }

    #[test]
    fn unknot_two_copy_hom() {
        let sys = unknot_sys(2);
        let cat = AugCat::new(&sys).unwrap();
        let h = cat
            .hom_data(Object { copy: 1, aug: 0 }, Object { copy: 2, aug: 0 })
            .unwrap();
        assert_eq!(h.homology.dims(), BTreeMap::from([(0, 1)]));
        let w = cat.w_class(0, 1).unwrap();
        assert_eq!(h.classify(0, &w.cochain).unwrap(), vec![Scalar::ONE]);
    }

    #[test]
    fn strict_units() {
        let sys = unknot_sys(3);
        let cat = AugCat::new(&sys).unwrap();
        let s = Object { copy: 1, aug: 0 };
        let t = Object { copy: 2, aug: 0 };
        let x = HomInput::Cochain(CVect::basis(0));
        assert_eq!(cat.preaug_compose(&[s, s, t], &[HomInput::Unit, x.clone()]).unwrap(), x);
        assert_eq!(
            cat.preaug_compose(&[s, s, t, t], &[HomInput::Unit, x.clone(), HomInput::Unit])
                .unwrap(),
            HomInput::Cochain(CVect::zero())
        );
        assert!(cat.preaug_hom(t, s).is_err());
        assert_eq!(cat.preaug_hom(s, s).unwrap().dim(), 1);
    }

    #[test]
    fn unknot_localisation_stabilises() {
        let sys = unknot_sys(4);
        let cat = AugCat::new(&sys).unwrap();
        let loc = cat.loc_hom(0, 0).unwrap();
        assert_eq!(loc.witness, 2);
        assert!(loc.transitions.iter().all(|t| t.iso));
        assert!(loc.precomposition.unwrap().passed());
    }

    #[test]
    fn truncated_system_is_insufficient() {
        let sys = unknot_sys(2);
        let cat = AugCat::new(&sys).unwrap();
        assert!(matches!(cat.loc_hom(0, 0), Err(Error::InsufficientCopies(_))));
    }

    #[test]
    fn unknot_h0_and_comparison() {
        let sys = unknot_sys(4);
        let cat = AugCat::new(&sys).unwrap();
        let h0 = cat.h0_category().unwrap();
        assert_eq!(h0.identification, Identification::Pattern);
        assert!(h0.unit.passed(), "{}", h0.unit);
        assert!(h0.associativity.passed());
        assert!(h0.formal_unit.passed());
        assert_eq!(h0.tables[&(0, 0, 0)], vec![vec![vec![Scalar::ONE]]]);
        let cmp = compare_constructions(&cat);
        assert!(cmp.report.passed(), "{}", cmp.report);
    }

    #[test]
    fn tuples_enumerated() {
        assert_eq!(tuples(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
