//! The `m`-copy DGA of a single-component DGA in matrix form, and the consistent
//! systems it generates. Used for the bundled fixtures and for tests.
//!
//! With `A_k = (a_k[i,j])`, `X = I + (x[i,j])_{i<j}`, `Y = (y[i,j])_{i<j}` and
//! `Δ = diag(t[1], ..., t[m])`, the differential is
//! `∂A_k = Φ(∂a_k) + Y A_k + A_k Y`, `∂X = Δ^{-1} Y Δ X + X Y`, `∂Y = Y²`,
//! where `Φ(a_k) = A_k` and `Φ(t) = ΔX`.

use crate::dga::{pattern_name, Chord, SemiFreeDga};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::group::{FreeProductSpec, GroupComponent, GroupElement};
use crate::poly::{Poly, Word};
use crate::system::DgaSystem;
use crate::Label;

type Mat = Vec<Vec<Poly>>;

struct Ctx {
    m: usize,
    field: crate::field::Field,
}

impl Ctx {
    fn zero(&self) -> Mat {
        vec![vec![Poly::zero(); self.m]; self.m]
    }

    fn identity(&self) -> Mat {
        let mut z = self.zero();
        for (i, row) in z.iter_mut().enumerate() {
            row[i] = Poly::one();
        }
        z
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let mut out = self.zero();
        for i in 0..self.m {
            for k in 0..self.m {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..self.m {
                    if !b[k][j].is_zero() {
                        let p = a[i][k].mul(&b[k][j], &self.field);
                        out[i][j].add_assign(&p);
                    }
                }
            }
        }
        out
    }

    fn add(&self, a: &Mat, b: &Mat) -> Mat {
        let mut out = a.clone();
        for i in 0..self.m {
            for j in 0..self.m {
                out[i][j].add_assign(&b[i][j]);
            }
        }
        out
    }
}

/// Names used for the auxiliary `X` and `Y` generators.
#[derive(Clone, Debug)]
pub struct CopyNames {
    pub x: String,
    pub y: String,
}

impl Default for CopyNames {
    fn default() -> Self {
        CopyNames {
            x: "x".into(),
            y: "y".into(),
        }
    }
}

/// The `m`-copy of `single`, a DGA on the single label 1 with at most one group
/// component, of rank 1.
pub fn m_copy(single: &SemiFreeDga, m: Label, names: &CopyNames) -> Result<SemiFreeDga> {
    if single.labels() != [1] {
        return Err(Error::Precondition(
            "the m-copy needs a single-copy DGA on label 1".into(),
        ));
    }
    let comps = single.group().components();
    if comps.len() > 1 || comps.iter().any(|c| c.rank != 1) {
        return Err(Error::Precondition(
            "the m-copy supports one rank-1 group component".into(),
        ));
    }
    for n in [&names.x, &names.y] {
        if single.id(n).is_some() {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    let mu = m as usize;
    let ctx = Ctx {
        m: mu,
        field: *single.field(),
    };
    let mut chords = Vec::new();
    let mut entry = vec![vec![vec![0usize; mu]; mu]; single.len()];
    for (k, ch) in single.chords().iter().enumerate() {
        for i in 0..mu {
            for j in 0..mu {
                entry[k][i][j] = chords.len();
                chords.push(Chord::new(
                    pattern_name(&ch.name, i as Label + 1, j as Label + 1),
                    ch.degree,
                    i as Label + 1,
                    j as Label + 1,
                ));
            }
        }
    }
    let mut x = ctx.identity();
    let mut y = ctx.zero();
    let mut x_ids = Vec::new();
    let mut y_ids = Vec::new();
    for i in 0..mu {
        for j in i + 1..mu {
            let (c, r) = (i as Label + 1, j as Label + 1);
            x[i][j] = Poly::chord(chords.len());
            x_ids.push((i, j, chords.len()));
            chords.push(Chord::new(pattern_name(&names.x, c, r), 0, c, r));
        }
    }
    for i in 0..mu {
        for j in i + 1..mu {
            let (c, r) = (i as Label + 1, j as Label + 1);
            y[i][j] = Poly::chord(chords.len());
            y_ids.push((i, j, chords.len()));
            chords.push(Chord::new(pattern_name(&names.y, c, r), -1, c, r));
        }
    }
    let components: Vec<GroupComponent> = comps
        .iter()
        .flat_map(|c| {
            (1..=m).map(move |i| GroupComponent {
                name: format!("{}[{i}]", c.name),
                label: i,
                rank: 1,
            })
        })
        .collect();
    let diag = |inverse: bool| -> Mat {
        let mut d = ctx.zero();
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = Poly::monomial(Word::group(GroupElement::generator(i, 1, inverse)), Scalar::ONE);
        }
        d
    };
    let (delta, delta_inv) = (diag(false), diag(true));
    let nilpotent = ctx.add(&x, &ctx.identity());
    let mut x_inv = ctx.identity();
    let mut power = ctx.identity();
    for _ in 1..mu {
        power = ctx.mul(&power, &nilpotent);
        x_inv = ctx.add(&x_inv, &power);
    }
    let phi_t = ctx.mul(&delta, &x);
    let phi_t_inv = ctx.mul(&x_inv, &delta_inv);
    let chord_mat = |k: usize| -> Mat {
        let mut a = ctx.zero();
        for i in 0..mu {
            for j in 0..mu {
                a[i][j] = Poly::chord(entry[k][i][j]);
            }
        }
        a
    };
    let phi = |p: &Poly| -> Mat {
        let mut out = ctx.zero();
        for (w, c) in p.terms() {
            let mut acc = ctx.identity();
            for (pos, g) in w.groups().iter().enumerate() {
                for (_, l) in g.letters() {
                    acc = ctx.mul(&acc, if l > 0 { &phi_t } else { &phi_t_inv });
                }
                if let Some(&q) = w.chords().get(pos) {
                    acc = ctx.mul(&acc, &chord_mat(q));
                }
            }
            for row in acc.iter_mut() {
                for e in row.iter_mut() {
                    *e = e.scale(&ctx.field, c);
                }
            }
            out = ctx.add(&out, &acc);
        }
        out
    };
    let mut differential = vec![Poly::zero(); chords.len()];
    for k in 0..single.len() {
        let a = chord_mat(k);
        let d = ctx.add(
            &phi(single.differential(k)),
            &ctx.add(&ctx.mul(&y, &a), &ctx.mul(&a, &y)),
        );
        for i in 0..mu {
            for j in 0..mu {
                differential[entry[k][i][j]] = d[i][j].clone();
            }
        }
    }
    if comps.is_empty() {
        // no Δ: ∂X = YX + XY
        let dx = ctx.add(&ctx.mul(&y, &x), &ctx.mul(&x, &y));
        for &(i, j, q) in &x_ids {
            differential[q] = dx[i][j].clone();
        }
    } else {
        let dx = ctx.add(
            &ctx.mul(&ctx.mul(&ctx.mul(&delta_inv, &y), &delta), &x),
            &ctx.mul(&x, &y),
        );
        for &(i, j, q) in &x_ids {
            differential[q] = dx[i][j].clone();
        }
    }
    let dy = ctx.mul(&y, &y);
    for &(i, j, q) in &y_ids {
        differential[q] = dy[i][j].clone();
    }
    SemiFreeDga::new(
        *single.field(),
        single.grading(),
        (1..=m).collect(),
        FreeProductSpec::new(components)?,
        chords,
        differential,
    )
}

/// The consistent system of `m`-copies for `m = 1..=copies`, with the `Y` chords as minima.
pub fn consistent_system(single: &SemiFreeDga, copies: Label, names: &CopyNames) -> Result<DgaSystem> {
    let by_size = (1..=copies)
        .map(|m| m_copy(single, m, names))
        .collect::<Result<Vec<_>>>()?;
    DgaSystem::consistent(by_size, vec![names.y.clone()])
}
