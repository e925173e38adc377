//! Dense linear algebra over `F_{2^e}`: elimination, kernels, solving, subquotients.

use crate::field::{Field, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::ONE);
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] += v;
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn mul(&self, other: &Matrix, f: &Field) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar], f: &Field) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::ZERO;
                for (j, &x) in v.iter().enumerate() {
                    acc += f.mul(self.get(i, j), x);
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = f.mul(m.get(row, j), inv);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let factor = m.get(i, col);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.get(i, j) + f.mul(factor, m.get(row, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the null space, one vector per free column, in reduced echelon form.
    pub fn kernel(&self, f: &Field) -> Vec<Vector> {
        let (r, pivots) = self.rref(f);
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Scalar::ZERO; self.cols];
            v[free] = Scalar::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                // char 2: -x = x
                v[pc] = r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar], f: &Field) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::ZERO; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }
}

/// A subquotient `Z / B` of `k^n` with chosen representatives for a basis of the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    pub ambient: usize,
    /// Basis of the subspace `B` being divided out.
    pub boundaries: Vec<Vector>,
    /// Representatives of a basis of `Z / B`.
    pub reps: Vec<Vector>,
}

impl Subquotient {
    /// Builds the quotient of `span(cycles)` by `span(boundaries)`; boundaries must lie in the
    /// span of the cycles. Representatives are chosen greedily from `cycles`.
    pub fn new(ambient: usize, cycles: &[Vector], boundaries: &[Vector], f: &Field) -> Self {
        let mut basis: Vec<Vector> = Vec::new();
        let mut rank = 0;
        for b in boundaries {
            let mut trial = basis.clone();
            trial.push(b.clone());
            let r = Matrix::from_columns(ambient, &trial).rank(f);
            if r > rank {
                basis = trial;
                rank = r;
            }
        }
        let bounds = basis.clone();
        let mut reps = Vec::new();
        for z in cycles {
            let mut trial = basis.clone();
            trial.push(z.clone());
            let r = Matrix::from_columns(ambient, &trial).rank(f);
            if r > rank {
                basis = trial;
                rank = r;
                reps.push(z.clone());
            }
        }
        Subquotient {
            ambient,
            boundaries: bounds,
            reps,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of `v` in the representative basis, or `None` if `v` is not in `Z`.
    pub fn classify(&self, v: &[Scalar], f: &Field) -> Option<Vector> {
        let mut cols = self.reps.clone();
        cols.extend(self.boundaries.iter().cloned());
        if cols.is_empty() {
            return v.iter().all(|s| s.is_zero()).then(Vec::new);
        }
        let x = Matrix::from_columns(self.ambient, &cols).solve(v, f)?;
        Some(x[..self.reps.len()].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(b: u32) -> Scalar {
        Scalar::from_bits(b)
    }

    #[test]
    fn rank_and_kernel() {
        let f = Field::F2;
        let m = Matrix::from_columns(2, &[vec![s(1), s(1)], vec![s(1), s(1)], vec![s(0), s(1)]]);
        assert_eq!(m.rank(&f), 2);
        let k = m.kernel(&f);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0], &f).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_over_f4() {
        let f = Field::new(2, None).unwrap();
        let m = Matrix::from_columns(2, &[vec![s(2), s(1)], vec![s(1), s(3)]]);
        let b = vec![s(3), s(2)];
        let x = m.solve(&b, &f).unwrap();
        assert_eq!(m.mul_vec(&x, &f), b);
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        let f = Field::F2;
        let m = Matrix::from_columns(2, &[vec![s(1), s(1)]]);
        assert!(m.solve(&[s(1), s(0)], &f).is_none());
    }

    #[test]
    fn stabilisation_pair_is_acyclic() {
        // d(e1) = e2 on a two-dimensional complex: kernel = span(e2) = image
        let f = Field::F2;
        let d = Matrix::from_columns(2, &[vec![s(0), s(1)], vec![s(0), s(0)]]);
        let z = d.kernel(&f);
        let b = vec![d.column(0), d.column(1)];
        let h = Subquotient::new(2, &z, &b, &f);
        assert_eq!(h.dim(), 0);
    }

    #[test]
    fn classify_modulo_boundaries() {
        let f = Field::F2;
        let z = vec![vec![s(1), s(0)], vec![s(0), s(1)]];
        let b = vec![vec![s(1), s(1)]];
        let h = Subquotient::new(2, &z, &b, &f);
        assert_eq!(h.dim(), 1);
        let c1 = h.classify(&[s(1), s(0)], &f).unwrap();
        let c2 = h.classify(&[s(0), s(1)], &f).unwrap();
        assert_eq!(c1, c2);
    }
}
