use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::{vec_is_zero, zero_vec, Scalar, Subspace};
use crate::error::Error;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: zero_vec(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::dim(format!(
                "matrix data length {} does not match {rows}x{cols}",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// Test/fixture helper.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = Scalar::from_int(v);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged rows in matrix literal"));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Scalar> {
        self.row(r).to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.entries)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// Row-major flattening, used where maps are treated as vectors.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "mul shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] = &out[(r, c)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        let mut out = zero_vec(self.rows);
        for r in 0..self.rows {
            let mut acc = Scalar::zero();
            for c in 0..self.cols {
                let a = &self[(r, c)];
                if !a.is_zero() && !v[c].is_zero() {
                    acc = &acc + &(a * &v[c]);
                }
            }
            out[r] = acc;
        }
        out
    }

    /// `AB - BA` for square matrices of equal size.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Stack matrices vertically; all must share a column count.
    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let cols = parts.first().map_or(0, |m| m.cols);
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            entries.extend(m.entries.iter().cloned());
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Place matrices side by side; all must share a row count.
    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        let rows = parts.first().map_or(0, |m| m.rows);
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            for r in 0..rows {
                for c in 0..m.cols {
                    out[(r, offset + c)] = m[(r, c)].clone();
                }
            }
            offset += m.cols;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form plus the strictly increasing pivot columns.
    ///
    /// Pivoting picks the first nonzero entry in column order; under exact
    /// arithmetic no magnitude heuristics are needed and the output is the
    /// unique RREF of the row space.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let delta = &f * &m[(r, j)];
                    m[(i, j)] = &m[(i, j)] - &delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of `{ v : self * v = 0 }`.
    pub fn nullspace(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<usize> = pivots.clone();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = zero_vec(self.cols);
            v[free] = Scalar::one();
            for (row, &pc) in pivot_set.iter().enumerate() {
                v[pc] = -&r[(row, free)];
            }
            basis.push(v);
        }
        Subspace::from_rows(self.cols, basis)
    }

    /// Canonical column space.
    pub fn column_space(&self) -> Subspace {
        let cols: Vec<Vec<Scalar>> = (0..self.cols).map(|c| self.column(c)).collect();
        Subspace::from_rows(self.rows, cols)
    }

    /// Solve `self * x = b` exactly.
    ///
    /// Returns `None` when inconsistent; otherwise one particular solution
    /// (free variables set to zero) together with the homogeneous nullspace.
    pub fn solve_affine(&self, b: &[Scalar]) -> Result<Option<(Vec<Scalar>, Subspace)>, Error> {
        if b.len() != self.rows {
            return Err(Error::dim(format!(
                "rhs length {} does not match {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = Matrix::from_entries(self.rows, 1, b.to_vec())?;
        let aug = Matrix::hstack(&[self, &rhs]);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vec(self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        debug_assert_eq!(self.mul_vec(&x), b.to_vec());
        Ok(Some((x, self.nullspace())))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::unit_vec;

    #[test]
    fn rref_identity_is_fixed_point() {
        let id = Matrix::identity(2);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one_example() {
        // hand row-reduction: [[2,4],[1,2]] -> [[1,2],[0,0]], pivot column 0
        let m = Matrix::from_i64_rows(&[&[2, 4], &[1, 2]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_i64_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_zero_matrix() {
        let m = Matrix::zeros(3, 3);
        let (r, p) = m.rref();
        assert_eq!(r, m);
        assert!(p.is_empty());
    }

    #[test]
    fn nullspace_dimensions() {
        assert_eq!(Matrix::identity(4).nullspace().dim(), 0);
        assert_eq!(Matrix::zeros(2, 3).nullspace().dim(), 3);
        let m = Matrix::from_i64_rows(&[&[1, 1, 0]]);
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 2);
        for row in 0..ns.dim() {
            let v = ns.basis_row(row);
            // substituting back: first coordinate plus second must vanish
            assert!((&v[0] + &v[1]).is_zero());
            assert!(crate::exactlin::vec_is_zero(&m.mul_vec(&v)));
        }
    }

    #[test]
    fn solve_affine_identity() {
        let m = Matrix::identity(3);
        let b = vec![Scalar::from_int(3), Scalar::ratio(1, 2), Scalar::from_int(-7)];
        let (x, ns) = m.solve_affine(&b).unwrap().unwrap();
        assert_eq!(x, b);
        assert_eq!(ns.dim(), 0);
    }

    #[test]
    fn solve_affine_underdetermined() {
        let m = Matrix::from_i64_rows(&[&[1, 1]]);
        let b = vec![Scalar::from_int(2)];
        let (x, ns) = m.solve_affine(&b).unwrap().unwrap();
        assert!((&x[0] + &x[1] - Scalar::from_int(2)).is_zero());
        assert_eq!(ns.dim(), 1);
    }

    #[test]
    fn solve_affine_inconsistent() {
        let m = Matrix::from_i64_rows(&[&[1], &[1]]);
        let b = vec![Scalar::zero(), Scalar::one()];
        assert!(m.solve_affine(&b).unwrap().is_none());
    }

    #[test]
    fn solve_affine_shape_error() {
        let m = Matrix::identity(2);
        assert!(m.solve_affine(&unit_vec(3, 0)).is_err());
    }
}
