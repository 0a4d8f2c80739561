use std::fmt;

use serde::{Deserialize, Serialize};

use super::{vec_is_zero, Matrix, Scalar};

/// Linear subspace of a coordinate space, stored as a canonical basis.
///
/// The basis rows are kept in reduced row echelon form with zero rows
/// dropped, which is a unique representation per subspace: equality of
/// subspaces is equality of the stored grids.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the given vectors, canonicalized.
    pub fn from_rows(ambient_dim: usize, rows: Vec<Vec<Scalar>>) -> Subspace {
        for v in &rows {
            assert_eq!(v.len(), ambient_dim, "spanning vector length mismatch");
        }
        if rows.is_empty() {
            return Subspace {
                ambient_dim,
                basis: Matrix::zeros(0, ambient_dim),
                pivots: Vec::new(),
            };
        }
        let m = Matrix::from_rows(rows).expect("checked lengths above");
        let (r, pivots) = m.rref();
        let mut kept = Vec::with_capacity(pivots.len());
        for row in 0..pivots.len() {
            kept.push(r.row_vec(row));
        }
        Subspace {
            ambient_dim,
            basis: Matrix::from_rows(kept).expect("rref rows share length"),
            pivots,
        }
    }

    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace::from_rows(ambient_dim, Vec::new())
    }

    pub fn whole(ambient_dim: usize) -> Subspace {
        let rows = (0..ambient_dim)
            .map(|i| super::unit_vec(ambient_dim, i))
            .collect();
        Subspace::from_rows(ambient_dim, rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_row(&self, i: usize) -> Vec<Scalar> {
        self.basis.row_vec(i)
    }

    /// Membership test by reduction against the canonical basis.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let mut w = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (c, entry) in w.iter_mut().enumerate() {
                let delta = &f * &self.basis[(row, c)];
                *entry = &*entry - &delta;
            }
        }
        vec_is_zero(&w)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}, basis {:?})",
            self.dim(),
            self.ambient_dim,
            self.basis
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::unit_vec;

    #[test]
    fn canonical_representation_is_unique() {
        let a = Subspace::from_rows(
            3,
            vec![
                vec![Scalar::from_int(1), Scalar::from_int(1), Scalar::zero()],
                vec![Scalar::from_int(2), Scalar::from_int(2), Scalar::from_int(1)],
            ],
        );
        let b = Subspace::from_rows(
            3,
            vec![
                vec![Scalar::from_int(3), Scalar::from_int(3), Scalar::from_int(1)],
                vec![Scalar::from_int(-1), Scalar::from_int(-1), Scalar::zero()],
            ],
        );
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn membership() {
        let s = Subspace::from_rows(3, vec![unit_vec(3, 0), unit_vec(3, 2)]);
        assert!(s.contains(&[Scalar::from_int(4), Scalar::zero(), Scalar::from_int(-1)]));
        assert!(!s.contains(&unit_vec(3, 1)));
        assert!(s.contains(&[Scalar::zero(), Scalar::zero(), Scalar::zero()]));
    }

    #[test]
    fn whole_and_zero() {
        assert_eq!(Subspace::whole(4).dim(), 4);
        assert_eq!(Subspace::zero(4).dim(), 0);
        assert!(Subspace::whole(4).contains_subspace(&Subspace::zero(4)));
    }
}
