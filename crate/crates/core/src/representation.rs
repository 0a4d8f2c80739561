//! Pair actions `rho: A ∧ A -> End(V)` and the identities that make one a
//! representation (module structure) for a 3-Lie algebra.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::exactlin::{Matrix, Scalar};
use crate::report::{CheckReport, Witness};
use crate::sweep::{collect_violations, index_product};
use crate::trilie::ThreeLieAlgebra;
use crate::Result;

/// Antisymmetric action of basis pairs, stored only on `i < j`; evaluation
/// at swapped arguments negates and `rho(x, x) = 0` is induced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAction {
    algebra_dim: usize,
    target_dim: usize,
    table: BTreeMap<[usize; 2], Matrix>,
}

impl PairAction {
    pub fn new(
        algebra_dim: usize,
        target_dim: usize,
        table: BTreeMap<[usize; 2], Matrix>,
    ) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (p, m) in table {
            if p[0] >= p[1] || p[1] >= algebra_dim {
                return Err(Error::invalid(format!(
                    "action pair {p:?} is not strictly increasing within dimension {algebra_dim}"
                )));
            }
            if m.rows() != target_dim || m.cols() != target_dim {
                return Err(Error::dim(format!(
                    "action matrix for {p:?} is {}x{}, expected {target_dim}x{target_dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_zero() {
                kept.insert(p, m);
            }
        }
        Ok(PairAction {
            algebra_dim,
            target_dim,
            table: kept,
        })
    }

    pub fn zero(algebra_dim: usize, target_dim: usize) -> Self {
        PairAction {
            algebra_dim,
            target_dim,
            table: BTreeMap::new(),
        }
    }

    /// Adjoint action of an algebra on itself: `rho(x, y) = ad(x, y)`.
    pub fn adjoint(a: &ThreeLieAlgebra) -> Self {
        let n = a.dim();
        let mut table = BTreeMap::new();
        for [i, j] in crate::sweep::increasing_pairs(n) {
            let ad = a
                .inner_derivation(
                    &crate::exactlin::unit_vec(n, i),
                    &crate::exactlin::unit_vec(n, j),
                )
                .expect("basis vectors are sized correctly");
            if !ad.is_zero() {
                table.insert([i, j], ad.matrix().clone());
            }
        }
        PairAction {
            algebra_dim: n,
            target_dim: n,
            table,
        }
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn table(&self) -> &BTreeMap<[usize; 2], Matrix> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// `rho(e_i, e_j)` for arbitrary index order.
    pub fn at(&self, i: usize, j: usize) -> Matrix {
        if i == j {
            return Matrix::zeros(self.target_dim, self.target_dim);
        }
        let (key, neg) = if i < j { ([i, j], false) } else { ([j, i], true) };
        match self.table.get(&key) {
            None => Matrix::zeros(self.target_dim, self.target_dim),
            Some(m) if neg => m.neg(),
            Some(m) => m.clone(),
        }
    }

    /// Bilinear antisymmetric extension to coordinate vectors.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        debug_assert_eq!(x.len(), self.algebra_dim);
        debug_assert_eq!(y.len(), self.algebra_dim);
        let mut out = Matrix::zeros(self.target_dim, self.target_dim);
        for (&[i, j], m) in &self.table {
            // coefficient of rho(e_i, e_j) in rho(x, y): x_i y_j - x_j y_i
            let c = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if !c.is_zero() {
                out = out.add(&m.scale(&c));
            }
        }
        out
    }

    /// `rho(w, e_j)` for a coordinate vector in the first slot.
    pub fn eval_vec_basis(&self, w: &[Scalar], j: usize) -> Matrix {
        self.eval(w, &crate::exactlin::unit_vec(self.algebra_dim, j))
    }
}

fn check_dims(a: &ThreeLieAlgebra, rho: &PairAction) -> Result<()> {
    if rho.algebra_dim() != a.dim() {
        return Err(Error::dim(format!(
            "action is over dimension {}, algebra has dimension {}",
            rho.algebra_dim(),
            a.dim()
        )));
    }
    Ok(())
}

/// The two defining identities of a representation, swept over all basis
/// 4-tuples (multilinearity makes the basis sweep complete):
///
/// * commutator identity:
///   `[rho(x1,x2), rho(x3,x4)] = rho([x1,x2,x3], x4) - rho([x1,x2,x4], x3)`
/// * expansion identity:
///   `rho([x1,x2,x3], x4) = rho(x1,x2) rho(x3,x4) + rho(x2,x3) rho(x1,x4)
///    + rho(x3,x1) rho(x2,x4)`
pub fn check_representation(a: &ThreeLieAlgebra, rho: &PairAction) -> Result<CheckReport> {
    check_dims(a, rho)?;
    let n = a.dim();
    let keys = index_product(&[n, n, n, n]);
    let witnesses = collect_violations(&keys, |t| {
        let (x1, x2, x3, x4) = (t[0], t[1], t[2], t[3]);
        let r12 = rho.at(x1, x2);
        let r34 = rho.at(x3, x4);
        let br123 = a.bracket_basis(x1, x2, x3);
        let br124 = a.bracket_basis(x1, x2, x4);
        let lhs_comm = r12.commutator(&r34);
        let rhs_comm = rho
            .eval_vec_basis(&br123, x4)
            .sub(&rho.eval_vec_basis(&br124, x3));
        if lhs_comm != rhs_comm {
            return Some(Witness::new(
                "rep_commutator",
                t.clone(),
                lhs_comm.flatten(),
                rhs_comm.flatten(),
            ));
        }
        let lhs_exp = rho.eval_vec_basis(&br123, x4);
        let rhs_exp = r12
            .mul(&r34)
            .add(&rho.at(x2, x3).mul(&rho.at(x1, x4)))
            .add(&rho.at(x3, x1).mul(&rho.at(x2, x4)));
        if lhs_exp != rhs_exp {
            return Some(Witness::new(
                "rep_expansion",
                t.clone(),
                lhs_exp.flatten(),
                rhs_exp.flatten(),
            ));
        }
        None
    });
    Ok(CheckReport::new(
        "representation",
        keys.len() as u64,
        witnesses,
    ))
}

/// Derived identities every representation satisfies:
///
/// * alternating sum:
///   `rho([x,y,z], u) - rho([x,y,u], z) + rho([x,z,u], y) - rho([y,z,u], x) = 0`
/// * product balance:
///   `rho(x,u) rho(y,z) + rho(y,z) rho(x,u) + rho(x,y) rho(z,u)
///    + rho(z,u) rho(x,y) - rho(x,z) rho(y,u) - rho(y,u) rho(x,z) = 0`
pub fn check_module_consequences(a: &ThreeLieAlgebra, rho: &PairAction) -> Result<CheckReport> {
    check_dims(a, rho)?;
    let n = a.dim();
    let keys = index_product(&[n, n, n, n]);
    let zero = Matrix::zeros(rho.target_dim(), rho.target_dim());
    let witnesses = collect_violations(&keys, |t| {
        let (x, y, z, u) = (t[0], t[1], t[2], t[3]);
        let alt = rho
            .eval_vec_basis(&a.bracket_basis(x, y, z), u)
            .sub(&rho.eval_vec_basis(&a.bracket_basis(x, y, u), z))
            .add(&rho.eval_vec_basis(&a.bracket_basis(x, z, u), y))
            .sub(&rho.eval_vec_basis(&a.bracket_basis(y, z, u), x));
        if !alt.is_zero() {
            return Some(Witness::new(
                "rep_alternating_sum",
                t.clone(),
                alt.flatten(),
                zero.flatten(),
            ));
        }
        let (rxu, ryz) = (rho.at(x, u), rho.at(y, z));
        let (rxy, rzu) = (rho.at(x, y), rho.at(z, u));
        let (rxz, ryu) = (rho.at(x, z), rho.at(y, u));
        let bal = rxu
            .mul(&ryz)
            .add(&ryz.mul(&rxu))
            .add(&rxy.mul(&rzu))
            .add(&rzu.mul(&rxy))
            .sub(&rxz.mul(&ryu))
            .sub(&ryu.mul(&rxz));
        if !bal.is_zero() {
            return Some(Witness::new(
                "rep_product_balance",
                t.clone(),
                bal.flatten(),
                zero.flatten(),
            ));
        }
        None
    });
    Ok(CheckReport::new(
        "module_consequences",
        keys.len() as u64,
        witnesses,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{abelian, simple4, standard_corpus};
    use crate::exactlin::unit_vec;

    #[test]
    fn zero_action_is_a_representation() {
        let a = simple4();
        let rho = PairAction::zero(4, 3);
        assert!(check_representation(&a, &rho).unwrap().passed);
        assert!(check_module_consequences(&a, &rho).unwrap().passed);
    }

    #[test]
    fn adjoint_action_is_a_representation() {
        for (name, a) in standard_corpus() {
            if a.dim() > 5 {
                continue; // keep the 4-tuple sweep small
            }
            let rho = PairAction::adjoint(&a);
            let rep = check_representation(&a, &rho).unwrap();
            assert!(rep.passed, "{name}: {:?}", rep.witnesses.first());
            assert!(check_module_consequences(&a, &rho).unwrap().passed, "{name}");
        }
    }

    #[test]
    fn broken_action_fails_with_witness() {
        let a = abelian(4);
        let mut table = BTreeMap::new();
        table.insert([0, 1], Matrix::identity(2));
        table.insert([2, 3], Matrix::identity(2));
        let rho = PairAction::new(4, 2, table).unwrap();
        let report = check_representation(&a, &rho).unwrap();
        assert!(!report.passed);
        assert!(report.witnesses.iter().any(|w| w.identity == "rep_expansion"));
    }

    #[test]
    fn swapped_arguments_negate() {
        let a = simple4();
        let rho = PairAction::adjoint(&a);
        assert_eq!(rho.at(1, 0), rho.at(0, 1).neg());
        assert!(rho.at(2, 2).is_zero());
        // bilinear evaluation agrees with the basis table
        let m = rho.eval(&unit_vec(4, 0), &unit_vec(4, 1));
        assert_eq!(m, rho.at(0, 1));
    }
}
