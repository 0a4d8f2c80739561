//! `(mu, rho, beta)` extensions: gluing two 3-Lie algebras `M` and `H` into
//! a 3-algebra on `M ⊕ H`, and the seven compatibility conditions that are
//! jointly equivalent to the glued bracket satisfying the fundamental
//! identity.
//!
//! The bracket on the direct sum is determined by four clauses on basis
//! triples (M-basis listed first):
//!
//! ```text
//! [x, y, z] = [x, y, z]_M + mu(x, y, z)      x, y, z in M
//! [x, y, h] = rho(x, y) h                    x, y in M, h in H
//! [x, h1, h2] = beta(x, h1) h2               x in M, h1, h2 in H
//! [h1, h2, h3] = [h1, h2, h3]_H              h1, h2, h3 in H
//! ```
//!
//! and extended to arbitrary index triples by antisymmetry. For the third
//! clause to define an antisymmetric product at all, `beta(x, h1) h2` must
//! be antisymmetric in `(h1, h2)`; that consistency is validated when an
//! [`ExtensionSpec`] is constructed, together with `rho` and `beta` taking
//! values in derivations of `H`.
//!
//! Formulas below occasionally use `beta` with its arguments in the other
//! order (an `H` element first). That is shorthand for the bracket clause it
//! came from: `beta(h, x) := -beta(x, h)` as an operator.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::constructions::abelian;
use crate::error::Error;
use crate::exactlin::{
    unit_vec, vec_add, vec_is_zero, vec_neg, vec_sub, zero_vec, Matrix, Scalar, Subspace,
};
use crate::report::{CheckReport, Witness};
use crate::representation::{check_representation, PairAction};
use crate::sweep::{collect_violations, increasing_pairs, increasing_triples, index_product};
use crate::trilie::{is_homomorphism, LinearMap, ThreeLieAlgebra};
use crate::Result;

/// Fully antisymmetric trilinear map from `M`-triples into `H`-vectors,
/// stored on strictly increasing triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriMapToH {
    m_dim: usize,
    h_dim: usize,
    table: BTreeMap<[usize; 3], Vec<Scalar>>,
}

impl TriMapToH {
    pub fn new(
        m_dim: usize,
        h_dim: usize,
        table: BTreeMap<[usize; 3], Vec<Scalar>>,
    ) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (t, v) in table {
            if !(t[0] < t[1] && t[1] < t[2]) || t[2] >= m_dim {
                return Err(Error::invalid(format!(
                    "triple {t:?} is not strictly increasing within dimension {m_dim}"
                )));
            }
            if v.len() != h_dim {
                return Err(Error::dim(format!(
                    "value for {t:?} has length {}, expected {h_dim}",
                    v.len()
                )));
            }
            if !vec_is_zero(&v) {
                kept.insert(t, v);
            }
        }
        Ok(TriMapToH {
            m_dim,
            h_dim,
            table: kept,
        })
    }

    pub fn zero(m_dim: usize, h_dim: usize) -> Self {
        TriMapToH {
            m_dim,
            h_dim,
            table: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn table(&self) -> &BTreeMap<[usize; 3], Vec<Scalar>> {
        &self.table
    }

    /// Value on basis indices in arbitrary order.
    pub fn at(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        match crate::trilie::sort3(i, j, k) {
            None => zero_vec(self.h_dim),
            Some((t, sign)) => match self.table.get(&t) {
                None => zero_vec(self.h_dim),
                Some(v) if sign == -1 => vec_neg(v),
                Some(v) => v.clone(),
            },
        }
    }

    /// Trilinear antisymmetric extension to coordinate vectors.
    pub fn eval(&self, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.h_dim);
        for (&[i, j, k], val) in &self.table {
            // 3x3 determinant of the (u, v, w) rows on columns (i, j, k)
            let det = det3(u, v, w, i, j, k);
            if !det.is_zero() {
                crate::exactlin::vec_add_scaled(&mut out, &det, val);
            }
        }
        out
    }
}

fn det3(u: &[Scalar], v: &[Scalar], w: &[Scalar], i: usize, j: usize, k: usize) -> Scalar {
    let m = |a: &Scalar, b: &Scalar| a * b;
    let t1 = m(&u[i], &(&m(&v[j], &w[k]) - &m(&v[k], &w[j])));
    let t2 = m(&u[j], &(&m(&v[i], &w[k]) - &m(&v[k], &w[i])));
    let t3 = m(&u[k], &(&m(&v[i], &w[j]) - &m(&v[j], &w[i])));
    &(&t1 - &t2) + &t3
}

/// Bilinear action of `(M-basis, H-basis)` pairs by `h_dim x h_dim`
/// matrices. No symmetry across the two slots is possible (they index
/// different spaces); the consistency constraint that matters lives in
/// [`ExtensionSpec::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedAction {
    m_dim: usize,
    h_dim: usize,
    table: BTreeMap<[usize; 2], Matrix>,
}

impl MixedAction {
    pub fn new(m_dim: usize, h_dim: usize, table: BTreeMap<[usize; 2], Matrix>) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (p, m) in table {
            if p[0] >= m_dim || p[1] >= h_dim {
                return Err(Error::invalid(format!(
                    "mixed pair {p:?} out of range for dimensions ({m_dim}, {h_dim})"
                )));
            }
            if m.rows() != h_dim || m.cols() != h_dim {
                return Err(Error::dim(format!(
                    "mixed action matrix for {p:?} is {}x{}, expected {h_dim}x{h_dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_zero() {
                kept.insert(p, m);
            }
        }
        Ok(MixedAction {
            m_dim,
            h_dim,
            table: kept,
        })
    }

    pub fn zero(m_dim: usize, h_dim: usize) -> Self {
        MixedAction {
            m_dim,
            h_dim,
            table: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn table(&self) -> &BTreeMap<[usize; 2], Matrix> {
        &self.table
    }

    /// `beta(x_i, h_a)` as a matrix.
    pub fn at(&self, i: usize, a: usize) -> Matrix {
        self.table
            .get(&[i, a])
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.h_dim, self.h_dim))
    }

    /// Bilinear extension `beta(x, h)` for coordinate vectors.
    pub fn eval(&self, x: &[Scalar], h: &[Scalar]) -> Matrix {
        debug_assert_eq!(x.len(), self.m_dim);
        debug_assert_eq!(h.len(), self.h_dim);
        let mut out = Matrix::zeros(self.h_dim, self.h_dim);
        for (&[i, a], m) in &self.table {
            let c = &x[i] * &h[a];
            if !c.is_zero() {
                out = out.add(&m.scale(&c));
            }
        }
        out
    }
}

/// The full datum of an extension: factors `M` and `H` plus the three
/// structure maps. Construction validates shape consistency, that `rho` and
/// `beta` take values in derivations of `H`, and that `beta(x, h1) h2` is
/// antisymmetric in `(h1, h2)` (otherwise the third bracket clause does not
/// define an antisymmetric product and none of the glue theory applies).
#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    m: ThreeLieAlgebra,
    h: ThreeLieAlgebra,
    mu: TriMapToH,
    rho: PairAction,
    beta: MixedAction,
}

impl ExtensionSpec {
    pub fn new(
        m: ThreeLieAlgebra,
        h: ThreeLieAlgebra,
        mu: TriMapToH,
        rho: PairAction,
        beta: MixedAction,
    ) -> Result<Self> {
        let (md, hd) = (m.dim(), h.dim());
        if mu.m_dim != md || mu.h_dim != hd {
            return Err(Error::dim("mu shape does not match the factors"));
        }
        if rho.algebra_dim() != md || rho.target_dim() != hd {
            return Err(Error::dim("rho shape does not match the factors"));
        }
        if beta.m_dim != md || beta.h_dim != hd {
            return Err(Error::dim("beta shape does not match the factors"));
        }
        for (p, mat) in rho.table() {
            let report = h.is_derivation(&LinearMap::new(mat.clone()))?;
            if !report.passed {
                return Err(Error::invalid(format!(
                    "rho{p:?} is not a derivation of H"
                )));
            }
        }
        for (p, mat) in beta.table() {
            let report = h.is_derivation(&LinearMap::new(mat.clone()))?;
            if !report.passed {
                return Err(Error::invalid(format!(
                    "beta{p:?} is not a derivation of H"
                )));
            }
        }
        for i in 0..md {
            for a in 0..hd {
                for b in a..hd {
                    let lhs = beta.at(i, a).column(b);
                    let rhs = vec_neg(&beta.at(i, b).column(a));
                    if lhs != rhs {
                        return Err(Error::invalid(format!(
                            "beta is not bracket-consistent at (x{i}; h{a}, h{b}): \
                             beta(x,h{a})h{b} != -beta(x,h{b})h{a}"
                        )));
                    }
                }
            }
        }
        Ok(ExtensionSpec {
            m,
            h,
            mu,
            rho,
            beta,
        })
    }

    /// Extension with all three structure maps zero (block direct sum).
    pub fn direct_sum(m: ThreeLieAlgebra, h: ThreeLieAlgebra) -> Self {
        let (md, hd) = (m.dim(), h.dim());
        ExtensionSpec {
            mu: TriMapToH::zero(md, hd),
            rho: PairAction::zero(md, hd),
            beta: MixedAction::zero(md, hd),
            m,
            h,
        }
    }

    pub fn m(&self) -> &ThreeLieAlgebra {
        &self.m
    }

    pub fn h(&self) -> &ThreeLieAlgebra {
        &self.h
    }

    pub fn mu(&self) -> &TriMapToH {
        &self.mu
    }

    pub fn rho(&self) -> &PairAction {
        &self.rho
    }

    pub fn beta(&self) -> &MixedAction {
        &self.beta
    }

    pub fn m_dim(&self) -> usize {
        self.m.dim()
    }

    pub fn h_dim(&self) -> usize {
        self.h.dim()
    }

    pub fn total_dim(&self) -> usize {
        self.m.dim() + self.h.dim()
    }

    /// Glue the four bracket clauses into a 3-algebra on `M ⊕ H` (M-basis
    /// first). The output is antisymmetric by construction but is NOT
    /// assumed to satisfy the fundamental identity.
    pub fn assemble(&self) -> ThreeLieAlgebra {
        let (md, hd) = (self.m_dim(), self.h_dim());
        let n = md + hd;
        let embed_m = |w: &[Scalar]| -> Vec<Scalar> {
            let mut v = zero_vec(n);
            v[..md].clone_from_slice(w);
            v
        };
        let embed_h = |w: &[Scalar]| -> Vec<Scalar> {
            let mut v = zero_vec(n);
            v[md..].clone_from_slice(w);
            v
        };
        let mut sc = BTreeMap::new();
        for [i, j, k] in increasing_triples(n) {
            let value = match (i < md, j < md, k < md) {
                (true, true, true) => {
                    let mut v = embed_m(&self.m.bracket_basis(i, j, k));
                    let muv = self.mu.at(i, j, k);
                    for (t, s) in v[md..].iter_mut().zip(&muv) {
                        *t = &*t + s;
                    }
                    v
                }
                (true, true, false) => embed_h(&self.rho.at(i, j).column(k - md)),
                (true, false, false) => embed_h(&self.beta.at(i, j - md).column(k - md)),
                (false, false, false) => {
                    embed_h(&self.h.bracket_basis(i - md, j - md, k - md))
                }
                _ => unreachable!("indices are sorted"),
            };
            if !vec_is_zero(&value) {
                sc.insert([i, j, k], value);
            }
        }
        let mut labels: Vec<String> = self
            .m
            .basis_labels()
            .iter()
            .map(|l| format!("m:{l}"))
            .collect();
        labels.extend(self.h.basis_labels().iter().map(|l| format!("h:{l}")));
        ThreeLieAlgebra::new(n, labels, sc).expect("assembled table is canonical")
    }

    /// Inclusion `H -> M ⊕ H` as a linear map.
    pub fn inclusion(&self) -> LinearMap {
        let (md, hd) = (self.m_dim(), self.h_dim());
        LinearMap::new(Matrix::vstack(&[
            &Matrix::zeros(md, hd),
            &Matrix::identity(hd),
        ]))
    }

    /// Projection `M ⊕ H -> M`.
    pub fn projection(&self) -> LinearMap {
        let (md, hd) = (self.m_dim(), self.h_dim());
        LinearMap::new(Matrix::hstack(&[
            &Matrix::identity(md),
            &Matrix::zeros(md, hd),
        ]))
    }

    /// The `H` block as a subspace of the assembled algebra.
    pub fn h_block(&self) -> Subspace {
        let n = self.total_dim();
        Subspace::from_rows(n, (self.m_dim()..n).map(|i| unit_vec(n, i)).collect())
    }
}

/// `beta(x_i, w)` for a general `H`-vector in the second slot.
fn beta_at_vec(beta: &MixedAction, i: usize, w: &[Scalar]) -> Matrix {
    beta.eval(&unit_vec(beta.m_dim, i), w)
}

/// One report per compatibility condition, plus the aggregate verdict.
/// The condition keys are stable identifiers used verbatim in reports.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionLedger {
    pub eq4: CheckReport,
    pub eq6: CheckReport,
    pub eq8: CheckReport,
    pub eq10: CheckReport,
    pub eq12: CheckReport,
    pub eq13: CheckReport,
    pub eq14: CheckReport,
}

impl ConditionLedger {
    pub fn passed(&self) -> bool {
        self.reports().iter().all(|r| r.passed)
    }

    pub fn reports(&self) -> [&CheckReport; 7] {
        [
            &self.eq4, &self.eq6, &self.eq8, &self.eq10, &self.eq12, &self.eq13, &self.eq14,
        ]
    }
}

/// Pairwise-action balance: for all `x, y, z, u` in the `M`-basis,
/// `rho(x,u)rho(y,z) + rho(y,z)rho(x,u) + rho(x,y)rho(z,u) + rho(z,u)rho(x,y)
///  - rho(x,z)rho(y,u) - rho(y,u)rho(x,z) = 0`.
pub fn check_condition_eq4(spec: &ExtensionSpec) -> CheckReport {
    let m = spec.m_dim();
    let rho = spec.rho();
    let keys = index_product(&[m, m, m, m]);
    let zero = Matrix::zeros(spec.h_dim(), spec.h_dim());
    let witnesses = collect_violations(&keys, |t| {
        let (x, y, z, u) = (t[0], t[1], t[2], t[3]);
        let lhs = rho
            .at(x, u)
            .mul(&rho.at(y, z))
            .add(&rho.at(y, z).mul(&rho.at(x, u)))
            .add(&rho.at(x, y).mul(&rho.at(z, u)))
            .add(&rho.at(z, u).mul(&rho.at(x, y)))
            .sub(&rho.at(x, z).mul(&rho.at(y, u)))
            .sub(&rho.at(y, u).mul(&rho.at(x, z)));
        (lhs != zero).then(|| Witness::new("eq4", t.clone(), lhs.flatten(), zero.flatten()))
    });
    CheckReport::new("eq4", keys.len() as u64, witnesses)
}

/// Action on `M`-brackets:
/// `rho(x4, [x1,x2,x3]_M) = rho(x3,x1)rho(x4,x2) - rho(x2,x1)rho(x4,x3)
///  + rho(x2,x3)rho(x4,x1) - beta(x4, mu(x1,x2,x3))`.
pub fn check_condition_eq6(spec: &ExtensionSpec) -> CheckReport {
    let m = spec.m_dim();
    let (rho, mu, beta) = (spec.rho(), spec.mu(), spec.beta());
    let keys = index_product(&[m, m, m, m]);
    let witnesses = collect_violations(&keys, |t| {
        let (x1, x2, x3, x4) = (t[0], t[1], t[2], t[3]);
        let br = spec.m().bracket_basis(x1, x2, x3);
        let lhs = rho.eval(&unit_vec(m, x4), &br);
        let rhs = rho
            .at(x3, x1)
            .mul(&rho.at(x4, x2))
            .sub(&rho.at(x2, x1).mul(&rho.at(x4, x3)))
            .add(&rho.at(x2, x3).mul(&rho.at(x4, x1)))
            .sub(&beta_at_vec(beta, x4, &mu.at(x1, x2, x3)));
        (lhs != rhs).then(|| Witness::new("eq6", t.clone(), lhs.flatten(), rhs.flatten()))
    });
    CheckReport::new("eq6", keys.len() as u64, witnesses)
}

/// Mixed-action product rule against the `H`-bracket:
/// `beta(y,h2)beta(x,h1)h - beta(y,h)beta(x,h1)h2 - beta(x,h1)beta(y,h2)h
///  = [rho(x,y)h1, h2, h]_H`.
pub fn check_condition_eq8(spec: &ExtensionSpec) -> CheckReport {
    let (m, hd) = (spec.m_dim(), spec.h_dim());
    let (rho, beta, h) = (spec.rho(), spec.beta(), spec.h());
    let keys = index_product(&[m, m, hd, hd, hd]);
    let witnesses = collect_violations(&keys, |t| {
        let (x, y, h1, h2, hh) = (t[0], t[1], t[2], t[3], t[4]);
        let bxh1 = beta.at(x, h1);
        let lhs = vec_sub(
            &vec_sub(
                &beta.at(y, h2).mul_vec(&bxh1.column(hh)),
                &beta.at(y, hh).mul_vec(&bxh1.column(h2)),
            ),
            &bxh1.mul_vec(&beta.at(y, h2).column(hh)),
        );
        let rhs = {
            let rh1 = rho.at(x, y).column(h1);
            let w = h.bracket(&rh1, &unit_vec(hd, h2), &unit_vec(hd, hh));
            w.expect("H dimensions agree")
        };
        (lhs != rhs).then(|| Witness::new("eq8", t.clone(), lhs, rhs))
    });
    CheckReport::new("eq8", keys.len() as u64, witnesses)
}

/// Mixed action versus inner derivations:
/// `ad(beta(x,h1)h3, h2) + ad(h3, beta(x,h1)h2) + ad(beta(x,h3)h2, h1)
///  = beta(x, [h1,h2,h3]_H)` as operators on `H`.
pub fn check_condition_eq10(spec: &ExtensionSpec) -> CheckReport {
    let (m, hd) = (spec.m_dim(), spec.h_dim());
    let (beta, h) = (spec.beta(), spec.h());
    let keys = index_product(&[m, hd, hd, hd]);
    let witnesses = collect_violations(&keys, |t| {
        let (x, h1, h2, h3) = (t[0], t[1], t[2], t[3]);
        let ad = |u: &[Scalar], v: &[Scalar]| -> Matrix {
            h.inner_derivation(u, v)
                .expect("H dimensions agree")
                .matrix()
                .clone()
        };
        let bxh1 = beta.at(x, h1);
        let u2 = unit_vec(hd, h2);
        let u1 = unit_vec(hd, h1);
        let u3 = unit_vec(hd, h3);
        let lhs = ad(&bxh1.column(h3), &u2)
            .add(&ad(&u3, &bxh1.column(h2)))
            .add(&ad(&beta.at(x, h3).column(h2), &u1));
        let rhs = beta_at_vec(beta, x, &h.bracket_basis(h1, h2, h3));
        (lhs != rhs).then(|| Witness::new("eq10", t.clone(), lhs.flatten(), rhs.flatten()))
    });
    CheckReport::new("eq10", keys.len() as u64, witnesses)
}

/// `mu` values bracketed against `H`:
/// `[mu(x1,x2,x3), h1, h2]_H = rho(x2,x3)beta(x1,h1)h2 - rho(x1,x3)beta(x2,h1)h2
///  + rho(x1,x2)beta(x3,h1)h2 - beta([x1,x2,x3]_M, h1)h2`.
pub fn check_condition_eq12(spec: &ExtensionSpec) -> CheckReport {
    let (m, hd) = (spec.m_dim(), spec.h_dim());
    let (rho, mu, beta, h) = (spec.rho(), spec.mu(), spec.beta(), spec.h());
    let keys = index_product(&[m, m, m, hd, hd]);
    let witnesses = collect_violations(&keys, |t| {
        let (x1, x2, x3, h1, h2) = (t[0], t[1], t[2], t[3], t[4]);
        let lhs = h
            .bracket(&mu.at(x1, x2, x3), &unit_vec(hd, h1), &unit_vec(hd, h2))
            .expect("H dimensions agree");
        let br = spec.m().bracket_basis(x1, x2, x3);
        let rhs = vec_add(
            &vec_sub(
                &rho.at(x2, x3).mul_vec(&beta.at(x1, h1).column(h2)),
                &rho.at(x1, x3).mul_vec(&beta.at(x2, h1).column(h2)),
            ),
            &vec_sub(
                &rho.at(x1, x2).mul_vec(&beta.at(x3, h1).column(h2)),
                &beta.eval(&br, &unit_vec(hd, h1)).column(h2),
            ),
        );
        (lhs != rhs).then(|| Witness::new("eq12", t.clone(), lhs, rhs))
    });
    CheckReport::new("eq12", keys.len() as u64, witnesses)
}

/// Mixed/pair action interchange:
/// `beta(x1,h1)rho(x2,x3)h2 + beta(x3,h2)rho(x1,x2)h1
///  = rho(x2,x3)beta(x1,h1)h2 + beta(x2,h2)rho(x1,x3)h1`.
pub fn check_condition_eq13(spec: &ExtensionSpec) -> CheckReport {
    let (m, hd) = (spec.m_dim(), spec.h_dim());
    let (rho, beta) = (spec.rho(), spec.beta());
    let keys = index_product(&[m, m, m, hd, hd]);
    let witnesses = collect_violations(&keys, |t| {
        let (x1, x2, x3, h1, h2) = (t[0], t[1], t[2], t[3], t[4]);
        let lhs = vec_add(
            &beta.at(x1, h1).mul_vec(&rho.at(x2, x3).column(h2)),
            &beta.at(x3, h2).mul_vec(&rho.at(x1, x2).column(h1)),
        );
        let rhs = vec_add(
            &rho.at(x2, x3).mul_vec(&beta.at(x1, h1).column(h2)),
            &beta.at(x2, h2).mul_vec(&rho.at(x1, x3).column(h1)),
        );
        (lhs != rhs).then(|| Witness::new("eq13", t.clone(), lhs, rhs))
    });
    CheckReport::new("eq13", keys.len() as u64, witnesses)
}

/// Derivation-style rule for `mu` over the `M`-bracket:
/// `mu(x1,x2,[x3,x4,x5]_M) - mu([x1,x2,x3]_M,x4,x5) - mu(x3,[x1,x2,x4]_M,x5)
///  - mu(x3,x4,[x1,x2,x5]_M) = rho(x3,x4)mu(x1,x2,x5) - rho(x3,x5)mu(x1,x2,x4)
///  - rho(x1,x2)mu(x3,x4,x5) + rho(x4,x5)mu(x1,x2,x3)`.
pub fn check_condition_eq14(spec: &ExtensionSpec) -> CheckReport {
    let m = spec.m_dim();
    let (rho, mu) = (spec.rho(), spec.mu());
    let keys = index_product(&[m, m, m, m, m]);
    let unit = |i: usize| unit_vec(m, i);
    let witnesses = collect_violations(&keys, |t| {
        let (x1, x2, x3, x4, x5) = (t[0], t[1], t[2], t[3], t[4]);
        let malg = spec.m();
        let lhs = vec_sub(
            &vec_sub(
                &mu.eval(&unit(x1), &unit(x2), &malg.bracket_basis(x3, x4, x5)),
                &mu.eval(&malg.bracket_basis(x1, x2, x3), &unit(x4), &unit(x5)),
            ),
            &vec_add(
                &mu.eval(&unit(x3), &malg.bracket_basis(x1, x2, x4), &unit(x5)),
                &mu.eval(&unit(x3), &unit(x4), &malg.bracket_basis(x1, x2, x5)),
            ),
        );
        let rhs = vec_add(
            &vec_sub(
                &rho.at(x3, x4).mul_vec(&mu.at(x1, x2, x5)),
                &rho.at(x3, x5).mul_vec(&mu.at(x1, x2, x4)),
            ),
            &vec_sub(
                &rho.at(x4, x5).mul_vec(&mu.at(x1, x2, x3)),
                &rho.at(x1, x2).mul_vec(&mu.at(x3, x4, x5)),
            ),
        );
        (lhs != rhs).then(|| Witness::new("eq14", t.clone(), lhs, rhs))
    });
    CheckReport::new("eq14", keys.len() as u64, witnesses)
}

/// Run all seven compatibility conditions. The aggregate verdict is
/// equivalent to `spec.assemble()` passing the fundamental-identity sweep;
/// that equivalence is this module's central property test.
pub fn check_extension_conditions(spec: &ExtensionSpec) -> ConditionLedger {
    ConditionLedger {
        eq4: check_condition_eq4(spec),
        eq6: check_condition_eq6(spec),
        eq8: check_condition_eq8(spec),
        eq10: check_condition_eq10(spec),
        eq12: check_condition_eq12(spec),
        eq13: check_condition_eq13(spec),
        eq14: check_condition_eq14(spec),
    }
}

/// Secondary identity implied by eq4 in the presence of eq6:
/// `rho(x4,[x1,x2,x3]) = rho(x3,[x1,x2,x4]) - beta(x4,mu(x1,x2,x3))
///  + beta(x3,mu(x1,x2,x4)) - rho(x1,x2)rho(x3,x4) + rho(x3,x4)rho(x1,x2)`.
fn check_condition_eq7(spec: &ExtensionSpec) -> CheckReport {
    let m = spec.m_dim();
    let (rho, mu, beta) = (spec.rho(), spec.mu(), spec.beta());
    let keys = index_product(&[m, m, m, m]);
    let witnesses = collect_violations(&keys, |t| {
        let (x1, x2, x3, x4) = (t[0], t[1], t[2], t[3]);
        let malg = spec.m();
        let lhs = rho.eval(&unit_vec(m, x4), &malg.bracket_basis(x1, x2, x3));
        let rhs = rho
            .eval(&unit_vec(m, x3), &malg.bracket_basis(x1, x2, x4))
            .sub(&beta_at_vec(beta, x4, &mu.at(x1, x2, x3)))
            .add(&beta_at_vec(beta, x3, &mu.at(x1, x2, x4)))
            .sub(&rho.at(x1, x2).mul(&rho.at(x3, x4)))
            .add(&rho.at(x3, x4).mul(&rho.at(x1, x2)));
        (lhs != rhs).then(|| Witness::new("eq7", t.clone(), lhs.flatten(), rhs.flatten()))
    });
    CheckReport::new("eq7", keys.len() as u64, witnesses)
}

/// Consequence of eq8:
/// `rho(x,y)[h1,h2,h]_H + beta(y,h1)beta(x,h2)h - beta(x,h1)beta(y,h2)h
///  = [rho(x,y)h1, h2, h]_H`.
fn check_condition_eq9(spec: &ExtensionSpec) -> CheckReport {
    let (m, hd) = (spec.m_dim(), spec.h_dim());
    let (rho, beta, h) = (spec.rho(), spec.beta(), spec.h());
    let keys = index_product(&[m, m, hd, hd, hd]);
    let witnesses = collect_violations(&keys, |t| {
        let (x, y, h1, h2, hh) = (t[0], t[1], t[2], t[3], t[4]);
        let lhs = vec_add(
            &rho.at(x, y).mul_vec(&h.bracket_basis(h1, h2, hh)),
            &vec_sub(
                &beta.at(y, h1).mul_vec(&beta.at(x, h2).column(hh)),
                &beta.at(x, h1).mul_vec(&beta.at(y, h2).column(hh)),
            ),
        );
        let rhs = h
            .bracket(
                &rho.at(x, y).column(h1),
                &unit_vec(hd, h2),
                &unit_vec(hd, hh),
            )
            .expect("H dimensions agree");
        (lhs != rhs).then(|| Witness::new("eq9", t.clone(), lhs, rhs))
    });
    CheckReport::new("eq9", keys.len() as u64, witnesses)
}

/// Consequence of eq10:
/// `[h1,h2,beta(x,h3)h4]_H - beta(x,[h1,h2,h3]_H)h4 - [h3,h4,beta(x,h1)h2]_H
///  = beta(x,h3)[h1,h2,h4]_H`.
fn check_condition_eq11(spec: &ExtensionSpec) -> CheckReport {
    let (m, hd) = (spec.m_dim(), spec.h_dim());
    let (beta, h) = (spec.beta(), spec.h());
    let keys = index_product(&[m, hd, hd, hd, hd]);
    let witnesses = collect_violations(&keys, |t| {
        let (x, h1, h2, h3, h4) = (t[0], t[1], t[2], t[3], t[4]);
        let u = |i: usize| unit_vec(hd, i);
        let lhs = vec_sub(
            &vec_sub(
                &h.bracket(&u(h1), &u(h2), &beta.at(x, h3).column(h4))
                    .expect("H dimensions agree"),
                &beta_at_vec(beta, x, &h.bracket_basis(h1, h2, h3)).column(h4),
            ),
            &h.bracket(&u(h3), &u(h4), &beta.at(x, h1).column(h2))
                .expect("H dimensions agree"),
        );
        let rhs = beta.at(x, h3).mul_vec(&h.bracket_basis(h1, h2, h4));
        (lhs != rhs).then(|| Witness::new("eq11", t.clone(), lhs, rhs))
    });
    CheckReport::new("eq11", keys.len() as u64, witnesses)
}

/// The three conditional claims tying the secondary identities to the main
/// conditions, verified as material implications on the given spec:
/// given eq6, eq4 and eq7 are equivalent; given eq8, eq9 holds; given eq10,
/// eq11 holds. A failed hypothesis makes the claim vacuous.
pub fn check_conditional_identities(spec: &ExtensionSpec) -> CheckReport {
    let mut witnesses = Vec::new();
    let mut checked = 0u64;

    let eq6 = check_condition_eq6(spec);
    checked += eq6.checked;
    if eq6.passed {
        let eq4 = check_condition_eq4(spec);
        let eq7 = check_condition_eq7(spec);
        checked += eq4.checked + eq7.checked;
        if eq4.passed && !eq7.passed {
            witnesses.extend(eq7.witnesses.into_iter().map(|mut w| {
                w.identity = "eq7_expected_from_eq4_eq6".into();
                w
            }));
        } else if eq7.passed && !eq4.passed {
            witnesses.extend(eq4.witnesses.into_iter().map(|mut w| {
                w.identity = "eq4_expected_from_eq7_eq6".into();
                w
            }));
        }
    }

    let eq8 = check_condition_eq8(spec);
    checked += eq8.checked;
    if eq8.passed {
        let eq9 = check_condition_eq9(spec);
        checked += eq9.checked;
        witnesses.extend(eq9.witnesses.into_iter().map(|mut w| {
            w.identity = "eq9_expected_from_eq8".into();
            w
        }));
    }

    let eq10 = check_condition_eq10(spec);
    checked += eq10.checked;
    if eq10.passed {
        let eq11 = check_condition_eq11(spec);
        checked += eq11.checked;
        witnesses.extend(eq11.witnesses.into_iter().map(|mut w| {
            w.identity = "eq11_expected_from_eq10".into();
            w
        }));
    }

    CheckReport::new("conditional_identities", checked, witnesses)
}

/// Result of the module-criterion check: the two booleans are equal on
/// every extension whose assembled bracket is a 3-Lie bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleCriterion {
    /// `(H, rho)` is an `M`-module (both representation identities hold).
    pub is_module: bool,
    /// `beta(x_i, mu(x_j, x_k, x_l)) = 0` as an operator, for every `M`
    /// basis index and canonical `M`-triple.
    pub beta_mu_zero: bool,
}

/// Module criterion for a valid extension. Requires the assembled algebra
/// to pass the fundamental identity.
pub fn check_module_criterion(spec: &ExtensionSpec) -> Result<ModuleCriterion> {
    let fi = spec.assemble().check_fundamental_identity();
    if !fi.passed {
        return Err(Error::precondition(
            "module criterion applies only to valid extensions",
        ));
    }
    let is_module = check_representation(spec.m(), spec.rho())?.passed;
    let mut beta_mu_zero = true;
    'outer: for i in 0..spec.m_dim() {
        for t in increasing_triples(spec.m_dim()) {
            let muv = spec.mu().at(t[0], t[1], t[2]);
            if !beta_at_vec(spec.beta(), i, &muv).is_zero() {
                beta_mu_zero = false;
                break 'outer;
            }
        }
    }
    Ok(ModuleCriterion {
        is_module,
        beta_mu_zero,
    })
}

/// Specialized conditions for `beta = 0` with `(H, rho)` an `M`-module:
/// (a) every `mu` value lies in the center of `H`,
/// (b) the pair action maps `H` into the center of `H`,
/// (c) eq14 holds.
/// The conjunction is equivalent to the assembled algebra passing the
/// fundamental identity.
pub fn check_central_case(spec: &ExtensionSpec) -> Result<CheckReport> {
    if !spec.beta().is_zero() {
        return Err(Error::precondition(
            "central-case check applies only to beta = 0",
        ));
    }
    if !check_representation(spec.m(), spec.rho())?.passed {
        return Err(Error::precondition(
            "central-case check requires (H, rho) to be an M-module",
        ));
    }
    let center = spec.h().center();
    let mut witnesses = Vec::new();
    let mut checked = 0u64;
    for t in increasing_triples(spec.m_dim()) {
        checked += 1;
        let v = spec.mu().at(t[0], t[1], t[2]);
        if !center.contains(&v) {
            witnesses.push(Witness::new(
                "mu_into_center",
                t.to_vec(),
                v,
                zero_vec(spec.h_dim()),
            ));
        }
    }
    for [i, j] in increasing_pairs(spec.m_dim()) {
        for a in 0..spec.h_dim() {
            checked += 1;
            let v = spec.rho().at(i, j).column(a);
            if !center.contains(&v) {
                witnesses.push(Witness::new(
                    "rho_image_central",
                    vec![i, j, a],
                    v,
                    zero_vec(spec.h_dim()),
                ));
            }
        }
    }
    let eq14 = check_condition_eq14(spec);
    checked += eq14.checked;
    witnesses.extend(eq14.witnesses);
    Ok(CheckReport::new("central_case", checked, witnesses))
}

/// Exactness of `0 -> H -> M ⊕ H -> M -> 0` for a valid extension: both
/// maps are homomorphisms, the inclusion is injective, the projection is
/// surjective, and the image of the inclusion equals the kernel of the
/// projection.
pub fn check_exact_sequence(spec: &ExtensionSpec) -> Result<CheckReport> {
    let a = spec.assemble();
    if !a.check_fundamental_identity().passed {
        return Err(Error::precondition(
            "exact-sequence check applies only to valid extensions",
        ));
    }
    let i = spec.inclusion();
    let p = spec.projection();
    let mut parts = Vec::new();
    parts.push(is_homomorphism(&i, spec.h(), &a)?.renamed("inclusion_homomorphism"));
    parts.push(is_homomorphism(&p, &a, spec.m())?.renamed("projection_homomorphism"));

    let mut extra = Vec::new();
    if i.matrix().rank() != spec.h_dim() {
        extra.push(Witness::new(
            "inclusion_injective",
            vec![],
            vec![],
            vec![],
        ));
    }
    if p.matrix().rank() != spec.m_dim() {
        extra.push(Witness::new(
            "projection_surjective",
            vec![],
            vec![],
            vec![],
        ));
    }
    if i.image() != p.kernel() {
        extra.push(Witness::new("image_equals_kernel", vec![], vec![], vec![]));
    }
    parts.push(CheckReport::new("exactness", 3, extra));
    Ok(CheckReport::merge("exact_sequence", parts))
}

/// The central-extension fixture: abelian `M` of dimension 3, abelian `H`
/// of dimension 1, `mu(x1, x2, x3) = h1`, `rho = beta = 0`. Assembles to
/// the dim-4 algebra with `[e1, e2, e3] = e4`.
pub fn heisenberg_spec() -> ExtensionSpec {
    let mut table = BTreeMap::new();
    table.insert([0, 1, 2], vec![Scalar::one()]);
    ExtensionSpec::new(
        abelian(3),
        abelian(1),
        TriMapToH::new(3, 1, table).expect("valid table"),
        PairAction::zero(3, 1),
        MixedAction::zero(3, 1),
    )
    .expect("fixture is a valid extension datum")
}

/// Seeded sampler of small extension data with coefficients in `{-1, 0, 1}`.
///
/// `m_dim` may be up to 3 (any antisymmetric dim-3 table is a 3-Lie
/// algebra); `h_dim` up to 2 so that `H` is abelian and every matrix is a
/// derivation. `beta` is sampled bracket-consistently, so the result always
/// passes `ExtensionSpec::new` validation — but it need not satisfy the
/// compatibility conditions, which is the point.
pub fn sample_small_spec<R: Rng>(rng: &mut R, m_dim: usize, h_dim: usize) -> ExtensionSpec {
    assert!(m_dim <= 3, "sampler supports M dimension up to 3");
    assert!(h_dim <= 2, "sampler supports H dimension up to 2");
    let coeff = |rng: &mut R| Scalar::from_int(rng.gen_range(-1..=1));
    let rand_vec = |rng: &mut R, n: usize| -> Vec<Scalar> {
        (0..n).map(|_| coeff(rng)).collect()
    };

    let mut m_sc = BTreeMap::new();
    for t in increasing_triples(m_dim) {
        m_sc.insert(t, rand_vec(rng, m_dim));
    }
    let m = ThreeLieAlgebra::with_default_labels(m_dim, m_sc).expect("canonical table");
    let h = abelian(h_dim);

    let mut mu_table = BTreeMap::new();
    if rng.gen_bool(0.8) {
        for t in increasing_triples(m_dim) {
            mu_table.insert(t, rand_vec(rng, h_dim));
        }
    }
    let mu = TriMapToH::new(m_dim, h_dim, mu_table).expect("canonical table");

    let mut rho_table = BTreeMap::new();
    if rng.gen_bool(0.8) {
        for p in increasing_pairs(m_dim) {
            let entries = rand_vec(rng, h_dim * h_dim);
            rho_table.insert(
                p,
                Matrix::from_entries(h_dim, h_dim, entries).expect("square"),
            );
        }
    }
    let rho = PairAction::new(m_dim, h_dim, rho_table).expect("valid table");

    let mut beta_table = BTreeMap::new();
    if rng.gen_bool(0.5) {
        for i in 0..m_dim {
            // sample the antisymmetric data beta(x_i, h_a) h_b for a < b
            let mut mats = vec![Matrix::zeros(h_dim, h_dim); h_dim];
            for a in 0..h_dim {
                for b in a + 1..h_dim {
                    let v = rand_vec(rng, h_dim);
                    for r in 0..h_dim {
                        mats[a][(r, b)] = v[r].clone();
                        mats[b][(r, a)] = -&v[r];
                    }
                }
            }
            for (a, mat) in mats.into_iter().enumerate() {
                beta_table.insert([i, a], mat);
            }
        }
    }
    let beta = MixedAction::new(m_dim, h_dim, beta_table).expect("valid table");

    ExtensionSpec::new(m, h, mu, rho, beta).expect("sampled datum is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::simple4;
    use rand::SeedableRng;

    fn h3() -> ThreeLieAlgebra {
        let mut sc = BTreeMap::new();
        sc.insert([0, 1, 2], unit_vec(3, 0));
        ThreeLieAlgebra::with_default_labels(3, sc).unwrap()
    }

    #[test]
    fn direct_sum_assembles_blockwise() {
        let spec = ExtensionSpec::direct_sum(simple4(), abelian(1));
        let a = spec.assemble();
        assert_eq!(a.dim(), 5);
        assert!(a.check_fundamental_identity().passed);
        assert!(check_extension_conditions(&spec).passed());
        assert_eq!(a.bracket_basis(0, 1, 2), unit_vec(5, 3));
    }

    #[test]
    fn heisenberg_fixture() {
        let spec = heisenberg_spec();
        let a = spec.assemble();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.bracket_basis(0, 1, 2), unit_vec(4, 3));
        assert!(a.check_fundamental_identity().passed);
        let ledger = check_extension_conditions(&spec);
        assert!(ledger.passed());
        assert!(check_conditional_identities(&spec).passed);
    }

    #[test]
    fn rejects_inconsistent_beta() {
        // beta(x, h1) h1 != 0 contradicts antisymmetry of the bracket clause
        let mut table = BTreeMap::new();
        table.insert([0, 0], Matrix::identity(2));
        let beta = MixedAction::new(1, 2, table).unwrap();
        let err = ExtensionSpec::new(
            abelian(1),
            abelian(2),
            TriMapToH::zero(1, 2),
            PairAction::zero(1, 2),
            beta,
        );
        assert!(err.is_err());
    }

    #[test]
    fn rejects_non_derivation_rho() {
        // identity is not a derivation of a nonabelian H
        let mut table = BTreeMap::new();
        table.insert([0, 1], Matrix::identity(3));
        let rho = PairAction::new(2, 3, table).unwrap();
        let err = ExtensionSpec::new(
            abelian(2),
            h3(),
            TriMapToH::zero(2, 3),
            rho,
            MixedAction::zero(2, 3),
        );
        assert!(err.is_err());
    }

    #[test]
    fn eq6_violation_found() {
        // nonabelian M with a single nonzero scalar action breaks eq6
        let mut rho_table = BTreeMap::new();
        rho_table.insert([0, 1], Matrix::identity(1));
        let spec = ExtensionSpec::new(
            h3(),
            abelian(1),
            TriMapToH::zero(3, 1),
            PairAction::new(3, 1, rho_table).unwrap(),
            MixedAction::zero(3, 1),
        )
        .unwrap();
        let report = check_condition_eq6(&spec);
        assert!(!report.passed);
        // the assembled algebra must agree with the ledger verdict
        let ledger = check_extension_conditions(&spec);
        assert!(!ledger.passed());
        assert!(!spec.assemble().check_fundamental_identity().passed);
    }

    #[test]
    fn eq4_violation_found() {
        let mut rho_table = BTreeMap::new();
        let e11 = Matrix::from_i64_rows(&[&[1, 0], &[0, 0]]);
        rho_table.insert([0, 1], e11.clone());
        rho_table.insert([2, 3], e11);
        let spec = ExtensionSpec::new(
            abelian(4),
            abelian(2),
            TriMapToH::zero(4, 2),
            PairAction::new(4, 2, rho_table).unwrap(),
            MixedAction::zero(4, 2),
        )
        .unwrap();
        assert!(!check_condition_eq4(&spec).passed);
        assert!(!spec.assemble().check_fundamental_identity().passed);
    }

    #[test]
    fn ledger_matches_direct_check_on_random_specs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut passing = 0;
        for trial in 0..120usize {
            let m_dim = trial % 4; // 0..=3
            let h_dim = (trial / 4) % 3; // 0..=2
            let spec = sample_small_spec(&mut rng, m_dim, h_dim);
            let ledger = check_extension_conditions(&spec);
            let direct = spec.assemble().check_fundamental_identity();
            assert_eq!(
                ledger.passed(),
                direct.passed,
                "trial {trial}: ledger {:?} vs direct {:?}",
                ledger.reports().iter().map(|r| r.passed).collect::<Vec<_>>(),
                direct.witnesses.first(),
            );
            if direct.passed {
                passing += 1;
            }
        }
        assert!(passing > 5, "sampler should produce some valid extensions");
    }

    #[test]
    fn module_criterion_on_fixtures() {
        let spec = heisenberg_spec();
        let crit = check_module_criterion(&spec).unwrap();
        assert!(crit.is_module);
        assert!(crit.beta_mu_zero);
        assert_eq!(crit.is_module, crit.beta_mu_zero);

        // invalid extension is rejected up front
        let mut rho_table = BTreeMap::new();
        rho_table.insert([0, 1], Matrix::identity(1));
        let bad = ExtensionSpec::new(
            h3(),
            abelian(1),
            TriMapToH::zero(3, 1),
            PairAction::new(3, 1, rho_table).unwrap(),
            MixedAction::zero(3, 1),
        )
        .unwrap();
        assert!(check_module_criterion(&bad).is_err());
    }

    #[test]
    fn central_case_detects_mu_outside_center() {
        // H = h3 has trivial center; mu into H cannot stay central
        let mut mu_table = BTreeMap::new();
        mu_table.insert([0, 1, 2], unit_vec(3, 1));
        let spec = ExtensionSpec::new(
            abelian(3),
            h3(),
            TriMapToH::new(3, 3, mu_table).unwrap(),
            PairAction::zero(3, 3),
            MixedAction::zero(3, 3),
        )
        .unwrap();
        let report = check_central_case(&spec).unwrap();
        assert!(!report.passed);
        assert!(report.witnesses.iter().any(|w| w.identity == "mu_into_center"));
        assert!(!spec.assemble().check_fundamental_identity().passed);
    }

    #[test]
    fn central_case_passes_on_heisenberg() {
        let spec = heisenberg_spec();
        let report = check_central_case(&spec).unwrap();
        assert!(report.passed);
        assert!(spec.assemble().check_fundamental_identity().passed);
    }

    #[test]
    fn exact_sequence_on_fixtures() {
        for spec in [
            ExtensionSpec::direct_sum(simple4(), abelian(2)),
            heisenberg_spec(),
        ] {
            let report = check_exact_sequence(&spec).unwrap();
            assert!(report.passed, "{:?}", report.witnesses.first());
        }
    }

    #[test]
    fn h_block_is_ideal_of_valid_extensions() {
        for spec in [
            ExtensionSpec::direct_sum(simple4(), abelian(2)),
            heisenberg_spec(),
        ] {
            let a = spec.assemble();
            assert!(a.is_ideal(&spec.h_block()).unwrap());
        }
    }
}
