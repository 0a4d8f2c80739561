//! Core 3-Lie algebra type and the exhaustive checkers built on it.
//!
//! Structure constants are stored only on strictly increasing index triples;
//! evaluation on arbitrary triples applies the permutation sign, and any
//! triple with a repeated index brackets to zero. Identity sweeps therefore
//! range over canonical tuples only (`x < y < z`, `u < v`), which is
//! complete by multilinearity.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::exactlin::{
    unit_vec, vec_add, vec_add_scaled, vec_is_zero, vec_neg, vec_sub, zero_vec, Matrix, Scalar,
    Subspace,
};
use crate::report::{CheckReport, Witness};
use crate::sweep::{collect_violations, increasing_pairs, increasing_triples};
use crate::Result;

/// Sort a triple of indices, returning the canonical triple and the sign of
/// the sorting permutation. `None` when an index repeats.
pub(crate) fn sort3(i: usize, j: usize, k: usize) -> Option<([usize; 3], i8)> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut t = [i, j, k];
    let mut sign = 1i8;
    // three-element bubble sort, counting swaps
    if t[0] > t[1] {
        t.swap(0, 1);
        sign = -sign;
    }
    if t[1] > t[2] {
        t.swap(1, 2);
        sign = -sign;
    }
    if t[0] > t[1] {
        t.swap(0, 1);
        sign = -sign;
    }
    Some((t, sign))
}

/// Finite-dimensional 3-Lie algebra presented by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeLieAlgebra {
    dim: usize,
    basis_labels: Vec<String>,
    /// `sc[[i,j,k]]` with `i < j < k` is the coordinate vector of
    /// `[e_i, e_j, e_k]`. Missing triples are zero.
    sc: BTreeMap<[usize; 3], Vec<Scalar>>,
}

impl ThreeLieAlgebra {
    /// Build from canonical structure constants. Zero vectors are dropped.
    pub fn new(
        dim: usize,
        basis_labels: Vec<String>,
        sc: BTreeMap<[usize; 3], Vec<Scalar>>,
    ) -> Result<Self> {
        if basis_labels.len() != dim {
            return Err(Error::dim(format!(
                "{} basis labels for dimension {dim}",
                basis_labels.len()
            )));
        }
        let mut kept = BTreeMap::new();
        for (t, v) in sc {
            if !(t[0] < t[1] && t[1] < t[2]) {
                return Err(Error::invalid(format!(
                    "structure constant triple {t:?} is not strictly increasing"
                )));
            }
            if t[2] >= dim {
                return Err(Error::invalid(format!(
                    "structure constant triple {t:?} out of range for dimension {dim}"
                )));
            }
            if v.len() != dim {
                return Err(Error::dim(format!(
                    "coefficient vector for {t:?} has length {}, expected {dim}",
                    v.len()
                )));
            }
            if !vec_is_zero(&v) {
                kept.insert(t, v);
            }
        }
        Ok(ThreeLieAlgebra {
            dim,
            basis_labels,
            sc: kept,
        })
    }

    pub fn with_default_labels(dim: usize, sc: BTreeMap<[usize; 3], Vec<Scalar>>) -> Result<Self> {
        ThreeLieAlgebra::new(dim, default_labels(dim), sc)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn structure_constants(&self) -> &BTreeMap<[usize; 3], Vec<Scalar>> {
        &self.sc
    }

    pub fn is_abelian(&self) -> bool {
        self.sc.is_empty()
    }

    /// `[e_i, e_j, e_k]` for arbitrary index order, as `(sign, stored)`.
    /// `None` means zero (repeated index or unstored triple).
    fn bb(&self, i: usize, j: usize, k: usize) -> Option<(i8, &[Scalar])> {
        let (t, sign) = sort3(i, j, k)?;
        self.sc.get(&t).map(|v| (sign, v.as_slice()))
    }

    /// `[e_i, e_j, e_k]` as an owned coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        match self.bb(i, j, k) {
            None => zero_vec(self.dim),
            Some((1, v)) => v.to_vec(),
            Some((_, v)) => vec_neg(v),
        }
    }

    /// `[w, e_u, e_v]` for a coordinate vector `w`.
    pub fn bracket_vec_basis2(&self, w: &[Scalar], u: usize, v: usize) -> Vec<Scalar> {
        debug_assert_eq!(w.len(), self.dim);
        let mut out = zero_vec(self.dim);
        for (l, c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some((sign, val)) = self.bb(l, u, v) {
                let coeff = if sign == 1 { c.clone() } else { -c };
                vec_add_scaled(&mut out, &coeff, val);
            }
        }
        out
    }

    /// Trilinear bracket of arbitrary coordinate vectors.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Result<Vec<Scalar>> {
        for (name, arg) in [("first", u), ("second", v), ("third", w)] {
            if arg.len() != self.dim {
                return Err(Error::dim(format!(
                    "{name} bracket argument has length {}, algebra dimension is {}",
                    arg.len(),
                    self.dim
                )));
            }
        }
        let su: Vec<usize> = support(u);
        let sv: Vec<usize> = support(v);
        let sw: Vec<usize> = support(w);
        let mut out = zero_vec(self.dim);
        for &i in &su {
            for &j in &sv {
                if j == i {
                    continue;
                }
                for &k in &sw {
                    if k == i || k == j {
                        continue;
                    }
                    if let Some((sign, val)) = self.bb(i, j, k) {
                        let mut c = &u[i] * &v[j];
                        c = &c * &w[k];
                        if sign == -1 {
                            c = -c;
                        }
                        vec_add_scaled(&mut out, &c, val);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exhaustive fundamental-identity sweep over canonical basis tuples
    /// `x < y < z`, `u < v`.
    pub fn check_fundamental_identity(&self) -> CheckReport {
        let triples = increasing_triples(self.dim);
        let pairs = increasing_pairs(self.dim);
        let mut keys = Vec::with_capacity(triples.len() * pairs.len());
        for t in &triples {
            for p in &pairs {
                keys.push([t[0], t[1], t[2], p[0], p[1]]);
            }
        }
        // Accumulate sign * [w, e_u, e_v] lazily: most tuples of a sparse
        // table never touch a nonzero structure constant, so the zero
        // vector is represented by `None` and nothing is allocated.
        let term = |acc: &mut Option<Vec<Scalar>>, sign: i8, i: usize, j: usize, k: usize, u: usize, v: usize| {
            let Some((s0, w)) = self.bb(i, j, k) else {
                return;
            };
            for (l, c) in w.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if let Some((s1, val)) = self.bb(l, u, v) {
                    let out = acc.get_or_insert_with(|| zero_vec(self.dim));
                    let coeff = if sign * s0 * s1 == 1 { c.clone() } else { -c };
                    vec_add_scaled(out, &coeff, val);
                }
            }
        };
        let materialize = |o: Option<Vec<Scalar>>| o.unwrap_or_else(|| zero_vec(self.dim));
        let witnesses = collect_violations(&keys, |&[x, y, z, u, v]| {
            let mut lhs = None;
            term(&mut lhs, 1, x, y, z, u, v);
            // [[x,u,v],y,z] + [x,[y,u,v],z] + [x,y,[z,u,v]]
            // with the middle vector slot rotated to the front:
            // [x, w, z] = -[w, x, z] and [x, y, w] = [w, x, y]
            let mut rhs = None;
            term(&mut rhs, 1, x, u, v, y, z);
            term(&mut rhs, -1, y, u, v, x, z);
            term(&mut rhs, 1, z, u, v, x, y);
            let equal = match (&lhs, &rhs) {
                (None, None) => true,
                (Some(a), None) | (None, Some(a)) => vec_is_zero(a),
                (Some(a), Some(b)) => a == b,
            };
            if equal {
                None
            } else {
                Some(Witness::new(
                    "fundamental_identity",
                    vec![x, y, z, u, v],
                    materialize(lhs),
                    materialize(rhs),
                ))
            }
        });
        CheckReport::new("fundamental_identity", keys.len() as u64, witnesses)
    }

    /// Leibniz-rule check for a square map over all canonical triples.
    pub fn is_derivation(&self, d: &LinearMap) -> Result<CheckReport> {
        if d.source_dim() != self.dim || d.target_dim() != self.dim {
            return Err(Error::dim(format!(
                "derivation candidate is {}x{}, algebra dimension is {}",
                d.target_dim(),
                d.source_dim(),
                self.dim
            )));
        }
        let keys = increasing_triples(self.dim);
        let witnesses = collect_violations(&keys, |&[i, j, k]| {
            let lhs = d.apply(&self.bracket_basis(i, j, k));
            let rhs = self.derivation_rhs(d, i, j, k);
            if lhs == rhs {
                None
            } else {
                Some(Witness::new("derivation", vec![i, j, k], lhs, rhs))
            }
        });
        Ok(CheckReport::new("derivation", keys.len() as u64, witnesses))
    }

    fn derivation_rhs(&self, d: &LinearMap, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        // [d e_i, e_j, e_k] + [e_i, d e_j, e_k] + [e_i, e_j, d e_k]
        let t1 = self.bracket_vec_basis2(&d.matrix().column(i), j, k);
        let t2 = vec_neg(&self.bracket_vec_basis2(&d.matrix().column(j), i, k));
        let t3 = self.bracket_vec_basis2(&d.matrix().column(k), i, j);
        vec_add(&vec_add(&t1, &t2), &t3)
    }

    /// The map `w -> [x, y, w]`.
    pub fn inner_derivation(&self, x: &[Scalar], y: &[Scalar]) -> Result<LinearMap> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::dim("inner derivation arguments"));
        }
        let mut m = Matrix::zeros(self.dim, self.dim);
        for w in 0..self.dim {
            let col = self.bracket(x, y, &unit_vec(self.dim, w))?;
            for r in 0..self.dim {
                m[(r, w)] = col[r].clone();
            }
        }
        Ok(LinearMap::new(m))
    }

    /// Homogeneous constraint system whose nullspace is the derivation
    /// algebra, in the `n^2` unknowns `d_ab` flattened row-major.
    fn derivation_constraints(&self) -> Matrix {
        let n = self.dim;
        let triples = increasing_triples(n);
        let residual = |flat: &[Scalar]| -> Vec<Scalar> {
            let d = LinearMap::new(
                Matrix::from_entries(n, n, flat.to_vec()).expect("square unknowns"),
            );
            let mut out = Vec::with_capacity(triples.len() * n);
            for &[i, j, k] in &triples {
                let lhs = d.apply(&self.bracket_basis(i, j, k));
                let rhs = self.derivation_rhs(&d, i, j, k);
                out.extend(vec_sub(&lhs, &rhs));
            }
            out
        };
        linear_map_matrix(n * n, residual)
    }

    /// Canonical basis of the derivation algebra.
    ///
    /// Every returned map passes `is_derivation`, and the commutator of any
    /// two lies in the returned span (the derivations form a Lie algebra).
    pub fn derivation_algebra(&self) -> Vec<LinearMap> {
        let n = self.dim;
        let ns = self.derivation_constraints().nullspace();
        (0..ns.dim())
            .map(|r| {
                let flat = ns.basis_row(r);
                LinearMap::new(Matrix::from_entries(n, n, flat).expect("square reshape"))
            })
            .collect()
    }

    /// Homogeneous constraint system whose nullspace is the center.
    pub(crate) fn center_constraints(&self) -> Matrix {
        let n = self.dim;
        let pairs = increasing_pairs(n);
        let residual = |z: &[Scalar]| -> Vec<Scalar> {
            let mut out = Vec::with_capacity(pairs.len() * n);
            for &[j, k] in &pairs {
                out.extend(self.bracket_vec_basis2(z, j, k));
            }
            out
        };
        linear_map_matrix(n, residual)
    }

    /// `{ z : [z, A, A] = 0 }` as a canonical subspace.
    pub fn center(&self) -> Subspace {
        if self.dim == 0 {
            return Subspace::zero(0);
        }
        self.center_constraints().nullspace()
    }

    /// `[S, S, S] ⊆ S`.
    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.check_span_closure(s, SpanKind::Subalgebra)
    }

    /// `[S, A, A] ⊆ S`.
    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        self.check_span_closure(s, SpanKind::Ideal)
    }

    /// Ideal with `[S, S, A] = 0` and `[S, S, S] = 0`.
    pub fn is_abelian_ideal(&self, s: &Subspace) -> Result<bool> {
        if !self.is_ideal(s)? {
            return Ok(false);
        }
        for a in 0..s.dim() {
            for b in a + 1..s.dim() {
                let u = s.basis_row(a);
                let v = s.basis_row(b);
                for j in 0..self.dim {
                    let w = self.bracket(&u, &v, &unit_vec(self.dim, j))?;
                    if !vec_is_zero(&w) {
                        return Ok(false);
                    }
                }
                // [S,S,S] ⊆ [S,S,A] so the loop above already covers it,
                // but the triple products are cheap enough to confirm.
                for c in b + 1..s.dim() {
                    let w = self.bracket(&u, &v, &s.basis_row(c))?;
                    if !vec_is_zero(&w) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn check_span_closure(&self, s: &Subspace, kind: SpanKind) -> Result<bool> {
        if s.ambient_dim() != self.dim {
            return Err(Error::dim(format!(
                "subspace lives in dimension {}, algebra in {}",
                s.ambient_dim(),
                self.dim
            )));
        }
        match kind {
            SpanKind::Subalgebra => {
                for a in 0..s.dim() {
                    for b in a + 1..s.dim() {
                        for c in b + 1..s.dim() {
                            let w =
                                self.bracket(&s.basis_row(a), &s.basis_row(b), &s.basis_row(c))?;
                            if !s.contains(&w) {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
            SpanKind::Ideal => {
                for a in 0..s.dim() {
                    let u = s.basis_row(a);
                    for [j, k] in increasing_pairs(self.dim) {
                        let w = self.bracket_vec_basis2(&u, j, k);
                        if !s.contains(&w) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

enum SpanKind {
    Subalgebra,
    Ideal,
}

fn support(v: &[Scalar]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, _)| i)
        .collect()
}

pub(crate) fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

/// Assemble the matrix of a linear map given by a residual evaluator on the
/// flattened unknown vector. Column `u` is `residual(e_u) - residual(0)`;
/// for affine residuals the constant part is `residual(0)`.
pub(crate) fn linear_map_matrix<F>(unknowns: usize, residual: F) -> Matrix
where
    F: Fn(&[Scalar]) -> Vec<Scalar>,
{
    let base = residual(&zero_vec(unknowns));
    let rows = base.len();
    debug_assert!(vec_is_zero(&base), "residual must be linear here");
    let mut m = Matrix::zeros(rows, unknowns);
    for u in 0..unknowns {
        let col = residual(&unit_vec(unknowns, u));
        for r in 0..rows {
            m[(r, u)] = col[r].clone();
        }
    }
    m
}

/// Assemble `(A, b)` with `A x = b` equivalent to `residual(x) = 0` for an
/// affine residual evaluator.
pub(crate) fn affine_system<F>(unknowns: usize, residual: F) -> (Matrix, Vec<Scalar>)
where
    F: Fn(&[Scalar]) -> Vec<Scalar>,
{
    let constant = residual(&zero_vec(unknowns));
    let rows = constant.len();
    let mut m = Matrix::zeros(rows, unknowns);
    for u in 0..unknowns {
        let col = residual(&unit_vec(unknowns, u));
        for r in 0..rows {
            m[(r, u)] = &col[r] - &constant[r];
        }
    }
    (m, vec_neg(&constant))
}

/// Linear map between coordinate spaces; the matrix is target x source and
/// column `i` is the image of the `i`-th source basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        LinearMap { matrix }
    }

    pub fn zero(target_dim: usize, source_dim: usize) -> Self {
        LinearMap::new(Matrix::zeros(target_dim, source_dim))
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap::new(Matrix::identity(dim))
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.mul(&other.matrix))
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.sub(&other.matrix))
    }

    pub fn commutator(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.commutator(&other.matrix))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn image(&self) -> Subspace {
        self.matrix.column_space()
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.nullspace()
    }
}

/// `f[x, y, z]_A = [f x, f y, f z]_B` over all canonical basis triples of A.
pub fn is_homomorphism(
    f: &LinearMap,
    a: &ThreeLieAlgebra,
    b: &ThreeLieAlgebra,
) -> Result<CheckReport> {
    if f.source_dim() != a.dim() || f.target_dim() != b.dim() {
        return Err(Error::dim(format!(
            "map is {}x{}, expected {}x{}",
            f.target_dim(),
            f.source_dim(),
            b.dim(),
            a.dim()
        )));
    }
    let keys = increasing_triples(a.dim());
    let witnesses = collect_violations(&keys, |&[i, j, k]| {
        let lhs = f.apply(&a.bracket_basis(i, j, k));
        let rhs = b
            .bracket(
                &f.matrix().column(i),
                &f.matrix().column(j),
                &f.matrix().column(k),
            )
            .expect("dimensions checked");
        if lhs == rhs {
            None
        } else {
            Some(Witness::new("homomorphism", vec![i, j, k], lhs, rhs))
        }
    });
    Ok(CheckReport::new("homomorphism", keys.len() as u64, witnesses))
}

/// Seeded random spot-checks of multilinearity and antisymmetry of the
/// bracket, used by the CLI's randomized validation mode. The seed fully
/// determines the probes.
pub fn random_bracket_probes(a: &ThreeLieAlgebra, seed: u64, trials: u64) -> CheckReport {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = a.dim();
    let mut witnesses = Vec::new();
    let rand_vec = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Scalar> {
        (0..n).map(|_| Scalar::from_int(rng.gen_range(-2..=2))).collect()
    };
    for trial in 0..trials {
        let u = rand_vec(&mut rng);
        let v = rand_vec(&mut rng);
        let w = rand_vec(&mut rng);
        let c = Scalar::from_int(rng.gen_range(-2..=2));
        // antisymmetry in the first two slots
        let uvw = a.bracket(&u, &v, &w).expect("sized");
        let vuw = a.bracket(&v, &u, &w).expect("sized");
        if uvw != vec_neg(&vuw) {
            witnesses.push(Witness::new(
                "bracket_antisymmetry",
                vec![trial as usize],
                uvw.clone(),
                vec_neg(&vuw),
            ));
        }
        // linearity in the last slot: [u, v, w + c*u] = [u,v,w] + c[u,v,u]
        let mut shifted = w.clone();
        vec_add_scaled(&mut shifted, &c, &u);
        let lhs = a.bracket(&u, &v, &shifted).expect("sized");
        let mut rhs = uvw;
        let extra = a.bracket(&u, &v, &u).expect("sized");
        vec_add_scaled(&mut rhs, &c, &extra);
        if lhs != rhs {
            witnesses.push(Witness::new(
                "bracket_multilinearity",
                vec![trial as usize],
                lhs,
                rhs,
            ));
        }
    }
    CheckReport::new("bracket_random_probes", 2 * trials, witnesses)
}
