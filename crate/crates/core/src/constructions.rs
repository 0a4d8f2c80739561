//! Fixture builders: families of 3-Lie algebras obtained from Lie algebras,
//! trace forms and metric forms. Every constructor output passes the
//! fundamental-identity sweep, which makes these the verified corpus for the
//! property tests of the other modules.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::exactlin::{vec_add_scaled, vec_is_zero, vec_neg, zero_vec, Matrix, Scalar};
use crate::sweep::{increasing_pairs, increasing_triples};
use crate::trilie::{default_labels, ThreeLieAlgebra};
use crate::Result;

/// Finite-dimensional (binary) Lie algebra given by structure constants on
/// strictly increasing pairs. The Jacobi identity is checked eagerly so that
/// ternary structures are never built on invalid input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    sc2: BTreeMap<[usize; 2], Vec<Scalar>>,
}

impl LieAlgebra {
    pub fn new(dim: usize, sc2: BTreeMap<[usize; 2], Vec<Scalar>>) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (p, v) in sc2 {
            if p[0] >= p[1] || p[1] >= dim {
                return Err(Error::invalid(format!(
                    "pair {p:?} is not strictly increasing within dimension {dim}"
                )));
            }
            if v.len() != dim {
                return Err(Error::dim(format!(
                    "coefficient vector for {p:?} has length {}, expected {dim}",
                    v.len()
                )));
            }
            if !vec_is_zero(&v) {
                kept.insert(p, v);
            }
        }
        let alg = LieAlgebra { dim, sc2: kept };
        for [i, j, k] in increasing_triples(dim) {
            let mut acc = alg.bracket_vec_basis(&alg.bracket_basis(i, j), k);
            let t2 = alg.bracket_vec_basis(&alg.bracket_basis(j, k), i);
            let t3 = alg.bracket_vec_basis(&alg.bracket_basis(k, i), j);
            vec_add_scaled(&mut acc, &Scalar::one(), &t2);
            vec_add_scaled(&mut acc, &Scalar::one(), &t3);
            if !vec_is_zero(&acc) {
                return Err(Error::invalid(format!(
                    "Jacobi identity fails on basis triple ({i}, {j}, {k})"
                )));
            }
        }
        Ok(alg)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            sc2: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[e_i, e_j]` for arbitrary index order.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        if i == j {
            return zero_vec(self.dim);
        }
        let (key, neg) = if i < j { ([i, j], false) } else { ([j, i], true) };
        match self.sc2.get(&key) {
            None => zero_vec(self.dim),
            Some(v) if neg => vec_neg(v),
            Some(v) => v.clone(),
        }
    }

    /// `[w, e_k]` for a coordinate vector `w`.
    fn bracket_vec_basis(&self, w: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim);
        for (l, c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            vec_add_scaled(&mut out, c, &self.bracket_basis(l, k));
        }
        out
    }
}

/// Nondegenerate symmetric bilinear form, stored by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricForm {
    dim: usize,
    gram: Matrix,
}

impl MetricForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if gram.rows() != gram.cols() {
            return Err(Error::dim("gram matrix must be square"));
        }
        if gram != gram.transpose() {
            return Err(Error::invalid("gram matrix must be symmetric"));
        }
        if gram.rank() != gram.rows() {
            return Err(Error::invalid("gram matrix must be nondegenerate"));
        }
        Ok(MetricForm {
            dim: gram.rows(),
            gram,
        })
    }

    pub fn identity(dim: usize) -> Self {
        MetricForm {
            dim,
            gram: Matrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pairing(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let gv = self.gram.mul_vec(v);
        let mut acc = Scalar::zero();
        for (a, b) in u.iter().zip(&gv) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }

    /// Invariance `B([x, y], z) = -B(y, [x, z])` on all basis triples.
    pub fn is_invariant_for(&self, lie: &LieAlgebra) -> bool {
        if lie.dim() != self.dim {
            return false;
        }
        let unit = |i: usize| crate::exactlin::unit_vec(self.dim, i);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let lhs = self.pairing(&lie.bracket_basis(i, j), &unit(k));
                    let rhs = self.pairing(&unit(j), &lie.bracket_basis(i, k));
                    if !(&lhs + &rhs).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Zero bracket in any dimension.
pub fn abelian(n: usize) -> ThreeLieAlgebra {
    ThreeLieAlgebra::with_default_labels(n, BTreeMap::new()).expect("empty table is valid")
}

/// The four-dimensional algebra `[e_i, e_j, e_k] = eps_{ijkl} e_l` with the
/// orientation `eps_{1234} = +1`:
/// `[e1,e2,e3] = e4`, `[e1,e2,e4] = -e3`, `[e1,e3,e4] = e2`, `[e2,e3,e4] = -e1`.
pub fn simple4() -> ThreeLieAlgebra {
    let unit = |i: usize| crate::exactlin::unit_vec(4, i);
    let mut sc = BTreeMap::new();
    sc.insert([0, 1, 2], unit(3));
    sc.insert([0, 1, 3], vec_neg(&unit(2)));
    sc.insert([0, 2, 3], unit(1));
    sc.insert([1, 2, 3], vec_neg(&unit(0)));
    ThreeLieAlgebra::with_default_labels(4, sc).expect("valid table")
}

/// Ternary bracket `[x, y, z]_f = f(x)[y, z] + f(y)[z, x] + f(z)[x, y]` on
/// the carrier of a Lie algebra, for a functional killing `[L, L]`.
pub fn from_lie_functional(lie: &LieAlgebra, f: &[Scalar]) -> Result<ThreeLieAlgebra> {
    let n = lie.dim();
    if f.len() != n {
        return Err(Error::dim(format!(
            "functional has length {}, Lie algebra dimension is {n}",
            f.len()
        )));
    }
    for [i, j] in increasing_pairs(n) {
        let w = lie.bracket_basis(i, j);
        let mut pairing = Scalar::zero();
        for (c, fv) in w.iter().zip(f) {
            pairing = &pairing + &(c * fv);
        }
        if !pairing.is_zero() {
            return Err(Error::precondition(format!(
                "functional does not vanish on [e_{i}, e_{j}]"
            )));
        }
    }
    let mut sc = BTreeMap::new();
    for [i, j, k] in increasing_triples(n) {
        let mut v = zero_vec(n);
        vec_add_scaled(&mut v, &f[i], &lie.bracket_basis(j, k));
        vec_add_scaled(&mut v, &f[j], &lie.bracket_basis(k, i));
        vec_add_scaled(&mut v, &f[k], &lie.bracket_basis(i, j));
        sc.insert([i, j, k], v);
    }
    ThreeLieAlgebra::with_default_labels(n, sc)
}

/// Trace-form bracket on the `m x m` matrix space with basis the elementary
/// matrices `E_ab` in row-major order:
/// `[A, B, C] = tr(A)[B, C] + tr(B)[C, A] + tr(C)[A, B]`.
pub fn gl_trace_form(m: usize) -> ThreeLieAlgebra {
    assert!(m >= 1, "matrix size must be positive");
    let n = m * m;
    let elem = |idx: usize| -> Matrix {
        let mut e = Matrix::zeros(m, m);
        e[(idx / m, idx % m)] = Scalar::one();
        e
    };
    let trace_of = |idx: usize| -> Scalar {
        if idx / m == idx % m {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    };
    let mut sc = BTreeMap::new();
    for [p, q, r] in increasing_triples(n) {
        let (ep, eq, er) = (elem(p), elem(q), elem(r));
        let mut acc = Matrix::zeros(m, m);
        let terms = [
            (trace_of(p), eq.commutator(&er)),
            (trace_of(q), er.commutator(&ep)),
            (trace_of(r), ep.commutator(&eq)),
        ];
        for (t, c) in terms {
            if !t.is_zero() {
                acc = acc.add(&c.scale(&t));
            }
        }
        if !acc.is_zero() {
            sc.insert([p, q, r], acc.flatten());
        }
    }
    let labels = (0..n).map(|i| format!("E{}{}", i / m + 1, i % m + 1)).collect();
    ThreeLieAlgebra::new(n, labels, sc).expect("valid table")
}

/// Two-dimensional extension of a metric Lie algebra: on the basis
/// `(x_1..x_m, x0, xm1)` the nonzero products are
/// `[x0, x_i, x_j] = [x_i, x_j]` and
/// `[x_i, x_j, x_k] = sum_s a_ij^s B(x_s, x_k) xm1`,
/// while every product containing `xm1` vanishes.
pub fn metric_lie_extension(lie: &LieAlgebra, form: &MetricForm) -> Result<ThreeLieAlgebra> {
    let m = lie.dim();
    if form.dim() != m {
        return Err(Error::dim(format!(
            "form dimension {} does not match Lie algebra dimension {m}",
            form.dim()
        )));
    }
    if !form.is_invariant_for(lie) {
        return Err(Error::precondition(
            "bilinear form is not invariant for the Lie bracket",
        ));
    }
    let n = m + 2;
    let embed = |w: &[Scalar]| -> Vec<Scalar> {
        let mut v = zero_vec(n);
        v[..m].clone_from_slice(w);
        v
    };
    let unit = |i: usize| crate::exactlin::unit_vec(n, i);
    let mut sc = BTreeMap::new();
    // [x_i, x_j, x0] = [x0, x_i, x_j] = [x_i, x_j]  (cyclic reorder)
    for [i, j] in increasing_pairs(m) {
        let w = lie.bracket_basis(i, j);
        if !vec_is_zero(&w) {
            sc.insert([i, j, m], embed(&w));
        }
    }
    for [i, j, k] in increasing_triples(m) {
        let w = lie.bracket_basis(i, j);
        let coeff = form.pairing(&w, &crate::exactlin::unit_vec(m, k));
        if !coeff.is_zero() {
            let mut v = zero_vec(n);
            vec_add_scaled(&mut v, &coeff, &unit(m + 1));
            sc.insert([i, j, k], v);
        }
    }
    let mut labels = default_labels(m)
        .into_iter()
        .map(|l| l.replace('e', "x"))
        .collect::<Vec<_>>();
    labels.push("x0".to_string());
    labels.push("xm1".to_string());
    ThreeLieAlgebra::new(n, labels, sc)
}

/// `so(3)`: `[x1,x2] = x3`, `[x2,x3] = x1`, `[x3,x1] = x2`.
pub fn so3() -> LieAlgebra {
    let unit = |i: usize| crate::exactlin::unit_vec(3, i);
    let mut sc2 = BTreeMap::new();
    sc2.insert([0, 1], unit(2));
    sc2.insert([1, 2], unit(0));
    sc2.insert([0, 2], vec_neg(&unit(1)));
    LieAlgebra::new(3, sc2).expect("so(3) satisfies Jacobi")
}

/// Dim-3 Lie algebra `[x1, x2] = x3` (Heisenberg).
pub fn heisenberg_lie3() -> LieAlgebra {
    let mut sc2 = BTreeMap::new();
    sc2.insert([0, 1], crate::exactlin::unit_vec(3, 2));
    LieAlgebra::new(3, sc2).expect("nilpotent bracket satisfies Jacobi")
}

/// Dim-4 nilpotent Lie algebra `[x2, x3] = x4`.
pub fn nilpotent_lie4() -> LieAlgebra {
    let mut sc2 = BTreeMap::new();
    sc2.insert([1, 2], crate::exactlin::unit_vec(4, 3));
    LieAlgebra::new(4, sc2).expect("nilpotent bracket satisfies Jacobi")
}

/// Functional fixture on the dim-3 Heisenberg Lie algebra; the bracket
/// collapses to zero because the functional kills every product.
pub fn functional3() -> ThreeLieAlgebra {
    let f = crate::exactlin::unit_vec(3, 0);
    from_lie_functional(&heisenberg_lie3(), &f).expect("functional kills [L, L]")
}

/// Functional fixture on the dim-4 nilpotent Lie algebra; the single nonzero
/// product is `[e1, e2, e3] = e4`.
pub fn functional4() -> ThreeLieAlgebra {
    let f = crate::exactlin::unit_vec(4, 0);
    from_lie_functional(&nilpotent_lie4(), &f).expect("functional kills [L, L]")
}

/// Metric extension of `so(3)` with the identity Gram matrix (dim 5).
pub fn metric_so3() -> ThreeLieAlgebra {
    metric_lie_extension(&so3(), &MetricForm::identity(3)).expect("identity form is invariant")
}

/// The named fixture corpus used by downstream property and acceptance
/// tests: abelian algebras, the simple algebra, both trace-form algebras,
/// the metric extension of `so(3)` and both functional fixtures.
pub fn standard_corpus() -> Vec<(String, ThreeLieAlgebra)> {
    vec![
        ("abelian0".into(), abelian(0)),
        ("abelian1".into(), abelian(1)),
        ("abelian2".into(), abelian(2)),
        ("abelian4".into(), abelian(4)),
        ("simple4".into(), simple4()),
        ("gl_trace2".into(), gl_trace_form(2)),
        ("gl_trace3".into(), gl_trace_form(3)),
        ("metric_so3".into(), metric_so3()),
        ("functional3".into(), functional3()),
        ("functional4".into(), functional4()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::unit_vec;

    #[test]
    fn abelian_properties() {
        assert_eq!(abelian(0).dim(), 0);
        assert!(abelian(3).check_fundamental_identity().passed);
        assert_eq!(abelian(2).derivation_algebra().len(), 4);
    }

    #[test]
    fn simple4_properties() {
        let a = simple4();
        assert!(a.check_fundamental_identity().passed);
        assert_eq!(a.center().dim(), 0);
        assert_eq!(a.bracket_basis(0, 1, 2), unit_vec(4, 3));
    }

    #[test]
    fn lie_algebra_rejects_non_jacobi() {
        // [e1,e2] = e3, [e1,e3] = e1, [e2,e3] = e2 breaks Jacobi:
        // the cyclic sum on (e1,e2,e3) is -2 e3
        let unit = |i: usize| unit_vec(3, i);
        let mut sc2 = BTreeMap::new();
        sc2.insert([0, 1], unit(2));
        sc2.insert([0, 2], unit(0));
        sc2.insert([1, 2], unit(1));
        assert!(LieAlgebra::new(3, sc2).is_err());
    }

    #[test]
    fn functional_preconditions() {
        // [x1, x2] = x2 demands f(x2) = 0
        let mut sc2 = BTreeMap::new();
        sc2.insert([0, 1], unit_vec(2, 1));
        let l = LieAlgebra::new(2, sc2).unwrap();
        assert!(from_lie_functional(&l, &unit_vec(2, 1)).is_err());
        assert!(from_lie_functional(&l, &unit_vec(2, 0)).is_ok());
        // zero functional lands on the abelian algebra
        let z = from_lie_functional(&so3(), &crate::exactlin::zero_vec(3)).unwrap();
        assert!(z.is_abelian());
    }

    #[test]
    fn functional_fixture_tables() {
        assert!(functional3().is_abelian());
        let f4 = functional4();
        assert_eq!(f4.bracket_basis(0, 1, 2), unit_vec(4, 3));
        assert_eq!(f4.structure_constants().len(), 1);
        assert!(f4.check_fundamental_identity().passed);
    }

    #[test]
    fn gl_trace_values() {
        assert!(gl_trace_form(1).is_abelian());
        let g = gl_trace_form(2);
        // basis order E11, E12, E21, E22
        // [E11, E12, E21] = tr(E11) [E12, E21] = E11 - E22
        let mut expected = zero_vec(4);
        expected[0] = Scalar::one();
        expected[3] = Scalar::from_int(-1);
        assert_eq!(g.bracket_basis(0, 1, 2), expected);
        // [E12, E21, E11 + E22] = 2 (E11 - E22)
        let x = unit_vec(4, 1);
        let y = unit_vec(4, 2);
        let mut z = unit_vec(4, 0);
        z[3] = Scalar::one();
        let got = g.bracket(&x, &y, &z).unwrap();
        let doubled: Vec<Scalar> = expected.iter().map(|c| c * &Scalar::from_int(2)).collect();
        assert_eq!(got, doubled);
    }

    #[test]
    fn metric_extension_values() {
        // abelian base: no products at all
        let flat = metric_lie_extension(&LieAlgebra::abelian(3), &MetricForm::identity(3)).unwrap();
        assert!(flat.is_abelian());
        assert_eq!(flat.dim(), 5);

        let a = metric_so3();
        // [x0, x1, x2] = [x1, x2] = x3  (stored as [x1, x2, x0])
        assert_eq!(a.bracket_basis(3, 0, 1), unit_vec(5, 2));
        // [x1, x2, x3] = B(x3, x3) xm1 = xm1
        assert_eq!(a.bracket_basis(0, 1, 2), unit_vec(5, 4));
        // xm1 is central
        assert!(a.center().contains(&unit_vec(5, 4)));
    }

    #[test]
    fn metric_extension_rejects_non_invariant_form() {
        let mut gram = Matrix::identity(3);
        gram[(0, 0)] = Scalar::from_int(2);
        let form = MetricForm::new(gram).unwrap();
        assert!(metric_lie_extension(&so3(), &form).is_err());
    }

    #[test]
    fn corpus_passes_fundamental_identity() {
        for (name, alg) in standard_corpus() {
            let report = alg.check_fundamental_identity();
            assert!(report.passed, "{name} failed: {:?}", report.witnesses.first());
        }
    }
}
