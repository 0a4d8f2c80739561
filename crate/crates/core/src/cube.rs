//! The exterior direct sum algebra on three copies of a 3-Lie algebra.
//!
//! The carrier of `cube(A)` is `A ⊕ A ⊕ A` with basis blocks X, Y, Z in
//! that order and the bracket
//!
//! ```text
//! [(x1,y1,z1), (x2,y2,z2), (x3,y3,z3)]
//!   = ([x1,y2,y3] + [x2,y3,y1] + [x3,y1,y2], [y1,y2,y3], [z1,z2,z3])
//! ```
//!
//! On block basis vectors only three patterns survive: `[X,Y,Y] -> X`,
//! `[Y,Y,Y] -> Y` and `[Z,Z,Z] -> Z`. The X block is an abelian ideal and
//! the Y block, Z block, X+Y and Y+Z are subalgebras. A square map `d` is a
//! derivation of `A` exactly when `x -> (d x, x, x)` is a homomorphism into
//! the cube, which turns derivation questions into homomorphism questions.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::exactlin::{unit_vec, vec_is_zero, zero_vec, Matrix, Scalar, Subspace};
use crate::extension::ExtensionSpec;
use crate::report::{CheckReport, Witness};
use crate::sweep::increasing_triples;
use crate::trilie::{is_homomorphism, LinearMap, ThreeLieAlgebra};
use crate::Result;

/// A 3-Lie algebra together with its exterior direct sum carrier.
#[derive(Clone, Debug)]
pub struct CubeAlgebra {
    base: ThreeLieAlgebra,
    carrier: ThreeLieAlgebra,
}

impl CubeAlgebra {
    pub fn base(&self) -> &ThreeLieAlgebra {
        &self.base
    }

    pub fn carrier(&self) -> &ThreeLieAlgebra {
        &self.carrier
    }

    fn block(&self, which: usize) -> Subspace {
        let n = self.base.dim();
        let dim = 3 * n;
        Subspace::from_rows(
            dim,
            (which * n..(which + 1) * n)
                .map(|i| unit_vec(dim, i))
                .collect(),
        )
    }

    pub fn x_block(&self) -> Subspace {
        self.block(0)
    }

    pub fn y_block(&self) -> Subspace {
        self.block(1)
    }

    pub fn z_block(&self) -> Subspace {
        self.block(2)
    }

    fn block_pair(&self, a: usize, b: usize) -> Subspace {
        let n = self.base.dim();
        let dim = 3 * n;
        let mut rows: Vec<Vec<Scalar>> = (a * n..(a + 1) * n).map(|i| unit_vec(dim, i)).collect();
        rows.extend((b * n..(b + 1) * n).map(|i| unit_vec(dim, i)));
        Subspace::from_rows(dim, rows)
    }
}

/// Build the exterior direct sum algebra. Rejects a base algebra that does
/// not satisfy the fundamental identity.
pub fn cube(a: &ThreeLieAlgebra) -> Result<CubeAlgebra> {
    let fi = a.check_fundamental_identity();
    if !fi.passed {
        return Err(Error::precondition(
            "cube construction requires a valid 3-Lie algebra",
        ));
    }
    let n = a.dim();
    let dim = 3 * n;
    let embed = |block: usize, w: &[Scalar]| -> Vec<Scalar> {
        let mut v = zero_vec(dim);
        v[block * n..(block + 1) * n].clone_from_slice(w);
        v
    };
    let mut sc = BTreeMap::new();
    for [i, j, k] in increasing_triples(dim) {
        let (bi, bj, bk) = (i / n, j / n, k / n);
        let (ii, jj, kk) = (i % n, j % n, k % n);
        let value = match (bi, bj, bk) {
            // [X_i, Y_j, Y_k] = X-embed of [e_i, e_j, e_k]
            (0, 1, 1) => embed(0, &a.bracket_basis(ii, jj, kk)),
            (1, 1, 1) => embed(1, &a.bracket_basis(ii, jj, kk)),
            (2, 2, 2) => embed(2, &a.bracket_basis(ii, jj, kk)),
            _ => continue,
        };
        if !vec_is_zero(&value) {
            sc.insert([i, j, k], value);
        }
    }
    let mut labels = Vec::with_capacity(dim);
    for prefix in ["x", "y", "z"] {
        labels.extend(a.basis_labels().iter().map(|l| format!("{prefix}:{l}")));
    }
    let carrier = ThreeLieAlgebra::new(dim, labels, sc)?;
    Ok(CubeAlgebra {
        base: a.clone(),
        carrier,
    })
}

/// Structural checks on the cube blocks: the X block is an abelian ideal;
/// the Y block, Z block, X+Y and Y+Z are subalgebras.
pub fn check_block_structure(c: &CubeAlgebra) -> Result<CheckReport> {
    let carrier = c.carrier();
    let mut witnesses = Vec::new();
    let mut push = |name: &str, ok: bool| {
        if !ok {
            witnesses.push(Witness::new(name, vec![], vec![], vec![]));
        }
    };
    push(
        "x_block_abelian_ideal",
        carrier.is_abelian_ideal(&c.x_block())?,
    );
    push("y_block_subalgebra", carrier.is_subalgebra(&c.y_block())?);
    push("z_block_subalgebra", carrier.is_subalgebra(&c.z_block())?);
    push(
        "xy_block_subalgebra",
        carrier.is_subalgebra(&c.block_pair(0, 1))?,
    );
    push(
        "yz_block_subalgebra",
        carrier.is_subalgebra(&c.block_pair(1, 2))?,
    );
    Ok(CheckReport::new("block_structure", 5, witnesses))
}

/// The stacked map `x -> (d x, x, x)` from the base into the carrier.
pub fn diagonal_lift(a: &ThreeLieAlgebra, d: &LinearMap) -> Result<LinearMap> {
    if d.source_dim() != a.dim() || d.target_dim() != a.dim() {
        return Err(Error::dim(format!(
            "lift candidate is {}x{}, algebra dimension is {}",
            d.target_dim(),
            d.source_dim(),
            a.dim()
        )));
    }
    let id = Matrix::identity(a.dim());
    Ok(LinearMap::new(Matrix::vstack(&[d.matrix(), &id, &id])))
}

/// Both verdicts of the derivation/homomorphism equivalence: whether `d`
/// is a derivation of the base and whether its diagonal lift is a
/// homomorphism into the cube. The two booleans always agree.
pub fn check_derivation_lift(c: &CubeAlgebra, d: &LinearMap) -> Result<(bool, bool)> {
    let is_der = c.base().is_derivation(d)?.passed;
    let lift = diagonal_lift(c.base(), d)?;
    let is_hom = is_homomorphism(&lift, c.base(), c.carrier())?.passed;
    Ok((is_der, is_hom))
}

/// Block-diagonal extension of a map to the three-fold sum:
/// `(u, v, w) -> (f u, f v, f w)`.
pub fn triple_map(f: &LinearMap) -> LinearMap {
    let (t, s) = (f.target_dim(), f.source_dim());
    let mut m = Matrix::zeros(3 * t, 3 * s);
    for block in 0..3 {
        for r in 0..t {
            for cc in 0..s {
                m[(block * t + r, block * s + cc)] = f.matrix()[(r, cc)].clone();
            }
        }
    }
    LinearMap::new(m)
}

/// Exactness of `0 -> cube(H) -> cube(A) -> cube(M) -> 0` for a valid
/// extension, with the componentwise inclusion and projection.
pub fn check_cube_sequence(spec: &ExtensionSpec) -> Result<CheckReport> {
    let a = spec.assemble();
    if !a.check_fundamental_identity().passed {
        return Err(Error::precondition(
            "cube-sequence check applies only to valid extensions",
        ));
    }
    let cube_h = cube(spec.h())?;
    let cube_a = cube(&a)?;
    let cube_m = cube(spec.m())?;
    let i3 = triple_map(&spec.inclusion());
    let p3 = triple_map(&spec.projection());

    let mut parts = Vec::new();
    parts.push(
        is_homomorphism(&i3, cube_h.carrier(), cube_a.carrier())?
            .renamed("cube_inclusion_homomorphism"),
    );
    parts.push(
        is_homomorphism(&p3, cube_a.carrier(), cube_m.carrier())?
            .renamed("cube_projection_homomorphism"),
    );
    let mut extra = Vec::new();
    if i3.matrix().rank() != 3 * spec.h_dim() {
        extra.push(Witness::new("cube_inclusion_injective", vec![], vec![], vec![]));
    }
    if p3.matrix().rank() != 3 * spec.m_dim() {
        extra.push(Witness::new("cube_projection_surjective", vec![], vec![], vec![]));
    }
    if i3.image() != p3.kernel() {
        extra.push(Witness::new("cube_image_equals_kernel", vec![], vec![], vec![]));
    }
    parts.push(CheckReport::new("cube_exactness", 3, extra));
    Ok(CheckReport::merge("cube_sequence", parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{abelian, simple4};
    use crate::extension::heisenberg_spec;
    use rand::{Rng, SeedableRng};

    #[test]
    fn cube_of_abelian_is_abelian() {
        let c = cube(&abelian(3)).unwrap();
        assert_eq!(c.carrier().dim(), 9);
        assert!(c.carrier().is_abelian());
    }

    #[test]
    fn cube_simple4_passes_identity_sweep() {
        let c = cube(&simple4()).unwrap();
        assert_eq!(c.carrier().dim(), 12);
        let report = c.carrier().check_fundamental_identity();
        assert!(report.passed);
        assert_eq!(report.checked, 14_520);
    }

    #[test]
    fn cube_block_bracket_values() {
        let a = simple4();
        let c = cube(&a).unwrap();
        // [X_0, Y_1, Y_2] lands in the X block as [e1, e2, e3] = e4
        let got = c.carrier().bracket_basis(0, 4 + 1, 4 + 2);
        assert_eq!(got, unit_vec(12, 3));
        // X block brackets to zero against everything else
        for j in 0..12usize {
            assert!(vec_is_zero(&c.carrier().bracket_basis(0, 1, j)));
        }
        // Z block carries the base bracket
        let got = c.carrier().bracket_basis(8, 9, 10);
        assert_eq!(got, unit_vec(12, 8 + 3));
    }

    #[test]
    fn cube_rejects_invalid_base() {
        let mut sc = simple4().structure_constants().clone();
        sc.insert([0, 1, 2], unit_vec(4, 0));
        let broken = ThreeLieAlgebra::with_default_labels(4, sc).unwrap();
        assert!(!broken.check_fundamental_identity().passed);
        assert!(cube(&broken).is_err());
    }

    #[test]
    fn block_structure_on_fixtures() {
        for a in [simple4(), abelian(2), heisenberg_spec().assemble()] {
            let c = cube(&a).unwrap();
            let report = check_block_structure(&c).unwrap();
            assert!(report.passed, "{:?}", report.witnesses);
        }
    }

    #[test]
    fn z_block_is_ideal_but_not_abelian_for_simple4() {
        // the Z block closes on the base bracket, so it is an ideal and a
        // subalgebra; for a nonabelian base it is not an abelian ideal
        let c = cube(&simple4()).unwrap();
        assert!(c.carrier().is_ideal(&c.z_block()).unwrap());
        assert!(!c.carrier().is_abelian_ideal(&c.z_block()).unwrap());
        // while the X block is an ideal with zero products
        assert!(c.carrier().is_abelian_ideal(&c.x_block()).unwrap());
    }

    #[test]
    fn x_block_is_subalgebra_but_not_y_coupled_ideal() {
        let c = cube(&simple4()).unwrap();
        assert!(c.carrier().is_subalgebra(&c.x_block()).unwrap());
        // the Y block is a subalgebra but not an ideal: [Y, Y, X] hits X
        assert!(c.carrier().is_subalgebra(&c.y_block()).unwrap());
        assert!(!c.carrier().is_ideal(&c.y_block()).unwrap());
    }

    #[test]
    fn diagonal_lift_shapes() {
        let a = simple4();
        let d = LinearMap::zero(4, 4);
        let f = diagonal_lift(&a, &d).unwrap();
        assert_eq!(f.target_dim(), 12);
        assert_eq!(f.source_dim(), 4);
        assert_eq!(f.apply(&unit_vec(4, 1)), {
            let mut v = zero_vec(12);
            v[4 + 1] = Scalar::one();
            v[8 + 1] = Scalar::one();
            v
        });
    }

    #[test]
    fn derivation_lift_equivalence_examples() {
        let a = simple4();
        let c = cube(&a).unwrap();
        assert_eq!(check_derivation_lift(&c, &LinearMap::zero(4, 4)).unwrap(), (true, true));
        assert_eq!(
            check_derivation_lift(&c, &LinearMap::identity(4)).unwrap(),
            (false, false)
        );
        let ad = a
            .inner_derivation(&unit_vec(4, 0), &unit_vec(4, 1))
            .unwrap();
        assert_eq!(check_derivation_lift(&c, &ad).unwrap(), (true, true));
    }

    #[test]
    fn derivation_lift_equivalence_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for a in [simple4(), abelian(3), heisenberg_spec().assemble()] {
            let c = cube(&a).unwrap();
            let n = a.dim();
            for _ in 0..25 {
                let entries: Vec<Scalar> = (0..n * n)
                    .map(|_| Scalar::from_int(rng.gen_range(-1..=1)))
                    .collect();
                let d = LinearMap::new(Matrix::from_entries(n, n, entries).unwrap());
                let (is_der, is_hom) = check_derivation_lift(&c, &d).unwrap();
                assert_eq!(is_der, is_hom);
            }
        }
    }

    #[test]
    fn y_and_z_projections_are_homomorphisms() {
        // the second and third bracket components are plain base brackets,
        // so projecting those blocks back to the base preserves products
        for a in [simple4(), heisenberg_spec().assemble()] {
            let c = cube(&a).unwrap();
            let n = a.dim();
            for block in [1usize, 2] {
                let mut m = Matrix::zeros(n, 3 * n);
                for i in 0..n {
                    m[(i, block * n + i)] = Scalar::one();
                }
                let p = LinearMap::new(m);
                assert!(is_homomorphism(&p, c.carrier(), &a).unwrap().passed);
            }
            // the X projection is not one for a nonabelian base
            if !a.is_abelian() {
                let mut m = Matrix::zeros(n, 3 * n);
                for i in 0..n {
                    m[(i, i)] = Scalar::one();
                }
                let p = LinearMap::new(m);
                assert!(!is_homomorphism(&p, c.carrier(), &a).unwrap().passed);
            }
        }
    }

    #[test]
    fn cube_sequence_with_mixed_action() {
        let mut beta_table = BTreeMap::new();
        beta_table.insert([0, 0], Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]));
        beta_table.insert([0, 1], Matrix::from_i64_rows(&[&[-1, 0], &[0, 0]]));
        let spec = crate::extension::ExtensionSpec::new(
            abelian(1),
            abelian(2),
            crate::extension::TriMapToH::zero(1, 2),
            crate::representation::PairAction::zero(1, 2),
            crate::extension::MixedAction::new(1, 2, beta_table).unwrap(),
        )
        .unwrap();
        let report = check_cube_sequence(&spec).unwrap();
        assert!(report.passed, "{:?}", report.witnesses.first());
    }

    #[test]
    fn cube_sequence_on_fixtures() {
        for spec in [
            crate::extension::ExtensionSpec::direct_sum(simple4(), abelian(1)),
            heisenberg_spec(),
        ] {
            let report = check_cube_sequence(&spec).unwrap();
            assert!(report.passed, "{:?}", report.witnesses.first());
        }
    }
}
