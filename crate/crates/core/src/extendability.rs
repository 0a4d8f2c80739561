//! Lifting derivations of the factors to derivations of an extension.
//!
//! Given a valid extension `A = M ⊕ H` and derivations `sigma` of `M` and
//! `tau` of `H`, the pair lifts to a derivation of `A` compatible with the
//! inclusion and projection exactly when a linear map `gamma: M -> H`
//! satisfies three families of linear equations (one from each mixed
//! bracket clause). This module assembles those systems, solves them
//! exactly, rebuilds the lifted derivation
//! `delta(x + h) = sigma x + gamma x + tau h`, and verifies the commuting
//! squares directly.
//!
//! A second, larger system in three unknown maps `(gamma1, gamma2, gamma3)`
//! characterizes when the diagonal lifts of `sigma` and `tau` extend to a
//! homomorphism from `A` into the exterior direct sum `cube(A)`. Both
//! characterizations decide the same property: `gamma` solves the first
//! system iff `(gamma, 0, 0)` solves the second, and any solution
//! `(g1, g2, g3)` of the second yields `g1 - g2 ∘ sigma` solving the first
//! (the `g2` correction is central, so it drops out of the inner
//! derivation rows).

use crate::cube::{cube, diagonal_lift, triple_map};
use crate::error::Error;
use crate::exactlin::{unit_vec, vec_is_zero, zero_vec, Matrix, Scalar, Subspace};
use crate::extension::ExtensionSpec;
use crate::report::{CheckReport, Witness};
use crate::representation::check_representation;
use crate::sweep::{increasing_pairs, increasing_triples};
use crate::trilie::{affine_system, is_homomorphism, LinearMap, ThreeLieAlgebra};
use crate::Result;

/// A derivation of `M` together with a derivation of `H`.
#[derive(Clone, Debug)]
pub struct DerivationPair {
    sigma: LinearMap,
    tau: LinearMap,
}

impl DerivationPair {
    /// Validates both maps against their algebras.
    pub fn new(
        m: &ThreeLieAlgebra,
        h: &ThreeLieAlgebra,
        sigma: LinearMap,
        tau: LinearMap,
    ) -> Result<Self> {
        if !m.is_derivation(&sigma)?.passed {
            return Err(Error::precondition("sigma is not a derivation of M"));
        }
        if !h.is_derivation(&tau)?.passed {
            return Err(Error::precondition("tau is not a derivation of H"));
        }
        Ok(DerivationPair { sigma, tau })
    }

    pub fn zero(m_dim: usize, h_dim: usize) -> Self {
        DerivationPair {
            sigma: LinearMap::zero(m_dim, m_dim),
            tau: LinearMap::zero(h_dim, h_dim),
        }
    }

    pub fn sigma(&self) -> &LinearMap {
        &self.sigma
    }

    pub fn tau(&self) -> &LinearMap {
        &self.tau
    }
}

/// Outcome of a gamma solve: a particular solution plus the homogeneous
/// solution space of the system, both over the `m*h` flattened unknowns of
/// `gamma` (row-major, target coordinate first).
#[derive(Clone, Debug)]
pub struct GammaSolution {
    pub solvable: bool,
    pub particular: Option<LinearMap>,
    pub homogeneous: Subspace,
}

/// Solution of the three-map system for the cube lift.
#[derive(Clone, Debug)]
pub struct TripleGamma {
    pub gamma1: LinearMap,
    pub gamma2: LinearMap,
    pub gamma3: LinearMap,
}

fn validate_inputs(spec: &ExtensionSpec, pair: &DerivationPair) -> Result<()> {
    if pair.sigma.source_dim() != spec.m_dim() || pair.tau.source_dim() != spec.h_dim() {
        return Err(Error::dim(format!(
            "pair shapes ({}, {}) do not match factors ({}, {})",
            pair.sigma.source_dim(),
            pair.tau.source_dim(),
            spec.m_dim(),
            spec.h_dim()
        )));
    }
    if !spec.m().is_derivation(&pair.sigma)?.passed {
        return Err(Error::precondition("sigma is not a derivation of M"));
    }
    if !spec.h().is_derivation(&pair.tau)?.passed {
        return Err(Error::precondition("tau is not a derivation of H"));
    }
    let fi = spec.assemble().check_fundamental_identity();
    if !fi.passed {
        return Err(Error::precondition(
            "the spec does not assemble to a 3-Lie algebra",
        ));
    }
    Ok(())
}

/// Enumerate every scalar equation of the single-gamma system as
/// `(identity, instantiation indices, residual vector)` in a fixed order:
/// bracket rows first, then pair-action rows, then mixed-action rows,
/// tuples lexicographic.
fn for_each_gamma_equation<F>(spec: &ExtensionSpec, pair: &DerivationPair, gamma: &LinearMap, mut f: F)
where
    F: FnMut(&'static str, Vec<usize>, Vec<Scalar>),
{
    let (m, hd) = (spec.m_dim(), spec.h_dim());
    let (malg, halg) = (spec.m(), spec.h());
    let (mu, rho, beta) = (spec.mu(), spec.rho(), spec.beta());
    let (sigma, tau) = (pair.sigma.matrix(), pair.tau.matrix());
    let um = |i: usize| unit_vec(m, i);
    let uh = |a: usize| unit_vec(hd, a);

    // tau mu(x1,x2,x3) + gamma [x1,x2,x3]_M
    //   = mu(sigma x1, x2, x3) + mu(x1, sigma x2, x3) + mu(x1, x2, sigma x3)
    //   + rho(x1,x2) gamma(x3) + rho(x3,x1) gamma(x2) + rho(x2,x3) gamma(x1)
    for [i, j, k] in increasing_triples(m) {
        let mut res = tau.mul_vec(&mu.at(i, j, k));
        add(&mut res, &gamma.apply(&malg.bracket_basis(i, j, k)));
        sub(&mut res, &mu.eval(&sigma.column(i), &um(j), &um(k)));
        sub(&mut res, &mu.eval(&um(i), &sigma.column(j), &um(k)));
        sub(&mut res, &mu.eval(&um(i), &um(j), &sigma.column(k)));
        sub(&mut res, &rho.at(i, j).mul_vec(&gamma.matrix().column(k)));
        sub(&mut res, &rho.at(k, i).mul_vec(&gamma.matrix().column(j)));
        sub(&mut res, &rho.at(j, k).mul_vec(&gamma.matrix().column(i)));
        f("bracket_row", vec![i, j, k], res);
    }

    // [tau, rho(x1,x2)] = rho(sigma x1, x2) + rho(x1, sigma x2)
    //   - beta(x2, gamma(x1)) + beta(x1, gamma(x2))
    for [i, j] in increasing_pairs(m) {
        let rij = rho.at(i, j);
        let comm = tau.mul(&rij).sub(&rij.mul(tau));
        let rho_si_j = rho.eval(&sigma.column(i), &um(j));
        let rho_i_sj = rho.eval(&um(i), &sigma.column(j));
        let b_j_gi = beta.eval(&um(j), &gamma.matrix().column(i));
        let b_i_gj = beta.eval(&um(i), &gamma.matrix().column(j));
        for b in 0..hd {
            let mut res = comm.column(b);
            sub(&mut res, &rho_si_j.column(b));
            sub(&mut res, &rho_i_sj.column(b));
            add(&mut res, &b_j_gi.column(b));
            sub(&mut res, &b_i_gj.column(b));
            f("pair_action_row", vec![i, j, b], res);
        }
    }

    // [tau, beta(x, h)] = beta(sigma x, h) + beta(x, tau h) + ad(gamma(x), h)
    for i in 0..m {
        let gi = gamma.matrix().column(i);
        for a in 0..hd {
            let bia = beta.at(i, a);
            let comm = tau.mul(&bia).sub(&bia.mul(tau));
            let b_si_a = beta.eval(&sigma.column(i), &uh(a));
            let b_i_ta = beta.eval(&um(i), &tau.column(a));
            for b in 0..hd {
                let mut res = comm.column(b);
                sub(&mut res, &b_si_a.column(b));
                sub(&mut res, &b_i_ta.column(b));
                sub(
                    &mut res,
                    &halg.bracket(&gi, &uh(a), &uh(b)).expect("H shapes agree"),
                );
                f("mixed_action_row", vec![i, a, b], res);
            }
        }
    }
}

fn add(acc: &mut [Scalar], v: &[Scalar]) {
    for (t, s) in acc.iter_mut().zip(v) {
        *t = &*t + s;
    }
}

fn sub(acc: &mut [Scalar], v: &[Scalar]) {
    for (t, s) in acc.iter_mut().zip(v) {
        *t = &*t - s;
    }
}

fn gamma_from_flat(spec: &ExtensionSpec, flat: &[Scalar]) -> LinearMap {
    LinearMap::new(
        Matrix::from_entries(spec.h_dim(), spec.m_dim(), flat.to_vec())
            .expect("flattened gamma has h*m entries"),
    )
}

/// The affine system `(A, b)` over the `m*h` unknowns of `gamma` whose
/// solutions are exactly the maps making `delta = sigma + gamma + tau` a
/// derivation of the assembled algebra.
pub fn build_extendability_system(
    spec: &ExtensionSpec,
    pair: &DerivationPair,
) -> Result<(Matrix, Vec<Scalar>)> {
    validate_inputs(spec, pair)?;
    let unknowns = spec.m_dim() * spec.h_dim();
    Ok(affine_system(unknowns, |flat| {
        let gamma = gamma_from_flat(spec, flat);
        let mut out = Vec::new();
        for_each_gamma_equation(spec, pair, &gamma, |_, _, res| out.extend(res));
        out
    }))
}

/// Exhaustive re-verification of a candidate gamma against all three
/// equation families.
pub fn verify_gamma(
    spec: &ExtensionSpec,
    pair: &DerivationPair,
    gamma: &LinearMap,
) -> CheckReport {
    let mut witnesses = Vec::new();
    let mut checked = 0u64;
    for_each_gamma_equation(spec, pair, gamma, |name, idx, res| {
        checked += 1;
        if !vec_is_zero(&res) {
            witnesses.push(Witness::new(name, idx, res.clone(), zero_vec(res.len())));
        }
    });
    CheckReport::new("gamma_equations", checked, witnesses)
}

/// Solve for `gamma`. When solvable, the particular solution is the one
/// with all free variables set to zero, and it is re-verified against every
/// instantiated equation before being returned.
pub fn solve_extendability(spec: &ExtensionSpec, pair: &DerivationPair) -> Result<GammaSolution> {
    let (system, rhs) = build_extendability_system(spec, pair)?;
    match system.solve_affine(&rhs)? {
        None => Ok(GammaSolution {
            solvable: false,
            particular: None,
            homogeneous: system.nullspace(),
        }),
        Some((x, homogeneous)) => {
            let gamma = gamma_from_flat(spec, &x);
            let recheck = verify_gamma(spec, pair, &gamma);
            if !recheck.passed {
                return Err(Error::Internal(
                    "solved gamma fails re-verification".into(),
                ));
            }
            Ok(GammaSolution {
                solvable: true,
                particular: Some(gamma),
                homogeneous,
            })
        }
    }
}

/// The lifted map `delta(x + h) = sigma x + gamma x + tau h` in block form.
pub fn build_delta(pair: &DerivationPair, gamma: &LinearMap) -> Result<LinearMap> {
    let m = pair.sigma.source_dim();
    let h = pair.tau.source_dim();
    if gamma.source_dim() != m || gamma.target_dim() != h {
        return Err(Error::dim(format!(
            "gamma is {}x{}, expected {h}x{m}",
            gamma.target_dim(),
            gamma.source_dim()
        )));
    }
    let top = Matrix::hstack(&[pair.sigma.matrix(), &Matrix::zeros(m, h)]);
    let bottom = Matrix::hstack(&[gamma.matrix(), pair.tau.matrix()]);
    Ok(LinearMap::new(Matrix::vstack(&[&top, &bottom])))
}

/// Check the two commuting squares and the derivation property of a
/// candidate lift: `p ∘ delta = sigma ∘ p`, `delta ∘ i = i ∘ tau`, and
/// `delta` is a derivation of the assembled algebra.
pub fn verify_diagram(
    spec: &ExtensionSpec,
    pair: &DerivationPair,
    delta: &LinearMap,
) -> Result<CheckReport> {
    let n = spec.total_dim();
    if delta.source_dim() != n || delta.target_dim() != n {
        return Err(Error::dim(format!(
            "delta is {}x{}, expected {n}x{n}",
            delta.target_dim(),
            delta.source_dim()
        )));
    }
    let a = spec.assemble();
    let i = spec.inclusion();
    let p = spec.projection();
    let mut witnesses = Vec::new();
    let proj_square = p.compose(delta).matrix().clone();
    let proj_expected = pair.sigma.compose(&p).matrix().clone();
    if proj_square != proj_expected {
        witnesses.push(Witness::new(
            "projection_square",
            vec![],
            proj_square.flatten(),
            proj_expected.flatten(),
        ));
    }
    let incl_square = delta.compose(&i).matrix().clone();
    let incl_expected = i.compose(&pair.tau).matrix().clone();
    if incl_square != incl_expected {
        witnesses.push(Witness::new(
            "inclusion_square",
            vec![],
            incl_square.flatten(),
            incl_expected.flatten(),
        ));
    }
    let square_report = CheckReport::new("commuting_squares", 2, witnesses);
    let derivation = a.is_derivation(delta)?.renamed("delta_derivation");
    Ok(CheckReport::merge(
        "diagram",
        vec![square_report, derivation],
    ))
}

/// Specialized solver for `beta = 0` with `(H, rho)` an `M`-module. The
/// pair-action equation loses its gamma terms entirely (so it is checked up
/// front and failure means unsolvable), and the mixed-action equation
/// degenerates to `gamma` taking values in the center of `H`.
pub fn solve_central_gamma(spec: &ExtensionSpec, pair: &DerivationPair) -> Result<GammaSolution> {
    if !spec.beta().is_zero() {
        return Err(Error::precondition(
            "central gamma solver applies only to beta = 0",
        ));
    }
    if !check_representation(spec.m(), spec.rho())?.passed {
        return Err(Error::precondition(
            "central gamma solver requires (H, rho) to be an M-module",
        ));
    }
    validate_inputs(spec, pair)?;
    let (m, hd) = (spec.m_dim(), spec.h_dim());
    let (sigma, tau) = (pair.sigma.matrix(), pair.tau.matrix());
    let rho = spec.rho();
    // gamma-free compatibility of tau with the pair action
    for [i, j] in increasing_pairs(m) {
        let rij = rho.at(i, j);
        let comm = tau.mul(&rij).sub(&rij.mul(tau));
        let expected = rho
            .eval(&sigma.column(i), &unit_vec(m, j))
            .add(&rho.eval(&unit_vec(m, i), &sigma.column(j)));
        if comm != expected {
            return Ok(GammaSolution {
                solvable: false,
                particular: None,
                homogeneous: Subspace::zero(m * hd),
            });
        }
    }
    // bracket rows plus centrality of every gamma column
    let center_rows = spec.h().center_constraints();
    let (system, rhs) = affine_system(m * hd, |flat| {
        let gamma = gamma_from_flat(spec, flat);
        let mut out = Vec::new();
        let (mu, malg) = (spec.mu(), spec.m());
        let um = |i: usize| unit_vec(m, i);
        for [i, j, k] in increasing_triples(m) {
            let mut res = tau.mul_vec(&mu.at(i, j, k));
            add(&mut res, &gamma.apply(&malg.bracket_basis(i, j, k)));
            sub(&mut res, &mu.eval(&sigma.column(i), &um(j), &um(k)));
            sub(&mut res, &mu.eval(&um(i), &sigma.column(j), &um(k)));
            sub(&mut res, &mu.eval(&um(i), &um(j), &sigma.column(k)));
            sub(&mut res, &rho.at(i, j).mul_vec(&gamma.matrix().column(k)));
            sub(&mut res, &rho.at(k, i).mul_vec(&gamma.matrix().column(j)));
            sub(&mut res, &rho.at(j, k).mul_vec(&gamma.matrix().column(i)));
            out.extend(res);
        }
        for i in 0..m {
            out.extend(center_rows.mul_vec(&gamma.matrix().column(i)));
        }
        out
    });
    match system.solve_affine(&rhs)? {
        None => Ok(GammaSolution {
            solvable: false,
            particular: None,
            homogeneous: system.nullspace(),
        }),
        Some((x, homogeneous)) => {
            let gamma = gamma_from_flat(spec, &x);
            let recheck = verify_gamma(spec, pair, &gamma);
            if !recheck.passed {
                return Err(Error::Internal(
                    "central gamma fails full re-verification".into(),
                ));
            }
            Ok(GammaSolution {
                solvable: true,
                particular: Some(gamma),
                homogeneous,
            })
        }
    }
}

/// Enumerate the equations of the three-map system, in a fixed order. The
/// unknown layout is `[gamma1 | gamma2 | gamma3]`, each `h x m` row-major.
fn for_each_triple_equation<F>(
    spec: &ExtensionSpec,
    pair: &DerivationPair,
    g: &TripleGamma,
    mut f: F,
) where
    F: FnMut(&'static str, Vec<usize>, Vec<Scalar>),
{
    let (m, hd) = (spec.m_dim(), spec.h_dim());
    let (malg, halg) = (spec.m(), spec.h());
    let (mu, rho, beta) = (spec.mu(), spec.rho(), spec.beta());
    let (sigma, tau) = (pair.sigma.matrix(), pair.tau.matrix());
    let um = |i: usize| unit_vec(m, i);
    let uh = |a: usize| unit_vec(hd, a);
    let center_rows = halg.center_constraints();
    let tails: [(&'static str, &'static str, &LinearMap); 2] = [
        ("eq26_gamma2", "eq27_gamma2", &g.gamma2),
        ("eq26_gamma3", "eq27_gamma3", &g.gamma3),
    ];

    // central values and swapped-slot cancellation for gamma2, gamma3
    for (name26, name27, gj) in tails {
        for i in 0..m {
            f(
                name26,
                vec![i],
                center_rows.mul_vec(&gj.matrix().column(i)),
            );
        }
        for [i, j] in increasing_pairs(m) {
            let b_j_gi = beta.eval(&um(j), &gj.matrix().column(i));
            let b_i_gj = beta.eval(&um(i), &gj.matrix().column(j));
            for b in 0..hd {
                let mut res = b_i_gj.column(b);
                sub(&mut res, &b_j_gi.column(b));
                f(name27, vec![i, j, b], res);
            }
        }
    }

    // gamma_j respects the bracket through the pair action
    for (name, gj) in [("eq28_gamma2", &g.gamma2), ("eq28_gamma3", &g.gamma3)] {
        for [a, b, c] in increasing_triples(m) {
            let mut res = gj.apply(&malg.bracket_basis(a, b, c));
            sub(&mut res, &rho.at(a, b).mul_vec(&gj.matrix().column(c)));
            sub(&mut res, &rho.at(c, a).mul_vec(&gj.matrix().column(b)));
            sub(&mut res, &rho.at(b, c).mul_vec(&gj.matrix().column(a)));
            f(name, vec![a, b, c], res);
        }
    }

    // pair-action rows with the gamma2-after-sigma correction
    let g2_sigma = g.gamma2.matrix().mul(sigma);
    for [i, j] in increasing_pairs(m) {
        let rij = rho.at(i, j);
        let comm = tau.mul(&rij).sub(&rij.mul(tau));
        let rho_si_j = rho.eval(&sigma.column(i), &um(j));
        let rho_i_sj = rho.eval(&um(i), &sigma.column(j));
        let b_j_g1i = beta.eval(&um(j), &g.gamma1.matrix().column(i));
        let b_i_g1j = beta.eval(&um(i), &g.gamma1.matrix().column(j));
        let b_j_g2si = beta.eval(&um(j), &g2_sigma.column(i));
        let b_i_g2sj = beta.eval(&um(i), &g2_sigma.column(j));
        for b in 0..hd {
            let mut res = comm.column(b);
            sub(&mut res, &rho_si_j.column(b));
            sub(&mut res, &rho_i_sj.column(b));
            add(&mut res, &b_j_g1i.column(b));
            sub(&mut res, &b_i_g1j.column(b));
            sub(&mut res, &b_j_g2si.column(b));
            add(&mut res, &b_i_g2sj.column(b));
            f("eq29", vec![i, j, b], res);
        }
    }

    // mixed-action rows driven by gamma1
    for i in 0..m {
        let g1i = g.gamma1.matrix().column(i);
        for a in 0..hd {
            let bia = beta.at(i, a);
            let comm = tau.mul(&bia).sub(&bia.mul(tau));
            let b_si_a = beta.eval(&sigma.column(i), &uh(a));
            let b_i_ta = beta.eval(&um(i), &tau.column(a));
            for b in 0..hd {
                let mut res = comm.column(b);
                sub(&mut res, &b_si_a.column(b));
                sub(&mut res, &b_i_ta.column(b));
                sub(
                    &mut res,
                    &halg.bracket(&g1i, &uh(a), &uh(b)).expect("H shapes agree"),
                );
                f("eq30", vec![i, a, b], res);
            }
        }
    }

    // bracket rows with the gamma2-after-sigma correction
    for [a, b, c] in increasing_triples(m) {
        let br = malg.bracket_basis(a, b, c);
        let mut res = tau.mul_vec(&mu.at(a, b, c));
        add(&mut res, &g.gamma1.apply(&br));
        sub(&mut res, &g2_sigma.mul_vec(&br));
        sub(&mut res, &mu.eval(&sigma.column(a), &um(b), &um(c)));
        sub(&mut res, &mu.eval(&um(a), &sigma.column(b), &um(c)));
        sub(&mut res, &mu.eval(&um(a), &um(b), &sigma.column(c)));
        sub(&mut res, &rho.at(a, b).mul_vec(&g.gamma1.matrix().column(c)));
        sub(&mut res, &rho.at(c, a).mul_vec(&g.gamma1.matrix().column(b)));
        sub(&mut res, &rho.at(b, c).mul_vec(&g.gamma1.matrix().column(a)));
        add(&mut res, &rho.at(a, b).mul_vec(&g2_sigma.column(c)));
        add(&mut res, &rho.at(c, a).mul_vec(&g2_sigma.column(b)));
        add(&mut res, &rho.at(b, c).mul_vec(&g2_sigma.column(a)));
        f("eq31", vec![a, b, c], res);
    }
}

fn triple_from_flat(spec: &ExtensionSpec, flat: &[Scalar]) -> TripleGamma {
    let (m, hd) = (spec.m_dim(), spec.h_dim());
    let block = m * hd;
    let take = |k: usize| -> LinearMap {
        LinearMap::new(
            Matrix::from_entries(hd, m, flat[k * block..(k + 1) * block].to_vec())
                .expect("block has h*m entries"),
        )
    };
    TripleGamma {
        gamma1: take(0),
        gamma2: take(1),
        gamma3: take(2),
    }
}

/// Re-verification of a candidate triple against the full system.
pub fn verify_triple_gamma(
    spec: &ExtensionSpec,
    pair: &DerivationPair,
    triple: &TripleGamma,
) -> CheckReport {
    let mut witnesses = Vec::new();
    let mut checked = 0u64;
    for_each_triple_equation(spec, pair, triple, |name, idx, res| {
        checked += 1;
        if !vec_is_zero(&res) {
            witnesses.push(Witness::new(name, idx, res.clone(), zero_vec(res.len())));
        }
    });
    CheckReport::new("triple_gamma_equations", checked, witnesses)
}

/// Solve the three-map system. `None` when inconsistent; the returned
/// triple is re-verified against every instantiated equation.
pub fn solve_triple_gamma(
    spec: &ExtensionSpec,
    pair: &DerivationPair,
) -> Result<Option<TripleGamma>> {
    validate_inputs(spec, pair)?;
    let unknowns = 3 * spec.m_dim() * spec.h_dim();
    let (system, rhs) = affine_system(unknowns, |flat| {
        let triple = triple_from_flat(spec, flat);
        let mut out = Vec::new();
        for_each_triple_equation(spec, pair, &triple, |_, _, res| out.extend(res));
        out
    });
    match system.solve_affine(&rhs)? {
        None => Ok(None),
        Some((x, _)) => {
            let triple = triple_from_flat(spec, &x);
            if !verify_triple_gamma(spec, pair, &triple).passed {
                return Err(Error::Internal(
                    "solved triple gamma fails re-verification".into(),
                ));
            }
            Ok(Some(triple))
        }
    }
}

/// The lift `g(x + h) = (g1 x + sigma x + tau h, g2 x + x + h, g3 x + x + h)`
/// into the carrier of `cube(assemble(spec))`.
pub fn build_cube_lift(
    spec: &ExtensionSpec,
    pair: &DerivationPair,
    triple: &TripleGamma,
) -> LinearMap {
    let (m, hd) = (spec.m_dim(), spec.h_dim());
    let x_block = Matrix::vstack(&[
        &Matrix::hstack(&[pair.sigma.matrix(), &Matrix::zeros(m, hd)]),
        &Matrix::hstack(&[triple.gamma1.matrix(), pair.tau.matrix()]),
    ]);
    let diag_block = |gj: &LinearMap| {
        Matrix::vstack(&[
            &Matrix::hstack(&[&Matrix::identity(m), &Matrix::zeros(m, hd)]),
            &Matrix::hstack(&[gj.matrix(), &Matrix::identity(hd)]),
        ])
    };
    LinearMap::new(Matrix::vstack(&[
        &x_block,
        &diag_block(&triple.gamma2),
        &diag_block(&triple.gamma3),
    ]))
}

/// Full check that the induced cube lift is a homomorphism making the cube
/// diagram commute: `g ∘ i = (i,i,i) ∘ lift(tau)` and
/// `(p,p,p) ∘ g = lift(sigma) ∘ p`.
pub fn verify_cube_lift(
    spec: &ExtensionSpec,
    pair: &DerivationPair,
    triple: &TripleGamma,
) -> Result<CheckReport> {
    let a = spec.assemble();
    let cube_a = cube(&a)?;
    let g = build_cube_lift(spec, pair, triple);
    let mut parts = Vec::new();
    parts.push(is_homomorphism(&g, &a, cube_a.carrier())?.renamed("cube_lift_homomorphism"));

    let mut witnesses = Vec::new();
    let i3 = triple_map(&spec.inclusion());
    let p3 = triple_map(&spec.projection());
    let f_tau = diagonal_lift(spec.h(), &pair.tau)?;
    let f_sigma = diagonal_lift(spec.m(), &pair.sigma)?;
    let left = g.compose(&spec.inclusion()).matrix().clone();
    let right = i3.compose(&f_tau).matrix().clone();
    if left != right {
        witnesses.push(Witness::new(
            "cube_inclusion_square",
            vec![],
            left.flatten(),
            right.flatten(),
        ));
    }
    let left = p3.compose(&g).matrix().clone();
    let right = f_sigma.compose(&spec.projection()).matrix().clone();
    if left != right {
        witnesses.push(Witness::new(
            "cube_projection_square",
            vec![],
            left.flatten(),
            right.flatten(),
        ));
    }
    parts.push(CheckReport::new("cube_squares", 2, witnesses));
    Ok(CheckReport::merge("cube_lift", parts))
}

/// The central extension of `gamma2` to the whole of `A`: zero on the `H`
/// block, `gamma2` on the `M` block.
pub fn center_extension(spec: &ExtensionSpec, triple: &TripleGamma) -> LinearMap {
    LinearMap::new(Matrix::hstack(&[
        triple.gamma2.matrix(),
        &Matrix::zeros(spec.h_dim(), spec.h_dim()),
    ]))
}

/// Rebuild the derivation lift from a triple solution:
/// `delta(x) = sigma x + gamma1 x - gamma_center(sigma x)`, `delta(h) = tau h`.
///
/// `gamma_center` must be the center-valued extension of `gamma2` vanishing
/// on `H` (see [`center_extension`]).
pub fn delta_from_triple(
    spec: &ExtensionSpec,
    pair: &DerivationPair,
    triple: &TripleGamma,
    gamma_center: &LinearMap,
) -> Result<LinearMap> {
    let (m, hd) = (spec.m_dim(), spec.h_dim());
    if gamma_center.source_dim() != m + hd || gamma_center.target_dim() != hd {
        return Err(Error::dim(format!(
            "gamma_center is {}x{}, expected {hd}x{}",
            gamma_center.target_dim(),
            gamma_center.source_dim(),
            m + hd
        )));
    }
    let center = spec.h().center();
    for c in 0..m + hd {
        let col = gamma_center.matrix().column(c);
        if c >= m && !vec_is_zero(&col) {
            return Err(Error::precondition(
                "gamma_center must vanish on the H block",
            ));
        }
        if c < m {
            if col != triple.gamma2.matrix().column(c) {
                return Err(Error::precondition(
                    "gamma_center must restrict to gamma2 on the M block",
                ));
            }
            if !center.contains(&col) {
                return Err(Error::precondition(
                    "gamma_center must take values in the center of H",
                ));
            }
        }
    }
    let corrected = LinearMap::new(
        triple
            .gamma1
            .matrix()
            .sub(&triple.gamma2.matrix().mul(pair.sigma.matrix())),
    );
    build_delta(pair, &corrected)
}
