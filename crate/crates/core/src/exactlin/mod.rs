//! Exact rational scalars, dense matrices and canonical subspaces.
//!
//! All arithmetic is over the rationals with arbitrary-precision integers,
//! so row reduction, ranks and nullspaces are exact. Subspaces are stored in
//! reduced-row-echelon canonical form, which makes subspace equality a plain
//! grid comparison.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::Matrix;
pub use scalar::Scalar;
pub use subspace::Subspace;

/// Coordinate vector helpers. Vectors are plain `Vec<Scalar>`.
pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}

/// `acc += c * a`, in place.
pub fn vec_add_scaled(acc: &mut [Scalar], c: &Scalar, a: &[Scalar]) {
    debug_assert_eq!(acc.len(), a.len());
    if c.is_zero() {
        return;
    }
    for (t, x) in acc.iter_mut().zip(a) {
        *t = &*t + &(c * x);
    }
}
