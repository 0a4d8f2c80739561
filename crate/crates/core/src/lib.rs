//! Exact-arithmetic toolkit for finite-dimensional 3-Lie (Filippov) algebras.
//!
//! A 3-Lie algebra is a vector space with a trilinear, fully antisymmetric
//! bracket `[x, y, z]` satisfying the fundamental identity
//!
//! ```text
//! [[x, y, z], u, v] = [[x, u, v], y, z] + [x, [y, u, v], z] + [x, y, [z, u, v]]
//! ```
//!
//! Everything here works over the rationals with exact arithmetic, so every
//! verdict is a theorem about the finite input data rather than a numerical
//! observation. The crate provides:
//!
//! * [`exactlin`] — rational scalars, dense matrices, reduced row echelon
//!   form, nullspaces and affine solving (the substrate for every solver);
//! * [`trilie`] — the core algebra type with structure constants on
//!   strictly increasing index triples, plus exhaustive checkers for the
//!   fundamental identity, derivations, homomorphisms, centers and ideals;
//! * [`constructions`] — fixture builders (abelian algebras, the simple
//!   four-dimensional algebra, trace-form algebras on `gl(m)`, metric Lie
//!   algebra extensions, linear-functional brackets);
//! * [`representation`] — pair actions `rho: A wedge A -> End(V)` and the
//!   identities that make them modules;
//! * [`extension`] — the `(mu, rho, beta)` extension of one algebra by
//!   another, the seven compatibility conditions equivalent to the assembled
//!   bracket being a 3-Lie bracket, and the associated exact sequence;
//! * [`cube`] — the exterior direct sum algebra on three copies of an
//!   algebra and its block structure;
//! * [`extendability`] — the linear systems deciding when a pair of
//!   derivations of the two factors lifts to a derivation of the extension.
//!
//! Exhaustive sweeps are data-parallel (feature `parallel`, on by default)
//! with order-independent aggregation: witnesses are sorted before they are
//! reported, so parallel and sequential runs produce identical reports.

pub mod constructions;
pub mod cube;
pub mod error;
pub mod exactlin;
pub mod extendability;
pub mod extension;
pub mod io;
pub mod report;
pub mod representation;
pub(crate) mod sweep;
pub mod trilie;

pub use error::Error;
pub use exactlin::{Matrix, Scalar, Subspace};
pub use report::{CheckReport, Witness};
pub use trilie::{LinearMap, ThreeLieAlgebra};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
