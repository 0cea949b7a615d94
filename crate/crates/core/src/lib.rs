//! Possible spectra of sums of admissible coadjoint orbits.
//!
//! For a quasi-Hermitian real form such as `su(p,q)`, the set of possible
//! spectra of `A + B` — where `A` and `B` range over the orbits of two fixed
//! admissible diagonal spectra — is a convex polyhedral set
//! `(Π + Cone(nc)) ∩ chamber`: the compact-group polytope `Π` (a pair of
//! unitary Horn problems for `su(p,q)`), swept out along the cone spanned by
//! the non-compact positive roots, intersected with the compact Weyl chamber.
//!
//! The crate computes that set exactly over arbitrary-precision rationals
//! ([`sum::sum_spectra`]) and cross-validates it with a floating-point
//! matrix-sampling oracle ([`oracle::verify_containment`]).
//!
//! Module map:
//! - [`rootsys`]: root systems, Vogan paintings, compact/non-compact split,
//!   admissible cone, compact Weyl group.
//! - [`horn`]: Horn triples and the compact-case polytope `Π`.
//! - [`polyhedra`]: exact rational H/V polyhedra, Fourier–Motzkin projection,
//!   Minkowski sums with cones, vertex enumeration, lattice points.
//! - [`sum`]: the orbit-sum pipeline and its structural checks.
//! - [`oracle`]: pseudo-unitary Monte Carlo verification.
//! - [`json`]: stable JSON encodings for all of the above.

pub mod eig;
pub mod error;
pub mod horn;
pub mod json;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod polyhedra;
pub mod rational;
pub mod rootsys;
pub mod sum;

pub use error::Error;
pub use rational::Rat;

/// Maps `f` over `0..n`, in parallel when the `parallel` feature is enabled.
///
/// Results come back in index order, so callers are deterministic regardless
/// of the feature flag or thread count.
pub(crate) fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}
