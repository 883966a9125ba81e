#![no_std]

//! Exact characteristic-class engine for the right generalized complex
//! projective Stiefel manifolds `W_{n,k;l}`.
//!
//! `W_{n,k;l}` is the quotient of the complex Stiefel manifold of orthonormal
//! `k`-frames in `C^n` by the circle acting with weight `l_i` on the `i`-th
//! frame vector. Everything here is pure and allocation-only:
//!
//! * [`ring`]: truncated series in one degree-2 generator `c` over `Z` and
//!   `Z/2`, plus a multivariate polynomial ring for splitting-principle checks.
//! * [`bundles`]: virtual sums of powers of the tautological line bundle and
//!   their total Chern, Pontrjagin and Stiefel-Whitney classes.
//! * [`stiefel`]: parameter validation, dimension, the stable tangent-bundle
//!   equation and the low-degree cohomology facts.
//! * [`classify`]: the parallelizability verdict, `p_1` and `w_2` coefficients
//!   computed along independent routes, and the span = stable span cases.

extern crate alloc;

pub mod bundles;
pub mod classify;
pub mod error;
pub mod ring;
pub mod stiefel;

pub use bundles::{BundleExpr, CharClassReport};
pub use classify::{classify, Classification, SpanCases};
pub use error::{BundleError, RingError, StiefelError};
pub use ring::{MultiPoly, RootBag, TruncSeries, TruncSeriesMod2, DEFAULT_CAP};
pub use stiefel::{validate, CohomologyFacts, StiefelParams, TangentEquation};
