//! Exact constructibility of regular polygons.
//!
//! A regular n-gon is constructible by straightedge and compass exactly when
//! `n = 2^α · p_1 ⋯ p_l` with the `p_i` distinct Fermat primes. This crate
//! decides that condition, and for constructible `n` synthesizes an explicit
//! nested-square-root expression for `cos(2π/n)` by descending the binary
//! tree of Gaussian periods of each Fermat prime factor. For non-constructible
//! `n` it produces an Eisenstein-criterion certificate instead.
//!
//! Everything is exact: expressions are trees over arbitrary-precision
//! rationals closed under `+ − × ÷ √`, and all numeric decisions (root
//! matching, sign checks, final verification) go through outward-rounded
//! interval arithmetic that either certifies an answer or refuses.
//!
//! The crate is `no_std` (alloc only). IO, the command-line surface and
//! file-format plumbing live in the companion `radical-gon` crate.
//!
//! Module map:
//! - [`numtheory`]: factorization, modular exponentiation, primitive roots.
//! - [`exact`]: big rationals, dense integer polynomials, the group ring of Z/p.
//! - [`periods`]: Gaussian-period supports, products and their α-decompositions.
//! - [`radicals`]: radical expression trees, certified evaluation, rendering,
//!   the independent cosine reference oracle, extension-tower extraction.
//! - [`construct`]: the decision procedure and the expression synthesis.
//! - [`irreducibility`]: Eisenstein checks and non-constructibility certificates.

#![no_std]

#[cfg(test)]
extern crate std;

extern crate alloc;

pub mod construct;
pub mod exact;
pub mod irreducibility;
pub mod numtheory;
pub mod periods;
pub mod radicals;

pub use construct::{construct, construct_fermat_prime, decide, ConstructibilityVerdict};
pub use irreducibility::{certify_nonconstructible, NonConstructibilityCertificate};
pub use radicals::{evaluate, reference_cos, CertifiedDecimal, Expr, RadicalExpr};
