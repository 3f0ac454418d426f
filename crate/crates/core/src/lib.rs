//! Exact spectral data for rank-one hyperbolic spaces.
//!
//! This crate computes, in exact arithmetic, the quantities that tie the
//! Laplace spectrum of a compact real or complex hyperbolic manifold to the
//! band structure of its geodesic-flow resonances: restricted-root constants,
//! Casimir invariants of the relevant compact subgroups, branching laws,
//! the quadratic eigenvalue map λ ↦ μ(λ), and the size of the Jordan blocks
//! attached to first-band resonances.
//!
//! Two independent routes are kept deliberately separate:
//!
//! * the *symbolic* route ([`rootdata`], [`reps`], [`spectrum`]) works from
//!   root systems and highest weights;
//! * the *matrix* route ([`oracle`]) builds the Lie algebras as explicit
//!   matrices, recomputes the same invariants from structure constants, and
//!   is used in tests to cross-check the symbolic route.
//!
//! All numbers are exact ([`exactnum::Rational`], [`exactnum::QuadExt`],
//! [`exactnum::ComplexQuad`]); floating point appears only in display
//! approximations and in the numeric Iwasawa factorization, whose residuals
//! are explicitly reported.

pub mod exactnum;
pub mod oracle;
pub mod parse;
pub mod reps;
pub mod rootdata;
pub mod selftest;
pub mod spectrum;
