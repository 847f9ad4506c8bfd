//! Exact computational algebra for finite graded ring extensions.
//!
//! Everything here computes over `Z`, `Z/n`, or a prime field with exact
//! integer arithmetic — no floating point, no randomized correctness. The
//! crate provides:
//!
//! - exact linear algebra (Smith normal form, solving, kernels) over the
//!   supported base rings ([`matrix`]);
//! - finitely presented graded modules with canonical invariant-factor
//!   fingerprints ([`module`]);
//! - finite graded algebras with validated axioms and tensor squares
//!   ([`algebra`]);
//! - finite group actions by graded automorphisms ([`group`]);
//! - Galois-extension checking with dual-basis certificates ([`galois`]);
//! - separability idempotents, degree concentration, and regularity
//!   reporting ([`separable`]);
//! - Kähler differentials of an extension and first-Hochschild-style
//!   nontriviality witnesses ([`differentials`]);
//! - free resolutions, Tor, graded Tor, and group cohomology ([`homology`]);
//! - a gallery of built-in examples and a seeded random instance generator
//!   ([`gallery`]).

pub mod algebra;
pub mod document;
pub mod differentials;
pub mod galois;
pub mod gallery;
pub mod group;
pub mod homology;
pub mod matrix;
pub mod module;
pub mod ring;
pub mod separable;
