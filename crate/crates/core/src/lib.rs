//! Exact computer algebra for the GL_n and SL_n double affine Hecke algebras.
//!
//! The crate is organized in layers:
//!
//! - [`scalar`], [`vars`], [`poly`], [`frac`], [`pfrac`]: exact arithmetic —
//!   arbitrary-precision rationals, sparse multivariate Laurent polynomials,
//!   and rational functions whose denominators are kept factored so that
//!   poles and zeros at monomial points can be read off exactly.
//! - [`perm`], [`affine`]: the symmetric group and the extended affine
//!   symmetric group in window notation, with length, inversions, Bruhat
//!   order, and actions on integer vectors and multiplicative weights.
//! - [`hecke`]: the finite Hecke algebra and the extended affine Hecke
//!   algebra in normal form, with the sign/trivial idempotents.
//! - [`daha`], [`intertwine`]: GL and SL double affine Hecke algebras in
//!   PBW normal form, the localized algebra with rational coefficients, and
//!   the intertwiner calculus.
//! - [`weights`], [`modules`]: weight points, induced modules, and
//!   weight-space algorithms.
//! - [`qtorus`], [`young`]: the quantum torus smash product, its induced
//!   modules, and Young's seminormal representations of symmetric groups.
//! - [`endo`]: intertwiner-built endomorphisms, endomorphism-ring structure
//!   constants, and the main verification suites.
//! - [`rea`]: reflection-equation algebra checks (R-matrix Hecke relation,
//!   Yang-Baxter, quantum determinant centrality) by bounded exact linear
//!   algebra.
//! - [`linalg`]: dense exact linear algebra over the scalar fraction field.
//! - [`report`]: machine-readable check records shared by the suites and
//!   the command line front end.

pub mod affine;
pub mod daha;
pub mod frac;
pub mod hecke;
pub mod intertwine;
pub mod linalg;
pub mod perm;
pub mod pfrac;
pub mod poly;
pub mod scalar;
pub mod vars;

pub use affine::AffinePerm;
pub use frac::{Binomial, FactoredFraction};
pub use perm::Perm;
pub use pfrac::PFrac;
pub use poly::LaurentPoly;
pub use scalar::Scalar;
pub use vars::VarSpace;

