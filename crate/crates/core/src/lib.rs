//! Exact finite-dimensional Clifford algebras over arbitrary (possibly
//! degenerate) symmetric bilinear forms, together with a finite
//! chart-and-gluing model of vector pseudo-bundles whose fibres may jump in
//! dimension.
//!
//! Everything here is exact: coefficients are arbitrary-precision rationals
//! and smoothness questions are decided inside a polynomial ring extended by a
//! single absolute-value generator. The crate is `no_std` and only needs
//! `alloc`.
//!
//! Layout:
//!
//! - [`absring`]: polynomials and the ring `ℚ[x] ⊕ ℚ[x]·|x_k|`.
//! - [`matdiff`]: entry-shape patterns of matrix plots, algebra closures and
//!   maximal smooth actions.
//! - [`multilinear`]: tensors, symmetrization, antisymmetrization, wedge.
//! - [`clifford`]: blade algebra by word rewriting, grading, filtration,
//!   universal extension and the exterior-algebra module.
//! - [`pseudobundle`]: charts, gluings, pseudo-metrics and fibrewise
//!   operations.
//! - [`cliffbundle`]: Clifford-algebra and Clifford-module bundles over glued
//!   bundles.
//! - [`crossed_lines`]: the bundle over the union of the two coordinate axes,
//!   glued from three trivial pieces.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod absring;
pub mod cliffbundle;
pub mod clifford;
pub mod crossed_lines;
mod error;
pub mod linalg;
pub mod matdiff;
pub mod multilinear;
pub mod pseudobundle;
pub mod rational;
mod verdict;

pub use error::{Error, Result};
pub use rational::Rational;
pub use verdict::Verdict;
