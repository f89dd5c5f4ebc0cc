//! File formats, JSON reports and the command-line front end for
//! [`pseudocliff_core`].
//!
//! - [`expr`]: the polynomial / abs-ring expression grammar.
//! - [`bundle_file`]: the `[chart]` / `[gluing]` bundle description format.
//! - [`reproduce`]: the crossed-lines example checked against its printed
//!   formulas.
//! - [`commands`]: one function per CLI subcommand.

pub mod bundle_file;
pub mod commands;
pub mod expr;
pub mod json;
pub mod reproduce;

pub use pseudocliff_core as core;
