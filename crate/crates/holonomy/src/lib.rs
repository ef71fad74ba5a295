//! Exact-arithmetic computational algebra for complex hyperplane arrangements.
//!
//! Given an arrangement (rational linear forms, an explicit presentation, or a
//! simple graph) this crate computes its Orlik-Solomon algebra, the deconed
//! algebra `R` with `OS = R (x) E(z)`, the Koszul dual `R^!`, bigraded Tor/Ext
//! tables, lower-central-series ranks, and the closed-form Hilbert series
//! identities that relate them.  Everything is exact: scalars are
//! arbitrary-precision rationals and series coefficients are big integers.
//!
//! Module map:
//! - [`scalar`], [`exterior`], [`word`], [`linalg`]: exact scalars, exterior
//!   monomials with sign conventions, free words, sparse rank/nullspace.
//! - [`presentation`]: quotients of exterior or free algebras, text format.
//! - [`arrangement`]: circuits, OS ideal, decone, graphic arrangements.
//! - [`dual`]: quadratic part, Koszul dual, LCS ranks <-> Hilbert series.
//! - [`series`]: truncated series in one and two variables, rational and
//!   infinite-product expressions, the Lofwall family of identities.
//! - [`ncgb`]: degree-truncated noncommutative Groebner bases and
//!   automaton-based Hilbert functions.
//! - [`lie`]: graded nilpotent quotients of finitely presented Lie algebras
//!   and Chevalley-Eilenberg homology (fast path for Tor over enveloping
//!   algebras).
//! - [`resolution`]: minimal free resolutions, bigraded Tor/Ext tables, bar
//!   complex oracle, finiteness detectors.
//! - [`graph`], [`census`]: graph6 parsing, connected-graph enumeration and
//!   the classification pipeline.

pub mod arrangement;
pub mod census;
pub mod dual;
pub mod error;
pub mod exterior;
pub mod graph;
pub mod lie;
pub mod linalg;
pub mod ncgb;
pub mod presentation;
pub mod resolution;
pub mod scalar;
pub mod series;
pub mod word;

pub use error::Error;
