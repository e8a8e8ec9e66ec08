//! Exact-arithmetic engine for curved L-infinity structures obtained from
//! derived brackets on finite-dimensional quadratic Lie algebras.
//!
//! The library is organized in layers:
//!
//! * [`scalar`], [`matrix`] — exact rational scalars, optionally truncated
//!   polynomials in a formal parameter `t`, and dense linear algebra over them;
//! * [`koszul`], [`exterior`] — sign combinatorics of graded vector spaces and
//!   sparse exterior-algebra arithmetic;
//! * [`symalg`] — the graded symmetric coalgebra `S(V)`, coderivations and
//!   coalgebra morphisms through their Taylor components, exponentials, and
//!   the generic verifiers for L-infinity structures and morphisms;
//! * [`double`] — quadratic Lie algebras with Lagrangian splittings, the
//!   spinor module with its Clifford action, and the cubic Hamiltonian;
//! * [`torsor`] — the BV-torsor abstraction: bracket extraction, Jacobiators,
//!   the coderivation `R_eps` and gauge equivariance;
//! * [`mc`] — Maurer-Cartan evaluation and transport, the Lagrangian graph
//!   transform, and the block-matrix layer for deformed complex structures;
//! * [`catalog`] — built-in doubles, Lie bialgebras and r-matrices used as
//!   finite test instances, with their certificate suites;
//! * [`report`] — machine-readable check reports shared with the CLI.
//!
//! All arithmetic is exact: equality assertions are tolerance-free, and every
//! residual is reported as an exact rational (or truncated polynomial).

pub mod catalog;
pub mod double;
pub mod error;
pub mod exterior;
pub mod koszul;
pub mod matrix;
pub mod mc;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod symalg;
pub mod torsor;

pub use error::CoreError;
pub use exterior::{ExteriorElement, ExteriorSpace, GradedBasis, MultiIndex};
pub use matrix::Matrix;
pub use scalar::Scalar;
