//! Deciding integer solvability of box-constrained linear systems
//!
//! ```text
//!     x_1 v_1 + ... + x_m v_m = w,    a_i <= x_i <= b_i,  x_i integer
//! ```
//!
//! When the columns `v_i` are *Farkas-related* (every elementary integral
//! relation among them has coefficients in `{-1, 0, 1}`), such a system is
//! solvable iff `w` lies in the lattice spanned by the columns and finitely
//! many inequalities hold, one per indecomposable point of the columns.
//! This crate computes all of these objects exactly and produces
//! certificates for both outcomes.
//!
//! Modules:
//!
//! * [`exactlin`]: exact integer and rational linear algebra.
//! * [`circuits`]: elementary integral vectors of a column null space.
//! * [`indecomp`]: active sets, indecomposable points and decompositions.
//! * [`farkas`]: the decision engine.
//! * [`graphs`]: incidence systems and graph realization theorems.
//! * [`oracle`]: brute-force ground truth used for verification.

pub mod circuits;
pub mod error;
pub mod exactlin;
pub mod farkas;
pub mod graphs;
pub mod indecomp;
pub mod oracle;

pub use error::{Error, Result};
pub use exactlin::{IntMatrix, IntVector, RatVector, Rational};
