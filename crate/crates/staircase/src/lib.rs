//! Exact calculus of monomial staircases, with verifiers for the vanishing
//! of fat-point postulation.
//!
//! A staircase is a finite downward-closed subset of `N^d` — the exponent
//! complement of a monomial ideal. This crate builds the operators that
//! degenerate configurations of such ideals into single ones (sums along an
//! axis, anisotropic dilations, specializations along integer directions),
//! chains those specializations to carry `s.R_mu` onto staircases containing
//! `R_{s*mu+1}`, and certifies the resulting postulation statements by two
//! independent routes:
//!
//! * [`limit`] replays each specialization as an exact flat-limit
//!   computation, line by line, in characteristic zero;
//! * [`postulation`] computes exact ranks of interpolation matrices at
//!   random points over a large prime field.
//!
//! Everything is exact — integer, rational or modular — and deterministic
//! under fixed seeds. See the `examples/` directory for one runnable program
//! per capability, and [`cli`] for the `staircase` binary the scripts and
//! integration checks drive.

pub mod chains;
pub mod cli;
pub mod corpus;
pub mod direction;
pub mod error;
pub mod exact;
pub mod field;
pub mod lattice;
pub mod limit;
pub mod ops;
pub mod postulation;
pub mod report;

pub use direction::{validate_direction, Direction, GradingForms, Validity};
pub use error::{Error, Result};
pub use lattice::{binomial, HeightFunction, LatticePoint, Shell, Staircase};
