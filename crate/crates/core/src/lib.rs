//! Polyhedral realizations of crystal bases `B(∞)` and `B(λ)` for the finite
//! simple Lie types.
//!
//! The crate builds the crystal structure on sequences indexed by the cyclic
//! word `(…, n, …, 2, 1)`, generates the defining inequalities both by closure
//! under piecewise-linear operators and from closed-form tables, and checks
//! the resulting lattice-point sets against brute-force crystal generation
//! and the Weyl dimension formula.

pub mod error;
pub mod forms;
pub mod limits;
pub mod polytope;
pub mod rootdata;
pub mod tables;
pub mod zcrystal;

pub use error::{Error, Result};
pub use limits::Limits;
