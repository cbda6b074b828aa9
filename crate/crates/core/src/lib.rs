//! Variational solving of linear systems over GF(2).
//!
//! A system `Ax = b` with `A` an `m x n` bit matrix is compiled into a CNOT
//! circuit on `n + m` qubits that maps `|x>|0>` to `|x>|Ax>`. A parametrized
//! ansatz prepares a superposition over the input register; the cost is the
//! probability mass that misses `b` on the output register. Minimizing it with
//! a derivative-free trust-region method concentrates the state on solutions,
//! which are then read off and checked with exact GF(2) arithmetic.
//!
//! Modules:
//! - [`gf2`]: bit-packed vectors and matrices, rank, brute-force solution oracle.
//! - [`sim`]: dense statevector simulator for X, H, RY, CNOT and CZ.
//! - [`circuits`]: matrix-vector operator, state preparation and ansatz builders.
//! - [`analytic`]: closed forms for the rotations ansatz cost, gradient and q-integers.
//! - [`solver`]: cost evaluation, optimization loop and solution extraction.
//! - [`bench`]: per-dimension experiment harness with CSV output.

pub mod analytic;
pub mod bench;
pub mod circuits;
mod error;
pub mod gf2;
pub mod par;
pub mod sim;
pub mod solver;

pub use error::{Error, Result};
