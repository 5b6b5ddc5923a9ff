//! Simulator and analysis toolkit for adiabatic quantum computation.
//!
//! The library models an n-bit minimization problem as a pair of Hamiltonians:
//! a final Hamiltonian `H_f = Σ_z f(z)|z⟩⟨z|` encoding the cost function, and
//! an initial Hamiltonian `H₀ = W⊗ⁿ diag(h) W⊗ⁿ` whose ground state is the
//! uniform superposition. The interpolation `H(s) = (1−s)H₀ + sH_f` on
//! `s ∈ [0,1]` is the object of study:
//!
//! - [`hamiltonian`] builds cost functions, the operators above, and an exact
//!   symmetric-subspace (Dicke) reduction for weight-symmetric problems;
//! - [`spectral`] computes eigensystems, gap curves `g(s) = λ₁(s) − λ₀(s)`,
//!   minimum gaps, closed-form gaps for the built-in families, and the
//!   avoided-crossing diagnostic that certifies exponentially small gaps;
//! - [`evolution`] integrates `dψ/ds = −i τ(s) H(s) ψ` under constant and
//!   gap-adaptive delay schedules and measures success probabilities;
//! - [`trotter`] approximates the same evolution by products of phase and
//!   Hadamard transforms and checks the discretization error bounds;
//! - [`satquery`] reconstructs the unsatisfied-clause count function of a
//!   3CNF formula from its values on inputs of Hamming weight ≤ 3;
//! - [`cli`] exposes all of the above as batch subcommands.
//!
//! Conventions fixed across the crate: basis index `z` reads the bit string
//! big-endian (see [`bits`]), ħ = 1, and dense operators are capped at
//! [`hamiltonian::DENSE_LIMIT`] qubits.

pub mod bits;
pub mod cli;
pub mod error;
pub mod evolution;
pub mod hamiltonian;
pub mod satquery;
pub mod spectral;
pub mod state;
pub mod trotter;

mod fmt;
mod linalg;
mod walsh;

pub use error::{Error, Result};
